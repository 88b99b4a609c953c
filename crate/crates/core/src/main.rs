//! Command-line surface: single-state measurements, seeded CSV surveys, and
//! desk-scale reproduction of the reference statistics.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcorr::ensembles::{SeedSpec, StateFamily};
use qcorr::localize::{localize, localize_pauli, localized_sum, LocalizeOptions};
use qcorr::measures::{self, QcMeasure};
use qcorr::monogamy::{self, ExponentGrid};
use qcorr::qstate::PureState;
use qcorr::survey::{self, ComputeFlags, SurveyConfig};

mod reproduce;

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Genuine multipartite entanglement, monogamy scores and localizable quantum correlations for few-qubit pure states"
)]
struct Cli {
    /// Worker threads for data-parallel surveys (default: QCORR_WORKERS or
    /// all cores). Results are identical for any worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute quantities for one state and print key=value lines.
    Measure(MeasureArgs),
    /// Run a seeded Monte-Carlo survey and write CSV.
    Survey(SurveyArgs),
    /// Re-derive a reference table at desk scale and report deviations.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// State family: random | wclass | dicke | dicke-equal | gghz | canonical3
    #[arg(long)]
    family: Option<String>,

    /// Number of qubits.
    #[arg(long)]
    n: Option<usize>,

    /// Dicke excitations.
    #[arg(long)]
    r: Option<usize>,

    /// Squared weight of |0..0> for the gGHZ family.
    #[arg(long)]
    alpha2: Option<f64>,

    /// Canonical three-qubit coefficients a1..a5 (comma separated).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    coeffs: Option<Vec<f64>>,

    /// Canonical three-qubit phase.
    #[arg(long)]
    phi: Option<f64>,
}

/// What a family spec resolves to: a sampled family or the deterministic
/// equal-coefficient Dicke constructor.
enum FamilySpec {
    Family(StateFamily),
    EqualDicke { n: usize, r: usize },
}

impl FamilyArgs {
    fn build(&self) -> Result<FamilySpec, String> {
        let name = self.family.as_deref().ok_or("missing --family")?;
        let family = match name {
            "random" | "haar" => StateFamily::HaarRandom {
                n: self.n.ok_or("--family random needs --n")?,
            },
            "wclass" => {
                if let Some(n) = self.n {
                    if n != 3 {
                        return Err(format!("--family wclass is three-qubit, got --n {n}"));
                    }
                }
                StateFamily::WClass
            }
            "dicke" => StateFamily::Dicke {
                n: self.n.ok_or("--family dicke needs --n")?,
                r: self.r.ok_or("--family dicke needs --r")?,
            },
            "dicke-equal" => {
                let n = self.n.ok_or("--family dicke-equal needs --n")?;
                let r = self.r.ok_or("--family dicke-equal needs --r")?;
                StateFamily::Dicke { n, r }.validate().map_err(|e| e.to_string())?;
                return Ok(FamilySpec::EqualDicke { n, r });
            }
            "gghz" => {
                let alpha2 = self.alpha2.ok_or("--family gghz needs --alpha2")?;
                if !(alpha2 > 0.0 && alpha2 < 1.0) {
                    return Err(format!("--alpha2 must lie in (0,1), got {alpha2}"));
                }
                StateFamily::GGhz {
                    n: self.n.ok_or("--family gghz needs --n")?,
                    alpha: alpha2.sqrt(),
                }
            }
            "canonical3" => {
                let coeffs = self
                    .coeffs
                    .as_ref()
                    .ok_or("--family canonical3 needs --coeffs a1,a2,a3,a4,a5")?;
                if coeffs.len() != 5 {
                    return Err(format!("--coeffs expects 5 values, got {}", coeffs.len()));
                }
                let mut a = [0.0; 5];
                a.copy_from_slice(coeffs);
                StateFamily::CanonicalThreeQubit {
                    a,
                    phi: self.phi.unwrap_or(0.0),
                }
            }
            other => return Err(format!("unknown family '{other}'")),
        };
        family.validate().map_err(|e| e.to_string())?;
        Ok(FamilySpec::Family(family))
    }

    fn describe(&self) -> String {
        let mut parts = vec![format!("family={}", self.family.as_deref().unwrap_or("-"))];
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(a2) = self.alpha2 {
            parts.push(format!("alpha2={a2}"));
        }
        if let Some(c) = &self.coeffs {
            parts.push(format!("coeffs={c:?}"));
        }
        if let Some(phi) = self.phi {
            parts.push(format!("phi={phi}"));
        }
        parts.join(" ")
    }
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Amplitude file: one `re im` pair per line, power-of-two length.
    #[arg(long, conflicts_with = "family")]
    state: Option<std::path::PathBuf>,

    /// Master seed for the random families.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Sample index within the seed stream.
    #[arg(long, default_value_t = 0)]
    index: u64,

    /// Print the GGM.
    #[arg(long)]
    ggm: bool,

    /// Monogamy scores as measure:alpha specs, e.g. neg:1,conc:2.
    #[arg(long, value_delimiter = ',')]
    mono: Vec<String>,

    /// Critical exponents for these measures.
    #[arg(long = "alpha-c", value_delimiter = ',')]
    alpha_c: Vec<String>,

    /// Localized values as measure:alpha specs (on --pair).
    #[arg(long, value_delimiter = ',')]
    localize: Vec<String>,

    /// Pauli-restricted localized values for these measures.
    #[arg(long = "localize-pauli", value_delimiter = ',')]
    localize_pauli: Vec<String>,

    /// Localized sums (alpha = 1) for these measures.
    #[arg(long = "lqc-sum", value_delimiter = ',')]
    lqc_sum: Vec<String>,

    /// Bipartite sums as measure:alpha specs.
    #[arg(long, value_delimiter = ',')]
    bisum: Vec<String>,

    /// Pair receiving localized correlations, as `i,j`.
    #[arg(long, default_value = "1,2")]
    pair: String,

    /// Nodal party for monogamy quantities.
    #[arg(long, default_value_t = 1)]
    nodal: usize,

    /// Simplex restarts for the localization optimizer.
    #[arg(long, default_value_t = 20)]
    restarts: usize,
}

#[derive(Args)]
struct SurveyArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Number of samples.
    #[arg(long)]
    samples: u64,

    /// Master seed (mandatory: CSV output must be reproducible).
    #[arg(long)]
    seed: u64,

    /// Measures, e.g. neg,conc,disc.
    #[arg(long, value_delimiter = ',', default_value = "neg")]
    measures: Vec<String>,

    /// Monogamy/localization exponents.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    alphas: Vec<f64>,

    /// Compute the GGM column (always on; flag kept for explicitness).
    #[arg(long)]
    ggm: bool,

    /// Compute monogamy scores and bipartite sums.
    #[arg(long)]
    monogamy: bool,

    /// Compute per-measure critical exponents.
    #[arg(long = "alpha-c")]
    alpha_c: bool,

    /// Compute localized values on --pair.
    #[arg(long)]
    localize: bool,

    /// Compute localized sums over the nodal party's pairs.
    #[arg(long = "lqc-sum")]
    lqc_sum: bool,

    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Histogram bin width recorded in the config echo.
    #[arg(long = "bin-width", default_value_t = 0.05)]
    bin_width: f64,

    #[arg(long, default_value_t = 1)]
    nodal: usize,

    #[arg(long, default_value = "1,2")]
    pair: String,

    #[arg(long, default_value_t = 20)]
    restarts: usize,
}

#[derive(Args)]
struct ReproduceArgs {
    /// One of: prop1, table1, table2, table3, table4, table5.
    target: String,

    /// Override the per-row sample counts.
    #[arg(long)]
    samples: Option<u64>,

    /// Master seed for the underlying surveys.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn parse_measure_list(items: &[String]) -> Result<Vec<QcMeasure>, String> {
    items
        .iter()
        .map(|s| QcMeasure::from_short_name(s).map_err(|e| e.to_string()))
        .collect()
}

fn parse_specs(items: &[String]) -> Result<Vec<(QcMeasure, f64)>, String> {
    items
        .iter()
        .map(|item| {
            let (m, a) = item
                .split_once(':')
                .ok_or_else(|| format!("spec '{item}' must look like measure:alpha"))?;
            let measure = QcMeasure::from_short_name(m).map_err(|e| e.to_string())?;
            let alpha: f64 = a
                .parse()
                .map_err(|_| format!("bad exponent '{a}' in spec '{item}'"))?;
            if alpha <= 0.0 {
                return Err(format!("exponent must be positive in spec '{item}'"));
            }
            Ok((measure, alpha))
        })
        .collect()
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("pair '{s}' must look like i,j"))?;
    let i = i.trim().parse().map_err(|_| format!("bad pair '{s}'"))?;
    let j = j.trim().parse().map_err(|_| format!("bad pair '{s}'"))?;
    Ok((i, j))
}

fn load_amplitude_file(path: &std::path::Path) -> Result<PureState, String> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut amps = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let re: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("{}:{}: expected `re im`", path.display(), lineno + 1))?;
        let im: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("{}:{}: expected `re im`", path.display(), lineno + 1))?;
        if parts.next().is_some() {
            return Err(format!(
                "{}:{}: trailing tokens after `re im`",
                path.display(),
                lineno + 1
            ));
        }
        amps.push(num_complex::Complex64::new(re, im));
    }
    PureState::from_amplitudes(&amps).map_err(|e| e.to_string())
}

fn fmt_value(v: f64) -> String {
    format!("{v:.9}")
}

struct Quantities {
    ggm: bool,
    mono: Vec<(QcMeasure, f64)>,
    alpha_c: Vec<QcMeasure>,
    localize: Vec<(QcMeasure, f64)>,
    localize_pauli: Vec<QcMeasure>,
    lqc_sum: Vec<QcMeasure>,
    bisum: Vec<(QcMeasure, f64)>,
}

fn run_measure(args: &MeasureArgs) -> Result<(), CliError> {
    let pair = parse_pair(&args.pair).map_err(CliError::Usage)?;
    let quantities = Quantities {
        ggm: args.ggm,
        mono: parse_specs(&args.mono).map_err(CliError::Usage)?,
        alpha_c: parse_measure_list(&args.alpha_c).map_err(CliError::Usage)?,
        localize: parse_specs(&args.localize).map_err(CliError::Usage)?,
        localize_pauli: parse_measure_list(&args.localize_pauli).map_err(CliError::Usage)?,
        lqc_sum: parse_measure_list(&args.lqc_sum).map_err(CliError::Usage)?,
        bisum: parse_specs(&args.bisum).map_err(CliError::Usage)?,
    };

    let source = if let Some(path) = &args.state {
        format!("state={}", path.display())
    } else {
        format!(
            "{} seed={} index={}",
            args.family.describe(),
            args.seed,
            args.index
        )
    };
    eprintln!(
        "config: verb=measure {source} ggm={} mono={:?} alpha_c={:?} localize={:?} \
         localize_pauli={:?} lqc_sum={:?} bisum={:?} nodal={} pair={:?} restarts={}",
        args.ggm,
        args.mono,
        args.alpha_c,
        args.localize,
        args.localize_pauli,
        args.lqc_sum,
        args.bisum,
        args.nodal,
        pair,
        args.restarts
    );

    let state = if let Some(path) = &args.state {
        load_amplitude_file(path).map_err(CliError::Runtime)?
    } else {
        match args.family.build().map_err(CliError::Usage)? {
            FamilySpec::EqualDicke { n, r } => qcorr::ensembles::make_dicke_equal(n, r)
                .map_err(|e| CliError::Runtime(e.to_string()))?,
            FamilySpec::Family(family) => family
                .realize(&SeedSpec::new(args.seed, args.index))
                .map_err(|e| CliError::Runtime(e.to_string()))?,
        }
    };
    print_measure_report(&state, &quantities, args.nodal, pair, args.restarts)
        .map_err(CliError::Runtime)
}

fn print_measure_report(
    state: &PureState,
    q: &Quantities,
    nodal: usize,
    pair: (usize, usize),
    restarts: usize,
) -> Result<(), String> {
    let opts = LocalizeOptions {
        restarts,
        ..LocalizeOptions::default()
    };
    let err = |e: qcorr::QcError| e.to_string();
    if q.ggm {
        println!("ggm={}", fmt_value(measures::ggm(state)));
    }
    for &(measure, alpha) in &q.mono {
        let rec = monogamy::monogamy_score(state, measure, alpha, nodal).map_err(err)?;
        println!(
            "delta_{}_{}={}",
            measure,
            survey::fmt_alpha(alpha),
            fmt_value(rec.score)
        );
    }
    for &measure in &q.alpha_c {
        let ce = monogamy::critical_exponent(state, measure, ExponentGrid::default(), 1e-3)
            .map_err(err)?;
        println!("alpha_c_{measure}={}", fmt_value(ce.value));
        if ce.right_censored {
            println!("alpha_c_{measure}_right_censored=true");
        }
    }
    for &(measure, alpha) in &q.localize {
        let res = localize(state, pair, measure, alpha, &opts).map_err(err)?;
        println!(
            "lqc_{}_{}={}",
            measure,
            survey::fmt_alpha(alpha),
            fmt_value(res.value)
        );
    }
    for &measure in &q.localize_pauli {
        let v = localize_pauli(state, pair, measure).map_err(err)?;
        println!("lc_pauli_{measure}={}", fmt_value(v));
    }
    for &measure in &q.lqc_sum {
        let v = localized_sum(state, measure, 1.0, nodal, &opts).map_err(err)?;
        println!("lqc_sum_{measure}={}", fmt_value(v));
    }
    for &(measure, alpha) in &q.bisum {
        let v = monogamy::bipartite_sum(state, measure, alpha, nodal).map_err(err)?;
        println!(
            "bisum_{}_{}={}",
            measure,
            survey::fmt_alpha(alpha),
            fmt_value(v)
        );
    }
    Ok(())
}

fn run_survey_cmd(args: &SurveyArgs) -> Result<(), CliError> {
    let family = match args.family.build().map_err(CliError::Usage)? {
        FamilySpec::Family(f) => f,
        FamilySpec::EqualDicke { .. } => {
            return Err(CliError::Usage(
                "dicke-equal is deterministic; survey it with --family gghz/dicke or use `measure`"
                    .to_string(),
            ))
        }
    };
    let measures = parse_measure_list(&args.measures).map_err(CliError::Usage)?;
    let pair = parse_pair(&args.pair).map_err(CliError::Usage)?;

    let mut config = SurveyConfig::new(family, args.samples, args.seed);
    config.measures = measures;
    config.alphas = args.alphas.clone();
    config.compute = ComputeFlags {
        ggm: true,
        monogamy: args.monogamy,
        alpha_c: args.alpha_c,
        localize: args.localize,
        localized_sum: args.lqc_sum,
    };
    config.bin_width = args.bin_width;
    config.nodal = args.nodal;
    config.pair = pair;
    config.localize_opts = LocalizeOptions {
        restarts: args.restarts,
        ..LocalizeOptions::default()
    };
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    eprintln!(
        "config: verb=survey family={} n={} samples={} seed={} measures={:?} alphas={:?} \
         ggm=true monogamy={} alpha_c={} localize={} lqc_sum={} bin_width={} nodal={} \
         pair={:?} restarts={} out={}",
        config.family.label(),
        config.family.n_qubits(),
        config.samples,
        config.seed,
        config
            .measures
            .iter()
            .map(|m| m.short_name())
            .collect::<Vec<_>>(),
        config.alphas,
        config.compute.monogamy,
        config.compute.alpha_c,
        config.compute.localize,
        config.compute.localized_sum,
        config.bin_width,
        config.nodal,
        config.pair,
        config.localize_opts.restarts,
        args.out
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "stdout".to_string()),
    );

    let result = match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| {
                CliError::Runtime(format!("cannot create {}: {e}", path.display()))
            })?;
            let mut writer = std::io::BufWriter::new(file);
            survey::write_csv(&config, &mut writer)
                .and_then(|()| writer.flush().map_err(Into::into))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            survey::write_csv(&config, &mut lock)
        }
    };
    result.map_err(|e| CliError::Runtime(e.to_string()))
}

pub(crate) enum CliError {
    Usage(String),
    Runtime(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let workers = cli.workers.or_else(|| {
        std::env::var("QCORR_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(k) = workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()
        {
            eprintln!("error: cannot configure {k} workers: {e}");
            return ExitCode::from(1);
        }
    }

    let outcome = match &cli.command {
        Command::Measure(args) => run_measure(args),
        Command::Survey(args) => run_survey_cmd(args),
        Command::Reproduce(args) => reproduce::run(args.target.as_str(), args.samples, args.seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
