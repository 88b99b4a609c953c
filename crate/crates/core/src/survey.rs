//! Seeded Monte-Carlo harness: sample a family, compute the requested
//! quantities per state, stream the records, and derive the binned and
//! summary statistics.

use std::io::Write;

use rayon::prelude::*;

use crate::ensembles::{SeedSpec, StateFamily};
use crate::error::{QcError, Result};
use crate::localize::{localize, localized_sum, LocalizeOptions};
use crate::measures::{self, QcMeasure};
use crate::monogamy::{self, CriticalExponent, ExponentGrid, VIOLATION_TOL};

/// Which quantities a survey computes per sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeFlags {
    pub ggm: bool,
    pub monogamy: bool,
    pub alpha_c: bool,
    pub localize: bool,
    pub localized_sum: bool,
}

impl Default for ComputeFlags {
    fn default() -> Self {
        ComputeFlags {
            ggm: true,
            monogamy: false,
            alpha_c: false,
            localize: false,
            localized_sum: false,
        }
    }
}

/// Full configuration of one survey run.
#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub family: StateFamily,
    pub samples: u64,
    pub seed: u64,
    pub measures: Vec<QcMeasure>,
    pub alphas: Vec<f64>,
    pub compute: ComputeFlags,
    pub bin_width: f64,
    /// Nodal party for monogamy scores and localized sums.
    pub nodal: usize,
    /// Pair receiving the localized correlation.
    pub pair: (usize, usize),
    pub localize_opts: LocalizeOptions,
    pub exponent_grid: ExponentGrid,
    pub refine_tol: f64,
}

impl SurveyConfig {
    pub fn new(family: StateFamily, samples: u64, seed: u64) -> Self {
        SurveyConfig {
            family,
            samples,
            seed,
            measures: vec![QcMeasure::Negativity],
            alphas: vec![1.0],
            compute: ComputeFlags::default(),
            bin_width: 0.05,
            nodal: 1,
            pair: (1, 2),
            localize_opts: LocalizeOptions::default(),
            exponent_grid: ExponentGrid::default(),
            refine_tol: 1e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if self.samples == 0 {
            return Err(QcError::InvalidConfig("samples must be >= 1".to_string()));
        }
        if !(self.bin_width > 0.0 && self.bin_width <= 0.5) {
            return Err(QcError::InvalidConfig(format!(
                "bin width must lie in (0, 0.5], got {}",
                self.bin_width
            )));
        }
        if self.alphas.iter().any(|&a| a <= 0.0) {
            return Err(QcError::InvalidConfig(
                "every exponent must be positive".to_string(),
            ));
        }
        let n = self.family.n_qubits();
        let needs_measures = self.compute.monogamy
            || self.compute.alpha_c
            || self.compute.localize
            || self.compute.localized_sum;
        if needs_measures {
            if self.measures.is_empty() {
                return Err(QcError::InvalidConfig(
                    "requested quantities need at least one measure".to_string(),
                ));
            }
            if n < 3 {
                return Err(QcError::InvalidConfig(format!(
                    "monogamy/localization need at least 3 qubits, family has {n}"
                )));
            }
        }
        if (self.compute.monogamy || self.compute.localize) && self.alphas.is_empty() {
            return Err(QcError::InvalidConfig(
                "monogamy and localization need at least one exponent".to_string(),
            ));
        }
        if self.nodal == 0 || self.nodal > n {
            return Err(QcError::QubitOutOfRange {
                index: self.nodal,
                n,
            });
        }
        let (i, j) = self.pair;
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(QcError::InvalidConfig(format!(
                "localization pair ({i},{j}) is invalid for {n} qubits"
            )));
        }
        Ok(())
    }
}

/// All quantities computed for one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRecord {
    pub sample_index: u64,
    pub family: String,
    pub n: usize,
    pub ggm: Option<f64>,
    /// `(measure, alpha, score)` in configuration order.
    pub scores: Vec<(QcMeasure, f64, f64)>,
    /// `(measure, alpha, sum of pairwise Q^alpha)`.
    pub bisums: Vec<(QcMeasure, f64, f64)>,
    pub alpha_c: Vec<(QcMeasure, CriticalExponent)>,
    /// Localized value on the configured pair, per `(measure, alpha)`.
    pub lqc_pair: Vec<(QcMeasure, f64, f64)>,
    /// Localized sum over all partners of the nodal qubit (alpha = 1).
    pub lqc_sum: Vec<(QcMeasure, f64)>,
    /// True when any populated score violates the monogamy inequality.
    pub any_violation: bool,
}

impl SurveyRecord {
    pub fn score(&self, measure: QcMeasure, alpha: f64) -> Option<f64> {
        self.scores
            .iter()
            .find(|(m, a, _)| *m == measure && *a == alpha)
            .map(|(_, _, v)| *v)
    }

    pub fn lqc(&self, measure: QcMeasure, alpha: f64) -> Option<f64> {
        self.lqc_pair
            .iter()
            .find(|(m, a, _)| *m == measure && *a == alpha)
            .map(|(_, _, v)| *v)
    }

    pub fn lqc_sum_of(&self, measure: QcMeasure) -> Option<f64> {
        self.lqc_sum
            .iter()
            .find(|(m, _)| *m == measure)
            .map(|(_, v)| *v)
    }

    pub fn bisum(&self, measure: QcMeasure, alpha: f64) -> Option<f64> {
        self.bisums
            .iter()
            .find(|(m, a, _)| *m == measure && *a == alpha)
            .map(|(_, _, v)| *v)
    }

    pub fn alpha_c_of(&self, measure: QcMeasure) -> Option<CriticalExponent> {
        self.alpha_c
            .iter()
            .find(|(m, _)| *m == measure)
            .map(|(_, c)| *c)
    }
}

fn compute_record(config: &SurveyConfig, index: u64) -> Result<SurveyRecord> {
    let state = config.family.realize(&SeedSpec::new(config.seed, index))?;
    let mut rec = SurveyRecord {
        sample_index: index,
        family: config.family.label(),
        n: state.n_qubits(),
        ggm: None,
        scores: Vec::new(),
        bisums: Vec::new(),
        alpha_c: Vec::new(),
        lqc_pair: Vec::new(),
        lqc_sum: Vec::new(),
        any_violation: false,
    };
    if config.compute.ggm {
        rec.ggm = Some(measures::ggm(&state));
    }
    if config.compute.monogamy || config.compute.alpha_c {
        for &measure in &config.measures {
            let (one, pairs) = monogamy::raw_terms(&state, measure, config.nodal)?;
            if config.compute.monogamy {
                for &alpha in &config.alphas {
                    let bisum: f64 = pairs.iter().map(|q| q.powf(alpha)).sum();
                    let score = one.powf(alpha) - bisum;
                    if score < VIOLATION_TOL {
                        rec.any_violation = true;
                    }
                    rec.scores.push((measure, alpha, score));
                    rec.bisums.push((measure, alpha, bisum));
                }
            }
            if config.compute.alpha_c {
                let ce = monogamy::critical_exponent_from_raw(
                    one,
                    &pairs,
                    config.exponent_grid,
                    config.refine_tol,
                )?;
                rec.alpha_c.push((measure, ce));
            }
        }
    }
    if config.compute.localize {
        for &measure in &config.measures {
            for &alpha in &config.alphas {
                let res = localize(&state, config.pair, measure, alpha, &config.localize_opts)?;
                rec.lqc_pair.push((measure, alpha, res.value));
            }
        }
    }
    if config.compute.localized_sum {
        for &measure in &config.measures {
            let total = localized_sum(&state, measure, 1.0, config.nodal, &config.localize_opts)?;
            rec.lqc_sum.push((measure, total));
        }
    }
    Ok(rec)
}

/// Batch size for the data-parallel map; records are re-emitted in
/// sample-index order regardless of worker count.
const CHUNK: u64 = 256;

/// Run the survey, emitting records in sample-index order with constant
/// memory. Record `i` depends only on `(seed, i)`.
pub fn run_survey<F: FnMut(SurveyRecord)>(config: &SurveyConfig, mut emit: F) -> Result<()> {
    config.validate()?;
    let mut start = 0u64;
    while start < config.samples {
        let end = (start + CHUNK).min(config.samples);
        let chunk: Vec<Result<SurveyRecord>> = (start..end)
            .into_par_iter()
            .map(|i| compute_record(config, i))
            .collect();
        for rec in chunk {
            emit(rec?);
        }
        start = end;
    }
    Ok(())
}

/// Convenience wrapper collecting every record in memory.
pub fn run_survey_collect(config: &SurveyConfig) -> Result<Vec<SurveyRecord>> {
    let mut out = Vec::with_capacity(config.samples as usize);
    run_survey(config, |rec| out.push(rec))?;
    Ok(out)
}

/// Exponent rendering used in CSV column names and CLI keys: `1`, `0.5`, ...
pub fn fmt_alpha(alpha: f64) -> String {
    format!("{alpha}")
}

fn fmt_real(v: f64) -> String {
    // 9 significant digits
    format!("{v:.8e}")
}

/// CSV header for `config`, matching [`record_csv_row`].
pub fn csv_header(config: &SurveyConfig) -> String {
    let mut cols = vec![
        "sample_index".to_string(),
        "family".to_string(),
        "n".to_string(),
        "ggm".to_string(),
    ];
    if config.compute.monogamy {
        for m in &config.measures {
            for a in &config.alphas {
                cols.push(format!("{m}_score_a{}", fmt_alpha(*a)));
            }
        }
    }
    if config.compute.alpha_c {
        for m in &config.measures {
            cols.push(format!("{m}_alpha_c"));
        }
    }
    if config.compute.localize {
        for m in &config.measures {
            for a in &config.alphas {
                cols.push(format!("{m}_lqc_pair12_a{}", fmt_alpha(*a)));
            }
        }
    }
    if config.compute.localized_sum {
        for m in &config.measures {
            cols.push(format!("{m}_lqc_sum"));
        }
    }
    if config.compute.monogamy {
        for m in &config.measures {
            for a in &config.alphas {
                cols.push(format!("{m}_bisum_a{}", fmt_alpha(*a)));
            }
        }
    }
    cols.push("any_violation".to_string());
    cols.join(",")
}

/// One CSV data row; field order matches [`csv_header`] for the same config.
pub fn record_csv_row(rec: &SurveyRecord) -> String {
    let mut fields = vec![
        rec.sample_index.to_string(),
        rec.family.clone(),
        rec.n.to_string(),
        rec.ggm.map(fmt_real).unwrap_or_default(),
    ];
    fields.extend(rec.scores.iter().map(|(_, _, v)| fmt_real(*v)));
    fields.extend(rec.alpha_c.iter().map(|(_, ce)| fmt_real(ce.value)));
    fields.extend(rec.lqc_pair.iter().map(|(_, _, v)| fmt_real(*v)));
    fields.extend(rec.lqc_sum.iter().map(|(_, v)| fmt_real(*v)));
    fields.extend(rec.bisums.iter().map(|(_, _, v)| fmt_real(*v)));
    fields.push(rec.any_violation.to_string());
    fields.join(",")
}

/// Stream the survey as UTF-8 CSV with a header row.
pub fn write_csv<W: Write>(config: &SurveyConfig, out: &mut W) -> Result<()> {
    writeln!(out, "{}", csv_header(config))?;
    let mut io_err: Option<std::io::Error> = None;
    run_survey(config, |rec| {
        if io_err.is_none() {
            if let Err(e) = writeln!(out, "{}", record_csv_row(&rec)) {
                io_err = Some(e);
            }
        }
    })?;
    match io_err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

/// Uniform binning starting at 0; a value exactly on an edge goes to the
/// upper bin.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_width: f64,
    /// `bins + 1` edges, `[0, w, 2w, ...]`.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Counts normalized by the total; zeros when the input was empty.
    pub frequencies: Vec<f64>,
}

fn bin_index(value: f64, bin_width: f64) -> usize {
    (value / bin_width).floor() as usize
}

/// Bin non-negative finite values into uniform bins of `bin_width`.
pub fn histogram(values: &[f64], bin_width: f64) -> Result<Histogram> {
    if !(bin_width > 0.0 && bin_width <= 0.5) {
        return Err(QcError::InvalidParameter(format!(
            "bin width must lie in (0, 0.5], got {bin_width}"
        )));
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(QcError::InvalidParameter(
            "histogram inputs must be finite and non-negative".to_string(),
        ));
    }
    if values.is_empty() {
        return Ok(Histogram {
            bin_width,
            bin_edges: vec![0.0],
            counts: Vec::new(),
            frequencies: Vec::new(),
        });
    }
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    let bins = bin_index(max, bin_width) + 1;
    let mut counts = vec![0u64; bins];
    for &v in values {
        counts[bin_index(v, bin_width)] += 1;
    }
    let total = values.len() as f64;
    let frequencies = counts.iter().map(|&c| c as f64 / total).collect();
    Ok(Histogram {
        bin_width,
        bin_edges: (0..=bins).map(|k| k as f64 * bin_width).collect(),
        counts,
        frequencies,
    })
}

/// Per-GGM-bin fraction of non-monogamous records; `None` marks an empty bin.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedFractions {
    pub bin_width: f64,
    pub bin_edges: Vec<f64>,
    pub fractions: Vec<Option<f64>>,
}

/// Fraction of records violating the monogamy inequality per GGM bin.
pub fn fraction_nonmonogamous(
    records: &[SurveyRecord],
    measure: QcMeasure,
    alpha: f64,
    bin_width: f64,
) -> Result<BinnedFractions> {
    if !(bin_width > 0.0 && bin_width <= 0.5) {
        return Err(QcError::InvalidParameter(format!(
            "bin width must lie in (0, 0.5], got {bin_width}"
        )));
    }
    let mut pairs = Vec::with_capacity(records.len());
    for rec in records {
        let g = rec
            .ggm
            .ok_or_else(|| QcError::MissingColumn("ggm".to_string()))?;
        let score = rec.score(measure, alpha).ok_or_else(|| {
            QcError::MissingColumn(format!("{measure}_score_a{}", fmt_alpha(alpha)))
        })?;
        pairs.push((g, score));
    }
    if pairs.is_empty() {
        return Ok(BinnedFractions {
            bin_width,
            bin_edges: vec![0.0],
            fractions: Vec::new(),
        });
    }
    let max = pairs.iter().map(|(g, _)| *g).fold(0.0f64, f64::max);
    let bins = bin_index(max, bin_width) + 1;
    let mut totals = vec![0u64; bins];
    let mut violating = vec![0u64; bins];
    for (g, score) in pairs {
        let b = bin_index(g, bin_width);
        totals[b] += 1;
        if score < VIOLATION_TOL {
            violating[b] += 1;
        }
    }
    let fractions = totals
        .iter()
        .zip(&violating)
        .map(|(&t, &v)| if t == 0 { None } else { Some(v as f64 / t as f64) })
        .collect();
    Ok(BinnedFractions {
        bin_width,
        bin_edges: (0..=bins).map(|k| k as f64 * bin_width).collect(),
        fractions,
    })
}

/// Largest GGM among monogamy-violating records, or the distinguished
/// none-violating outcome (reported as 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalGgm {
    Violating(f64),
    NoneViolating,
}

impl CriticalGgm {
    pub fn value(&self) -> f64 {
        match self {
            CriticalGgm::Violating(g) => *g,
            CriticalGgm::NoneViolating => 0.0,
        }
    }
}

/// Maximum GGM among records whose `(measure, alpha)` score violates the
/// monogamy inequality.
pub fn critical_ggm(
    records: &[SurveyRecord],
    measure: QcMeasure,
    alpha: f64,
) -> Result<CriticalGgm> {
    let mut max_g: Option<f64> = None;
    for rec in records {
        let g = rec
            .ggm
            .ok_or_else(|| QcError::MissingColumn("ggm".to_string()))?;
        let score = rec.score(measure, alpha).ok_or_else(|| {
            QcError::MissingColumn(format!("{measure}_score_a{}", fmt_alpha(alpha)))
        })?;
        if score < VIOLATION_TOL {
            max_g = Some(max_g.map_or(g, |m: f64| m.max(g)));
        }
    }
    Ok(match max_g {
        Some(g) => CriticalGgm::Violating(g),
        None => CriticalGgm::NoneViolating,
    })
}

/// Mean, population standard deviation and extrema of a nonempty sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

pub fn summary_stats(values: &[f64]) -> Result<SummaryStats> {
    if values.is_empty() {
        return Err(QcError::EmptyInput);
    }
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count as f64;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(SummaryStats {
        mean,
        sd: var.sqrt(),
        min,
        max,
        count,
    })
}

/// Extremes of the localized value (alpha = 1) with the GGM of the states
/// attaining them; ties resolved by the lowest sample index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalLocalization {
    pub min_value: f64,
    pub ggm_at_min: f64,
    pub max_value: f64,
    pub ggm_at_max: f64,
}

pub fn extremal_localization(
    records: &[SurveyRecord],
    measure: QcMeasure,
) -> Result<ExtremalLocalization> {
    let mut best: Option<ExtremalLocalization> = None;
    let mut sorted: Vec<&SurveyRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.sample_index);
    for rec in sorted {
        let g = rec
            .ggm
            .ok_or_else(|| QcError::MissingColumn("ggm".to_string()))?;
        let v = rec
            .lqc(measure, 1.0)
            .ok_or_else(|| QcError::MissingColumn(format!("{measure}_lqc_pair12_a1")))?;
        match &mut best {
            None => {
                best = Some(ExtremalLocalization {
                    min_value: v,
                    ggm_at_min: g,
                    max_value: v,
                    ggm_at_max: g,
                })
            }
            Some(b) => {
                if v < b.min_value {
                    b.min_value = v;
                    b.ggm_at_min = g;
                }
                if v > b.max_value {
                    b.max_value = v;
                    b.ggm_at_max = g;
                }
            }
        }
    }
    best.ok_or(QcError::EmptyInput)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn gghz_config(samples: u64) -> SurveyConfig {
        let mut config = SurveyConfig::new(
            StateFamily::GGhz {
                n: 3,
                alpha: 0.8f64.sqrt(),
            },
            samples,
            7,
        );
        config.compute.monogamy = true;
        config
    }

    #[test]
    fn gghz_survey_produces_identical_records() {
        let records = run_survey_collect(&gghz_config(3)).unwrap();
        assert_eq!(records.len(), 3);
        for rec in &records {
            assert_abs_diff_eq!(rec.ggm.unwrap(), 0.2, epsilon = 1e-9);
            assert_abs_diff_eq!(
                rec.score(QcMeasure::Negativity, 1.0).unwrap(),
                0.4,
                epsilon = 1e-9
            );
            assert!(!rec.any_violation);
        }
        assert_eq!(records[0].ggm, records[1].ggm);
        assert_eq!(records[1].scores, records[2].scores);
    }

    #[test]
    fn survey_is_thread_count_invariant() {
        let mut config = SurveyConfig::new(StateFamily::HaarRandom { n: 3 }, 40, 99);
        config.compute.monogamy = true;
        config.measures = vec![QcMeasure::Negativity, QcMeasure::Concurrence];
        config.alphas = vec![0.5, 1.0];

        let render = |workers: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .unwrap();
            pool.install(|| {
                let mut buf = Vec::new();
                write_csv(&config, &mut buf).unwrap();
                String::from_utf8(buf).unwrap()
            })
        };
        let single = render(1);
        let multi = render(4);
        assert_eq!(single, multi);
        assert_eq!(single.lines().count(), 41);
    }

    #[test]
    fn csv_layout_matches_config() {
        let mut config = gghz_config(1);
        config.compute.alpha_c = true;
        config.compute.localize = true;
        config.compute.localized_sum = true;
        config.alphas = vec![0.5, 1.0];
        let header = csv_header(&config);
        assert_eq!(
            header,
            "sample_index,family,n,ggm,neg_score_a0.5,neg_score_a1,neg_alpha_c,\
             neg_lqc_pair12_a0.5,neg_lqc_pair12_a1,neg_lqc_sum,neg_bisum_a0.5,neg_bisum_a1,\
             any_violation"
        );
        let records = run_survey_collect(&config).unwrap();
        let row = record_csv_row(&records[0]);
        assert_eq!(row.split(',').count(), header.split(',').count());
    }

    #[test]
    fn histogram_bining_rules() {
        let h = histogram(&[0.01, 0.02, 0.07], 0.05).unwrap();
        assert_eq!(h.counts, vec![2, 1]);
        assert_abs_diff_eq!(h.frequencies[0], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.frequencies[1], 1.0 / 3.0, epsilon = 1e-12);
        let total: f64 = h.frequencies.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);

        let h = histogram(&[], 0.05).unwrap();
        assert!(h.counts.is_empty());

        // a value exactly on an edge lands in the upper bin
        let h = histogram(&[0.05], 0.05).unwrap();
        assert_eq!(h.counts, vec![0, 1]);

        assert!(histogram(&[f64::NAN], 0.05).is_err());
        assert!(histogram(&[0.1], 0.6).is_err());
    }

    fn synthetic_record(index: u64, ggm: f64, score: f64, lqc: f64) -> SurveyRecord {
        SurveyRecord {
            sample_index: index,
            family: "synthetic".to_string(),
            n: 3,
            ggm: Some(ggm),
            scores: vec![(QcMeasure::Negativity, 1.0, score)],
            bisums: vec![],
            alpha_c: vec![],
            lqc_pair: vec![(QcMeasure::Negativity, 1.0, lqc)],
            lqc_sum: vec![],
            any_violation: score < VIOLATION_TOL,
        }
    }

    #[test]
    fn nonmonogamous_fractions_per_bin() {
        let records: Vec<SurveyRecord> = vec![
            synthetic_record(0, 0.02, -0.1, 0.0),
            synthetic_record(1, 0.03, 0.1, 0.0),
            synthetic_record(2, 0.12, 0.2, 0.0),
        ];
        let f = fraction_nonmonogamous(&records, QcMeasure::Negativity, 1.0, 0.05).unwrap();
        assert_eq!(f.fractions.len(), 3);
        assert_abs_diff_eq!(f.fractions[0].unwrap(), 0.5, epsilon = 1e-12);
        assert!(f.fractions[1].is_none());
        assert_abs_diff_eq!(f.fractions[2].unwrap(), 0.0, epsilon = 1e-12);

        assert!(
            fraction_nonmonogamous(&records, QcMeasure::Discord, 1.0, 0.05).is_err(),
            "missing column must be reported"
        );
    }

    #[test]
    fn critical_ggm_picks_largest_violating() {
        let records = vec![
            synthetic_record(0, 0.10, -0.1, 0.0),
            synthetic_record(1, 0.20, -0.2, 0.0),
            synthetic_record(2, 0.40, 0.3, 0.0),
        ];
        let gc = critical_ggm(&records, QcMeasure::Negativity, 1.0).unwrap();
        assert_eq!(gc, CriticalGgm::Violating(0.20));
        assert_abs_diff_eq!(gc.value(), 0.20, epsilon = 1e-12);

        let records = vec![synthetic_record(0, 0.10, 0.1, 0.0)];
        let gc = critical_ggm(&records, QcMeasure::Negativity, 1.0).unwrap();
        assert_eq!(gc, CriticalGgm::NoneViolating);
        assert_abs_diff_eq!(gc.value(), 0.0, epsilon = 0.0);
    }

    #[test]
    fn summary_stats_definitions() {
        let s = summary_stats(&[1.0, 1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(s.mean, 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(s.sd, 0.0, epsilon = 0.0);

        let s = summary_stats(&[0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(s.mean, 0.5, epsilon = 0.0);
        assert_abs_diff_eq!(s.sd, 0.5, epsilon = 0.0);
        assert_eq!((s.min, s.max, s.count), (0.0, 1.0, 2));

        assert!(summary_stats(&[]).is_err());
    }

    #[test]
    fn extremal_localization_rules() {
        let records = vec![
            synthetic_record(0, 0.3, 0.0, 0.1),
            synthetic_record(1, 0.1, 0.0, 0.9),
        ];
        let e = extremal_localization(&records, QcMeasure::Negativity).unwrap();
        assert_abs_diff_eq!(e.min_value, 0.1, epsilon = 0.0);
        assert_abs_diff_eq!(e.ggm_at_min, 0.3, epsilon = 0.0);
        assert_abs_diff_eq!(e.max_value, 0.9, epsilon = 0.0);
        assert_abs_diff_eq!(e.ggm_at_max, 0.1, epsilon = 0.0);

        // constant column: min = max; tie broken by lowest index
        let records = vec![
            synthetic_record(1, 0.4, 0.0, 0.5),
            synthetic_record(0, 0.2, 0.0, 0.5),
        ];
        let e = extremal_localization(&records, QcMeasure::Negativity).unwrap();
        assert_abs_diff_eq!(e.min_value, e.max_value, epsilon = 0.0);
        assert_abs_diff_eq!(e.ggm_at_min, 0.2, epsilon = 0.0);
        assert_abs_diff_eq!(e.ggm_at_max, 0.2, epsilon = 0.0);
    }

    #[test]
    fn config_validation_catches_infeasible_flags() {
        let mut config = SurveyConfig::new(StateFamily::HaarRandom { n: 2 }, 10, 1);
        config.compute.localize = true;
        assert!(matches!(config.validate(), Err(QcError::InvalidConfig(_))));

        let mut config = SurveyConfig::new(StateFamily::HaarRandom { n: 3 }, 10, 1);
        config.bin_width = 0.0;
        assert!(config.validate().is_err());

        let mut config = SurveyConfig::new(StateFamily::HaarRandom { n: 3 }, 10, 1);
        config.alphas = vec![-1.0];
        assert!(config.validate().is_err());

        let config = SurveyConfig::new(StateFamily::HaarRandom { n: 3 }, 10, 1);
        assert!(config.validate().is_ok());
    }
}
