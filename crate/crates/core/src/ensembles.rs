//! Seeded, reproducible samplers for the surveyed state families plus
//! deterministic constructors for reference states.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{QcError, Result};
use crate::qstate::{normalize, PureState, CZERO};

/// Identifies one sample of one survey: the per-sample random stream is a
/// pure function of `(master_seed, sample_index)`, so surveys are
/// parallelism-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub sample_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, sample_index: u64) -> Self {
        SeedSpec {
            master_seed,
            sample_index,
        }
    }

    /// Dedicated RNG for this sample.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix64(self.master_seed, self.sample_index))
    }
}

/// SplitMix64-style finalizer combining a master seed with a sample index.
fn mix64(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One surveyed family of pure states.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFamily {
    /// Haar-uniform random state of `n` qubits.
    HaarRandom { n: usize },
    /// Three-qubit W-class state `a|000> + b|001> + c|010> + d|100>`.
    WClass,
    /// Random Dicke state of `n` qubits with `r` excitations.
    Dicke { n: usize, r: usize },
    /// `alpha|0..0> + sqrt(1-alpha^2)|1..1>`.
    GGhz { n: usize, alpha: f64 },
    /// Canonical three-qubit form
    /// `a1|000> + a2 e^{i phi}|100> + a3|101> + a4|110> + a5|111>`.
    CanonicalThreeQubit { a: [f64; 5], phi: f64 },
}

impl StateFamily {
    pub fn n_qubits(&self) -> usize {
        match self {
            StateFamily::HaarRandom { n } | StateFamily::Dicke { n, .. } => *n,
            StateFamily::GGhz { n, .. } => *n,
            StateFamily::WClass | StateFamily::CanonicalThreeQubit { .. } => 3,
        }
    }

    /// True when different sample indices yield different states.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            StateFamily::HaarRandom { .. } | StateFamily::WClass | StateFamily::Dicke { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StateFamily::HaarRandom { n } => check_haar_n(*n),
            StateFamily::WClass => Ok(()),
            StateFamily::Dicke { n, r } => check_dicke_params(*n, *r),
            StateFamily::GGhz { n, alpha } => {
                if *n < 2 {
                    return Err(QcError::InvalidParameter(format!(
                        "gGHZ needs n >= 2, got {n}"
                    )));
                }
                check_gghz_alpha(*alpha)
            }
            StateFamily::CanonicalThreeQubit { a, phi } => check_canonical3(a, *phi),
        }
    }

    /// Short tag used in CSV output, e.g. `random3`, `dicke4r2`.
    pub fn label(&self) -> String {
        match self {
            StateFamily::HaarRandom { n } => format!("random{n}"),
            StateFamily::WClass => "wclass".to_string(),
            StateFamily::Dicke { n, r } => format!("dicke{n}r{r}"),
            StateFamily::GGhz { n, .. } => format!("gghz{n}"),
            StateFamily::CanonicalThreeQubit { .. } => "canonical3".to_string(),
        }
    }

    /// Produce the state for one sample. Deterministic constructors ignore
    /// the sample index.
    pub fn realize(&self, seed: &SeedSpec) -> Result<PureState> {
        match self {
            StateFamily::HaarRandom { n } => sample_haar(*n, seed),
            StateFamily::WClass => Ok(sample_wclass(seed)),
            StateFamily::Dicke { n, r } => sample_dicke(*n, *r, seed),
            StateFamily::GGhz { n, alpha } => make_gghz(*n, *alpha),
            StateFamily::CanonicalThreeQubit { a, phi } => make_canonical3(a, *phi),
        }
    }
}

fn check_haar_n(n: usize) -> Result<()> {
    if !(2..=8).contains(&n) {
        return Err(QcError::InvalidParameter(format!(
            "Haar sampler supports 2..=8 qubits, got {n}"
        )));
    }
    Ok(())
}

fn check_dicke_params(n: usize, r: usize) -> Result<()> {
    if !(2..=8).contains(&n) {
        return Err(QcError::InvalidParameter(format!(
            "Dicke sampler supports 2..=8 qubits, got {n}"
        )));
    }
    if r == 0 || r >= n {
        return Err(QcError::InvalidParameter(format!(
            "Dicke excitations must satisfy 1 <= r <= n-1, got r={r}, n={n}"
        )));
    }
    Ok(())
}

fn check_gghz_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(QcError::InvalidParameter(format!(
            "gGHZ coefficient must lie in (0,1), got {alpha}"
        )));
    }
    Ok(())
}

fn check_canonical3(a: &[f64; 5], phi: f64) -> Result<()> {
    if a.iter().any(|&x| x < 0.0) {
        return Err(QcError::InvalidParameter(
            "canonical coefficients must be nonnegative".to_string(),
        ));
    }
    let norm_sqr: f64 = a.iter().map(|x| x * x).sum();
    if (norm_sqr - 1.0).abs() > 1e-9 {
        return Err(QcError::NotNormalized((norm_sqr - 1.0).abs()));
    }
    if !(0.0..=std::f64::consts::TAU).contains(&phi) {
        return Err(QcError::InvalidParameter(format!(
            "phase must lie in [0, 2*pi], got {phi}"
        )));
    }
    Ok(())
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Normalize, regenerating in the measure-zero event of a zero draw.
fn normalize_resampling<R: Rng>(
    rng: &mut R,
    fill: impl Fn(&mut R) -> Vec<Complex64>,
) -> PureState {
    loop {
        let raw = fill(rng);
        match normalize(&raw) {
            Ok(state) => return state,
            Err(QcError::DegenerateSample) => continue,
            Err(e) => unreachable!("sampler produced invalid vector: {e}"),
        }
    }
}

/// Haar-uniform pure state of `n` qubits: every amplitude is an independent
/// standard complex Gaussian, then the vector is normalized.
pub fn sample_haar(n: usize, seed: &SeedSpec) -> Result<PureState> {
    check_haar_n(n)?;
    let mut rng = seed.rng();
    Ok(normalize_resampling(&mut rng, |rng| {
        (0..(1usize << n)).map(|_| gaussian_complex(rng)).collect()
    }))
}

/// Random three-qubit W-class state `a|000> + b|001> + c|010> + d|100>`
/// with complex Gaussian coefficients.
pub fn sample_wclass(seed: &SeedSpec) -> PureState {
    let mut rng = seed.rng();
    normalize_resampling(&mut rng, |rng| {
        let mut raw = vec![CZERO; 8];
        for &idx in &[0b000, 0b001, 0b010, 0b100] {
            raw[idx] = gaussian_complex(rng);
        }
        raw
    })
}

/// Basis indices of `n`-qubit states with exactly `r` qubits in |1>.
pub(crate) fn dicke_support(n: usize, r: usize) -> Vec<usize> {
    (0..(1usize << n))
        .filter(|idx| idx.count_ones() as usize == r)
        .collect()
}

/// Random Dicke state: complex Gaussian coefficients on the C(n,r) basis
/// states with `r` excitations.
pub fn sample_dicke(n: usize, r: usize, seed: &SeedSpec) -> Result<PureState> {
    check_dicke_params(n, r)?;
    let support = dicke_support(n, r);
    let mut rng = seed.rng();
    Ok(normalize_resampling(&mut rng, |rng| {
        let mut raw = vec![CZERO; 1usize << n];
        for &idx in &support {
            raw[idx] = gaussian_complex(rng);
        }
        raw
    }))
}

/// `alpha|0..0> + sqrt(1-alpha^2)|1..1>` on `n` qubits.
pub fn make_gghz(n: usize, alpha: f64) -> Result<PureState> {
    if n < 2 {
        return Err(QcError::InvalidParameter(format!(
            "gGHZ needs n >= 2, got {n}"
        )));
    }
    check_gghz_alpha(alpha)?;
    let dim = 1usize << n;
    let mut raw = vec![CZERO; dim];
    raw[0] = Complex64::new(alpha, 0.0);
    raw[dim - 1] = Complex64::new((1.0 - alpha * alpha).sqrt(), 0.0);
    normalize(&raw)
}

/// Dicke state with all C(n,r) coefficients equal.
pub fn make_dicke_equal(n: usize, r: usize) -> Result<PureState> {
    check_dicke_params(n, r)?;
    let support = dicke_support(n, r);
    let coeff = 1.0 / (support.len() as f64).sqrt();
    let mut raw = vec![CZERO; 1usize << n];
    for &idx in &support {
        raw[idx] = Complex64::new(coeff, 0.0);
    }
    normalize(&raw)
}

/// Canonical three-qubit state
/// `a1|000> + a2 e^{i phi}|100> + a3|101> + a4|110> + a5|111>`.
pub fn make_canonical3(a: &[f64; 5], phi: f64) -> Result<PureState> {
    check_canonical3(a, phi)?;
    let mut raw = vec![CZERO; 8];
    raw[0b000] = Complex64::new(a[0], 0.0);
    raw[0b100] = Complex64::new(phi.cos(), phi.sin()) * a[1];
    raw[0b101] = Complex64::new(a[2], 0.0);
    raw[0b110] = Complex64::new(a[3], 0.0);
    raw[0b111] = Complex64::new(a[4], 0.0);
    normalize(&raw)
}
