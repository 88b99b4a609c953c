//! Localizable quantum correlations: optimize local rank-1 projective
//! measurements on n-2 qubits to maximize the branch-averaged correlation of
//! the remaining pair, plus the Pauli-restricted variant and localized sums.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QcError, Result};
use crate::measures::QcMeasure;
use crate::optim::{nelder_mead, NmOptions};
use crate::qstate::{
    binary_entropy, projector_kets, scatter, validate_subset, BasisAngles, MeasurementBasis,
    PauliAxis, PureState, BRANCH_PRUNE_TOL, CONE, CZERO,
};

/// Stream seed for the uniform-random angle seeds; a fixed constant keeps
/// every localize call a pure function of its inputs.
const RANDOM_START_SEED: u64 = 0x10ca_11ce_5eed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizeOptions {
    /// Number of simplex starts (best Pauli seeds plus random angle seeds).
    pub restarts: usize,
    /// Objective tolerance per simplex run.
    pub tol: f64,
    /// Iteration cap per simplex run.
    pub max_iter: usize,
}

impl Default for LocalizeOptions {
    fn default() -> Self {
        LocalizeOptions {
            restarts: 20,
            tol: 1e-6,
            max_iter: 500,
        }
    }
}

/// Outcome of one localization.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationResult {
    /// The localized value `LQ^alpha`, a certified lower bound on the true
    /// optimum.
    pub value: f64,
    /// Optimal measurement basis over the measured qubits (sorted ascending).
    pub angles: MeasurementBasis,
    /// Surviving branches as `(p_k, Q^alpha(|phi_k>))`.
    pub branches: Vec<(f64, f64)>,
    pub restarts_used: usize,
    pub converged: bool,
}

/// Branch-averaged objective for a fixed (state, pair, measure, alpha).
struct PairObjective<'a> {
    amps: &'a [Complex64],
    m: usize,
    meas_idx: Vec<usize>,
    pair_idx: [usize; 4],
    measure: QcMeasure,
    alpha: f64,
}

impl<'a> PairObjective<'a> {
    fn new(state: &'a PureState, pair: (usize, usize), measure: QcMeasure, alpha: f64) -> Result<Self> {
        let n = state.n_qubits();
        if n < 3 {
            return Err(QcError::InvalidParameter(format!(
                "localization needs at least 3 qubits, got {n}"
            )));
        }
        if pair.0 == pair.1 {
            return Err(QcError::InvalidParameter(
                "pair qubits must be distinct".to_string(),
            ));
        }
        let pair_sorted = validate_subset(&[pair.0, pair.1], n)?;
        let measured: Vec<usize> = (1..=n).filter(|q| !pair_sorted.contains(q)).collect();
        let m = measured.len();
        let meas_idx: Vec<usize> = (0..(1usize << m))
            .map(|e| scatter(e, &measured, n))
            .collect();
        let mut pair_idx = [0usize; 4];
        for (u, slot) in pair_idx.iter_mut().enumerate() {
            *slot = scatter(u, &pair_sorted, n);
        }
        Ok(PairObjective {
            amps: state.amplitudes(),
            m,
            meas_idx,
            pair_idx,
            measure,
            alpha,
        })
    }

    /// Branch-averaged `Q^alpha`; optionally collects the branches.
    fn eval_impl(&self, params: &[f64], mut collect: Option<&mut Vec<(f64, f64)>>) -> f64 {
        let m = self.m;
        let outcomes = 1usize << m;
        let mut kets = Vec::with_capacity(m);
        for c in params.chunks_exact(2) {
            kets.push(projector_kets(BasisAngles { theta: c[0], phi: c[1] }));
        }
        let mut total = 0.0;
        for k in 0..outcomes {
            let mut branch = [CZERO; 4];
            for e in 0..outcomes {
                let mut coef = CONE;
                for (j, kq) in kets.iter().enumerate() {
                    let kb = (k >> (m - 1 - j)) & 1;
                    let eb = (e >> (m - 1 - j)) & 1;
                    coef *= kq[kb][eb].conj();
                }
                if coef.norm_sqr() < 1e-30 {
                    continue;
                }
                let base = self.meas_idx[e];
                for (slot, &offset) in branch.iter_mut().zip(&self.pair_idx) {
                    *slot += coef * self.amps[base | offset];
                }
            }
            let p: f64 = branch.iter().map(|c| c.norm_sqr()).sum();
            if p < BRANCH_PRUNE_TOL {
                continue;
            }
            let det = (branch[0] * branch[3] - branch[1] * branch[2]).norm() / p;
            let q = match self.measure {
                QcMeasure::Negativity => det,
                QcMeasure::Concurrence => 2.0 * det,
                QcMeasure::Discord => {
                    let gap = (0.25 - det * det).max(0.0).sqrt();
                    binary_entropy(0.5 + gap)
                }
            };
            let q_alpha = if self.alpha == 1.0 { q } else { q.powf(self.alpha) };
            total += p * q_alpha;
            if let Some(branches) = collect.as_deref_mut() {
                branches.push((p, q_alpha));
            }
        }
        total
    }

    fn eval(&self, params: &[f64]) -> f64 {
        self.eval_impl(params, None)
    }
}

fn pauli_combo(m: usize, combo: usize) -> Vec<PauliAxis> {
    let mut axes = Vec::with_capacity(m);
    let mut c = combo;
    for _ in 0..m {
        axes.push(PauliAxis::ALL[c % 3]);
        c /= 3;
    }
    axes
}

fn flat_params(basis: &MeasurementBasis) -> Vec<f64> {
    basis
        .angles()
        .iter()
        .flat_map(|a| [a.theta, a.phi])
        .collect()
}

/// Maximize the branch-averaged `Q^alpha` of the post-measurement pair over
/// local rank-1 projective measurements on the other n-2 qubits.
///
/// Every Pauli-basis combination is evaluated and the best ones seed the
/// simplex runs, so the returned value never falls below the Pauli-restricted
/// optimum; it is a lower bound on the true optimum by construction.
pub fn localize(
    state: &PureState,
    pair: (usize, usize),
    measure: QcMeasure,
    alpha: f64,
    opts: &LocalizeOptions,
) -> Result<LocalizationResult> {
    if alpha <= 0.0 {
        return Err(QcError::InvalidParameter(format!(
            "exponent must be positive, got {alpha}"
        )));
    }
    if opts.restarts == 0 {
        return Err(QcError::InvalidParameter(
            "at least one restart is required".to_string(),
        ));
    }
    let obj = PairObjective::new(state, pair, measure, alpha)?;
    let m = obj.m;
    let combos = 3usize.pow(m as u32);

    let mut pauli_points: Vec<(f64, Vec<f64>)> = (0..combos)
        .map(|c| {
            let basis = MeasurementBasis::pauli(&pauli_combo(m, c));
            let params = flat_params(&basis);
            (obj.eval(&params), params)
        })
        .collect();
    pauli_points.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite objective"));
    let best_pauli = pauli_points[0].0;

    let n_pauli_starts = combos.min(opts.restarts);
    let mut starts: Vec<Vec<f64>> = pauli_points
        .iter()
        .take(n_pauli_starts)
        .map(|(_, p)| p.clone())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_START_SEED);
    while starts.len() < opts.restarts {
        let params: Vec<f64> = (0..m)
            .flat_map(|_| {
                [
                    rng.random_range(0.0..std::f64::consts::PI),
                    rng.random_range(0.0..std::f64::consts::TAU),
                ]
            })
            .collect();
        starts.push(params);
    }

    let nm_opts = NmOptions {
        max_iter: opts.max_iter,
        tol: opts.tol,
        step: 0.35,
    };
    let mut best_value = best_pauli;
    let mut best_params = pauli_points[0].1.clone();
    let mut best_converged = false;
    for start in &starts {
        let res = nelder_mead(|x| -obj.eval(x), start, &nm_opts);
        let value = -res.value;
        if value > best_value {
            best_value = value;
            best_params = res.x;
            best_converged = res.converged;
        } else if value == best_value && res.converged {
            best_converged = true;
        }
    }

    let mut branches = Vec::new();
    let value = obj.eval_impl(&best_params, Some(&mut branches));
    Ok(LocalizationResult {
        value,
        angles: MeasurementBasis::from_flat(&best_params),
        branches,
        restarts_used: starts.len(),
        converged: best_converged,
    })
}

/// Best branch-averaged `Q` over the 3^(n-2) Pauli basis assignments only.
pub fn localize_pauli(state: &PureState, pair: (usize, usize), measure: QcMeasure) -> Result<f64> {
    let obj = PairObjective::new(state, pair, measure, 1.0)?;
    let m = obj.m;
    let mut best = 0.0f64;
    for c in 0..3usize.pow(m as u32) {
        let basis = MeasurementBasis::pauli(&pauli_combo(m, c));
        best = best.max(obj.eval(&flat_params(&basis)));
    }
    Ok(best)
}

/// `sum_i LQ^alpha` over all pairs `(nodal, i)` with `i != nodal`.
pub fn localized_sum(
    state: &PureState,
    measure: QcMeasure,
    alpha: f64,
    nodal: usize,
    opts: &LocalizeOptions,
) -> Result<f64> {
    let n = state.n_qubits();
    if nodal == 0 || nodal > n {
        return Err(QcError::QubitOutOfRange { index: nodal, n });
    }
    let mut total = 0.0;
    for partner in 1..=n {
        if partner == nodal {
            continue;
        }
        total += localize(state, (nodal, partner), measure, alpha, opts)?.value;
    }
    Ok(total)
}
