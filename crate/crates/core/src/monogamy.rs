//! Monogamy scores with arbitrary exponent, bipartite sums, per-state
//! critical exponents and the gGHZ closed-form bound.

use crate::error::{QcError, Result};
use crate::measures::{mixed_pair, nodal_position, pair_density, pure_one_vs_rest, QcMeasure};
use crate::qstate::PureState;

/// Scores above this threshold count as monogamous; the margin absorbs
/// eigenvalue noise.
pub const VIOLATION_TOL: f64 = -1e-9;

/// Decomposition of one monogamy score.
#[derive(Debug, Clone, PartialEq)]
pub struct MonogamyRecord {
    pub measure: QcMeasure,
    pub alpha: f64,
    /// `Q^alpha_{1:rest}` (already exponentiated).
    pub one_vs_rest: f64,
    /// `Q_{1:i}` for each partner `i` in ascending qubit order,
    /// un-exponentiated.
    pub pair_values: Vec<f64>,
    /// `one_vs_rest - sum(pair_values^alpha)`.
    pub score: f64,
}

impl MonogamyRecord {
    /// Negative scores (below [`VIOLATION_TOL`]) violate the monogamy
    /// inequality.
    pub fn is_monogamous(&self) -> bool {
        self.score >= VIOLATION_TOL
    }
}

fn check_monogamy_input(state: &PureState, alpha: f64, nodal: usize) -> Result<()> {
    let n = state.n_qubits();
    if n < 3 {
        return Err(QcError::InvalidParameter(format!(
            "monogamy needs at least 3 qubits, got {n}"
        )));
    }
    if nodal == 0 || nodal > n {
        return Err(QcError::QubitOutOfRange { index: nodal, n });
    }
    if alpha <= 0.0 {
        return Err(QcError::InvalidParameter(format!(
            "exponent must be positive, got {alpha}"
        )));
    }
    Ok(())
}

/// Raw (un-exponentiated) ingredients of the monogamy score: the one-vs-rest
/// value and the pairwise values with the nodal party.
pub(crate) fn raw_terms(
    state: &PureState,
    measure: QcMeasure,
    nodal: usize,
) -> Result<(f64, Vec<f64>)> {
    let n = state.n_qubits();
    let one = pure_one_vs_rest(state, measure, nodal)?;
    let mut pairs = Vec::with_capacity(n - 1);
    for partner in 1..=n {
        if partner == nodal {
            continue;
        }
        let dm = pair_density(state, nodal, partner)?;
        pairs.push(mixed_pair(&dm, measure, nodal_position(nodal, partner))?.max(0.0));
    }
    Ok((one, pairs))
}

fn score_at(one: f64, pairs: &[f64], alpha: f64) -> f64 {
    one.powf(alpha) - pairs.iter().map(|q| q.powf(alpha)).sum::<f64>()
}

/// Monogamy score `delta_{Q^alpha} = Q^alpha_{1:rest} - sum_i Q^alpha_{1:i}`
/// with respect to the `nodal` qubit.
pub fn monogamy_score(
    state: &PureState,
    measure: QcMeasure,
    alpha: f64,
    nodal: usize,
) -> Result<MonogamyRecord> {
    check_monogamy_input(state, alpha, nodal)?;
    let (one, pairs) = raw_terms(state, measure, nodal)?;
    let one_vs_rest = one.powf(alpha);
    let score = one_vs_rest - pairs.iter().map(|q| q.powf(alpha)).sum::<f64>();
    Ok(MonogamyRecord {
        measure,
        alpha,
        one_vs_rest,
        pair_values: pairs,
        score,
    })
}

/// `sum_i Q^alpha(rho_{nodal,i})` over all partners of the nodal qubit.
pub fn bipartite_sum(
    state: &PureState,
    measure: QcMeasure,
    alpha: f64,
    nodal: usize,
) -> Result<f64> {
    check_monogamy_input(state, alpha, nodal)?;
    let (_, pairs) = raw_terms(state, measure, nodal)?;
    Ok(pairs.iter().map(|q| q.powf(alpha)).sum())
}

/// Exponent grid scanned by [`critical_exponent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentGrid {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub step: f64,
}

impl Default for ExponentGrid {
    fn default() -> Self {
        ExponentGrid {
            alpha_min: 0.05,
            alpha_max: 3.0,
            step: 0.05,
        }
    }
}

/// Critical exponent of one state: the supremum of grid exponents at which
/// the monogamy score is negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalExponent {
    pub value: f64,
    /// True when the topmost grid point still violates, so the supremum lies
    /// beyond the grid.
    pub right_censored: bool,
}

/// Scan the exponent grid for monogamy violations and refine the supremum of
/// the violation set by bisection to `refine_tol`.
///
/// Returns 0 when no grid point violates; returns `alpha_max` flagged
/// right-censored when the topmost grid point still violates.
pub fn critical_exponent(
    state: &PureState,
    measure: QcMeasure,
    grid: ExponentGrid,
    refine_tol: f64,
) -> Result<CriticalExponent> {
    check_monogamy_input(state, grid.alpha_min, 1)?;
    let (one, pairs) = raw_terms(state, measure, 1)?;
    critical_exponent_from_raw(one, &pairs, grid, refine_tol)
}

/// Grid scan + bisection on precomputed raw monogamy terms.
pub(crate) fn critical_exponent_from_raw(
    one: f64,
    pairs: &[f64],
    grid: ExponentGrid,
    refine_tol: f64,
) -> Result<CriticalExponent> {
    if grid.step <= 0.0 || grid.alpha_max < grid.alpha_min || grid.alpha_min <= 0.0 {
        return Err(QcError::InvalidParameter(
            "exponent grid must have positive step and 0 < alpha_min <= alpha_max".to_string(),
        ));
    }
    let violates = |alpha: f64| score_at(one, pairs, alpha) < VIOLATION_TOL;

    let mut alphas = Vec::new();
    let mut alpha = grid.alpha_min;
    while alpha <= grid.alpha_max + 1e-12 {
        alphas.push(alpha.min(grid.alpha_max));
        alpha += grid.step;
    }
    let last_violating = alphas.iter().rposition(|&a| violates(a));

    let Some(idx) = last_violating else {
        return Ok(CriticalExponent {
            value: 0.0,
            right_censored: false,
        });
    };
    if idx + 1 == alphas.len() {
        return Ok(CriticalExponent {
            value: grid.alpha_max,
            right_censored: true,
        });
    }

    let mut lo = alphas[idx];
    let mut hi = alphas[idx + 1];
    while hi - lo > refine_tol {
        let mid = 0.5 * (lo + hi);
        if violates(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalExponent {
        value: 0.5 * (lo + hi),
        right_censored: false,
    })
}

/// Negativity-monogamy score of the gGHZ state with GGM `g`:
/// `sqrt(g (1 - g))`. The concurrence bound is twice this value.
pub fn gghz_bound(g: f64) -> Result<f64> {
    if !(0.0..=0.5 + 1e-12).contains(&g) {
        return Err(QcError::InvalidParameter(format!(
            "GGM must lie in [0, 1/2], got {g}"
        )));
    }
    Ok((g * (1.0 - g)).max(0.0).sqrt())
}
