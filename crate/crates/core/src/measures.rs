//! Bipartite and multipartite quantum-correlation measures: negativity,
//! concurrence, quantum discord, GGM, and the closed-form average-entropy
//! utilities.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QcError, Result};
use crate::optim::{nelder_mead, NmOptions};
use crate::qstate::{
    binary_entropy, entropy_bits, hermitian_eigen_unchecked, partial_transpose, projector_kets,
    reduced_density, validate_subset, BasisAngles, Bipartition, DensityMatrix, PureState, CZERO,
};

/// The bipartite quantum-correlation measures used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QcMeasure {
    Negativity,
    Concurrence,
    Discord,
}

impl QcMeasure {
    pub const ALL: [QcMeasure; 3] = [
        QcMeasure::Negativity,
        QcMeasure::Concurrence,
        QcMeasure::Discord,
    ];

    /// Short tag used in CLI flags and CSV column names.
    pub fn short_name(&self) -> &'static str {
        match self {
            QcMeasure::Negativity => "neg",
            QcMeasure::Concurrence => "conc",
            QcMeasure::Discord => "disc",
        }
    }

    pub fn from_short_name(s: &str) -> Result<Self> {
        match s {
            "neg" | "negativity" => Ok(QcMeasure::Negativity),
            "conc" | "concurrence" => Ok(QcMeasure::Concurrence),
            "disc" | "discord" => Ok(QcMeasure::Discord),
            other => Err(QcError::InvalidParameter(format!(
                "unknown measure '{other}' (expected neg, conc or disc)"
            ))),
        }
    }

    /// Largest value the measure attains on a qubit pair.
    pub fn pair_cap(&self) -> f64 {
        match self {
            QcMeasure::Negativity => 0.5,
            QcMeasure::Concurrence | QcMeasure::Discord => 1.0,
        }
    }
}

impl std::fmt::Display for QcMeasure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

fn require_two_qubits(dm: &DensityMatrix) -> Result<()> {
    if dm.dim() != 4 {
        return Err(QcError::UnsupportedDimension(dm.dim()));
    }
    Ok(())
}

/// Determinant of a 2x2 Hermitian matrix.
fn det2(m: &DMatrix<Complex64>) -> f64 {
    (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re
}

/// Entropy (bits) of a 2x2 density matrix given unnormalized matrix and its
/// trace.
fn entropy_2x2(m: &DMatrix<Complex64>, trace: f64) -> f64 {
    let d = det2(m) / (trace * trace);
    let gap = (0.25 - d).max(0.0).sqrt();
    binary_entropy(0.5 + gap)
}

/// Negativity of a two-qubit (possibly mixed) state: the absolute sum of the
/// negative eigenvalues of the partial transpose.
pub fn negativity(dm: &DensityMatrix) -> Result<f64> {
    require_two_qubits(dm)?;
    let pt = partial_transpose(dm, &[1])?;
    let eigs = crate::qstate::eigenvalues_hermitian(&pt)?;
    Ok(eigs.iter().filter(|&&e| e < 0.0).map(|e| -e).sum())
}

/// Negativity of a pure state across the `nodal` qubit vs the rest:
/// `sqrt(lambda (1 - lambda))` with `lambda` the larger marginal eigenvalue,
/// i.e. `sqrt(det rho_nodal)`.
pub fn negativity_pure(state: &PureState, nodal: usize) -> Result<f64> {
    let dm = reduced_density(state, &[nodal])?;
    Ok(det2(dm.matrix()).max(0.0).sqrt())
}

/// sigma_y (x) sigma_y, the spin-flip kernel of the Wootters construction.
fn sigma_yy() -> DMatrix<Complex64> {
    let n1 = Complex64::new(-1.0, 0.0);
    let p1 = Complex64::new(1.0, 0.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            CZERO, CZERO, CZERO, n1, //
            CZERO, CZERO, p1, CZERO, //
            CZERO, p1, CZERO, CZERO, //
            n1, CZERO, CZERO, CZERO,
        ],
    )
}

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence(dm: &DensityMatrix) -> Result<f64> {
    require_two_qubits(dm)?;
    let rho = dm.matrix();
    let yy = sigma_yy();
    let rho_tilde = &yy * rho.map(|z| z.conj()) * &yy;

    // mu_i are the square roots of the eigenvalues of rho * rho_tilde; use
    // the Hermitian form sqrt(rho) rho_tilde sqrt(rho), which shares them.
    let (vals, vecs) = hermitian_eigen_unchecked(rho);
    let sqrt_diag = DMatrix::from_fn(4, 4, |i, j| {
        if i == j {
            Complex64::new(vals[i].max(0.0).sqrt(), 0.0)
        } else {
            CZERO
        }
    });
    let sqrt_rho = &vecs * sqrt_diag * vecs.adjoint();
    let herm = &sqrt_rho * rho_tilde * &sqrt_rho;
    let (mus, _) = hermitian_eigen_unchecked(&herm);
    let mu: Vec<f64> = mus.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Concurrence of the `nodal` qubit with the rest of a pure state:
/// `2 sqrt(det rho_nodal)`.
pub fn concurrence_one_vs_rest(state: &PureState, nodal: usize) -> Result<f64> {
    Ok(2.0 * negativity_pure(state, nodal)?)
}

/// Partial inner product `<v|_measured rho |v>_measured` of a two-qubit
/// density matrix, leaving a 2x2 operator on the other party.
fn project_party(
    rho: &DMatrix<Complex64>,
    measured: usize,
    v: &[Complex64; 2],
) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(2, 2, CZERO);
    for o in 0..2 {
        for op in 0..2 {
            let mut acc = CZERO;
            for m in 0..2 {
                for mp in 0..2 {
                    let (row, col) = if measured == 1 {
                        (2 * m + o, 2 * mp + op)
                    } else {
                        (2 * o + m, 2 * op + mp)
                    };
                    acc += v[m].conj() * rho[(row, col)] * v[mp];
                }
            }
            out[(o, op)] = acc;
        }
    }
    out
}

fn marginal(dm: &DensityMatrix, keep: usize) -> DMatrix<Complex64> {
    let rho = dm.matrix();
    let mut out = DMatrix::from_element(2, 2, CZERO);
    for a in 0..2 {
        for b in 0..2 {
            out[(a, b)] = if keep == 1 {
                rho[(2 * a, 2 * b)] + rho[(2 * a + 1, 2 * b + 1)]
            } else {
                rho[(a, b)] + rho[(2 + a, 2 + b)]
            };
        }
    }
    out
}

/// Average conditional entropy of the unmeasured party after measuring
/// `measured` in the basis `(theta, phi)`.
fn conditional_entropy(rho: &DMatrix<Complex64>, measured: usize, angles: BasisAngles) -> f64 {
    let kets = projector_kets(angles);
    let mut acc = 0.0;
    for ket in &kets {
        let cond = project_party(rho, measured, ket);
        let p = (cond[(0, 0)] + cond[(1, 1)]).re;
        if p > 1e-12 {
            acc += p * entropy_2x2(&cond, p);
        }
    }
    acc
}

const DISCORD_GRID: usize = 24;
const DISCORD_RESTARTS: usize = 5;

/// Quantum discord of a two-qubit state with rank-1 projective measurements
/// on `measured` (1 or 2).
///
/// The conditional-entropy minimization runs a coarse 24x24 grid over
/// `(theta, phi)` followed by simplex refinement from the best grid points.
/// The result is clamped at 0 to absorb optimizer noise on classical states.
pub fn discord(dm: &DensityMatrix, measured: usize) -> Result<f64> {
    require_two_qubits(dm)?;
    if measured != 1 && measured != 2 {
        return Err(QcError::InvalidParameter(format!(
            "measured party must be 1 or 2, got {measured}"
        )));
    }
    let rho = dm.matrix();
    let other = 3 - measured;
    let s_ab = entropy_bits(dm.eigenvalues());
    let rho_meas = marginal(dm, measured);
    let s_measured = entropy_2x2(&rho_meas, rho_meas.trace().re);
    let _ = other;

    // coarse grid
    let mut grid: Vec<(f64, [f64; 2])> = Vec::with_capacity(DISCORD_GRID * DISCORD_GRID);
    for j in 0..DISCORD_GRID {
        let theta = std::f64::consts::PI * j as f64 / (DISCORD_GRID - 1) as f64;
        for k in 0..DISCORD_GRID {
            let phi = std::f64::consts::TAU * k as f64 / DISCORD_GRID as f64;
            let val = conditional_entropy(rho, measured, BasisAngles { theta, phi });
            grid.push((val, [theta, phi]));
        }
    }
    grid.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite entropy"));

    let mut best = grid[0].0;
    for (val, start) in grid.iter().take(DISCORD_RESTARTS) {
        let res = nelder_mead(
            |x| conditional_entropy(rho, measured, BasisAngles { theta: x[0], phi: x[1] }),
            start,
            &NmOptions {
                max_iter: 200,
                tol: 1e-9,
                step: 0.12,
            },
        );
        best = best.min(res.value.min(*val));
    }

    Ok((s_measured - s_ab + best).max(0.0))
}

/// Discord of a pure state across the `nodal` qubit vs the rest, which
/// reduces to the marginal entropy `S(rho_nodal)`.
pub fn discord_pure_one_vs_rest(state: &PureState, nodal: usize) -> Result<f64> {
    let dm = reduced_density(state, &[nodal])?;
    let gap = (0.25 - det2(dm.matrix())).max(0.0).sqrt();
    Ok(binary_entropy(0.5 + gap))
}

/// One-vs-rest value of `measure` on a pure state, using the pure-state
/// closed forms.
pub fn pure_one_vs_rest(state: &PureState, measure: QcMeasure, nodal: usize) -> Result<f64> {
    match measure {
        QcMeasure::Negativity => negativity_pure(state, nodal),
        QcMeasure::Concurrence => concurrence_one_vs_rest(state, nodal),
        QcMeasure::Discord => discord_pure_one_vs_rest(state, nodal),
    }
}

/// Value of `measure` on a two-qubit mixed state. For discord the
/// measurement is performed on `measured_party` (1 or 2); the entanglement
/// measures ignore it.
pub fn mixed_pair(dm: &DensityMatrix, measure: QcMeasure, measured_party: usize) -> Result<f64> {
    match measure {
        QcMeasure::Negativity => negativity(dm),
        QcMeasure::Concurrence => concurrence(dm),
        QcMeasure::Discord => discord(dm, measured_party),
    }
}

/// Closed-form value of `measure` on a normalized pure two-qubit state given
/// its four amplitudes. Test-side counterpart of the localization hot path.
#[cfg(test)]
pub(crate) fn pure_two_qubit(amps: &[Complex64], measure: QcMeasure) -> f64 {
    let det = (amps[0] * amps[3] - amps[1] * amps[2]).norm();
    match measure {
        QcMeasure::Negativity => det,
        QcMeasure::Concurrence => 2.0 * det,
        QcMeasure::Discord => {
            let gap = (0.25 - det * det).max(0.0).sqrt();
            binary_entropy(0.5 + gap)
        }
    }
}

/// Generalized geometric measure: `1 -` the largest squared Schmidt
/// coefficient over all `2^{n-1} - 1` distinct bipartitions.
pub fn ggm(state: &PureState) -> f64 {
    let n = state.n_qubits();
    if n < 2 {
        return 0.0;
    }
    let mut max_lambda: f64 = 0.0;
    // every cut exactly once: subsets containing qubit 1 (Schmidt symmetry
    // makes the complementary subset redundant); the eigenproblem runs on
    // the smaller side.
    for rest_mask in 0..(1usize << (n - 1)) {
        let mut part = vec![1usize];
        for q in 2..=n {
            if (rest_mask >> (q - 2)) & 1 == 1 {
                part.push(q);
            }
        }
        if part.len() == n {
            continue;
        }
        let cut = Bipartition::new(&part, n).expect("enumerated cut is valid");
        let lambda = crate::qstate::max_schmidt(state, &cut);
        if lambda > max_lambda {
            max_lambda = lambda;
        }
    }
    1.0 - max_lambda
}

/// Average entropy estimate `log2(M) - M/(2K)` for an M-dimensional reduced
/// state of a random pure state of total dimension M*K.
pub fn avg_entropy(m: u64, k: u64) -> Result<f64> {
    if m < 2 || k < 1 {
        return Err(QcError::InvalidParameter(format!(
            "need M >= 2 and K >= 1, got M={m}, K={k}"
        )));
    }
    Ok((m as f64).log2() - m as f64 / (2.0 * k as f64))
}

/// The unique `x` in [1/2, 1] with binary entropy `H(x) = s`, found by
/// bisection to `|H(x) - s| < 1e-10`.
pub fn solve_max_eigenvalue(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(QcError::InvalidParameter(format!(
            "entropy target must lie in [0,1], got {s}"
        )));
    }
    let mut lo = 0.5;
    let mut hi = 1.0;
    // bisect on x: H is flat near x = 1/2, so an H-only stopping rule would
    // leave ~1e-5 of x-error there
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) > s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// GGM of the equal-coefficient Dicke state with N/2 excitations:
/// `(N-2) / (2(N-1))` for even `n >= 4`.
pub fn ggm_equal_dicke(n: usize) -> Result<f64> {
    if n < 4 || n % 2 != 0 {
        return Err(QcError::InvalidParameter(format!(
            "closed form holds for even n >= 4, got {n}"
        )));
    }
    Ok((n as f64 - 2.0) / (2.0 * (n as f64 - 1.0)))
}

/// Position (1 or 2) of qubit `nodal` inside the two-qubit reduced state of
/// the pair `{nodal, partner}` (factors ordered by qubit label).
pub(crate) fn nodal_position(nodal: usize, partner: usize) -> usize {
    if nodal < partner {
        1
    } else {
        2
    }
}

/// Two-qubit reduced state of the (nodal, partner) pair.
pub(crate) fn pair_density(state: &PureState, nodal: usize, partner: usize) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    validate_subset(&[nodal, partner], n)?;
    reduced_density(state, &[nodal.min(partner), nodal.max(partner)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{make_dicke_equal, make_gghz, sample_haar, SeedSpec};
    use crate::qstate::{apply_one_qubit_unitary, eigenvalues_hermitian, normalize};
    use approx::assert_abs_diff_eq;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn bell() -> PureState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureState::from_amplitudes(&[r(s), CZERO, CZERO, r(s)]).unwrap()
    }

    fn basis_state(n: usize, index: usize) -> PureState {
        let mut amps = vec![CZERO; 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        PureState::from_amplitudes(&amps).unwrap()
    }

    fn ghz(n: usize) -> PureState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![CZERO; 1 << n];
        amps[0] = r(s);
        amps[(1 << n) - 1] = r(s);
        PureState::from_amplitudes(&amps).unwrap()
    }

    fn w3() -> PureState {
        let v = 1.0 / 3f64.sqrt();
        let mut amps = vec![CZERO; 8];
        amps[0b100] = r(v);
        amps[0b010] = r(v);
        amps[0b001] = r(v);
        PureState::from_amplitudes(&amps).unwrap()
    }

    /// Concurrence of an X-shaped two-qubit density matrix (analytic).
    fn x_state_concurrence(m: &DMatrix<Complex64>) -> f64 {
        let c1 = m[(1, 2)].norm() - (m[(0, 0)].re * m[(3, 3)].re).max(0.0).sqrt();
        let c2 = m[(0, 3)].norm() - (m[(1, 1)].re * m[(2, 2)].re).max(0.0).sqrt();
        (2.0 * c1.max(c2)).max(0.0)
    }

    fn werner(p: f64) -> DensityMatrix {
        let mut m = bell().projector().scale(p);
        for i in 0..4 {
            m[(i, i)] += r((1.0 - p) / 4.0);
        }
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn negativity_examples() {
        let dm = reduced_density(&bell(), &[1, 2]).unwrap();
        assert_abs_diff_eq!(negativity(&dm).unwrap(), 0.5, epsilon = 1e-10);

        let dm = reduced_density(&basis_state(2, 0), &[1, 2]).unwrap();
        assert_abs_diff_eq!(negativity(&dm).unwrap(), 0.0, epsilon = 1e-12);

        let gghz = make_gghz(3, 0.8f64.sqrt()).unwrap();
        assert_abs_diff_eq!(negativity_pure(&gghz, 1).unwrap(), 0.4, epsilon = 1e-10);

        let big = reduced_density(&ghz(3), &[1, 2, 3]).unwrap();
        assert!(matches!(
            negativity(&big),
            Err(QcError::UnsupportedDimension(8))
        ));
    }

    #[test]
    fn negativity_pure_matches_partial_transpose_route() {
        for i in 0..20 {
            let state = sample_haar(3, &SeedSpec::new(5, i)).unwrap();
            for nodal in 1..=3 {
                let fast = negativity_pure(&state, nodal).unwrap();
                // oracle: diagonalize the partially transposed projector
                let proj = DensityMatrix::from_trusted(3, state.projector());
                let pt = partial_transpose(&proj, &[nodal]).unwrap();
                let eigs = eigenvalues_hermitian(&pt).unwrap();
                let oracle: f64 = eigs.iter().filter(|&&e| e < 0.0).map(|e| -e).sum();
                assert_abs_diff_eq!(fast, oracle, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn concurrence_examples() {
        let dm = reduced_density(&bell(), &[1, 2]).unwrap();
        assert_abs_diff_eq!(concurrence(&dm).unwrap(), 1.0, epsilon = 1e-9);

        let dm = reduced_density(&basis_state(2, 0), &[1, 2]).unwrap();
        assert_abs_diff_eq!(concurrence(&dm).unwrap(), 0.0, epsilon = 1e-9);

        let w = werner(0.9);
        assert_abs_diff_eq!(concurrence(&w).unwrap(), 0.85, epsilon = 1e-9);
        assert_abs_diff_eq!(
            concurrence(&w).unwrap(),
            x_state_concurrence(w.matrix()),
            epsilon = 1e-9
        );
        // below the entanglement threshold p = 1/3
        assert_abs_diff_eq!(concurrence(&werner(0.25)).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn w3_pair_concurrence_is_two_thirds() {
        let dm = pair_density(&w3(), 1, 2).unwrap();
        assert_abs_diff_eq!(concurrence(&dm).unwrap(), 2.0 / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(
            x_state_concurrence(dm.matrix()),
            2.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn pure_concurrence_is_twice_negativity() {
        // the matrix-sqrt step turns O(eps) eigenvalue noise on the rank-1
        // input into O(sqrt(eps)), so generic agreement sits near 1e-8
        for i in 0..30 {
            let state = sample_haar(2, &SeedSpec::new(3, i)).unwrap();
            let dm = reduced_density(&state, &[1, 2]).unwrap();
            let c = concurrence(&dm).unwrap();
            let n = negativity(&dm).unwrap();
            assert_abs_diff_eq!(c, 2.0 * n, epsilon = 1e-7);
            assert_abs_diff_eq!(
                c,
                pure_two_qubit(state.amplitudes(), QcMeasure::Concurrence),
                epsilon = 1e-7
            );
        }
    }

    #[test]
    fn concurrence_one_vs_rest_examples() {
        assert_abs_diff_eq!(concurrence_one_vs_rest(&ghz(3), 1).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            concurrence_one_vs_rest(&basis_state(3, 0), 1).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            concurrence_one_vs_rest(&w3(), 1).unwrap(),
            2.0 * (2.0f64 / 9.0).sqrt(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn discord_examples() {
        // classically correlated state
        let mut m = DMatrix::from_element(4, 4, CZERO);
        m[(0, 0)] = r(0.5);
        m[(3, 3)] = r(0.5);
        let dm = DensityMatrix::new(m).unwrap();
        assert_abs_diff_eq!(discord(&dm, 1).unwrap(), 0.0, epsilon = 1e-6);

        // product state rho_A (x) rho_B
        let mut m = DMatrix::from_element(4, 4, CZERO);
        let (pa, pb) = (0.3, 0.8);
        for a in 0..2 {
            for b in 0..2 {
                let wa = if a == 0 { pa } else { 1.0 - pa };
                let wb = if b == 0 { pb } else { 1.0 - pb };
                m[(2 * a + b, 2 * a + b)] = r(wa * wb);
            }
        }
        let dm = DensityMatrix::new(m).unwrap();
        assert_abs_diff_eq!(discord(&dm, 1).unwrap(), 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(discord(&dm, 2).unwrap(), 0.0, epsilon = 1e-6);

        // pure Bell state: I = 2, J = 1
        let dm = reduced_density(&bell(), &[1, 2]).unwrap();
        assert_abs_diff_eq!(discord(&dm, 1).unwrap(), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn discord_pure_examples() {
        assert_abs_diff_eq!(discord_pure_one_vs_rest(&ghz(3), 1).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            discord_pure_one_vs_rest(&basis_state(3, 0), 1).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let gghz = make_gghz(3, 0.8f64.sqrt()).unwrap();
        assert_abs_diff_eq!(
            discord_pure_one_vs_rest(&gghz, 1).unwrap(),
            binary_entropy(0.8),
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(binary_entropy(0.8), 0.7219, epsilon = 5e-5);
    }

    #[test]
    fn discord_mixed_routine_matches_pure_shortcut() {
        for i in 0..5 {
            let state = sample_haar(2, &SeedSpec::new(9, i)).unwrap();
            let dm = reduced_density(&state, &[1, 2]).unwrap();
            let full = discord(&dm, 1).unwrap();
            let fast = discord_pure_one_vs_rest(&state, 1).unwrap();
            assert_abs_diff_eq!(full, fast, epsilon = 1e-4);
        }
    }

    #[test]
    fn ggm_examples() {
        assert_abs_diff_eq!(ggm(&ghz(3)), 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(ggm(&ghz(4)), 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(ggm(&basis_state(3, 0)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ggm(&make_dicke_equal(4, 2).unwrap()), 1.0 / 3.0, epsilon = 1e-10);
        let gghz = make_gghz(3, 0.8f64.sqrt()).unwrap();
        assert_abs_diff_eq!(ggm(&gghz), 0.2, epsilon = 1e-10);
    }

    #[test]
    fn ggm_vanishes_on_products_and_stays_below_half() {
        // |0> (x) Bell: product across cut {1}
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![CZERO; 8];
        amps[0b000] = r(s);
        amps[0b011] = r(s);
        let state = PureState::from_amplitudes(&amps).unwrap();
        assert_abs_diff_eq!(ggm(&state), 0.0, epsilon = 1e-12);

        for i in 0..20 {
            let state = sample_haar(4, &SeedSpec::new(21, i)).unwrap();
            let g = ggm(&state);
            assert!((0.0..=0.5 + 1e-12).contains(&g));
        }
    }

    #[test]
    fn local_unitary_invariance() {
        let state = sample_haar(3, &SeedSpec::new(33, 0)).unwrap();
        let base_ggm = ggm(&state);
        let base_neg = negativity_pure(&state, 1).unwrap();
        let u = {
            let (st, ct) = (0.7f64 / 2.0).sin_cos();
            [
                [r(ct), -(Complex64::new(0.0, 1.1).exp()) * st],
                [Complex64::new(0.0, 0.4).exp() * st, Complex64::new(0.0, 1.5).exp() * ct],
            ]
        };
        for q in 1..=3 {
            let rotated = apply_one_qubit_unitary(&state, q, &u).unwrap();
            assert_abs_diff_eq!(ggm(&rotated), base_ggm, epsilon = 1e-9);
            if q != 1 {
                assert_abs_diff_eq!(
                    negativity_pure(&rotated, 1).unwrap(),
                    base_neg,
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn avg_entropy_closed_forms() {
        assert_abs_diff_eq!(avg_entropy(2, 8).unwrap(), 0.875, epsilon = 0.0);
        assert_abs_diff_eq!(avg_entropy(2, 32).unwrap(), 0.96875, epsilon = 0.0);
        assert_abs_diff_eq!(avg_entropy(2, 2).unwrap(), 0.5, epsilon = 0.0);
        assert!(avg_entropy(1, 4).is_err());
    }

    #[test]
    fn solve_max_eigenvalue_examples() {
        let x = solve_max_eigenvalue(0.875).unwrap();
        assert_abs_diff_eq!(x, 0.705, epsilon = 0.001);
        assert_abs_diff_eq!(solve_max_eigenvalue(1.0).unwrap(), 0.5, epsilon = 1e-9);
        let x = solve_max_eigenvalue(0.96875).unwrap();
        assert_abs_diff_eq!(x, 0.604, epsilon = 0.001);
        assert!(solve_max_eigenvalue(1.5).is_err());

        // inverse property on [1/2, 1]
        for &x in &[0.5, 0.61, 0.75, 0.9, 0.99, 1.0] {
            let s = binary_entropy(x);
            assert_abs_diff_eq!(solve_max_eigenvalue(s).unwrap(), x, epsilon = 1e-8);
        }
    }

    #[test]
    fn ggm_equal_dicke_formula() {
        assert_abs_diff_eq!(ggm_equal_dicke(4).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ggm_equal_dicke(6).unwrap(), 0.4, epsilon = 1e-15);
        assert!(ggm_equal_dicke(5).is_err());
        assert!(ggm_equal_dicke(2).is_err());
        assert_abs_diff_eq!(
            ggm_equal_dicke(4).unwrap(),
            ggm(&make_dicke_equal(4, 2).unwrap()),
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            ggm_equal_dicke(6).unwrap(),
            ggm(&make_dicke_equal(6, 3).unwrap()),
            epsilon = 1e-9
        );
    }

    #[test]
    fn separable_mixtures_carry_no_entanglement() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            // convex mixture of random product projectors
            let mut m = DMatrix::from_element(4, 4, CZERO);
            let terms = 3;
            let mut weights: Vec<f64> = (0..terms).map(|_| rng.random_range(0.01..1.0)).collect();
            let total: f64 = weights.iter().sum();
            for w in weights.iter_mut() {
                *w /= total;
            }
            for &w in &weights {
                let q1 = random_qubit_ket(&mut rng);
                let q2 = random_qubit_ket(&mut rng);
                let prod: Vec<Complex64> = (0..4).map(|i| q1[i / 2] * q2[i % 2]).collect();
                for i in 0..4 {
                    for j in 0..4 {
                        m[(i, j)] += prod[i] * prod[j].conj() * w;
                    }
                }
            }
            let dm = DensityMatrix::new(m).unwrap();
            assert_abs_diff_eq!(negativity(&dm).unwrap(), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(concurrence(&dm).unwrap(), 0.0, epsilon = 1e-9);
        }
    }

    fn random_qubit_ket<R: rand::Rng>(rng: &mut R) -> [Complex64; 2] {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (st, ct) = (theta / 2.0).sin_cos();
        [r(ct), Complex64::new(0.0, phi).exp() * st]
    }

    #[test]
    fn normalized_raw_vector_roundtrip() {
        let raw = vec![r(0.3), r(-0.4), r(0.5), r(0.1)];
        let state = normalize(&raw).unwrap();
        let total: f64 = state.amplitudes().iter().map(|c| c.norm_sqr()).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }
}
