//! Dense complex linear algebra for n-qubit pure states (n <= 6): partial
//! trace, partial transpose, Hermitian eigensolver, entropy and local
//! projective measurement branching.
//!
//! Qubit labels are 1-based and qubit 1 is the most significant bit of the
//! computational-basis index. Every function in this crate inherits that
//! convention.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QcError, Result};

pub(crate) const CZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const CONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalization tolerance for [`PureState`] invariants.
pub const NORM_TOL: f64 = 1e-10;
/// Entrywise Hermiticity tolerance for [`DensityMatrix`] invariants.
pub const DM_HERM_TOL: f64 = 1e-10;
/// Eigenvalue floor for the PSD check (noise allowance).
pub const DM_PSD_TOL: f64 = 1e-9;
/// Hermiticity precondition for [`eigenvalues_hermitian`].
pub const EIG_HERM_TOL: f64 = 1e-8;
/// Measurement branches below this probability are dropped.
pub const BRANCH_PRUNE_TOL: f64 = 1e-12;

/// Scatter a local basis index over `subset` (sorted ascending qubit labels,
/// MSB-first within the subset) into a full n-qubit basis index.
#[inline]
pub(crate) fn scatter(local: usize, subset: &[usize], n: usize) -> usize {
    let m = subset.len();
    let mut idx = 0usize;
    for (j, &q) in subset.iter().enumerate() {
        idx |= ((local >> (m - 1 - j)) & 1) << (n - q);
    }
    idx
}

/// Validate a set of 1-based qubit labels: nonempty, in range, duplicates
/// rejected. Returns the labels sorted ascending.
pub(crate) fn validate_subset(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(QcError::EmptySubset);
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(QcError::InvalidParameter(format!(
                "duplicate qubit index {}",
                w[0]
            )));
        }
    }
    for &q in &sorted {
        if q == 0 || q > n {
            return Err(QcError::QubitOutOfRange { index: q, n });
        }
    }
    Ok(sorted)
}

/// Normalized pure state of `n_qubits` qubits over the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Build a state from already-normalized amplitudes.
    ///
    /// The squared norm must be 1 within [`NORM_TOL`] and the length a power
    /// of two >= 2.
    pub fn from_amplitudes(raw: &[Complex64]) -> Result<Self> {
        let n_qubits = check_dim(raw.len())?;
        let norm_sqr: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
        let deficit = (norm_sqr - 1.0).abs();
        if deficit > NORM_TOL {
            return Err(QcError::NotNormalized(deficit));
        }
        Ok(PureState {
            n_qubits,
            amps: raw.to_vec(),
        })
    }

    pub(crate) fn from_normalized_unchecked(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        PureState { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// The rank-1 projector |psi><psi| as a raw matrix.
    pub fn projector(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| self.amps[i] * self.amps[j].conj())
    }
}

fn check_dim(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(QcError::BadDimension(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Normalize a raw complex vector into a [`PureState`].
///
/// A zero vector is a degenerate sample and an error; so is a length that is
/// not a power of two.
pub fn normalize(raw: &[Complex64]) -> Result<PureState> {
    let n_qubits = check_dim(raw.len())?;
    let norm_sqr: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
    if norm_sqr <= 0.0 {
        return Err(QcError::DegenerateSample);
    }
    let scale = 1.0 / norm_sqr.sqrt();
    let amps = raw.iter().map(|c| c * scale).collect();
    Ok(PureState { n_qubits, amps })
}

/// Hermitian, unit-trace, PSD operator on a register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validate Hermiticity, unit trace and positivity of `mat`.
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        if !mat.is_square() {
            return Err(QcError::InvalidParameter(format!(
                "density matrix must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let n_qubits = check_dim(mat.nrows())?;
        let herm_dev = hermiticity_deviation(&mat);
        if herm_dev > DM_HERM_TOL {
            return Err(QcError::NotHermitian(herm_dev));
        }
        let trace_dev = (mat.trace().re - 1.0).abs();
        if trace_dev > DM_HERM_TOL {
            return Err(QcError::InvalidParameter(format!(
                "trace deviates from 1 by {trace_dev:.3e}"
            )));
        }
        let dm = DensityMatrix { n_qubits, mat };
        let min_eig = dm.eigenvalues().last().copied().unwrap_or(0.0);
        if min_eig < -DM_PSD_TOL {
            return Err(QcError::InvalidParameter(format!(
                "not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(dm)
    }

    /// Internal constructor for matrices that are Hermitian/PSD by
    /// construction (reduced states of a normalized pure state).
    pub(crate) fn from_trusted(n_qubits: usize, mat: DMatrix<Complex64>) -> Self {
        DensityMatrix { n_qubits, mat }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Real eigenvalues, sorted descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues_unchecked(&self.mat)
    }
}

fn hermiticity_deviation(mat: &DMatrix<Complex64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..mat.nrows() {
        for j in i..mat.ncols() {
            dev = dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    dev
}

fn hermitian_eigenvalues_unchecked(mat: &DMatrix<Complex64>) -> Vec<f64> {
    // symmetrize so tiny asymmetries cannot leak into the solver
    let herm = (mat + mat.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(herm);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    vals
}

/// Eigendecomposition (values descending, matching eigenvector columns).
pub(crate) fn hermitian_eigen_unchecked(
    mat: &DMatrix<Complex64>,
) -> (Vec<f64>, DMatrix<Complex64>) {
    let herm = (mat + mat.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (vals, vecs)
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
///
/// The input must be Hermitian within [`EIG_HERM_TOL`].
pub fn eigenvalues_hermitian(mat: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if !mat.is_square() {
        return Err(QcError::InvalidParameter(format!(
            "matrix must be square, got {}x{}",
            mat.nrows(),
            mat.ncols()
        )));
    }
    let dev = hermiticity_deviation(mat);
    if dev > EIG_HERM_TOL {
        return Err(QcError::NotHermitian(dev));
    }
    Ok(hermitian_eigenvalues_unchecked(mat))
}

/// A cut of the qubit register into `part_a` and its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    part_a: Vec<usize>,
    n: usize,
}

impl Bipartition {
    /// `part_a` must be a nonempty proper subset of `{1..=n}`.
    pub fn new(part_a: &[usize], n: usize) -> Result<Self> {
        let part_a = validate_subset(part_a, n)?;
        if part_a.len() == n {
            return Err(QcError::NotProperSubset);
        }
        Ok(Bipartition { part_a, n })
    }

    pub fn part_a(&self) -> &[usize] {
        &self.part_a
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|q| !self.part_a.contains(q)).collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }
}

/// Polar/azimuth pair defining a rank-1 projective basis on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisAngles {
    /// Polar angle in [0, pi].
    pub theta: f64,
    /// Azimuth in [0, 2*pi).
    pub phi: f64,
}

/// Pauli measurement axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn angles(self) -> BasisAngles {
        match self {
            PauliAxis::X => BasisAngles {
                theta: std::f64::consts::FRAC_PI_2,
                phi: 0.0,
            },
            PauliAxis::Y => BasisAngles {
                theta: std::f64::consts::FRAC_PI_2,
                phi: std::f64::consts::FRAC_PI_2,
            },
            PauliAxis::Z => BasisAngles { theta: 0.0, phi: 0.0 },
        }
    }
}

/// One rank-1 projective basis per measured qubit, aligned with the measured
/// qubit labels sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    angles: Vec<BasisAngles>,
}

impl MeasurementBasis {
    pub fn new(angles: Vec<BasisAngles>) -> Self {
        MeasurementBasis { angles }
    }

    pub fn pauli(axes: &[PauliAxis]) -> Self {
        MeasurementBasis {
            angles: axes.iter().map(|a| a.angles()).collect(),
        }
    }

    /// Flat [theta0, phi0, theta1, phi1, ...] layout used by the optimizers.
    pub fn from_flat(params: &[f64]) -> Self {
        MeasurementBasis {
            angles: params
                .chunks_exact(2)
                .map(|c| BasisAngles { theta: c[0], phi: c[1] })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[BasisAngles] {
        &self.angles
    }
}

/// The orthonormal pair |v0>, |v1> for one measured qubit:
/// |v0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its complement.
pub(crate) fn projector_kets(a: BasisAngles) -> [[Complex64; 2]; 2] {
    let (half_sin, half_cos) = (a.theta / 2.0).sin_cos();
    let phase = Complex64::new(a.phi.cos(), a.phi.sin());
    [
        [Complex64::new(half_cos, 0.0), phase * half_sin],
        [Complex64::new(half_sin, 0.0), -phase * half_cos],
    ]
}

/// Partial trace of |psi><psi| down to the `keep` qubits.
pub fn reduced_density(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    let keep = validate_subset(keep, n)?;
    let env: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let keep_idx: Vec<usize> = (0..dk).map(|a| scatter(a, &keep, n)).collect();
    let env_idx: Vec<usize> = if env.is_empty() {
        vec![0]
    } else {
        (0..(1usize << env.len()))
            .map(|e| scatter(e, &env, n))
            .collect()
    };
    let amps = state.amplitudes();
    let mut mat = DMatrix::from_element(dk, dk, CZERO);
    for a in 0..dk {
        for b in 0..=a {
            let mut acc = CZERO;
            for &ei in &env_idx {
                acc += amps[keep_idx[a] | ei] * amps[keep_idx[b] | ei].conj();
            }
            mat[(a, b)] = acc;
            if a != b {
                mat[(b, a)] = acc.conj();
            }
        }
    }
    Ok(DensityMatrix::from_trusted(keep.len(), mat))
}

/// Transpose the `transposed` qubits of `dm`. The result stays Hermitian and
/// trace-1 but may have negative eigenvalues.
pub fn partial_transpose(dm: &DensityMatrix, transposed: &[usize]) -> Result<DMatrix<Complex64>> {
    let k = dm.n_qubits();
    let t = validate_subset(transposed, k)?;
    if t.len() == k {
        return Err(QcError::NotProperSubset);
    }
    let mask: usize = t.iter().map(|&q| 1usize << (k - q)).sum();
    let dim = dm.dim();
    let mut out = DMatrix::from_element(dim, dim, CZERO);
    for i in 0..dim {
        for j in 0..dim {
            let ti = (i & !mask) | (j & mask);
            let tj = (j & !mask) | (i & mask);
            out[(ti, tj)] = dm.matrix()[(i, j)];
        }
    }
    Ok(out)
}

/// Largest eigenvalue of the reduced state on the smaller side of `cut`
/// (the squared largest Schmidt coefficient of the cut).
pub fn max_schmidt(state: &PureState, cut: &Bipartition) -> f64 {
    let part_a = cut.part_a();
    let complement = cut.complement();
    let side = if part_a.len() <= complement.len() {
        part_a
    } else {
        &complement
    };
    let dm = reduced_density(state, side).expect("bipartition sides are valid subsets");
    dm.eigenvalues()[0]
}

/// Measure the `measured` qubits in `basis` and return the surviving
/// branches as `(probability, post-measurement state on the rest)`.
///
/// Branch probabilities sum to 1; branches below [`BRANCH_PRUNE_TOL`] are
/// omitted. Outcome `k` is read MSB-first over the measured qubits sorted
/// ascending.
pub fn apply_local_projectors(
    state: &PureState,
    measured: &[usize],
    basis: &MeasurementBasis,
) -> Result<Vec<(f64, PureState)>> {
    let n = state.n_qubits();
    let measured = validate_subset(measured, n)?;
    if measured.len() == n {
        return Err(QcError::NotProperSubset);
    }
    if basis.len() != measured.len() {
        return Err(QcError::BasisSizeMismatch {
            basis: basis.len(),
            measured: measured.len(),
        });
    }
    let unmeasured: Vec<usize> = (1..=n).filter(|q| !measured.contains(q)).collect();
    let m = measured.len();
    let outcomes = 1usize << m;
    let dim_u = 1usize << unmeasured.len();
    let kets: Vec<[[Complex64; 2]; 2]> =
        basis.angles().iter().map(|&a| projector_kets(a)).collect();
    let meas_idx: Vec<usize> = (0..outcomes).map(|e| scatter(e, &measured, n)).collect();
    let un_idx: Vec<usize> = (0..dim_u).map(|u| scatter(u, &unmeasured, n)).collect();
    let amps = state.amplitudes();

    let mut branches = Vec::with_capacity(outcomes);
    for k in 0..outcomes {
        let mut branch = vec![CZERO; dim_u];
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
            for u in 0..dim_u {
                branch[u] += coef * amps[meas_idx[e] | un_idx[u]];
            }
        }
        let p: f64 = branch.iter().map(|c| c.norm_sqr()).sum();
        if p < BRANCH_PRUNE_TOL {
            continue;
        }
        let scale = 1.0 / p.sqrt();
        for c in branch.iter_mut() {
            *c *= scale;
        }
        branches.push((p, PureState::from_normalized_unchecked(unmeasured.len(), branch)));
    }
    Ok(branches)
}

/// Apply a single-qubit unitary (2x2, rows indexed by output basis) to
/// `qubit` of `state`.
pub fn apply_one_qubit_unitary(
    state: &PureState,
    qubit: usize,
    u: &[[Complex64; 2]; 2],
) -> Result<PureState> {
    let n = state.n_qubits();
    if qubit == 0 || qubit > n {
        return Err(QcError::QubitOutOfRange { index: qubit, n });
    }
    let bit = 1usize << (n - qubit);
    let amps = state.amplitudes();
    let mut out = vec![CZERO; amps.len()];
    for idx in 0..amps.len() {
        if idx & bit == 0 {
            let a0 = amps[idx];
            let a1 = amps[idx | bit];
            out[idx] = u[0][0] * a0 + u[0][1] * a1;
            out[idx | bit] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
    Ok(PureState::from_normalized_unchecked(n, out))
}

/// Shannon entropy (bits) of a probability vector; 0*log(0) := 0.
pub(crate) fn entropy_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    for p in probs {
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    s.max(0.0)
}

/// Binary entropy H(p) in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_bits([p, 1.0 - p])
}

/// Von Neumann entropy of `dm` in bits.
pub fn von_neumann_entropy(dm: &DensityMatrix) -> f64 {
    entropy_bits(dm.eigenvalues())
}
