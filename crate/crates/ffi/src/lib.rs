//! C ABI over the qcorr library.
//!
//! States travel as opaque `QcorrState` handles created by the constructor
//! functions and released with [`qcorr_state_free`]. Every fallible call
//! returns a [`QcorrStatus`]; on failure a thread-local message is available
//! through [`qcorr_last_error`]. Scalars come back via out-pointers.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use qcorr::ensembles::{
    make_canonical3, make_dicke_equal, make_gghz, sample_dicke, sample_haar, sample_wclass,
    SeedSpec,
};
use qcorr::localize::{localize, localize_pauli, localized_sum, LocalizeOptions};
use qcorr::measures::{
    avg_entropy, ggm, ggm_equal_dicke, solve_max_eigenvalue, QcMeasure,
};
use qcorr::monogamy::{
    bipartite_sum, critical_exponent, gghz_bound, monogamy_score, ExponentGrid,
};
use qcorr::qstate::PureState;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
}

/// Bipartite correlation measures.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrMeasure {
    Negativity = 0,
    Concurrence = 1,
    Discord = 2,
}

impl From<QcorrMeasure> for QcMeasure {
    fn from(m: QcorrMeasure) -> Self {
        match m {
            QcorrMeasure::Negativity => QcMeasure::Negativity,
            QcorrMeasure::Concurrence => QcMeasure::Concurrence,
            QcorrMeasure::Discord => QcMeasure::Discord,
        }
    }
}

/// Opaque handle to a normalized pure state.
pub struct QcorrState {
    inner: PureState,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl std::fmt::Display) {
    let c = CString::new(msg.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qcorr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version string (static storage).
#[no_mangle]
pub extern "C" fn qcorr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn emit_state(
    out: *mut *mut QcorrState,
    state: Result<PureState, qcorr::QcError>,
) -> QcorrStatus {
    if out.is_null() {
        return QcorrStatus::NullPointer;
    }
    match state {
        Ok(inner) => {
            let handle = Box::into_raw(Box::new(QcorrState { inner }));
            unsafe { *out = handle };
            QcorrStatus::Ok
        }
        Err(e) => {
            set_error(e);
            QcorrStatus::InvalidArgument
        }
    }
}

fn emit_f64(out: *mut f64, value: Result<f64, qcorr::QcError>) -> QcorrStatus {
    if out.is_null() {
        return QcorrStatus::NullPointer;
    }
    match value {
        Ok(v) => {
            unsafe { *out = v };
            QcorrStatus::Ok
        }
        Err(e) => {
            set_error(e);
            QcorrStatus::InvalidArgument
        }
    }
}

unsafe fn state_ref<'a>(state: *const QcorrState) -> Option<&'a PureState> {
    state.as_ref().map(|s| &s.inner)
}

/// Release a state handle. Null is ignored.
///
/// # Safety
/// `state` must be null or a pointer returned by one of the `qcorr_state_*`
/// constructors that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_free(state: *mut QcorrState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Haar-random pure state of `n` qubits for `(master_seed, sample_index)`.
///
/// # Safety
/// `out` must be a valid pointer to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_haar(
    n: u32,
    master_seed: u64,
    sample_index: u64,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    emit_state(
        out,
        sample_haar(n as usize, &SeedSpec::new(master_seed, sample_index)),
    )
}

/// Random three-qubit W-class state.
///
/// # Safety
/// `out` must be a valid pointer to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_wclass(
    master_seed: u64,
    sample_index: u64,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    emit_state(out, Ok(sample_wclass(&SeedSpec::new(master_seed, sample_index))))
}

/// Random Dicke state of `n` qubits with `r` excitations.
///
/// # Safety
/// `out` must be a valid pointer to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_dicke(
    n: u32,
    r: u32,
    master_seed: u64,
    sample_index: u64,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    emit_state(
        out,
        sample_dicke(n as usize, r as usize, &SeedSpec::new(master_seed, sample_index)),
    )
}

/// Equal-coefficient Dicke state.
///
/// # Safety
/// `out` must be a valid pointer to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_dicke_equal(
    n: u32,
    r: u32,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    emit_state(out, make_dicke_equal(n as usize, r as usize))
}

/// `alpha|0..0> + sqrt(1 - alpha^2)|1..1>` on `n` qubits, `alpha` in (0,1).
///
/// # Safety
/// `out` must be a valid pointer to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_gghz(
    n: u32,
    alpha: f64,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    emit_state(out, make_gghz(n as usize, alpha))
}

/// Canonical three-qubit state from five coefficients and a phase.
///
/// # Safety
/// `coeffs` must point to 5 readable doubles; `out` must be a valid pointer
/// to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_canonical3(
    coeffs: *const f64,
    phi: f64,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    if coeffs.is_null() {
        return QcorrStatus::NullPointer;
    }
    let mut a = [0.0f64; 5];
    std::ptr::copy_nonoverlapping(coeffs, a.as_mut_ptr(), 5);
    emit_state(out, make_canonical3(&a, phi))
}

/// Build a state from `len` amplitudes split into real and imaginary parts.
/// The vector must be normalized and `len` a power of two.
///
/// # Safety
/// `re` and `im` must point to `len` readable doubles; `out` must be a valid
/// pointer to a `QcorrState*` slot.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_from_amplitudes(
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut QcorrState,
) -> QcorrStatus {
    if re.is_null() || im.is_null() {
        return QcorrStatus::NullPointer;
    }
    let res = std::slice::from_raw_parts(re, len);
    let ims = std::slice::from_raw_parts(im, len);
    let amps: Vec<num_complex::Complex64> = res
        .iter()
        .zip(ims)
        .map(|(&r, &i)| num_complex::Complex64::new(r, i))
        .collect();
    emit_state(out, PureState::from_amplitudes(&amps))
}

/// Number of qubits of a state.
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_state_n_qubits(
    state: *const QcorrState,
    out: *mut u32,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    if out.is_null() {
        return QcorrStatus::NullPointer;
    }
    *out = s.n_qubits() as u32;
    QcorrStatus::Ok
}

/// Generalized geometric measure of the state.
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_ggm(state: *const QcorrState, out: *mut f64) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    emit_f64(out, Ok(ggm(s)))
}

/// Monogamy score of `measure` with exponent `alpha` and the given nodal
/// qubit (1-based).
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_monogamy_score(
    state: *const QcorrState,
    measure: QcorrMeasure,
    alpha: f64,
    nodal: u32,
    out: *mut f64,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    emit_f64(
        out,
        monogamy_score(s, measure.into(), alpha, nodal as usize).map(|rec| rec.score),
    )
}

/// Sum of the alpha-powered pairwise correlations with the nodal qubit.
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_bipartite_sum(
    state: *const QcorrState,
    measure: QcorrMeasure,
    alpha: f64,
    nodal: u32,
    out: *mut f64,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    emit_f64(out, bipartite_sum(s, measure.into(), alpha, nodal as usize))
}

/// Critical exponent of the state for `measure` (default grid, refined to
/// 1e-3). `out_right_censored` reports whether the scan hit the grid top.
///
/// # Safety
/// `state` must be a live handle; `out_value` and `out_right_censored` must
/// be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qcorr_critical_exponent(
    state: *const QcorrState,
    measure: QcorrMeasure,
    out_value: *mut f64,
    out_right_censored: *mut bool,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    if out_value.is_null() || out_right_censored.is_null() {
        return QcorrStatus::NullPointer;
    }
    match critical_exponent(s, measure.into(), ExponentGrid::default(), 1e-3) {
        Ok(ce) => {
            *out_value = ce.value;
            *out_right_censored = ce.right_censored;
            QcorrStatus::Ok
        }
        Err(e) => {
            set_error(e);
            QcorrStatus::InvalidArgument
        }
    }
}

/// Negativity-monogamy bound of the gGHZ state with GGM `g`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_gghz_bound(g: f64, out: *mut f64) -> QcorrStatus {
    emit_f64(out, gghz_bound(g))
}

/// Localized correlation of the pair `(qubit_i, qubit_j)` (1-based) after
/// optimized projective measurements on the remaining qubits.
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_localize(
    state: *const QcorrState,
    qubit_i: u32,
    qubit_j: u32,
    measure: QcorrMeasure,
    alpha: f64,
    restarts: u32,
    out: *mut f64,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    let opts = LocalizeOptions {
        restarts: restarts.max(1) as usize,
        ..LocalizeOptions::default()
    };
    emit_f64(
        out,
        localize(s, (qubit_i as usize, qubit_j as usize), measure.into(), alpha, &opts)
            .map(|r| r.value),
    )
}

/// Localized correlation restricted to Pauli (X/Y/Z) measurement bases.
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_localize_pauli(
    state: *const QcorrState,
    qubit_i: u32,
    qubit_j: u32,
    measure: QcorrMeasure,
    out: *mut f64,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    emit_f64(
        out,
        localize_pauli(s, (qubit_i as usize, qubit_j as usize), measure.into()),
    )
}

/// Sum of localized correlations (alpha = 1) over all partners of `nodal`.
///
/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_localized_sum(
    state: *const QcorrState,
    measure: QcorrMeasure,
    alpha: f64,
    nodal: u32,
    restarts: u32,
    out: *mut f64,
) -> QcorrStatus {
    let Some(s) = state_ref(state) else {
        return QcorrStatus::NullPointer;
    };
    let opts = LocalizeOptions {
        restarts: restarts.max(1) as usize,
        ..LocalizeOptions::default()
    };
    emit_f64(
        out,
        localized_sum(s, measure.into(), alpha, nodal as usize, &opts),
    )
}

/// Average-entropy estimate `log2(M) - M/(2K)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_avg_entropy(m: u32, k: u32, out: *mut f64) -> QcorrStatus {
    emit_f64(out, avg_entropy(m as u64, k as u64))
}

/// Largest marginal eigenvalue with binary entropy `s`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_solve_max_eigenvalue(s: f64, out: *mut f64) -> QcorrStatus {
    emit_f64(out, solve_max_eigenvalue(s))
}

/// Closed-form GGM of the equal-coefficient Dicke state with n/2 excitations.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcorr_ggm_equal_dicke(n: u32, out: *mut f64) -> QcorrStatus {
    emit_f64(out, ggm_equal_dicke(n as usize))
}
