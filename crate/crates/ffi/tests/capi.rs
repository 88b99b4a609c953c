//! Exercises the C ABI through the exported extern "C" functions.

use std::ffi::CStr;
use std::ptr;

use qcorr_ffi::*;

fn make_gghz(alpha2: f64) -> *mut QcorrState {
    let mut state: *mut QcorrState = ptr::null_mut();
    let status = unsafe { qcorr_state_gghz(3, alpha2.sqrt(), &mut state) };
    assert_eq!(status, QcorrStatus::Ok);
    assert!(!state.is_null());
    state
}

#[test]
fn gghz_quantities_through_the_abi() {
    let state = make_gghz(0.8);
    unsafe {
        let mut n = 0u32;
        assert_eq!(qcorr_state_n_qubits(state, &mut n), QcorrStatus::Ok);
        assert_eq!(n, 3);

        let mut g = f64::NAN;
        assert_eq!(qcorr_ggm(state, &mut g), QcorrStatus::Ok);
        assert!((g - 0.2).abs() < 1e-9);

        let mut score = f64::NAN;
        assert_eq!(
            qcorr_monogamy_score(state, QcorrMeasure::Negativity, 1.0, 1, &mut score),
            QcorrStatus::Ok
        );
        assert!((score - 0.4).abs() < 1e-9);

        let mut bound = f64::NAN;
        assert_eq!(qcorr_gghz_bound(g, &mut bound), QcorrStatus::Ok);
        assert!((bound - 0.4).abs() < 1e-9);

        let mut sum = f64::NAN;
        assert_eq!(
            qcorr_bipartite_sum(state, QcorrMeasure::Concurrence, 1.0, 1, &mut sum),
            QcorrStatus::Ok
        );
        assert!(sum.abs() < 1e-9);

        qcorr_state_free(state);
    }
}

#[test]
fn localization_and_critical_exponent() {
    unsafe {
        let mut w3: *mut QcorrState = ptr::null_mut();
        assert_eq!(qcorr_state_dicke_equal(3, 1, &mut w3), QcorrStatus::Ok);

        let mut value = f64::NAN;
        let mut censored = false;
        assert_eq!(
            qcorr_critical_exponent(w3, QcorrMeasure::Concurrence, &mut value, &mut censored),
            QcorrStatus::Ok
        );
        assert!((value - 2.0).abs() < 1.5e-3);
        assert!(!censored);

        let mut lc = f64::NAN;
        assert_eq!(
            qcorr_localize(w3, 1, 2, QcorrMeasure::Concurrence, 1.0, 20, &mut lc),
            QcorrStatus::Ok
        );
        assert!((lc - 2.0 / 3.0).abs() < 1e-3);

        let mut pauli = f64::NAN;
        assert_eq!(
            qcorr_localize_pauli(w3, 1, 2, QcorrMeasure::Concurrence, &mut pauli),
            QcorrStatus::Ok
        );
        assert!(lc + 1e-9 >= pauli);

        let mut total = f64::NAN;
        assert_eq!(
            qcorr_localized_sum(w3, QcorrMeasure::Concurrence, 1.0, 1, 20, &mut total),
            QcorrStatus::Ok
        );
        assert!((total - 4.0 / 3.0).abs() < 1e-3);

        qcorr_state_free(w3);
    }
}

#[test]
fn amplitude_and_sampler_constructors() {
    unsafe {
        // Bell-like 3-qubit GHZ through raw amplitudes
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let re = [s, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, s];
        let im = [0.0f64; 8];
        let mut state: *mut QcorrState = ptr::null_mut();
        assert_eq!(
            qcorr_state_from_amplitudes(re.as_ptr(), im.as_ptr(), 8, &mut state),
            QcorrStatus::Ok
        );
        let mut g = 0.0;
        assert_eq!(qcorr_ggm(state, &mut g), QcorrStatus::Ok);
        assert!((g - 0.5).abs() < 1e-9);
        qcorr_state_free(state);

        // Haar sampler is deterministic per (seed, index)
        let mut a: *mut QcorrState = ptr::null_mut();
        let mut b: *mut QcorrState = ptr::null_mut();
        assert_eq!(qcorr_state_haar(3, 9, 4, &mut a), QcorrStatus::Ok);
        assert_eq!(qcorr_state_haar(3, 9, 4, &mut b), QcorrStatus::Ok);
        let (mut ga, mut gb) = (0.0, 0.0);
        assert_eq!(qcorr_ggm(a, &mut ga), QcorrStatus::Ok);
        assert_eq!(qcorr_ggm(b, &mut gb), QcorrStatus::Ok);
        assert_eq!(ga, gb);
        qcorr_state_free(a);
        qcorr_state_free(b);

        let mut w: *mut QcorrState = ptr::null_mut();
        assert_eq!(qcorr_state_wclass(1, 2, &mut w), QcorrStatus::Ok);
        qcorr_state_free(w);

        let coeffs = [0.6, 0.0, 0.0, 0.8, 0.0];
        let mut c3: *mut QcorrState = ptr::null_mut();
        assert_eq!(
            qcorr_state_canonical3(coeffs.as_ptr(), 0.0, &mut c3),
            QcorrStatus::Ok
        );
        let mut lc = 0.0;
        assert_eq!(
            qcorr_localize_pauli(c3, 1, 2, QcorrMeasure::Concurrence, &mut lc),
            QcorrStatus::Ok
        );
        assert!((lc - 0.96).abs() < 1e-9);
        qcorr_state_free(c3);
    }
}

#[test]
fn errors_surface_as_status_codes_and_messages() {
    unsafe {
        // null handling
        assert_eq!(
            qcorr_ggm(ptr::null(), &mut 0.0),
            QcorrStatus::NullPointer
        );
        let mut out: *mut QcorrState = ptr::null_mut();
        assert_eq!(
            qcorr_state_gghz(3, 0.5, ptr::null_mut()),
            QcorrStatus::NullPointer
        );

        // invalid arguments set a message
        assert_eq!(qcorr_state_gghz(3, 1.5, &mut out), QcorrStatus::InvalidArgument);
        let msg = CStr::from_ptr(qcorr_last_error()).to_string_lossy().into_owned();
        assert!(msg.contains("(0,1)"), "unexpected message: {msg}");

        // unnormalized amplitudes
        let re = [1.0, 1.0];
        let im = [0.0, 0.0];
        assert_eq!(
            qcorr_state_from_amplitudes(re.as_ptr(), im.as_ptr(), 2, &mut out),
            QcorrStatus::InvalidArgument
        );
        let msg = CStr::from_ptr(qcorr_last_error()).to_string_lossy().into_owned();
        assert!(msg.contains("norm deficit"), "unexpected message: {msg}");

        // closed forms
        let mut v = 0.0;
        assert_eq!(qcorr_avg_entropy(2, 8, &mut v), QcorrStatus::Ok);
        assert_eq!(v, 0.875);
        assert_eq!(qcorr_solve_max_eigenvalue(0.875, &mut v), QcorrStatus::Ok);
        assert!((v - 0.705).abs() < 0.001);
        assert_eq!(qcorr_ggm_equal_dicke(5, &mut v), QcorrStatus::InvalidArgument);
        assert_eq!(qcorr_ggm_equal_dicke(6, &mut v), QcorrStatus::Ok);
        assert_eq!(v, 0.4);

        // version string
        let version = CStr::from_ptr(qcorr_version()).to_string_lossy().into_owned();
        assert!(!version.is_empty());
    }
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("qcorr.h");
    let text = std::fs::read_to_string(&header).expect("cbindgen header exists");
    for symbol in [
        "qcorr_state_gghz",
        "qcorr_state_haar",
        "qcorr_state_from_amplitudes",
        "qcorr_state_free",
        "qcorr_ggm",
        "qcorr_monogamy_score",
        "qcorr_critical_exponent",
        "qcorr_localize",
        "qcorr_localized_sum",
        "qcorr_last_error",
        "QcorrStatus",
        "QcorrMeasure",
        "QcorrState",
    ] {
        assert!(text.contains(symbol), "header missing {symbol}");
    }
}
