use std::ptr;

use confluent_heun_ffi::*;

fn c(re: f64, im: f64) -> HeunComplex {
    HeunComplex { re, im }
}

fn params(p: f64, gamma: f64, delta: f64, alpha: f64, sigma: f64) -> *mut HeunParams {
    let mut h = ptr::null_mut();
    let st = unsafe {
        heun_params_new(
            c(p, 0.0),
            c(gamma, 0.0),
            c(delta, 0.0),
            c(alpha, 0.0),
            c(sigma, 0.0),
            &mut h,
        )
    };
    assert_eq!(st, HeunStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    unsafe {
        let n = heun_last_error_message(ptr::null_mut(), 0);
        let mut buf = vec![0u8; n + 1];
        heun_last_error_message(buf.as_mut_ptr().cast(), buf.len());
        String::from_utf8(buf[..n].to_vec()).unwrap()
    }
}

#[test]
fn hc_is_one_at_origin() {
    let h = params(0.3, 1.7, 0.4, 0.2, 0.5);
    let mut jet = HeunJet::default();
    assert_eq!(
        unsafe { heun_hc_eval(h, c(0.0, 0.0), 40, &mut jet) },
        HeunStatus::Ok
    );
    assert!((jet.value.re - 1.0).abs() < 1e-15 && jet.value.im.abs() < 1e-15);
    unsafe { heun_params_free(h) };
}

#[test]
fn errors_map_to_codes_and_messages() {
    let mut h = ptr::null_mut();
    let st = unsafe {
        heun_params_new(
            c(0.0, 0.0),
            c(1.5, 0.0),
            c(0.5, 0.0),
            c(0.2, 0.0),
            c(0.1, 0.0),
            &mut h,
        )
    };
    assert_eq!(st, HeunStatus::ZeroP);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let h = params(0.3, 1.7, 0.4, 0.2, 0.5);
    let mut jet = HeunJet::default();
    assert_eq!(
        unsafe { heun_hc_eval(h, c(0.9, 0.0), 40, &mut jet) },
        HeunStatus::OutOfDisk
    );
    assert_eq!(
        unsafe { heun_hc_eval(h, c(0.1, 0.0), 40, ptr::null_mut()) },
        HeunStatus::NullPointer
    );
    assert_eq!(last_error(), "null pointer argument");
    let mut flags = 0;
    assert_eq!(
        unsafe { heun_classify(h, -1.0, &mut flags) },
        HeunStatus::InvalidArgument
    );
    unsafe { heun_params_free(h) };
    unsafe { heun_params_free(ptr::null_mut()) };
}

#[test]
fn classify_flags() {
    let h = params(0.25, 1.5, 0.5, 0.0, 0.0);
    let mut flags = 0;
    assert_eq!(unsafe { heun_classify(h, 1e-12, &mut flags) }, HeunStatus::Ok);
    assert_eq!(
        flags,
        HEUN_CASE_ALPHA_ZERO | HEUN_CASE_SIGMA_ZERO | HEUN_CASE_SIGMA_EQ_4P_ALPHA
    );
    unsafe { heun_params_free(h) };
}

#[test]
fn derivative_coefficients_blow_up_near_extra_singularity() {
    let h = params(0.25, 1.5, 0.5, 0.4, 0.1);
    let (mut a1, mut a0) = (c(0.0, 0.0), c(0.0, 0.0));
    let st = unsafe { heun_derivative_ode_coeffs(h, c(0.25 + 5e-8, 0.0), &mut a1, &mut a0) };
    assert_eq!(st, HeunStatus::Ok, "{}", last_error());
    assert!(a1.re.hypot(a1.im) > 1e6);
    unsafe { heun_params_free(h) };
}

#[test]
fn termination_roots_and_buffer_sizing() {
    let mut len = 0;
    let st = unsafe {
        heun_termination_roots(
            1,
            HEUN_BRANCH_DELTA_EQ_MINUS_N,
            c(1.0, 0.0),
            c(0.0, 0.0),
            ptr::null_mut(),
            0,
            &mut len,
        )
    };
    assert_eq!(st, HeunStatus::BufferTooSmall);
    assert_eq!(len, 1);
    let mut buf = vec![HeunComplex::default(); len];
    let st = unsafe {
        heun_termination_roots(
            1,
            HEUN_BRANCH_DELTA_EQ_MINUS_N,
            c(1.0, 0.0),
            c(0.0, 0.0),
            buf.as_mut_ptr(),
            buf.len(),
            &mut len,
        )
    };
    assert_eq!(st, HeunStatus::Ok);
    assert!((buf[0].re + 0.25).abs() < 1e-12 && buf[0].im.abs() < 1e-12);
    let st = unsafe { heun_termination_roots(1, 7, c(1.0, 0.0), c(0.0, 0.0), ptr::null_mut(), 0, &mut len) };
    assert_eq!(st, HeunStatus::InvalidArgument);
}

#[test]
fn goursat_handle_round_trip() {
    let h = params(0.2, 1.3, 1.5, 0.4, 0.0);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { heun_goursat_new(h, 8, &mut g) }, HeunStatus::Ok);
    let mut len = 0;
    let mut buf = vec![HeunComplex::default(); 16];
    assert_eq!(
        unsafe { heun_goursat_coeffs(g, buf.as_mut_ptr(), buf.len(), &mut len) },
        HeunStatus::Ok
    );
    assert_eq!(len, 9);
    let mut w = HeunJet::default();
    assert_eq!(
        unsafe { heun_goursat_eval_w(g, c(0.0, 0.0), &mut w) },
        HeunStatus::Ok
    );
    let sum: f64 = buf[..len].iter().map(|a| a.re).sum();
    assert!((w.value.re - sum).abs() < 1e-12);
    let mut u = HeunJet::default();
    assert_eq!(
        unsafe { heun_goursat_eval_integral(g, c(0.2, 0.1), &mut u) },
        HeunStatus::Ok
    );
    assert!(u.value.re.is_finite());
    unsafe {
        heun_goursat_free(g);
        heun_params_free(h);
    }

    let h = params(0.2, 1.3, 1.5, 0.4, 0.3);
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { heun_goursat_new(h, 8, &mut g) },
        HeunStatus::NotSigmaZero
    );
    assert!(g.is_null());
    unsafe { heun_params_free(h) };
}
