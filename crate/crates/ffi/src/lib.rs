//! C ABI over `confluent-heun`.
//!
//! Conventions:
//!
//! * every function returns a [`HeunStatus`]; results go through out
//!   pointers, which are left untouched on failure;
//! * parameter sets and expansions are opaque handles created by
//!   `*_new` and released by the matching `*_free`;
//! * the message of the most recent failure on the calling thread is
//!   available from [`heun_last_error_message`];
//! * panics never cross the boundary and are reported as
//!   [`HeunStatus::Internal`].

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use confluent_heun::frobenius::{hc_eval, second_solution_eval};
use confluent_heun::goursat::{
    find_termination_p, init_expansion, termination_polynomial, GoursatExpansion, TerminationBranch,
};
use confluent_heun::params::derivative_ode_coeffs;
use confluent_heun::relations::classify;
use confluent_heun::{CheParams, HeunError, Jet};
use num_complex::Complex64;

/// Result codes. Codes 10 and above mirror the library's error kinds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeunStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    Internal = 3,
    ZeroP = 10,
    NonFinite = 11,
    SingularPoint = 12,
    GZero = 13,
    PoleParameter = 14,
    NoConvergence = 15,
    BranchCut = 16,
    ZeroBase = 17,
    OutOfDisk = 18,
    ResonantGamma = 19,
    NotApplicable = 20,
    DegenerateBranches = 21,
    DegenerateGamma = 22,
    DegenerateAlpha = 23,
    NotSigmaZero = 24,
    DegenerateRn = 25,
    ZeroGammaN = 26,
    C0Undetermined = 27,
    DegeneratePolynomial = 28,
    PathTooCloseToSingularity = 29,
    StepUnderflow = 30,
    InvalidArgument = 31,
}

impl From<&HeunError> for HeunStatus {
    fn from(e: &HeunError) -> Self {
        match e {
            HeunError::ZeroP => HeunStatus::ZeroP,
            HeunError::NonFinite(_) => HeunStatus::NonFinite,
            HeunError::SingularPoint(_) => HeunStatus::SingularPoint,
            HeunError::GZero => HeunStatus::GZero,
            HeunError::PoleParameter(_) => HeunStatus::PoleParameter,
            HeunError::NoConvergence(_) => HeunStatus::NoConvergence,
            HeunError::BranchCut(_) => HeunStatus::BranchCut,
            HeunError::ZeroBase => HeunStatus::ZeroBase,
            HeunError::OutOfDisk { .. } => HeunStatus::OutOfDisk,
            HeunError::ResonantGamma(_) => HeunStatus::ResonantGamma,
            HeunError::NotApplicable => HeunStatus::NotApplicable,
            HeunError::DegenerateBranches => HeunStatus::DegenerateBranches,
            HeunError::DegenerateGamma(_) => HeunStatus::DegenerateGamma,
            HeunError::DegenerateAlpha(_) => HeunStatus::DegenerateAlpha,
            HeunError::NotSigmaZero => HeunStatus::NotSigmaZero,
            HeunError::DegenerateRn(_) => HeunStatus::DegenerateRn,
            HeunError::ZeroGammaN(_) => HeunStatus::ZeroGammaN,
            HeunError::C0Undetermined => HeunStatus::C0Undetermined,
            HeunError::DegeneratePolynomial => HeunStatus::DegeneratePolynomial,
            HeunError::PathTooCloseToSingularity(_) => HeunStatus::PathTooCloseToSingularity,
            HeunError::StepUnderflow(_) => HeunStatus::StepUnderflow,
            HeunError::InvalidArgument(_) => HeunStatus::InvalidArgument,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HeunComplex {
    pub re: f64,
    pub im: f64,
}

impl From<HeunComplex> for Complex64 {
    fn from(c: HeunComplex) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl From<Complex64> for HeunComplex {
    fn from(c: Complex64) -> Self {
        HeunComplex { re: c.re, im: c.im }
    }
}

/// A function value with its first two derivatives.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HeunJet {
    pub value: HeunComplex,
    pub d1: HeunComplex,
    pub d2: HeunComplex,
}

impl From<Jet> for HeunJet {
    fn from(j: Jet) -> Self {
        HeunJet {
            value: j.value.into(),
            d1: j.d1.into(),
            d2: j.d2.into(),
        }
    }
}

/// Bits reported by [`heun_classify`].
pub const HEUN_CASE_ALPHA_ZERO: u32 = 1;
pub const HEUN_CASE_SIGMA_ZERO: u32 = 2;
pub const HEUN_CASE_SIGMA_EQ_4P_ALPHA: u32 = 4;

/// Values of the `branch` argument of [`heun_termination_roots`].
pub const HEUN_BRANCH_DELTA_EQ_MINUS_N: u32 = 0;
pub const HEUN_BRANCH_ALPHA_MINUS_GAMMA_EQ_MINUS_N: u32 = 1;

/// Opaque parameter set `(p, γ, δ, α, σ)`.
pub struct HeunParams(CheParams);

/// Opaque Kummer-function expansion with computed coefficients.
pub struct HeunGoursat(GoursatExpansion);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Runs `f`, recording any error message and converting panics.
fn guard<F>(f: F) -> HeunStatus
where
    F: FnOnce() -> Result<(), HeunStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HeunStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            HeunStatus::Internal
        }
    }
}

fn lib<T>(r: confluent_heun::Result<T>) -> Result<T, HeunStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        HeunStatus::from(&e)
    })
}

fn non_null<T>(ptr: *const T) -> Result<(), HeunStatus> {
    if ptr.is_null() {
        set_error("null pointer argument".into());
        Err(HeunStatus::NullPointer)
    } else {
        Ok(())
    }
}

/// Copies the last error message of this thread, NUL-terminated and
/// truncated to `cap` bytes. Returns the full message length (excluding
/// the terminator); pass a null buffer to query it.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn heun_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Validates and allocates a parameter set.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn heun_params_new(
    p: HeunComplex,
    gamma: HeunComplex,
    delta: HeunComplex,
    alpha: HeunComplex,
    sigma: HeunComplex,
    out: *mut *mut HeunParams,
) -> HeunStatus {
    guard(|| {
        non_null(out)?;
        let params = lib(CheParams::new(
            p.into(),
            gamma.into(),
            delta.into(),
            alpha.into(),
            sigma.into(),
        ))?;
        *out = Box::into_raw(Box::new(HeunParams(params)));
        Ok(())
    })
}

/// Releases a parameter set. Null is ignored.
///
/// # Safety
/// `params` must be null or a handle from [`heun_params_new`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn heun_params_free(params: *mut HeunParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// `HC(z)` and two derivatives from a Frobenius series of the given order
/// (`|z| ≤ 0.5`).
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn heun_hc_eval(
    params: *const HeunParams,
    z: HeunComplex,
    order: usize,
    out: *mut HeunJet,
) -> HeunStatus {
    guard(|| {
        non_null(params)?;
        non_null(out)?;
        *out = lib(hc_eval(&(*params).0, z.into(), order))?.into();
        Ok(())
    })
}

/// The local solution `z^{1−γ}(1 + O(z))` and two derivatives.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn heun_second_solution_eval(
    params: *const HeunParams,
    z: HeunComplex,
    order: usize,
    out: *mut HeunJet,
) -> HeunStatus {
    guard(|| {
        non_null(params)?;
        non_null(out)?;
        *out = lib(second_solution_eval(&(*params).0, z.into(), order))?.into();
        Ok(())
    })
}

/// Coefficients `(a1, a0)` of the equation satisfied by `u'`.
///
/// # Safety
/// `params` must be a live handle; `a1` and `a0` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn heun_derivative_ode_coeffs(
    params: *const HeunParams,
    z: HeunComplex,
    a1: *mut HeunComplex,
    a0: *mut HeunComplex,
) -> HeunStatus {
    guard(|| {
        non_null(params)?;
        non_null(a1)?;
        non_null(a0)?;
        let k = lib(derivative_ode_coeffs(&(*params).0, z.into()))?;
        *a1 = k.a1.into();
        *a0 = k.a0.into();
        Ok(())
    })
}

/// Writes a bit set of `HEUN_CASE_*` flags; zero means generic.
///
/// # Safety
/// `params` must be a live handle and `flags` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn heun_classify(params: *const HeunParams, tol: f64, flags: *mut u32) -> HeunStatus {
    guard(|| {
        non_null(params)?;
        non_null(flags)?;
        if !(tol >= 0.0 && tol.is_finite()) {
            set_error(format!("tolerance must be nonnegative, got {tol}"));
            return Err(HeunStatus::InvalidArgument);
        }
        let tag = classify(&(*params).0, tol);
        *flags = [
            (tag.alpha_zero, HEUN_CASE_ALPHA_ZERO),
            (tag.sigma_zero, HEUN_CASE_SIGMA_ZERO),
            (tag.sigma_eq_4p_alpha, HEUN_CASE_SIGMA_EQ_4P_ALPHA),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .fold(0, |acc, (_, bit)| acc | bit);
        Ok(())
    })
}

/// Builds the Kummer-function expansion of a `σ = 0` parameter set with
/// coefficients `a_0..a_n`.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn heun_goursat_new(
    params: *const HeunParams,
    n: usize,
    out: *mut *mut HeunGoursat,
) -> HeunStatus {
    guard(|| {
        non_null(params)?;
        non_null(out)?;
        let exp = lib(init_expansion(&(*params).0, n).and_then(|e| e.compute_coefficients(n)))?;
        *out = Box::into_raw(Box::new(HeunGoursat(exp)));
        Ok(())
    })
}

/// Releases an expansion. Null is ignored.
///
/// # Safety
/// `g` must be null or a live handle from [`heun_goursat_new`].
#[no_mangle]
pub unsafe extern "C" fn heun_goursat_free(g: *mut HeunGoursat) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Copies the coefficients into `buf`. `len` receives the number of
/// coefficients; if it exceeds `cap` nothing is copied and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `g` must be a live handle, `len` valid, and `buf` valid for `cap`
/// elements unless `cap` is zero.
#[no_mangle]
pub unsafe extern "C" fn heun_goursat_coeffs(
    g: *const HeunGoursat,
    buf: *mut HeunComplex,
    cap: usize,
    len: *mut usize,
) -> HeunStatus {
    guard(|| {
        non_null(g)?;
        non_null(len)?;
        copy_out((*g).0.coeffs(), buf, cap, len)
    })
}

/// The partial sum `w(z)` and two derivatives.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn heun_goursat_eval_w(
    g: *const HeunGoursat,
    z: HeunComplex,
    out: *mut HeunJet,
) -> HeunStatus {
    guard(|| {
        non_null(g)?;
        non_null(out)?;
        *out = lib((*g).0.eval_w(z.into()))?.into();
        Ok(())
    })
}

/// `u(z) − C0` and two derivatives.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn heun_goursat_eval_integral(
    g: *const HeunGoursat,
    z: HeunComplex,
    out: *mut HeunJet,
) -> HeunStatus {
    guard(|| {
        non_null(g)?;
        non_null(out)?;
        *out = lib((*g).0.eval_integral(z.into()))?.into();
        Ok(())
    })
}

unsafe fn copy_out(
    src: &[Complex64],
    buf: *mut HeunComplex,
    cap: usize,
    len: *mut usize,
) -> Result<(), HeunStatus> {
    *len = src.len();
    if src.len() > cap {
        set_error(format!("buffer holds {cap} values, {} needed", src.len()));
        return Err(HeunStatus::BufferTooSmall);
    }
    if !src.is_empty() {
        non_null(buf)?;
        for (i, c) in src.iter().enumerate() {
            *buf.add(i) = (*c).into();
        }
    }
    Ok(())
}

/// Roots in `p` of the degree-`n` termination condition on one branch.
/// `free` is `α` on the `δ = −n` branch and `δ` on the `α − γ = −n`
/// branch. Buffer semantics as in [`heun_goursat_coeffs`].
///
/// # Safety
/// `len` must be valid and `buf` valid for `cap` elements unless `cap` is
/// zero.
#[no_mangle]
pub unsafe extern "C" fn heun_termination_roots(
    n: usize,
    branch: u32,
    gamma: HeunComplex,
    free: HeunComplex,
    buf: *mut HeunComplex,
    cap: usize,
    len: *mut usize,
) -> HeunStatus {
    guard(|| {
        non_null(len)?;
        let branch = match branch {
            HEUN_BRANCH_DELTA_EQ_MINUS_N => TerminationBranch::DeltaEqMinusN,
            HEUN_BRANCH_ALPHA_MINUS_GAMMA_EQ_MINUS_N => TerminationBranch::AlphaMinusGammaEqMinusN,
            other => {
                set_error(format!("unknown branch {other}"));
                return Err(HeunStatus::InvalidArgument);
            }
        };
        let poly = lib(termination_polynomial(n, branch, gamma.into(), free.into()))?;
        let roots = lib(find_termination_p(&poly))?;
        copy_out(&roots, buf, cap, len)
    })
}
