//! Reductions of the derivative equation back to the confluent Heun class.
//!
//! The equation for `w = u'` acquires an extra singularity at
//! `σ/(4pα)` unless that point coincides with an existing one. This
//! happens in exactly three cases, and in each of them `u'` is
//! proportional to a prefactor times another confluent Heun function:
//!
//! | case        | prefactor  | `s`         | target `(p, γ', δ', α', σ')`                   |
//! |-------------|------------|-------------|-----------------------------------------------|
//! | `α = 0`     | 1          | 0           | `(p, γ+1, δ+1, 2, σ+4p−γ−δ)`                   |
//! | `σ = 0`     | `z^s`      | `1`, `−γ`   | `(p, γ+2s, δ+1, s+α+1, s(4p−γ−δ−s))`          |
//! | `σ = 4pα`   | `(z−1)^s`  | `1`, `−δ`   | `(p, γ+1, δ+2s, 1+s+α, 4p(1+α)−s(s+γ+δ))`      |
//!
//! With `HC(0) = 1` on both sides the identities hold up to a constant
//! factor, which is carried as [`DerivRelation::scale`] and obtained by
//! matching lowest-order series terms.

use num_complex::Complex64;

use crate::error::{HeunError, Result};
use crate::frobenius::{Exponent, HeunLocal};
use crate::kernels::{cpow_jet, near_integer, C2Fn};
use crate::params::{che_coeffs, derivative_ode_coeffs, CheParams};

/// Default tolerance of the case predicates.
pub const DEFAULT_TOL_CLASS: f64 = 1e-12;

/// Set of reducible cases a parameter tuple belongs to. Cases overlap, e.g.
/// `α = σ = 0` sets all three flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CaseTag {
    pub alpha_zero: bool,
    pub sigma_zero: bool,
    pub sigma_eq_4p_alpha: bool,
}

impl CaseTag {
    pub fn is_generic(&self) -> bool {
        !(self.alpha_zero || self.sigma_zero || self.sigma_eq_4p_alpha)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.alpha_zero {
            out.push(RelationCase::AlphaZero.name());
        }
        if self.sigma_zero {
            out.push(RelationCase::SigmaZero.name());
        }
        if self.sigma_eq_4p_alpha {
            out.push(RelationCase::SigmaEq4pAlpha.name());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationCase {
    AlphaZero,
    SigmaZero,
    SigmaEq4pAlpha,
}

impl RelationCase {
    pub fn name(self) -> &'static str {
        match self {
            RelationCase::AlphaZero => "alpha_zero",
            RelationCase::SigmaZero => "sigma_zero",
            RelationCase::SigmaEq4pAlpha => "sigma_eq_4p_alpha",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaZeroBranch {
    One,
    MinusGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma4pAlphaBranch {
    One,
    MinusDelta,
}

/// Reduction certificate: `u'(z) = scale · (z − center)^s · HC(target; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivRelation {
    pub case: RelationCase,
    pub s: Complex64,
    /// 0 for a `z^s` prefactor, 1 for `(z−1)^s`.
    pub prefactor_center: u8,
    pub source: CheParams,
    pub target: CheParams,
    /// `None` when the left side is the exponent-`(1−δ)` solution at
    /// `z = 1`, which the series about the origin cannot normalize.
    pub scale: Option<Complex64>,
}

impl DerivRelation {
    /// Which local solution of the source equation the relation tracks.
    pub fn source_exponent(&self) -> Option<Exponent> {
        match (self.case, self.prefactor_center) {
            (RelationCase::SigmaZero, _) if self.s != Complex64::new(1.0, 0.0) => Some(Exponent::Second),
            (RelationCase::SigmaEq4pAlpha, _) if self.s != Complex64::new(1.0, 0.0) => None,
            _ => Some(Exponent::Regular),
        }
    }

    pub fn prefactor_label(&self) -> String {
        let c = if self.prefactor_center == 0 { "z" } else { "(z-1)" };
        format!("{c}^s")
    }
}

fn close_to_zero(v: Complex64, tol: f64) -> bool {
    v.norm() <= tol
}

pub fn classify(params: &CheParams, tol_class: f64) -> CaseTag {
    let k = params.four_p_alpha();
    CaseTag {
        alpha_zero: close_to_zero(params.alpha(), tol_class),
        sigma_zero: close_to_zero(params.sigma(), tol_class),
        sigma_eq_4p_alpha: (params.sigma() - k).norm() <= tol_class * (1.0 + k.norm()),
    }
}

/// `α = 0`: `u' = (−σ/γ)·HC(p, γ+1, δ+1, 2, σ+4p−γ−δ; z)`.
pub fn relation_alpha_zero(params: &CheParams) -> Result<DerivRelation> {
    if !classify(params, DEFAULT_TOL_CLASS).alpha_zero {
        return Err(HeunError::NotApplicable);
    }
    let (p, g, d, s) = (params.p(), params.gamma(), params.delta(), params.sigma());
    let target = CheParams::new(p, g + 1.0, d + 1.0, Complex64::new(2.0, 0.0), s + 4.0 * p - g - d)?;
    Ok(DerivRelation {
        case: RelationCase::AlphaZero,
        s: Complex64::new(0.0, 0.0),
        prefactor_center: 0,
        source: *params,
        target,
        scale: Some(-s / g),
    })
}

/// `σ = 0`: `u' ∝ z^s HC(p, γ+2s, δ+1, s+α+1, s(4p−γ−δ−s); z)` with
/// `s ∈ {1, −γ}`, the roots of `−s² + s(1−γ) + γ = 0`.
pub fn relation_sigma_zero(params: &CheParams, branch: SigmaZeroBranch) -> Result<DerivRelation> {
    if !classify(params, DEFAULT_TOL_CLASS).sigma_zero {
        return Err(HeunError::NotApplicable);
    }
    let (p, g, d, a) = (params.p(), params.gamma(), params.delta(), params.alpha());
    let s = match branch {
        SigmaZeroBranch::One => Complex64::new(1.0, 0.0),
        SigmaZeroBranch::MinusGamma => {
            if (g + 1.0).norm() <= DEFAULT_TOL_CLASS {
                return Err(HeunError::DegenerateBranches);
            }
            -g
        }
    };
    let target = CheParams::new(p, g + 2.0 * s, d + 1.0, s + a + 1.0, s * (4.0 * p - g - d - s))?;
    // s = 1: u = HC has c_1 = 0 and c_2 = 4pα/(2(1+γ)), so u' ≈ 2c_2 z.
    // s = −γ: u = z^{1−γ}(1 + …) gives u' ≈ (1−γ) z^{−γ}.
    let scale = match branch {
        SigmaZeroBranch::One => 4.0 * p * a / (1.0 + g),
        SigmaZeroBranch::MinusGamma => 1.0 - g,
    };
    Ok(DerivRelation {
        case: RelationCase::SigmaZero,
        s,
        prefactor_center: 0,
        source: *params,
        target,
        scale: Some(scale),
    })
}

/// `σ = 4pα`: `u' ∝ (z−1)^s HC(p, γ+1, δ+2s, 1+s+α, 4p(1+α)−s(s+γ+δ); z)`
/// with `s ∈ {1, −δ}`, the roots of `s² + s(δ−1) − δ = 0`.
pub fn relation_sigma_4palpha(params: &CheParams, branch: Sigma4pAlphaBranch) -> Result<DerivRelation> {
    if !classify(params, DEFAULT_TOL_CLASS).sigma_eq_4p_alpha {
        return Err(HeunError::NotApplicable);
    }
    let (p, g, d, a) = (params.p(), params.gamma(), params.delta(), params.alpha());
    let s = match branch {
        Sigma4pAlphaBranch::One => Complex64::new(1.0, 0.0),
        Sigma4pAlphaBranch::MinusDelta => {
            if (d + 1.0).norm() <= DEFAULT_TOL_CLASS {
                return Err(HeunError::DegenerateBranches);
            }
            -d
        }
    };
    let target = CheParams::new(
        p,
        g + 1.0,
        d + 2.0 * s,
        1.0 + s + a,
        4.0 * p * (1.0 + a) - s * (s + g + d),
    )?;
    // s = 1: u'(0) = −σ/γ = −4pα/γ against a prefactor value of −1.
    let scale = match branch {
        Sigma4pAlphaBranch::One => Some(4.0 * p * a / g),
        Sigma4pAlphaBranch::MinusDelta => None,
    };
    Ok(DerivRelation {
        case: RelationCase::SigmaEq4pAlpha,
        s,
        prefactor_center: 1,
        source: *params,
        target,
        scale,
    })
}

/// Every reduction that applies to `params`, in case order. Branch
/// constructions that fail (e.g. coincident exponents) are returned as
/// errors alongside the successful ones.
pub fn all_relations(params: &CheParams, tol_class: f64) -> Vec<Result<DerivRelation>> {
    let tag = classify(params, tol_class);
    let mut out = Vec::new();
    if tag.alpha_zero {
        out.push(relation_alpha_zero(params));
    }
    if tag.sigma_zero {
        out.push(relation_sigma_zero(params, SigmaZeroBranch::One));
        if (params.gamma() + 1.0).norm() > DEFAULT_TOL_CLASS {
            out.push(relation_sigma_zero(params, SigmaZeroBranch::MinusGamma));
        }
    }
    if tag.sigma_eq_4p_alpha {
        out.push(relation_sigma_4palpha(params, Sigma4pAlphaBranch::One));
        if (params.delta() + 1.0).norm() > DEFAULT_TOL_CLASS {
            out.push(relation_sigma_4palpha(params, Sigma4pAlphaBranch::MinusDelta));
        }
    }
    out
}

/// Transforms the derivative equation by `u' = φ w` with
/// `φ = (z − center)^s` and compares the result with the canonical
/// coefficients of `rel.target`.
///
/// With `ℓ = s/(z−c)` the transformed equation is
/// `w'' + (a1 + 2ℓ) w' + (a0 + a1 ℓ + s(s−1)/(z−c)²) w = 0`. Each
/// coefficient's deviation is measured relative to the largest term that
/// enters it; the maximum over all points is returned.
pub fn verify_relation_coeffs(params: &CheParams, rel: &DerivRelation, zs: &[Complex64]) -> Result<f64> {
    let center = Complex64::new(rel.prefactor_center as f64, 0.0);
    let mut worst = 0.0f64;
    for &z in zs {
        let d = derivative_ode_coeffs(params, z)?;
        let t = che_coeffs(&rel.target, z)?;
        let x = z - center;
        let ell = rel.s / x;
        let curv = rel.s * (rel.s - 1.0) / (x * x);
        let a1 = d.a1 + 2.0 * ell;
        let a0 = d.a0 + d.a1 * ell + curv;
        let s1 = t.a1.norm().max(d.a1.norm()).max((2.0 * ell).norm());
        let s0 =
            t.a0.norm()
                .max(d.a0.norm())
                .max((d.a1 * ell).norm())
                .max(curv.norm());
        let dev1 = (a1 - t.a1).norm() / s1.max(f64::MIN_POSITIVE);
        let dev0 = (a0 - t.a0).norm() / s0.max(f64::MIN_POSITIVE);
        worst = worst.max(dev1).max(dev0);
    }
    Ok(worst)
}

/// Outcome of a solution-level check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioCheck {
    /// Mean of `u'(z)/(φ(z)·HC_target(z))` over the sample points.
    pub scale: Complex64,
    /// `max |r(z) − mean| / |mean|`, or `max |r(z)|` when the mean vanishes.
    pub deviation: f64,
}

/// Checks that `u'(z) / (φ(z)·HC_target(z))` is constant over `zs`, with
/// both sides evaluated from Frobenius series of the given order.
///
/// The left side is `HC` for `s ∈ {0, 1}` and the exponent-`(1−γ)`
/// solution for `s = −γ`. The `s = −δ` branch tracks a solution local to
/// `z = 1` and is rejected with [`HeunError::NotApplicable`].
pub fn verify_relation_solutions(
    params: &CheParams,
    rel: &DerivRelation,
    zs: &[Complex64],
    order: usize,
) -> Result<RatioCheck> {
    let exponent = rel.source_exponent().ok_or(HeunError::NotApplicable)?;
    if let Exponent::Second = exponent {
        if near_integer(params.gamma()).is_some() {
            return Err(HeunError::ResonantGamma(params.gamma()));
        }
    }
    let lhs = HeunLocal::new(params, exponent, order)?;
    let rhs = HeunLocal::new(&rel.target, Exponent::Regular, order)?;
    let center = Complex64::new(rel.prefactor_center as f64, 0.0);
    let mut ratios = Vec::with_capacity(zs.len());
    for &z in zs {
        let du = lhs.eval(z)?.d1;
        let pre = cpow_jet(Complex64::new(1.0, 0.0), z - center, rel.s)?.value;
        ratios.push(du / (pre * rhs.eval(z)?.value));
    }
    if ratios.is_empty() {
        return Err(HeunError::InvalidArgument("no sample points".into()));
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let deviation = if mean.norm() > 0.0 {
        ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm()
    } else {
        ratios.iter().map(|r| r.norm()).fold(0.0, f64::max)
    };
    Ok(RatioCheck {
        scale: mean,
        deviation,
    })
}
