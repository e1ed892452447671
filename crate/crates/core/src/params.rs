//! Parameters and coefficient functions of the canonical confluent Heun
//! equation
//!
//! ```text
//! u'' + (4p + γ/z + δ/(z−1)) u' + (4pαz − σ)/(z(z−1)) u = 0
//! ```
//!
//! The accessory parameter enters the numerator with a minus sign. No
//! conversion to other sign or scaling conventions is provided.
//!
//! Writing `f` for the coefficient of `u'` and `g` for the coefficient of
//! `u`, the derivative `w = u'` satisfies
//!
//! ```text
//! w'' + (f − g'/g) w' + (g + f' − f g'/g) w = 0
//! ```
//!
//! which in general carries an extra singularity at `z = σ/(4pα)`.

use num_complex::Complex64;

use crate::error::{HeunError, Result};

/// Evaluation points closer than this to a pole are rejected.
pub const POLE_GUARD: f64 = 1e-8;

/// The five complex parameters `(p, γ, δ, α, σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheParams {
    p: Complex64,
    gamma: Complex64,
    delta: Complex64,
    alpha: Complex64,
    sigma: Complex64,
}

impl CheParams {
    /// Validates and builds a parameter set. `p` must be nonzero and every
    /// component finite.
    pub fn new(
        p: Complex64,
        gamma: Complex64,
        delta: Complex64,
        alpha: Complex64,
        sigma: Complex64,
    ) -> Result<Self> {
        for (name, v) in [
            ("p", p),
            ("gamma", gamma),
            ("delta", delta),
            ("alpha", alpha),
            ("sigma", sigma),
        ] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(HeunError::NonFinite(name));
            }
        }
        if p == Complex64::new(0.0, 0.0) {
            return Err(HeunError::ZeroP);
        }
        Ok(Self {
            p,
            gamma,
            delta,
            alpha,
            sigma,
        })
    }

    /// Convenience constructor for real parameters.
    pub fn real(p: f64, gamma: f64, delta: f64, alpha: f64, sigma: f64) -> Result<Self> {
        Self::new(p.into(), gamma.into(), delta.into(), alpha.into(), sigma.into())
    }

    pub fn from_array(v: [Complex64; 5]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3], v[4])
    }

    pub fn to_array(&self) -> [Complex64; 5] {
        [self.p, self.gamma, self.delta, self.alpha, self.sigma]
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }
    pub fn delta(&self) -> Complex64 {
        self.delta
    }
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }
    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    /// `4pα`, the slope of the numerator of `g`.
    pub fn four_p_alpha(&self) -> Complex64 {
        4.0 * self.p * self.alpha
    }

    /// Location `σ/(4pα)` of the extra singularity of the derivative
    /// equation, or `None` when `4pα = 0`.
    pub fn extra_singularity(&self) -> Option<Complex64> {
        let k = self.four_p_alpha();
        if k == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.sigma / k)
        }
    }
}

/// Coefficients `(a1, a0)` of a second-order linear ODE
/// `y'' + a1 y' + a0 y = 0` sampled at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCoeffs {
    pub a1: Complex64,
    pub a0: Complex64,
}

fn guard_regular(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(HeunError::NonFinite("z"));
    }
    if z.norm() < POLE_GUARD || (z - 1.0).norm() < POLE_GUARD {
        return Err(HeunError::SingularPoint(z));
    }
    Ok(())
}

/// `f(z) = 4p + γ/z + δ/(z−1)`.
pub fn coeff_f(params: &CheParams, z: Complex64) -> Result<Complex64> {
    guard_regular(z)?;
    Ok(4.0 * params.p + params.gamma / z + params.delta / (z - 1.0))
}

/// `f'(z) = −γ/z² − δ/(z−1)²`.
pub fn coeff_f_prime(params: &CheParams, z: Complex64) -> Result<Complex64> {
    guard_regular(z)?;
    let zm1 = z - 1.0;
    Ok(-params.gamma / (z * z) - params.delta / (zm1 * zm1))
}

/// `g(z) = (4pαz − σ)/(z(z−1))`.
pub fn coeff_g(params: &CheParams, z: Complex64) -> Result<Complex64> {
    guard_regular(z)?;
    Ok((params.four_p_alpha() * z - params.sigma) / (z * (z - 1.0)))
}

/// `g'(z)` by the quotient rule.
pub fn coeff_g_prime(params: &CheParams, z: Complex64) -> Result<Complex64> {
    guard_regular(z)?;
    let k = params.four_p_alpha();
    let den = z * (z - 1.0);
    let num = k * z - params.sigma;
    Ok((k * den - num * (2.0 * z - 1.0)) / (den * den))
}

/// Both coefficients `(f, g)` of the canonical equation at `z`.
pub fn che_coeffs(params: &CheParams, z: Complex64) -> Result<OdeCoeffs> {
    Ok(OdeCoeffs {
        a1: coeff_f(params, z)?,
        a0: coeff_g(params, z)?,
    })
}

/// Coefficients of the second-order equation satisfied by `w = u'`, in the
/// expanded form where `g'/g = 4pα/(4pαz − σ) − 1/z − 1/(z−1)`.
///
/// Fails with [`HeunError::GZero`] when `g` vanishes identically
/// (`α = σ = 0`) and with [`HeunError::SingularPoint`] near `0`, `1` or
/// the extra singularity `σ/(4pα)`.
pub fn derivative_ode_coeffs(params: &CheParams, z: Complex64) -> Result<OdeCoeffs> {
    guard_regular(z)?;
    let k = params.four_p_alpha();
    let zero = Complex64::new(0.0, 0.0);
    if k == zero && params.sigma == zero {
        return Err(HeunError::GZero);
    }
    let lin = k * z - params.sigma;
    if let Some(zs) = params.extra_singularity() {
        if (z - zs).norm() < POLE_GUARD {
            return Err(HeunError::SingularPoint(z));
        }
    }
    if lin == zero {
        return Err(HeunError::GZero);
    }
    let zm1 = z - 1.0;
    let extra = k / lin;
    let f = 4.0 * params.p + params.gamma / z + params.delta / zm1;
    let g = lin / (z * zm1);
    let a1 = 4.0 * params.p + (params.gamma + 1.0) / z + (params.delta + 1.0) / zm1 - extra;
    let a0 = -params.gamma / (z * z) - params.delta / (zm1 * zm1) + g - (extra - 1.0 / z - 1.0 / zm1) * f;
    Ok(OdeCoeffs { a1, a0 })
}
