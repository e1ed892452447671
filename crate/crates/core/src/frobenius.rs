//! Frobenius expansions of the confluent Heun equation about `z = 0`.
//!
//! Multiplying the equation by `z(z−1)` gives
//!
//! ```text
//! z(z−1)u'' + [4pz(z−1) + γ(z−1) + δz]u' + (4pαz − σ)u = 0.
//! ```
//!
//! Substituting `u = Σ c_k z^{k+ρ}` and collecting `z^{n+ρ−1}` yields the
//! three-term recurrence
//!
//! ```text
//! (n+ρ)(n+ρ−1+γ) c_n = [(n+ρ−1)(n+ρ−2+γ+δ−4p) − σ] c_{n−1}
//!                      + 4p(n+ρ−2+α) c_{n−2},
//! ```
//!
//! with `c_0 = 1` and `c_{−1} = 0`. The indicial equation `ρ(ρ−1+γ) = 0`
//! gives the two local exponents `ρ ∈ {0, 1−γ}`. For `ρ = 0` the first
//! step reads `γ c_1 = −σ`, so the function `HC` normalized by `HC(0) = 1`
//! has `HC'(0) = −σ/γ`.

use num_complex::Complex64;

use crate::error::{HeunError, Result};
use crate::kernels::{cpow_jet, near_integer, nonpositive_integer, C2Fn, Jet};
use crate::params::CheParams;

/// Default radius of the evaluation disk. The series has radius 1.
pub const DEFAULT_R_MAX: f64 = 0.5;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 80;

/// Which local solution at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    /// `ρ = 0`, the confluent Heun function proper.
    Regular,
    /// `ρ = 1 − γ`.
    Second,
}

impl Exponent {
    pub fn value(self, params: &CheParams) -> Complex64 {
        match self {
            Exponent::Regular => Complex64::new(0.0, 0.0),
            Exponent::Second => 1.0 - params.gamma(),
        }
    }
}

/// Truncated Frobenius series `z^ρ Σ_{k≤N} c_k z^k` about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    center: Complex64,
    exponent: Complex64,
    coeffs: Vec<Complex64>,
    params: CheParams,
}

impl PowerSeries {
    pub fn center(&self) -> Complex64 {
        self.center
    }
    pub fn exponent(&self) -> Complex64 {
        self.exponent
    }
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }
    pub fn params(&self) -> &CheParams {
        &self.params
    }

    /// Returns a copy with one coefficient replaced. Used to build
    /// deliberately wrong series in sensitivity tests.
    pub fn with_coeff(&self, k: usize, value: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[k] = value;
        out
    }

    /// Jet of the polynomial part `Σ c_k z^k` by Horner's rule.
    fn poly_jet(&self, z: Complex64) -> Jet {
        let zero = Complex64::new(0.0, 0.0);
        let (mut v, mut d1, mut d2) = (zero, zero, zero);
        for c in self.coeffs.iter().rev() {
            d2 = d2 * z + 2.0 * d1;
            d1 = d1 * z + v;
            v = v * z + *c;
        }
        Jet::new(v, d1, d2)
    }

    /// Evaluates `z^ρ Σ c_k z^k` and two derivatives. No disk check.
    pub fn eval_raw(&self, z: Complex64) -> Result<Jet> {
        let poly = self.poly_jet(z - self.center);
        if self.exponent == Complex64::new(0.0, 0.0) {
            return Ok(poly);
        }
        let pre = cpow_jet(Complex64::new(1.0, 0.0), z - self.center, self.exponent)?;
        Ok(pre * poly)
    }
}

/// Builds the coefficients `c_0..c_N` of the local solution with the given
/// exponent. Logarithmic (resonant) cases are rejected.
pub fn frobenius_coefficients(params: &CheParams, exponent: Exponent, order: usize) -> Result<PowerSeries> {
    let gamma = params.gamma();
    match exponent {
        Exponent::Regular => {
            if nonpositive_integer(gamma).is_some() {
                return Err(HeunError::ResonantGamma(gamma));
            }
        }
        Exponent::Second => {
            if matches!(near_integer(gamma), Some(n) if n >= 1) {
                return Err(HeunError::ResonantGamma(gamma));
            }
        }
    }
    let rho = exponent.value(params);
    let (p, delta, alpha, sigma) = (params.p(), params.delta(), params.alpha(), params.sigma());
    let mut c = Vec::with_capacity(order + 1);
    c.push(Complex64::new(1.0, 0.0));
    for n in 1..=order {
        let m = rho + n as f64;
        let lead = m * (m - 1.0 + gamma);
        let mut rhs = ((m - 1.0) * (m - 2.0 + gamma + delta - 4.0 * p) - sigma) * c[n - 1];
        if n >= 2 {
            rhs += 4.0 * p * (m - 2.0 + alpha) * c[n - 2];
        }
        c.push(rhs / lead);
    }
    Ok(PowerSeries {
        center: Complex64::new(0.0, 0.0),
        exponent: rho,
        coeffs: c,
        params: *params,
    })
}

/// A local solution about the origin, restricted to a disk `|z| ≤ r_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeunLocal {
    series: PowerSeries,
    r_max: f64,
}

impl HeunLocal {
    pub fn new(params: &CheParams, exponent: Exponent, order: usize) -> Result<Self> {
        Self::with_radius(params, exponent, order, DEFAULT_R_MAX)
    }

    pub fn with_radius(params: &CheParams, exponent: Exponent, order: usize, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(HeunError::InvalidArgument(format!(
                "r_max must lie in (0, 1), got {r_max}"
            )));
        }
        if order == 0 {
            return Err(HeunError::InvalidArgument("order must be positive".into()));
        }
        Ok(Self {
            series: frobenius_coefficients(params, exponent, order)?,
            r_max,
        })
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }
}

impl C2Fn for HeunLocal {
    fn eval(&self, z: Complex64) -> Result<Jet> {
        let modulus = z.norm();
        if modulus > self.r_max {
            return Err(HeunError::OutOfDisk {
                modulus,
                r_max: self.r_max,
            });
        }
        self.series.eval_raw(z)
    }
}

/// `HC(params; z)` and its first two derivatives, truncated at `order`.
pub fn hc_eval(params: &CheParams, z: Complex64, order: usize) -> Result<Jet> {
    HeunLocal::new(params, Exponent::Regular, order)?.eval(z)
}

/// The exponent-`(1−γ)` local solution `z^{1−γ}(1 + O(z))`.
pub fn second_solution_eval(params: &CheParams, z: Complex64, order: usize) -> Result<Jet> {
    HeunLocal::new(params, Exponent::Second, order)?.eval(z)
}
