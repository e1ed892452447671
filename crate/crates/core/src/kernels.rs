//! Series kernels for the classical functions everything else is built
//! from: ₁F₁, ₂F₂, the upper incomplete gamma function, generalized
//! Laguerre functions and principal-branch complex powers.
//!
//! Every evaluator that feeds an ODE residual returns a [`Jet`] carrying
//! the value together with its first two derivatives.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{HeunError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Value and first two derivatives of a scalar function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet {
    pub const fn new(value: Complex64, d1: Complex64, d2: Complex64) -> Self {
        Self { value, d1, d2 }
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(value, ZERO, ZERO)
    }

    /// The identity function `x ↦ x` at `x`.
    pub fn variable(x: Complex64) -> Self {
        Self::new(x, ONE, ZERO)
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self::new(c * self.value, c * self.d1, c * self.d2)
    }

    /// Jet of `x ↦ f(k·x)` given the jet of `f` at `k·x`.
    pub fn chain_linear(self, k: Complex64) -> Self {
        Self::new(self.value, k * self.d1, k * k * self.d2)
    }

    /// `e^{r·x}` at `x`.
    pub fn exp_linear(rate: Complex64, x: Complex64) -> Self {
        let e = (rate * x).exp();
        Self::new(e, rate * e, rate * rate * e)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.value - o.value, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.value, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    /// Leibniz rule.
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.value * o.value,
            self.d1 * o.value + self.value * o.d1,
            self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        )
    }
}

/// A function that can be evaluated together with its first two
/// derivatives. Implementations are pure and reentrant.
pub trait C2Fn {
    fn eval(&self, z: Complex64) -> Result<Jet>;
}

impl<F> C2Fn for F
where
    F: Fn(Complex64) -> Result<Jet>,
{
    fn eval(&self, z: Complex64) -> Result<Jet> {
        self(z)
    }
}

/// Stopping rules for the hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub stagnation_window: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
            stagnation_window: 3,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize, stagnation_window: usize) -> Result<Self> {
        if rel_tol.is_nan() || rel_tol <= 0.0 || !rel_tol.is_finite() {
            return Err(HeunError::InvalidArgument(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if max_terms < 10 {
            return Err(HeunError::InvalidArgument(format!(
                "max_terms must be at least 10, got {max_terms}"
            )));
        }
        if stagnation_window == 0 {
            return Err(HeunError::InvalidArgument(
                "stagnation_window must be positive".into(),
            ));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            stagnation_window,
        })
    }
}

/// If `v` is within rounding of a nonpositive integer, returns `-v` as a
/// count.
pub(crate) fn nonpositive_integer(v: Complex64) -> Option<usize> {
    let r = v.re.round();
    if r <= 0.0 && v.im.abs() <= 1e-12 && (v.re - r).abs() <= 1e-12 * r.abs().max(1.0) {
        Some((-r) as usize)
    } else {
        None
    }
}

/// Integer check used by degeneracy guards throughout the crate.
pub(crate) fn near_integer(v: Complex64) -> Option<i64> {
    let r = v.re.round();
    if v.im.abs() <= 1e-12 && (v.re - r).abs() <= 1e-12 * r.abs().max(1.0) {
        Some(r as i64)
    } else {
        None
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    re: f64,
    im: f64,
    c_re: f64,
    c_im: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: Complex64) {
        fn step(sum: &mut f64, comp: &mut f64, x: f64) {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *comp += (*sum - t) + x;
            } else {
                *comp += (x - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.re, &mut self.c_re, v.re);
        step(&mut self.im, &mut self.c_im, v.im);
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.re + self.c_re, self.im + self.c_im)
    }
}

/// Sums `Σ_k Π(a_i)_k / Π(b_j)_k · x^k / k!`.
fn pfq_sum(upper: &[Complex64], lower: &[Complex64], x: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let mut sum = CompensatedSum::default();
    let mut term = ONE;
    sum.add(term);
    if x == ZERO {
        return Ok(ONE);
    }
    let mut quiet = 0usize;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        if upper.iter().any(|a| nonpositive_integer(*a + kf) == Some(0)) {
            return Ok(sum.total());
        }
        if let Some(b) = lower.iter().find(|b| nonpositive_integer(**b + kf) == Some(0)) {
            return Err(HeunError::PoleParameter(*b));
        }
        let mut ratio = x / (kf + 1.0);
        for a in upper {
            ratio *= *a + kf;
        }
        for b in lower {
            ratio /= *b + kf;
        }
        term *= ratio;
        sum.add(term);
        if term == ZERO {
            return Ok(sum.total());
        }
        if term.norm() <= ctl.rel_tol * sum.total().norm() {
            quiet += 1;
            if quiet >= ctl.stagnation_window {
                return Ok(sum.total());
            }
        } else {
            quiet = 0;
        }
    }
    Err(HeunError::NoConvergence(ctl.max_terms))
}

/// Value and two `x`-derivatives of a `pFq` via the parameter-shift rule
/// `d/dx pFq(a; b; x) = (Πa/Πb) pFq(a+1; b+1; x)`.
fn pfq_jet(upper: &[Complex64], lower: &[Complex64], x: Complex64, ctl: &SeriesControl) -> Result<Jet> {
    let value = pfq_sum(upper, lower, x, ctl)?;
    let shift = |s: f64| -> (Vec<Complex64>, Vec<Complex64>) {
        (
            upper.iter().map(|a| *a + s).collect(),
            lower.iter().map(|b| *b + s).collect(),
        )
    };
    let factor = |s: f64| -> Complex64 {
        let num: Complex64 = upper.iter().map(|a| *a + s).product();
        let den: Complex64 = lower.iter().map(|b| *b + s).product();
        num / den
    };
    let f0 = factor(0.0);
    let d1 = if f0 == ZERO {
        ZERO
    } else {
        let (u, l) = shift(1.0);
        f0 * pfq_sum(&u, &l, x, ctl)?
    };
    let f1 = factor(1.0);
    let d2 = if f0 == ZERO || f1 == ZERO {
        ZERO
    } else {
        let (u, l) = shift(2.0);
        f0 * f1 * pfq_sum(&u, &l, x, ctl)?
    };
    Ok(Jet::new(value, d1, d2))
}

/// Kummer's function `₁F₁(a; b; x)` with its first two `x`-derivatives.
pub fn f11(a: Complex64, b: Complex64, x: Complex64, ctl: &SeriesControl) -> Result<Jet> {
    pfq_jet(&[a], &[b], x, ctl)
}

/// Goursat's function `₂F₂(a1, a2; b1, b2; x)` with its first two
/// `x`-derivatives.
pub fn f22(
    a1: Complex64,
    a2: Complex64,
    b1: Complex64,
    b2: Complex64,
    x: Complex64,
    ctl: &SeriesControl,
) -> Result<Jet> {
    pfq_jet(&[a1, a2], &[b1, b2], x, ctl)
}

/// Generalized Laguerre function, normalized to unit value at the origin:
/// `L(n, a; x) := ₁F₁(−n; a+1; x)`.
///
/// This differs from the classical `L_n^{(a)}` by the binomial factor
/// `C(n+a, n)`; all uses in this crate are up to a constant.
pub fn laguerre(n: Complex64, a: Complex64, x: Complex64, ctl: &SeriesControl) -> Result<Jet> {
    f11(-n, a + 1.0, x, ctl)
}

/// Principal logarithm with argument in `(−π, π]`; a negative real base
/// with a signed-zero imaginary part is placed on the upper edge.
pub fn principal_ln(base: Complex64) -> Complex64 {
    let arg = if base.im == 0.0 && base.re < 0.0 {
        PI
    } else {
        base.arg()
    };
    Complex64::new(base.norm().ln(), arg)
}

/// Principal power `exp(s·Log base)`.
pub fn cpow(base: Complex64, s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() <= 64.0 {
        let n = s.re as i32;
        if base == ZERO {
            return match n {
                0 => Ok(ONE),
                n if n > 0 => Ok(ZERO),
                _ => Err(HeunError::ZeroBase),
            };
        }
        return Ok(base.powi(n));
    }
    if base == ZERO {
        return if s.re > 0.0 {
            Ok(ZERO)
        } else {
            Err(HeunError::ZeroBase)
        };
    }
    Ok((s * principal_ln(base)).exp())
}

/// Jet of `x ↦ (k·x)^s`, computed from a single principal power so the
/// value and its derivatives sit on the same sheet.
pub fn cpow_jet(k: Complex64, x: Complex64, s: Complex64) -> Result<Jet> {
    if s == ZERO {
        return Ok(Jet::constant(ONE));
    }
    if s == ONE {
        return Ok(Jet::new(k * x, k, ZERO));
    }
    let base = k * x;
    let v = cpow(base, s)?;
    if base == ZERO {
        return Err(HeunError::ZeroBase);
    }
    let d1 = s * v / x;
    let d2 = s * (s - 1.0) * v / (x * x);
    Ok(Jet::new(v, d1, d2))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's gamma function for complex argument (Lanczos, with reflection
/// for `Re z < 1/2`). Returns infinity at the poles.
pub fn gamma(z: Complex64) -> Complex64 {
    if nonpositive_integer(z).is_some() {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        return PI / (s * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * cpow(t, z + 0.5).unwrap_or(ZERO) * (-t).exp() * acc
}

/// Upper incomplete gamma function `Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt` on
/// the principal branch.
///
/// Small `|x|` uses `Γ(a) − γ(a, x)` with the lower function summed as
/// `x^a e^{−x} Σ x^k/(a)_{k+1}`; for `Re a ≤ 0` the argument is lifted with
/// `Γ(a, x) = (Γ(a+1, x) − x^a e^{−x})/a`. Large `|x|` uses the Legendre
/// continued fraction evaluated by the modified Lentz method.
pub fn upper_gamma(a: Complex64, x: Complex64) -> Result<Complex64> {
    let positive_integer_a = matches!(near_integer(a), Some(n) if n >= 1);
    if x.re < 0.0 && x.im.abs() <= 1e-14 * x.norm() && !positive_integer_a {
        return Err(HeunError::BranchCut(x));
    }
    if x == ZERO {
        return if a.re > 0.0 {
            Ok(gamma(a))
        } else {
            Err(HeunError::PoleParameter(a))
        };
    }
    if x.norm() >= 3.0 && x.re > -0.5 * x.norm() {
        upper_gamma_cf(a, x)
    } else {
        upper_gamma_series(a, x)
    }
}

fn upper_gamma_series(a: Complex64, x: Complex64) -> Result<Complex64> {
    if a.re <= 0.0 {
        if nonpositive_integer(a).is_some() {
            return Err(HeunError::PoleParameter(a));
        }
        let lifted = upper_gamma_series(a + 1.0, x)?;
        return Ok((lifted - cpow(x, a)? * (-x).exp()) / a);
    }
    let mut sum = CompensatedSum::default();
    let mut term = ONE / a;
    sum.add(term);
    let max_terms = 10_000;
    for k in 1..max_terms {
        term *= x / (a + k as f64);
        sum.add(term);
        if term.norm() <= 1e-17 * sum.total().norm() {
            let lower = cpow(x, a)? * (-x).exp() * sum.total();
            return Ok(gamma(a) - lower);
        }
    }
    Err(HeunError::NoConvergence(max_terms))
}

fn upper_gamma_cf(a: Complex64, x: Complex64) -> Result<Complex64> {
    // Γ(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(x+5-a - ...)))
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = ONE / b;
    let mut h = d;
    let max_terms = 10_000;
    for i in 1..max_terms {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = ONE / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((-x).exp() * cpow(x, a)? * h);
        }
    }
    Err(HeunError::NoConvergence(max_terms))
}
