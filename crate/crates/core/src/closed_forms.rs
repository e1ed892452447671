//! Explicit solutions on the three parameter loci where the derivative
//! equation is solvable by Kummer functions.
//!
//! | case | free     | locus                                   | `u' ∝`            |
//! |------|----------|-----------------------------------------|-------------------|
//! | 1    | `(p, γ)` | `α = 0, δ = −1, σ = 4p + γ − 1`          | `w`               |
//! | 2    | `(p, α)` | `σ = 0, δ = −1, γ = −4p(1+α)`            | `z^{−γ} w`        |
//! | 3    | `(p, α)` | `σ = 4pα, γ = −1, δ = 4p(1+α)`           | `(z−1)^{−δ} w`    |
//!
//! Antiderivatives that would otherwise need a Meijer G function are built
//! by integrating the Kummer series term by term, which yields Goursat
//! `₂F₂` functions. Additive integration constants are solved for from the
//! equation itself: the residual of `u + c` is linear in `c` with slope
//! `g(z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{HeunError, Result};
use crate::kernels::{cpow, cpow_jet, f11, f22, near_integer, upper_gamma, C2Fn, Jet, SeriesControl};
use crate::params::{che_coeffs, derivative_ode_coeffs, CheParams, OdeCoeffs};
use crate::verify::additive_constant;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Closest approach (in radians) of a sample point's branch argument to
/// the cut.
pub const CUT_MARGIN: f64 = 0.25;

/// One explicit solution branch, as an expression tree over `x = z − center`.
#[derive(Debug, Clone, PartialEq)]
pub enum Branch {
    Constant(Complex64),
    /// `coef · e^{rate·x} · (k_pow·x)^power · ₁F₁(a; b; k_arg·x)`.
    Kummer {
        center: Complex64,
        coef: Complex64,
        rate: Complex64,
        k_pow: Complex64,
        power: Complex64,
        a: Complex64,
        b: Complex64,
        k_arg: Complex64,
    },
    /// `coef · (k_pow·x)^power · ₂F₂(a1, a2; b1, b2; k_arg·x)`.
    Goursat {
        center: Complex64,
        coef: Complex64,
        k_pow: Complex64,
        power: Complex64,
        upper: [Complex64; 2],
        lower: [Complex64; 2],
        k_arg: Complex64,
    },
    /// `coef · e^{y} y^{1−a} Γ(a, y)` with `y = k·z`.
    GammaTail {
        coef: Complex64,
        a: Complex64,
        k: Complex64,
    },
    Sum(Vec<Branch>),
    /// `z ↦ f(1 − z)`.
    Reflected(Box<Branch>),
}

fn gamma_tail_jet(a: Complex64, y: Complex64) -> Result<Jet> {
    if y == ZERO {
        return Err(HeunError::ZeroBase);
    }
    let t = y.exp() * cpow(y, 1.0 - a)? * upper_gamma(a, y)?;
    // dT/dy = T·h − 1 with h = 1 + (1−a)/y
    let h = 1.0 + (1.0 - a) / y;
    let d1 = t * h - 1.0;
    let d2 = d1 * h - t * (1.0 - a) / (y * y);
    Ok(Jet::new(t, d1, d2))
}

impl C2Fn for Branch {
    fn eval(&self, z: Complex64) -> Result<Jet> {
        let ctl = SeriesControl::default();
        match self {
            Branch::Constant(c) => Ok(Jet::constant(*c)),
            Branch::Kummer {
                center,
                coef,
                rate,
                k_pow,
                power,
                a,
                b,
                k_arg,
            } => {
                let x = z - center;
                let e = Jet::exp_linear(*rate, x);
                let pw = cpow_jet(*k_pow, x, *power)?;
                let f = f11(*a, *b, k_arg * x, &ctl)?.chain_linear(*k_arg);
                Ok((e * pw * f).scale(*coef))
            }
            Branch::Goursat {
                center,
                coef,
                k_pow,
                power,
                upper,
                lower,
                k_arg,
            } => {
                let x = z - center;
                let pw = cpow_jet(*k_pow, x, *power)?;
                let f = f22(upper[0], upper[1], lower[0], lower[1], k_arg * x, &ctl)?.chain_linear(*k_arg);
                Ok((pw * f).scale(*coef))
            }
            Branch::GammaTail { coef, a, k } => Ok(gamma_tail_jet(*a, k * z)?.chain_linear(*k).scale(*coef)),
            Branch::Sum(parts) => parts
                .iter()
                .try_fold(Jet::constant(ZERO), |acc, b| Ok(acc + b.eval(z)?)),
            Branch::Reflected(inner) => {
                let j = inner.eval(1.0 - z)?;
                Ok(Jet::new(j.value, -j.d1, j.d2))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCase {
    Case1AlphaZero,
    Case2SigmaZero,
    Case3Sigma4pAlpha,
}

impl FamilyCase {
    pub fn name(self) -> &'static str {
        match self {
            FamilyCase::Case1AlphaZero => "case1_alpha_zero",
            FamilyCase::Case2SigmaZero => "case2_sigma_zero",
            FamilyCase::Case3Sigma4pAlpha => "case3_sigma_eq_4p_alpha",
        }
    }
}

/// Two solutions `w` of the reduced Kummer-type equation and two solutions
/// `u` of the confluent Heun equation at the locus.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormFamily {
    pub case: FamilyCase,
    /// `(p, γ)` for case 1, `(p, α)` otherwise.
    pub free_params: (Complex64, Complex64),
    pub locus: CheParams,
    pub w_branches: [Branch; 2],
    pub u_branches: [Branch; 2],
    /// Additive constants fixed while building each `u` branch.
    pub integration_constants: [Option<Complex64>; 2],
    /// `(center, k)` pairs: `k·(z − center)` must stay off the negative
    /// real axis.
    pub cuts: Vec<(Complex64, Complex64)>,
    /// Center of the sampling annulus.
    pub center: Complex64,
    /// Whether the family was obtained by reflecting another one.
    pub reflected: bool,
}

impl ClosedFormFamily {
    /// The prefactor `φ` in `u' ∝ φ·w`. A reflected family uses the
    /// principal sheet of `(1 − z)` instead of `(z − 1)`.
    pub fn prefactor(&self, z: Complex64) -> Result<Jet> {
        match self.case {
            FamilyCase::Case1AlphaZero => Ok(Jet::constant(ONE)),
            FamilyCase::Case2SigmaZero => cpow_jet(ONE, z, -self.locus.gamma()),
            FamilyCase::Case3Sigma4pAlpha if self.reflected => cpow_jet(-ONE, z - 1.0, -self.locus.delta()),
            FamilyCase::Case3Sigma4pAlpha => cpow_jet(ONE, z - 1.0, -self.locus.delta()),
        }
    }

    /// Coefficients of the second-order equation solved by the `w` branches.
    pub fn w_equation(&self, z: Complex64) -> Result<OdeCoeffs> {
        w_equation(self.case, &self.locus, z)
    }

    pub fn in_safe_domain(&self, z: Complex64) -> bool {
        if z.norm() < 0.05 || (z - 1.0).norm() < 0.05 {
            return false;
        }
        self.cuts
            .iter()
            .all(|(c, k)| (k * (z - c)).arg().abs() <= PI - CUT_MARGIN)
    }

    /// `count` deterministic points in the annulus `0.1 ≤ |z − center| ≤ 0.4`
    /// that keep clear of every branch cut. With `upper_only` the points are
    /// further restricted to `Im z > 0`.
    pub fn sample_points(&self, count: usize, upper_only: bool) -> Vec<Complex64> {
        let golden = PI * (3.0 - 5f64.sqrt());
        let mut out = Vec::with_capacity(count);
        let mut k = 0usize;
        while out.len() < count && k < 100 * count + 100 {
            let t = (k as f64 + 0.5) / (count as f64 + 1.0);
            let r = 0.1 + 0.3 * t.fract();
            let z = self.center + Complex64::from_polar(r, 0.3 + golden * k as f64);
            k += 1;
            if upper_only && z.im <= 0.02 {
                continue;
            }
            if self.in_safe_domain(z) {
                out.push(z);
            }
        }
        out
    }

    /// Fits `u_i'(z)/φ(z) = A·w1(z) + B·w2(z)` at the first two points and
    /// reports the worst relative mismatch over the remaining ones.
    pub fn projection_check(&self, u_index: usize, zs: &[Complex64]) -> Result<([Complex64; 2], f64)> {
        if zs.len() < 3 {
            return Err(HeunError::InvalidArgument(
                "projection needs at least three points".into(),
            ));
        }
        let row = |z: Complex64| -> Result<(Complex64, Complex64, Complex64)> {
            let lhs = self.u_branches[u_index].eval(z)?.d1 / self.prefactor(z)?.value;
            Ok((
                lhs,
                self.w_branches[0].eval(z)?.value,
                self.w_branches[1].eval(z)?.value,
            ))
        };
        let (l0, a0, b0) = row(zs[0])?;
        let (l1, a1, b1) = row(zs[1])?;
        let det = a0 * b1 - a1 * b0;
        if det.norm() <= 1e-300 {
            return Err(HeunError::InvalidArgument(
                "w branches are dependent at the fit points".into(),
            ));
        }
        let ca = (l0 * b1 - l1 * b0) / det;
        let cb = (a0 * l1 - a1 * l0) / det;
        let mut worst = 0.0f64;
        for &z in &zs[2..] {
            let (l, a, b) = row(z)?;
            let scale = l.norm().max((ca * a).norm()).max((cb * b).norm());
            worst = worst.max((l - ca * a - cb * b).norm() / scale.max(f64::MIN_POSITIVE));
        }
        Ok(([ca, cb], worst))
    }
}

/// Coefficients of the Kummer-type equation for `w` at a locus:
///
/// * case 1: `a1 = 4p + (γ+1)/z`, `a0 = 8p/z`
/// * case 2: `a1 = 4p + 4p(1+α)/z`, `a0 = 4p(1+4p)(1+α)/z`
/// * case 3: `a1 = 4p − 4p(1+α)/(z−1)`, `a0 = 4p(1−4p)(1+α)/(z−1)`
pub fn w_equation(case: FamilyCase, locus: &CheParams, z: Complex64) -> Result<OdeCoeffs> {
    let (p, g, a) = (locus.p(), locus.gamma(), locus.alpha());
    let (a1, a0) = match case {
        FamilyCase::Case1AlphaZero => {
            if z == ZERO {
                return Err(HeunError::SingularPoint(z));
            }
            (4.0 * p + (g + 1.0) / z, 8.0 * p / z)
        }
        FamilyCase::Case2SigmaZero => {
            if z == ZERO {
                return Err(HeunError::SingularPoint(z));
            }
            (
                4.0 * p + 4.0 * p * (1.0 + a) / z,
                4.0 * p * (1.0 + 4.0 * p) * (1.0 + a) / z,
            )
        }
        FamilyCase::Case3Sigma4pAlpha => {
            let x = z - 1.0;
            if x == ZERO {
                return Err(HeunError::SingularPoint(z));
            }
            (
                4.0 * p - 4.0 * p * (1.0 + a) / x,
                4.0 * p * (1.0 - 4.0 * p) * (1.0 + a) / x,
            )
        }
    };
    Ok(OdeCoeffs { a1, a0 })
}

/// The reflection `z → 1 − z` acting on parameters:
/// `(p, γ, δ, α, σ) ↦ (−p, δ, γ, α, σ − 4pα)`.
///
/// If `u(z)` solves the equation with `params`, then `u(1 − z)` solves it
/// with the mapped parameters. The map is an involution.
pub fn symmetry_map(params: &CheParams) -> CheParams {
    CheParams::new(
        -params.p(),
        params.delta(),
        params.gamma(),
        params.alpha(),
        params.sigma() - params.four_p_alpha(),
    )
    .expect("negation preserves p != 0 and finiteness")
}

/// Largest relative mismatch of the identities `f̃(1−z) = −f(z)`,
/// `g̃(1−z) = g(z)` between an equation and its reflection. With
/// `derivative` set, the derivative-equation coefficients are compared
/// instead (same sign pattern).
pub fn symmetry_coeff_deviation(params: &CheParams, zs: &[Complex64], derivative: bool) -> Result<f64> {
    let mapped = symmetry_map(params);
    let coeffs = |q: &CheParams, z: Complex64| {
        if derivative {
            derivative_ode_coeffs(q, z)
        } else {
            che_coeffs(q, z)
        }
    };
    let mut worst = 0.0f64;
    for &z in zs {
        let a = coeffs(params, z)?;
        let b = coeffs(&mapped, 1.0 - z)?;
        let d1 = (a.a1 + b.a1).norm() / a.a1.norm().max(b.a1.norm()).max(f64::MIN_POSITIVE);
        let d0 = (a.a0 - b.a0).norm() / a.a0.norm().max(b.a0.norm()).max(f64::MIN_POSITIVE);
        worst = worst.max(d1).max(d0);
    }
    Ok(worst)
}

fn with_constant(params: &CheParams, branch: Branch, z_star: Complex64) -> Result<(Branch, Complex64)> {
    let c = additive_constant(params, &branch, z_star)?;
    Ok((Branch::Sum(vec![Branch::Constant(c), branch]), c))
}

fn first_safe(family: &ClosedFormFamily) -> Result<Complex64> {
    family
        .sample_points(1, false)
        .first()
        .copied()
        .ok_or_else(|| HeunError::InvalidArgument("no admissible sample point".into()))
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if alpha.norm() <= 1e-12 || (alpha + 1.0).norm() <= 1e-12 {
        return Err(HeunError::DegenerateAlpha(alpha));
    }
    Ok(())
}

/// Case 1, `α = 0, δ = −1, σ = 4p + γ − 1`:
///
/// * `w1 = (4pz + γ − 1) e^{−4pz} (−4pz)^{−γ}`
/// * `w2 = e^{−4pz} ₁F₁(γ−1; γ+1; 4pz)`
/// * `u1 = e^{−4pz} (−4pz)^{1−γ}`
/// * `u2 = C − (σ/4p)·e^{y} y^{1−γ} Γ(γ, y)` with `y = −4pz`
pub fn case1_family(p: Complex64, gamma: Complex64) -> Result<ClosedFormFamily> {
    match near_integer(gamma) {
        Some(0) | Some(1) => return Err(HeunError::DegenerateGamma(gamma)),
        Some(_) => return Err(HeunError::PoleParameter(gamma)),
        None => {}
    }
    let sigma = 4.0 * p + gamma - 1.0;
    let locus = CheParams::new(p, gamma, -ONE, ZERO, sigma)?;
    let k = -4.0 * p;
    let w1 = Branch::Kummer {
        center: ZERO,
        coef: gamma - 1.0,
        rate: k,
        k_pow: k,
        power: -gamma,
        a: -ONE,
        b: 1.0 - gamma,
        k_arg: 4.0 * p,
    };
    let w2 = Branch::Kummer {
        center: ZERO,
        coef: ONE,
        rate: k,
        k_pow: ONE,
        power: ZERO,
        a: gamma - 1.0,
        b: gamma + 1.0,
        k_arg: 4.0 * p,
    };
    let u1 = Branch::Kummer {
        center: ZERO,
        coef: ONE,
        rate: k,
        k_pow: k,
        power: 1.0 - gamma,
        a: ZERO,
        b: ONE,
        k_arg: ZERO,
    };
    let mut family = ClosedFormFamily {
        case: FamilyCase::Case1AlphaZero,
        free_params: (p, gamma),
        locus,
        w_branches: [w1, w2],
        u_branches: [u1, Branch::Constant(ONE)],
        integration_constants: [None, None],
        cuts: vec![(ZERO, k)],
        center: ZERO,
        reflected: false,
    };
    if sigma.norm() > 1e-12 {
        let tail = Branch::GammaTail {
            coef: -sigma / (4.0 * p),
            a: gamma,
            k,
        };
        let (u2, c) = with_constant(&locus, tail, first_safe(&family)?)?;
        family.u_branches[1] = u2;
        family.integration_constants[1] = Some(c);
    } else {
        // g vanishes identically and constants solve the equation
        family.integration_constants[1] = Some(ONE);
    }
    Ok(family)
}

/// Case 2, `σ = 0, δ = −1, γ = −4p(1+α)`:
///
/// * `w1 = e^{−4pz} ₁F₁(−1−α; −γ; 4pz)`
/// * `w2 = e^{−4pz} z^{1+γ} ₁F₁(γ−α; 2+γ; 4pz)`
/// * `u1 = C + z^{1−γ}/(1−γ) · ₂F₂(1−γ, (1+4p)(1+α); 2−γ, −γ; −4pz)`
/// * `u2 = ₁F₁(α; γ; −4pz) − α/(1+α) · z ₁F₁(1+α; 1+γ; −4pz)`
///
/// `u1' = z^{−γ} w1` exactly; `u2` is the confluent Heun function of the
/// locus.
pub fn case2_family(p: Complex64, alpha: Complex64) -> Result<ClosedFormFamily> {
    check_alpha(alpha)?;
    let gamma = -4.0 * p * (1.0 + alpha);
    if near_integer(gamma).is_some() {
        return Err(HeunError::PoleParameter(gamma));
    }
    let locus = CheParams::new(p, gamma, -ONE, alpha, ZERO)?;
    let k = -4.0 * p;
    let w1 = Branch::Kummer {
        center: ZERO,
        coef: ONE,
        rate: k,
        k_pow: ONE,
        power: ZERO,
        a: -1.0 - alpha,
        b: -gamma,
        k_arg: 4.0 * p,
    };
    let w2 = Branch::Kummer {
        center: ZERO,
        coef: ONE,
        rate: k,
        k_pow: ONE,
        power: 1.0 + gamma,
        a: gamma - alpha,
        b: 2.0 + gamma,
        k_arg: 4.0 * p,
    };
    let u1_raw = Branch::Goursat {
        center: ZERO,
        coef: 1.0 / (1.0 - gamma),
        k_pow: ONE,
        power: 1.0 - gamma,
        upper: [1.0 - gamma, (1.0 + 4.0 * p) * (1.0 + alpha)],
        lower: [2.0 - gamma, -gamma],
        k_arg: k,
    };
    let u2 = Branch::Sum(vec![
        Branch::Kummer {
            center: ZERO,
            coef: ONE,
            rate: ZERO,
            k_pow: ONE,
            power: ZERO,
            a: alpha,
            b: gamma,
            k_arg: k,
        },
        Branch::Kummer {
            center: ZERO,
            coef: -alpha / (1.0 + alpha),
            rate: ZERO,
            k_pow: ONE,
            power: ONE,
            a: 1.0 + alpha,
            b: 1.0 + gamma,
            k_arg: k,
        },
    ]);
    let mut family = ClosedFormFamily {
        case: FamilyCase::Case2SigmaZero,
        free_params: (p, alpha),
        locus,
        w_branches: [w1, w2],
        u_branches: [u1_raw.clone(), u2],
        integration_constants: [None, None],
        cuts: vec![(ZERO, ONE)],
        center: ZERO,
        reflected: false,
    };
    let (u1, c) = with_constant(&locus, u1_raw, first_safe(&family)?)?;
    family.u_branches[0] = u1;
    family.integration_constants[0] = Some(c);
    Ok(family)
}

/// Case 3, `σ = 4pα, γ = −1, δ = 4p(1+α)`, in `x = z − 1`:
///
/// * `w1 = e^{−4px} ₁F₁(−1−α; −δ; 4px)`
/// * `w2 = e^{−4px} x^{1+δ} ₁F₁(δ−α; 2+δ; 4px)`
/// * `u1 = C + x^{1−δ}/(1−δ) · ₂F₂(1−δ, (1−4p)(1+α); 2−δ, −δ; −4px)`
/// * `u2 = ₁F₁(α; δ; −4px) + α/(1+α) · x ₁F₁(1+α; 1+δ; −4px)`
pub fn case3_family(p: Complex64, alpha: Complex64) -> Result<ClosedFormFamily> {
    check_alpha(alpha)?;
    let delta = 4.0 * p * (1.0 + alpha);
    if near_integer(delta).is_some() {
        return Err(HeunError::PoleParameter(delta));
    }
    let locus = CheParams::new(p, -ONE, delta, alpha, 4.0 * p * alpha)?;
    let k = -4.0 * p;
    let w1 = Branch::Kummer {
        center: ONE,
        coef: ONE,
        rate: k,
        k_pow: ONE,
        power: ZERO,
        a: -1.0 - alpha,
        b: -delta,
        k_arg: 4.0 * p,
    };
    let w2 = Branch::Kummer {
        center: ONE,
        coef: ONE,
        rate: k,
        k_pow: ONE,
        power: 1.0 + delta,
        a: delta - alpha,
        b: 2.0 + delta,
        k_arg: 4.0 * p,
    };
    let u1_raw = Branch::Goursat {
        center: ONE,
        coef: 1.0 / (1.0 - delta),
        k_pow: ONE,
        power: 1.0 - delta,
        upper: [1.0 - delta, (1.0 - 4.0 * p) * (1.0 + alpha)],
        lower: [2.0 - delta, -delta],
        k_arg: k,
    };
    let u2 = Branch::Sum(vec![
        Branch::Kummer {
            center: ONE,
            coef: ONE,
            rate: ZERO,
            k_pow: ONE,
            power: ZERO,
            a: alpha,
            b: delta,
            k_arg: k,
        },
        Branch::Kummer {
            center: ONE,
            coef: alpha / (1.0 + alpha),
            rate: ZERO,
            k_pow: ONE,
            power: ONE,
            a: 1.0 + alpha,
            b: 1.0 + delta,
            k_arg: k,
        },
    ]);
    let mut family = ClosedFormFamily {
        case: FamilyCase::Case3Sigma4pAlpha,
        free_params: (p, alpha),
        locus,
        w_branches: [w1, w2],
        u_branches: [u1_raw.clone(), u2],
        integration_constants: [None, None],
        cuts: vec![(ONE, ONE)],
        center: ONE,
        reflected: false,
    };
    let (u1, c) = with_constant(&locus, u1_raw, first_safe(&family)?)?;
    family.u_branches[0] = u1;
    family.integration_constants[0] = Some(c);
    Ok(family)
}

/// Case 3 obtained from case 2 at `(−p, α)` by `z → 1 − z`. Every branch
/// is the reflected case-2 branch; `w` branches pick up the factor
/// `(1 − z)^{…}` on the principal sheet of `1 − z`, so they agree with the
/// direct construction up to constants that may differ between the two
/// half-planes.
pub fn case3_via_symmetry(p: Complex64, alpha: Complex64) -> Result<ClosedFormFamily> {
    let base = case2_family(-p, alpha)?;
    let reflect = |b: &Branch| Branch::Reflected(Box::new(b.clone()));
    Ok(ClosedFormFamily {
        case: FamilyCase::Case3Sigma4pAlpha,
        free_params: (p, alpha),
        locus: symmetry_map(&base.locus),
        w_branches: [reflect(&base.w_branches[0]), reflect(&base.w_branches[1])],
        u_branches: [reflect(&base.u_branches[0]), reflect(&base.u_branches[1])],
        integration_constants: base.integration_constants,
        cuts: vec![(ONE, -ONE)],
        center: ONE,
        reflected: true,
    })
}

/// `max |r(z) − mean| / |mean|` of the pointwise ratio `f(z)/g(z)` of two
/// branch values, together with the mean ratio.
pub fn ratio_constancy<F: C2Fn + ?Sized, G: C2Fn + ?Sized>(
    f: &F,
    g: &G,
    zs: &[Complex64],
) -> Result<(Complex64, f64)> {
    let mut ratios = Vec::with_capacity(zs.len());
    for &z in zs {
        ratios.push(f.eval(z)?.value / g.eval(z)?.value);
    }
    if ratios.is_empty() {
        return Err(HeunError::InvalidArgument("no sample points".into()));
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let dev =
        ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm().max(f64::MIN_POSITIVE);
    Ok((mean, dev))
}
