//! Expansion of the derivative of a `σ = 0` solution in Kummer functions,
//! its term-wise antiderivative in Goursat `₂F₂` functions, and the
//! parameter values at which the expansion terminates.
//!
//! For `σ = 0` put `u' = z^{−γ} w`. Then `w` solves
//!
//! ```text
//! w'' + (4p − γ/z + (δ+1)/(z−1)) w' + (4p(1+α−γ)z − γδ + 4pγ)/(z(z−1)) w = 0
//! ```
//!
//! and is sought as `w = Σ a_n ₁F₁(α₀+n; γ₀+n; s₀z)` with
//! `α₀ = 1+α−γ`, `γ₀ = 1+δ−γ`, `s₀ = −4p`. Writing `α_n = α₀+n`,
//! `γ_n = γ₀+n`, the coefficients obey
//!
//! ```text
//! R_n a_n + Q_{n−1} a_{n−1} + P_{n−2} a_{n−2} = 0
//! R_n = (1+δ−γ−γ_n)(γ_n−1)
//! Q_n = 4p(γ+α−δ+γ_n) − γδ − (1+δ−γ−γ_n)(γ_n−1)
//! P_n = −4p(γ+γ_n) α_n / γ_n
//! ```
//!
//! with `a_0 = 1`. Integrating term by term,
//! `u = C0 + z^{1−γ} Σ a_n ₂F₂(1−γ, α_n; 2−γ, γ_n; s₀z)`, normalized so that
//! `d(u − C0)/dz = (1−γ) z^{−γ} w`.
//!
//! `P_{N−1}` vanishes when `δ = −N` or `α − γ = −N`. If in addition
//! `a_N = 0`, which is a degree-`N` polynomial condition on `p`, every
//! later coefficient vanishes and the series terminates.
//!
//! Without termination the coefficients decay only like `n^{−2}` and the
//! partial sums do not converge to a solution; see the crate README.

use num_complex::Complex64;

use crate::error::{HeunError, Result};
use crate::kernels::{cpow_jet, f11, f22, near_integer, nonpositive_integer, C2Fn, Jet, SeriesControl};
use crate::params::{CheParams, OdeCoeffs};
use crate::poly::Poly;
use crate::relations::DEFAULT_TOL_CLASS;
use crate::verify::{additive_constant, che_residual};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance of the `R_n = 0` and `γ_n = 0` tests.
const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GoursatExpansion {
    params: CheParams,
    alpha0: Complex64,
    gamma0: Complex64,
    s0: Complex64,
    coeffs: Vec<Complex64>,
    c0: Option<Complex64>,
}

/// `R_n`, and `Q_n`, `P_n` split into their `p`-free part and `p`-slope.
/// `p1` is `None` when `γ_n = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct RecurrenceParts {
    r: Complex64,
    q0: Complex64,
    q1: Complex64,
    p1: Option<Complex64>,
}

impl RecurrenceParts {
    fn p1(&self, n: usize) -> Result<Complex64> {
        self.p1.ok_or(HeunError::ZeroGammaN(n))
    }
}

fn recurrence_parts(gamma: Complex64, delta: Complex64, alpha: Complex64, n: usize) -> RecurrenceParts {
    let nf = n as f64;
    let gamma_n = 1.0 + delta - gamma + nf;
    let alpha_n = 1.0 + alpha - gamma + nf;
    RecurrenceParts {
        r: (1.0 + delta - gamma - gamma_n) * (gamma_n - 1.0),
        q0: -gamma * delta - (1.0 + delta - gamma - gamma_n) * (gamma_n - 1.0),
        q1: 4.0 * (gamma + alpha - delta + gamma_n),
        p1: (gamma_n.norm() > DEGENERACY_TOL).then(|| -4.0 * (gamma + gamma_n) * alpha_n / gamma_n),
    }
}

fn r_n(gamma: Complex64, delta: Complex64, n: usize) -> Complex64 {
    let nf = n as f64;
    -nf * (delta - gamma + nf)
}

fn check_rn(gamma: Complex64, delta: Complex64, max_order: usize) -> Result<()> {
    for n in 1..=max_order {
        if r_n(gamma, delta, n).norm() <= DEGENERACY_TOL * (n as f64) {
            return Err(HeunError::DegenerateRn(n));
        }
    }
    Ok(())
}

/// Sets up the expansion for a `σ = 0` parameter set. `max_order` is the
/// largest `N` that will be requested; `R_n` must be nonzero up to it.
pub fn init_expansion(params: &CheParams, max_order: usize) -> Result<GoursatExpansion> {
    if params.sigma().norm() > DEFAULT_TOL_CLASS {
        return Err(HeunError::NotSigmaZero);
    }
    let (g, d, a) = (params.gamma(), params.delta(), params.alpha());
    check_rn(g, d, max_order)?;
    Ok(GoursatExpansion {
        params: *params,
        alpha0: 1.0 + a - g,
        gamma0: 1.0 + d - g,
        s0: -4.0 * params.p(),
        coeffs: Vec::new(),
        c0: None,
    })
}

impl GoursatExpansion {
    pub fn params(&self) -> &CheParams {
        &self.params
    }
    pub fn alpha0(&self) -> Complex64 {
        self.alpha0
    }
    pub fn gamma0(&self) -> Complex64 {
        self.gamma0
    }
    pub fn s0(&self) -> Complex64 {
        self.s0
    }
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }
    pub fn c0(&self) -> Option<Complex64> {
        self.c0
    }

    fn parts(&self, n: usize) -> RecurrenceParts {
        recurrence_parts(self.params.gamma(), self.params.delta(), self.params.alpha(), n)
    }

    fn r(&self, n: usize) -> Complex64 {
        self.parts(n).r
    }

    fn q(&self, n: usize) -> Complex64 {
        let k = self.parts(n);
        k.q0 + self.params.p() * k.q1
    }

    fn p(&self, n: usize) -> Result<Complex64> {
        Ok(self.params.p() * self.parts(n).p1(n)?)
    }

    /// `P_{m−2}·a_{m−2}`, zero for `m < 2` and skipped when `a_{m−2} = 0`.
    fn p_term(&self, m: usize, a: &[Complex64]) -> Result<Complex64> {
        if m < 2 || a[m - 2] == ZERO {
            return Ok(ZERO);
        }
        Ok(self.p(m - 2)? * a[m - 2])
    }

    /// `(R_n, Q_n, P_n)` at this expansion's parameters.
    pub fn rqp(&self, n: usize) -> Result<(Complex64, Complex64, Complex64)> {
        Ok((self.r(n), self.q(n), self.p(n)?))
    }

    /// Fills `a_0..a_N`.
    pub fn compute_coefficients(mut self, n_max: usize) -> Result<Self> {
        let (g, d) = (self.params.gamma(), self.params.delta());
        check_rn(g, d, n_max)?;
        let mut a = Vec::with_capacity(n_max + 1);
        a.push(ONE);
        for n in 1..=n_max {
            let t = self.q(n - 1) * a[n - 1] + self.p_term(n, &a)?;
            a.push(-t / self.r(n));
        }
        self.coeffs = a;
        Ok(self)
    }

    /// Keeps only `a_0..a_{len−1}`.
    pub fn truncated(&self, len: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(len);
        out
    }

    /// `|R_n a_n + Q_{n−1} a_{n−1} + P_{n−2} a_{n−2}|` relative to its
    /// largest term, for `n = 1..=N`.
    pub fn recurrence_residuals(&self) -> Result<Vec<f64>> {
        let a = &self.coeffs;
        let mut out = Vec::new();
        for n in 1..a.len() {
            let terms = [self.r(n) * a[n], self.q(n - 1) * a[n - 1], self.p_term(n, a)?];
            let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
            let sum: Complex64 = terms.iter().sum();
            out.push(if scale > 0.0 { sum.norm() / scale } else { 0.0 });
        }
        Ok(out)
    }

    /// Coefficients of the equation for `w`.
    pub fn w_equation(&self, z: Complex64) -> Result<OdeCoeffs> {
        if z == ZERO || z == ONE {
            return Err(HeunError::SingularPoint(z));
        }
        let (p, g, d, a) = (
            self.params.p(),
            self.params.gamma(),
            self.params.delta(),
            self.params.alpha(),
        );
        Ok(OdeCoeffs {
            a1: 4.0 * p - g / z + (d + 1.0) / (z - 1.0),
            a0: (4.0 * p * (1.0 + a - g) * z - g * d + 4.0 * p * g) / (z * (z - 1.0)),
        })
    }

    fn require_coeffs(&self) -> Result<()> {
        if self.coeffs.is_empty() {
            return Err(HeunError::InvalidArgument(
                "coefficients have not been computed".into(),
            ));
        }
        Ok(())
    }

    /// Partial sum `Σ a_n ₁F₁(α_n; γ_n; s₀z)`. Terms with `a_n = 0`
    /// exactly are skipped.
    pub fn eval_w(&self, z: Complex64) -> Result<Jet> {
        self.require_coeffs()?;
        let ctl = SeriesControl::default();
        let mut acc = Jet::constant(ZERO);
        for (n, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let nf = n as f64;
            let f = f11(self.alpha0 + nf, self.gamma0 + nf, self.s0 * z, &ctl)?.chain_linear(self.s0);
            acc = acc + f.scale(a);
        }
        Ok(acc)
    }

    /// `z^{1−γ} Σ a_n ₂F₂(1−γ, α_n; 2−γ, γ_n; s₀z)`, i.e. `u − C0`.
    pub fn eval_integral(&self, z: Complex64) -> Result<Jet> {
        self.require_coeffs()?;
        let g = self.params.gamma();
        if near_integer(g) == Some(1) {
            return Err(HeunError::DegenerateGamma(g));
        }
        if nonpositive_integer(2.0 - g).is_some() {
            return Err(HeunError::PoleParameter(2.0 - g));
        }
        let ctl = SeriesControl::default();
        let mut acc = Jet::constant(ZERO);
        for (n, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let nf = n as f64;
            let f = f22(
                1.0 - g,
                self.alpha0 + nf,
                2.0 - g,
                self.gamma0 + nf,
                self.s0 * z,
                &ctl,
            )?
            .chain_linear(self.s0);
            acc = acc + f.scale(a);
        }
        Ok(cpow_jet(ONE, z, 1.0 - g)? * acc)
    }

    /// `u = C0 + z^{1−γ} Σ …`.
    pub fn eval_u(&self, z: Complex64) -> Result<Jet> {
        let g = self.params.gamma();
        if near_integer(g) == Some(1) {
            return Err(HeunError::DegenerateGamma(g));
        }
        let c0 = self.c0.ok_or(HeunError::C0Undetermined)?;
        Ok(self.eval_integral(z)? + Jet::constant(c0))
    }

    /// The `C0` that makes `u` satisfy the confluent Heun equation at
    /// `z_star`. On this locus `g = 4pα/(z−1)`, so `α = 0` leaves `C0`
    /// unconstrained.
    pub fn determine_c0(&self, z_star: Complex64) -> Result<Complex64> {
        if self.params.alpha().norm() <= DEFAULT_TOL_CLASS {
            return Err(HeunError::GZero);
        }
        let integral = |z: Complex64| self.eval_integral(z);
        additive_constant(&self.params, &integral, z_star)
    }

    pub fn with_c0(mut self, c0: Complex64) -> Self {
        self.c0 = Some(c0);
        self
    }
}

impl C2Fn for GoursatExpansion {
    /// Evaluates `u`.
    fn eval(&self, z: Complex64) -> Result<Jet> {
        self.eval_u(z)
    }
}

/// The two ways a `P_{N−1}` factor can vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationBranch {
    /// `δ = −N`; the free parameter is `α`.
    DeltaEqMinusN,
    /// `α = γ − N`; the free parameter is `δ`.
    AlphaMinusGammaEqMinusN,
}

impl TerminationBranch {
    pub fn name(self) -> &'static str {
        match self {
            TerminationBranch::DeltaEqMinusN => "delta_eq_minus_n",
            TerminationBranch::AlphaMinusGammaEqMinusN => "alpha_minus_gamma_eq_minus_n",
        }
    }

    /// `(δ, α)` after applying the constraint.
    pub fn apply(self, n: usize, gamma: Complex64, free: Complex64) -> (Complex64, Complex64) {
        let nf = n as f64;
        match self {
            TerminationBranch::DeltaEqMinusN => (Complex64::new(-nf, 0.0), free),
            TerminationBranch::AlphaMinusGammaEqMinusN => (free, gamma - nf),
        }
    }
}

/// `a_N` as a polynomial in `p`, from the recurrence run on polynomial
/// coefficients. `R_n` does not depend on `p` and is divided out at each
/// step, so `a_n` has degree exactly `n` in generic position.
pub fn termination_polynomial(
    n: usize,
    branch: TerminationBranch,
    gamma: Complex64,
    free: Complex64,
) -> Result<Poly> {
    if n == 0 {
        return Err(HeunError::InvalidArgument("N must be at least 1".into()));
    }
    let (delta, alpha) = branch.apply(n, gamma, free);
    check_rn(gamma, delta, n)?;
    let mut a: Vec<Poly> = vec![Poly::constant(ONE)];
    for m in 1..=n {
        let km = recurrence_parts(gamma, delta, alpha, m);
        let k1 = recurrence_parts(gamma, delta, alpha, m - 1);
        let q = Poly::new(vec![k1.q0, k1.q1]);
        let mut t = q.mul(&a[m - 1]);
        if m >= 2 {
            let k2 = recurrence_parts(gamma, delta, alpha, m - 2);
            let pp = Poly::new(vec![ZERO, k2.p1(m - 2)?]);
            t = t.add(&pp.mul(&a[m - 2]));
        }
        a.push(t.scale(-1.0 / km.r));
    }
    Ok(a.pop().expect("nonempty"))
}

/// All roots of a termination polynomial, with multiplicity.
pub fn find_termination_p(poly: &Poly) -> Result<Vec<Complex64>> {
    if poly.degree() == 0 {
        return Err(HeunError::DegeneratePolynomial);
    }
    poly.roots()
}

/// Validation data for one termination root.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminationRoot {
    pub p: Complex64,
    /// `|a_N|, |a_{N+1}|, |a_{N+2}|` relative to `max_{k<N} |a_k|`.
    pub tail: [f64; 3],
    /// Residual of the truncated `u` (with `C0 = 0`) on the sample points,
    /// or the reason it could not be evaluated.
    pub residual: std::result::Result<f64, HeunError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TerminationCase {
    pub n: usize,
    pub branch: TerminationBranch,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub alpha: Complex64,
    pub poly: Poly,
    pub p_roots: Vec<Complex64>,
    pub roots: Vec<TerminationRoot>,
}

/// Relative magnitudes of `a_N, a_{N+1}, a_{N+2}` at the given `p`.
///
/// Past `N` a vanishing `R_m` is tolerated when its numerator vanishes too,
/// in which case `a_m` is taken as zero.
pub fn termination_tail(params: &CheParams, n: usize) -> Result<[f64; 3]> {
    let exp = init_expansion(params, n)?.compute_coefficients(n)?;
    let mut a = exp.coeffs().to_vec();
    let scale = a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    for m in n + 1..=n + 2 {
        let r = exp.r(m);
        let num = exp.q(m - 1) * a[m - 1] + exp.p_term(m, &a)?;
        if r.norm() <= DEGENERACY_TOL * m as f64 {
            let rel = num.norm() / scale.max(f64::MIN_POSITIVE);
            if rel > 1e-8 {
                return Err(HeunError::DegenerateRn(m));
            }
            a.push(ZERO);
        } else {
            a.push(-num / r);
        }
    }
    let rel = |k: usize| a[k].norm() / scale.max(f64::MIN_POSITIVE);
    Ok([rel(n), rel(n + 1), rel(n + 2)])
}

/// Sample points for residual checks of terminated solutions: an annulus
/// `0.1 ≤ |z| ≤ 0.4` off the negative real axis.
pub fn residual_points(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            let t = (k as f64 + 0.5) / count as f64;
            Complex64::from_polar(0.1 + 0.3 * t, -2.6 + 5.2 * t)
        })
        .collect()
}

/// Residual of the terminated solution `z^{1−γ} Σ_{n<N} a_n ₂F₂(…)` with
/// `C0 = 0`.
pub fn terminated_residual(params: &CheParams, n: usize, zs: &[Complex64]) -> Result<f64> {
    let exp = init_expansion(params, n.saturating_sub(1))?
        .compute_coefficients(n - 1)?
        .with_c0(ZERO);
    // evaluate once up front so degenerate γ is reported as such
    exp.eval_u(zs.first().copied().unwrap_or(Complex64::new(0.2, 0.1)))?;
    Ok(che_residual(params, &exp, zs)?.max_residual)
}

/// Builds the termination polynomial, finds its roots and validates each.
pub fn termination_case(
    n: usize,
    branch: TerminationBranch,
    gamma: Complex64,
    free: Complex64,
) -> Result<TerminationCase> {
    let poly = termination_polynomial(n, branch, gamma, free)?;
    let p_roots = find_termination_p(&poly)?;
    let (delta, alpha) = branch.apply(n, gamma, free);
    let zs = residual_points(10);
    let mut roots = Vec::with_capacity(p_roots.len());
    for &p in &p_roots {
        let params = CheParams::new(p, gamma, delta, alpha, ZERO)?;
        roots.push(TerminationRoot {
            p,
            tail: termination_tail(&params, n)?,
            residual: terminated_residual(&params, n, &zs),
        });
    }
    Ok(TerminationCase {
        n,
        branch,
        gamma,
        delta,
        alpha,
        poly,
        p_roots,
        roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::generic_residual;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn initialization_example() {
        let p = CheParams::real(0.25, 1.0, 1.0, 1.0, 0.0).unwrap();
        let e = init_expansion(&p, 10).unwrap();
        assert_eq!(
            (e.gamma0(), e.alpha0(), e.s0()),
            (c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0))
        );
        assert_eq!(e.r(0), c(0.0, 0.0));
        assert_eq!(e.r(1), c(-1.0, 0.0));
        let bad = CheParams::real(0.25, 3.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(init_expansion(&bad, 2), Err(HeunError::DegenerateRn(2)));
        let ns = CheParams::real(0.25, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert_eq!(init_expansion(&ns, 2), Err(HeunError::NotSigmaZero));
        let a0 = CheParams::real(0.25, 2.0, 1.5, 1.0, 0.0).unwrap();
        assert_eq!(init_expansion(&a0, 0).unwrap().rqp(0).unwrap().2, c(0.0, 0.0));
    }

    #[test]
    fn simplified_forms_agree() {
        let q = CheParams::new(c(0.3, 0.1), c(0.7, 0.2), c(-0.4, 0.5), c(0.8, -0.3), c(0.0, 0.0)).unwrap();
        let e = init_expansion(&q, 20).unwrap();
        let (p, g, d, a) = (q.p(), q.gamma(), q.delta(), q.alpha());
        for n in 0..20 {
            let nf = n as f64;
            let (r, qq, pp) = e.rqp(n).unwrap();
            assert!((r + nf * (d - g + nf)).norm() < 1e-12);
            let qs = 4.0 * p * (a + 1.0 + nf) - g * d + nf * (d - g + nf);
            assert!((qq - qs).norm() < 1e-12 * qs.norm().max(1.0));
            let ps = -4.0 * p * (1.0 + d + nf) * (1.0 + a - g + nf) / (1.0 + d - g + nf);
            assert!((pp - ps).norm() < 1e-12 * ps.norm().max(1.0));
        }
        let e = e.compute_coefficients(20).unwrap();
        assert!((e.coeffs()[1] + e.q(0) / e.r(1)).norm() < 1e-15);
        assert!(e.recurrence_residuals().unwrap().iter().all(|&r| r <= 1e-12));
    }

    #[test]
    fn derivative_linkage() {
        let q = CheParams::new(c(0.3, 0.1), c(0.7, 0.2), c(-0.4, 0.5), c(0.8, -0.3), c(0.0, 0.0)).unwrap();
        let e = init_expansion(&q, 8).unwrap().compute_coefficients(8).unwrap();
        let g = q.gamma();
        for z in residual_points(10) {
            let du = e.eval_integral(z).unwrap().d1;
            let rhs = (1.0 - g) * crate::kernels::cpow(z, -g).unwrap() * e.eval_w(z).unwrap().value;
            assert!((du - rhs).norm() <= 1e-9 * rhs.norm());
        }
        assert_eq!(e.eval_u(c(0.2, 0.1)), Err(HeunError::C0Undetermined));
        let w0 = e.eval_w(c(0.0, 0.0)).unwrap().value;
        let sum: Complex64 = e.coeffs().iter().sum();
        assert!((w0 - sum).norm() < 1e-14 * sum.norm());
    }

    #[test]
    fn first_order_termination() {
        let poly =
            termination_polynomial(1, TerminationBranch::DeltaEqMinusN, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let roots = find_termination_p(&poly).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + 0.25).norm() < 1e-12);
        // the same locus: w is a single Kummer term
        let q = CheParams::real(-0.25, 1.0, -1.0, 0.0, 0.0).unwrap();
        let e = init_expansion(&q, 1).unwrap().compute_coefficients(1).unwrap();
        assert_eq!(e.coeffs()[1], c(0.0, 0.0));
        let zs = residual_points(10);
        let r = generic_residual(|z| e.w_equation(z), &|z| e.eval_w(z), &zs).unwrap();
        assert!(r.max_residual <= 1e-10);
        assert_eq!(e.determine_c0(c(0.2, 0.1)), Err(HeunError::GZero));
        assert_eq!(
            e.with_c0(c(0.0, 0.0)).eval_u(c(0.2, 0.1)),
            Err(HeunError::DegenerateGamma(c(1.0, 0.0)))
        );
    }

    #[test]
    fn termination_on_both_branches() {
        let g = c(0.3, 0.2);
        for (branch, free) in [
            (TerminationBranch::DeltaEqMinusN, c(0.7, 0.1)),
            (TerminationBranch::AlphaMinusGammaEqMinusN, c(0.45, -0.3)),
        ] {
            for n in 1..=3 {
                let (delta, alpha) = branch.apply(n, g, free);
                // P_{N−1} vanishes identically
                let k = recurrence_parts(g, delta, alpha, n - 1);
                assert!(k.p1.unwrap().norm() < 1e-14);
                let tc = termination_case(n, branch, g, free).unwrap();
                assert_eq!(tc.poly.degree(), n);
                assert_eq!(tc.p_roots.len(), n);
                for r in &tc.roots {
                    assert!(r.tail.iter().all(|&t| t <= 1e-8), "{branch:?} N={n} {:?}", r.tail);
                    let res = r.residual.clone().unwrap();
                    assert!(res <= 1e-8, "{branch:?} N={n} residual {res}");
                }
            }
        }
        let analytic = -g / (4.0 * (1.0 + c(0.7, 0.1)));
        let tc = termination_case(1, TerminationBranch::DeltaEqMinusN, g, c(0.7, 0.1)).unwrap();
        assert!((tc.p_roots[0] - analytic).norm() < 1e-12);
    }

    #[test]
    fn terminated_c0_vanishes() {
        let g = c(0.3, 0.2);
        let tc = termination_case(2, TerminationBranch::DeltaEqMinusN, g, c(0.7, 0.1)).unwrap();
        for r in &tc.roots {
            let q = CheParams::new(r.p, g, tc.delta, tc.alpha, ZERO).unwrap();
            let e = init_expansion(&q, 1).unwrap().compute_coefficients(1).unwrap();
            for z in [c(0.2, 0.1), c(-0.1, 0.3)] {
                assert!(e.determine_c0(z).unwrap().norm() <= 1e-9);
            }
        }
    }
}
