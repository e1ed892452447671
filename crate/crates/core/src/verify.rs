//! Independent oracles: residual operators for second-order linear ODEs
//! and a high-order Taylor-stepping integrator for the confluent Heun
//! equation.

use num_complex::Complex64;

use crate::error::{HeunError, Result};
use crate::kernels::{C2Fn, Jet};
use crate::params::{che_coeffs, coeff_g, CheParams, OdeCoeffs};

/// Minimum distance between residual sample points and `{0, 1}`.
pub const RESIDUAL_GUARD: f64 = 1e-3;

/// Per-point relative residuals of `y'' + a1 y' + a0 y` over a point set.
///
/// All residuals share one normalization `scale`, the largest of
/// `|y''|`, `|a1 y'|`, `|a0 y|` over the points (falling back to `max |y|`
/// when all three vanish), so that zeros of `y` do not inflate the result.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub points: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub scale: f64,
}

/// Unnormalized residual `y'' + a1 y' + a0 y`.
pub fn raw_residual(coeffs: OdeCoeffs, jet: Jet) -> Complex64 {
    jet.d2 + coeffs.a1 * jet.d1 + coeffs.a0 * jet.value
}

/// Residual of an arbitrary second-order linear ODE whose coefficients are
/// supplied pointwise.
pub fn generic_residual<C, F>(coeffs: C, f: &F, zs: &[Complex64]) -> Result<ResidualReport>
where
    C: Fn(Complex64) -> Result<OdeCoeffs>,
    F: C2Fn + ?Sized,
{
    let mut raw = Vec::with_capacity(zs.len());
    let mut scale = 0.0f64;
    let mut fallback = 0.0f64;
    for &z in zs {
        let k = coeffs(z)?;
        for v in [k.a1, k.a0] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(HeunError::SingularPoint(z));
            }
        }
        let j = f.eval(z)?;
        scale = scale
            .max(j.d2.norm())
            .max((k.a1 * j.d1).norm())
            .max((k.a0 * j.value).norm());
        fallback = fallback.max(j.value.norm());
        raw.push(raw_residual(k, j).norm());
    }
    if scale == 0.0 {
        scale = fallback;
    }
    let residuals: Vec<f64> = if scale > 0.0 {
        raw.iter().map(|r| r / scale).collect()
    } else {
        raw
    };
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(ResidualReport {
        points: zs.to_vec(),
        residuals,
        max_residual,
        scale,
    })
}

/// Residual of the canonical confluent Heun equation.
pub fn che_residual<F>(params: &CheParams, f: &F, zs: &[Complex64]) -> Result<ResidualReport>
where
    F: C2Fn + ?Sized,
{
    for &z in zs {
        if z.norm() < RESIDUAL_GUARD || (z - 1.0).norm() < RESIDUAL_GUARD {
            return Err(HeunError::SingularPoint(z));
        }
    }
    generic_residual(|z| che_coeffs(params, z), f, zs)
}

/// The constant `c` for which `u + c` solves the confluent Heun equation
/// at `z_star`. The residual is linear in `c` with slope `g(z)`:
/// `Res(u + c) = Res(u) + c·g(z)`.
pub fn additive_constant<F>(params: &CheParams, f: &F, z_star: Complex64) -> Result<Complex64>
where
    F: C2Fn + ?Sized,
{
    let k = che_coeffs(params, z_star)?;
    if k.a0.norm() <= 1e-14 * (1.0 + k.a1.norm()) {
        return Err(HeunError::GZero);
    }
    let r = raw_residual(k, f.eval(z_star)?);
    Ok(-r / coeff_g(params, z_star)?)
}

/// Order of the local Taylor expansions used by [`taylor_oracle`].
pub const TAYLOR_ORDER: usize = 20;
/// Minimum distance between the integration path and `{0, 1}`.
pub const PATH_GUARD: f64 = 0.05;
const TAIL_TOL: f64 = 1e-13;
const MIN_STEP: f64 = 1e-12;

/// Taylor coefficients `b_0..b_{order}` of the solution about `c` with
/// `b_0 = u`, `b_1 = u'`, from the polynomial form of the equation
/// `P2(x) u'' + P1(x) u' + P0(x) u = 0`, `z = c + x`.
fn local_taylor(
    params: &CheParams,
    c: Complex64,
    u: Complex64,
    du: Complex64,
    order: usize,
) -> Vec<Complex64> {
    let p4 = 4.0 * params.p();
    let (gamma, delta, alpha, sigma) = (params.gamma(), params.delta(), params.alpha(), params.sigma());
    // z(z−1) = c(c−1) + (2c−1)x + x²
    let a = [c * (c - 1.0), 2.0 * c - 1.0, Complex64::new(1.0, 0.0)];
    // 4p z(z−1) + γ(z−1) + δz
    let b = [
        p4 * a[0] + gamma * (c - 1.0) + delta * c,
        p4 * a[1] + gamma + delta,
        p4,
    ];
    // 4pαz − σ
    let k = [p4 * alpha * c - sigma, p4 * alpha];
    let mut t = vec![Complex64::new(0.0, 0.0); order + 1];
    t[0] = u;
    if order >= 1 {
        t[1] = du;
    }
    for n in 0..order.saturating_sub(1) {
        let nf = n as f64;
        let mut s = a[1] * (nf + 1.0) * nf * t[n + 1]
            + a[2] * nf * (nf - 1.0) * t[n]
            + b[0] * (nf + 1.0) * t[n + 1]
            + b[1] * nf * t[n]
            + k[0] * t[n];
        if n >= 1 {
            s += b[2] * (nf - 1.0) * t[n - 1] + k[1] * t[n - 1];
        }
        t[n + 2] = -s / (a[0] * (nf + 2.0) * (nf + 1.0));
    }
    t
}

fn segment_distance(a: Complex64, b: Complex64, pt: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (pt - a).norm();
    }
    let t = (((pt - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - pt).norm()
}

/// Integrates the confluent Heun equation along the straight segment from
/// `z0` to `z_target`, starting from `(u0, du0)`, by adaptive order-20
/// Taylor stepping. Returns `(u, u')` at the target.
///
/// A step is accepted when the last two retained Taylor terms fall below
/// `1e−13` of the solution scale.
pub fn taylor_oracle(
    params: &CheParams,
    z0: Complex64,
    u0: Complex64,
    du0: Complex64,
    z_target: Complex64,
) -> Result<(Complex64, Complex64)> {
    let clearance = segment_distance(z0, z_target, Complex64::new(0.0, 0.0)).min(segment_distance(
        z0,
        z_target,
        Complex64::new(1.0, 0.0),
    ));
    if clearance < PATH_GUARD {
        return Err(HeunError::PathTooCloseToSingularity(clearance));
    }
    let total = (z_target - z0).norm();
    if total == 0.0 {
        return Ok((u0, du0));
    }
    let dir = (z_target - z0) / total;
    let (mut z, mut u, mut du) = (z0, u0, du0);
    let mut travelled = 0.0;
    while travelled < total {
        let remaining = total - travelled;
        let radius = z.norm().min((z - 1.0).norm());
        let mut h = remaining.min(0.5 * radius);
        let coeffs = local_taylor(params, z, u, du, TAYLOR_ORDER);
        let scale = u.norm().max(du.norm() * radius).max(f64::MIN_POSITIVE);
        loop {
            let tail = coeffs[TAYLOR_ORDER].norm() * h.powi(TAYLOR_ORDER as i32)
                + coeffs[TAYLOR_ORDER - 1].norm() * h.powi(TAYLOR_ORDER as i32 - 1);
            if tail <= TAIL_TOL * scale {
                break;
            }
            h *= 0.5;
            if h < MIN_STEP {
                return Err(HeunError::StepUnderflow(z));
            }
        }
        let step = dir * h;
        let (mut nu, mut ndu) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for k in (0..=TAYLOR_ORDER).rev() {
            nu = nu * step + coeffs[k];
            if k >= 1 {
                ndu = ndu * step + coeffs[k] * k as f64;
            }
        }
        u = nu;
        du = ndu;
        travelled += h;
        z = if travelled >= total {
            z_target
        } else {
            z0 + dir * travelled
        };
    }
    Ok((u, du))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{hc_eval, Exponent, HeunLocal};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> CheParams {
        CheParams::new(
            c(0.35, 0.2),
            c(1.4, -0.3),
            c(-0.7, 0.6),
            c(0.9, 0.1),
            c(0.6, -0.4),
        )
        .unwrap()
    }

    #[test]
    fn constant_solves_when_g_vanishes() {
        let p = CheParams::real(0.25, 1.0, 1.0, 0.0, 0.0).unwrap();
        let one = |_z: Complex64| Ok(Jet::constant(c(1.0, 0.0)));
        let rep = che_residual(&p, &one, &[c(0.3, 0.0), c(0.1, 0.2)]).unwrap();
        assert_eq!(rep.max_residual, 0.0);
        assert!(rep.scale > 0.0);
    }

    #[test]
    fn series_residual_small_and_corruption_detected() {
        let p = sample();
        let hc = HeunLocal::new(&p, Exponent::Regular, 80).unwrap();
        let zs: Vec<Complex64> = (0..12)
            .map(|k| Complex64::from_polar(0.05 + 0.03 * k as f64, 0.5 * k as f64))
            .collect();
        assert!(che_residual(&p, &hc, &zs).unwrap().max_residual <= 1e-10);
        let bad_series = hc.series().with_coeff(5, hc.series().coeffs()[5] + 1e-3);
        let bad = |z: Complex64| bad_series.eval_raw(z);
        assert!(che_residual(&p, &bad, &zs).unwrap().max_residual >= 1e-5);
    }

    #[test]
    fn rejects_points_near_singularities() {
        let p = sample();
        let one = |_z: Complex64| Ok(Jet::constant(c(1.0, 0.0)));
        assert!(matches!(
            che_residual(&p, &one, &[c(1e-4, 0.0)]),
            Err(HeunError::SingularPoint(_))
        ));
    }

    #[test]
    fn residual_linear_in_additive_constant() {
        let p = sample();
        let hc = HeunLocal::new(&p, Exponent::Regular, 60).unwrap();
        let z = c(0.2, 0.15);
        let k = che_coeffs(&p, z).unwrap();
        let j = hc.eval(z).unwrap();
        let shift = c(0.7, -1.1);
        let shifted = Jet::new(j.value + shift, j.d1, j.d2);
        let diff = raw_residual(k, shifted) - raw_residual(k, j);
        assert!((diff - shift * k.a0).norm() <= 1e-14 * (shift * k.a0).norm());
    }

    #[test]
    fn oracle_constant_solution() {
        let p = CheParams::real(0.25, 1.0, 1.0, 0.0, 0.0).unwrap();
        let (u, du) = taylor_oracle(&p, c(0.1, 0.1), c(1.0, 0.0), c(0.0, 0.0), c(0.4, -0.3)).unwrap();
        assert!((u - 1.0).norm() < 1e-15 && du.norm() < 1e-15);
    }

    #[test]
    fn oracle_matches_series() {
        let p = sample();
        let z0 = c(0.06, 0.0);
        let start = hc_eval(&p, z0, 80).unwrap();
        let end = hc_eval(&p, c(0.45, 0.0), 80).unwrap();
        let (u, du) = taylor_oracle(&p, z0, start.value, start.d1, c(0.45, 0.0)).unwrap();
        assert!((u - end.value).norm() <= 1e-9 * end.value.norm());
        assert!((du - end.d1).norm() <= 1e-9 * end.d1.norm().max(1.0));
    }

    #[test]
    fn oracle_round_trip() {
        let p = sample();
        let (z0, z1) = (c(0.2, 0.3), c(-0.3, -0.25));
        let (u0, du0) = (c(0.8, -0.2), c(-0.4, 1.3));
        let (u1, du1) = taylor_oracle(&p, z0, u0, du0, z1).unwrap();
        let (u2, du2) = taylor_oracle(&p, z1, u1, du1, z0).unwrap();
        assert!((u2 - u0).norm() <= 1e-10 && (du2 - du0).norm() <= 1e-10);
    }

    #[test]
    fn oracle_refuses_paths_through_singularities() {
        let p = sample();
        assert!(matches!(
            taylor_oracle(&p, c(-0.3, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)),
            Err(HeunError::PathTooCloseToSingularity(_))
        ));
    }
}
