//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints exactly one PASS/FAIL line; the process exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use confluent_heun::closed_forms::{
    case1_family, case2_family, case3_family, case3_via_symmetry, ratio_constancy, symmetry_coeff_deviation,
    symmetry_map, ClosedFormFamily,
};
use confluent_heun::frobenius::hc_eval;
use confluent_heun::goursat::{
    init_expansion, residual_points, termination_case, GoursatExpansion, TerminationBranch,
};
use confluent_heun::kernels::{cpow, f11};
use confluent_heun::params::derivative_ode_coeffs;
use confluent_heun::relations::{
    all_relations, relation_alpha_zero, relation_sigma_4palpha, relation_sigma_zero, verify_relation_coeffs,
    verify_relation_solutions, DerivRelation, Sigma4pAlphaBranch, SigmaZeroBranch, DEFAULT_TOL_CLASS,
};
use confluent_heun::verify::{che_residual, generic_residual, taylor_oracle};
use confluent_heun::{CheParams, Jet, Result, SeriesControl};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64) -> Self {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }

    fn complex(&mut self, re: (f64, f64), im: (f64, f64)) -> Complex64 {
        c(self.uniform(re.0, re.1), self.uniform(im.0, im.1))
    }

    /// `p` with `0.1 ≤ |p| ≤ 0.4`, so `|4p| ≤ 2`, kept near the real axis.
    fn p(&mut self) -> Complex64 {
        let sign = if self.0.gen_bool(0.5) { 1.0 } else { -1.0 };
        Complex64::from_polar(self.uniform(0.1, 0.4), self.uniform(-0.4, 0.4)) * sign
    }

    /// `γ` away from the integers.
    fn gamma(&mut self) -> Complex64 {
        loop {
            let g = self.complex((0.2, 1.8), (-0.5, 0.5));
            if (g - 1.0).norm() > 0.15 {
                return g;
            }
        }
    }

    fn delta(&mut self) -> Complex64 {
        self.complex((-0.8, 1.8), (-0.5, 0.5))
    }

    /// `α` away from zero and the negative integers.
    fn alpha(&mut self) -> Complex64 {
        loop {
            let a = self.complex((-0.7, 1.5), (-0.5, 0.5));
            if a.norm() > 0.1 {
                return a;
            }
        }
    }

    fn sigma(&mut self) -> Complex64 {
        self.complex((-1.0, 1.0), (-0.5, 0.5))
    }

    /// A point with `0.1 ≤ |z| ≤ r_max` and `|z − 1| ≥ 0.1`.
    fn point(&mut self, r_max: f64) -> Complex64 {
        loop {
            let z = Complex64::from_polar(self.uniform(0.1, r_max), self.uniform(-PI, PI));
            if (z - 1.0).norm() >= 0.1 {
                return z;
            }
        }
    }

    fn points(&mut self, n: usize, r_max: f64) -> Vec<Complex64> {
        (0..n).map(|_| self.point(r_max)).collect()
    }
}

fn params(p: Complex64, g: Complex64, d: Complex64, a: Complex64, s: Complex64) -> CheParams {
    CheParams::new(p, g, d, a, s).expect("drawn parameters are valid")
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn coefficient_identities() -> Outcome {
    let mut rng = Draw::new(1);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    type Build = fn(&mut Draw) -> (CheParams, Vec<Result<DerivRelation>>);
    let builders: [(&str, Build); 3] = [
        ("alpha = 0", |r| {
            let q = params(r.p(), r.gamma(), r.delta(), ZERO, r.sigma());
            (q, vec![relation_alpha_zero(&q)])
        }),
        ("sigma = 0", |r| {
            let q = params(r.p(), r.gamma(), r.delta(), r.alpha(), ZERO);
            let rels = [SigmaZeroBranch::One, SigmaZeroBranch::MinusGamma]
                .map(|b| relation_sigma_zero(&q, b))
                .to_vec();
            (q, rels)
        }),
        ("sigma = 4p alpha", |r| {
            let (p, a) = (r.p(), r.alpha());
            let q = params(p, r.gamma(), r.delta(), a, 4.0 * p * a);
            let rels = [Sigma4pAlphaBranch::One, Sigma4pAlphaBranch::MinusDelta]
                .map(|b| relation_sigma_4palpha(&q, b))
                .to_vec();
            (q, rels)
        }),
    ];
    for (name, build) in builders {
        for _ in 0..50 {
            let (q, rels) = build(&mut rng);
            let zs = rng.points(50, 0.9);
            for rel in rels {
                let rel = rel.map_err(err(name))?;
                let dev = verify_relation_coeffs(&q, &rel, &zs).map_err(err(name))?;
                worst = worst.max(dev);
                checked += 1;
            }
        }
    }
    check(
        worst <= 1e-12,
        format!("{checked} relations x 50 points, max relative deviation {worst:.2e} (tol 1e-12)"),
    )
}

fn solution_identities() -> Outcome {
    let mut rng = Draw::new(2);
    let mut worst = [0.0f64; 4];
    for _ in 0..20 {
        let zs = rng.points(10, 0.4);
        let a0 = params(rng.p(), rng.gamma(), rng.delta(), ZERO, rng.sigma());
        let s0 = params(rng.p(), rng.gamma(), rng.delta(), rng.alpha(), ZERO);
        let (p, a) = (rng.p(), rng.alpha());
        let s4 = params(p, rng.gamma(), rng.delta(), a, 4.0 * p * a);
        let cases = [
            (a0, relation_alpha_zero(&a0)),
            (s0, relation_sigma_zero(&s0, SigmaZeroBranch::One)),
            (s0, relation_sigma_zero(&s0, SigmaZeroBranch::MinusGamma)),
            (s4, relation_sigma_4palpha(&s4, Sigma4pAlphaBranch::One)),
        ];
        for (k, (q, rel)) in cases.into_iter().enumerate() {
            let rel = rel.map_err(err("relation"))?;
            let chk = verify_relation_solutions(&q, &rel, &zs, 80).map_err(err("ratio"))?;
            worst[k] = worst[k].max(chk.deviation);
        }
    }
    let max = worst.iter().copied().fold(0.0, f64::max);
    check(
        max <= 1e-8,
        format!(
            "ratio deviation alpha=0 {:.2e}, sigma=0 s=1 {:.2e}, s=-gamma {:.2e}, sigma=4p alpha s=1 {:.2e} (tol 1e-8)",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn extra_singularity() -> Outcome {
    let mut rng = Draw::new(3);
    let mut min_mag = f64::INFINITY;
    let mut drawn = 0;
    let mut emitted = 0;
    while drawn < 20 {
        let q = params(rng.p(), rng.gamma(), rng.delta(), rng.alpha(), rng.sigma());
        let Some(zs) = q.extra_singularity() else { continue };
        if zs.norm() < 0.05 || (zs - 1.0).norm() < 0.05 || zs.norm() > 50.0 {
            continue;
        }
        drawn += 1;
        let z = zs + Complex64::from_polar(5e-8, rng.uniform(-PI, PI));
        let k = derivative_ode_coeffs(&q, z).map_err(err("coefficients"))?;
        min_mag = min_mag.min(k.a1.norm().max(k.a0.norm()));
        emitted += all_relations(&q, DEFAULT_TOL_CLASS).len();
    }
    check(
        min_mag > 1e6 && emitted == 0,
        format!("smallest coefficient magnitude at distance 5e-8: {min_mag:.2e} (need > 1e6); relations emitted: {emitted}"),
    )
}

fn family_residuals(f: &ClosedFormFamily, u_indices: &[usize]) -> Result<(f64, f64)> {
    let zs = f.sample_points(20, false);
    let mut u_worst = 0.0f64;
    for &i in u_indices {
        u_worst = u_worst.max(che_residual(&f.locus, &f.u_branches[i], &zs)?.max_residual);
    }
    let mut w_worst = 0.0f64;
    for w in &f.w_branches {
        w_worst = w_worst.max(generic_residual(|z| f.w_equation(z), w, &zs)?.max_residual);
    }
    Ok((u_worst, w_worst))
}

fn closed_forms() -> Outcome {
    let mut rng = Draw::new(4);
    let mut c1 = vec![(c(0.25, 0.0), c(0.5, 0.0))];
    let mut c23 = vec![(c(0.2, 0.0), c(0.5, 0.0))];
    for _ in 0..10 {
        c1.push((rng.p(), rng.gamma()));
        c23.push((rng.p(), rng.alpha()));
    }
    let (mut u, mut w) = ([0.0f64; 3], 0.0f64);
    for &(p, g) in &c1 {
        let (ur, wr) =
            family_residuals(&case1_family(p, g).map_err(err("case 1"))?, &[0, 1]).map_err(err("case 1"))?;
        u[0] = u[0].max(ur);
        w = w.max(wr);
    }
    for &(p, a) in &c23 {
        for (k, fam) in [(1, case2_family(p, a)), (2, case3_family(p, a))] {
            let fam = fam.map_err(err("case 2/3"))?;
            let (ur, wr) = family_residuals(&fam, &[1]).map_err(err("case 2/3"))?;
            u[k] = u[k].max(ur);
            w = w.max(wr);
        }
    }
    check(
        u.iter().all(|&r| r <= 1e-9) && w <= 1e-10,
        format!(
            "u residual case1 {:.2e}, case2 u2 {:.2e}, case3 u2 {:.2e} (tol 1e-9); w residual {:.2e} (tol 1e-10)",
            u[0], u[1], u[2], w
        ),
    )
}

fn symmetry() -> Outcome {
    let mut rng = Draw::new(5);
    let mut draws = vec![(c(0.2, 0.0), c(0.5, 0.0))];
    for _ in 0..10 {
        draws.push((rng.p(), rng.alpha()));
    }
    let (mut coeff, mut prop) = (0.0f64, 0.0f64);
    for (p, a) in draws {
        let two = case2_family(-p, a).map_err(err("case 2"))?;
        let direct = case3_family(p, a).map_err(err("case 3"))?;
        let mapped = case3_via_symmetry(p, a).map_err(err("reflection"))?;
        let image = symmetry_map(&two.locus);
        for (x, y) in image.to_array().iter().zip(direct.locus.to_array()) {
            coeff = coeff.max((x - y).norm() / y.norm().max(1.0));
        }
        let zs = rng.points(10, 0.9);
        for derivative in [false, true] {
            coeff = coeff.max(symmetry_coeff_deviation(&two.locus, &zs, derivative).map_err(err("coeffs"))?);
        }
        let zs = direct.sample_points(10, true);
        for i in 0..2 {
            let (_, dev) = ratio_constancy(&direct.u_branches[i], &mapped.u_branches[i], &zs)
                .map_err(err("proportionality"))?;
            prop = prop.max(dev);
        }
    }
    check(
        coeff <= 1e-12 && prop <= 1e-10,
        format!(
            "coefficient identity {coeff:.2e} (tol 1e-12); solution proportionality {prop:.2e} (tol 1e-10)"
        ),
    )
}

fn w_partial_sum_residual(e: &GoursatExpansion, len: usize, zs: &[Complex64]) -> Result<f64> {
    let t = e.truncated(len);
    Ok(generic_residual(|z| t.w_equation(z), &|z| t.eval_w(z), zs)?.max_residual)
}

fn goursat_machinery() -> Outcome {
    let mut rng = Draw::new(6);
    let zs = residual_points(10);
    let (mut r0, mut rec, mut link) = (0.0f64, 0.0f64, 0.0f64);
    let mut ratios = Vec::new();
    for k in 0..100 {
        let q = params(rng.p(), rng.gamma(), rng.delta(), rng.alpha(), ZERO);
        let e = init_expansion(&q, 12).map_err(err("init"))?;
        r0 = r0.max(e.rqp(0).map_err(err("R_0"))?.0.norm());
        let e = e.compute_coefficients(12).map_err(err("coefficients"))?;
        rec = rec.max(
            e.recurrence_residuals()
                .map_err(err("recurrence"))?
                .into_iter()
                .fold(0.0, f64::max),
        );
        if k < 20 {
            let g = q.gamma();
            for &z in &zs {
                let du = e.eval_integral(z).map_err(err("integral"))?.d1;
                let w = e.eval_w(z).map_err(err("w"))?.value;
                let rhs = (1.0 - g) * cpow(z, -g).map_err(err("power"))? * w;
                link = link.max((du - rhs).norm() / rhs.norm());
            }
            let r6 = w_partial_sum_residual(&e, 7, &zs).map_err(err("N=6"))?;
            let r12 = w_partial_sum_residual(&e, 13, &zs).map_err(err("N=12"))?;
            ratios.push(r6 / r12);
        }
    }
    ratios.sort_by(f64::total_cmp);
    let (lo, med) = (ratios[0], ratios[ratios.len() / 2]);
    check(
        r0 == 0.0 && rec <= 1e-12 && link <= 1e-9 && lo >= 10.0,
        format!(
            "max |R_0| {r0:.1e}; recurrence residual {rec:.2e} (tol 1e-12); derivative link {link:.2e} (tol 1e-9); \
             w residual ratio N=6/N=12 min {lo:.2} median {med:.2} (need >= 10)"
        ),
    )
}

fn termination() -> Outcome {
    let settings = [
        (c(0.3, 0.2), c(0.7, 0.1), c(0.45, -0.3)),
        (c(1.4, -0.3), c(-0.35, 0.25), c(1.2, 0.4)),
    ];
    let (mut tail, mut res) = (0.0f64, 0.0f64);
    let mut analytic = 0.0f64;
    for (g, alpha, delta) in settings {
        for n in 1..=3 {
            let mut total = 0;
            for (branch, free) in [
                (TerminationBranch::DeltaEqMinusN, alpha),
                (TerminationBranch::AlphaMinusGammaEqMinusN, delta),
            ] {
                let tc = termination_case(n, branch, g, free).map_err(err(branch.name()))?;
                if tc.poly.degree() != n || tc.p_roots.len() != n {
                    return Err(format!(
                        "{} N={n}: degree {} with {} roots",
                        branch.name(),
                        tc.poly.degree(),
                        tc.p_roots.len()
                    ));
                }
                total += tc.p_roots.len();
                for r in &tc.roots {
                    tail = tail.max(r.tail[0]).max(r.tail[1]);
                    res = res.max(r.residual.clone().map_err(err("residual"))?);
                }
                if n == 1 && branch == TerminationBranch::DeltaEqMinusN {
                    let want = -g / (4.0 * (1.0 + alpha));
                    analytic = analytic.max((tc.p_roots[0] - want).norm());
                }
            }
            if total != 2 * n {
                return Err(format!("N={n}: {total} roots over both branches"));
            }
        }
    }
    check(
        tail <= 1e-8 && res <= 1e-8 && analytic <= 1e-12,
        format!(
            "degrees and root counts exact; max |a_N|,|a_N+1| {tail:.2e}; residual with C0=0 {res:.2e} (tol 1e-8); \
             analytic root error {analytic:.2e} (tol 1e-12)"
        ),
    )
}

fn oracles() -> Outcome {
    let mut rng = Draw::new(8);
    let mut taylor = 0.0f64;
    for _ in 0..20 {
        let q = params(rng.p(), rng.gamma(), rng.delta(), rng.alpha(), rng.sigma());
        for _ in 0..25 {
            let z = Complex64::from_polar(rng.uniform(0.1, 0.45), rng.uniform(-PI, PI));
            let z0 = z / z.norm() * 0.06;
            let start = hc_eval(&q, z0, 80).map_err(err("series"))?;
            let (u, du) = taylor_oracle(&q, z0, start.value, start.d1, z).map_err(err("oracle"))?;
            let series = hc_eval(&q, z, 80).map_err(err("series"))?;
            let scale = series.value.norm().max(series.d1.norm());
            taylor = taylor.max((u - series.value).norm().max((du - series.d1).norm()) / scale);
        }
    }
    let ctl = SeriesControl::default();
    let mut contiguous = 0.0f64;
    for _ in 0..50 {
        let a = rng.complex((-1.0, 2.0), (-0.5, 0.5));
        let g = rng.complex((1.2, 3.0), (-0.5, 0.5));
        let s0 = -4.0 * rng.p();
        let z = Complex64::from_polar(rng.uniform(0.05, 0.4), rng.uniform(-PI, PI));
        let w = |da: f64| -> Result<Jet> { Ok(f11(a + da, g + da, s0 * z, &ctl)?.chain_linear(s0)) };
        let (wm, wn, wp) = (
            w(-1.0).map_err(err("1F1"))?,
            w(0.0).map_err(err("1F1"))?,
            w(1.0).map_err(err("1F1"))?,
        );
        let lhs = wn.d1;
        let rhs = s0 * a / g * wp.value;
        contiguous = contiguous.max((lhs - rhs).norm() / lhs.norm().max(rhs.norm()));
        let lhs = z * (wn.d1 - s0 * wn.value);
        let rhs = (g - 1.0) * (wm.value - wn.value);
        let scale = (z * wn.d1)
            .norm()
            .max((z * s0 * wn.value).norm())
            .max(((g - 1.0) * wm.value).norm());
        contiguous = contiguous.max((lhs - rhs).norm() / scale);
    }
    check(
        taylor <= 1e-9 && contiguous <= 1e-10,
        format!("series vs Taylor oracle {taylor:.2e} (tol 1e-9); contiguous relations {contiguous:.2e} (tol 1e-10)"),
    )
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_heun"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_determinism() -> Outcome {
    let params = [
        "--p", "0.25", "--gamma", "1.5", "--delta", "0.5", "--alpha", "0.3", "--sigma", "0.2",
    ];
    let with = |head: &[&'static str], tail: &[&'static str]| -> Vec<&'static str> {
        head.iter()
            .chain(params.iter())
            .chain(tail.iter())
            .copied()
            .collect()
    };
    let runs: Vec<Vec<&str>> = vec![
        with(&["eval"], &["--disk", "0.4:6", "--seed", "7"]),
        with(
            &["--format", "csv", "eval"],
            &["--disk", "0.4:6", "--seed", "7", "--solution", "second"],
        ),
        with(&["relate"], &["--disk", "0.3:4", "--seed", "11"]),
        with(&["verify"], &["--disk", "0.4:3", "--seed", "5"]),
        vec!["closed-form", "--case", "2", "--p", "0.2", "--alpha", "0.5"],
        vec![
            "--format",
            "csv",
            "closed-form",
            "--case",
            "3",
            "--p",
            "0.2",
            "--alpha",
            "0.5",
            "--via-symmetry",
        ],
        vec![
            "goursat", "--p", "0.2", "--gamma", "1.3", "--delta", "1.5", "--alpha", "0.4", "--sigma", "0",
            "--n", "8", "--disk", "0.3:4", "--seed", "2",
        ],
        vec![
            "terminate",
            "--n",
            "2",
            "--branch",
            "delta",
            "--gamma",
            "0.3,0.2",
            "--alpha",
            "0.7,0.1",
        ],
    ];
    for args in &runs {
        let (code1, out1) = run_cli(args);
        let (code2, out2) = run_cli(args);
        if code1 != 0 || code2 != 0 {
            return Err(format!("`heun {}` exited {code1}/{code2}", args.join(" ")));
        }
        if out1.is_empty() || out1 != out2 {
            return Err(format!("`heun {}` output differs between runs", args.join(" ")));
        }
    }
    let failures: [(&[&str], i32); 3] = [
        (&with(&["eval"], &["--z", "0.9"]), 2),
        (
            &[
                "eval", "--p", "0", "--gamma", "1.5", "--delta", "0.5", "--alpha", "0.3", "--sigma", "0.2",
            ],
            2,
        ),
        (
            &[
                "terminate",
                "--n",
                "2",
                "--branch",
                "delta",
                "--gamma",
                "0",
                "--alpha",
                "0.5",
            ],
            3,
        ),
    ];
    for (args, want) in failures {
        let (code, _) = run_cli(args);
        if code != want {
            return Err(format!(
                "`heun {}` exited {code}, expected {want}",
                args.join(" ")
            ));
        }
    }
    Ok(format!(
        "{} subcommand runs byte-identical; exit codes 2, 2, 3 on crafted failures",
        runs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("coefficient-level reduction identities", coefficient_identities),
        ("solution-level reduction identities", solution_identities),
        ("extra singularity of the derivative equation", extra_singularity),
        ("closed-form families", closed_forms),
        ("reflection symmetry", symmetry),
        ("Kummer expansion machinery", goursat_machinery),
        ("termination", termination),
        ("oracle cross-validation", oracles),
        ("CLI determinism and exit codes", cli_determinism),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                println!("criterion {} {name}: FAIL ({secs:.1}s) {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("acceptance total {:.1}s", start.elapsed().as_secs_f64());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
