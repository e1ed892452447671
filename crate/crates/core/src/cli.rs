//! The `heun` command-line interface.
//!
//! Every subcommand produces a list of records. Records are written as
//! JSON lines (complex numbers as `{"re": …, "im": …}`) or as one CSV table
//! whose columns are the union of all record fields, with nested fields
//! flattened to dotted names and complex values split into `_re`/`_im`.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{case1_family, case2_family, case3_family, case3_via_symmetry, ClosedFormFamily};
use crate::error::{HeunError, Result};
use crate::frobenius::{Exponent, HeunLocal, DEFAULT_ORDER, DEFAULT_R_MAX};
use crate::goursat::{init_expansion, residual_points, termination_case, TerminationBranch};
use crate::kernels::C2Fn;
use crate::params::CheParams;
use crate::relations::{
    all_relations, classify, verify_relation_coeffs, verify_relation_solutions, DEFAULT_TOL_CLASS,
};
use crate::verify::{che_residual, generic_residual, taylor_oracle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Radius of the starting circle for the Taylor oracle.
const ORACLE_START: f64 = 0.06;

#[derive(Debug, Parser)]
#[command(
    name = "heun",
    version,
    about = "Confluent Heun functions and their derivative reductions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for `--disk` sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Solution {
    Regular,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Delta,
    AlphaGamma,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a local solution and its first two derivatives.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_enum, default_value_t = Solution::Regular)]
        solution: Solution,
    },
    /// Classify the parameters and verify every applicable reduction.
    Relate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        series: SeriesArgs,
        /// Tolerance of the case predicates.
        #[arg(long, default_value_t = DEFAULT_TOL_CLASS)]
        tol: f64,
    },
    /// Residual and Taylor-oracle check of the series solution.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Explicit solutions on one of the three solvable loci.
    ClosedForm(ClosedFormArgs),
    /// Kummer-function expansion of a sigma = 0 solution.
    Goursat {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        points: PointArgs,
        /// Highest coefficient index.
        #[arg(long = "n", default_value_t = 12)]
        n: usize,
    },
    /// Parameter values p at which the expansion terminates after N terms.
    Terminate {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = BranchArg::Both)]
        branch: BranchArg,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        gamma: Complex64,
        /// Free parameter of the delta = -N branch.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex64>,
        /// Free parameter of the alpha - gamma = -N branch.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        delta: Option<Complex64>,
    },
}

/// Explicit solutions on one of the three solvable loci.
#[derive(Debug, Args)]
struct ClosedFormArgs {
    /// 1: alpha = 0; 2: sigma = 0; 3: sigma = 4p alpha.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    case: u8,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    p: Complex64,
    /// Free parameter of case 1.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma: Option<Complex64>,
    /// Free parameter of cases 2 and 3.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Option<Complex64>,
    /// Build case 3 by reflecting case 2.
    #[arg(long)]
    via_symmetry: bool,
    /// Number of sample points when no `--z` is given.
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[command(flatten)]
    points: PointArgs,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    p: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    delta: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    sigma: Complex64,
}

impl ParamArgs {
    fn build(&self) -> Result<CheParams> {
        CheParams::new(self.p, self.gamma, self.delta, self.alpha, self.sigma)
    }
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Evaluation point as `re,im`; repeatable.
    #[arg(long = "z", value_parser = parse_complex, allow_hyphen_values = true)]
    z: Vec<Complex64>,
    /// Random points uniform in the disk of radius R, as `R:COUNT`.
    #[arg(long, value_parser = parse_disk)]
    disk: Option<(f64, usize)>,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Truncation order of the Frobenius series.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Radius of the evaluation disk.
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    r_max: f64,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |t: &str| -> std::result::Result<f64, String> {
        let v: f64 = t.trim().parse().map_err(|_| format!("`{t}` is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{t}` is not finite"))
        }
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

fn parse_disk(s: &str) -> std::result::Result<(f64, usize), String> {
    let (r, n) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `R:COUNT`, got `{s}`"))?;
    let r: f64 = r.parse().map_err(|_| format!("`{r}` is not a radius"))?;
    let n: usize = n.parse().map_err(|_| format!("`{n}` is not a count"))?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(format!("radius must be positive, got {r}"));
    }
    Ok((r, n))
}

impl PointArgs {
    /// Explicit points first, then disk samples. `None` when neither was
    /// given.
    fn resolve(&self, seed: u64) -> Option<Vec<Complex64>> {
        if self.z.is_empty() && self.disk.is_none() {
            return None;
        }
        let mut out = self.z.clone();
        if let Some((r, count)) = self.disk {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let rad = r * rng.gen::<f64>().sqrt();
                let theta = 2.0 * PI * rng.gen::<f64>();
                out.push(Complex64::from_polar(rad, theta));
            }
        }
        Some(out)
    }

    fn required(&self, seed: u64) -> Result<Vec<Complex64>> {
        self.resolve(seed)
            .ok_or_else(|| HeunError::InvalidArgument("no evaluation points; pass --z or --disk".into()))
    }
}

/// A value in an output record.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Real(f64),
    Str(String),
    Complex(Complex64),
    List(Vec<Value>),
    Obj(Record),
}

pub type Record = Vec<(String, Value)>;

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}
impl From<Complex64> for Value {
    fn from(v: Complex64) -> Self {
        Value::Complex(v)
    }
}
impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}
impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}
impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}
impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}
impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {
        vec![$(($k.to_string(), Value::from($v))),*]
    };
}

fn params_value(p: &CheParams) -> Value {
    Value::Obj(record! {
        "p" => p.p(),
        "gamma" => p.gamma(),
        "delta" => p.delta(),
        "alpha" => p.alpha(),
        "sigma" => p.sigma(),
    })
}

fn to_json(v: &Value) -> serde_json::Value {
    use serde_json::Value as J;
    let real = |x: f64| serde_json::Number::from_f64(x).map_or(J::Null, J::Number);
    match v {
        Value::Null => J::Null,
        Value::Bool(b) => J::Bool(*b),
        Value::Int(i) => J::from(*i),
        Value::Real(x) => real(*x),
        Value::Str(s) => J::String(s.clone()),
        Value::Complex(c) => {
            let mut m = serde_json::Map::new();
            m.insert("re".into(), real(c.re));
            m.insert("im".into(), real(c.im));
            J::Object(m)
        }
        Value::List(items) => J::Array(items.iter().map(to_json).collect()),
        Value::Obj(rec) => J::Object(rec.iter().map(|(k, v)| (k.clone(), to_json(v))).collect()),
    }
}

fn real_cell(x: f64) -> String {
    serde_json::Number::from_f64(x).map_or_else(|| x.to_string(), |n| n.to_string())
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Int(i) => out.push((prefix.to_string(), i.to_string())),
        Value::Real(x) => out.push((prefix.to_string(), real_cell(*x))),
        Value::Str(s) => out.push((prefix.to_string(), s.clone())),
        Value::Complex(c) => {
            out.push((format!("{prefix}_re"), real_cell(c.re)));
            out.push((format!("{prefix}_im"), real_cell(c.im)));
        }
        Value::List(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), item, out);
            }
        }
        Value::Obj(rec) => {
            for (k, item) in rec {
                let name = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&name, item, out);
            }
        }
    }
}

fn write_records(records: &[Record], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                let line = serde_json::to_string(&to_json(&Value::Obj(r.clone())))?;
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<(String, String)>> = records
                .iter()
                .map(|r| {
                    let mut cells = Vec::new();
                    flatten("", &Value::Obj(r.clone()), &mut cells);
                    cells
                })
                .collect();
            let mut columns: Vec<String> = Vec::new();
            for row in &rows {
                for (k, _) in row {
                    if !columns.contains(k) {
                        columns.push(k.clone());
                    }
                }
            }
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(out);
            w.write_record(&columns)?;
            for row in &rows {
                let cells: Vec<&str> = columns
                    .iter()
                    .map(|c| row.iter().find(|(k, _)| k == c).map_or("", |(_, v)| v.as_str()))
                    .collect();
                w.write_record(&cells)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Golden-angle spiral in the annulus `r_min ≤ |z| ≤ r_max`.
fn spiral_points(count: usize, r_min: f64, r_max: f64) -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let t = (k as f64 + 0.5) / count as f64;
            Complex64::from_polar(r_min + (r_max - r_min) * t, 0.3 + golden * k as f64)
        })
        .collect()
}

fn error_value<T>(r: &Result<T>) -> Value {
    match r {
        Ok(_) => Value::Null,
        Err(e) => Value::Str(e.to_string()),
    }
}

fn cmd_eval(
    params: &ParamArgs,
    points: &PointArgs,
    series: &SeriesArgs,
    solution: Solution,
    seed: u64,
) -> Result<Vec<Record>> {
    let params = params.build()?;
    let zs = points.required(seed)?;
    let exponent = match solution {
        Solution::Regular => Exponent::Regular,
        Solution::Second => Exponent::Second,
    };
    let f = HeunLocal::with_radius(&params, exponent, series.order, series.r_max)?;
    zs.iter()
        .map(|&z| {
            let j = f.eval(z)?;
            Ok(record! { "z" => z, "u" => j.value, "du" => j.d1, "d2u" => j.d2 })
        })
        .collect()
}

fn cmd_relate(
    params: &ParamArgs,
    points: &PointArgs,
    series: &SeriesArgs,
    tol: f64,
    seed: u64,
) -> Result<Vec<Record>> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(HeunError::InvalidArgument(format!(
            "tolerance must be nonnegative, got {tol}"
        )));
    }
    let params = params.build()?;
    let zs = points
        .resolve(seed)
        .unwrap_or_else(|| spiral_points(10, 0.08, 0.38));
    let tag = classify(&params, tol);
    let mut relations = Vec::new();
    for rel in all_relations(&params, tol) {
        let rel = match rel {
            Ok(r) => r,
            Err(e) => {
                relations.push(Value::Obj(record! { "error" => e.to_string() }));
                continue;
            }
        };
        let coeff = verify_relation_coeffs(&params, &rel, &zs);
        let sol = verify_relation_solutions(&params, &rel, &zs, series.order);
        relations.push(Value::Obj(record! {
            "case" => rel.case.name(),
            "s" => rel.s,
            "prefactor" => rel.prefactor_label(),
            "target" => params_value(&rel.target),
            "scale" => rel.scale,
            "coeff_deviation" => coeff.as_ref().ok().copied(),
            "ratio_scale" => sol.as_ref().ok().map(|c| c.scale),
            "ratio_deviation" => sol.as_ref().ok().map(|c| c.deviation),
            "ratio_note" => error_value(&sol),
        }));
    }
    Ok(vec![record! {
        "cases" => Value::List(tag.names().into_iter().map(Value::from).collect()),
        "generic" => tag.is_generic(),
        "extra_singularity" => if tag.is_generic() { params.extra_singularity() } else { None },
        "relations" => Value::List(relations),
    }])
}

fn cmd_verify(params: &ParamArgs, points: &PointArgs, series: &SeriesArgs, seed: u64) -> Result<Vec<Record>> {
    let params = params.build()?;
    let zs = points
        .resolve(seed)
        .unwrap_or_else(|| spiral_points(10, 0.1, 0.45));
    let f = HeunLocal::with_radius(&params, Exponent::Regular, series.order, series.r_max)?;
    let mut out = Vec::with_capacity(zs.len());
    for &z in &zs {
        let j = f.eval(z)?;
        let residual = che_residual(&params, &f, &[z])?.max_residual;
        let oracle = (|| {
            let z0 = z / z.norm() * ORACLE_START;
            let s = f.eval(z0)?;
            taylor_oracle(&params, z0, s.value, s.d1, z)
        })();
        let (ou, dev) = match &oracle {
            Ok((u, du)) => {
                let scale = j.value.norm().max(j.d1.norm());
                (
                    Some(*u),
                    Some((u - j.value).norm().max((du - j.d1).norm()) / scale),
                )
            }
            Err(_) => (None, None),
        };
        out.push(record! {
            "z" => z,
            "u" => j.value,
            "residual" => residual,
            "oracle_u" => ou,
            "oracle_deviation" => dev,
            "oracle_error" => error_value(&oracle),
        });
    }
    Ok(out)
}

fn cmd_closed_form(args: &ClosedFormArgs, seed: u64) -> Result<Vec<Record>> {
    let ClosedFormArgs {
        case,
        p,
        gamma,
        alpha,
        via_symmetry,
        count,
        points,
    } = args;
    let (case, p, gamma, alpha, count) = (*case, *p, *gamma, *alpha, *count);
    let need = |v: Option<Complex64>, name: &str| {
        v.ok_or_else(|| HeunError::InvalidArgument(format!("case {case} needs --{name}")))
    };
    let family: ClosedFormFamily = match (case, *via_symmetry) {
        (1, _) => case1_family(p, need(gamma, "gamma")?)?,
        (2, _) => case2_family(p, need(alpha, "alpha")?)?,
        (_, false) => case3_family(p, need(alpha, "alpha")?)?,
        (_, true) => case3_via_symmetry(p, need(alpha, "alpha")?)?,
    };
    let zs = points
        .resolve(seed)
        .unwrap_or_else(|| family.sample_points(count, false));
    let mut out = vec![record! {
        "case" => family.case.name(),
        "reflected" => family.reflected,
        "free" => Value::List(vec![family.free_params.0.into(), family.free_params.1.into()]),
        "locus" => params_value(&family.locus),
        "integration_constants" => Value::List(family.integration_constants.iter().map(|c| Value::from(*c)).collect()),
        "points" => zs.len(),
    }];
    for (i, w) in family.w_branches.iter().enumerate() {
        let r = generic_residual(|z| family.w_equation(z), w, &zs)?;
        out.push(record! { "branch" => format!("w{}", i + 1), "residual" => r.max_residual });
    }
    for (i, u) in family.u_branches.iter().enumerate() {
        let r = che_residual(&family.locus, u, &zs)?;
        let proj = family.projection_check(i, &zs);
        out.push(record! {
            "branch" => format!("u{}", i + 1),
            "residual" => r.max_residual,
            "projection" => proj.as_ref().ok().map(|(c, _)| Value::List(vec![c[0].into(), c[1].into()])).unwrap_or(Value::Null),
            "projection_deviation" => proj.as_ref().ok().map(|(_, d)| *d),
        });
    }
    Ok(out)
}

fn cmd_goursat(params: &ParamArgs, points: &PointArgs, n: usize, seed: u64) -> Result<Vec<Record>> {
    let params = params.build()?;
    let zs = points.resolve(seed).unwrap_or_else(|| residual_points(10));
    let exp = init_expansion(&params, n)?.compute_coefficients(n)?;
    let rec_res = exp.recurrence_residuals()?.into_iter().fold(0.0, f64::max);
    let c0 = match zs.as_slice() {
        [a, b, ..] => exp
            .determine_c0(*a)
            .and_then(|c| Ok((c, (exp.determine_c0(*b)? - c).norm()))),
        _ => Err(HeunError::InvalidArgument("C0 needs at least two points".into())),
    };
    let mut out = vec![record! {
        "alpha0" => exp.alpha0(),
        "gamma0" => exp.gamma0(),
        "s0" => exp.s0(),
        "n" => n,
        "coeffs" => Value::List(exp.coeffs().iter().map(|c| Value::from(*c)).collect()),
        "max_recurrence_residual" => rec_res,
        "c0" => c0.as_ref().ok().map(|(c, _)| *c),
        "c0_consistency" => c0.as_ref().ok().map(|(_, d)| *d),
        "c0_error" => error_value(&c0),
    }];
    let exp_u = c0.as_ref().ok().map(|(c, _)| exp.clone().with_c0(*c));
    for &z in &zs {
        let w = exp.eval_w(z)?;
        let w_res = generic_residual(|x| exp.w_equation(x), &|x| exp.eval_w(x), &[z])?.max_residual;
        let (u, u_res) = match &exp_u {
            Some(e) => {
                let j = e.eval_u(z)?;
                (Some(j.value), Some(che_residual(&params, e, &[z])?.max_residual))
            }
            None => (None, None),
        };
        out.push(
            record! { "z" => z, "w" => w.value, "w_residual" => w_res, "u" => u, "u_residual" => u_res },
        );
    }
    Ok(out)
}

fn cmd_terminate(
    n: usize,
    branch: BranchArg,
    gamma: Complex64,
    alpha: Option<Complex64>,
    delta: Option<Complex64>,
) -> Result<Vec<Record>> {
    if n == 0 {
        return Err(HeunError::InvalidArgument("N must be at least 1".into()));
    }
    let mut todo = Vec::new();
    if matches!(branch, BranchArg::Delta | BranchArg::Both) {
        let a = alpha.ok_or_else(|| HeunError::InvalidArgument("the delta branch needs --alpha".into()))?;
        todo.push((TerminationBranch::DeltaEqMinusN, a));
    }
    if matches!(branch, BranchArg::AlphaGamma | BranchArg::Both) {
        let d =
            delta.ok_or_else(|| HeunError::InvalidArgument("the alpha-gamma branch needs --delta".into()))?;
        todo.push((TerminationBranch::AlphaMinusGammaEqMinusN, d));
    }
    let mut out = Vec::new();
    for (b, free) in todo {
        let tc = termination_case(n, b, gamma, free)?;
        let roots = tc
            .roots
            .iter()
            .map(|r| {
                Value::Obj(record! {
                    "p" => r.p,
                    "a_n" => r.tail[0],
                    "a_n1" => r.tail[1],
                    "a_n2" => r.tail[2],
                    "residual" => r.residual.as_ref().ok().copied(),
                    "residual_error" => match &r.residual { Ok(_) => Value::Null, Err(e) => Value::Str(e.to_string()) },
                })
            })
            .collect();
        out.push(record! {
            "branch" => b.name(),
            "n" => n,
            "gamma" => tc.gamma,
            "delta" => tc.delta,
            "alpha" => tc.alpha,
            "poly" => Value::List(tc.poly.coeffs().iter().map(|c| Value::from(*c)).collect()),
            "roots" => Value::List(roots),
        });
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Vec<Record>> {
    let seed = cli.seed;
    match &cli.command {
        Command::Eval {
            params,
            points,
            series,
            solution,
        } => cmd_eval(params, points, series, *solution, seed),
        Command::Relate {
            params,
            points,
            series,
            tol,
        } => cmd_relate(params, points, series, *tol, seed),
        Command::Verify {
            params,
            points,
            series,
        } => cmd_verify(params, points, series, seed),
        Command::ClosedForm(args) => cmd_closed_form(args, seed),
        Command::Goursat { params, points, n } => cmd_goursat(params, points, *n, seed),
        Command::Terminate {
            n,
            branch,
            gamma,
            alpha,
            delta,
        } => cmd_terminate(*n, *branch, *gamma, *alpha, *delta),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(records) => match write_records(&records, cli.format, out) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_NUMERICAL
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                EXIT_INVALID
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}
