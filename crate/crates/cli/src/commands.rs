use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use kleinzeta_core::arith::{is_prime, multiplicative_order, prime_power, primes_up_to};
use kleinzeta_core::curves::{count_formula, count_projective_brute, CountBudget, CountMethod, CurveModel};
use kleinzeta_core::hecke::{ap_triple, verify_theorem1};
use kleinzeta_core::suites::{run_suites, Status, Suite, SuiteLimits};
use kleinzeta_core::zeta::{klein_splitting_field, zeta_fermat, zeta_klein, NumeratorPoly, ZetaFunction};
use kleinzeta_core::{jacobi_sum, make_character, Error, FieldDescriptor};

use crate::args::{Command, Method};
use crate::cache::{Cache, PrimeEntry};
use crate::output::{big, big_array, Table};

/// Why a command did not succeed; each maps to one exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: a check or a cache comparison failed.
    Verification(String),
    /// Exit 2: malformed or out-of-domain input.
    Usage(String),
    /// Exit 3: a size budget was exceeded.
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(msg),
            Error::NonIntegral(_)
            | Error::FunctionalEquation { .. }
            | Error::RiemannHypothesis(_)
            | Error::NotRationalInteger(_) => Failure::Verification(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl From<crate::cache::CacheMismatch> for Failure {
    fn from(m: crate::cache::CacheMismatch) -> Self {
        Failure::Verification(format!("cache mismatch: {}", m.0))
    }
}

pub struct Outcome {
    pub table: Table,
    /// Some row failed; the table is still printed.
    pub failed: bool,
}

pub struct Context<'a> {
    pub budget: CountBudget,
    pub cache: &'a mut Cache,
}

pub fn run(cmd: &Command, ctx: &mut Context) -> Result<Outcome, Failure> {
    match cmd {
        Command::Field { q, p, r } => cmd_field(*q, *p, *r, ctx),
        Command::Count { curve, q, method } => cmd_count(curve, *q, *method, ctx),
        Command::Jacobi { q, n, i, j } => cmd_jacobi(*q, *n, *i, *j, ctx),
        Command::Zeta { curve, p } => cmd_zeta(curve, *p, ctx),
        Command::Ap { p_range } => cmd_ap(*p_range, ctx),
        Command::Verify { suite, p_max, q_max } => cmd_verify(suite, *p_max, *q_max, ctx),
    }
}

fn field_of(q: u64, budget: &CountBudget) -> Result<Arc<FieldDescriptor>, Failure> {
    let (p, r) = prime_power(q).ok_or_else(|| Failure::Usage(format!("{q} is not a prime power")))?;
    Ok(Arc::new(FieldDescriptor::with_budget(p, r, budget.linear)?))
}

fn ints(v: &[u64]) -> Value {
    Value::Array(v.iter().map(|&x| Value::from(x)).collect())
}

fn cmd_field(q: Option<u64>, p: Option<u64>, r: Option<u32>, ctx: &mut Context) -> Result<Outcome, Failure> {
    let fd = match (q, p, r) {
        (Some(q), _, _) => field_of(q, &ctx.budget)?,
        (None, Some(p), Some(r)) => Arc::new(FieldDescriptor::with_budget(p, r, ctx.budget.linear)?),
        _ => return Err(Failure::Usage("give --q, or --p with --r".into())),
    };
    let mut table = Table::new("field", &["p", "r", "q", "modulus", "generator"]);
    table.push(vec![
        Value::from(fd.p()),
        Value::from(fd.r()),
        Value::from(fd.q()),
        ints(&fd.modulus()),
        ints(&fd.coefficients(fd.generator())),
    ]);
    Ok(Outcome { table, failed: false })
}

fn parse_curve(s: &str) -> Result<CurveModel, Failure> {
    s.parse::<CurveModel>().map_err(Failure::from)
}

fn cmd_count(curve: &str, q: u64, method: Method, ctx: &mut Context) -> Result<Outcome, Failure> {
    let model = parse_curve(curve)?;
    let fd = field_of(q, &ctx.budget)?;
    let mut table = Table::new("count", &["curve", "q", "method", "N"]);
    let mut values = Vec::new();
    if matches!(method, Method::Brute | Method::Both) {
        let rec = count_projective_brute(model, &fd, &ctx.budget)?;
        values.push((CountMethod::Brute, rec.count));
    }
    if matches!(method, Method::Formula | Method::Both) {
        let key = Cache::count_key(&model.to_string(), q);
        let cached = ctx.cache.count(&key).filter(|_| !ctx.cache.verify);
        let n = match cached {
            Some(n) => n,
            None => {
                let n = count_formula(model, &fd, &ctx.budget)?.count;
                ctx.cache.put_count(key, n)?;
                n
            }
        };
        values.push((CountMethod::Formula, n));
    }
    for (m, n) in &values {
        table.push(vec![
            Value::from(model.to_string()),
            Value::from(q),
            Value::from(m.to_string()),
            Value::from(*n),
        ]);
    }
    let failed = values.windows(2).any(|w| w[0].1 != w[1].1);
    Ok(Outcome { table, failed })
}

fn cmd_jacobi(q: u64, n: u32, i: i64, j: i64, ctx: &mut Context) -> Result<Outcome, Failure> {
    let fd = field_of(q, &ctx.budget)?;
    let chi = make_character(&fd, n, 1)?;
    let value = jacobi_sum(&chi.pow(i), &chi.pow(j))?;
    let mut table = Table::new("jacobi", &["q", "n", "i", "j", "coeffs", "value"]);
    table.push(vec![
        Value::from(q),
        Value::from(value.order()),
        Value::from(i),
        Value::from(j),
        big_array(value.coeffs()),
        Value::from(value.to_string()),
    ]);
    Ok(Outcome { table, failed: false })
}

fn decimal(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn klein_zeta(p: u64, ctx: &mut Context) -> Result<ZetaFunction, Failure> {
    let cached = ctx
        .cache
        .prime(p)
        .and_then(|e| e.numerator.clone())
        .filter(|_| !ctx.cache.verify);
    if let Some(coeffs) = cached {
        let coeffs = coeffs
            .iter()
            .map(|c| c.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Usage(format!("malformed cached numerator at p={p}: {e}")))?;
        return Ok(ZetaFunction::new(NumeratorPoly::new(p, 3, coeffs)?)?);
    }
    let zeta = zeta_klein(p, &ctx.budget)?;
    ctx.cache.merge_prime(
        p,
        PrimeEntry {
            numerator: Some(decimal(zeta.numerator().coeffs())),
            ..Default::default()
        },
    )?;
    Ok(zeta)
}

fn cmd_zeta(curve: &str, p: u64, ctx: &mut Context) -> Result<Outcome, Failure> {
    if !is_prime(p) {
        return Err(Failure::Usage(format!("{p} is not prime")));
    }
    let model = parse_curve(curve)?;
    let (r, zeta) = match model {
        CurveModel::Klein => {
            let (r, _) = klein_splitting_field(p)?;
            (r, klein_zeta(p, ctx)?)
        }
        CurveModel::Fermat(n) => {
            let r = multiplicative_order(p % n as u64, n as u64)
                .ok_or_else(|| Failure::Usage(format!("p = {p} divides the degree {n}")))?;
            let q = p
                .checked_pow(r)
                .filter(|&q| q <= ctx.budget.linear)
                .ok_or_else(|| Failure::Budget(format!("{p}^{r} exceeds the linear budget {}", ctx.budget.linear)))?;
            let fd = field_of(q, &ctx.budget)?;
            (r, zeta_fermat(&fd, n)?)
        }
        other => return Err(Failure::Usage(format!("zeta supports klein and fermat:N, not {other}"))),
    };
    let weil = zeta.weil();
    let counts = zeta.counts(2 * zeta.genus() as usize);
    let mut table = Table::new(
        "zeta",
        &[
            "curve",
            "p",
            "r",
            "numerator",
            "rh_max_residual",
            "functional_eq",
            "counts",
        ],
    );
    table.push(vec![
        Value::from(model.to_string()),
        Value::from(p),
        Value::from(r),
        big_array(zeta.numerator().coeffs()),
        Value::from(weil.rh_max_residual),
        Value::from(weil.functional_eq),
        big_array(&counts),
    ]);
    Ok(Outcome {
        table,
        failed: !weil.holds(),
    })
}

const OMEGA_POWERS: [&str; 3] = ["1", "ω", "ω²"];

fn cmd_ap((lo, hi): (u64, u64), ctx: &mut Context) -> Result<Outcome, Failure> {
    let mut table = Table::new("ap", &["p", "ap", "chi7", "verified", "note"]);
    let mut failed = false;
    for p in primes_up_to(hi).into_iter().filter(|&p| p >= lo) {
        if p == 7 {
            table.push(vec![
                Value::from(7),
                Value::Null,
                Value::Null,
                Value::Null,
                Value::from("ramified, excluded"),
            ]);
            continue;
        }
        let triple = ap_triple(p)?;
        let ap_vectors: Vec<Vec<String>> = triple.ap.iter().map(|a| decimal(a.coeffs())).collect();
        let cached = ctx
            .cache
            .prime(p)
            .and_then(|e| e.verified)
            .filter(|_| !ctx.cache.verify);
        let (verified, note) = match cached {
            Some(v) => (Some(v), ""),
            None => match verify_theorem1(p, &ctx.budget) {
                Ok(report) => (Some(report.holds()), ""),
                Err(Error::BudgetExceeded { .. }) => (None, "zeta beyond budget"),
                Err(e) => return Err(e.into()),
            },
        };
        ctx.cache.merge_prime(
            p,
            PrimeEntry {
                ap: Some(ap_vectors),
                verified,
                ..Default::default()
            },
        )?;
        failed |= verified == Some(false);
        table.push(vec![
            Value::from(p),
            big(&triple.ap0()),
            Value::from(OMEGA_POWERS[triple.nebentypus[2] as usize]),
            verified.map_or(Value::Null, Value::from),
            Value::from(note),
        ]);
    }
    Ok(Outcome { table, failed })
}

/// Cube root of the linear budget: the largest `p` whose `F_{p^3}` fits.
fn cube_root_floor(n: u64) -> u64 {
    let mut c = (n as f64).cbrt() as u64;
    while (c + 1).pow(3) <= n {
        c += 1;
    }
    while c.pow(3) > n {
        c -= 1;
    }
    c
}

pub fn suite_limits(p_max: Option<u64>, q_max: Option<u64>, budget: CountBudget) -> SuiteLimits {
    let mut limits = SuiteLimits {
        budget,
        ..SuiteLimits::default()
    };
    if let Some(p) = p_max {
        limits.theorem1_p_max = p;
        limits.theorem1_r3_p_max = p.min(cube_root_floor(budget.linear));
        limits.weil_klein_p_max = p;
        limits.hw_p_max = p;
        limits.fc3_p_max = p;
        limits.hecke_compat_p_max = p;
        limits.hecke_weight_p_max = p;
    }
    if let Some(q) = q_max {
        limits.count_q_max = q;
        limits.congruence_q_max = q;
        limits.weil_fc3_q_max = q;
        limits.fc3_q_max = q;
    }
    limits
}

fn cmd_verify(suite: &str, p_max: Option<u64>, q_max: Option<u64>, ctx: &mut Context) -> Result<Outcome, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>()?]
    };
    let limits = suite_limits(p_max, q_max, ctx.budget);
    let rows = run_suites(&suites, &limits);
    let mut table = Table::new("verify", &["suite", "check", "subject", "status", "detail"]);
    let (mut pass, mut fail, mut skip) = (0u64, 0u64, 0u64);
    for row in &rows {
        match row.status {
            Status::Pass => pass += 1,
            Status::Fail => fail += 1,
            Status::Skip => skip += 1,
        }
        table.push(vec![
            Value::from(row.suite),
            Value::from(row.check),
            Value::from(row.subject.clone()),
            Value::from(row.status.to_string()),
            Value::from(row.detail.clone()),
        ]);
    }
    let mut summary = Map::new();
    summary.insert("fail".into(), Value::from(fail));
    summary.insert("pass".into(), Value::from(pass));
    summary.insert("skip".into(), Value::from(skip));
    table.summary = Some(summary);
    Ok(Outcome {
        table,
        failed: fail > 0,
    })
}
