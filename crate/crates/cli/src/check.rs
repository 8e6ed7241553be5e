//! The bundled invariant suite behind `dwbc check`.
//!
//! Each item runs on its own thread under a time limit and reports a short
//! detail string. Numeric errors inside an item count as failures.

use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use dwbc_core::asymptotics::{
    ak_eval, closed_form_checks, lagrange_multiplier, solve_bk, EquilibriumDensity, QRoute, QkEvaluator,
};
use dwbc_core::exact::{zn_critical_exact, zn_ferro};
use dwbc_core::lattice::{enumerate_configs, partition_brute, partition_brute_exact, VertexType};
use dwbc_core::model::{FerroParam, VertexWeights};
use dwbc_core::numerics::{BigReal, PrecisionContext, Real};
use num_rational::BigRational;

use crate::commands::{CliError, CliResult};
use crate::output::Table;
use crate::Global;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn num<T>(r: dwbc_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn vertex_convention() -> Outcome {
    let one: Vec<_> = num(enumerate_configs(1))?.collect();
    if one.len() != 1 || one[0].at(0, 0) != VertexType::T5 {
        return Err("n=1 is not a single type-5 vertex".into());
    }
    let (a, b, c) = (q(2, 1), q(3, 1), q(5, 1));
    let w = num(VertexWeights::exact(a.clone(), b.clone(), c.clone()))?;
    let z2 = num(partition_brute_exact(2, &w))?;
    ensure(z2 == &c * &c * (&a * &a + &b * &b), format!("Z_2 = {z2}"))
}

fn asm_counts() -> Outcome {
    let w = num(VertexWeights::exact(q(1, 1), q(1, 1), q(1, 1)))?;
    let got: Vec<BigRational> =
        (1..=5).map(|n| partition_brute_exact(n, &w)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let want: Vec<BigRational> = [1, 2, 7, 42, 429].iter().map(|&v| q(v, 1)).collect();
    ensure(got == want, format!("{:?}", got.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn free_fermion() -> Outcome {
    let w = num(VertexWeights::exact(q(3, 5), q(4, 5), q(1, 1)))?;
    for n in 1..=5 {
        let z = num(partition_brute_exact(n, &w))?;
        if z != q(1, 1) {
            return Err(format!("n={n}: Z = {z}"));
        }
    }
    Ok("Z_n = 1 for n <= 5 at (3/5, 4/5, 1)".into())
}

fn critical_route() -> Outcome {
    for alpha in [q(2, 1), q(3, 1)] {
        let half = q(1, 2);
        let w = num(VertexWeights::exact((&alpha - q(1, 1)) * &half, (&alpha + q(1, 1)) * &half, q(1, 1)))?;
        for n in 1..=5 {
            let op = num(zn_critical_exact(n, &alpha))?.value;
            let brute = num(partition_brute_exact(n, &w))?;
            if op != brute {
                return Err(format!("alpha={alpha}, n={n}: {op} vs {brute}"));
            }
        }
    }
    ensure(num(zn_critical_exact(3, &q(3, 1)))?.value == q(109, 1), "Z_3(alpha=3) = 109".into())
}

fn ferro_route(ctx: &PrecisionContext) -> Outcome {
    let mut worst = 0f64;
    for (t, g) in [(1.5, 0.5), (1.0, 0.3), (2.0, 0.7)] {
        for n in 1..=5 {
            let z = num(zn_ferro(n, t, g, ctx))?.value;
            let bits = z.bits();
            let p = num(FerroParam::new(BigReal::from_f64(t, bits), BigReal::from_f64(g, bits)))?;
            let brute = num(partition_brute(n, &p.weights().reduced()))?;
            worst = worst.max((z / brute - BigReal::from_f64(1.0, bits)).abs().to_f64());
        }
    }
    ensure(worst <= 1e-30, format!("max relative deviation {worst:e}"))
}

fn moment_identity(ctx: &PrecisionContext) -> Outcome {
    let mut worst = 0f64;
    for k in [10usize, 50] {
        let (b, _) = num(solve_bk(k, &2.0, ctx))?;
        let a = num(ak_eval(k, &2.0, &b, ctx))?;
        if !(a > 0.0) {
            return Err(format!("k={k}: a_k = {a}"));
        }
        worst = worst.max((a - (2.0 * b - 2.0 + 1.0 / k as f64)).abs());
    }
    ensure(worst <= 10.0 * ctx.quad_tol, format!("max defect {worst:e}"))
}

fn equilibrium(ctx: &PrecisionContext) -> Outcome {
    let k = 50;
    let q = num(QkEvaluator::solve(k, &2.0, ctx))?;
    let a = num(ak_eval(k, &2.0, &q.b, ctx))?;
    let l = num(lagrange_multiplier(&q, &a, ctx))?.l;
    let psi = EquilibriumDensity::new(q);
    let mass = num(psi.mass(ctx))?.value - 1.0;
    let mut worst = 0f64;
    for x in [0.25, 0.5, 0.75] {
        worst = worst.max(num(psi.euler_lagrange(&x, &l, ctx))?.abs());
    }
    let ok = mass.abs() <= ctx.quad_tol && worst <= 50.0 * ctx.quad_tol;
    ensure(ok, format!("mass-1 {mass:e}, max |E| {worst:e}"))
}

fn closed_forms(ctx: &PrecisionContext) -> Outcome {
    let worst = num(closed_form_checks(&0f64, ctx))?.iter().map(|(n, c)| (n - c).abs()).fold(0.0, f64::max);
    ensure(worst <= 10.0 * ctx.quad_tol, format!("max deviation {worst:e}"))
}

fn q_routes(ctx: &PrecisionContext) -> Outcome {
    let q = num(QkEvaluator::solve(50, &2.0, ctx))?;
    let mut worst = 0f64;
    for x in [1.5, 2.0, 4.0] {
        let c = num(q.q_real(&x, QRoute::Contour))?;
        let r = num(q.q_real(&x, QRoute::Real))?;
        worst = worst.max((c - r).abs() / c.abs());
    }
    ensure(worst <= 1e3 * ctx.quad_tol, format!("max relative gap {worst:e}"))
}

fn run_item(f: Box<dyn FnOnce() -> Outcome + Send>, limit: Duration) -> Outcome {
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(f());
    });
    match rx.recv_timeout(limit) {
        Ok(o) => o,
        Err(mpsc::RecvTimeoutError::Timeout) => Err(format!("exceeded {} s", limit.as_secs())),
        Err(mpsc::RecvTimeoutError::Disconnected) => Err("item panicked".into()),
    }
}

pub fn run(g: &Global, timeout: u64) -> CliResult {
    let ctx = PrecisionContext::new(53, g.tol, 40).map_err(|e| CliError::Usage(e.to_string()))?;
    let items: Vec<(&str, Box<dyn FnOnce() -> Outcome + Send>)> = vec![
        ("vertex_convention", Box::new(vertex_convention)),
        ("asm_counts", Box::new(asm_counts)),
        ("free_fermion", Box::new(free_fermion)),
        ("critical_route_exact", Box::new(critical_route)),
        ("ferro_route", Box::new(move || ferro_route(&ctx))),
        ("moment_identity", Box::new(move || moment_identity(&ctx))),
        ("equilibrium_measure", Box::new(move || equilibrium(&ctx))),
        ("lagrange_closed_forms", Box::new(move || closed_forms(&ctx))),
        ("q_routes_agree", Box::new(move || q_routes(&ctx))),
    ];
    let limit = Duration::from_secs(timeout);
    let mut t = Table::new(&["item", "status", "detail"]);
    let mut failed = Vec::new();
    for (name, f) in items {
        let start = Instant::now();
        let outcome = run_item(f, limit);
        let secs = format!("{:.2}", start.elapsed().as_secs_f64());
        let (status, detail) = match outcome {
            Ok(d) => ("pass", d),
            Err(d) => {
                failed.push(name);
                ("fail", d)
            }
        };
        eprintln!("{status} {name} ({secs} s): {detail}");
        t.push(vec![name.into(), status.into(), detail]);
    }
    t.meta("tol", format!("{:e}", g.tol)).meta("failed", failed.len());
    t.emit(g.format, g.output.as_deref())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failed.join(", ")))
    }
}
