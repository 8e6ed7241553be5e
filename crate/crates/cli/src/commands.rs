use std::fmt;
use std::io;

use dwbc_core::asymptotics::rows::{mrs_row, thm1_rows, thm2_rows, MRS_COLUMNS, THM1_COLUMNS, THM2_COLUMNS};
use dwbc_core::asymptotics::{h_vanlessen, theorem1_report, theorem2_fit};
use dwbc_core::exact::{norm_rows_exact, norms_critical_exact, zn_critical_exact, zn_ferro};
use dwbc_core::lattice::{enumerate_configs, partition_brute_exact, MAX_N};
use dwbc_core::model::{classify_exact, delta_exact, r_from_alpha, VertexWeights};
use dwbc_core::numerics::{BigReal, PrecisionContext, Real};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::output::Table;
use crate::parse::{rational, show};
use crate::{Global, Mode};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(dwbc_core::Error),
    Invariant(String),
    Io(io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Invariant(m) => write!(f, "invariant check failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<dwbc_core::Error> for CliError {
    fn from(e: dwbc_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult = Result<(), CliError>;

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn arg(name: &str, s: &str) -> Result<BigRational, CliError> {
    rational(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn alpha_arg(s: &str) -> Result<BigRational, CliError> {
    let a = arg("alpha", s)?;
    if a <= BigRational::one() {
        return Err(usage(format!("--alpha must exceed 1, got {s}")));
    }
    Ok(a)
}

pub fn context(g: &Global) -> Result<PrecisionContext, CliError> {
    PrecisionContext::new(g.bits, g.tol, 40).map_err(|e| usage(e.to_string()))
}

fn emit(g: &Global, t: &Table) -> CliResult {
    Ok(t.emit(g.format, g.output.as_deref())?)
}

fn exact_weights(a: &str, b: &str, c: &str) -> Result<VertexWeights<BigRational>, CliError> {
    VertexWeights::exact(arg("a", a)?, arg("b", b)?, arg("c", c)?).map_err(|e| usage(e.to_string()))
}

fn check_n(n: usize, max: usize) -> CliResult {
    if n == 0 || n > max {
        return Err(usage(format!("--n must lie in 1..={max}, got {n}")));
    }
    Ok(())
}

pub fn enumerate(g: &Global, n: usize, [a, b, c]: [&str; 3], dump: bool) -> CliResult {
    check_n(n, MAX_N)?;
    let w = exact_weights(a, b, c)?;
    if dump {
        let configs: Vec<serde_json::Value> = enumerate_configs(n)?
            .map(|cfg| {
                let types: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| cfg.at(i, j) as usize).collect()).collect();
                serde_json::json!({ "types": types, "weight": show(&cfg.weight_exact(&w)) })
            })
            .collect();
        let doc = serde_json::json!({ "n": n, "configurations": configs });
        let text = serde_json::to_string_pretty(&doc).map_err(io::Error::from)? + "\n";
        return match &g.output {
            Some(p) => Ok(std::fs::write(p, text)?),
            None => {
                print!("{text}");
                Ok(())
            }
        };
    }
    let mut count = 0u64;
    let mut total = BigRational::from_integer(0.into());
    for cfg in enumerate_configs(n)? {
        count += 1;
        total += cfg.weight_exact(&w);
    }
    let mut t = Table::new(&["n", "configurations", "Z_n"]);
    t.meta("a", show(&w.a)).meta("b", show(&w.b)).meta("c", show(&w.c));
    t.meta("delta", show(&delta_exact(&w))).meta("phase", classify_exact(&w).phase.label());
    t.push(vec![n.to_string(), count.to_string(), show(&total)]);
    emit(g, &t)
}

pub fn zn(
    g: &Global,
    mode: Mode,
    n: usize,
    alpha: Option<&str>,
    ferro: Option<(f64, f64)>,
    abc: [Option<String>; 3],
) -> CliResult {
    let mut t = Table::new(&["n", "Z_n"]);
    let value = match mode {
        Mode::Critical => {
            check_n(n, usize::MAX)?;
            let a = alpha_arg(alpha.ok_or_else(|| usage("critical mode needs --alpha"))?)?;
            t.meta("mode", "critical").meta("alpha", show(&a));
            show(&zn_critical_exact(n, &a)?.value)
        }
        Mode::Ferro => {
            check_n(n, usize::MAX)?;
            let (tt, gamma) = ferro.ok_or_else(|| usage("ferro mode needs --t and --gamma"))?;
            if !(gamma > 0.0 && gamma < tt) {
                return Err(usage(format!("ferro mode needs 0 < gamma < t, got t={tt}, gamma={gamma}")));
            }
            let ctx = context(g)?;
            t.meta("mode", "ferro").meta("t", tt).meta("gamma", gamma).meta("normalization", "c=1");
            zn_ferro(n, tt, gamma, &ctx)?.value.to_decimal()
        }
        Mode::Brute => {
            check_n(n, MAX_N)?;
            let [a, b, c] = abc.map(|x| x.unwrap_or_else(|| "1".into()));
            let w = exact_weights(&a, &b, &c)?;
            t.meta("mode", "brute").meta("a", show(&w.a)).meta("b", show(&w.b)).meta("c", show(&w.c));
            show(&partition_brute_exact(n, &w)?)
        }
    };
    t.push(vec![n.to_string(), value]);
    emit(g, &t)
}

pub fn hk(g: &Global, alpha: &str, kmax: usize) -> CliResult {
    let a = alpha_arg(alpha)?;
    let r = r_from_alpha(&a);
    let table = norms_critical_exact(kmax + 1, &r)?;
    let mut t = Table::new(&["k", "h_k", "ln_h_scaled"]);
    t.meta("alpha", show(&a)).meta("r", show(&r)).meta("bits", g.bits);
    for row in norm_rows_exact(&table, g.bits) {
        t.push(row.to_vec());
    }
    emit(g, &t)
}

fn mrs_rows<R: Real>(
    like: &R,
    a: &BigRational,
    ks: &[usize],
    exact: bool,
    ctx: &PrecisionContext,
) -> Result<Vec<Vec<String>>, CliError> {
    let alpha = R::from_rational(a, like.bits());
    let table = match exact {
        true => Some(norms_critical_exact(ks.iter().max().unwrap() + 1, &r_from_alpha(a))?),
        false => None,
    };
    let rows: Result<Vec<_>, dwbc_core::Error> = ks
        .par_iter()
        .map(|&k| {
            let (s, v) = h_vanlessen(k, &alpha, ctx)?;
            Ok(mrs_row(&s, &v, table.as_ref().map(|t| &t.h[k])))
        })
        .collect();
    Ok(rows?)
}

pub fn mrs(g: &Global, alpha: &str, ks: &[usize], exact: bool) -> CliResult {
    let a = alpha_arg(alpha)?;
    if ks.iter().any(|&k| k < 2) {
        return Err(usage("--k values must be at least 2"));
    }
    let ctx = context(g)?;
    let rows = if g.bits == 53 {
        mrs_rows(&0f64, &a, ks, exact, &ctx)?
    } else {
        mrs_rows(&BigReal::from_f64(0.0, g.bits), &a, ks, exact, &ctx)?
    };
    let mut t = Table::new(&MRS_COLUMNS);
    t.meta("alpha", show(&a))
        .meta("r", show(&r_from_alpha(&a)))
        .meta("bits", g.bits)
        .meta("tol", format!("{:e}", g.tol));
    for row in rows {
        t.push(row);
    }
    emit(g, &t)
}

pub fn thm1(g: &Global, alpha: &str, kmin: usize, kmax: usize) -> CliResult {
    let a = alpha_arg(alpha)?;
    if kmin == 0 || kmin > kmax {
        return Err(usage(format!("need 1 <= kmin <= kmax, got {kmin}, {kmax}")));
    }
    let report = theorem1_report(kmin, kmax, &a, &context(g)?)?;
    let mut t = Table::new(&THM1_COLUMNS);
    t.meta("alpha", show(&a)).meta("zeta", report.zeta).meta("discard", dwbc_core::asymptotics::theorems::DISCARD);
    t.meta("slope", report.slope.map(|s| s.to_string()).unwrap_or_default());
    if report.fitted_rows().len() >= 2 {
        let (s, ratio) = report.scaled_trend()?;
        t.meta("scaled_slope", s).meta("scaled_max_over_min", ratio);
    }
    for row in thm1_rows(&report) {
        t.push(row);
    }
    emit(g, &t)
}

pub fn thm2(g: &Global, alpha: &str, nmax: usize) -> CliResult {
    let a = alpha_arg(alpha)?;
    let fit = theorem2_fit(nmax, &a, &context(g)?)?;
    let mut t = Table::new(&THM2_COLUMNS);
    t.meta("alpha", show(&a))
        .meta("kappa", fit.kappa)
        .meta("lnG", fit.ln_g)
        .meta("lnG_predicted", fit.ln_g_predicted)
        .meta("lnF", fit.ln_f)
        .meta("C0", fit.c0)
        .meta("fit_from", fit.fit_from)
        .meta("increment_slope", fit.increment_slope);
    for row in thm2_rows(&fit) {
        t.push(row);
    }
    emit(g, &t)
}
