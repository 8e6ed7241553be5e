//! Table rows for the `mrs`, `thm1` and `thm2` outputs, as decimal strings.

use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::numerics::{BigReal, Real};

use super::theorems::{Theorem2Fit, TheoremReport};
use super::vanlessen::{MrsSolution, VanlessenEstimate};

pub const MRS_COLUMNS: [&str; 11] =
    ["k", "b_k", "beta_k", "a_k", "l_k", "q0", "q1", "q1prime", "h_vanlessen", "h_exact", "rel_err"];
pub const THM1_COLUMNS: [&str; 5] = ["k", "lhs", "expansion", "residual", "residual_scaled"];
pub const THM2_COLUMNS: [&str; 3] = ["n", "lnZ", "S_n"];

/// Bits carried when turning a logarithm back into a (very large) value.
const EXP_BITS: u32 = 128;

/// One `mrs` row. `h_exact` is the exact norm when available; the last two
/// columns are then filled, otherwise left empty.
pub fn mrs_row<R: Real>(s: &MrsSolution<R>, v: &VanlessenEstimate<R>, h_exact: Option<&BigRational>) -> Vec<String> {
    let h_v = BigReal::from_f64(v.ln_h.to_f64(), EXP_BITS).exp();
    let (exact, rel) = match h_exact {
        Some(h) => {
            let hx = BigReal::from_rational(h, EXP_BITS);
            let ln_ratio = v.ln_h.to_f64() - hx.ln().to_f64();
            (hx.to_decimal(), Real::to_decimal(&libm::expm1(ln_ratio)))
        }
        None => (String::new(), String::new()),
    };
    alloc::vec![
        alloc::format!("{}", s.k),
        s.b_k.to_decimal(),
        s.beta_k.to_decimal(),
        s.a_k.to_decimal(),
        s.l_k.to_decimal(),
        s.q0.to_decimal(),
        s.q1.to_decimal(),
        s.q1prime.to_decimal(),
        h_v.to_decimal(),
        exact,
        rel,
    ]
}

pub fn thm1_rows(report: &TheoremReport) -> Vec<Vec<String>> {
    report
        .rows
        .iter()
        .map(|r| {
            alloc::vec![
                alloc::format!("{}", r.index),
                r.lhs.to_decimal(),
                r.expansion.to_decimal(),
                r.residual.to_decimal(),
                r.residual_scaled.to_decimal(),
            ]
        })
        .collect()
}

pub fn thm2_rows(fit: &Theorem2Fit) -> Vec<Vec<String>> {
    fit.rows.iter().map(|r| alloc::vec![alloc::format!("{}", r.n), r.ln_z.to_decimal(), r.s_n.to_decimal()]).collect()
}
