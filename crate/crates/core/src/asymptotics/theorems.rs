//! Finite-size checks of the norm expansion and of the `n^κ G^{√n} F^{n²}`
//! law for `Z_n` on the critical line, both driven by exact norm tables.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{ln_scaled_exact, norms_critical_exact, zn_from_table_exact};
use crate::model::r_from_alpha;
use crate::numerics::fit::{least_squares, linear_fit, loglog_slope};
use crate::numerics::{zeta_three_halves, BigReal, PrecisionContext, Real};

use super::vanlessen::ln_norm_expansion;

/// Precision used when converting exact rationals to logarithms.
const LN_BITS: u32 = 160;

/// Regressions ignore this many of the smallest grid points.
pub const DISCARD: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub index: usize,
    pub lhs: f64,
    pub expansion: f64,
    pub residual: f64,
    pub residual_scaled: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub alpha: f64,
    /// The `ζ(3/2)` value shared by every row's expansion.
    pub zeta: f64,
    pub rows: Vec<ReportRow>,
    /// Slope of `ln|residual|` against `ln k`; present only with at least 8 rows.
    pub slope: Option<f64>,
}

impl TheoremReport {
    /// Slope of `ln|residual_scaled|` against `ln k` over the fitted rows, and
    /// the max/min ratio of `|residual_scaled|` there. Both near their neutral
    /// values (0 and 1) mean the scaled residual shows no trend.
    pub fn scaled_trend(&self) -> Result<(f64, f64)> {
        let rows = self.fitted_rows();
        let x: Vec<f64> = rows.iter().map(|r| r.index as f64).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.residual_scaled).collect();
        let slope = loglog_slope(&x, &y)?;
        let (lo, hi) = y.iter().fold((f64::INFINITY, 0f64), |(lo, hi), v| (lo.min(v.abs()), hi.max(v.abs())));
        Ok((slope, hi / lo))
    }

    pub fn fitted_rows(&self) -> &[ReportRow] {
        &self.rows[DISCARD.min(self.rows.len())..]
    }
}

/// `kmin, kmin·2^{1/4}, kmin·2^{1/2}, ...` rounded, up to and including `kmax`.
pub fn quarter_octave_grid(kmin: usize, kmax: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut j = 0;
    loop {
        let k = libm::round(kmin as f64 * libm::exp2(j as f64 / 4.0)) as usize;
        if k > kmax {
            break;
        }
        if out.last() != Some(&k) {
            out.push(k);
        }
        j += 1;
    }
    if out.last() != Some(&kmax) {
        out.push(kmax);
    }
    out
}

fn ln_rational(x: &BigRational) -> f64 {
    BigReal::from_rational(x, LN_BITS).ln().to_f64()
}

fn alpha_f64(alpha: &BigRational) -> f64 {
    BigReal::from_rational(alpha, 64).to_f64()
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    if *alpha <= BigRational::one() {
        return Err(Error::Domain(alloc::format!("alpha must exceed 1, got {alpha}")));
    }
    Ok(())
}

/// Residuals `ln(h_k/(k!)²) + ζ(3/2)/(2√(π(r-1)k)) - 1/(4k)` from exact norms.
pub fn theorem1_report(kmin: usize, kmax: usize, alpha: &BigRational, ctx: &PrecisionContext) -> Result<TheoremReport> {
    check_alpha(alpha)?;
    if kmin == 0 || kmin > kmax {
        return Err(Error::Domain(alloc::format!("need 1 <= kmin <= kmax, got {kmin}, {kmax}")));
    }
    let r = r_from_alpha(alpha);
    let rf = BigReal::from_rational(&r, 64).to_f64();
    let table = norms_critical_exact(kmax + 1, &r)?;
    let zeta = zeta_three_halves(ctx).value.to_f64();
    let rows: Vec<ReportRow> = quarter_octave_grid(kmin, kmax)
        .into_iter()
        .map(|k| {
            let lhs = ln_scaled_exact(&table, k, LN_BITS);
            let expansion = ln_norm_expansion(k as f64, rf, zeta);
            let residual = lhs - expansion;
            ReportRow { index: k, lhs, expansion, residual, residual_scaled: residual * libm::pow(k as f64, 1.5) }
        })
        .collect();
    let mut report = TheoremReport { alpha: alpha_f64(alpha), zeta, rows, slope: None };
    if report.rows.len() >= 8 {
        let fit = report.fitted_rows();
        let x: Vec<f64> = fit.iter().map(|r| r.index as f64).collect();
        let y: Vec<f64> = fit.iter().map(|r| r.residual).collect();
        report.slope = Some(loglog_slope(&x, &y)?);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem2Row {
    pub n: usize,
    pub ln_z: f64,
    /// `ln Z_n - n² ln F - √n ln G - (1/4) ln n` with the predicted `G`.
    pub s_n: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem2Fit {
    pub alpha: f64,
    pub kappa: f64,
    pub ln_g: f64,
    /// `ln((α+1)/2)`, held fixed in the fit.
    pub ln_f: f64,
    pub c0: f64,
    /// `-ζ(3/2)√((α-1)/(2π))`.
    pub ln_g_predicted: f64,
    /// First `n` of the least-squares window.
    pub fit_from: usize,
    pub rows: Vec<Theorem2Row>,
    /// `(n, |S_n - S_{2n}|)` for every `n` with `2n <= nmax`.
    pub increments: Vec<(usize, f64)>,
    /// Log-log slope of the increments, smallest `n` values discarded.
    pub increment_slope: f64,
}

/// Smallest `n` used in the least-squares fit.
pub const FIT_FROM: usize = 10;

/// Fits `ln Z_n - n² ln F ≈ √n ln G + κ ln n + C_0` over `n ∈ [10, nmax]`.
pub fn theorem2_fit(nmax: usize, alpha: &BigRational, ctx: &PrecisionContext) -> Result<Theorem2Fit> {
    check_alpha(alpha)?;
    let from = FIT_FROM.min(nmax);
    if nmax < FIT_FROM + 2 {
        return Err(Error::Fit { needed: FIT_FROM + 2, got: nmax });
    }
    let table = norms_critical_exact(nmax, &r_from_alpha(alpha))?;
    let af = alpha_f64(alpha);
    let ln_f = ln_rational(&((alpha + BigRational::one()) / BigRational::from_integer(BigInt::from(2))));
    let zeta = zeta_three_halves(ctx).value.to_f64();
    let ln_g_predicted = -zeta * libm::sqrt((af - 1.0) / (2.0 * core::f64::consts::PI));

    let mut rows = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let ln_z = ln_rational(&zn_from_table_exact(&table, n, alpha));
        let nf = n as f64;
        let s_n = ln_z - nf * nf * ln_f - libm::sqrt(nf) * ln_g_predicted - 0.25 * libm::log(nf);
        rows.push(Theorem2Row { n, ln_z, s_n });
    }

    let window = &rows[from - 1..];
    let design: Vec<Vec<f64>> = window
        .iter()
        .map(|r| {
            let nf = r.n as f64;
            alloc::vec![libm::sqrt(nf), libm::log(nf), 1.0]
        })
        .collect();
    let y: Vec<f64> = window.iter().map(|r| r.ln_z - (r.n * r.n) as f64 * ln_f).collect();
    let c = least_squares(&design, &y)?;

    let increments: Vec<(usize, f64)> =
        (1..=nmax / 2).map(|n| (n, (rows[n - 1].s_n - rows[2 * n - 1].s_n).abs())).collect();
    let used = &increments[DISCARD.min(increments.len())..];
    let lx: Vec<f64> = used.iter().map(|(n, _)| libm::log(*n as f64)).collect();
    let ly: Vec<f64> = used.iter().map(|(_, d)| libm::log(*d)).collect();
    let increment_slope = linear_fit(&lx, &ly)?.0;

    Ok(Theorem2Fit {
        alpha: af,
        kappa: c[1],
        ln_g: c[0],
        ln_f,
        c0: c[2],
        ln_g_predicted,
        fit_from: from,
        rows,
        increments,
        increment_slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_dyadic_with_quarter_steps() {
        let g = quarter_octave_grid(16, 128);
        assert_eq!(g.first(), Some(&16));
        assert_eq!(g.last(), Some(&128));
        assert!(g.contains(&32) && g.contains(&64));
        assert_eq!(g.len(), 13);
    }

    #[test]
    fn small_report_has_no_slope() {
        let ctx = PrecisionContext::default();
        let rep = theorem1_report(4, 8, &BigRational::from_integer(3.into()), &ctx).unwrap();
        assert!(rep.rows.len() < 8 && rep.slope.is_none());
        for row in &rep.rows {
            assert!((row.residual - (row.lhs - row.expansion)).abs() < 1e-15);
        }
    }
}
