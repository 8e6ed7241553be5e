//! Finite-n partition functions through orthogonal-polynomial norms.
//!
//! Two weights are covered. On the critical line the weight is
//! `w(x) = e^{-x} - e^{-rx}` on `(0, ∞)` with moments `μ_j = j!(1 - r^{-(j+1)})`;
//! in the ferroelectric phase it is the discrete weight
//! `w(l) = e^{-2(t-γ)l} - e^{-2(t+γ)l}` on `l = 1, 2, ...` with moments
//! `μ_j = Li_{-j}(q₋) - Li_{-j}(q₊)`, `q∓ = e^{-2(t∓γ)}`.
//!
//! Norms come from Hankel minors, `h_k = D_{k+1}/D_k`. The factorials are
//! pulled out first: with `ν_j = μ_j / j!` the matrix `C(i+j, i) ν_{i+j}` has
//! leading-minor ratios `h_k / (k!)²` directly, and its entries stay small.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{FerroParam, VertexWeights};
use crate::numerics::linalg::{determinant, elimination_pivots, leading_minors_bareiss};
use crate::numerics::{BigReal, PrecisionContext, Real};

/// Which weight a moment or norm table belongs to.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightMode {
    Critical { r: f64 },
    Discrete { t: f64, gamma: f64 },
}

impl WeightMode {
    pub fn describe(&self) -> String {
        match self {
            WeightMode::Critical { r } => alloc::format!("critical r={r}"),
            WeightMode::Discrete { t, gamma } => alloc::format!("discrete t={t} gamma={gamma}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MomentTable<T> {
    pub mode: WeightMode,
    /// `μ_0, ..., μ_{jmax}`.
    pub moments: Vec<T>,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct NormTable<T> {
    pub mode: WeightMode,
    /// `h_0, ..., h_{k-1}`.
    pub h: Vec<T>,
    /// `h_k / (k!)²`.
    pub scaled: Vec<T>,
    /// `D_0 = 1, D_1, ..., D_k`.
    pub hankel_minors: Vec<T>,
    /// Precision of the final pass; 0 for exact tables.
    pub bits: u32,
}

impl<T> NormTable<T> {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Brute,
    IkDiscrete,
    CriticalOp,
}

#[derive(Clone, Debug)]
pub struct ZnValue<T> {
    pub n: usize,
    pub value: T,
    pub route: Route,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = alloc::vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

fn check_r<T: PartialOrd + core::fmt::Display>(r: &T, one: &T) -> Result<()> {
    if *r <= *one {
        return Err(Error::Domain(alloc::format!("r must exceed 1, got {r}")));
    }
    Ok(())
}

/// `μ_j = j!(1 - r^{-(j+1)})` exactly.
pub fn moments_critical_exact(jmax: usize, r: &BigRational) -> Result<MomentTable<BigRational>> {
    check_r(r, &BigRational::one())?;
    let inv = r.recip();
    let mut pow = inv.clone();
    let mut fact = BigInt::one();
    let mut moments = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        if j > 0 {
            fact *= BigInt::from(j);
        }
        moments.push(BigRational::from_integer(fact.clone()) * (BigRational::one() - &pow));
        pow *= &inv;
    }
    let rf = num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN);
    Ok(MomentTable { mode: WeightMode::Critical { r: rf }, moments, exact: true })
}

/// `μ_j = j!(1 - r^{-(j+1)})` at the precision of `r`.
pub fn moments_critical<R: Real>(jmax: usize, r: &R) -> Result<MomentTable<R>> {
    check_r(r, &r.one_like())?;
    let inv = r.recip();
    let mut pow = inv.clone();
    let mut fact = r.one_like();
    let mut moments = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        if j > 0 {
            fact = fact * r.int(j as i64);
        }
        moments.push(fact.clone() * (r.one_like() - pow.clone()));
        pow = pow * inv.clone();
    }
    Ok(MomentTable { mode: WeightMode::Critical { r: r.to_f64() }, moments, exact: false })
}

/// Coefficients of `N_j` with `Li_{-j}(q) = N_j(q) / (1-q)^{j+1}`; these are
/// the Eulerian polynomials times `q`.
pub fn polylog_numerators(jmax: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(jmax + 1);
    out.push(alloc::vec![BigInt::zero(), BigInt::one()]);
    for j in 0..jmax {
        let c = &out[j];
        // N_{j+1} = q [N_j' (1 - q) + (j + 1) N_j]
        let deg = c.len() - 1;
        let mut inner = alloc::vec![BigInt::zero(); deg + 1];
        for i in 0..deg {
            let d = &c[i + 1] * BigInt::from(i + 1);
            inner[i] += &d;
            inner[i + 1] -= &d;
        }
        for i in 0..=deg {
            inner[i] += &c[i] * BigInt::from(j + 1);
        }
        let mut next = alloc::vec![BigInt::zero()];
        next.extend(inner);
        while next.len() > 2 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        out.push(next);
    }
    out
}

/// Discrete-weight moments from the closed polylogarithm forms.
pub fn moments_discrete<R: Real>(jmax: usize, p: &FerroParam<R>) -> Result<MomentTable<R>> {
    let p = FerroParam::new(p.t.clone(), p.gamma.clone())?;
    let two = p.t.lit(2.0);
    let em = -((p.t.clone() - p.gamma.clone()) * two.clone());
    let ep = -((p.t.clone() + p.gamma.clone()) * two);
    let (qm, qp) = (em.exp(), ep.exp());
    // 1 - q without cancellation.
    let (om, op) = (-em.expm1(), -ep.expm1());
    let nums = polylog_numerators(jmax);
    let bits = p.t.bits();
    let horner = |c: &[BigInt], q: &R| -> R {
        let mut acc = q.zero_like();
        for coeff in c.iter().rev() {
            acc = acc * q.clone() + R::from_bigint(coeff, bits);
        }
        acc
    };
    let mut moments = Vec::with_capacity(jmax + 1);
    let (mut pm, mut pp) = (om.clone(), op.clone());
    for c in nums.iter() {
        moments.push(horner(c, &qm) / pm.clone() - horner(c, &qp) / pp.clone());
        pm = pm * om.clone();
        pp = pp * op.clone();
    }
    let mode = WeightMode::Discrete { t: p.t.to_f64(), gamma: p.gamma.to_f64() };
    Ok(MomentTable { mode, moments, exact: false })
}

fn need_moments<T>(m: &MomentTable<T>, kmax: usize) -> Result<()> {
    if kmax == 0 || m.moments.len() < 2 * kmax - 1 {
        return Err(Error::Domain(alloc::format!(
            "{} norms need {} moments, table has {}",
            kmax,
            2 * kmax.max(1) - 1,
            m.moments.len()
        )));
    }
    Ok(())
}

/// Exact norms `h_0..h_{kmax-1}` from rational moments by integer Bareiss
/// elimination on the factorial-reduced Hankel matrix.
pub fn norms_exact(m: &MomentTable<BigRational>, kmax: usize) -> Result<NormTable<BigRational>> {
    need_moments(m, kmax)?;
    let jmax = 2 * kmax - 2;
    let mut nu = Vec::with_capacity(jmax + 1);
    let mut fact = BigInt::one();
    for j in 0..=jmax {
        if j > 0 {
            fact *= BigInt::from(j);
        }
        nu.push(&m.moments[j] / BigRational::from_integer(fact.clone()));
    }
    // Prefer a scaling d^{j+1} ν_j ∈ Z (true for the critical weight with
    // d the denominator of r); otherwise clear all denominators at once.
    let d = nu[0].denom().clone();
    let mut dpow = d.clone();
    let mut geometric = Vec::with_capacity(jmax + 1);
    for v in &nu {
        let s = v * BigRational::from_integer(dpow.clone());
        if !s.is_integer() {
            geometric.clear();
            break;
        }
        geometric.push(s.to_integer());
        dpow *= &d;
    }
    let (ints, scale_step, lcm) = if geometric.len() == nu.len() {
        (geometric, Some(d), BigInt::one())
    } else {
        let l = nu.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints = nu.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
        (ints, None, l)
    };
    let binom = binomial_rows(jmax);
    let matrix: Vec<Vec<BigInt>> =
        (0..kmax).map(|i| (0..kmax).map(|j| &binom[i + j][i] * &ints[i + j]).collect()).collect();
    let minors = leading_minors_bareiss(matrix).map_err(|_| Error::PrecisionExhausted {
        stage: "exact Hankel minors",
        bits: 0,
        last: 0.0,
        previous: 0.0,
    })?;
    let mut scaled = Vec::with_capacity(kmax);
    let mut prev = BigInt::one();
    for (k, dk) in minors.iter().enumerate() {
        let den = match &scale_step {
            Some(d) => &prev * num_traits::pow(d.clone(), 2 * k + 1),
            None => &prev * &lcm,
        };
        let ratio = BigRational::new(dk.clone(), den);
        if !ratio.is_positive() {
            return Err(Error::PrecisionExhausted { stage: "exact Hankel minors", bits: 0, last: 0.0, previous: 0.0 });
        }
        scaled.push(ratio);
        prev = dk.clone();
    }
    let mut h = Vec::with_capacity(kmax);
    let mut minors_out = alloc::vec![BigRational::one()];
    for (k, s) in scaled.iter().enumerate() {
        let f = factorial(k);
        let hk = s * BigRational::from_integer(&f * &f);
        minors_out.push(minors_out[k].clone() * &hk);
        h.push(hk);
    }
    Ok(NormTable { mode: m.mode.clone(), h, scaled, hankel_minors: minors_out, bits: 0 })
}

/// Norms at the working precision of the moments. Fails on a non-positive pivot.
pub fn norms_real<R: Real>(m: &MomentTable<R>, kmax: usize) -> Result<NormTable<R>> {
    need_moments(m, kmax)?;
    let first = &m.moments[0];
    let jmax = 2 * kmax - 2;
    let mut nu = Vec::with_capacity(jmax + 1);
    let mut fact = first.one_like();
    for j in 0..=jmax {
        if j > 0 {
            fact = fact * first.int(j as i64);
        }
        nu.push(m.moments[j].clone() / fact.clone());
    }
    let binom = binomial_rows(jmax);
    let bits = first.bits();
    let matrix: Vec<Vec<R>> = (0..kmax)
        .map(|i| (0..kmax).map(|j| R::from_bigint(&binom[i + j][i], bits) * nu[i + j].clone()).collect())
        .collect();
    let scaled = elimination_pivots(matrix);
    if let Some(bad) = scaled.iter().position(|p| !p.is_positive() || !p.is_finite()) {
        return Err(Error::PrecisionExhausted {
            stage: "Hankel elimination",
            bits,
            last: scaled[bad].to_f64(),
            previous: if bad > 0 { scaled[bad - 1].to_f64() } else { f64::NAN },
        });
    }
    let mut h = Vec::with_capacity(kmax);
    let mut minors = alloc::vec![first.one_like()];
    let mut f = first.one_like();
    for (k, s) in scaled.iter().enumerate() {
        if k > 0 {
            f = f * first.int(k as i64);
        }
        let hk = s.clone() * f.sqr();
        minors.push(minors[k].clone() * hk.clone());
        h.push(hk);
    }
    Ok(NormTable { mode: m.mode.clone(), h, scaled, hankel_minors: minors, bits })
}

/// Big-float norms with precision doubling: the table at `bits` and at
/// `2·bits` must agree to `ctx.quad_tol` in every scaled norm, otherwise the
/// precision is doubled and the comparison repeated.
pub fn norms_bigfloat<G>(mut gen: G, kmax: usize, start_bits: u32, ctx: &PrecisionContext) -> Result<NormTable<BigReal>>
where
    G: FnMut(u32) -> Result<MomentTable<BigReal>>,
{
    const MAX_BITS: u32 = 1 << 16;
    let mut bits = start_bits.max(ctx.bits);
    let mut lo = norms_real(&gen(bits)?, kmax);
    let mut last = (f64::NAN, f64::NAN);
    while bits <= MAX_BITS {
        let hi = norms_real(&gen(2 * bits)?, kmax);
        if let (Ok(a), Ok(b)) = (&lo, &hi) {
            let worst = a
                .scaled
                .iter()
                .zip(&b.scaled)
                .map(|(x, y)| ((x.clone() - y.clone()) / y.clone()).abs().to_f64())
                .fold(0.0, f64::max);
            if worst <= ctx.quad_tol {
                return hi;
            }
            last = (b.scaled[kmax - 1].to_f64(), a.scaled[kmax - 1].to_f64());
        }
        bits *= 2;
        lo = hi;
    }
    Err(Error::PrecisionExhausted { stage: "Hankel norms", bits, last: last.0, previous: last.1 })
}

/// Starting precision for discrete-weight norms; Hankel conditioning grows
/// super-exponentially in `k`.
pub fn discrete_start_bits(kmax: usize) -> u32 {
    let k = kmax.max(2) as f64;
    (8.0 * k * libm::log2(k)).max(256.0) as u32
}

pub fn norms_discrete(kmax: usize, t: f64, gamma: f64, ctx: &PrecisionContext) -> Result<NormTable<BigReal>> {
    FerroParam::new(t, gamma)?;
    norms_bigfloat(
        |bits| {
            let p = FerroParam::new(BigReal::from_f64(t, bits), BigReal::from_f64(gamma, bits))?;
            moments_discrete(2 * kmax - 2, &p)
        },
        kmax,
        discrete_start_bits(kmax),
        ctx,
    )
}

/// Critical-line norms at real `r`, by big-float elimination.
pub fn norms_critical_real(kmax: usize, r: f64, ctx: &PrecisionContext) -> Result<NormTable<BigReal>> {
    norms_bigfloat(
        |bits| moments_critical(2 * kmax - 2, &BigReal::from_f64(r, bits)),
        kmax,
        discrete_start_bits(kmax),
        ctx,
    )
}

pub fn norms_critical_exact(kmax: usize, r: &BigRational) -> Result<NormTable<BigRational>> {
    norms_exact(&moments_critical_exact(2 * kmax - 2, r)?, kmax)
}

/// `ln(h_k / (k!)²)` of an exact table.
pub fn ln_scaled_exact(table: &NormTable<BigRational>, k: usize, bits: u32) -> f64 {
    BigReal::from_rational(&table.scaled[k], bits).ln().to_f64()
}

/// `Z_n = ((α+1)/2)^{n²} Π_{k<n} h_k/(k!)²` exactly.
pub fn zn_critical_exact(n: usize, alpha: &BigRational) -> Result<ZnValue<BigRational>> {
    if n == 0 {
        return Err(Error::Size { n, max: usize::MAX });
    }
    if *alpha <= BigRational::one() {
        return Err(Error::Domain(alloc::format!("alpha must exceed 1, got {alpha}")));
    }
    let table = norms_critical_exact(n, &crate::model::r_from_alpha(alpha))?;
    Ok(ZnValue { n, value: zn_from_table_exact(&table, n, alpha), route: Route::CriticalOp })
}

pub fn zn_from_table_exact(table: &NormTable<BigRational>, n: usize, alpha: &BigRational) -> BigRational {
    let f = (alpha + BigRational::one()) / BigRational::from_integer(BigInt::from(2));
    let prod = table.scaled[..n].iter().fold(BigRational::one(), |acc, s| acc * s);
    num_traits::pow(f, n * n) * prod
}

/// `Z_n` at real α through big-float norms.
pub fn zn_critical_real(n: usize, alpha: f64, ctx: &PrecisionContext) -> Result<ZnValue<BigReal>> {
    if !(alpha > 1.0) {
        return Err(Error::Domain(alloc::format!("alpha must exceed 1, got {alpha}")));
    }
    let table = norms_critical_real(n, (alpha + 1.0) / (alpha - 1.0), ctx)?;
    let a = BigReal::from_f64(alpha, table.bits);
    let f = (a.clone() + a.one_like()) * a.lit(0.5);
    let prod = table.scaled.iter().fold(a.one_like(), |acc, s| acc * s.clone());
    Ok(ZnValue { n, value: f.powi((n * n) as i64) * prod, route: Route::CriticalOp })
}

/// `d^m φ/dt^m` with `φ(t) = 4 Σ_{l≥1} e^{-2tl} sinh(2γl)`, summed until the
/// geometric tail drops below `quad_tol` times the partial sum.
pub fn phi_derivative<R: Real>(m: u32, p: &FerroParam<R>, ctx: &PrecisionContext) -> Result<R> {
    let p = FerroParam::new(p.t.clone(), p.gamma.clone())
        .map_err(|_| Error::Domain("series for phi diverges unless 0 < gamma < t".into()))?;
    let two = p.t.lit(2.0);
    let ratio = (-(p.t.clone() - p.gamma.clone()) * two.clone()).exp().to_f64();
    let tol = ctx.effective_tol();
    let mut sum = p.t.zero_like();
    let mut l = 1i64;
    loop {
        let lr = p.t.int(l);
        let term = p.t.int(-2 * l).powi(m as i64)
            * (-(two.clone() * p.t.clone() * lr.clone())).exp()
            * (two.clone() * p.gamma.clone() * lr).sinh()
            * p.t.lit(4.0);
        sum = sum + term.clone();
        // Terms decay like l^m ratio^l; once past the peak the tail is
        // bounded by a geometric series.
        let lf = l as f64;
        let local = ratio * libm::pow((lf + 1.0) / lf, m as f64);
        if local < 1.0 {
            let tail = term.abs().to_f64() * local / (1.0 - local);
            if tail <= tol * sum.abs().to_f64() {
                return Ok(sum);
            }
        }
        l += 1;
        if l > 1_000_000 {
            return Err(Error::Refinement { stage: "phi series", last: sum.to_f64(), previous: f64::NAN });
        }
    }
}

/// Hankel determinant of φ-derivatives, `det(φ^{(i+j)})_{i,j<n}`.
pub fn tau_from_phi<R: Real>(n: usize, p: &FerroParam<R>, ctx: &PrecisionContext) -> Result<R> {
    let d: Vec<R> = (0..2 * n - 1).map(|m| phi_derivative(m as u32, p, ctx)).collect::<Result<_>>()?;
    let mat = (0..n).map(|i| (0..n).map(|j| d[i + j].clone()).collect()).collect();
    Ok(determinant(mat))
}

/// Unreduced `Z_n(a, b, c)` from the determinant formula with φ-derivatives.
pub fn zn_ik<R: Real>(n: usize, p: &FerroParam<R>, ctx: &PrecisionContext) -> Result<R> {
    let tau = tau_from_phi(n, p, ctx)?;
    let w = p.weights();
    let mut fprod = p.t.one_like();
    for j in 0..n {
        fprod = fprod * R::from_bigint(&factorial(j), p.t.bits());
    }
    Ok((w.a * w.b).powi((n * n) as i64) / fprod.sqr() * tau)
}

/// Reduced (`c = 1`) partition function in the ferroelectric phase,
/// `[2 sinh(t-γ) sinh(t+γ)/sinh 2γ]^{n²} Π h_k/(k!)²`.
pub fn zn_ferro(n: usize, t: f64, gamma: f64, ctx: &PrecisionContext) -> Result<ZnValue<BigReal>> {
    let table = norms_discrete(n, t, gamma, ctx)?;
    Ok(ZnValue { n, value: zn_ferro_from_table(&table, n, t, gamma), route: Route::IkDiscrete })
}

pub fn zn_ferro_from_table(table: &NormTable<BigReal>, n: usize, t: f64, gamma: f64) -> BigReal {
    let bits = table.bits;
    let p = FerroParam { t: BigReal::from_f64(t, bits), gamma: BigReal::from_f64(gamma, bits) };
    let w = p.weights();
    let pref = w.a * w.b * p.t.lit(2.0) / w.c;
    let prod = table.scaled[..n].iter().fold(p.t.one_like(), |acc, s| acc * s.clone());
    pref.powi((n * n) as i64) * prod
}

/// Reduced ferroelectric weights `(sinh(t-γ)/sinh 2γ, sinh(t+γ)/sinh 2γ, 1)`.
pub fn ferro_reduced_weights<R: Real>(p: &FerroParam<R>) -> VertexWeights<R> {
    p.weights().reduced()
}

/// `|Δ^{2k+1} h_k(t_m, γ_m) - h_{k,α}|` along a sequence approaching the critical line.
pub fn scaling_limit_check(k: usize, alpha: f64, sequence: &[(f64, f64)], ctx: &PrecisionContext) -> Result<Vec<f64>> {
    let limit = norms_critical_real(k + 1, (alpha + 1.0) / (alpha - 1.0), ctx)?;
    let target = limit.h[k].clone();
    sequence
        .iter()
        .map(|&(t, g)| {
            let table = norms_discrete(k + 1, t, g, ctx)?;
            let bits = table.bits;
            let spacing = BigReal::from_f64(2.0 * (t - g), bits);
            let v = spacing.powi(2 * k as i64 + 1) * table.h[k].clone();
            Ok((v - target.with_bits(bits)).abs().to_f64())
        })
        .collect()
}

/// Rows `(k, h_k, ln(h_k/(k!)²))` as decimal strings.
pub fn norm_rows_exact(table: &NormTable<BigRational>, bits: u32) -> Vec<[String; 3]> {
    (0..table.len())
        .map(|k| {
            let h = BigReal::from_rational(&table.h[k], bits);
            let l = BigReal::from_rational(&table.scaled[k], bits).ln();
            [alloc::format!("{k}"), h.to_decimal(), l.to_decimal()]
        })
        .collect()
}

pub fn norm_rows_real(table: &NormTable<BigReal>) -> Vec<[String; 3]> {
    (0..table.len())
        .map(|k| [alloc::format!("{k}"), table.h[k].to_decimal(), table.scaled[k].ln().to_decimal()])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn critical_moments_and_norms() {
        let m = moments_critical_exact(4, &q(2, 1)).unwrap();
        assert_eq!(m.moments[0], q(1, 2));
        assert_eq!(m.moments[1], q(3, 4));
        assert_eq!(m.moments[2], q(7, 4));
        let t = norms_exact(&m, 3).unwrap();
        assert_eq!(t.h, [q(1, 2), q(5, 8), q(109, 40)]);
        assert_eq!(t.scaled[2], q(109, 160));
        assert_eq!(t.hankel_minors[2], q(5, 16));
    }

    #[test]
    fn non_geometric_denominators_take_the_lcm_path() {
        // Moments of Lebesgue measure on [0, 1]: μ_j = 1/(j+1).
        let moments = (0..5).map(|j| q(1, j + 1)).collect();
        let m = MomentTable { mode: WeightMode::Critical { r: 0.0 }, moments, exact: true };
        let t = norms_exact(&m, 3).unwrap();
        // Monic Legendre norms on [0, 1]: 1, 1/12, 1/180.
        assert_eq!(t.h, [q(1, 1), q(1, 12), q(1, 180)]);
    }

    #[test]
    fn critical_zn_small() {
        assert_eq!(zn_critical_exact(1, &q(3, 1)).unwrap().value, q(1, 1));
        assert_eq!(zn_critical_exact(2, &q(3, 1)).unwrap().value, q(5, 1));
        assert_eq!(zn_critical_exact(3, &q(3, 1)).unwrap().value, q(109, 1));
    }

    #[test]
    fn polylog_numerators_are_eulerian() {
        let n = polylog_numerators(3);
        let as_i64 = |v: &Vec<BigInt>| v.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(&n[1]), [0, 1]);
        assert_eq!(as_i64(&n[2]), [0, 1, 1]);
        assert_eq!(as_i64(&n[3]), [0, 1, 4, 1]);
    }

    #[test]
    fn phi_closed_form() {
        let ctx = PrecisionContext::default().with_tol(1e-13);
        let p = FerroParam::new(1.5, 0.5).unwrap();
        let v = phi_derivative(0, &p, &ctx).unwrap();
        assert!((v - 1.0 / 2f64.sinh()).abs() < 1e-12, "{v}");
        let h = 1e-5;
        let fd = (phi_derivative(0, &FerroParam::new(1.5 + h, 0.5).unwrap(), &ctx).unwrap()
            - phi_derivative(0, &FerroParam::new(1.5 - h, 0.5).unwrap(), &ctx).unwrap())
            / (2.0 * h);
        assert!((phi_derivative(1, &p, &ctx).unwrap() - fd).abs() < 1e-8);
        assert!(phi_derivative(0, &FerroParam { t: 0.5, gamma: 0.5 }, &ctx).is_err());
    }
}
