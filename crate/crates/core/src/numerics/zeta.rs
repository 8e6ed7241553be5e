//! ζ(3/2) by direct summation plus an Euler-Maclaurin tail.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bigreal::BigReal;
use super::real::Real;
use super::PrecisionContext;

#[derive(Clone, Debug)]
pub struct ZetaValue {
    pub s: f64,
    pub value: BigReal,
    /// Bound on the first omitted Euler-Maclaurin term.
    pub error_bound: f64,
}

impl ZetaValue {
    /// The value at the precision of `like`.
    pub fn as_real<R: Real>(&self, like: &R) -> R {
        R::from_bigreal(&self.value, like.bits())
    }
}

/// `B_0, B_2, ..., B_{2m}` from the standard recurrence.
fn even_bernoulli(m: usize) -> Vec<BigRational> {
    let n = 2 * m;
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for k in 1..=n {
        // sum_{j<k} C(k+1, j) B_j = -(k+1) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b.into_iter().step_by(2).collect()
}

/// Partial sum `Σ_{n=1}^{terms} n^{-3/2}` at the context precision.
pub fn zeta_partial_sum(terms: usize, bits: u32) -> BigReal {
    let mut acc = BigReal::from_f64(0.0, bits);
    for n in 1..=terms {
        let x = BigReal::from_i64(n as i64, bits);
        acc = acc + (x.clone() * x.sqrt()).recip();
    }
    acc
}

pub fn zeta_three_halves(ctx: &PrecisionContext) -> ZetaValue {
    let bits = ctx.bits;
    let work = bits + 32;
    let m = bits as usize / 6 + 2;
    let big_n = m + 5;
    let bern = even_bernoulli(m);
    let s = BigReal::from_f64(1.5, work);
    let n = BigReal::from_i64(big_n as i64, work);
    let n_pow = n.clone() * n.sqrt();
    let mut sum = zeta_partial_sum(big_n - 1, work);
    // Integral tail and half of the boundary term.
    sum = sum + n.clone() / (n_pow.clone() * s.lit(0.5)) + n_pow.recip() * s.lit(0.5);
    // Σ B_{2j}/(2j)! · s(s+1)...(s+2j-2) · N^{-s-2j+1}
    let mut rising = s.clone();
    let mut fact = BigInt::from(2u32);
    let mut npow = n_pow.clone() * n.clone();
    let mut last = 0.0;
    for j in 1..=m {
        let coeff = BigReal::from_rational(&(bern[j].clone() / BigRational::from_integer(fact.clone())), work);
        let term = coeff * rising.clone() / npow.clone();
        last = term.abs().to_f64();
        sum = sum + term;
        let (a, b) = (2 * j as i64 - 1, 2 * j as i64);
        rising = rising * (s.clone() + s.int(a)) * (s.clone() + s.int(b));
        fact *= BigInt::from(b + 1) * BigInt::from(b + 2);
        npow = npow * n.sqr();
    }
    ZetaValue { s: 1.5, value: sum.with_bits(bits), error_bound: last }
}
