//! Gauss-Legendre rules at the working precision of `R`.

use alloc::vec::Vec;

use super::real::Real;

#[derive(Clone, Debug)]
pub struct GaussRule<R> {
    /// Nodes on [0, 1].
    pub nodes: Vec<R>,
    /// Weights summing to 1.
    pub weights: Vec<R>,
}

/// Rule order used for a given precision; grows with `bits` so one panel
/// resolves polynomial-like pieces to full precision.
pub fn order_for_bits(bits: u32) -> usize {
    12 + bits as usize / 8
}

impl<R: Real> GaussRule<R> {
    /// `m`-point rule mapped to [0, 1]. Roots of `P_m` by Newton iteration from
    /// the classical cosine guesses.
    pub fn new(m: usize, bits: u32) -> Self {
        let one = R::from_f64(1.0, bits);
        let two = one.lit(2.0);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let half = m.div_ceil(2);
        let mut lower: Vec<(R, R)> = Vec::with_capacity(half);
        for i in 0..half {
            let guess = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5));
            let mut x = one.lit(guess);
            let mut dp = one.clone();
            for iter in 0..200 {
                let (p, d) = legendre(m, &x);
                dp = d.clone();
                let dx = p / d;
                x = x - dx.clone();
                let small = dx.abs().to_f64() <= x.epsilon() * 4.0;
                if small && iter > 0 {
                    let (_, d) = legendre(m, &x);
                    dp = d;
                    break;
                }
            }
            let w = two.clone() / ((one.clone() - x.sqr()) * dp.sqr());
            lower.push((x, w));
        }
        // x runs from near 1 down; map t = (1 - x)/2 in increasing order.
        for (x, w) in lower.iter() {
            nodes.push((one.clone() - x.clone()) * one.lit(0.5));
            weights.push(w.clone() * one.lit(0.5));
        }
        let mid = if m % 2 == 1 { half - 1 } else { half };
        for (x, w) in lower[..mid].iter().rev() {
            nodes.push((one.clone() + x.clone()) * one.lit(0.5));
            weights.push(w.clone() * one.lit(0.5));
        }
        Self { nodes, weights }
    }

    pub fn for_bits(bits: u32) -> Self {
        Self::new(order_for_bits(bits), bits)
    }

    /// Applies the rule on `[a, b]`; returns the estimate and the matching
    /// estimate of `∫|f|`.
    pub fn apply<F: FnMut(&R) -> R>(&self, f: &mut F, a: &R, b: &R) -> (R, R) {
        let h = b.clone() - a.clone();
        let mut sum = a.zero_like();
        let mut abs = a.zero_like();
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            let x = a.clone() + h.clone() * t.clone();
            let v = f(&x) * w.clone();
            abs = abs + v.abs();
            sum = sum + v;
        }
        (sum * h.clone(), abs * h.abs())
    }
}

/// `P_m(x)` and `P_m'(x)` by the three-term recurrence.
fn legendre<R: Real>(m: usize, x: &R) -> (R, R) {
    let mut p0 = x.one_like();
    let mut p1 = x.clone();
    if m == 0 {
        return (p0, x.zero_like());
    }
    for j in 2..=m {
        let jf = x.int(j as i64);
        let p2 = (x.int(2 * j as i64 - 1) * x.clone() * p1.clone() - x.int(j as i64 - 1) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = x.int(m as i64) * (x.clone() * p1.clone() - p0) / (x.sqr() - x.one_like());
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::BigReal;

    #[test]
    fn integrates_polynomials_exactly() {
        let g: GaussRule<f64> = GaussRule::new(7, 53);
        let total: f64 = g.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
        // Degree 13 is the highest exact degree for 7 nodes.
        let (v, _) = g.apply(&mut |x: &f64| x.powi(13), &0.0, &1.0);
        assert!((v - 1.0 / 14.0).abs() < 1e-15);
        assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn big_rule_reaches_high_precision() {
        let g: GaussRule<BigReal> = GaussRule::for_bits(192);
        let a = BigReal::from_f64(0.0, 192);
        let b = BigReal::from_f64(1.0, 192);
        let (v, _) = g.apply(&mut |x: &BigReal| x.exp(), &a, &b);
        let exact = b.exp() - b.one_like();
        assert!((v - exact).abs().to_f64() < 1e-50);
    }
}
