//! Minimal complex arithmetic over any [`Real`].
//!
//! `num-complex` needs `num_traits::Float`, which a precision-carrying big
//! float cannot implement (there is no context-free `zero()`), so the handful
//! of operations the contour code needs live here.

use core::ops::{Add, Div, Mul, Neg, Sub};

use super::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Complex<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Complex<R> {
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    pub fn real(re: R) -> Self {
        let im = re.zero_like();
        Self { re, im }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> R {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> R {
        let (a, b) = (self.re.abs(), self.im.abs());
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if !big.is_positive() {
            return big;
        }
        let t = small / big.clone();
        big * (t.one_like() + t.sqr()).sqrt()
    }

    pub fn scale(&self, s: &R) -> Self {
        Self::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Self::new(self.re.clone() / d.clone(), -self.im.clone() / d)
    }

    /// Principal square root, branch cut on the negative real axis.
    pub fn sqrt(&self) -> Self {
        let m = self.abs();
        if !m.is_positive() {
            return self.clone();
        }
        let half = m.lit(0.5);
        let zero = m.zero_like();
        if self.re >= zero {
            let two = m.lit(2.0);
            let re = ((m + self.re.clone()) * half.clone()).sqrt();
            let im = self.im.clone() / (re.clone() * two);
            Self::new(re, im)
        } else {
            let mut im = ((m - self.re.clone()) * half).sqrt();
            if self.im < zero {
                im = -im;
            }
            let re = self.im.clone() / (im.clone() * im.lit(2.0));
            Self::new(re, im)
        }
    }

    pub fn exp(&self) -> Self {
        let e = self.re.exp();
        Self::new(e.clone() * self.im.cos(), e * self.im.sin())
    }

    /// `exp(z) - 1`, accurate for small `|z|`.
    pub fn expm1(&self) -> Self {
        let em1 = self.re.expm1();
        let half = self.im.clone() * self.im.lit(0.5);
        let s = half.sin();
        let cos_m1 = -(s.sqr() * s.lit(2.0));
        let re = em1.clone() * self.im.cos() + cos_m1;
        let im = (em1 + self.re.one_like()) * self.im.sin();
        Self::new(re, im)
    }

    pub fn ln(&self) -> Self {
        Self::new(self.abs().ln(), atan2(&self.im, &self.re))
    }
}

/// Four-quadrant arctangent built from the principal `atan`.
pub fn atan2<R: Real>(y: &R, x: &R) -> R {
    let zero = x.zero_like();
    let pi = x.pi_like();
    if *x > zero {
        atan(&(y.clone() / x.clone()))
    } else if *x < zero {
        let a = atan(&(y.clone() / x.clone()));
        if *y >= zero {
            a + pi
        } else {
            a - pi
        }
    } else if *y > zero {
        pi * x.lit(0.5)
    } else if *y < zero {
        -(pi * x.lit(0.5))
    } else {
        zero
    }
}

/// Arctangent via argument halving and the Taylor series.
pub fn atan<R: Real>(x: &R) -> R {
    let one = x.one_like();
    if x.abs() > one {
        let base = x.pi_like() * x.lit(0.5);
        let inv = atan(&(one / x.clone()));
        return if x.is_positive() { base - inv } else { -base - inv };
    }
    // Two halvings: atan(x) = 2 atan(x / (1 + sqrt(1 + x^2))).
    let mut t = x.clone();
    for _ in 0..2 {
        t = t.clone() / (one.clone() + (one.clone() + t.sqr()).sqrt());
    }
    let t2 = t.sqr();
    let mut term = t.clone();
    let mut sum = t.clone();
    let eps = x.epsilon() * 0.25;
    let mut k = 1i64;
    loop {
        term = -(term * t2.clone());
        let add = term.clone() / x.int(2 * k + 1);
        sum = sum + add.clone();
        k += 1;
        if add.abs().to_f64() <= eps * sum.abs().to_f64() || k > 4 * x.bits() as i64 {
            break;
        }
    }
    sum * x.lit(4.0)
}

impl<R: Real> Add for Complex<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl<R: Real> Sub for Complex<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl<R: Real> Mul for Complex<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(), self.re * o.im + self.im * o.re)
    }
}

impl<R: Real> Div for Complex<R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        // Smith's algorithm avoids overflow in the denominator.
        if o.re.abs() >= o.im.abs() {
            let t = o.im.clone() / o.re.clone();
            let d = o.re.clone() + o.im * t.clone();
            Self::new((self.re.clone() + self.im.clone() * t.clone()) / d.clone(), (self.im - self.re * t) / d)
        } else {
            let t = o.re.clone() / o.im.clone();
            let d = o.re * t.clone() + o.im;
            Self::new((self.re.clone() * t.clone() + self.im.clone()) / d.clone(), (self.im * t - self.re) / d)
        }
    }
}

impl<R: Real> Neg for Complex<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn sqrt_squares_back() {
        for z in [c(3.0, 4.0), c(-3.0, 4.0), c(-3.0, -4.0), c(-1.0, 0.0), c(0.25, -2.0)] {
            let s = z.sqrt();
            let back = s.clone() * s.clone();
            assert!((back - z.clone()).abs() < 1e-14, "{z:?}");
            assert!(s.re >= 0.0);
        }
    }

    #[test]
    fn expm1_is_accurate_near_zero() {
        let z = c(1e-12, 2e-12);
        let e = z.expm1();
        assert!((e.re - (1e-12 - 1.5e-24)).abs() < 1e-27);
        assert!((e.im - (2e-12 + 2e-24)).abs() < 1e-27);
        let w = c(0.7, -1.3);
        let d = w.expm1() - (w.exp() - c(1.0, 0.0));
        assert!(d.abs() < 1e-15);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = c(1.5, -0.25);
        let b = c(-0.5, 3.0);
        let q = (a.clone() * b.clone()) / b;
        assert!((q - a).abs() < 1e-15);
    }

    #[test]
    fn atan2_covers_all_quadrants() {
        for (y, x) in [(1.0, 2.0), (1.0, -2.0), (-1.0, -2.0), (-3.0, 0.5), (2.0, 0.0)] {
            assert!((atan2(&y, &x) - libm::atan2(y, x)).abs() < 1e-15);
        }
    }
}
