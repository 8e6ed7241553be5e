//! The contour around `[0, 1]` whose distance from a point `m` of the
//! segment is `δ(1/k + m)`: a small half-disc at the origin, two rising lines
//! and a half-disc of radius `δ(1 + 1/k)` at 1.
//!
//! The lines are split at `m = 2^j/k`, matching the scale on which the
//! Bose factor `1/(e^{γky} - 1)` varies.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{ClosedContour, Complex, Piece, Real};

#[derive(Clone, Debug)]
pub struct Stadium<R> {
    pub k: R,
    pub delta: R,
}

impl<R: Real> Stadium<R> {
    pub fn new(k: R, delta: R) -> Result<Self> {
        if !(delta.is_positive() && k.is_positive()) {
            return Err(Error::InvalidContour(alloc::format!("need k, delta > 0, got {k}, {delta}")));
        }
        Ok(Self { k, delta })
    }

    /// Default half-width `π/(4(r-1))`, half the pole-clearance bound, capped at 1
    /// so that the right half-disc stays clear of the origin.
    pub fn default_delta(r: &R) -> R {
        let d = r.pi_like() / ((r.clone() - r.one_like()) * r.lit(4.0));
        d.min_of(r.one_like())
    }

    fn height(&self, m: &R) -> R {
        self.delta.clone() * (self.k.recip() + m.clone())
    }

    fn breakpoints(&self) -> Vec<R> {
        let one = self.k.one_like();
        let mut pts = alloc::vec![self.k.zero_like()];
        let mut m = self.k.recip();
        while m < one {
            pts.push(m.clone());
            m = m * one.lit(2.0);
        }
        pts.push(one);
        pts
    }

    /// Is `z` enclosed? The curve is the boundary of the set of points within
    /// `δ(1/k + m)` of their nearest point `m` on `[0, 1]`.
    pub fn contains(&self, z: &Complex<R>) -> bool {
        let (x, y) = (z.re.to_f64(), z.im.to_f64());
        let m = x.clamp(0.0, 1.0);
        let d = libm::hypot(x - m, y);
        d < self.height(&self.k.lit(m)).to_f64()
    }

    /// Fails unless every pole `2πin/(γk)` of the Bose factor lies at least
    /// half the first pole's height outside, and `z` is at least `margin` from the curve.
    pub fn check_clearance(&self, gamma: &R, z: &Complex<R>, margin: f64) -> Result<()> {
        let spacing = 2.0 * core::f64::consts::PI / (gamma.to_f64() * self.k.to_f64());
        let top = self.height(&self.k.one_like()).to_f64();
        let mut n = 1;
        while (n as f64 - 1.0) * spacing <= top {
            let p = (0.0, n as f64 * spacing);
            if self.contains(&Complex::new(self.k.zero_like(), self.k.lit(p.1))) || self.distance(p) < 0.25 * spacing {
                return Err(Error::InvalidContour(alloc::format!(
                    "pole at {}i within {:e} of the contour (delta = {})",
                    p.1,
                    self.distance(p),
                    self.delta
                )));
            }
            n += 1;
        }
        let dz = self.distance((z.re.to_f64(), z.im.to_f64()));
        if dz < margin {
            return Err(Error::InvalidContour(alloc::format!("evaluation point {z:?} only {dz:e} from the contour")));
        }
        Ok(())
    }
}

impl<R: Real> ClosedContour<R> for Stadium<R> {
    fn pieces(&self) -> Vec<Piece<R>> {
        let pi = self.k.pi_like();
        let half_pi = pi.clone() * pi.lit(0.5);
        let pts = self.breakpoints();
        let below = |m: &R| Complex::new(m.clone(), -self.height(m));
        let above = |m: &R| Complex::new(m.clone(), self.height(m));
        let mut out = Vec::with_capacity(2 * pts.len() + 2);
        for w in pts.windows(2) {
            out.push(Piece::Line { from: below(&w[0]), to: below(&w[1]) });
        }
        let one = self.k.one_like();
        out.push(Piece::Arc {
            center: Complex::real(one.clone()),
            radius: self.height(&one),
            theta0: -half_pi.clone(),
            theta1: half_pi.clone(),
        });
        for w in pts.windows(2).rev() {
            out.push(Piece::Line { from: above(&w[1]), to: above(&w[0]) });
        }
        out.push(Piece::Arc {
            center: Complex::real(self.k.zero_like()),
            radius: self.height(&self.k.zero_like()),
            theta0: half_pi.clone(),
            theta1: half_pi * pi.lit(3.0),
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{contour_integral, PrecisionContext};

    #[test]
    fn closed_and_positively_oriented() {
        let s = Stadium::new(50.0, 0.7).unwrap();
        let pieces = s.pieces();
        for (p, q) in pieces.iter().zip(pieces.iter().cycle().skip(1)) {
            let (end, _) = p.eval(&1.0);
            let (start, _) = q.eval(&0.0);
            assert!((end - start).abs() < 1e-14);
        }
        let ctx = PrecisionContext::default();
        let w = contour_integral(|z: &Complex<f64>| (z.clone() - Complex::real(0.5)).recip(), &s, &ctx).unwrap();
        assert!((w.im - 2.0 * core::f64::consts::PI).abs() < 1e-9);
        assert!(w.re.abs() < 1e-9);
    }

    #[test]
    fn membership_and_clearance() {
        let s = Stadium::new(100.0, Stadium::default_delta(&2.0)).unwrap();
        assert!(s.contains(&Complex::real(0.0)));
        assert!(s.contains(&Complex::real(1.5)));
        assert!(!s.contains(&Complex::real(2.0)));
        assert!(s.check_clearance(&4.0, &Complex::real(0.5), 1e-3).is_ok());
        let wide = Stadium::new(100.0, 2.0).unwrap();
        assert!(matches!(wide.check_clearance(&4.0, &Complex::real(0.5), 1e-3), Err(Error::InvalidContour(_))));
    }
}
