//! Closed-contour quadrature.
//!
//! Smooth closed curves (circles) use the periodic trapezoid rule, which
//! converges geometrically for analytic integrands. Curves with corners are
//! described as a list of [`Piece`]s and integrated piece by piece with
//! composite Gauss-Legendre, doubling the panel count until two levels agree.

use alloc::vec::Vec;

use super::complex::Complex;
use super::gauss::GaussRule;
use super::real::Real;
use super::PrecisionContext;
use crate::error::{Error, Result};

/// A smooth arc of a contour, parametrized by `s` in `[0, 1]`.
#[derive(Clone, Debug)]
pub enum Piece<R> {
    Line { from: Complex<R>, to: Complex<R> },
    Arc { center: Complex<R>, radius: R, theta0: R, theta1: R },
}

impl<R: Real> Piece<R> {
    /// Point and derivative with respect to `s`.
    pub fn eval(&self, s: &R) -> (Complex<R>, Complex<R>) {
        match self {
            Piece::Line { from, to } => {
                let d = to.clone() - from.clone();
                (from.clone() + d.scale(s), d)
            }
            Piece::Arc { center, radius, theta0, theta1 } => {
                let span = theta1.clone() - theta0.clone();
                let th = theta0.clone() + span.clone() * s.clone();
                let (c, sn) = (th.cos(), th.sin());
                let z = Complex::new(
                    center.re.clone() + radius.clone() * c.clone(),
                    center.im.clone() + radius.clone() * sn.clone(),
                );
                let k = radius.clone() * span;
                (z, Complex::new(-(k.clone() * sn), k * c))
            }
        }
    }

    /// Euclidean distance from `p` to the piece, in double precision.
    pub fn distance(&self, p: (f64, f64)) -> f64 {
        match self {
            Piece::Line { from, to } => {
                let (ax, ay) = (from.re.to_f64(), from.im.to_f64());
                let (bx, by) = (to.re.to_f64(), to.im.to_f64());
                let (dx, dy) = (bx - ax, by - ay);
                let len2 = dx * dx + dy * dy;
                let t = if len2 > 0.0 { (((p.0 - ax) * dx + (p.1 - ay) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
                libm::hypot(p.0 - ax - t * dx, p.1 - ay - t * dy)
            }
            Piece::Arc { center, radius, theta0, theta1 } => {
                let (cx, cy, r) = (center.re.to_f64(), center.im.to_f64(), radius.to_f64());
                let (t0, t1) = (theta0.to_f64(), theta1.to_f64());
                let ang = libm::atan2(p.1 - cy, p.0 - cx);
                let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                let tau = 2.0 * core::f64::consts::PI;
                let mut a = ang;
                while a < lo {
                    a += tau;
                }
                if a <= hi {
                    return (libm::hypot(p.0 - cx, p.1 - cy) - r).abs();
                }
                let end = |t: f64| libm::hypot(p.0 - cx - r * libm::cos(t), p.1 - cy - r * libm::sin(t));
                end(t0).min(end(t1))
            }
        }
    }
}

/// A positively oriented closed curve.
pub trait ClosedContour<R: Real> {
    fn pieces(&self) -> Vec<Piece<R>>;

    fn distance(&self, p: (f64, f64)) -> f64 {
        self.pieces().iter().map(|q| q.distance(p)).fold(f64::INFINITY, f64::min)
    }

    /// `∮ f(z) dz`.
    fn integrate<F>(&self, f: &mut F, ctx: &PrecisionContext) -> Result<Complex<R>>
    where
        F: FnMut(&Complex<R>) -> Complex<R>,
    {
        let rule = GaussRule::for_bits(ctx.bits);
        let mut total: Option<Complex<R>> = None;
        for piece in self.pieces() {
            let v = piece_integral(&piece, f, &rule, ctx)?;
            total = Some(match total {
                Some(t) => t + v,
                None => v,
            });
        }
        total.ok_or_else(|| Error::InvalidContour("contour has no pieces".into()))
    }
}

fn panel_sum<R: Real, F>(piece: &Piece<R>, f: &mut F, rule: &GaussRule<R>, panels: usize) -> (Complex<R>, f64)
where
    F: FnMut(&Complex<R>) -> Complex<R>,
{
    let (z0, _) = piece.eval(&rule.nodes[0]);
    let zero = z0.re.zero_like();
    let mut acc = Complex::real(zero.clone());
    let mut abs = 0.0;
    let h = zero.one_like() / zero.int(panels as i64);
    for j in 0..panels {
        let a = h.clone() * zero.int(j as i64);
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            let s = a.clone() + h.clone() * t.clone();
            let (z, dz) = piece.eval(&s);
            let v = f(&z) * dz;
            abs += v.abs().to_f64() * w.to_f64();
            acc = acc + v.scale(w);
        }
    }
    (acc.scale(&h), abs * h.to_f64())
}

fn piece_integral<R: Real, F>(
    piece: &Piece<R>,
    f: &mut F,
    rule: &GaussRule<R>,
    ctx: &PrecisionContext,
) -> Result<Complex<R>>
where
    F: FnMut(&Complex<R>) -> Complex<R>,
{
    let tol = ctx.effective_tol();
    let (mut prev, _) = panel_sum(piece, f, rule, 1);
    let levels = ctx.max_refine.min(14);
    for level in 1..=levels {
        let (cur, abs) = panel_sum(piece, f, rule, 1 << level);
        let diff = (cur.clone() - prev.clone()).abs().to_f64();
        if diff <= tol * abs.max(cur.abs().to_f64()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Refinement { stage: "contour piece", last: prev.re.to_f64(), previous: f64::NAN })
}

/// Circle of radius `radius` about `center`, counter-clockwise.
#[derive(Clone, Debug)]
pub struct Circle<R> {
    pub center: Complex<R>,
    pub radius: R,
}

impl<R: Real> Circle<R> {
    fn trapezoid<F>(&self, f: &mut F, n: usize) -> (Complex<R>, f64)
    where
        F: FnMut(&Complex<R>) -> Complex<R>,
    {
        let r = &self.radius;
        let step = r.pi_like() * r.lit(2.0) / r.int(n as i64);
        let mut acc = Complex::real(r.zero_like());
        let mut abs = 0.0;
        for j in 0..n {
            let th = step.clone() * r.int(j as i64);
            let (c, s) = (th.cos(), th.sin());
            let z = Complex::new(
                self.center.re.clone() + r.clone() * c.clone(),
                self.center.im.clone() + r.clone() * s.clone(),
            );
            let dz = Complex::new(-(r.clone() * s), r.clone() * c);
            let v = f(&z) * dz;
            abs += v.abs().to_f64();
            acc = acc + v;
        }
        (acc.scale(&step), abs * step.to_f64())
    }
}

impl<R: Real> ClosedContour<R> for Circle<R> {
    fn pieces(&self) -> Vec<Piece<R>> {
        let pi = self.radius.pi_like();
        alloc::vec![Piece::Arc {
            center: self.center.clone(),
            radius: self.radius.clone(),
            theta0: -pi.clone(),
            theta1: pi,
        }]
    }

    fn integrate<F>(&self, f: &mut F, ctx: &PrecisionContext) -> Result<Complex<R>>
    where
        F: FnMut(&Complex<R>) -> Complex<R>,
    {
        let tol = ctx.effective_tol();
        let (mut prev, _) = self.trapezoid(f, 16);
        for level in 5..(5 + ctx.max_refine.min(14)) {
            let (cur, abs) = self.trapezoid(f, 1 << level);
            if (cur.clone() - prev.clone()).abs().to_f64() <= tol * abs.max(cur.abs().to_f64()) {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::Refinement { stage: "circle trapezoid", last: prev.re.to_f64(), previous: f64::NAN })
    }
}

/// `∮ f(z) dz` along `contour`.
pub fn contour_integral<R, C, F>(mut f: F, contour: &C, ctx: &PrecisionContext) -> Result<Complex<R>>
where
    R: Real,
    C: ClosedContour<R>,
    F: FnMut(&Complex<R>) -> Complex<R>,
{
    contour.integrate(&mut f, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Square;

    impl ClosedContour<f64> for Square {
        fn pieces(&self) -> Vec<Piece<f64>> {
            let p = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
            (0..4)
                .map(|i| Piece::Line {
                    from: Complex::new(p[i].0, p[i].1),
                    to: Complex::new(p[(i + 1) % 4].0, p[(i + 1) % 4].1),
                })
                .collect()
        }
    }

    fn unit() -> Circle<f64> {
        Circle { center: Complex::new(0.0, 0.0), radius: 1.0 }
    }

    #[test]
    fn residue_of_inverse() {
        let ctx = PrecisionContext::default();
        let v = contour_integral(|z: &Complex<f64>| z.recip(), &unit(), &ctx).unwrap();
        assert!(v.re.abs() < 1e-12);
        assert!((v.im - 2.0 * core::f64::consts::PI).abs() < 1e-12);
        let w = contour_integral(|z: &Complex<f64>| z.recip(), &Square, &ctx).unwrap();
        assert!((w.im - 2.0 * core::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn cauchy_theorem_without_singularities() {
        let ctx = PrecisionContext::default();
        let f = |z: &Complex<f64>| z.exp() * z.clone();
        let v = contour_integral(f, &unit(), &ctx).unwrap();
        assert!(v.abs() < 1e-12);
        let w = contour_integral(f, &Square, &ctx).unwrap();
        assert!(w.abs() < 1e-10);
    }

    #[test]
    fn distance_to_pieces() {
        assert!((unit().distance((3.0, 0.0)) - 2.0).abs() < 1e-12);
        assert!((Square.distance((0.0, 0.0)) - 1.0).abs() < 1e-12);
    }
}
