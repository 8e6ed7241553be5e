//! The floating-point abstraction every numeric routine is written against.
//!
//! Two implementations ship: `f64` (53 bits, backed by `libm`) and
//! [`BigReal`](super::bigreal::BigReal), an arbitrary-precision binary float.
//! Values carry their own precision so that constants can be created with
//! [`Real::lit`] without threading the precision through every call.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::bigreal::BigReal;

pub trait Real:
    Clone
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, bits: u32) -> Self;
    fn from_bigint(x: &BigInt, bits: u32) -> Self;
    fn from_bigreal(x: &BigReal, bits: u32) -> Self;
    fn pi(bits: u32) -> Self;

    /// Working precision of this value in bits.
    fn bits(&self) -> u32;
    fn to_f64(&self) -> f64;
    /// Full-precision decimal representation.
    fn to_decimal(&self) -> String;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    /// `exp(x) - 1` without cancellation near zero.
    fn expm1(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn is_finite(&self) -> bool;

    fn from_i64(x: i64, bits: u32) -> Self {
        Self::from_bigint(&BigInt::from(x), bits)
    }

    fn from_rational(x: &BigRational, bits: u32) -> Self {
        Self::from_bigint(x.numer(), bits) / Self::from_bigint(x.denom(), bits)
    }

    /// A constant at the precision of `self`.
    fn lit(&self, x: f64) -> Self {
        Self::from_f64(x, self.bits())
    }

    fn int(&self, n: i64) -> Self {
        Self::from_i64(n, self.bits())
    }

    fn zero_like(&self) -> Self {
        self.lit(0.0)
    }

    fn one_like(&self) -> Self {
        self.lit(1.0)
    }

    fn pi_like(&self) -> Self {
        Self::pi(self.bits())
    }

    fn sinh(&self) -> Self {
        (self.expm1() - (-self.clone()).expm1()) * self.lit(0.5)
    }

    fn cosh(&self) -> Self {
        let e = self.exp();
        (e.clone() + e.one_like() / e) * self.lit(0.5)
    }

    fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.one_like() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn powf(&self, p: &Self) -> Self {
        (self.ln() * p.clone()).exp()
    }

    fn sqr(&self) -> Self {
        self.clone() * self.clone()
    }

    fn recip(&self) -> Self {
        self.one_like() / self.clone()
    }

    fn is_positive(&self) -> bool {
        *self > self.zero_like()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Unit roundoff at this precision.
    fn epsilon(&self) -> f64 {
        libm::ldexp(1.0, 1 - self.bits() as i32)
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _bits: u32) -> Self {
        x
    }

    fn from_bigint(x: &BigInt, _bits: u32) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }

    fn from_bigreal(x: &BigReal, _bits: u32) -> Self {
        x.to_f64()
    }

    fn from_rational(x: &BigRational, _bits: u32) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }

    fn pi(_bits: u32) -> Self {
        core::f64::consts::PI
    }

    fn bits(&self) -> u32 {
        53
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_decimal(&self) -> String {
        let a = libm::fabs(*self);
        if a == 0.0 || (1e-4..1e15).contains(&a) {
            alloc::format!("{self}")
        } else {
            alloc::format!("{self:e}")
        }
    }

    fn abs(&self) -> Self {
        libm::fabs(*self)
    }

    fn sqrt(&self) -> Self {
        libm::sqrt(*self)
    }

    fn exp(&self) -> Self {
        libm::exp(*self)
    }

    fn expm1(&self) -> Self {
        libm::expm1(*self)
    }

    fn ln(&self) -> Self {
        libm::log(*self)
    }

    fn sin(&self) -> Self {
        libm::sin(*self)
    }

    fn cos(&self) -> Self {
        libm::cos(*self)
    }

    fn sinh(&self) -> Self {
        libm::sinh(*self)
    }

    fn cosh(&self) -> Self {
        libm::cosh(*self)
    }

    fn powf(&self, p: &Self) -> Self {
        libm::pow(*self, *p)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}
