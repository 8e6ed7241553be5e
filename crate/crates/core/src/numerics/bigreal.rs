//! Arbitrary-precision real numbers on top of `astro-float`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;

use super::real::Real;

const RM: RoundingMode = RoundingMode::ToEven;

/// A binary floating-point number with an explicit mantissa length.
///
/// Binary operations run at the larger precision of their operands.
#[derive(Clone, Debug)]
pub struct BigReal {
    value: BigFloat,
    bits: u32,
}

fn consts() -> Consts {
    // Consts::new only fails on allocation failure.
    Consts::new().expect("astro-float constant cache")
}

impl BigReal {
    pub fn new(value: BigFloat, bits: u32) -> Self {
        Self { value, bits }
    }

    pub fn as_bigfloat(&self) -> &BigFloat {
        &self.value
    }

    /// Re-rounds to a different working precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        let mut value = self.value.clone();
        // set_precision only errors for invalid p, which `bits.max(64)` rules out.
        let _ = value.set_precision(bits.max(64) as usize, RM);
        Self { value, bits }
    }

    fn p(&self) -> usize {
        self.bits.max(64) as usize
    }

    fn binary(&self, other: &Self, op: fn(&BigFloat, &BigFloat, usize, RoundingMode) -> BigFloat) -> Self {
        let bits = self.bits.max(other.bits);
        let value = op(&self.value, &other.value, bits.max(64) as usize, RM);
        Self { value, bits }
    }

    fn expm1_series(&self) -> Self {
        let p = self.p() + 16;
        let mut term = self.value.clone();
        let mut sum = self.value.clone();
        let mut n = 1u64;
        loop {
            n += 1;
            term = term.mul(&self.value, p, RM).div(&BigFloat::from_u64(n, p), p, RM);
            sum = sum.add(&term, p, RM);
            if term.is_zero() {
                break;
            }
            let (ts, ss) = (term.exponent(), sum.exponent());
            if let (Some(te), Some(se)) = (ts, ss) {
                if (se as i64) - (te as i64) > p as i64 + 2 {
                    break;
                }
            }
        }
        Self { value: sum, bits: self.bits }.with_bits(self.bits)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl Add for BigReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.binary(&rhs, BigFloat::add)
    }
}

impl Sub for BigReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.binary(&rhs, BigFloat::sub)
    }
}

impl Mul for BigReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.binary(&rhs, BigFloat::mul)
    }
}

impl Div for BigReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.binary(&rhs, BigFloat::div)
    }
}

impl Neg for BigReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: self.value.neg(), bits: self.bits }
    }
}

impl Real for BigReal {
    fn from_f64(x: f64, bits: u32) -> Self {
        Self { value: BigFloat::from_f64(x, bits.max(64) as usize), bits }
    }

    fn from_bigint(x: &BigInt, bits: u32) -> Self {
        let p = bits.max(64) as usize;
        let (sign, digits): (num_bigint::Sign, Vec<u64>) = x.to_u64_digits();
        let value = if digits.is_empty() {
            BigFloat::from_f64(0.0, p)
        } else {
            let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
            let mut v = BigFloat::from_words(&digits, s, (digits.len() * 64) as i32);
            let _ = v.set_precision(p, RM);
            v
        };
        Self { value, bits }
    }

    fn from_bigreal(x: &BigReal, bits: u32) -> Self {
        x.with_bits(bits)
    }

    fn pi(bits: u32) -> Self {
        Self { value: consts().pi(bits.max(64) as usize, RM), bits }
    }

    fn bits(&self) -> u32 {
        self.bits
    }

    fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.value.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match self.value.as_raw_parts() {
            Some((words, _, sign, exponent, _)) => {
                let top = match words.last() {
                    Some(&w) if w != 0 => w,
                    _ => return 0.0,
                };
                let m = top as f64;
                let v = libm::ldexp(m, exponent - 64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            None => f64::NAN,
        }
    }

    fn to_decimal(&self) -> String {
        let mut cc = consts();
        self.value.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| String::from("NaN"))
    }

    fn abs(&self) -> Self {
        Self { value: self.value.abs(), bits: self.bits }
    }

    fn sqrt(&self) -> Self {
        Self { value: self.value.sqrt(self.p(), RM), bits: self.bits }
    }

    fn exp(&self) -> Self {
        Self { value: self.value.exp(self.p(), RM, &mut consts()), bits: self.bits }
    }

    fn expm1(&self) -> Self {
        if self.value.abs() < BigFloat::from_f64(0.5, 64) {
            self.expm1_series()
        } else {
            let e = self.exp();
            let one = e.one_like();
            e - one
        }
    }

    fn ln(&self) -> Self {
        Self { value: self.value.ln(self.p(), RM, &mut consts()), bits: self.bits }
    }

    fn sin(&self) -> Self {
        Self { value: self.value.sin(self.p(), RM, &mut consts()), bits: self.bits }
    }

    fn cos(&self) -> Self {
        Self { value: self.value.cos(self.p(), RM, &mut consts()), bits: self.bits }
    }

    fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }
}
