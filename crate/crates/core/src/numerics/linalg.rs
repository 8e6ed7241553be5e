//! Leading principal minors of symmetric positive-definite matrices, exactly
//! (fraction-free Bareiss elimination over the integers) and in floating point.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::real::Real;
use crate::error::{Error, Result};

/// `D_1, ..., D_n`, the leading principal minors of an integer matrix.
///
/// Bareiss elimination keeps every intermediate entry an integer; the pivot at
/// step `k` is exactly the `k × k` leading minor. Stops with an error at the
/// first vanishing pivot since no row exchange is attempted.
pub fn leading_minors_bareiss(mut a: Vec<Vec<BigInt>>) -> Result<Vec<BigInt>> {
    let n = a.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1u32);
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            return Err(Error::Domain(alloc::format!("vanishing leading minor at order {}", k + 1)));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        minors.push(pivot.clone());
        prev = pivot;
    }
    Ok(minors)
}

/// Pivots of Gaussian elimination without row exchanges: `D_{k+1}/D_k`.
pub fn elimination_pivots<R: Real>(mut a: Vec<Vec<R>>) -> Vec<R> {
    let n = a.len();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = a[k][k].clone();
        for i in k + 1..n {
            let factor = a[i][k].clone() / p.clone();
            for j in k + 1..n {
                let v = a[i][j].clone() - factor.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
        pivots.push(p);
    }
    pivots
}

/// Determinant as the product of elimination pivots.
pub fn determinant<R: Real>(a: Vec<Vec<R>>) -> R {
    let one = a[0][0].one_like();
    elimination_pivots(a).into_iter().fold(one, |acc, p| acc * p)
}

pub fn all_positive(minors: &[BigInt]) -> bool {
    minors.iter().all(|d| d.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_hand_minors() {
        let m = int(&[&[2, 1, 1], &[1, 3, 2], &[1, 2, 4]]);
        let d = leading_minors_bareiss(m).unwrap();
        assert_eq!(d, [BigInt::from(2), BigInt::from(5), BigInt::from(13)]);
        assert!(all_positive(&d));
    }

    #[test]
    fn float_pivots_are_minor_ratios() {
        let m = alloc::vec![alloc::vec![2.0, 1.0, 1.0], alloc::vec![1.0, 3.0, 2.0], alloc::vec![1.0, 2.0, 4.0],];
        let p = elimination_pivots(m.clone());
        assert!((p[1] - 2.5).abs() < 1e-15 && (p[2] - 2.6).abs() < 1e-15);
        assert!((determinant(m) - 13.0).abs() < 1e-13);
    }
}
