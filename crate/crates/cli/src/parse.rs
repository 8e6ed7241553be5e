use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

/// Parses `p`, `p/q` or a plain decimal such as `2.75` into an exact rational.
pub fn rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("cannot read {s:?} as a rational number");
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let v = BigRational::new(digits, if frac.is_empty() { BigInt::one() } else { scale });
    Ok(if neg { -v } else { v })
}

/// Exact rationals print as integers when possible.
pub fn show(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn forms() {
        assert_eq!(rational("3").unwrap(), q(3, 1));
        assert_eq!(rational("5/3").unwrap(), q(5, 3));
        assert_eq!(rational("2.75").unwrap(), q(11, 4));
        assert_eq!(rational("-0.5").unwrap(), q(-1, 2));
        assert!(rational("1/0").is_err());
        assert!(rational("abc").is_err());
        assert!(rational(".").is_err());
        assert_eq!(show(&q(109, 1)), "109");
        assert_eq!(show(&q(109, 40)), "109/40");
    }
}
