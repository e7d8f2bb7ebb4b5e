//! Exact rational arithmetic helpers.
//!
//! All divisiveness values, scores, and index values are exact rationals.
//! Argmax/argmin sets must be bit-exact, so no floating point enters any
//! exact-mode computation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The exact number type used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

/// Parses `p/q` or a plain integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as `p/q` (or `p` when integral).
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Advisory decimal companion to the normative `p/q` form.
pub fn approx(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let scale = BigInt::from(1_000_000_000_000i64);
        let scaled = (r * Rat::from_integer(scale)).round();
        scaled.numer().to_f64().unwrap_or(f64::NAN) / 1e12
    })
}

/// |a - b| without leaving exact arithmetic.
pub fn abs_diff(a: &Rat, b: &Rat) -> Rat {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-2", "1/100", "22/7", "-5/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(format_rat(&parse_rat("4/8").unwrap()), "1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
