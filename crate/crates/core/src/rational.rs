//! Exact rational arithmetic helpers.
//!
//! All costs and probabilities in this crate are `BigRational` values, so
//! every theorem-style check is an exact equality, never a float tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number used for all costs and probabilities.
pub type Rat = BigRational;

/// Integer-valued rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct RatParseError {
    pub input: String,
    pub reason: String,
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let err = |reason: &str| RatParseError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(err("empty string"));
    }
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| err("not an integer"))?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
            let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
            if q.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Formats as `"p/q"`, or just `"p"` when the value is an integer.
/// `parse_rat` accepts both forms, so the round trip is lossless.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is in `[0, 1]`.
pub fn is_probability(r: &Rat) -> bool {
    !r.is_negative() && *r <= rat_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "17", "-3", "5/3", "-7/2", "21/20"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // normalization
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }
}
