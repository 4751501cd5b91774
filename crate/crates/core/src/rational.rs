//! Exact rational scalars.
//!
//! Every numeric quantity in the crate (Fourier coefficients, norms,
//! intersection numbers) is a [`Rat`]: an arbitrary-precision rational
//! stored in lowest terms with positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}: expected an integer or \"p/q\" with q > 0")]
pub struct ParseRatError(pub String);

/// Parses `"p/q"` or an integer literal into a [`Rat`].
///
/// The denominator must be a positive integer; whitespace is not trimmed.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| err())?;
            Ok(Rat::from_integer(n))
        }
        Some((ns, ds)) => {
            let n: BigInt = ns.parse().map_err(|_| err())?;
            let d: BigInt = ds.parse().map_err(|_| err())?;
            if d <= BigInt::from(0) {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rat("120").unwrap(), rat_i(120));
        assert_eq!(parse_rat("-5/2").unwrap(), rat(-5, 2));
        assert_eq!(parse_rat("3/14").unwrap(), rat(3, 14));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "1/-2", "a", "1/2/3", "1.5"] {
            assert!(parse_rat(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn display_is_exact_p_over_q() {
        assert_eq!(rat(-5, 2).to_string(), "-5/2");
        assert_eq!(rat(4, 2).to_string(), "2");
    }
}
