use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// The coefficient field: arbitrary-precision rationals, always in lowest terms.
pub type Scalar = BigRational;

/// Integer as a scalar.
pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n / d` as a scalar. Panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text: `"p"` for integers, `"p/q"` otherwise, with the sign on the numerator.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optional sign on either part, whitespace tolerated).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::Format(format!("not a rational: {text:?}"));
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad());
    match text.split_once('/') {
        None => Ok(Scalar::from_integer(int(text)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_positive() || d.is_negative() {
                Ok(Scalar::new(int(n)?, d))
            } else {
                Err(bad())
            }
        }
    }
}
