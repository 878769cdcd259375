//! Scalar abstraction shared by the LP and flow kernels.
//!
//! Every solver path is instantiated with [`Rational`](crate::Rational); the
//! generic parameter exists so the same kernels can run over any exact
//! ordered field (for instance `Ratio<i64>` in quick tests).

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// An exact ordered field.
pub trait Field:
    Clone
    + Ord
    + Debug
    + Display
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("integer conversion into an exact field")
    }

    /// True when the value has no fractional part.
    fn is_integral(&self) -> bool;
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + FromPrimitive + Send + Sync,
    Ratio<T>: Ord
        + Num
        + Signed
        + FromPrimitive
        + for<'a> AddAssign<&'a Ratio<T>>
        + for<'a> SubAssign<&'a Ratio<T>>
        + for<'a> MulAssign<&'a Ratio<T>>
        + for<'a> DivAssign<&'a Ratio<T>>,
{
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Builds a rational from an integer.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Builds the rational `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `p/q`, or `-p/q` into lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Converts an integral rational into `i64`, if it fits.
pub fn to_i64(value: &BigRational) -> Option<i64> {
    if value.is_integer() {
        value.numer().to_i64()
    } else {
        None
    }
}

/// `floor(log2(value))` for a positive integer.
pub fn floor_log2(value: &BigInt) -> u64 {
    assert!(value.is_positive(), "floor_log2 of a non-positive integer");
    value.bits() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 6 / -4 ").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&ratio(4, 6)), "2/3");
        assert_eq!(fmt_rational(&int(7)), "7");
    }

    #[test]
    fn log2_floor() {
        assert_eq!(floor_log2(&BigInt::from(1)), 0);
        assert_eq!(floor_log2(&BigInt::from(18)), 4);
        assert_eq!(floor_log2(&BigInt::from(32)), 5);
    }

    #[test]
    fn small_ratio_is_a_field() {
        fn halve<T: Field>(x: &T) -> T {
            let mut y = x.clone();
            y /= &T::from_int(2);
            y
        }
        assert_eq!(halve(&Ratio::<i64>::from_integer(3)), Ratio::new(3, 2));
        assert!(Ratio::<i64>::from_integer(4).is_integral());
    }
}
