//! Exact rationals. Every weight, coefficient and intersection number in the
//! crate is a [`Rational`]; nothing is ever rounded.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Formats as `p/q` in lowest terms, printing `p/1` for integers.
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses the `p/q` (or bare integer `p`) form written by
/// [`to_fraction_string`]. Returns `None` on malformed input or a zero
/// denominator.
pub fn parse_fraction(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}
