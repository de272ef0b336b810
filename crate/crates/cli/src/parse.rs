//! Exact parsing of weight lists such as `1,1,1,2/5,0.4`.

use m0n_core::combinatorics::MAX_POINTS;
use m0n_core::rational::{parse_fraction, to_fraction_string};
use m0n_core::{Error as CoreError, Rational, WeightDatum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("malformed weight '{token}' at position {position}: expected p/q or a finite decimal")]
    Malformed { position: usize, token: String },
    #[error("weight {position} is {value}, outside the range 0 < a <= 1")]
    OutOfRange { position: usize, value: String },
    #[error("weights sum to {total}, below the minimum total of 2")]
    TotalBelowTwo { total: String },
    #[error("{count} weights given; at least 4 points are needed")]
    TooFew { count: usize },
    #[error("{count} weights given; at most {max} points are supported")]
    TooMany { count: usize, max: usize },
}

/// One entry: `p/q`, an integer, or a finite decimal such as `0.35` or `.5`.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if token.contains('/') {
        return parse_fraction(token);
    }
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if whole.is_empty() && frac.is_empty() || !digits(whole) || !digits(frac) {
        return None;
    }
    let numer: BigInt = format!("{whole}{frac}")
        .trim_start_matches('0')
        .parse()
        .unwrap_or_else(|_| BigInt::zero());
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Parses a comma-separated list and validates it as a weight datum.
pub fn parse_weights(text: &str) -> Result<WeightDatum, WeightError> {
    let mut weights = Vec::new();
    for (k, token) in text.split(',').enumerate() {
        let position = k + 1;
        let value = parse_rational(token).ok_or_else(|| WeightError::Malformed {
            position,
            token: token.trim().to_string(),
        })?;
        if value <= Rational::zero() || value > Rational::one() {
            return Err(WeightError::OutOfRange {
                position,
                value: to_fraction_string(&value),
            });
        }
        weights.push(value);
    }
    let count = weights.len();
    if count > MAX_POINTS {
        return Err(WeightError::TooMany {
            count,
            max: MAX_POINTS,
        });
    }
    WeightDatum::new(weights).map_err(|e| match e {
        CoreError::TotalBelowTwo { total } => WeightError::TotalBelowTwo {
            total: to_fraction_string(&total),
        },
        CoreError::TooFewPoints(count) => WeightError::TooFew { count },
        other => unreachable!("entries were range-checked: {other}"),
    })
}
