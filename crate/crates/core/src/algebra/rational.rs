//! Scalar types: arbitrary-precision integers and rationals.
//!
//! Backed by `num-bigint` / `num-rational`, which keep rationals in lowest
//! terms with a positive denominator. Helpers here cover construction,
//! parsing and the denominator bookkeeping the rest of the crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

/// Integer as a rational.
pub fn int(value: i64) -> Rat {
    Rat::from_integer(Int::from(value))
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn lcm_of_denominators(values: &[Rat]) -> Int {
    let mut acc = Int::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rat(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parse `p` or `p/q` into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let parse_int = |s: &str| -> Result<Int, Error> {
        s.trim()
            .parse::<Int>()
            .map_err(|_| Error::InvalidInput(format!("not an integer: `{s}`")))
    };
    match text.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in `{text}`")));
            }
            Ok(Rat::new(parse_int(num)?, d))
        }
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(value: &Rat) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}
