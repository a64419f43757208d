//! Exact arithmetic substrate: rationals, harmonic numbers, certified
//! enclosures of ζ(p), and decimal rendering.

mod harmonic;
mod interval;
mod render;
mod zeta_ref;

pub use harmonic::{harmonic, HarmonicTable};
pub use interval::Interval;
pub use render::{format_scientific, render_decimal, render_decimal_with_budget, render_rational};
pub use zeta_ref::{
    bernoulli_numbers, zeta_reference, zeta_reference_with_budget, DEFAULT_DIGIT_BUDGET,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical reduced form (positive denominator).
pub type Rat = num_rational::BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// `1 / base^exp` for a positive integer base.
pub fn inv_pow(base: u64, exp: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(base).pow(exp))
}

pub fn pow2_neg(exp: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << exp as usize)
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let trimmed = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Parses a comma-separated list of rationals, lowest degree first.
pub fn parse_rat_list(text: &str) -> Result<Vec<Rat>> {
    if text.trim().is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    text.split(',').map(parse_rat).collect()
}

/// Canonical `"p/q"` (or `"p"`) form used in JSON output.
pub fn rat_to_string(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn abs(value: &Rat) -> Rat {
    value.abs()
}

/// Number of decimal digits in the integer part of |value| (at least 1).
pub(crate) fn integer_digits(value: &Rat) -> u32 {
    let whole = value.abs().to_integer();
    if whole.is_zero() {
        1
    } else {
        whole.to_string().len() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat(" -3/2 ").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(
            parse_rat_list("1,-3/2,0").unwrap(),
            vec![int(1), rat(-3, 2), int(0)]
        );
        assert_eq!(parse_rat_list(""), Err(Error::EmptyCoefficients));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(-4, 6)), "-2/3");
        assert_eq!(rat_to_string(&int(5)), "5");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }
}
