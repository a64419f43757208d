use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{integer_digits, zeta_reference_with_budget, Rat, DEFAULT_DIGIT_BUDGET};
use crate::error::Result;

/// Rounds `value` to `digits` decimal places, ties to even. Zero is never
/// printed with a minus sign.
pub fn render_rational(value: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = value.abs() * Rat::from_integer(scale);
    let (mut q, r) = scaled.numer().div_mod_floor(scaled.denom());
    let twice = r * 2u32;
    let den = scaled.denom();
    if &twice > den || (&twice == den && q.is_odd()) {
        q += 1;
    }
    let negative = value.is_negative() && !q.is_zero();
    let mut text = q.to_string();
    let width = digits as usize + 1;
    if text.len() < width {
        text = format!("{}{}", "0".repeat(width - text.len()), text);
    }
    let split = text.len() - digits as usize;
    let (whole, frac) = text.split_at(split);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Renders `alpha·ζ(2) + beta` correctly rounded (ties to even) to `digits`
/// decimal places.
pub fn render_decimal(alpha: &Rat, beta: &Rat, digits: u32) -> Result<String> {
    render_decimal_with_budget(alpha, beta, digits, DEFAULT_DIGIT_BUDGET)
}

pub fn render_decimal_with_budget(
    alpha: &Rat,
    beta: &Rat,
    digits: u32,
    budget: u32,
) -> Result<String> {
    if alpha.is_zero() {
        return Ok(render_rational(beta, digits));
    }
    let mut extra = 5;
    loop {
        let precision = digits + integer_digits(alpha) + extra;
        let zeta2 = zeta_reference_with_budget(2, precision, budget)?;
        let value = zeta2.scale(alpha).shift(beta);
        let lo = render_rational(value.lo(), digits);
        let hi = render_rational(value.hi(), digits);
        if lo == hi {
            return Ok(lo);
        }
        extra += 10;
    }
}

/// `value` in scientific notation with `significant` digits, e.g. `2.50000e-3`.
pub fn format_scientific(value: &Rat, significant: u32) -> String {
    assert!(significant >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let magnitude = value.abs();
    let mut exp =
        magnitude.numer().to_string().len() as i64 - magnitude.denom().to_string().len() as i64;
    let pow10 = |e: i64| -> Rat {
        let p = Rat::from_integer(BigInt::from(10).pow(e.unsigned_abs() as u32));
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    while magnitude < pow10(exp) {
        exp -= 1;
    }
    while magnitude >= pow10(exp + 1) {
        exp += 1;
    }
    let mut mantissa = render_rational(&(&magnitude / pow10(exp)), significant - 1);
    if mantissa.starts_with("10") {
        exp += 1;
        mantissa = render_rational(&(&magnitude / pow10(exp)), significant - 1);
    }
    format!("{sign}{mantissa}e{exp}")
}
