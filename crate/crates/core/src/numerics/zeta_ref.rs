//! Certified enclosures of ζ(p) by Euler–Maclaurin summation.
//!
//! ζ(p) = Σ_{j<N} j^-p + N^{1-p}/(p-1) + N^-p/2
//!        + Σ_{i=1..M} B_{2i}/(2i)! · p(p+1)…(p+2i-2) · N^{-(p+2i-1)} + R,
//!
//! and for real p > 1 the remainder R is bounded in magnitude by the first
//! omitted correction term.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{inv_pow, Interval, Rat};
use crate::error::{Error, Result};

pub const DEFAULT_DIGIT_BUDGET: u32 = 10_000;

fn bernoulli_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rat::one()]))
}

/// Bernoulli numbers `B_0..=B_max` (convention B_1 = −1/2).
pub fn bernoulli_numbers(max: usize) -> Vec<Rat> {
    let mut table = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= max {
        // Σ_{k=0..m} C(m+1, k) B_k = 0
        let m = table.len();
        let mut binom = BigInt::one();
        let mut acc = Rat::zero();
        for (k, b) in table.iter().enumerate() {
            acc += b * Rat::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let next = -acc / Rat::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[..=max].to_vec()
}

fn ten_pow(exp: u32) -> BigInt {
    BigInt::from(10).pow(exp)
}

/// Rounds down (`up = false`) or up onto the grid `1/den`.
pub(crate) fn round_to_grid(value: &Rat, den: &BigInt, up: bool) -> Rat {
    let scaled = value * Rat::from_integer(den.clone());
    let (q, r) = scaled.numer().div_mod_floor(scaled.denom());
    let q = if up && !r.is_zero() { q + 1 } else { q };
    Rat::new(q, den.clone())
}

/// Certified enclosure of ζ(p) with width `< 10^-digits`, using the default
/// digit budget.
pub fn zeta_reference(p: u32, digits: u32) -> Result<Interval> {
    zeta_reference_with_budget(p, digits, DEFAULT_DIGIT_BUDGET)
}

/// As [`zeta_reference`] with an explicit digit budget.
///
/// Enclosures for increasing `digits` are nested: the result is padded by
/// `10^-digits / 8` around an Euler–Maclaurin enclosure of width below
/// `10^-digits / 2`, so any tighter enclosure lies inside it.
pub fn zeta_reference_with_budget(p: u32, digits: u32, budget: u32) -> Result<Interval> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta_reference needs p >= 2, got {p}"
        )));
    }
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be >= 1".into()));
    }
    if digits > budget {
        return Err(Error::PrecisionBudget {
            requested: digits,
            budget,
        });
    }
    let tol = Rat::new(BigInt::one(), ten_pow(digits));
    let quarter_tol = &tol / Rat::from_integer(4.into());
    let n = u64::from(digits) + 10;

    let mut sum: Rat = (1..n).map(|j| inv_pow(j, p)).sum();
    let p_rat = Rat::from_integer(p.into());
    sum += inv_pow(n, p - 1) / (&p_rat - Rat::one());
    sum += inv_pow(n, p) / Rat::from_integer(2.into());

    // term_i = B_{2i}/(2i)! · (p)_{2i-1} · n^{-(p+2i-1)}
    let max_terms = 4 * n as usize;
    let mut bern = bernoulli_numbers(2 * 32 + 2);
    let mut rising = p_rat.clone(); // (p)_{2i-1}
    let mut fact = Rat::from_integer(2.into()); // (2i)!
    let n_sq = Rat::from_integer(BigInt::from(n) * BigInt::from(n));
    let mut power = inv_pow(n, p + 1); // n^{-(p+2i-1)}
    let mut i = 1usize;
    let remainder = loop {
        if bern.len() <= 2 * i + 2 {
            bern = bernoulli_numbers(4 * i + 2);
        }
        let term = &bern[2 * i] / &fact * &rising * &power;
        if term.abs() < quarter_tol || i > max_terms {
            break term.abs();
        }
        sum += term;
        let k = Rat::from_integer(BigInt::from(p as usize + 2 * i - 1));
        rising = rising * &k * (&k + Rat::one());
        fact *= Rat::from_integer(BigInt::from((2 * i + 1) * (2 * i + 2)));
        power /= &n_sq;
        i += 1;
    };
    if remainder >= quarter_tol {
        return Err(Error::PrecisionBudget {
            requested: digits,
            budget,
        });
    }

    let pad = &tol / Rat::from_integer(8.into());
    let grid = ten_pow(digits + 3);
    let lo = round_to_grid(&(&sum - &remainder - &pad), &grid, false);
    let hi = round_to_grid(&(&sum + &remainder + &pad), &grid, true);
    Ok(Interval::new(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn width_contract() {
        for (p, d) in [(2, 1), (2, 10), (3, 10), (5, 40)] {
            let z = zeta_reference(p, d).unwrap();
            assert!(z.width() < Rat::new(1.into(), ten_pow(d)), "p={p} d={d}");
        }
    }

    #[test]
    fn known_leading_digits() {
        // ζ(2) = 1.6449340668482264…, ζ(3) = 1.2020569031595942…
        let z2 = zeta_reference(2, 12).unwrap();
        assert!(z2.lo() > &rat(16_449_340_668, 10_000_000_000));
        assert!(z2.hi() < &rat(16_449_340_669, 10_000_000_000));
        let z3 = zeta_reference(3, 12).unwrap();
        assert!(z3.lo() > &rat(12_020_569_031, 10_000_000_000));
        assert!(z3.hi() < &rat(12_020_569_032, 10_000_000_000));
    }

    #[test]
    fn nested_under_increasing_digits() {
        for p in 2..=6 {
            let coarse = zeta_reference(p, 10).unwrap();
            let fine = zeta_reference(p, 20).unwrap();
            assert!(coarse.contains_interval(&fine), "p={p}");
        }
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(matches!(
            zeta_reference(1, 5),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            zeta_reference_with_budget(3, 50, 20),
            Err(Error::PrecisionBudget {
                requested: 50,
                budget: 20
            })
        ));
    }
}
