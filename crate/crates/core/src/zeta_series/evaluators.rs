//! Certified numeric enclosures of `I_s` from truncated series.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{factorial, inv_pow, Interval, Rat};
use crate::polynomials::PolySpec;

/// `B(a, b) = (a−1)! (b−1)! / (a+b−1)!` for integers `a, b ≥ 1`.
pub fn beta_rat(a: u64, b: u64) -> Rat {
    assert!(
        a >= 1 && b >= 1,
        "beta_rat needs positive integer arguments"
    );
    Rat::new(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))
}

fn big(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `Σ_r coeff_r / (r + x)`.
fn shifted_reciprocal_sum(p: &PolySpec, x: u64) -> Rat {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| c / big(r as u64 + x))
        .sum()
}

/// Upper bound for `|Σ_r c_r/(r+x)|` as a polynomial in `1/x` with
/// nonnegative weights (index = power of `1/x`).
///
/// Expands `1/(r+x) = Σ_{j<J} (−r)^j / x^(j+1) + (−r)^J / (x^J (x+r))` with
/// `J = deg + 1`, keeping the exact moments `Σ c_r (−r)^j` and bounding the
/// remainder by `Σ |c_r| r^J / x^(J+1)`.
fn moment_majorant(p: &PolySpec) -> Vec<Rat> {
    let order = p.degree() + 1;
    let mut weights = vec![Rat::zero(); order + 2];
    for j in 0..order {
        let moment: Rat = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(r, c)| c * Rat::from_integer(BigInt::from(-(r as i64)).pow(j as u32)))
            .sum();
        weights[j + 1] = moment.abs();
    }
    weights[order + 1] = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(r, c)| c.abs() * Rat::from_integer(BigInt::from(r).pow(order as u32)))
        .sum();
    weights
}

fn poly_product(lhs: &[Rat], rhs: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); lhs.len() + rhs.len() - 1];
    for (i, a) in lhs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in rhs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `Σ_{k≥K} 1/(k+1)^d ≤ 1 / ((d−1) K^(d−1))` for `d ≥ 2`.
fn power_tail(d: usize, k: u64) -> Rat {
    debug_assert!(d >= 2);
    inv_pow(k, (d - 1) as u32) / big(d as u64 - 1)
}

/// Partial sum of the series form of `I_s` over `k = 0..K−1`, widened by a
/// certified tail bound.
///
/// Each term factors as `A(k) B(k) C(k) / (k+1)^(s−3)` with
/// `A(k) = Σ a_r/(r+k+1)`. The tail is the smaller of the uniform bound
/// `(Σ|a|)(Σ|b|)(Σ|c|) / ((s−1) K^(s−1))` and a moment bound that exploits
/// cancellation in `A`, `B`, `C`; both shrink consistently with the partial
/// sums, so enclosures are nested in `K`.
pub fn eval_truncated(
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
    s: u32,
    terms: u64,
) -> Result<Interval> {
    if s < 3 {
        return Err(Error::OrderTooSmall { order: s, min: 3 });
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("eval_truncated needs K >= 1".into()));
    }
    let mut sum = Rat::zero();
    for k in 0..terms {
        let x = k + 1;
        let a = shifted_reciprocal_sum(p, x);
        if a.is_zero() {
            continue;
        }
        let b = shifted_reciprocal_sum(q, x);
        let c = shifted_reciprocal_sum(t, x);
        sum += a * b * c * inv_pow(x, s - 3);
    }

    let uniform = p.abs_sum() * q.abs_sum() * t.abs_sum() * power_tail(s as usize, terms);
    let mut majorant = poly_product(
        &poly_product(&moment_majorant(p), &moment_majorant(q)),
        &moment_majorant(t),
    );
    let mut shifted = vec![Rat::zero(); (s - 3) as usize];
    shifted.append(&mut majorant);
    let moment: Rat = shifted
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(d, w)| w * power_tail(d, terms))
        .sum();
    let tail = if moment < uniform { moment } else { uniform };
    Ok(Interval::around(&sum, &tail))
}

/// `I_s` for `P = shifted_legendre(n)`, `Q = binomial_poly(n)` via
///
/// ```text
/// I_s = (−1)^n Σ_{k≥n} C(k, n) · B(k+1, n+1)² · T(k, n) / (k+1)^(s−3),
/// T(k, n) = Σ_i c_i / (k+1+i),
/// ```
///
/// summing `K` terms from `k = n`. Since `C(k, n) B(k+1, n+1) ≤ 1` and
/// `|T(k, n)| ≤ Σ|c| / (k+1)`, the tail from `k0 = n + K` is at most
/// `Σ|c| · Σ_{k≥k0} B(k+1, n+1) / (k0+1)^(s−2) = Σ|c| · B(n, k0+1) / (k0+1)^(s−2)`.
pub fn eval_special_series(n: usize, t: &PolySpec, s: u32, terms: u64) -> Result<Interval> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "eval_special_series needs n >= 1".into(),
        ));
    }
    if s < 3 {
        return Err(Error::OrderTooSmall { order: s, min: 3 });
    }
    if terms == 0 {
        return Err(Error::InvalidArgument(
            "eval_special_series needs K >= 1".into(),
        ));
    }
    let n64 = n as u64;
    // weight_k = C(k, n) · B(k+1, n+1)²
    let beta_start = beta_rat(n64 + 1, n64 + 1);
    let mut weight = &beta_start * &beta_start;
    let mut sum = Rat::zero();
    for k in n64..n64 + terms {
        let tk = shifted_reciprocal_sum(t, k + 1);
        sum += &weight * tk * inv_pow(k + 1, s - 3);
        let ratio = big(k + 1) / big(k + 1 - n64) * (big(k + 1) / big(k + n64 + 2)).pow(2);
        weight *= ratio;
    }
    if n % 2 == 1 {
        sum = -sum;
    }
    let first_omitted = n64 + terms;
    let tail = t.abs_sum() * beta_rat(n64, first_omitted + 1) * inv_pow(first_omitted + 1, s - 2);
    Ok(Interval::around(&sum, &tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, pow2_neg, rat, zeta_reference};
    use crate::polynomials::{binomial_poly, explicit_poly, shifted_legendre};

    fn one() -> PolySpec {
        explicit_poly(vec![int(1)]).unwrap()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_rat(1, 1), int(1));
        assert_eq!(beta_rat(2, 2), rat(1, 6));
        assert_eq!(beta_rat(3, 2), rat(1, 12));
        assert_eq!(beta_rat(2, 3), beta_rat(3, 2));
    }

    #[test]
    fn truncated_constant_polynomials_enclose_zeta4() {
        let e = eval_truncated(&one(), &one(), &one(), 4, 10).unwrap();
        let z4 = zeta_reference(4, 20).unwrap();
        assert!(e.contains_interval(&z4));
    }

    #[test]
    fn truncated_zero_polynomial() {
        let zero = explicit_poly(vec![int(0)]).unwrap();
        let e = eval_truncated(&shifted_legendre(2), &binomial_poly(2), &zero, 3, 5).unwrap();
        assert_eq!(e, Interval::point(int(0)));
    }

    #[test]
    fn truncated_nested_in_k() {
        let p = shifted_legendre(2);
        let q = binomial_poly(2);
        let t = explicit_poly(vec![int(1), int(-1), rat(1, 2)]).unwrap();
        for s in 3..=5 {
            let mut prev = eval_truncated(&p, &q, &t, s, 1).unwrap();
            for k in [2, 3, 5, 8, 13, 40] {
                let next = eval_truncated(&p, &q, &t, s, k).unwrap();
                assert!(prev.contains_interval(&next), "s={s} K={k}");
                prev = next;
            }
        }
    }

    #[test]
    fn truncated_tail_not_above_uniform_bound() {
        let p = shifted_legendre(3);
        let q = binomial_poly(3);
        let t = one();
        let e = eval_truncated(&p, &q, &t, 3, 7).unwrap();
        let uniform = p.abs_sum() * q.abs_sum() * t.abs_sum() * power_tail(3, 7);
        assert!(e.width() <= uniform * int(2));
    }

    #[test]
    fn special_series_agrees_with_truncated() {
        let t = one();
        let special = eval_special_series(2, &t, 3, 200).unwrap();
        let direct = eval_truncated(&shifted_legendre(2), &binomial_poly(2), &t, 3, 200).unwrap();
        assert!(special.intersects(&direct));
    }

    #[test]
    fn special_series_bound_and_sign() {
        let t = one();
        let e = eval_special_series(5, &t, 3, 60).unwrap();
        let bound = pow2_neg(10);
        assert!(e.lo() > &-bound.clone() && e.hi() < &bound);
        for n in [1usize, 3, 5, 7] {
            assert!(
                eval_special_series(n, &t, 3, 80).unwrap().is_negative(),
                "n={n}"
            );
        }
        for n in [2usize, 4, 6] {
            assert!(
                eval_special_series(n, &t, 3, 80).unwrap().is_positive(),
                "n={n}"
            );
        }
    }

    #[test]
    fn special_series_nested_in_k() {
        let t = explicit_poly(vec![int(1), int(-1)]).unwrap();
        let mut prev = eval_special_series(3, &t, 4, 1).unwrap();
        for k in [2, 4, 9, 30] {
            let next = eval_special_series(3, &t, 4, k).unwrap();
            assert!(prev.contains_interval(&next));
            prev = next;
        }
    }

    #[test]
    fn argument_checks() {
        assert!(eval_special_series(0, &one(), 3, 5).is_err());
        assert!(eval_truncated(&one(), &one(), &one(), 2, 5).is_err());
        assert!(eval_truncated(&one(), &one(), &one(), 3, 0).is_err());
    }
}
