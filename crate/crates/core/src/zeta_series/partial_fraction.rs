//! The ground-truth decomposition: partial fractions in the summation
//! variable, summed termwise.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ZetaCombination;
use crate::error::{Error, Result};
use crate::numerics::{harmonic, rat_to_string, Rat};
use crate::polynomials::PolySpec;

/// Taylor coefficients `[u^0 .. u^(len-1)]` of `(d + u)^(-e)` for `d ≠ 0`.
fn inverse_power_series(d: i64, e: u32, len: usize) -> Vec<Rat> {
    let d = Rat::from_integer(BigInt::from(d));
    let mut out = Vec::with_capacity(len);
    // (−1)^t C(e+t−1, t) d^(−e−t)
    let mut binom = BigInt::one();
    let mut power = Rat::one() / num_traits::pow(d.clone(), e as usize);
    for t in 0..len {
        let sign = if t % 2 == 1 { -Rat::one() } else { Rat::one() };
        out.push(sign * Rat::from_integer(binom.clone()) * &power);
        binom = binom * BigInt::from(e as usize + t) / BigInt::from(t + 1);
        power /= &d;
    }
    out
}

fn truncated_product(lhs: &[Rat], rhs: &[Rat]) -> Vec<Rat> {
    (0..lhs.len())
        .map(|t| (0..=t).map(|i| &lhs[i] * &rhs[t - i]).sum())
        .collect()
}

/// Exact value of `Σ_{m≥1} 1 / ((m+r1)(m+r2)(m+r3) m^(s−3))`.
///
/// The summand is split over its poles `m = −ρ`; the pole at `m = 0` carries
/// multiplicity `s − 3` plus one for every zero shift. Coefficients come from
/// the residue formula (Taylor expansion of the cofactor at each pole), and
/// the termwise sums are `Σ 1/(m+ρ)^q = ζ(q) − H_ρ^(q)` for `q ≥ 2` and
/// `Σ (1/m − 1/(m+ρ)) = H_ρ` for the simple poles, whose residues must cancel.
pub fn partial_fraction_sum(r1: u32, r2: u32, r3: u32, s: u32) -> Result<ZetaCombination> {
    if s < 3 {
        return Err(Error::OrderTooSmall { order: s, min: 3 });
    }
    let mut poles: BTreeMap<u32, u32> = BTreeMap::new();
    if s > 3 {
        poles.insert(0, s - 3);
    }
    for r in [r1, r2, r3] {
        *poles.entry(r).or_insert(0) += 1;
    }

    let mut out = ZetaCombination::zero();
    let mut simple_residues = Rat::zero();
    for (&rho, &mult) in &poles {
        let len = mult as usize;
        let mut cofactor = vec![Rat::zero(); len];
        cofactor[0] = Rat::one();
        for (&sigma, &other_mult) in &poles {
            if sigma != rho {
                let series =
                    inverse_power_series(i64::from(sigma) - i64::from(rho), other_mult, len);
                cofactor = truncated_product(&cofactor, &series);
            }
        }
        // coefficient of (m+ρ)^(−j) is the Taylor coefficient of order mult − j
        for j in 1..=mult {
            let c = &cofactor[(mult - j) as usize];
            if c.is_zero() {
                continue;
            }
            if j == 1 {
                simple_residues += c;
                out.add_constant(&(-c * harmonic(rho, 1)));
            } else {
                out.add_zeta(j, c);
                out.add_constant(&(-c * harmonic(rho, j)));
            }
        }
    }
    if !simple_residues.is_zero() {
        return Err(Error::Divergent {
            params: (r1, r2, r3, s),
            residue_sum: rat_to_string(&simple_residues),
        });
    }
    Ok(out)
}

/// `I_s = Σ_{r1,r2,r3} a_r1 b_r2 c_r3 · partial_fraction_sum(r1, r2, r3, s)`.
///
/// The polynomials may have different degrees.
pub fn decompose_integral(
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
    s: u32,
) -> Result<ZetaCombination> {
    let mut cache: HashMap<[u32; 3], ZetaCombination> = HashMap::new();
    let mut out = ZetaCombination::zero();
    for (r1, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (r2, b) in q.coeffs().iter().enumerate() {
            let ab = a * b;
            if ab.is_zero() {
                continue;
            }
            for (r3, c) in t.coeffs().iter().enumerate() {
                let weight = &ab * c;
                if weight.is_zero() {
                    continue;
                }
                let mut key = [r1 as u32, r2 as u32, r3 as u32];
                key.sort_unstable();
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                    e.insert(partial_fraction_sum(key[0], key[1], key[2], s)?);
                }
                out.add_scaled(&cache[&key], &weight);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};
    use crate::polynomials::{binomial_poly, explicit_poly, shifted_legendre};
    use proptest::prelude::*;

    fn combo(constant: Rat, terms: &[(u32, Rat)]) -> ZetaCombination {
        let mut c = ZetaCombination::zero();
        c.add_constant(&constant);
        for (p, v) in terms {
            c.add_zeta(*p, v);
        }
        c
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            partial_fraction_sum(0, 0, 0, 3).unwrap(),
            ZetaCombination::zeta(3)
        );
        assert_eq!(
            partial_fraction_sum(1, 1, 1, 3).unwrap(),
            combo(int(-1), &[(3, int(1))])
        );
        assert_eq!(
            partial_fraction_sum(1, 0, 0, 3).unwrap(),
            combo(int(-1), &[(2, int(1))])
        );
    }

    #[test]
    fn hand_decompositions() {
        // 1/(m(m+1)(m+2)) = 1/(2m) − 1/(m+1) + 1/(2(m+2)) → −(−1·1 + ½·3/2) = 1/4
        assert_eq!(
            partial_fraction_sum(0, 1, 2, 3).unwrap(),
            combo(rat(1, 4), &[])
        );
        // Σ 1/(m+2)^3 = ζ(3) − 1 − 1/8
        assert_eq!(
            partial_fraction_sum(2, 2, 2, 3).unwrap(),
            combo(rat(-9, 8), &[(3, int(1))])
        );
        // 1/(m^2 (m+1)) at s = 4 → 1/(m^3(m+1)) = 1/m^3 − 1/m^2 + 1/m − 1/(m+1)
        assert_eq!(
            partial_fraction_sum(1, 0, 0, 4).unwrap(),
            combo(int(1), &[(3, int(1)), (2, int(-1))])
        );
    }

    #[test]
    fn rejects_low_order() {
        assert_eq!(
            partial_fraction_sum(0, 0, 0, 2),
            Err(Error::OrderTooSmall { order: 2, min: 3 })
        );
    }

    #[test]
    fn constant_polynomials_give_zeta_s() {
        let one = explicit_poly(vec![int(1)]).unwrap();
        for s in 3..=6 {
            assert_eq!(
                decompose_integral(&one, &one, &one, s).unwrap(),
                ZetaCombination::zeta(s)
            );
        }
    }

    #[test]
    fn single_term_accumulation() {
        let x = explicit_poly(vec![int(0), int(1)]).unwrap();
        let one = explicit_poly(vec![int(1)]).unwrap();
        assert_eq!(
            decompose_integral(&x, &one, &one, 3).unwrap(),
            partial_fraction_sum(1, 0, 0, 3).unwrap()
        );
    }

    #[test]
    fn legendre_binomial_degree_one() {
        // a = [1, −2], b = [1, −1]: the four (r1, r2) terms accumulated by hand
        let p = shifted_legendre(1);
        let q = binomial_poly(1);
        let one = explicit_poly(vec![int(1)]).unwrap();
        let mut expected = ZetaCombination::zero();
        for (r1, a) in [(0u32, int(1)), (1, int(-2))] {
            for (r2, b) in [(0u32, int(1)), (1, int(-1))] {
                expected.add_scaled(
                    &partial_fraction_sum(r1, r2, 0, 3).unwrap(),
                    &(a.clone() * b),
                );
            }
        }
        let got = decompose_integral(&p, &q, &one, 3).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, combo(int(7), &[(3, int(1)), (2, int(-5))]));
    }

    proptest! {
        #[test]
        fn permutation_invariant(r1 in 0u32..7, r2 in 0u32..7, r3 in 0u32..7, s in 3u32..8) {
            let base = partial_fraction_sum(r1, r2, r3, s).unwrap();
            for perm in [(r2, r1, r3), (r3, r2, r1), (r1, r3, r2), (r2, r3, r1), (r3, r1, r2)] {
                prop_assert_eq!(&base, &partial_fraction_sum(perm.0, perm.1, perm.2, s).unwrap());
            }
        }

        #[test]
        fn simple_poles_always_cancel(r1 in 0u32..12, r2 in 0u32..12, r3 in 0u32..12, s in 3u32..10) {
            prop_assert!(partial_fraction_sum(r1, r2, r3, s).is_ok());
        }
    }
}
