//! Exact checks of the reciprocal-splitting identities
//!
//! ```text
//! 1/((r+x)^e x^s) = Σ_j (−1)^(j−1) w_e(j) / (r^(j+e−1) x^(s+1−j)) + pole terms at x = −r,
//! ```
//!
//! for `e = 1, 2, 3` and `x = k + 1`, plus the `s = 1`, `e = 3` base case written out.

use num_traits::Zero;
use serde::Serialize;

use crate::numerics::{inv_pow, Rat};

/// Which identity an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    SimplePole,
    DoublePole,
    TriplePole,
    TriplePoleBase,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::SimplePole,
        Identity::DoublePole,
        Identity::TriplePole,
        Identity::TriplePoleBase,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Failure {
    pub identity: Identity,
    pub r: u64,
    pub k: u64,
    pub s: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub checked: usize,
    pub checked_by_identity: Vec<(Identity, usize)>,
    pub failures: Vec<Lemma2Failure>,
}

impl Lemma2Report {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sign(e: u32) -> Rat {
    if e.is_multiple_of(2) {
        Rat::from_integer(1.into())
    } else {
        Rat::from_integer((-1).into())
    }
}

fn n(v: u64) -> Rat {
    Rat::from_integer(v.into())
}

/// Left side `1/((r+x)^e x^s)`.
fn lhs(e: u32, r: u64, x: u64, s: u32) -> Rat {
    inv_pow(r + x, e) * inv_pow(x, s)
}

/// Right side of the identity with pole order `e ∈ {1, 2, 3}`.
fn rhs(e: u32, r: u64, x: u64, s: u32) -> Rat {
    let weight = |j: u64| -> Rat {
        match e {
            1 => n(1),
            2 => n(j),
            _ => n(j * (j + 1)) / n(2),
        }
    };
    let mut total = Rat::zero();
    for j in 1..=u64::from(s) {
        let jj = j as u32;
        total += sign(jj - 1) * weight(j) * inv_pow(r, jj + e - 1) * inv_pow(x, s + 1 - jj);
    }
    let sg = sign(s);
    let s64 = u64::from(s);
    match e {
        1 => total += &sg * inv_pow(r, s) * inv_pow(r + x, 1),
        2 => {
            total += &sg * n(s64) * inv_pow(r, s + 1) * inv_pow(r + x, 1);
            total += &sg * inv_pow(r, s) * inv_pow(r + x, 2);
        }
        _ => {
            total += &sg * n(s64 * (s64 + 1)) / n(2) * inv_pow(r, s + 2) * inv_pow(r + x, 1);
            total += &sg * n(s64) * inv_pow(r, s + 1) * inv_pow(r + x, 2);
            total += &sg * inv_pow(r, s) * inv_pow(r + x, 3);
        }
    }
    total
}

/// The `s = 1`, triple-pole case spelled out term by term.
fn base_case_rhs(r: u64, x: u64) -> Rat {
    inv_pow(r, 3) * inv_pow(x, 1)
        - inv_pow(r, 3) * inv_pow(r + x, 1)
        - inv_pow(r, 2) * inv_pow(r + x, 2)
        - inv_pow(r, 1) * inv_pow(r + x, 3)
}

/// Checks one instance; `s` is ignored for [`Identity::TriplePoleBase`].
pub fn check_instance(identity: Identity, r: u64, k: u64, s: u32) -> bool {
    let x = k + 1;
    match identity {
        Identity::SimplePole => lhs(1, r, x, s) == rhs(1, r, x, s),
        Identity::DoublePole => lhs(2, r, x, s) == rhs(2, r, x, s),
        Identity::TriplePole => lhs(3, r, x, s) == rhs(3, r, x, s),
        Identity::TriplePoleBase => lhs(3, r, x, 1) == base_case_rhs(r, x),
    }
}

/// Checks every identity over `1 ≤ r ≤ max_r`, `0 ≤ k ≤ max_k`, `1 ≤ s ≤ max_s`.
/// The base case is checked once per `(r, k)`.
pub fn check_lemma2(max_r: u64, max_k: u64, max_s: u32) -> Lemma2Report {
    let mut report = Lemma2Report::default();
    for identity in Identity::ALL {
        let s_range = if identity == Identity::TriplePoleBase {
            1..=1
        } else {
            1..=max_s
        };
        let mut count = 0;
        for r in 1..=max_r {
            for k in 0..=max_k {
                for s in s_range.clone() {
                    count += 1;
                    if !check_instance(identity, r, k, s) {
                        report.failures.push(Lemma2Failure { identity, r, k, s });
                    }
                }
            }
        }
        report.checked += count;
        report.checked_by_identity.push((identity, count));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_grid_passes() {
        let report = check_lemma2(5, 5, 4);
        assert!(report.all_passed(), "{:?}", report.failures);
        assert_eq!(report.checked, 3 * 5 * 6 * 4 + 5 * 6);
    }

    #[test]
    fn perturbed_right_side_is_detected() {
        let x = 3;
        assert_ne!(lhs(2, 2, x, 3), rhs(2, 2, x, 3) + inv_pow(1000, 1));
        assert_ne!(rhs(1, 2, x, 3), rhs(2, 2, x, 3));
    }

    proptest! {
        #[test]
        fn identities_hold_beyond_grid(r in 1u64..200, k in 0u64..200, s in 1u32..16) {
            for identity in Identity::ALL {
                prop_assert!(check_instance(identity, r, k, s));
            }
        }
    }
}
