use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::numerics::{rat_to_string, zeta_reference, Interval, Rat};

/// `constant + Σ_p coeff_p · ζ(p)` with `p ≥ 2`, stored sparsely (no zero
/// coefficients), so structural equality is exact equality of the
/// representation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZetaCombination {
    constant: Rat,
    zeta: BTreeMap<u32, Rat>,
}

/// One slot of a [`ZetaCombination`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Constant,
    Zeta(u32),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant => f.write_str("constant"),
            Term::Zeta(p) => write!(f, "zeta({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDifference {
    pub term: Term,
    pub left: Rat,
    pub right: Rat,
}

impl ZetaCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `ζ(p)`.
    pub fn zeta(p: u32) -> Self {
        let mut out = Self::zero();
        out.add_zeta(p, &Rat::one());
        out
    }

    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    pub fn coeff(&self, p: u32) -> Rat {
        self.zeta.get(&p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn get(&self, term: Term) -> Rat {
        match term {
            Term::Constant => self.constant.clone(),
            Term::Zeta(p) => self.coeff(p),
        }
    }

    /// Nonzero ζ coefficients in increasing order.
    pub fn zeta_terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.zeta.iter().map(|(p, c)| (*p, c))
    }

    pub fn max_order(&self) -> Option<u32> {
        self.zeta.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.zeta.is_empty()
    }

    /// Panics for `p < 2`: a surviving `1/m` term means the sum diverges.
    pub fn add_zeta(&mut self, p: u32, value: &Rat) {
        assert!(p >= 2, "zeta order {p} is not a convergent term");
        if value.is_zero() {
            return;
        }
        let slot = self.zeta.entry(p).or_insert_with(Rat::zero);
        *slot += value;
        if slot.is_zero() {
            self.zeta.remove(&p);
        }
    }

    pub fn add_constant(&mut self, value: &Rat) {
        self.constant += value;
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &ZetaCombination, factor: &Rat) {
        if factor.is_zero() {
            return;
        }
        self.constant += &other.constant * factor;
        for (p, c) in &other.zeta {
            self.add_zeta(*p, &(c * factor));
        }
    }

    pub fn scaled(&self, factor: &Rat) -> ZetaCombination {
        let mut out = ZetaCombination::zero();
        out.add_scaled(self, factor);
        out
    }

    /// First slot (constant, then increasing ζ order) where the two differ.
    pub fn first_difference(&self, other: &ZetaCombination) -> Option<TermDifference> {
        let mut terms = vec![Term::Constant];
        let mut orders: Vec<u32> = self.zeta.keys().chain(other.zeta.keys()).copied().collect();
        orders.sort_unstable();
        orders.dedup();
        terms.extend(orders.into_iter().map(Term::Zeta));
        terms.into_iter().find_map(|term| {
            let (left, right) = (self.get(term), other.get(term));
            (left != right).then_some(TermDifference { term, left, right })
        })
    }

    /// Certified enclosure of the represented real number, using reference
    /// ζ enclosures of `digits` digits each.
    pub fn enclose(&self, digits: u32) -> Result<Interval> {
        let mut acc = Interval::point(self.constant.clone());
        for (p, c) in &self.zeta {
            acc = acc.add(&zeta_reference(*p, digits)?.scale(c));
        }
        Ok(acc)
    }

    /// `{"constant": "p/q", "zeta": {"2": "p/q", …}}` with exact rationals as
    /// strings.
    pub fn to_json(&self) -> serde_json::Value {
        let zeta: serde_json::Map<String, serde_json::Value> = self
            .zeta
            .iter()
            .map(|(p, c)| (p.to_string(), serde_json::Value::String(rat_to_string(c))))
            .collect();
        serde_json::json!({
            "constant": rat_to_string(&self.constant),
            "zeta": zeta,
        })
    }
}

impl fmt::Display for ZetaCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (p, c) in self.zeta.iter().rev() {
            parts.push(format!("({})*zeta({p})", rat_to_string(c)));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(rat_to_string(&self.constant));
        }
        let joined = parts.join(" + ");
        if self.constant.is_negative() && parts.len() > 1 {
            f.write_str(&joined.replace("+ -", "- "))
        } else {
            f.write_str(&joined)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    #[test]
    fn canonical_sparse_form() {
        let mut a = ZetaCombination::zeta(3);
        a.add_zeta(3, &int(-1));
        assert!(a.is_zero());
        assert_eq!(a, ZetaCombination::zero());
        a.add_zeta(2, &rat(1, 2));
        a.add_constant(&int(-1));
        assert_eq!(a.max_order(), Some(2));
        assert_eq!(a.coeff(5), int(0));
        assert_eq!(a.to_string(), "(1/2)*zeta(2) - 1");
    }

    #[test]
    #[should_panic]
    fn rejects_divergent_order() {
        ZetaCombination::zero().add_zeta(1, &int(1));
    }

    #[test]
    fn first_difference_reports_lowest_slot() {
        let mut a = ZetaCombination::zeta(3);
        let mut b = ZetaCombination::zeta(3);
        assert_eq!(a.first_difference(&b), None);
        a.add_zeta(4, &int(2));
        b.add_zeta(2, &int(1));
        let diff = a.first_difference(&b).unwrap();
        assert_eq!(diff.term, Term::Zeta(2));
        assert_eq!((diff.left, diff.right), (int(0), int(1)));
    }

    #[test]
    fn enclosure_contains_value() {
        let mut c = ZetaCombination::zeta(2);
        c.add_constant(&int(-1));
        // ζ(2) − 1 = 0.6449340668…
        let e = c.enclose(12).unwrap();
        assert!(e.lo() > &rat(6_449_340_668, 10_000_000_000));
        assert!(e.hi() < &rat(6_449_340_669, 10_000_000_000));
        assert!(e.width() < rat(1, 1_000_000_000_000));
    }
}
