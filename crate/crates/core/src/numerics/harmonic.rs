use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::Rat;

/// Generalized harmonic numbers `H_k^(m) = Σ_{j=1..k} 1/j^m` for
/// `0 ≤ k ≤ max_index`, `1 ≤ m ≤ max_order`. Immutable once built.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    max_index: usize,
    max_order: u32,
    // values[m - 1][k]
    values: Vec<Vec<Rat>>,
}

impl HarmonicTable {
    pub fn new(max_index: usize, max_order: u32) -> Self {
        assert!(max_order >= 1, "harmonic order starts at 1");
        let values = (1..=max_order)
            .map(|m| {
                let mut column = Vec::with_capacity(max_index + 1);
                column.push(Rat::zero());
                for k in 1..=max_index {
                    let term = Rat::new(1.into(), BigInt::from(k).pow(m));
                    let next = &column[k - 1] + term;
                    column.push(next);
                }
                column
            })
            .collect();
        Self {
            max_index,
            max_order,
            values,
        }
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// `H_k^(m)`; panics outside the table range.
    pub fn get(&self, k: usize, m: u32) -> &Rat {
        assert!(
            (1..=self.max_order).contains(&m) && k <= self.max_index,
            "harmonic H_{k}^({m}) outside table ({}, {})",
            self.max_index,
            self.max_order
        );
        &self.values[(m - 1) as usize][k]
    }

    /// Shorthand for `H_k = H_k^(1)`.
    pub fn h(&self, k: usize) -> &Rat {
        self.get(k, 1)
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Vec<Rat>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<Rat>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `H_k^(m)` computed exactly, memoized per order across calls.
pub fn harmonic(k: u32, m: u32) -> Rat {
    assert!(m >= 1, "harmonic order starts at 1");
    let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
    let column = guard.entry(m).or_insert_with(|| vec![Rat::zero()]);
    while column.len() <= k as usize {
        let j = column.len();
        let next = &column[j - 1] + Rat::new(1.into(), BigInt::from(j).pow(m));
        column.push(next);
    }
    column[k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    #[test]
    fn spec_examples() {
        assert_eq!(harmonic(0, 2), int(0));
        assert_eq!(harmonic(1, 5), int(1));
        assert_eq!(harmonic(4, 1), rat(25, 12));
    }

    #[test]
    fn table_matches_free_function() {
        let table = HarmonicTable::new(12, 3);
        for m in 1..=3 {
            assert!(table.get(0, m).is_zero());
            for k in 0..=12 {
                assert_eq!(table.get(k, m), &harmonic(k as u32, m));
            }
        }
        assert_eq!(table.h(2), &rat(3, 2));
    }

    #[test]
    #[should_panic]
    fn table_rejects_out_of_range() {
        HarmonicTable::new(3, 2).get(4, 1);
    }

    proptest::proptest! {
        #[test]
        fn consecutive_difference_is_reciprocal_power(k in 1u32..60, m in 1u32..6) {
            let diff = harmonic(k, m) - harmonic(k - 1, m);
            proptest::prop_assert_eq!(diff, Rat::new(1.into(), BigInt::from(k).pow(m)));
        }
    }
}
