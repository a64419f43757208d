use std::fmt;

use num_traits::{Signed, Zero};

use super::Rat;

/// Closed rational interval `[lo, hi]` certified to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Self { lo, hi }
    }

    pub fn point(value: Rat) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    /// `[center − radius, center + radius]`; `radius` must be nonnegative.
    pub fn around(center: &Rat, radius: &Rat) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        Self {
            lo: center - radius,
            hi: center + radius,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    /// Largest absolute value attained on the interval.
    pub fn mag(&self) -> Rat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo > other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi < other.hi {
            &self.hi
        } else {
            &other.hi
        };
        (lo <= hi).then(|| Interval::new(lo.clone(), hi.clone()))
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn shift(&self, offset: &Rat) -> Interval {
        Interval {
            lo: &self.lo + offset,
            hi: &self.hi + offset,
        }
    }

    /// `c · x` for `x` in the interval.
    pub fn scale(&self, factor: &Rat) -> Interval {
        let a = &self.lo * factor;
        let b = &self.hi * factor;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Widens both ends by `radius ≥ 0`.
    pub fn widen(&self, radius: &Rat) -> Interval {
        assert!(!radius.is_negative(), "negative radius");
        Interval {
            lo: &self.lo - radius,
            hi: &self.hi + radius,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo > Rat::zero()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
