use std::fmt;

/// Closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

/// Large enough for any count in this crate, small enough that sums of a few
/// thousand of them cannot overflow.
pub const INFINITY: i64 = 1 << 40;

impl Interval {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub const fn point(v: i64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub const fn unbounded() -> Self {
        Interval {
            lo: -INFINITY,
            hi: INFINITY,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.lo <= -INFINITY && self.hi >= INFINITY
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersect(&self, other: Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn add(&self, other: Interval) -> Interval {
        Interval::new(self.lo + other.lo, self.hi + other.hi)
    }

    pub fn sub(&self, other: Interval) -> Interval {
        Interval::new(self.lo - other.hi, self.hi - other.lo)
    }

    pub fn offset(&self, c: i64) -> Interval {
        Interval::new(self.lo + c, self.hi + c)
    }

    pub fn max(&self, other: Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(&self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
