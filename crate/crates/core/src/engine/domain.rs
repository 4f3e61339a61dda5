use std::fmt;

/// Values further than this from the initial minimum cannot be held as an
/// explicit set; such domains are intervals (bound consistency only).
pub const DC_WIDTH: i64 = 64;

/// Finite integer domain.
///
/// A domain created over at most [`DC_WIDTH`] values keeps an explicit value
/// set (bit `i` stands for `base + i`) and supports removing interior values.
/// Wider domains are plain intervals: interior removals are ignored and only
/// bound updates take effect.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    lo: i64,
    hi: i64,
    base: i64,
    bits: u64,
    set: bool,
}

impl Domain {
    pub fn interval(lo: i64, hi: i64) -> Self {
        if lo > hi {
            return Domain::failed();
        }
        if hi - lo < DC_WIDTH {
            let width = (hi - lo + 1) as u32;
            let bits = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
            Domain {
                lo,
                hi,
                base: lo,
                bits,
                set: true,
            }
        } else {
            Domain {
                lo,
                hi,
                base: lo,
                bits: 0,
                set: false,
            }
        }
    }

    /// Explicit value set. Values must span fewer than [`DC_WIDTH`] integers;
    /// wider sets are widened to their hull.
    pub fn values(values: &[i64]) -> Self {
        let (Some(&lo), Some(&hi)) = (values.iter().min(), values.iter().max()) else {
            return Domain::failed();
        };
        if hi - lo >= DC_WIDTH {
            return Domain::interval(lo, hi);
        }
        let bits = values.iter().fold(0u64, |b, &v| b | (1u64 << (v - lo)));
        Domain {
            lo,
            hi,
            base: lo,
            bits,
            set: true,
        }
    }

    pub fn singleton(v: i64) -> Self {
        Domain::interval(v, v)
    }

    fn failed() -> Self {
        Domain {
            lo: 1,
            hi: 0,
            base: 0,
            bits: 0,
            set: true,
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    #[inline]
    pub fn lo(&self) -> i64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> i64 {
        self.hi
    }

    #[inline]
    pub fn is_fixed(&self) -> bool {
        self.lo == self.hi
    }

    /// True when interior values can be removed.
    pub fn is_set(&self) -> bool {
        self.set
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        if v < self.lo || v > self.hi {
            return false;
        }
        !self.set || self.bits & (1u64 << (v - self.base)) != 0
    }

    pub fn size(&self) -> u64 {
        if self.is_empty() {
            0
        } else if self.set {
            self.bits.count_ones() as u64
        } else {
            (self.hi - self.lo + 1) as u64
        }
    }

    /// Values in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let (lo, hi) = if self.is_empty() { (1, 0) } else { (self.lo, self.hi) };
        (lo..=hi).filter(move |&v| self.contains(v))
    }

    /// Restricts to `[lo, hi]`; returns true if something changed.
    pub(crate) fn restrict(&mut self, lo: i64, hi: i64) -> bool {
        if lo <= self.lo && hi >= self.hi {
            return false;
        }
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi);
        if lo > hi {
            *self = Domain::failed();
            return true;
        }
        if self.set {
            let keep = mask_between(lo - self.base, hi - self.base);
            self.bits &= keep;
            self.normalize();
        } else {
            self.lo = lo;
            self.hi = hi;
        }
        true
    }

    /// Removes a value; interval domains only react to their bounds.
    pub(crate) fn remove(&mut self, v: i64) -> bool {
        if !self.contains(v) {
            return false;
        }
        if self.set {
            self.bits &= !(1u64 << (v - self.base));
            self.normalize();
            true
        } else if v == self.lo {
            self.lo += 1;
            true
        } else if v == self.hi {
            self.hi -= 1;
            true
        } else {
            false
        }
    }

    fn normalize(&mut self) {
        if self.bits == 0 {
            *self = Domain::failed();
            return;
        }
        self.lo = self.base + self.bits.trailing_zeros() as i64;
        self.hi = self.base + 63 - self.bits.leading_zeros() as i64;
    }
}

fn mask_between(from: i64, to: i64) -> u64 {
    let from = from.clamp(0, 63) as u32;
    let to = to.clamp(0, 63) as u32;
    let upper = if to == 63 { u64::MAX } else { (1u64 << (to + 1)) - 1 };
    upper & !((1u64 << from) - 1)
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "{{}}")
        } else if self.set {
            let vals: Vec<String> = self.iter().map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", vals.join(","))
        } else {
            write!(f, "[{}..{}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_domain_operations() {
        let mut d = Domain::interval(2, 6);
        assert!(d.is_set());
        assert!(d.remove(4));
        assert!(!d.contains(4));
        assert_eq!(d.size(), 4);
        assert!(d.restrict(3, 10));
        assert_eq!((d.lo(), d.hi()), (3, 6));
        assert!(d.remove(3));
        assert_eq!(d.lo(), 5);
        assert!(!d.restrict(0, 100));
        assert!(d.restrict(7, 9));
        assert!(d.is_empty());
    }

    #[test]
    fn wide_domains_are_intervals() {
        let mut d = Domain::interval(0, 1000);
        assert!(!d.is_set());
        assert!(!d.remove(500));
        assert!(d.contains(500));
        assert!(d.remove(0));
        assert_eq!(d.lo(), 1);
        assert_eq!(d.size(), 1000);
    }

    #[test]
    fn explicit_values() {
        let d = Domain::values(&[-1, 1]);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![-1, 1]);
        assert!(!d.contains(0));
        assert!(Domain::values(&[]).is_empty());
        let full = Domain::interval(0, 63);
        assert_eq!(full.size(), 64);
    }
}
