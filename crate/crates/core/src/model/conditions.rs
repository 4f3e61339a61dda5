//! Implied constraints relating string properties of the rows to the column
//! cardinalities.
//!
//! Throughout, `h[k]` is the number of cells of column `k` holding a symbol
//! of the property's set (for a single symbol this is the cardinality
//! variable itself), `r` is the number of rows, and columns `-1` and `K` are
//! treated as empty.

use crate::engine::{Conflict, Domains, PropResult, Propagator, VarId};
use crate::interval::Interval;
use crate::propagators::{Extremum, LinearSum};

/// Bounds on the number of rows holding a word of a pattern at start `k`,
/// given the counts `counts[j]` of the `j`-th letter set in column `k + j`.
///
/// Returns `(lw, uw)`: at least `max(sum counts - (m - 1) r, 0)` rows (the
/// worst-case overlap of the letter positions) and at most the smallest count.
pub fn word_bounds(counts: &[Interval], r: i64) -> (Interval, Interval) {
    let m = counts.len() as i64;
    let sum = counts.iter().fold(Interval::point(0), |acc, c| acc.add(*c));
    let slack = (m - 1) * r;
    let lw = Interval::new((sum.lo - slack).max(0), (sum.hi - slack).max(0));
    let uw = counts
        .iter()
        .copied()
        .reduce(|a, b| a.min(b))
        .unwrap_or(Interval::point(0));
    (lw, uw)
}

/// Interval bounds on stretches starting (`plus`) and ending (`minus`) in a
/// column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StretchBounds {
    /// Lower bound on stretches starting in column `k`.
    pub ls_plus: Interval,
    /// Upper bound on stretches starting in column `k`.
    pub us_plus: Interval,
    pub ls_minus: Interval,
    pub us_minus: Interval,
}

fn starts_lower(cur: Interval, prev: Interval) -> Interval {
    Interval::new((cur.lo - prev.hi).max(0), (cur.hi - prev.lo).max(0))
}

fn starts_upper(cur: Interval, prev: Interval, r: i64) -> Interval {
    Interval::new(cur.lo.min(r - prev.hi), cur.hi.min(r - prev.lo))
}

/// Evaluates the stretch bounds of column `k` on interval counts.
///
/// At least `max(0, h[k] - h[k-1])` rows start a stretch in column `k`, and
/// at most `min(h[k], r - h[k-1])` do (a start needs a cell outside the set
/// just before it). Ends are symmetric with `k + 1`.
pub fn stretch_bounds(h: &[Interval], k: usize, r: i64) -> StretchBounds {
    let zero = Interval::point(0);
    let prev = if k == 0 { zero } else { h[k - 1] };
    let next = h.get(k + 1).copied().unwrap_or(zero);
    StretchBounds {
        ls_plus: starts_lower(h[k], prev),
        us_plus: starts_upper(h[k], prev, r),
        ls_minus: starts_lower(h[k], next),
        us_minus: starts_upper(h[k], next, r),
    }
}

fn intervals(d: &Domains, vars: &[VarId]) -> Vec<Interval> {
    vars.iter().map(|&v| Interval::new(d.lo(v), d.hi(v))).collect()
}

/// `lw = max(sum counts - (m - 1) r, 0)`.
pub struct WordLower {
    counts: Vec<VarId>,
    lw: VarId,
    r: i64,
}

impl WordLower {
    pub fn new(counts: Vec<VarId>, lw: VarId, r: i64) -> Self {
        WordLower { counts, lw, r }
    }

    fn round(&self, d: &mut Domains) -> Result<bool, Conflict> {
        let slack = (self.counts.len() as i64 - 1) * self.r;
        let c = intervals(d, &self.counts);
        let (lw, _) = word_bounds(&c, self.r);
        let mut changed = d.restrict(self.lw, lw.lo, lw.hi)?;
        // The sum must reach lo(lw) + slack when lw is positive, and can
        // exceed hi(lw) + slack by nothing.
        let sum = c.iter().fold(Interval::point(0), |acc, x| acc.add(*x));
        let need = if d.lo(self.lw) > 0 { d.lo(self.lw) + slack } else { i64::MIN / 4 };
        let cap = d.hi(self.lw) + slack;
        for (j, &x) in self.counts.iter().enumerate() {
            let others = sum.sub(c[j]);
            changed |= d.restrict(x, need - others.hi, cap - others.lo)?;
        }
        Ok(changed)
    }
}

impl Propagator for WordLower {
    fn name(&self) -> &'static str {
        "word_lower"
    }

    fn scope(&self) -> Vec<VarId> {
        let mut s = self.counts.clone();
        s.push(self.lw);
        s
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        while self.round(d)? {}
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        let c: Vec<Interval> = self.counts.iter().map(|&x| Interval::point(d.value(x))).collect();
        word_bounds(&c, self.r).0.lo == d.value(self.lw)
    }
}

/// Propagators defining `lw` and `uw` for one start position.
pub fn post_word_bound_vars(counts: &[VarId], lw: VarId, uw: VarId, r: i64) -> Vec<Box<dyn Propagator>> {
    vec![
        Box::new(WordLower::new(counts.to_vec(), lw, r)),
        Box::new(Extremum::min(uw, counts.to_vec())),
    ]
}

/// Links word-occurrence flags `z[row][k]` to the bounds `lw[k]`, `uw[k]`.
///
/// Per position: `lw[k] <= sum_r z[r][k] <= uw[k]`. With `aggregate` only the
/// sums over all start positions are related, which is weaker.
pub fn post_word_conditions(lw: &[VarId], uw: &[VarId], z: &[Vec<VarId>], aggregate: bool) -> Vec<Box<dyn Propagator>> {
    let mut out: Vec<Box<dyn Propagator>> = Vec::new();
    let starts = lw.len();
    if aggregate {
        let all: Vec<VarId> = z.iter().flat_map(|row| row[..starts].iter().copied()).collect();
        out.push(Box::new(LinearSum::sum_le(lw, &all)));
        if !uw.is_empty() {
            out.push(Box::new(LinearSum::sum_le(&all, uw)));
        }
    } else {
        for k in 0..starts {
            let col: Vec<VarId> = z.iter().map(|row| row[k]).collect();
            out.push(Box::new(LinearSum::sum_le(&[lw[k]], &col)));
            if !uw.is_empty() {
                out.push(Box::new(LinearSum::sum_le(&col, &[uw[k]])));
            }
        }
    }
    out
}

/// Bounds the total number of stretches over all rows by the sums of the
/// per-column start and end bounds.
pub struct StretchCount {
    h: Vec<VarId>,
    total: VarId,
    r: i64,
}

impl StretchCount {
    pub fn new(h: Vec<VarId>, total: VarId, r: i64) -> Self {
        StretchCount { h, total, r }
    }

    /// Interval the total must lie in, given the counts.
    pub fn total_bounds(h: &[Interval], r: i64) -> Interval {
        let (mut lp, mut lm, mut up, mut um) = (0, 0, 0, 0);
        for k in 0..h.len() {
            let b = stretch_bounds(h, k, r);
            lp += b.ls_plus.lo;
            lm += b.ls_minus.lo;
            up += b.us_plus.hi;
            um += b.us_minus.hi;
        }
        Interval::new(lp.max(lm), up.min(um))
    }
}

impl Propagator for StretchCount {
    fn name(&self) -> &'static str {
        "stretch_count"
    }

    fn scope(&self) -> Vec<VarId> {
        let mut s = self.h.clone();
        s.push(self.total);
        s
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        let b = Self::total_bounds(&intervals(d, &self.h), self.r);
        d.restrict(self.total, b.lo, b.hi)?;
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        let h: Vec<Interval> = self.h.iter().map(|&x| Interval::point(d.value(x))).collect();
        Self::total_bounds(&h, self.r).contains(d.value(self.total))
    }
}

/// Conditions from the shortest (`zmin`) and longest (`zmax`) stretch over
/// all rows.
///
/// * Every stretch starting in columns `k - zmin + 1 ..= k` covers column
///   `k`, and distinct starts in that window belong to distinct rows, so
///   `h[k]` is at least the sum of the start lower bounds in the window
///   (and symmetrically for ends).
/// * A row starting a stretch in column `k` has a cell outside the set in
///   one of the columns `k + zmin ..= k + zmax` when `k + zmax < K`, so those
///   columns hold at least that many such cells (and symmetrically for ends).
///
/// With variable lengths the window uses the smallest possible `zmin` and
/// the span uses the widest possible `[zmin, zmax]`, which keeps every
/// deduction valid for all remaining values. `zmin = K + 1` and `zmax = 0`
/// stand for "no stretch".
pub struct StretchLength {
    h: Vec<VarId>,
    zmin: VarId,
    zmax: VarId,
    r: i64,
}

impl StretchLength {
    pub fn new(h: Vec<VarId>, zmin: VarId, zmax: VarId, r: i64) -> Self {
        StretchLength { h, zmin, zmax, r }
    }

    fn window_sum(ls: &[i64], k: usize, a: usize, forward: bool) -> i64 {
        let kk = ls.len();
        if forward {
            let from = (k + 1).saturating_sub(a);
            ls[from..=k].iter().sum()
        } else {
            let to = (k + a - 1).min(kk - 1);
            ls[k..=to].iter().sum()
        }
    }

    fn round(&self, d: &mut Domains) -> Result<bool, Conflict> {
        let kk = self.h.len();
        if kk == 0 {
            return Ok(false);
        }
        let r = self.r;
        let h = intervals(d, &self.h);
        let lsp: Vec<i64> = (0..kk).map(|k| stretch_bounds(&h, k, r).ls_plus.lo).collect();
        let lsm: Vec<i64> = (0..kk).map(|k| stretch_bounds(&h, k, r).ls_minus.lo).collect();
        let mut changed = false;

        let a = d.lo(self.zmin).max(1) as usize;
        for k in 0..kk {
            let need = Self::window_sum(&lsp, k, a, true).max(Self::window_sum(&lsm, k, a, false));
            changed |= d.set_min(self.h[k], need)?;
        }
        // Largest window length still compatible with every column.
        let h = intervals(d, &self.h);
        let mut a_max = d.hi(self.zmin);
        for a2 in (a as i64 + 1)..=d.hi(self.zmin) {
            let a2u = a2 as usize;
            let fits = (0..kk).all(|k| {
                Self::window_sum(&lsp, k, a2u, true) <= h[k].hi && Self::window_sum(&lsm, k, a2u, false) <= h[k].hi
            });
            if !fits {
                a_max = a2 - 1;
                break;
            }
        }
        changed |= d.set_max(self.zmin, a_max)?;

        let a = d.lo(self.zmin).max(1) as usize;
        let b = d.hi(self.zmax).max(0) as usize;
        if a <= b {
            let span = (b - a + 1) as i64;
            for k in 0..kk {
                if k + b < kk {
                    let cols: Vec<usize> = (a..=b).map(|j| k + j).collect();
                    changed |= self.cap_columns(d, &cols, lsp[k], span)?;
                }
                if k >= b {
                    let cols: Vec<usize> = (a..=b).map(|j| k - j).collect();
                    changed |= self.cap_columns(d, &cols, lsm[k], span)?;
                }
            }
        }
        Ok(changed)
    }

    /// `starts + sum h[cols] - span * r <= 0`.
    fn cap_columns(&self, d: &mut Domains, cols: &[usize], starts: i64, span: i64) -> Result<bool, Conflict> {
        if starts == 0 {
            return Ok(false);
        }
        let sum_lo: i64 = cols.iter().map(|&c| d.lo(self.h[c])).sum();
        let room = span * self.r - starts;
        if sum_lo > room {
            return Err(Conflict);
        }
        let mut changed = false;
        for &c in cols {
            let x = self.h[c];
            changed |= d.set_max(x, room - (sum_lo - d.lo(x)))?;
        }
        Ok(changed)
    }
}

impl Propagator for StretchLength {
    fn name(&self) -> &'static str {
        "stretch_length"
    }

    fn scope(&self) -> Vec<VarId> {
        let mut s = self.h.clone();
        s.push(self.zmin);
        s.push(self.zmax);
        s
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        while self.round(d)? {}
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        // On fixed values the conditions are implied by the row and column
        // constraints; re-evaluating them catches inconsistent fixings.
        let mut copy = d.clone();
        self.round(&mut copy).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Store;

    fn pts(v: &[i64]) -> Vec<Interval> {
        v.iter().map(|&x| Interval::point(x)).collect()
    }

    #[test]
    fn word_bound_values() {
        let (lw, uw) = word_bounds(&pts(&[4, 3]), 5);
        assert_eq!((lw, uw), (Interval::point(2), Interval::point(3)));
        let (lw, uw) = word_bounds(&pts(&[3]), 5);
        assert_eq!((lw, uw), (Interval::point(3), Interval::point(3)));
    }

    #[test]
    fn stretch_bound_values() {
        let b = stretch_bounds(&pts(&[2, 4]), 1, 5);
        assert_eq!(b.ls_plus, Interval::point(2));
        assert_eq!(b.us_plus, Interval::point(3));
        let b0 = stretch_bounds(&pts(&[3, 1]), 0, 5);
        assert_eq!((b0.ls_plus, b0.us_plus), (Interval::point(3), Interval::point(3)));
        let z = stretch_bounds(&pts(&[2, 0, 4]), 1, 5);
        assert!([z.ls_plus, z.us_plus, z.ls_minus, z.us_minus].iter().all(|&i| i == Interval::point(0)));
    }

    #[test]
    fn stretch_count_totals() {
        assert_eq!(StretchCount::total_bounds(&pts(&[2, 0]), 2), Interval::point(2));
        assert_eq!(StretchCount::total_bounds(&pts(&[3, 3, 3]), 3), Interval::point(3));
        assert_eq!(StretchCount::total_bounds(&pts(&[0, 0, 0]), 3), Interval::point(0));
    }

    #[test]
    fn full_width_stretch_covers_every_column() {
        let mut s = Store::new();
        let h: Vec<VarId> = vec![s.new_var(2, 2), s.new_var(0, 3), s.new_var(0, 3)];
        let zmin = s.new_var(3, 3);
        let zmax = s.new_var(3, 3);
        s.post(Box::new(StretchLength::new(h.clone(), zmin, zmax, 3)));
        assert!(s.propagate());
        assert!(h.iter().all(|&x| s.domain(x).lo() >= 2));
    }

    #[test]
    fn unit_stretches_cannot_fill_three_columns() {
        let mut s = Store::new();
        let h: Vec<VarId> = (0..3).map(|_| s.new_var(1, 1)).collect();
        let zmin = s.new_var(1, 1);
        let zmax = s.new_var(1, 1);
        s.post(Box::new(StretchLength::new(h, zmin, zmax, 1)));
        assert!(!s.propagate());
    }
}
