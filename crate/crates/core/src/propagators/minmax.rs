use crate::engine::{Conflict, Domains, PropResult, Propagator, VarId};

/// `y = min(xs)` or `y = max(xs)` with bound reasoning.
pub struct Extremum {
    y: VarId,
    xs: Vec<VarId>,
    is_max: bool,
}

impl Extremum {
    pub fn min(y: VarId, xs: Vec<VarId>) -> Self {
        assert!(!xs.is_empty());
        Extremum { y, xs, is_max: false }
    }

    pub fn max(y: VarId, xs: Vec<VarId>) -> Self {
        assert!(!xs.is_empty());
        Extremum { y, xs, is_max: true }
    }

    /// Bounds of `v` in the orientation where the extremum is a minimum.
    fn bounds(&self, d: &Domains, v: VarId) -> (i64, i64) {
        if self.is_max {
            (-d.hi(v), -d.lo(v))
        } else {
            (d.lo(v), d.hi(v))
        }
    }

    fn restrict(&self, d: &mut Domains, v: VarId, lo: i64, hi: i64) -> Result<bool, Conflict> {
        if self.is_max {
            d.restrict(v, hi.saturating_neg(), lo.saturating_neg())
        } else {
            d.restrict(v, lo, hi)
        }
    }

    fn round(&self, d: &mut Domains) -> Result<bool, Conflict> {
        let mut changed = false;
        let min_lo = self.xs.iter().map(|&x| self.bounds(d, x).0).min().unwrap();
        let min_hi = self.xs.iter().map(|&x| self.bounds(d, x).1).min().unwrap();
        changed |= self.restrict(d, self.y, min_lo, min_hi)?;
        let (y_lo, y_hi) = self.bounds(d, self.y);
        for &x in &self.xs {
            changed |= self.restrict(d, x, y_lo, i64::MAX)?;
        }
        let mut below = self.xs.iter().filter(|&&x| self.bounds(d, x).0 <= y_hi);
        match (below.next(), below.next()) {
            (None, _) => return Err(Conflict),
            (Some(&x), None) => changed |= self.restrict(d, x, i64::MIN, y_hi)?,
            _ => {}
        }
        Ok(changed)
    }
}

impl Propagator for Extremum {
    fn name(&self) -> &'static str {
        if self.is_max {
            "max"
        } else {
            "min"
        }
    }

    fn scope(&self) -> Vec<VarId> {
        let mut s = self.xs.clone();
        s.push(self.y);
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
        let vals = self.xs.iter().map(|&x| d.value(x));
        let e = if self.is_max { vals.max() } else { vals.min() };
        e == Some(d.value(self.y))
    }
}
