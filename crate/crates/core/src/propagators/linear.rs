use crate::engine::{Conflict, Domains, PropResult, Propagator, VarId};
use crate::interval::Interval;

/// `lo <= sum a_i * x_i <= hi` with bound consistency on every variable.
pub struct LinearSum {
    terms: Vec<(i64, VarId)>,
    bound: Interval,
}

impl LinearSum {
    pub fn new(terms: Vec<(i64, VarId)>, bound: Interval) -> Self {
        let terms = terms.into_iter().filter(|&(a, _)| a != 0).collect();
        LinearSum { terms, bound }
    }

    /// `sum xs = y`.
    pub fn sum_eq(xs: &[VarId], y: VarId) -> Self {
        let mut terms: Vec<(i64, VarId)> = xs.iter().map(|&x| (1, x)).collect();
        terms.push((-1, y));
        LinearSum::new(terms, Interval::point(0))
    }

    /// `sum xs <= sum ys`.
    pub fn sum_le(xs: &[VarId], ys: &[VarId]) -> Self {
        let mut terms: Vec<(i64, VarId)> = xs.iter().map(|&x| (1, x)).collect();
        terms.extend(ys.iter().map(|&y| (-1, y)));
        LinearSum::new(terms, Interval::new(i64::MIN / 4, 0))
    }

    fn term_range(d: &Domains, a: i64, x: VarId) -> (i64, i64) {
        if a > 0 {
            (a * d.lo(x), a * d.hi(x))
        } else {
            (a * d.hi(x), a * d.lo(x))
        }
    }

    fn round(&self, d: &mut Domains) -> Result<bool, Conflict> {
        let (mut min_sum, mut max_sum) = (0i64, 0i64);
        for &(a, x) in &self.terms {
            let (lo, hi) = Self::term_range(d, a, x);
            min_sum += lo;
            max_sum += hi;
        }
        if min_sum > self.bound.hi || max_sum < self.bound.lo {
            return Err(Conflict);
        }
        let mut changed = false;
        for &(a, x) in &self.terms {
            let (lo, hi) = Self::term_range(d, a, x);
            // a * x must lie in [bound.lo - (max_sum - hi), bound.hi - (min_sum - lo)].
            let t_lo = self.bound.lo.saturating_sub(max_sum - hi);
            let t_hi = self.bound.hi.saturating_sub(min_sum - lo);
            let (x_lo, x_hi) = if a > 0 {
                (div_ceil(t_lo, a), div_floor(t_hi, a))
            } else {
                (div_ceil(t_hi, a), div_floor(t_lo, a))
            };
            changed |= d.restrict(x, x_lo, x_hi)?;
        }
        Ok(changed)
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

impl Propagator for LinearSum {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn scope(&self) -> Vec<VarId> {
        self.terms.iter().map(|&(_, x)| x).collect()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        while self.round(d)? {}
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        let s: i64 = self.terms.iter().map(|&(a, x)| a * d.value(x)).sum();
        self.bound.contains(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Store;

    #[test]
    fn interval_reasoning() {
        let mut s = Store::new();
        let x = s.new_var(0, 2);
        let y = s.new_var(0, 2);
        s.post(Box::new(LinearSum::new(vec![(1, x), (1, y)], Interval::point(3))));
        assert!(s.propagate());
        assert_eq!((s.domain(x).lo(), s.domain(x).hi()), (1, 2));
        assert_eq!((s.domain(y).lo(), s.domain(y).hi()), (1, 2));
    }

    #[test]
    fn last_free_variable_is_forced() {
        let mut s = Store::new();
        let mut xs: Vec<VarId> = (0..3).map(|_| s.new_var(0, 0)).collect();
        xs.push(s.new_var(0, 1));
        let terms = xs.iter().map(|&x| (1, x)).collect();
        s.post(Box::new(LinearSum::new(terms, Interval::new(1, 100))));
        assert!(s.propagate());
        assert_eq!(s.domain(xs[3]).lo(), 1);
    }

    #[test]
    fn empty_sum() {
        let mut s = Store::new();
        s.post(Box::new(LinearSum::new(vec![], Interval::point(0))));
        assert!(s.propagate());
        let mut t = Store::new();
        t.post(Box::new(LinearSum::new(vec![], Interval::point(1))));
        assert!(!t.propagate());
    }

    #[test]
    fn negative_coefficients_round_correctly() {
        assert_eq!(div_floor(-3, 2), -2);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_floor(3, -2), -2);
        assert_eq!(div_ceil(3, -2), -1);
        let mut s = Store::new();
        let x = s.new_var(-5, 5);
        // -2x in [3, 7]  =>  x in [-3, -2]
        s.post(Box::new(LinearSum::new(vec![(-2, x)], Interval::new(3, 7))));
        assert!(s.propagate());
        assert_eq!((s.domain(x).lo(), s.domain(x).hi()), (-3, -2));
    }
}
