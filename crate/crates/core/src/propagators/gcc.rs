use crate::engine::{Conflict, Domains, PropResult, Propagator, VarId};

/// Counting filter for a global cardinality constraint whose per-value
/// occurrence counts are variables (`cards[j]` counts value `values[j]`).
///
/// Cardinalities are tightened to `[fixed, possible]`; a value is removed
/// from unfixed variables once its fixed count reaches the cardinality's
/// upper bound, and assigned to every candidate once its candidate count
/// equals the lower bound. Variables may only take listed values.
pub struct GccCount {
    xs: Vec<VarId>,
    values: Vec<i64>,
    cards: Vec<VarId>,
}

impl GccCount {
    pub fn new(xs: Vec<VarId>, values: Vec<i64>, cards: Vec<VarId>) -> Self {
        assert_eq!(values.len(), cards.len(), "one cardinality per value");
        GccCount { xs, values, cards }
    }

    fn round(&self, d: &mut Domains) -> Result<bool, Conflict> {
        let n = self.xs.len() as i64;
        let mut changed = false;
        for &x in &self.xs {
            changed |= d.retain(x, |v| self.values.contains(&v))?;
        }
        let (mut sum_lo, mut sum_hi) = (0, 0);
        for (j, &v) in self.values.iter().enumerate() {
            let card = self.cards[j];
            let mut fixed = 0;
            let mut possible = 0;
            for &x in &self.xs {
                if d.contains(x, v) {
                    possible += 1;
                    if d.is_fixed(x) {
                        fixed += 1;
                    }
                }
            }
            changed |= d.restrict(card, fixed, possible)?;
            if fixed == d.hi(card) && possible > fixed {
                for &x in &self.xs {
                    if !d.is_fixed(x) {
                        changed |= d.remove(x, v)?;
                    }
                }
            } else if possible == d.lo(card) && possible > fixed {
                for &x in &self.xs {
                    if d.contains(x, v) {
                        changed |= d.assign(x, v)?;
                    }
                }
            }
            sum_lo += d.lo(card);
            sum_hi += d.hi(card);
        }
        if sum_lo > n || sum_hi < n {
            return Err(Conflict);
        }
        Ok(changed)
    }
}

impl Propagator for GccCount {
    fn name(&self) -> &'static str {
        "gcc"
    }

    fn scope(&self) -> Vec<VarId> {
        self.xs.iter().chain(&self.cards).copied().collect()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        while self.round(d)? {}
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        self.xs.iter().all(|&x| self.values.contains(&d.value(x)))
            && self.values.iter().zip(&self.cards).all(|(&v, &c)| {
                self.xs.iter().filter(|&&x| d.value(x) == v).count() as i64 == d.value(c)
            })
    }
}
