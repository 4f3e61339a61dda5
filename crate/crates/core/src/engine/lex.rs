use crate::engine::store::{Domains, PropResult, Propagator, VarId};

/// `x <=_lex y` with bound filtering.
pub struct LexLeq {
    x: Vec<VarId>,
    y: Vec<VarId>,
}

impl LexLeq {
    pub fn new(x: Vec<VarId>, y: Vec<VarId>) -> Self {
        assert_eq!(x.len(), y.len(), "lex rows must have equal length");
        LexLeq { x, y }
    }

    /// True if the smallest completion of `x[from..]` is lexicographically
    /// greater than the largest completion of `y[from..]`.
    fn suffix_forces_strict(&self, d: &Domains, from: usize) -> bool {
        for j in from..self.x.len() {
            let (a, b) = (d.lo(self.x[j]), d.hi(self.y[j]));
            if a != b {
                return a > b;
            }
        }
        false
    }
}

impl Propagator for LexLeq {
    fn name(&self) -> &'static str {
        "lex_leq"
    }

    fn scope(&self) -> Vec<VarId> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        let n = self.x.len();
        let mut i = 0;
        while i < n {
            let (x, y) = (self.x[i], self.y[i]);
            let strict = self.suffix_forces_strict(d, i + 1);
            let slack = i64::from(strict);
            d.set_max(x, d.hi(y) - slack)?;
            d.set_min(y, d.lo(x) + slack)?;
            if d.is_fixed(x) && d.is_fixed(y) && d.value(x) == d.value(y) {
                i += 1;
                continue;
            }
            // Position i is not forced equal, so later positions only
            // matter if x[i] = y[i] is still possible, which bounds alone
            // cannot exploit further.
            break;
        }
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        let xs: Vec<i64> = self.x.iter().map(|&v| d.value(v)).collect();
        let ys: Vec<i64> = self.y.iter().map(|&v| d.value(v)).collect();
        xs <= ys
    }
}

/// Chain of pairwise lex constraints `rows[0] <=_lex rows[1] <=_lex ...`.
pub fn post_lex_chain(rows: &[Vec<VarId>]) -> Vec<Box<dyn Propagator>> {
    rows.windows(2)
        .map(|w| Box::new(LexLeq::new(w[0].clone(), w[1].clone())) as Box<dyn Propagator>)
        .collect()
}
