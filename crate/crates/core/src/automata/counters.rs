//! Counter-annotated automata and their unfolding into weighted automata.
//!
//! A counter automaton carries `m` counters with values in `0..range`. Every
//! transition updates the counters through small expressions over their
//! previous values. Unfolding takes the product of the automaton states with
//! the reachable counter vectors and telescopes counter changes into costs,
//! so that the run totals of the weighted result equal the final counter
//! values.

use crate::automata::dfa::{explore, Dfa, StateId, Symbol};
use crate::automata::weighted::{CostMatrices, ResourceCosts, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Update expression evaluated on the counter values before a transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CounterExpr {
    Const(u32),
    /// Current value of counter `j`.
    Counter(usize),
    Add(Box<CounterExpr>, u32),
    Min(Box<CounterExpr>, Box<CounterExpr>),
    Max(Box<CounterExpr>, Box<CounterExpr>),
    /// Minimum of the non-zero operands, 0 if both are zero.
    MinNonZero(Box<CounterExpr>, Box<CounterExpr>),
}

impl CounterExpr {
    pub fn keep(j: usize) -> Self {
        CounterExpr::Counter(j)
    }

    pub fn inc(j: usize) -> Self {
        CounterExpr::Add(Box::new(CounterExpr::Counter(j)), 1)
    }

    pub fn add(self, c: u32) -> Self {
        CounterExpr::Add(Box::new(self), c)
    }

    pub fn min(self, other: CounterExpr) -> Self {
        CounterExpr::Min(Box::new(self), Box::new(other))
    }

    pub fn max(self, other: CounterExpr) -> Self {
        CounterExpr::Max(Box::new(self), Box::new(other))
    }

    pub fn min_non_zero(self, other: CounterExpr) -> Self {
        CounterExpr::MinNonZero(Box::new(self), Box::new(other))
    }

    pub fn eval(&self, values: &[u32]) -> u32 {
        match self {
            CounterExpr::Const(c) => *c,
            CounterExpr::Counter(j) => values[*j],
            CounterExpr::Add(e, c) => e.eval(values) + c,
            CounterExpr::Min(a, b) => a.eval(values).min(b.eval(values)),
            CounterExpr::Max(a, b) => a.eval(values).max(b.eval(values)),
            CounterExpr::MinNonZero(a, b) => match (a.eval(values), b.eval(values)) {
                (0, y) => y,
                (x, 0) => x,
                (x, y) => x.min(y),
            },
        }
    }
}

/// One counter: its value range `0..range`, initial value and one update per
/// transition `q * num_symbols + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counter {
    pub range: u32,
    pub initial: u32,
    pub updates: Vec<CounterExpr>,
}

impl Counter {
    /// Counter whose update depends only on the symbol read.
    pub fn by_symbol(dfa: &Dfa, range: u32, initial: u32, update: impl Fn(Symbol) -> CounterExpr) -> Counter {
        let nsym = dfa.num_symbols();
        let updates = (0..dfa.num_states() * nsym).map(|t| update(t % nsym)).collect();
        Counter { range, initial, updates }
    }
}

/// DFA annotated with counters. `outputs[i]` names the counter reported as
/// resource `i` after unfolding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterDfa {
    pub dfa: Dfa,
    pub counters: Vec<Counter>,
    pub outputs: Vec<usize>,
}

impl CounterDfa {
    pub fn new(dfa: Dfa, counters: Vec<Counter>, outputs: Vec<usize>) -> Result<Self> {
        let t = dfa.num_states() * dfa.num_symbols();
        for (j, c) in counters.iter().enumerate() {
            if c.updates.len() != t {
                return Err(Error::invalid(format!("counter {j} needs {t} updates")));
            }
            if c.initial >= c.range {
                return Err(Error::invalid(format!("initial value of counter {j} is out of range")));
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= counters.len()) {
            return Err(Error::invalid(format!("output counter {o} does not exist")));
        }
        Ok(CounterDfa { dfa, counters, outputs })
    }

    /// Direct simulation: acceptance and final values of all counters.
    pub fn simulate(&self, word: &[Symbol]) -> Result<(bool, Vec<u32>)> {
        let mut q = self.dfa.start();
        let mut values: Vec<u32> = self.counters.iter().map(|c| c.initial).collect();
        let nsym = self.dfa.num_symbols();
        for &v in word {
            self.dfa.check_symbol(v)?;
            let t = q * nsym + v;
            values = self.counters.iter().map(|c| c.updates[t].eval(&values)).collect();
            q = self.dfa.next(q, v);
        }
        Ok((self.dfa.is_accepting(q), values))
    }

    /// Upper bound `range^m * |Q|` on the size of the unfolding.
    pub fn unfolding_bound(&self) -> u128 {
        self.counters
            .iter()
            .fold(self.dfa.num_states() as u128, |acc, c| acc.saturating_mul(c.range as u128))
    }
}

/// Unfolds the counters into states and telescopes the reported counters
/// into resource costs.
///
/// For every non-empty word `w`, the result accepts `w` with totals equal to
/// the reported final counter values iff the counter automaton accepts `w`
/// with those values. When some reported counter starts away from zero a
/// fresh, never re-entered start state carries the initial offset, so the
/// state count may exceed the `range^m * |Q|` bound by one in that case.
pub fn unfold_counters(cdfa: &CounterDfa) -> Result<WeightedDfa> {
    let dfa = &cdfa.dfa;
    let nsym = dfa.num_symbols();
    let initial: Vec<u32> = cdfa.counters.iter().map(|c| c.initial).collect();
    let offset_needed = cdfa.outputs.iter().any(|&o| initial[o] != 0);

    // Key: (is_fresh_start, automaton state, counter values).
    type Key = (bool, StateId, Vec<u32>);
    let start: Key = (offset_needed, dfa.start(), initial.clone());
    let mut overflow: Option<String> = None;
    let bound = cdfa.unfolding_bound().saturating_add(1).min(usize::MAX as u128) as usize;
    let (unfolded, keys) = explore(
        nsym,
        start,
        |(_, q, values), v| {
            let t = q * nsym + v;
            let mut next = Vec::with_capacity(values.len());
            for (j, c) in cdfa.counters.iter().enumerate() {
                let x = c.updates[t].eval(values);
                if x >= c.range {
                    overflow.get_or_insert_with(|| {
                        format!("counter {j} reaches {x}, outside 0..{}", c.range)
                    });
                    return None;
                }
                next.push(x);
            }
            Some((false, dfa.next(*q, v), next))
        },
        |(_, q, _)| dfa.is_accepting(*q),
        bound,
    )?;
    if let Some(msg) = overflow {
        return Err(Error::Construction(msg));
    }

    let transitions = unfolded.num_states() * nsym;
    let mut resources = Vec::with_capacity(cdfa.outputs.len());
    for &o in &cdfa.outputs {
        let mut costs = vec![0i64; transitions];
        for (s, (fresh, _, values)) in keys.iter().enumerate() {
            let before = if *fresh { 0 } else { values[o] as i64 };
            for v in 0..nsym {
                let target = unfolded.next(s, v);
                let after = keys[target].2[o] as i64;
                costs[s * nsym + v] = after - before;
            }
        }
        resources.push(if costs.iter().all(|&c| c == 0) {
            ResourceCosts::Zero
        } else {
            ResourceCosts::Fixed(costs)
        });
    }
    let bounds = vec![Interval::unbounded(); resources.len()];
    WeightedDfa::new(unfolded, CostMatrices::from_resources(transitions, resources)?, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts symbol 1 saturating at `range - 1`.
    fn saturating_count(range: u32) -> CounterDfa {
        let dfa = Dfa::from_fn(2, 2, 0, [0, 1], |q, v| if v == 1 { 1 - q } else { q }).unwrap();
        let c = Counter::by_symbol(&dfa, range, 0, |v| {
            if v == 1 {
                CounterExpr::inc(0).min(CounterExpr::Const(range - 1))
            } else {
                CounterExpr::keep(0)
            }
        });
        CounterDfa::new(dfa, vec![c], vec![0]).unwrap()
    }

    #[test]
    fn zero_counters_keep_the_automaton() {
        let dfa = Dfa::from_fn(3, 2, 0, [2], |q, v| (q + v) % 3).unwrap();
        let w = unfold_counters(&CounterDfa::new(dfa.clone(), vec![], vec![]).unwrap()).unwrap();
        assert_eq!(w.dfa(), &dfa);
        assert_eq!(w.num_resources(), 0);
    }

    #[test]
    fn size_bound_for_one_counter() {
        let c = saturating_count(4);
        let w = unfold_counters(&c).unwrap();
        assert!(w.dfa().num_states() <= 8);
        assert_eq!(w.run(&[1, 1, 0, 1, 1, 1]).unwrap().1, vec![3]);
    }

    #[test]
    fn overflow_is_a_construction_error() {
        let dfa = Dfa::universal(1);
        let c = Counter::by_symbol(&dfa, 3, 0, |_| CounterExpr::inc(0));
        let err = unfold_counters(&CounterDfa::new(dfa, vec![c], vec![0]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Construction(_)));
    }

    #[test]
    fn nonzero_initial_value_is_carried_by_fresh_start() {
        let dfa = Dfa::universal(2);
        let c = Counter::by_symbol(&dfa, 4, 3, |v| if v == 0 { CounterExpr::Const(1) } else { CounterExpr::keep(0) });
        let cdfa = CounterDfa::new(dfa, vec![c], vec![0]).unwrap();
        let w = unfold_counters(&cdfa).unwrap();
        for word in [vec![1], vec![0], vec![1, 1, 0], vec![0, 1]] {
            assert_eq!(w.run(&word).unwrap().1[0] as u32, cdfa.simulate(&word).unwrap().1[0]);
        }
    }
}
