use crate::automata::dfa::{Dfa, StateId, Symbol};
use crate::error::{Error, Result};
use crate::interval::Interval;

pub type ResourceId = usize;

/// Costs of one resource, indexed by transition `q * num_symbols + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResourceCosts {
    /// Every transition costs nothing.
    Zero,
    /// Position-independent costs, one per transition.
    Fixed(Vec<i64>),
    /// One cost vector per word position. Positions past the last vector
    /// cost nothing.
    Positional(Vec<Vec<i64>>),
}

impl ResourceCosts {
    #[inline]
    pub fn at(&self, position: usize, transition: usize) -> i64 {
        match self {
            ResourceCosts::Zero => 0,
            ResourceCosts::Fixed(c) => c[transition],
            ResourceCosts::Positional(layers) => layers.get(position).map_or(0, |c| c[transition]),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResourceCosts::Zero => true,
            ResourceCosts::Fixed(c) => c.iter().all(|&x| x == 0),
            ResourceCosts::Positional(l) => l.iter().flatten().all(|&x| x == 0),
        }
    }

    pub fn is_positional(&self) -> bool {
        matches!(self, ResourceCosts::Positional(_))
    }

    fn horizon(&self) -> usize {
        match self {
            ResourceCosts::Positional(l) => l.len(),
            _ => 0,
        }
    }
}

/// Family of cost matrices `c^r_{q,v}` (optionally position dependent) over a
/// fixed transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostMatrices {
    transitions: usize,
    resources: Vec<ResourceCosts>,
}

impl CostMatrices {
    pub fn zero(transitions: usize, resources: usize) -> Self {
        CostMatrices {
            transitions,
            resources: vec![ResourceCosts::Zero; resources],
        }
    }

    pub fn from_resources(transitions: usize, resources: Vec<ResourceCosts>) -> Result<Self> {
        for (r, costs) in resources.iter().enumerate() {
            let ok = match costs {
                ResourceCosts::Zero => true,
                ResourceCosts::Fixed(c) => c.len() == transitions,
                ResourceCosts::Positional(l) => l.iter().all(|c| c.len() == transitions),
            };
            if !ok {
                return Err(Error::invalid(format!(
                    "cost matrix of resource {r} does not cover {transitions} transitions"
                )));
            }
        }
        Ok(CostMatrices { transitions, resources })
    }

    pub fn num_resources(&self) -> usize {
        self.resources.len()
    }

    pub fn resource(&self, r: ResourceId) -> &ResourceCosts {
        &self.resources[r]
    }

    pub fn resources(&self) -> &[ResourceCosts] {
        &self.resources
    }

    pub fn is_positional(&self) -> bool {
        self.resources.iter().any(ResourceCosts::is_positional)
    }

    /// Sets the cost of a transition for a resource. With `position = None`
    /// the cost applies at every position.
    pub fn set(&mut self, r: ResourceId, position: Option<usize>, transition: usize, cost: i64) {
        let n = self.transitions;
        let slot = &mut self.resources[r];
        match position {
            None => {
                if let ResourceCosts::Zero = slot {
                    *slot = ResourceCosts::Fixed(vec![0; n]);
                }
                match slot {
                    ResourceCosts::Fixed(c) => c[transition] = cost,
                    ResourceCosts::Positional(l) => l.iter_mut().for_each(|c| c[transition] = cost),
                    ResourceCosts::Zero => unreachable!(),
                }
            }
            Some(i) => {
                let layers = match std::mem::replace(slot, ResourceCosts::Zero) {
                    ResourceCosts::Zero => Vec::new(),
                    ResourceCosts::Fixed(c) => vec![c; i + 1],
                    ResourceCosts::Positional(l) => l,
                };
                let mut layers = layers;
                while layers.len() <= i {
                    layers.push(vec![0; n]);
                }
                layers[i][transition] = cost;
                *slot = ResourceCosts::Positional(layers);
            }
        }
    }
}

/// A DFA with per-resource transition costs and static bounds on the run
/// totals (the multicostRegular constraint).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDfa {
    dfa: Dfa,
    costs: CostMatrices,
    bounds: Vec<Interval>,
}

impl WeightedDfa {
    pub fn new(dfa: Dfa, costs: CostMatrices, bounds: Vec<Interval>) -> Result<Self> {
        if costs.num_resources() != bounds.len() {
            return Err(Error::invalid(format!(
                "{} cost matrices but {} resource bounds",
                costs.num_resources(),
                bounds.len()
            )));
        }
        if costs.transitions != dfa.num_states() * dfa.num_symbols() {
            return Err(Error::invalid("cost matrices do not match the transition table"));
        }
        Ok(WeightedDfa { dfa, costs, bounds })
    }

    /// Wraps a DFA without resources.
    pub fn unweighted(dfa: Dfa) -> Self {
        let t = dfa.num_states() * dfa.num_symbols();
        WeightedDfa {
            dfa,
            costs: CostMatrices::zero(t, 0),
            bounds: Vec::new(),
        }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn costs(&self) -> &CostMatrices {
        &self.costs
    }

    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    pub fn num_resources(&self) -> usize {
        self.bounds.len()
    }

    #[inline]
    pub fn cost(&self, r: ResourceId, position: usize, q: StateId, v: Symbol) -> i64 {
        self.costs.resources[r].at(position, q * self.dfa.num_symbols() + v)
    }

    pub fn set_bound(&mut self, r: ResourceId, bound: Interval) {
        self.bounds[r] = bound;
    }

    pub fn with_bound(mut self, r: ResourceId, bound: Interval) -> Self {
        self.set_bound(r, bound);
        self
    }

    /// Runs the word and returns acceptance plus the per-resource totals.
    pub fn run(&self, word: &[Symbol]) -> Result<(bool, Vec<i64>)> {
        let mut totals = vec![0i64; self.num_resources()];
        let mut q = self.dfa.start();
        for (i, &v) in word.iter().enumerate() {
            self.dfa.check_symbol(v)?;
            for (r, total) in totals.iter_mut().enumerate() {
                *total += self.cost(r, i, q, v);
            }
            q = self.dfa.next(q, v);
        }
        Ok((self.dfa.is_accepting(q), totals))
    }

    /// True iff the word is accepted and every total lies within its bound.
    pub fn satisfied_by(&self, word: &[Symbol]) -> Result<bool> {
        let (accepted, totals) = self.run(word)?;
        Ok(accepted && totals.iter().zip(&self.bounds).all(|(t, b)| b.contains(*t)))
    }

    /// Moves every resource up by `offset` ids; ids below the offset become
    /// unbounded zero-cost resources.
    pub fn with_resource_offset(&self, offset: usize) -> WeightedDfa {
        let mut resources = vec![ResourceCosts::Zero; offset];
        resources.extend(self.costs.resources.iter().cloned());
        let mut bounds = vec![Interval::unbounded(); offset];
        bounds.extend(self.bounds.iter().copied());
        WeightedDfa {
            dfa: self.dfa.clone(),
            costs: CostMatrices {
                transitions: self.costs.transitions,
                resources,
            },
            bounds,
        }
    }

    /// Product automaton over index-aligned resources: transitions are
    /// paired, costs of equal resource ids are added and bounds intersected.
    /// A resource missing on one side has zero cost and no bound there.
    pub fn product(&self, other: &WeightedDfa) -> Result<WeightedDfa> {
        self.product_capped(other, usize::MAX)
    }

    /// [`WeightedDfa::product`] with a limit on the number of states.
    pub fn product_capped(&self, other: &WeightedDfa, max_states: usize) -> Result<WeightedDfa> {
        let (dfa, pairs) = self.dfa.product_capped(&other.dfa, max_states)?;
        let nsym = dfa.num_symbols();
        let nres = self.num_resources().max(other.num_resources());
        let transitions = dfa.num_states() * nsym;
        let mut resources = Vec::with_capacity(nres);
        let mut bounds = Vec::with_capacity(nres);
        for r in 0..nres {
            let a = self.costs.resources.get(r);
            let b = other.costs.resources.get(r);
            let a_zero = a.is_none_or(ResourceCosts::is_zero);
            let b_zero = b.is_none_or(ResourceCosts::is_zero);
            let horizon = a.map_or(0, ResourceCosts::horizon).max(b.map_or(0, ResourceCosts::horizon));
            let positional = a.is_some_and(ResourceCosts::is_positional) || b.is_some_and(ResourceCosts::is_positional);
            let layer = |i: usize| -> Vec<i64> {
                let mut c = vec![0i64; transitions];
                for (pq, &(qa, qb)) in pairs.iter().enumerate() {
                    for v in 0..nsym {
                        let ca = a.map_or(0, |x| x.at(i, qa * nsym + v));
                        let cb = b.map_or(0, |x| x.at(i, qb * nsym + v));
                        c[pq * nsym + v] = ca + cb;
                    }
                }
                c
            };
            let costs = if a_zero && b_zero {
                ResourceCosts::Zero
            } else if positional {
                ResourceCosts::Positional((0..horizon).map(layer).collect())
            } else {
                ResourceCosts::Fixed(layer(0))
            };
            resources.push(costs);
            let ba = self.bounds.get(r).copied().unwrap_or_else(Interval::unbounded);
            let bb = other.bounds.get(r).copied().unwrap_or_else(Interval::unbounded);
            bounds.push(ba.intersect(bb));
        }
        WeightedDfa::new(dfa, CostMatrices::from_resources(transitions, resources)?, bounds)
    }
}

impl WeightedDfa {
    /// Whether resource `r` counts the symbols of `set`: every transition
    /// on an accepting run costs 1 on a symbol of `set` and 0 otherwise.
    pub fn resource_counts(&self, r: ResourceId, set: &[Symbol]) -> bool {
        let (n, nsym) = (self.dfa.num_states(), self.dfa.num_symbols());
        let live = self.dfa.coaccessible();
        let costs = &self.costs.resources[r];
        (0..n).filter(|&q| live[q]).all(|q| {
            (0..nsym).filter(|&v| live[self.dfa.next(q, v)]).all(|v| {
                let want = i64::from(set.contains(&v));
                (0..costs.horizon().max(1)).all(|i| costs.at(i, q * nsym + v) == want)
            })
        })
    }

    /// Equivalent automaton with merged states. Two states merge when they
    /// agree on acceptance and, for every symbol, on the cost vectors of the
    /// transition and on the class of its target. Transitions that cannot lie
    /// on an accepting run are treated as free, so all dead states collapse.
    pub fn minimize(&self) -> WeightedDfa {
        let (dfa, old_of) = self.dfa.prune_unreachable();
        let nsym = dfa.num_symbols();
        let n = dfa.num_states();
        let live = dfa.coaccessible();
        // Cost signature of every transition of the pruned automaton.
        let keys: Vec<Vec<i64>> = (0..n * nsym)
            .map(|t| {
                let (q, v) = (t / nsym, t % nsym);
                if !live[q] || !live[dfa.next(q, v)] {
                    return Vec::new();
                }
                let old = old_of[q] * nsym + v;
                let mut key = Vec::new();
                for c in &self.costs.resources {
                    match c {
                        ResourceCosts::Zero => key.push(0),
                        ResourceCosts::Fixed(c) => key.push(c[old]),
                        ResourceCosts::Positional(l) => key.extend(l.iter().map(|c| c[old])),
                    }
                }
                key
            })
            .collect();
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(dfa.is_accepting(q))).collect();
        let mut count = 0;
        loop {
            let mut ids: std::collections::HashMap<(usize, Vec<(usize, &[i64])>), usize> =
                std::collections::HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig = (0..nsym)
                        .map(|v| (class[dfa.next(q, v)], keys[q * nsym + v].as_slice()))
                        .collect();
                    let len = ids.len();
                    *ids.entry((class[q], sig)).or_insert(len)
                })
                .collect();
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Representative of every class, renumbered from the start state.
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let (merged, keys_of) = crate::automata::explore(
            nsym,
            class[dfa.start()],
            |&c, v| Some(class[dfa.next(rep[c], v)]),
            |&c| dfa.is_accepting(rep[c]),
            usize::MAX,
        )
        .expect("minimizing cannot exceed the original size");
        let transitions = merged.num_states() * nsym;
        let cost_at = |r: usize, i: usize, t: usize| -> i64 {
            let (c, v) = (keys_of[t / nsym], t % nsym);
            let q = rep[c];
            if !live[q] || !live[dfa.next(q, v)] {
                return 0;
            }
            self.costs.resources[r].at(i, old_of[q] * nsym + v)
        };
        let resources = self
            .costs
            .resources
            .iter()
            .enumerate()
            .map(|(r, c)| match c {
                ResourceCosts::Zero => ResourceCosts::Zero,
                ResourceCosts::Fixed(_) => ResourceCosts::Fixed((0..transitions).map(|t| cost_at(r, 0, t)).collect()),
                ResourceCosts::Positional(l) => ResourceCosts::Positional(
                    (0..l.len())
                        .map(|i| (0..transitions).map(|t| cost_at(r, i, t)).collect())
                        .collect(),
                ),
            })
            .collect();
        WeightedDfa {
            dfa: merged,
            costs: CostMatrices { transitions, resources },
            bounds: self.bounds.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counter(sym: Symbol) -> WeightedDfa {
        let dfa = Dfa::universal(2);
        let mut costs = CostMatrices::zero(2, 1);
        costs.set(0, None, sym, 1);
        WeightedDfa::new(dfa, costs, vec![Interval::unbounded()]).unwrap()
    }

    #[test]
    fn zero_costs_give_zero_totals() {
        let w = WeightedDfa::new(Dfa::universal(3), CostMatrices::zero(3, 2), vec![Interval::unbounded(); 2]).unwrap();
        assert_eq!(w.run(&[0, 1, 2]).unwrap(), (true, vec![0, 0]));
    }

    #[test]
    fn product_sums_aligned_resources() {
        let p = counter(0).product(&counter(1)).unwrap();
        assert_eq!(p.run(&[0, 1, 1]).unwrap().1, vec![3]);
        let q = counter(0).product(&counter(1).with_resource_offset(1)).unwrap();
        assert_eq!(q.run(&[0, 1, 1]).unwrap().1, vec![1, 2]);
    }

    #[test]
    fn positional_set_extends_layers() {
        let mut costs = CostMatrices::zero(2, 1);
        costs.set(0, Some(2), 1, 5);
        let w = WeightedDfa::new(Dfa::universal(2), costs, vec![Interval::unbounded()]).unwrap();
        assert_eq!(w.run(&[1, 1, 1, 1]).unwrap().1, vec![5]);
        assert_eq!(w.run(&[1, 1, 0]).unwrap().1, vec![0]);
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        let (p, _) = Dfa::universal(2).product(&Dfa::universal(2)).unwrap();
        let w = WeightedDfa::unweighted(p).product(&counter(1)).unwrap();
        let doubled = w.product(&w).unwrap().minimize();
        assert_eq!(doubled.dfa().num_states(), 1);
        assert_eq!(doubled.run(&[1, 0, 1]).unwrap(), (true, vec![4]));
    }

    #[test]
    fn bounds_are_checked() {
        let w = counter(1).with_bound(0, Interval::new(1, 1));
        assert!(w.satisfied_by(&[0, 1]).unwrap());
        assert!(!w.satisfied_by(&[1, 1]).unwrap());
        assert!(!w.satisfied_by(&[0]).unwrap());
    }
}
