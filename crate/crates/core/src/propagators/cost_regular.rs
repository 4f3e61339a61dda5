use std::sync::Arc;

use crate::automata::{Dfa, WeightedDfa};
use crate::engine::{Conflict, Domains, PropResult, Priority, Propagator, VarId};
use crate::interval::Interval;

/// Where the total of a resource is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResourceSlot {
    Var(VarId),
    /// No variable; the total must lie in the automaton's static bound.
    Static,
}

/// Regular / multicostRegular filtering on the layered graph of a weighted
/// automaton.
///
/// The layered graph has `n + 1` layers of automaton states and an arc
/// `(i, q, v)` for every `v` in the domain of `x_i`. One call repeats, until
/// no arc dies:
///
/// 1. forward/backward reachability, so every surviving node lies on a
///    start-to-accepting path;
/// 2. per resource, shortest and longest path costs to and from every node,
///    which tighten the resource variable to the range of complete paths;
/// 3. removal of arcs whose cheapest (dearest) completion exceeds the upper
///    (falls below the lower) bound of some resource.
///
/// Finally every value without a surviving arc is removed. With no resources
/// this is domain consistency for Regular. With resources it is sound but
/// not complete (exact filtering is NP-hard).
pub struct CostRegular {
    xs: Vec<VarId>,
    automaton: Arc<WeightedDfa>,
    slots: Vec<ResourceSlot>,
    /// Resources that can prune: those with a variable or a finite bound.
    active: Vec<usize>,
    scratch: Scratch,
}

#[derive(Default)]
struct Scratch {
    gen: u32,
    dead: Vec<bool>,
    killed: Vec<usize>,
    fwd: Vec<u32>,
    bwd: Vec<u32>,
    layers: Vec<Vec<usize>>,
    fmin: Vec<i64>,
    fmax: Vec<i64>,
    bmin: Vec<i64>,
    bmax: Vec<i64>,
    support: Vec<bool>,
}

impl CostRegular {
    pub fn new(xs: Vec<VarId>, automaton: Arc<WeightedDfa>, slots: Vec<ResourceSlot>) -> Self {
        assert_eq!(slots.len(), automaton.num_resources(), "one slot per resource");
        let active = (0..slots.len())
            .filter(|&r| {
                !automaton.costs().resource(r).is_zero()
                    && (matches!(slots[r], ResourceSlot::Var(_)) || !automaton.bounds()[r].is_unbounded())
            })
            .collect();
        CostRegular {
            xs,
            automaton,
            slots,
            active,
            scratch: Scratch::default(),
        }
    }

    /// Plain Regular constraint.
    pub fn regular(xs: Vec<VarId>, dfa: Dfa) -> Self {
        Self::new(xs, Arc::new(WeightedDfa::unweighted(dfa)), Vec::new())
    }

    /// Every resource kept only through the automaton's static bounds.
    pub fn with_static_bounds(xs: Vec<VarId>, automaton: Arc<WeightedDfa>) -> Self {
        let slots = vec![ResourceSlot::Static; automaton.num_resources()];
        Self::new(xs, automaton, slots)
    }

    fn bound(&self, d: &Domains, r: usize) -> Interval {
        let b = self.automaton.bounds()[r];
        match self.slots[r] {
            ResourceSlot::Var(z) => b.intersect(Interval::new(d.lo(z), d.hi(z))),
            ResourceSlot::Static => b,
        }
    }
}

impl Propagator for CostRegular {
    fn name(&self) -> &'static str {
        if self.slots.is_empty() {
            "regular"
        } else {
            "cost_regular"
        }
    }

    fn scope(&self) -> Vec<VarId> {
        let mut s = self.xs.clone();
        s.extend(self.slots.iter().filter_map(|slot| match slot {
            ResourceSlot::Var(z) => Some(*z),
            ResourceSlot::Static => None,
        }));
        s
    }

    fn priority(&self) -> Priority {
        Priority::Expensive
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult {
        let dfa = self.automaton.dfa();
        let n = self.xs.len();
        let nq = dfa.num_states();
        let nsym = dfa.num_symbols();
        let nodes = (n + 1) * nq;

        for &x in &self.xs {
            if d.lo(x) < 0 || d.hi(x) >= nsym as i64 {
                d.restrict(x, 0, nsym as i64 - 1)?;
            }
        }
        // Resources without costs total 0 on every path.
        for r in 0..self.slots.len() {
            if self.automaton.costs().resource(r).is_zero() {
                if !self.automaton.bounds()[r].contains(0) {
                    return Err(Conflict);
                }
                if let ResourceSlot::Var(z) = self.slots[r] {
                    d.assign(z, 0)?;
                }
            }
        }

        let s = &mut self.scratch;
        if s.fwd.len() < nodes {
            s.fwd = vec![0; nodes];
            s.bwd = vec![0; nodes];
            s.fmin = vec![0; nodes];
            s.fmax = vec![0; nodes];
            s.bmin = vec![0; nodes];
            s.bmax = vec![0; nodes];
            s.dead = vec![false; n * nq * nsym];
            s.gen = 0;
        }
        for a in s.killed.drain(..) {
            s.dead[a] = false;
        }
        s.layers.resize_with(n + 1, Vec::new);
        // Node marks from earlier rounds are told apart by generation
        // numbers: a node is reached iff its entry equals the current one.
        // Arcs killed by cost reasoning stay dead for the rest of the call.
        if s.gen > u32::MAX - 8 {
            s.fwd.iter_mut().for_each(|x| *x = 0);
            s.bwd.iter_mut().for_each(|x| *x = 0);
            s.gen = 0;
        }
        let arc = |i: usize, q: usize, v: usize| (i * nq + q) * nsym + v;

        loop {
            // Fresh reachability marks for this round.
            s.gen += 1;
            let g = s.gen;
            for layer in s.layers.iter_mut() {
                layer.clear();
            }
            s.fwd[dfa.start()] = g;
            s.layers[0].push(dfa.start());
            for i in 0..n {
                let (cur, rest) = s.layers.split_at_mut(i + 1);
                let next = &mut rest[0];
                let dom = d.get(self.xs[i]);
                for &q in &cur[i] {
                    for v in dom.iter() {
                        let v = v as usize;
                        if s.dead[arc(i, q, v)] {
                            continue;
                        }
                        let t = dfa.next(q, v);
                        let node = (i + 1) * nq + t;
                        if s.fwd[node] != g {
                            s.fwd[node] = g;
                            next.push(t);
                        }
                    }
                }
            }
            for &q in &s.layers[n] {
                if dfa.is_accepting(q) {
                    s.bwd[n * nq + q] = g;
                }
            }
            for i in (0..n).rev() {
                let dom = d.get(self.xs[i]);
                let mut kept = 0;
                for j in 0..s.layers[i].len() {
                    let q = s.layers[i][j];
                    let alive = dom.iter().any(|v| {
                        let v = v as usize;
                        !s.dead[arc(i, q, v)] && s.bwd[(i + 1) * nq + dfa.next(q, v)] == g
                    });
                    if alive {
                        s.bwd[i * nq + q] = g;
                        s.layers[i][kept] = q;
                        kept += 1;
                    }
                }
                s.layers[i].truncate(kept);
            }
            let last = &mut s.layers[n];
            last.retain(|&q| dfa.is_accepting(q));
            if s.bwd[dfa.start()] != g {
                return Err(Conflict);
            }

            let mut killed = false;
            for &r in &self.active {
                let w = &self.automaton;
                // Path costs over the trimmed graph.
                for i in 0..=n {
                    for &q in &s.layers[i] {
                        s.fmin[i * nq + q] = i64::MAX;
                        s.fmax[i * nq + q] = i64::MIN;
                        s.bmin[i * nq + q] = i64::MAX;
                        s.bmax[i * nq + q] = i64::MIN;
                    }
                }
                s.fmin[dfa.start()] = 0;
                s.fmax[dfa.start()] = 0;
                for &q in &s.layers[n] {
                    s.bmin[n * nq + q] = 0;
                    s.bmax[n * nq + q] = 0;
                }
                for i in 0..n {
                    let dom = d.get(self.xs[i]);
                    for &q in &s.layers[i] {
                        let (lo, hi) = (s.fmin[i * nq + q], s.fmax[i * nq + q]);
                        for v in dom.iter() {
                            let v = v as usize;
                            let t = dfa.next(q, v);
                            let node = (i + 1) * nq + t;
                            if s.dead[arc(i, q, v)] || s.bwd[node] != g {
                                continue;
                            }
                            let c = w.cost(r, i, q, v);
                            s.fmin[node] = s.fmin[node].min(lo + c);
                            s.fmax[node] = s.fmax[node].max(hi + c);
                        }
                    }
                }
                for i in (0..n).rev() {
                    let dom = d.get(self.xs[i]);
                    for &q in &s.layers[i] {
                        let mut lo = i64::MAX;
                        let mut hi = i64::MIN;
                        for v in dom.iter() {
                            let v = v as usize;
                            let t = dfa.next(q, v);
                            let node = (i + 1) * nq + t;
                            if s.dead[arc(i, q, v)] || s.bwd[node] != g {
                                continue;
                            }
                            let c = w.cost(r, i, q, v);
                            lo = lo.min(c + s.bmin[node]);
                            hi = hi.max(c + s.bmax[node]);
                        }
                        s.bmin[i * nq + q] = lo;
                        s.bmax[i * nq + q] = hi;
                    }
                }
                let total = Interval::new(s.bmin[dfa.start()], s.bmax[dfa.start()]);
                if let ResourceSlot::Var(z) = self.slots[r] {
                    d.restrict(z, total.lo, total.hi)?;
                }
                let b = match self.slots[r] {
                    ResourceSlot::Var(z) => self.automaton.bounds()[r].intersect(Interval::new(d.lo(z), d.hi(z))),
                    ResourceSlot::Static => self.automaton.bounds()[r],
                };
                if b.intersect(total).is_empty() {
                    return Err(Conflict);
                }
                if total.lo >= b.lo && total.hi <= b.hi {
                    continue;
                }
                for i in 0..n {
                    let dom = d.get(self.xs[i]);
                    for &q in &s.layers[i] {
                        let (flo, fhi) = (s.fmin[i * nq + q], s.fmax[i * nq + q]);
                        for v in dom.iter() {
                            let v = v as usize;
                            let a = arc(i, q, v);
                            let t = dfa.next(q, v);
                            let node = (i + 1) * nq + t;
                            if s.dead[a] || s.bwd[node] != g {
                                continue;
                            }
                            let c = w.cost(r, i, q, v);
                            if flo + c + s.bmin[node] > b.hi || fhi + c + s.bmax[node] < b.lo {
                                s.dead[a] = true;
                                s.killed.push(a);
                                killed = true;
                            }
                        }
                    }
                }
                // Path costs of the other resources are stale now.
                if killed {
                    break;
                }
            }
            if !killed {
                break;
            }
        }

        // Remove unsupported values.
        let g = s.gen;
        for i in 0..n {
            let x = self.xs[i];
            s.support.clear();
            s.support.resize(nsym, false);
            let dom = *d.get(x);
            for &q in &s.layers[i] {
                for v in dom.iter() {
                    let v = v as usize;
                    if !s.support[v] && !s.dead[arc(i, q, v)] && s.bwd[(i + 1) * nq + dfa.next(q, v)] == g {
                        s.support[v] = true;
                    }
                }
            }
            let support = &s.support;
            d.retain(x, |v| support[v as usize])?;
        }
        Ok(())
    }

    fn check(&self, d: &Domains) -> bool {
        let word: Vec<usize> = self.xs.iter().map(|&x| d.value(x) as usize).collect();
        match self.automaton.run(&word) {
            Ok((accepted, totals)) => {
                accepted && totals.iter().enumerate().all(|(r, &t)| self.bound(d, r).contains(t))
            }
            Err(_) => false,
        }
    }
}
