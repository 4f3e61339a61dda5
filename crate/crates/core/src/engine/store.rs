use std::collections::VecDeque;

use crate::engine::domain::Domain;

pub type VarId = usize;
pub type PropId = usize;

/// A propagator detected that the current domains admit no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict;

pub type PropResult = Result<(), Conflict>;

/// Scheduling class. Cheap propagators run before expensive ones; the order
/// never changes the fixpoint, only the work needed to reach it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Priority {
    Cheap,
    Expensive,
}

/// Filtering algorithm over a fixed scope of variables.
///
/// Propagators are stateless with respect to search: everything they prune
/// is derived from the current domains, so backtracking only needs to
/// restore domains. They may keep scratch buffers.
pub trait Propagator: Send {
    fn name(&self) -> &'static str;

    fn scope(&self) -> Vec<VarId>;

    fn priority(&self) -> Priority {
        Priority::Cheap
    }

    /// True if one call always reaches the propagator's own fixpoint, so
    /// its own changes need not wake it again.
    fn idempotent(&self) -> bool {
        false
    }

    fn propagate(&mut self, d: &mut Domains) -> PropResult;

    /// Full check on an assignment where every scope variable is fixed.
    fn check(&self, d: &Domains) -> bool;
}

/// Domains of all variables with a trail for undoing changes.
#[derive(Clone, Debug, Default)]
pub struct Domains {
    doms: Vec<Domain>,
    trail: Vec<(VarId, Domain)>,
    saved_epoch: Vec<u64>,
    epoch: u64,
    next_epoch: u64,
    changed: Vec<VarId>,
}

impl Domains {
    pub fn len(&self) -> usize {
        self.doms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doms.is_empty()
    }

    fn push(&mut self, d: Domain) -> VarId {
        self.doms.push(d);
        self.saved_epoch.push(u64::MAX);
        self.doms.len() - 1
    }

    #[inline]
    pub fn get(&self, v: VarId) -> &Domain {
        &self.doms[v]
    }

    #[inline]
    pub fn lo(&self, v: VarId) -> i64 {
        self.doms[v].lo()
    }

    #[inline]
    pub fn hi(&self, v: VarId) -> i64 {
        self.doms[v].hi()
    }

    #[inline]
    pub fn contains(&self, v: VarId, x: i64) -> bool {
        self.doms[v].contains(x)
    }

    #[inline]
    pub fn is_fixed(&self, v: VarId) -> bool {
        self.doms[v].is_fixed()
    }

    /// Value of a fixed variable (its minimum otherwise).
    #[inline]
    pub fn value(&self, v: VarId) -> i64 {
        self.doms[v].lo()
    }

    pub fn snapshot(&self) -> Vec<Domain> {
        self.doms.clone()
    }

    #[inline]
    fn save(&mut self, v: VarId) {
        if self.saved_epoch[v] != self.epoch {
            self.saved_epoch[v] = self.epoch;
            self.trail.push((v, self.doms[v]));
        }
    }

    #[inline]
    fn apply(&mut self, v: VarId, f: impl FnOnce(&mut Domain) -> bool) -> Result<bool, Conflict> {
        let mut d = self.doms[v];
        if !f(&mut d) {
            return Ok(false);
        }
        self.save(v);
        self.doms[v] = d;
        self.changed.push(v);
        if d.is_empty() {
            Err(Conflict)
        } else {
            Ok(true)
        }
    }

    pub fn set_min(&mut self, v: VarId, x: i64) -> Result<bool, Conflict> {
        if x <= self.doms[v].lo() {
            return Ok(false);
        }
        self.apply(v, |d| d.restrict(x, i64::MAX))
    }

    pub fn set_max(&mut self, v: VarId, x: i64) -> Result<bool, Conflict> {
        if x >= self.doms[v].hi() {
            return Ok(false);
        }
        self.apply(v, |d| d.restrict(i64::MIN, x))
    }

    pub fn restrict(&mut self, v: VarId, lo: i64, hi: i64) -> Result<bool, Conflict> {
        self.apply(v, |d| d.restrict(lo, hi))
    }

    pub fn remove(&mut self, v: VarId, x: i64) -> Result<bool, Conflict> {
        if !self.doms[v].contains(x) {
            return Ok(false);
        }
        self.apply(v, |d| d.remove(x))
    }

    pub fn assign(&mut self, v: VarId, x: i64) -> Result<bool, Conflict> {
        if !self.doms[v].contains(x) {
            self.apply(v, |d| d.restrict(1, 0))?;
            return Err(Conflict);
        }
        self.apply(v, |d| d.restrict(x, x))
    }

    /// Keeps only the values accepted by `keep`.
    pub fn retain(&mut self, v: VarId, mut keep: impl FnMut(i64) -> bool) -> Result<bool, Conflict> {
        let dead: Vec<i64> = self.doms[v].iter().filter(|&x| !keep(x)).collect();
        if dead.is_empty() {
            return Ok(false);
        }
        self.apply(v, |d| {
            let mut changed = false;
            for x in dead {
                changed |= d.remove(x);
            }
            changed
        })
    }
}

/// Counters describing a propagation/search run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: u64,
    pub backtracks: u64,
    pub failures: u64,
    pub propagations: u64,
}

/// Variables, propagators and the propagation queue.
pub struct Store {
    doms: Domains,
    props: Vec<Box<dyn Propagator>>,
    watchers: Vec<Vec<PropId>>,
    queued: Vec<bool>,
    queues: [VecDeque<PropId>; 2],
    levels: Vec<(usize, u64)>,
    pub stats: Stats,
}

impl Default for Store {
    fn default() -> Self {
        Store::new()
    }
}

impl Store {
    pub fn new() -> Self {
        Store {
            doms: Domains::default(),
            props: Vec::new(),
            watchers: Vec::new(),
            queued: Vec::new(),
            queues: [VecDeque::new(), VecDeque::new()],
            levels: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub fn new_var(&mut self, lo: i64, hi: i64) -> VarId {
        self.add_domain(Domain::interval(lo, hi))
    }

    pub fn new_var_values(&mut self, values: &[i64]) -> VarId {
        self.add_domain(Domain::values(values))
    }

    pub fn add_domain(&mut self, d: Domain) -> VarId {
        self.watchers.push(Vec::new());
        self.doms.push(d)
    }

    pub fn num_vars(&self) -> usize {
        self.doms.len()
    }

    pub fn num_propagators(&self) -> usize {
        self.props.len()
    }

    pub fn domains(&self) -> &Domains {
        &self.doms
    }

    pub fn domain(&self, v: VarId) -> &Domain {
        self.doms.get(v)
    }

    /// True if some domain is empty.
    pub fn is_failed(&self) -> bool {
        (0..self.doms.len()).any(|v| self.doms.get(v).is_empty())
    }

    pub fn post(&mut self, p: Box<dyn Propagator>) -> PropId {
        let id = self.props.len();
        let mut scope = p.scope();
        scope.sort_unstable();
        scope.dedup();
        for v in scope {
            self.watchers[v].push(id);
        }
        self.props.push(p);
        self.queued.push(false);
        self.enqueue(id);
        id
    }

    pub fn post_all(&mut self, ps: impl IntoIterator<Item = Box<dyn Propagator>>) {
        for p in ps {
            self.post(p);
        }
    }

    fn enqueue(&mut self, id: PropId) {
        if !self.queued[id] {
            self.queued[id] = true;
            let class = match self.props[id].priority() {
                Priority::Cheap => 0,
                Priority::Expensive => 1,
            };
            self.queues[class].push_back(id);
        }
    }

    fn schedule_changed(&mut self, skip: Option<PropId>) {
        let changed = std::mem::take(&mut self.doms.changed);
        for &v in &changed {
            for i in 0..self.watchers[v].len() {
                let p = self.watchers[v][i];
                if Some(p) != skip {
                    self.enqueue(p);
                }
            }
        }
        let mut changed = changed;
        changed.clear();
        self.doms.changed = changed;
    }

    fn clear_queue(&mut self) {
        for q in &mut self.queues {
            for id in q.drain(..) {
                self.queued[id] = false;
            }
        }
        self.doms.changed.clear();
    }

    /// Runs the queued propagators to a fixpoint. Returns false on failure.
    pub fn propagate(&mut self) -> bool {
        self.schedule_changed(None);
        loop {
            let id = match self.queues[0].pop_front().or_else(|| self.queues[1].pop_front()) {
                Some(id) => id,
                None => return true,
            };
            self.queued[id] = false;
            self.stats.propagations += 1;
            let result = self.props[id].propagate(&mut self.doms);
            if result.is_err() {
                self.stats.failures += 1;
                self.clear_queue();
                return false;
            }
            let skip = self.props[id].idempotent().then_some(id);
            self.schedule_changed(skip);
        }
    }

    /// Wakes every propagator, e.g. after domains were edited directly.
    pub fn schedule_all(&mut self) {
        for id in 0..self.props.len() {
            self.enqueue(id);
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn push_level(&mut self) {
        self.levels.push((self.doms.trail.len(), self.doms.epoch));
        self.doms.next_epoch += 1;
        self.doms.epoch = self.doms.next_epoch;
    }

    pub fn pop_level(&mut self) {
        let (mark, epoch) = self.levels.pop().expect("pop_level without push_level");
        while self.doms.trail.len() > mark {
            let (v, d) = self.doms.trail.pop().unwrap();
            self.doms.doms[v] = d;
        }
        self.doms.epoch = epoch;
        self.clear_queue();
    }

    pub fn assign(&mut self, v: VarId, x: i64) -> bool {
        self.doms.assign(v, x).is_ok()
    }

    pub fn remove(&mut self, v: VarId, x: i64) -> bool {
        self.doms.remove(v, x).is_ok()
    }

    pub fn restrict(&mut self, v: VarId, lo: i64, hi: i64) -> bool {
        self.doms.restrict(v, lo, hi).is_ok()
    }

    /// Checks every propagator on the current (fully fixed) assignment.
    pub fn check_all(&self) -> bool {
        self.props.iter().all(|p| {
            p.scope().iter().all(|&v| self.doms.is_fixed(v)) && p.check(&self.doms)
        })
    }

    /// Name of the first propagator rejecting the current assignment.
    pub fn first_violation(&self) -> Option<&'static str> {
        self.props.iter().find(|p| !p.check(&self.doms)).map(|p| p.name())
    }

    pub fn values(&self) -> Vec<i64> {
        (0..self.doms.len()).map(|v| self.doms.value(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct NotEqual(VarId, VarId);

    impl Propagator for NotEqual {
        fn name(&self) -> &'static str {
            "not_equal"
        }
        fn scope(&self) -> Vec<VarId> {
            vec![self.0, self.1]
        }
        fn propagate(&mut self, d: &mut Domains) -> PropResult {
            if d.is_fixed(self.0) {
                d.remove(self.1, d.value(self.0))?;
            }
            if d.is_fixed(self.1) {
                d.remove(self.0, d.value(self.1))?;
            }
            Ok(())
        }
        fn check(&self, d: &Domains) -> bool {
            d.value(self.0) != d.value(self.1)
        }
    }

    #[test]
    fn no_propagators_is_stable() {
        let mut s = Store::new();
        let x = s.new_var(0, 3);
        assert!(s.propagate());
        assert_eq!(s.domain(x).size(), 4);
    }

    #[test]
    fn equal_singletons_fail() {
        let mut s = Store::new();
        let x = s.new_var(1, 1);
        let y = s.new_var(1, 1);
        s.post(Box::new(NotEqual(x, y)));
        assert!(!s.propagate());
    }

    #[test]
    fn trail_restores_domains() {
        let mut s = Store::new();
        let x = s.new_var(0, 5);
        let y = s.new_var(0, 5);
        s.post(Box::new(NotEqual(x, y)));
        assert!(s.propagate());
        let before = s.domains().snapshot();
        s.push_level();
        s.assign(x, 2);
        assert!(s.propagate());
        assert!(!s.domain(y).contains(2));
        s.push_level();
        s.restrict(y, 4, 5);
        s.remove(y, 4);
        s.pop_level();
        s.remove(y, 0);
        s.pop_level();
        assert_eq!(s.domains().snapshot(), before);
    }
}
