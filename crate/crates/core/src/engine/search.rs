use std::time::{Duration, Instant};

use crate::engine::store::{Stats, Store, VarId};

/// Limits for [`solve`]. `None` means unlimited.
#[derive(Clone, Debug, Default)]
pub struct SearchConfig {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    pub backtrack_limit: Option<u64>,
}

impl SearchConfig {
    pub fn with_time_limit(secs: f64) -> Self {
        SearchConfig {
            time_limit: Some(Duration::from_secs_f64(secs)),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Values of all store variables, indexed by variable id.
    Sat(Vec<i64>),
    Unsat,
    Limit,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Sat(_) => "sat",
            Outcome::Unsat => "unsat",
            Outcome::Limit => "timeout",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: Stats,
    /// The initial propagation already failed.
    pub root_failure: bool,
    pub elapsed: Duration,
    /// Solutions seen (only meaningful for [`solve_all`]).
    pub solutions: u64,
}

enum Step {
    Exhausted,
    Stop,
}

struct Dfs<'a, F> {
    store: &'a mut Store,
    decision: &'a [VarId],
    is_decision: Vec<bool>,
    cfg: &'a SearchConfig,
    start: Instant,
    limit_hit: bool,
    solutions: u64,
    on_solution: F,
}

impl<F: FnMut(&Store) -> bool> Dfs<'_, F> {
    fn out_of_budget(&mut self) -> bool {
        let s = &self.store.stats;
        let hit = self.cfg.node_limit.is_some_and(|l| s.nodes >= l)
            || self.cfg.backtrack_limit.is_some_and(|l| s.backtracks >= l)
            || self.cfg.time_limit.is_some_and(|l| self.start.elapsed() >= l);
        self.limit_hit |= hit;
        hit
    }

    /// Smallest domain among decision variables in the given order (first
    /// wins ties), then any remaining unfixed variable by id.
    fn select(&self) -> Option<VarId> {
        let d = self.store.domains();
        let mut best: Option<(u64, VarId)> = None;
        for &v in self.decision {
            let size = d.get(v).size();
            if size > 1 && best.is_none_or(|(s, _)| size < s) {
                best = Some((size, v));
                if size == 2 {
                    break;
                }
            }
        }
        if let Some((_, v)) = best {
            return Some(v);
        }
        (0..d.len()).find(|&v| !self.is_decision[v] && !d.is_fixed(v))
    }

    fn run(&mut self) -> Step {
        if !self.store.propagate() {
            return Step::Exhausted;
        }
        let Some(var) = self.select() else {
            if self.store.check_all() {
                self.solutions += 1;
                return if (self.on_solution)(self.store) {
                    Step::Exhausted
                } else {
                    Step::Stop
                };
            }
            self.store.stats.failures += 1;
            return Step::Exhausted;
        };
        if self.out_of_budget() {
            return Step::Stop;
        }
        let value = self.store.domain(var).lo();
        for branch in 0..2 {
            self.store.stats.nodes += 1;
            self.store.push_level();
            let ok = if branch == 0 {
                self.store.assign(var, value)
            } else {
                self.store.remove(var, value)
            };
            let step = if ok { self.run() } else { Step::Exhausted };
            self.store.pop_level();
            match step {
                Step::Stop => return Step::Stop,
                Step::Exhausted => self.store.stats.backtracks += 1,
            }
            if self.out_of_budget() {
                return Step::Stop;
            }
        }
        Step::Exhausted
    }
}

fn search<F: FnMut(&Store) -> bool>(
    store: &mut Store,
    decision: &[VarId],
    cfg: &SearchConfig,
    on_solution: F,
) -> (SearchResult, bool) {
    let start = Instant::now();
    let mut is_decision = vec![false; store.num_vars()];
    for &v in decision {
        is_decision[v] = true;
    }
    let base = store.depth();
    let root_ok = store.propagate();
    let mut dfs = Dfs {
        store,
        decision,
        is_decision,
        cfg,
        start,
        limit_hit: false,
        solutions: 0,
        on_solution,
    };
    let stopped = root_ok && matches!(dfs.run(), Step::Stop);
    let limit = dfs.limit_hit;
    let solutions = dfs.solutions;
    debug_assert_eq!(store.depth(), base);
    let result = SearchResult {
        outcome: Outcome::Unsat,
        stats: store.stats,
        root_failure: !root_ok,
        elapsed: start.elapsed(),
        solutions,
    };
    (result, stopped && limit)
}

/// Depth-first search with binary branching `x = v` / `x != v` on the
/// smallest value of the chosen variable. Stops at the first solution.
///
/// The store is left at its initial level with root propagation applied.
pub fn solve(store: &mut Store, decision: &[VarId], cfg: &SearchConfig) -> SearchResult {
    let mut found = None;
    let (mut result, limited) = search(store, decision, cfg, |s| {
        found = Some(s.values());
        false
    });
    result.outcome = match found {
        Some(values) => Outcome::Sat(values),
        None if limited => Outcome::Limit,
        None => Outcome::Unsat,
    };
    result
}

/// Enumerates solutions; `on_solution` returns false to stop early. The
/// outcome is `Unsat` after complete enumeration (check `solutions`), `Limit`
/// if a limit interrupted it, and `Sat` with the last solution if the callback
/// stopped it.
pub fn solve_all(
    store: &mut Store,
    decision: &[VarId],
    cfg: &SearchConfig,
    mut on_solution: impl FnMut(&[i64]) -> bool,
) -> SearchResult {
    let mut last = None;
    let (mut result, limited) = search(store, decision, cfg, |s| {
        let values = s.values();
        let go_on = on_solution(&values);
        if !go_on {
            last = Some(values);
        }
        go_on
    });
    result.outcome = match last {
        Some(values) => Outcome::Sat(values),
        None if limited => Outcome::Limit,
        None => Outcome::Unsat,
    };
    result
}
