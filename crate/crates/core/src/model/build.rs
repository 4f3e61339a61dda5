use std::collections::HashMap;
use std::sync::Arc;

use crate::automata::builders::{
    build_gcc_weights, build_sliding_word_counter, build_stretch_count, build_stretch_lengths,
};
use crate::automata::{Symbol, WeightedDfa};
use crate::engine::{post_lex_chain, Domain, Store, VarId};
use crate::error::Result;
use crate::interval::Interval;
use crate::model::conditions::{post_word_bound_vars, post_word_conditions, StretchCount, StretchLength};
use crate::model::{ColumnSpec, MatrixModel, Mode};
use crate::propagators::{CostRegular, Extremum, GccCount, LinearSum, ResourceSlot};

/// String properties extracted from the rows in WA and CWA modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyConfig {
    /// Symbol sets whose occurrences, stretch counts and stretch lengths are
    /// tracked.
    pub sets: Vec<Vec<Symbol>>,
    /// Word patterns (one symbol set per letter) whose occurrences are
    /// tracked per start position.
    pub words: Vec<Vec<Vec<Symbol>>>,
}

impl PropertyConfig {
    /// Every single symbol, and the words `v` and `vv` for every symbol.
    pub fn singletons(num_values: usize, cols: usize) -> Self {
        let mut sets: Vec<Vec<Symbol>> = (0..num_values).map(|v| vec![v]).collect();
        if num_values >= 3 {
            sets.extend((0..num_values).map(|v| (0..num_values).filter(|&u| u != v).collect()));
        }
        let mut words = Vec::new();
        for v in 0..num_values {
            words.push(vec![vec![v]]);
            if cols >= 2 {
                words.push(vec![vec![v], vec![v]]);
            }
        }
        PropertyConfig { sets, words }
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub mode: Mode,
    /// Relate word occurrences and column bounds only through their sums
    /// over all start positions.
    pub aggregate_words: bool,
    /// Post lexicographic ordering between consecutive rows when the model
    /// declares its rows interchangeable.
    pub lex: bool,
    /// Defaults to [`PropertyConfig::singletons`].
    pub properties: Option<PropertyConfig>,
    /// Row/property products larger than this are not posted in CWA mode.
    pub product_state_limit: usize,
}

impl BuildOptions {
    pub fn new(mode: Mode) -> Self {
        BuildOptions {
            mode,
            aggregate_words: false,
            lex: true,
            properties: None,
            product_state_limit: 50_000,
        }
    }
}

/// A model posted into a store.
pub struct Built {
    pub store: Store,
    /// Decision variables, row-major.
    pub cells: Vec<VarId>,
    /// Cardinality variables, `cards[v * cols + k]` counts symbol `v` in
    /// column `k`.
    pub cards: Vec<VarId>,
    pub rows: usize,
    pub cols: usize,
    pub mode: Mode,
    /// Products skipped in CWA mode because of the state limit.
    pub skipped_products: usize,
}

impl Built {
    pub fn card(&self, v: Symbol, k: usize) -> VarId {
        self.cards[v * self.cols + k]
    }

    /// Matrix of symbols from a full assignment of the store.
    pub fn matrix(&self, values: &[i64]) -> Vec<Symbol> {
        self.cells.iter().map(|&c| values[c] as Symbol).collect()
    }

    /// Current cell domains, or `None` if some domain is empty.
    pub fn cell_domains(&self) -> Option<Vec<Vec<Symbol>>> {
        let doms: Vec<Vec<Symbol>> = self
            .cells
            .iter()
            .map(|&c| self.store.domain(c).iter().map(|v| v as Symbol).collect())
            .collect();
        if doms.iter().any(Vec::is_empty) || self.store.is_failed() {
            None
        } else {
            Some(doms)
        }
    }

    /// Runs root propagation and returns the surviving cell domains.
    pub fn root_domains(&mut self) -> Option<Vec<Vec<Symbol>>> {
        if self.store.propagate() {
            self.cell_domains()
        } else {
            None
        }
    }
}

struct Builder<'a> {
    model: &'a MatrixModel,
    opts: &'a BuildOptions,
    store: Store,
    cells: Vec<VarId>,
    cards: Vec<VarId>,
    row_slots: Vec<Vec<ResourceSlot>>,
    set_counts: HashMap<(Vec<Symbol>, usize), VarId>,
    /// Row/property products keyed by the property automaton, which is kept
    /// alive so that its address stays unique.
    products: HashMap<usize, (Arc<WeightedDfa>, Option<Arc<WeightedDfa>>)>,
    skipped: usize,
}

impl Builder<'_> {
    fn r(&self) -> i64 {
        self.model.rows as i64
    }

    fn row_cells(&self, r: usize) -> Vec<VarId> {
        self.cells[r * self.model.cols..(r + 1) * self.model.cols].to_vec()
    }

    /// Number of cells of column `k` holding a symbol of `set`.
    fn set_count(&mut self, set: &[Symbol], k: usize) -> VarId {
        let mut key = set.to_vec();
        key.sort_unstable();
        key.dedup();
        if key.len() == 1 {
            return self.cards[key[0] * self.model.cols + k];
        }
        if let Some(&v) = self.set_counts.get(&(key.clone(), k)) {
            return v;
        }
        let h = self.store.new_var(0, self.r());
        let members: Vec<VarId> = key.iter().map(|&v| self.cards[v * self.model.cols + k]).collect();
        self.store.post(Box::new(LinearSum::sum_eq(&members, h)));
        self.set_counts.insert((key, k), h);
        h
    }

    fn decomposition(&mut self) {
        let m = self.model;
        let (rows, cols, nv) = (m.rows, m.cols, m.num_values());
        for dom in &m.domains {
            let values: Vec<i64> = dom.iter().map(|&v| v as i64).collect();
            self.cells.push(self.store.add_domain(Domain::values(&values)));
        }
        for v in 0..nv {
            for k in 0..cols {
                let b = match &m.columns[k] {
                    ColumnSpec::Gcc(bounds) => bounds[v].intersect(Interval::new(0, rows as i64)),
                    _ => Interval::new(0, rows as i64),
                };
                let c = self.store.new_var(b.lo, b.hi);
                self.cards.push(c);
            }
        }
        let values: Vec<i64> = (0..nv as i64).collect();
        for k in 0..cols {
            let col: Vec<VarId> = (0..rows).map(|r| self.cells[r * cols + k]).collect();
            let cards: Vec<VarId> = (0..nv).map(|v| self.cards[v * cols + k]).collect();
            self.store.post(Box::new(GccCount::new(col.clone(), values.clone(), cards.clone())));
            self.store
                .post(Box::new(LinearSum::new(cards.iter().map(|&c| (1, c)).collect(), Interval::point(rows as i64))));
            match &m.columns[k] {
                ColumnSpec::Sum(b) => {
                    let terms = cards.iter().zip(&m.labels).map(|(&c, &l)| (l, c)).collect();
                    self.store.post(Box::new(LinearSum::new(terms, *b)));
                }
                ColumnSpec::Dfa(d) => {
                    self.store.post(Box::new(CostRegular::regular(col, d.clone())));
                }
                ColumnSpec::Gcc(_) => {}
            }
        }
        let row_automaton = Arc::new(m.row_automaton.clone());
        for r in 0..rows {
            let slots: Vec<ResourceSlot> = (0..row_automaton.num_resources())
                .map(|j| {
                    if row_automaton.costs().resource(j).is_zero() {
                        ResourceSlot::Static
                    } else {
                        let b = row_automaton.bounds()[j];
                        ResourceSlot::Var(self.store.new_var(b.lo, b.hi))
                    }
                })
                .collect();
            let xs = self.row_cells(r);
            self.store.post(Box::new(CostRegular::new(xs, row_automaton.clone(), slots.clone())));
            self.row_slots.push(slots);
        }
        if self.opts.lex && m.symmetric_rows {
            let rows_vars: Vec<Vec<VarId>> = (0..rows).map(|r| self.row_cells(r)).collect();
            self.store.post_all(post_lex_chain(&rows_vars));
        }
    }

    /// Row automaton crossed with `automaton`, or `None` above the size limit.
    fn product(&mut self, automaton: &Arc<WeightedDfa>) -> Option<Arc<WeightedDfa>> {
        let key = Arc::as_ptr(automaton) as usize;
        if let Some((_, p)) = self.products.get(&key) {
            return p.clone();
        }
        let row = &self.model.row_automaton;
        let shifted = automaton.with_resource_offset(row.num_resources());
        let p = match row.product_capped(&shifted, self.opts.product_state_limit) {
            Ok(p) => {
                let p = p.minimize();
                log::info!(
                    "product: {} x {} states, {} after minimization",
                    row.dfa().num_states(),
                    automaton.dfa().num_states(),
                    p.dfa().num_states()
                );
                Some(Arc::new(p))
            }
            Err(e) => {
                log::warn!("product not posted ({e})");
                None
            }
        };
        self.products.insert(key, (automaton.clone(), p.clone()));
        p
    }

    /// Posts a property automaton on row `r` with the given resource slots.
    /// In CWA mode the product with the row automaton replaces it, unless the
    /// product is too large.
    fn post_property(&mut self, r: usize, automaton: &Arc<WeightedDfa>, slots: Vec<ResourceSlot>) -> Result<()> {
        let xs = self.row_cells(r);
        if self.opts.mode == Mode::Cwa {
            if let Some(p) = self.product(automaton) {
                let mut all = self.row_slots[r].clone();
                all.extend(slots);
                self.store.post(Box::new(CostRegular::new(xs, p, all)));
                return Ok(());
            }
            self.skipped += 1;
        }
        self.store.post(Box::new(CostRegular::new(xs, automaton.clone(), slots)));
        Ok(())
    }

    fn properties(&mut self) -> Result<()> {
        let m = self.model;
        let (rows, cols, nv) = (m.rows, m.cols, m.num_values());
        let props = self
            .opts
            .properties
            .clone()
            .unwrap_or_else(|| PropertyConfig::singletons(nv, cols));
        let r_count = self.r();
        let k_count = cols as i64;

        for set in &props.sets {
            let h: Vec<VarId> = (0..cols).map(|k| self.set_count(set, k)).collect();

            // Occurrences per row.
            // A row resource counting the same set already is the occurrence.
            let row = &m.row_automaton;
            let shared = (0..row.num_resources())
                .find(|&j| !row.costs().resource(j).is_zero() && row.resource_counts(j, set));
            let occ = Arc::new(build_gcc_weights(nv, std::slice::from_ref(set), 0)?);
            let mut ys = Vec::with_capacity(rows);
            for r in 0..rows {
                if let Some(ResourceSlot::Var(y)) = shared.map(|j| self.row_slots[r][j]) {
                    ys.push(y);
                    continue;
                }
                let y = self.store.new_var(0, k_count);
                ys.push(y);
                self.post_property(r, &occ, vec![ResourceSlot::Var(y)])?;
            }
            let mut terms: Vec<(i64, VarId)> = ys.iter().map(|&y| (1, y)).collect();
            terms.extend(h.iter().map(|&x| (-1, x)));
            self.store.post(Box::new(LinearSum::new(terms, Interval::point(0))));

            let proper = !set.is_empty() && set.len() < nv;
            if !proper {
                continue;
            }

            // Stretch counts.
            let count = Arc::new(build_stretch_count(set, nv, 0)?);
            let max_stretches = (k_count + 1) / 2;
            let mut zs = Vec::with_capacity(rows);
            for r in 0..rows {
                let z = self.store.new_var(0, max_stretches);
                zs.push(z);
                self.post_property(r, &count, vec![ResourceSlot::Var(z)])?;
            }
            let total = self.store.new_var(0, max_stretches * r_count);
            self.store.post(Box::new(LinearSum::sum_eq(&zs, total)));
            self.store.post(Box::new(StretchCount::new(h.clone(), total, r_count)));

            // Stretch lengths.
            let lengths = Arc::new(build_stretch_lengths(set, nv, 0, cols)?.minimize());
            let (mut mins, mut maxs) = (Vec::new(), Vec::new());
            for r in 0..rows {
                let lo = self.store.new_var(1, k_count + 1);
                let hi = self.store.new_var(0, k_count);
                mins.push(lo);
                maxs.push(hi);
                self.post_property(r, &lengths, vec![ResourceSlot::Var(lo), ResourceSlot::Var(hi)])?;
            }
            let zmin = self.store.new_var(1, k_count + 1);
            let zmax = self.store.new_var(0, k_count);
            self.store.post(Box::new(Extremum::min(zmin, mins)));
            self.store.post(Box::new(Extremum::max(zmax, maxs)));
            self.store.post(Box::new(StretchLength::new(h, zmin, zmax, r_count)));
        }

        for word in &props.words {
            let len = word.len();
            if len == 0 || len > cols {
                continue;
            }
            let starts = cols - len + 1;
            let counter = Arc::new(build_sliding_word_counter(word, 0, cols, nv)?);
            let mut z: Vec<Vec<VarId>> = Vec::with_capacity(rows);
            for r in 0..rows {
                let flags: Vec<VarId> = (0..starts).map(|_| self.store.new_var(0, 1)).collect();
                self.post_property(r, &counter, flags.iter().map(|&f| ResourceSlot::Var(f)).collect())?;
                z.push(flags);
            }
            if len == 1 {
                // A single letter occurs in a row at k iff the cell holds it.
                for k in 0..starts {
                    let col: Vec<VarId> = z.iter().map(|row| row[k]).collect();
                    let h = self.set_count(&word[0], k);
                    self.store.post(Box::new(LinearSum::sum_eq(&col, h)));
                }
                continue;
            }
            let (mut lw, mut uw) = (Vec::new(), Vec::new());
            for k in 0..starts {
                let counts: Vec<VarId> = (0..len).map(|j| self.set_count(&word[j], k + j)).collect();
                let l = self.store.new_var(0, r_count);
                let u = self.store.new_var(0, r_count);
                self.store.post_all(post_word_bound_vars(&counts, l, u, r_count));
                lw.push(l);
                uw.push(u);
            }
            self.store
                .post_all(post_word_conditions(&lw, &uw, &z, self.opts.aggregate_words));
        }
        Ok(())
    }
}

/// Posts the model into a fresh store. Nothing is propagated yet.
pub fn build(model: &MatrixModel, opts: &BuildOptions) -> Result<Built> {
    model.validate()?;
    let mut b = Builder {
        model,
        opts,
        store: Store::new(),
        cells: Vec::new(),
        cards: Vec::new(),
        row_slots: Vec::new(),
        set_counts: HashMap::new(),
        products: HashMap::new(),
        skipped: 0,
    };
    b.decomposition();
    if opts.mode != Mode::Decomp {
        b.properties()?;
    }
    Ok(Built {
        store: b.store,
        cells: b.cells,
        cards: b.cards,
        rows: model.rows,
        cols: model.cols,
        mode: opts.mode,
        skipped_products: b.skipped,
    })
}
