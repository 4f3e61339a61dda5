use crate::automata::builders::{sequence_dfa, stretch_rule_dfa, word_set_dfa};
use crate::automata::{Dfa, Symbol, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{ColumnSpec, MatrixModel};

/// CNF formula over propositions `1..=num_vars`. A literal is a non-zero
/// integer, negative for a negated proposition (DIMACS style).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// Symbols of the three-valued reductions: labels `-1`, `0`, `1`.
const NEG: Symbol = 0;
const ZERO: Symbol = 1;
const POS: Symbol = 2;

/// Row automaton that forbids mixing `1` and `-1` in a word (zeros are free).
pub fn no_mix_dfa() -> Dfa {
    // 0 nothing seen, 1 only 1s, 2 only -1s, 3 dead.
    let table = vec![vec![2, 0, 1], vec![3, 1, 1], vec![2, 2, 3], vec![3, 3, 3]];
    Dfa::new(3, table, 0, [0, 1, 2]).expect("static automaton")
}

/// Matrix with one row per proposition and one column per clause. Cell
/// `(r, c)` may be `1` if `p_r` occurs positively in clause `c`, `-1` if it
/// occurs negatively and is `0` otherwise. Rows must not mix `1` and `-1`
/// and every column holds at most `R - 1` zeros.
pub fn gen_3sat(cnf: &Cnf) -> Result<MatrixModel> {
    if cnf.num_vars == 0 || cnf.clauses.is_empty() {
        return Err(Error::invalid("formula needs at least one proposition and one clause"));
    }
    let (rows, cols) = (cnf.num_vars, cnf.clauses.len());
    let mut model = MatrixModel::new(rows, cols, vec![-1, 0, 1], WeightedDfa::unweighted(no_mix_dfa()))?;
    for r in 0..rows {
        for c in 0..cols {
            model.set_domain(r, c, vec![ZERO]);
        }
    }
    for (c, clause) in cnf.clauses.iter().enumerate() {
        if clause.len() > 3 {
            return Err(Error::invalid(format!("clause {} has more than three literals", c + 1)));
        }
        for &lit in clause {
            let p = lit.unsigned_abs() as usize;
            if lit == 0 || p > rows {
                return Err(Error::invalid(format!("literal {lit} out of range")));
            }
            let mut dom = model.domain(p - 1, c).to_vec();
            dom.push(if lit > 0 { POS } else { NEG });
            model.set_domain(p - 1, c, dom);
        }
    }
    let r = rows as i64;
    let spec = ColumnSpec::Gcc(vec![Interval::new(0, r), Interval::new(0, r - 1), Interval::new(0, r)]);
    model.columns = vec![spec; cols];
    Ok(model)
}

/// Matrix with one row per set and one column per element of
/// `1..=universe`. Cell `(r, i)` ranges over `{0, 1}` if `i` is in set `r`
/// and over `{-1, 0}` otherwise; every column holds exactly one `1` and every
/// stretch of zeros in a row spans at least `universe` cells.
pub fn gen_exact_cover(universe: usize, family: &[Vec<usize>]) -> Result<MatrixModel> {
    if universe == 0 || family.is_empty() {
        return Err(Error::invalid("exact cover needs a non-empty universe and family"));
    }
    let row = stretch_rule_dfa(3, &[ZERO], universe, universe)?;
    let mut model = MatrixModel::new(family.len(), universe, vec![-1, 0, 1], WeightedDfa::unweighted(row))?;
    for (r, set) in family.iter().enumerate() {
        if let Some(&e) = set.iter().find(|&&e| e == 0 || e > universe) {
            return Err(Error::invalid(format!("element {e} outside 1..={universe}")));
        }
        for i in 0..universe {
            let dom = if set.contains(&(i + 1)) { vec![ZERO, POS] } else { vec![NEG, ZERO] };
            model.set_domain(r, i, dom);
        }
    }
    let n = family.len() as i64;
    let spec = ColumnSpec::Gcc(vec![Interval::new(0, n), Interval::new(0, n), Interval::point(1)]);
    model.columns = vec![spec; universe];
    Ok(model)
}

/// 3-dimensional matching instance: `triples` over `W x Z x Y` with every
/// coordinate in `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching3d {
    pub q: usize,
    pub triples: Vec<[usize; 3]>,
}

impl Matching3d {
    fn validate(&self) -> Result<()> {
        if self.q == 0 || self.triples.is_empty() {
            return Err(Error::invalid("3D matching needs q >= 1 and at least one triple"));
        }
        if let Some(t) = self.triples.iter().find(|t| t.iter().any(|&c| c >= self.q)) {
            return Err(Error::invalid(format!("triple {t:?} has a coordinate outside 0..{}", self.q)));
        }
        Ok(())
    }

    /// Number of triples using value `i` in coordinate `axis`.
    pub fn occurrences(&self, axis: usize, i: usize) -> usize {
        self.triples.iter().filter(|t| t[axis] == i).count()
    }
}

/// `m x 5` matrix over `0`, `t` and the `3q` coordinate values. Row `i` may
/// take `(w_i, 0, z_i, 0, y_i)` or zeros and `t`s, every pair of adjacent
/// cells holds a zero, odd columns use every coordinate value at least once
/// and even columns hold at least `m - q` `t`s and `q` zeros.
///
/// Symbols: `0` is zero (label 0), `1` is `t` (label 1), then `w_0..w_q`,
/// `z_0..z_q`, `y_0..y_q` with labels `2..2 + 3q`.
pub fn gen_3dm_dc(inst: &Matching3d) -> Result<MatrixModel> {
    inst.validate()?;
    let (q, m) = (inst.q, inst.triples.len());
    let nv = 2 + 3 * q;
    let labels: Vec<i64> = (0..nv as i64).collect();
    let row = sequence_dfa(nv, &[0], 1, 2, 2)?;
    let mut model = MatrixModel::new(m, 5, labels, WeightedDfa::unweighted(row))?;
    let coord = |axis: usize, i: usize| 2 + axis * q + i;
    for (r, t) in inst.triples.iter().enumerate() {
        for axis in 0..3 {
            model.set_domain(r, 2 * axis, vec![0, coord(axis, t[axis])]);
        }
        model.set_domain(r, 1, vec![0, 1]);
        model.set_domain(r, 3, vec![0, 1]);
    }
    let mi = m as i64;
    let free = Interval::new(0, mi);
    let spare = (m as i64 - q as i64).max(0);
    for axis in 0..3 {
        let mut b = vec![free; nv];
        b[0] = Interval::new(spare, mi);
        for i in 0..q {
            b[coord(axis, i)] = Interval::new(1, mi);
        }
        model.columns[2 * axis] = ColumnSpec::Gcc(b);
    }
    let mut even = vec![free; nv];
    even[0] = Interval::new(q as i64, mi);
    even[1] = Interval::new(spare, mi);
    model.columns[1] = ColumnSpec::Gcc(even.clone());
    model.columns[3] = ColumnSpec::Gcc(even);
    Ok(model)
}

/// Value order of the interval-domain 3D matching construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneOrder {
    /// `block[axis][i]`: symbols of the clones of coordinate value `i`.
    pub clones: [Vec<Vec<Symbol>>; 3],
    /// `value[axis][i]`: symbol of the coordinate value itself.
    pub value: [Vec<Symbol>; 3],
    pub zero: Symbol,
    pub t: Symbol,
    pub num_symbols: usize,
}

impl CloneOrder {
    fn new(inst: &Matching3d) -> Self {
        let q = inst.q;
        let mut next = 0;
        let mut clones: [Vec<Vec<Symbol>>; 3] = Default::default();
        // Clone blocks: axis W, Z, Y; inside an axis from value q-1 down to 0.
        for (axis, blocks) in clones.iter_mut().enumerate() {
            *blocks = vec![Vec::new(); q];
            for i in (0..q).rev() {
                let n = inst.occurrences(axis, i).saturating_sub(1);
                blocks[i] = (next..next + n).collect();
                next += n;
            }
        }
        let zero = next;
        let t = next + 1;
        next += 2;
        let mut value: [Vec<Symbol>; 3] = Default::default();
        // Values: Y, then Z, then W, each ascending.
        for axis in [2, 1, 0] {
            value[axis] = (next..next + q).collect();
            next += q;
        }
        CloneOrder {
            clones,
            value,
            zero,
            t,
            num_symbols: next,
        }
    }

    /// First symbol of the clone block of value `i` (the start of the
    /// following block when it is empty).
    fn block_start(&self, axis: usize, i: usize) -> Symbol {
        let q = self.value[axis].len();
        // Blocks are laid out for i = q-1 down to 0, axes in order.
        let mut pos = 0;
        for a in 0..axis {
            pos += self.clones[a].iter().map(Vec::len).sum::<usize>();
        }
        for j in (i + 1..q).rev() {
            pos += self.clones[axis][j].len();
        }
        pos
    }
}

/// Interval-domain variant of [`gen_3dm_dc`]: every coordinate value gets
/// one clone per extra occurrence, symbols are totally ordered
/// (clones, `0`, `t`, values) and every odd-column domain is an interval of
/// that order. Labels are symbol offsets from `0`, so clones are negative.
pub fn gen_3dm_bc(inst: &Matching3d) -> Result<(MatrixModel, CloneOrder)> {
    inst.validate()?;
    let order = CloneOrder::new(inst);
    let (q, m, nv) = (inst.q, inst.triples.len(), order.num_symbols);
    let labels: Vec<i64> = (0..nv).map(|s| s as i64 - order.zero as i64).collect();
    let low: Vec<Symbol> = (0..=order.zero).collect();
    let row = sequence_dfa(nv, &low, 1, 2, 2)?;
    let mut model = MatrixModel::new(m, 5, labels, WeightedDfa::unweighted(row))?;
    for (r, t) in inst.triples.iter().enumerate() {
        for axis in 0..3 {
            let lo = order.block_start(axis, t[axis]);
            let hi = order.value[axis][t[axis]];
            model.set_domain(r, 2 * axis, (lo..=hi).collect());
        }
        model.set_domain(r, 1, vec![order.zero, order.t]);
        model.set_domain(r, 3, vec![order.zero, order.t]);
    }
    let mi = m as i64;
    let free = Interval::new(0, mi);
    for axis in 0..3 {
        let mut b = vec![free; nv];
        for i in 0..q {
            for &s in order.clones[axis][i].iter().chain(std::iter::once(&order.value[axis][i])) {
                b[s] = Interval::new(1, mi);
            }
        }
        model.columns[2 * axis] = ColumnSpec::Gcc(b);
    }
    let mut even = vec![free; nv];
    even[order.zero] = Interval::new(q as i64, mi);
    even[order.t] = Interval::new((m as i64 - q as i64).max(0), mi);
    model.columns[1] = ColumnSpec::Gcc(even.clone());
    model.columns[3] = ColumnSpec::Gcc(even);
    Ok((model, order))
}

/// Hypergraph on vertices `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub num_vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HittingVariant {
    /// Values `{0, 1}` with Gcc columns.
    Gcc,
    /// Values `{-1, 0, 1}` with Sum columns.
    Sum,
}

/// `k x (|V| + |E|)` matrix whose rows are chosen among one word per vertex
/// `v`: a marker in column `v`, then for every edge a `1` iff `v` is in it.
/// Vertex columns carry at most one marker and edge columns at least one `1`.
/// In the Gcc variant the marker is `1`; in the Sum variant it is `-1` and
/// vertex columns must sum to at least `-1`.
pub fn gen_hitting_set(h: &Hypergraph, k: usize, variant: HittingVariant) -> Result<MatrixModel> {
    if k == 0 || h.num_vertices == 0 {
        return Err(Error::invalid("hitting set needs k >= 1 and at least one vertex"));
    }
    if let Some(e) = h.edges.iter().find(|e| e.iter().any(|&v| v >= h.num_vertices)) {
        return Err(Error::invalid(format!("edge {e:?} mentions an unknown vertex")));
    }
    let (n, cols) = (h.num_vertices, h.num_vertices + h.edges.len());
    let (labels, zero, one, marker) = match variant {
        HittingVariant::Gcc => (vec![0, 1], 0, 1, 1),
        HittingVariant::Sum => (vec![-1, 0, 1], 1, 2, 0),
    };
    let nv = labels.len();
    let words: Vec<Vec<Symbol>> = (0..n)
        .map(|v| {
            let mut w = vec![zero; cols];
            w[v] = marker;
            for (j, e) in h.edges.iter().enumerate() {
                if e.contains(&v) {
                    w[n + j] = one;
                }
            }
            w
        })
        .collect();
    let row = word_set_dfa(nv, &words)?;
    let mut model = MatrixModel::new(k, cols, labels, WeightedDfa::unweighted(row))?;
    let ki = k as i64;
    for c in 0..cols {
        model.columns[c] = match variant {
            HittingVariant::Gcc => {
                let ones = if c < n { Interval::new(0, 1) } else { Interval::new(1, ki) };
                ColumnSpec::Gcc(vec![Interval::new(0, ki), ones])
            }
            HittingVariant::Sum => ColumnSpec::Sum(if c < n {
                Interval::new(-1, ki)
            } else {
                Interval::new(1, ki)
            }),
        };
    }
    Ok(model)
}
