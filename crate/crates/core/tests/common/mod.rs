//! Helpers shared by the integration tests: independent brute-force solvers
//! for matrix models and for the source problems of the reductions, and root
//! propagation in every mode.

#![allow(dead_code)]

use regulargcc::automata::Symbol;
use regulargcc::generators::{Cnf, Hypergraph, Matching3d};
use regulargcc::model::{build, BuildOptions, ColumnSpec, MatrixModel, Mode};

/// Every word over `0..nsym` of length `len`.
pub fn all_words(nsym: usize, len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..nsym).map(move |v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out
}

fn column_ok(model: &MatrixModel, k: usize, col: &[Symbol]) -> bool {
    match &model.columns[k] {
        ColumnSpec::Gcc(b) => (0..model.num_values()).all(|v| b[v].contains(col.iter().filter(|&&x| x == v).count() as i64)),
        ColumnSpec::Sum(b) => b.contains(col.iter().map(|&v| model.labels[v]).sum()),
        ColumnSpec::Dfa(d) => d.accepts(col).unwrap(),
    }
}

/// All solutions by plain enumeration: every row word within the domains
/// that the row automaton accepts (resources in bounds), combined row by row
/// while the Gcc bounds can still be met, with the columns checked at the end.
pub fn enumerate(model: &MatrixModel) -> Vec<Vec<Symbol>> {
    let (rows, cols, nv) = (model.rows, model.cols, model.num_values());
    let cands: Vec<Vec<Vec<Symbol>>> = (0..rows)
        .map(|r| {
            let mut words = vec![Vec::new()];
            for k in 0..cols {
                words = words
                    .into_iter()
                    .flat_map(|w: Vec<Symbol>| {
                        model.domain(r, k).iter().map(move |&v| {
                            let mut w = w.clone();
                            w.push(v);
                            w
                        })
                    })
                    .collect();
            }
            words.retain(|w| model.row_automaton.satisfied_by(w).unwrap());
            words
        })
        .collect();
    let mut out = Vec::new();
    let mut matrix = Vec::with_capacity(rows * cols);
    let mut counts = vec![vec![0i64; nv]; cols];
    fn rec(
        model: &MatrixModel,
        cands: &[Vec<Vec<Symbol>>],
        matrix: &mut Vec<Symbol>,
        counts: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Symbol>>,
    ) {
        let r = matrix.len() / model.cols;
        if r == model.rows {
            let ok = (0..model.cols).all(|k| {
                let col: Vec<Symbol> = (0..model.rows).map(|r| matrix[r * model.cols + k]).collect();
                column_ok(model, k, &col)
            });
            if ok {
                out.push(matrix.clone());
            }
            return;
        }
        for w in &cands[r] {
            let over = w.iter().enumerate().any(|(k, &v)| match &model.columns[k] {
                ColumnSpec::Gcc(b) => counts[k][v] + 1 > b[v].hi,
                _ => false,
            });
            if over {
                continue;
            }
            for (k, &v) in w.iter().enumerate() {
                counts[k][v] += 1;
            }
            // Missing occurrences must fit into the remaining rows.
            let remaining = (model.rows - r - 1) as i64;
            let short = (0..model.cols).any(|k| match &model.columns[k] {
                ColumnSpec::Gcc(b) => b.iter().zip(&counts[k]).map(|(iv, &c)| (iv.lo - c).max(0)).sum::<i64>() > remaining,
                _ => false,
            });
            matrix.extend_from_slice(w);
            if !short {
                rec(model, cands, matrix, counts, out);
            }
            matrix.truncate(matrix.len() - model.cols);
            for (k, &v) in w.iter().enumerate() {
                counts[k][v] -= 1;
            }
        }
    }
    rec(model, &cands, &mut matrix, &mut counts, &mut out);
    out
}

/// Per-cell values used by some solution.
pub fn supported(model: &MatrixModel, solutions: &[Vec<Symbol>]) -> Vec<Vec<Symbol>> {
    (0..model.rows * model.cols)
        .map(|cell| {
            let mut vals: Vec<Symbol> = solutions.iter().map(|s| s[cell]).collect();
            vals.sort_unstable();
            vals.dedup();
            vals
        })
        .collect()
}

/// Cell domains at the root fixpoint, `None` on failure.
pub fn root(model: &MatrixModel, mode: Mode, lex: bool) -> Option<Vec<Vec<Symbol>>> {
    let opts = BuildOptions {
        lex,
        ..BuildOptions::new(mode)
    };
    build(model, &opts).unwrap().root_domains()
}

/// Values removed from the initial domains, per cell. A failed root removes
/// everything.
pub fn pruned(model: &MatrixModel, after: &Option<Vec<Vec<Symbol>>>) -> Vec<Vec<Symbol>> {
    (0..model.rows * model.cols)
        .map(|cell| {
            let (r, k) = (cell / model.cols, cell % model.cols);
            let dom = model.domain(r, k);
            match after {
                None => dom.to_vec(),
                Some(d) => dom.iter().copied().filter(|v| !d[cell].contains(v)).collect(),
            }
        })
        .collect()
}

pub fn sat_brute(cnf: &Cnf) -> bool {
    (0u32..1 << cnf.num_vars).any(|bits| {
        cnf.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let val = bits >> (l.unsigned_abs() - 1) & 1 == 1;
                val == (l > 0)
            })
        })
    })
}

/// Some subfamily partitions `1..=universe`.
pub fn exact_cover_brute(universe: usize, family: &[Vec<usize>]) -> bool {
    (0u32..1 << family.len()).any(|pick| {
        let mut hits = vec![0; universe + 1];
        for (i, set) in family.iter().enumerate() {
            if pick >> i & 1 == 1 {
                for &e in set {
                    hits[e] += 1;
                }
            }
        }
        hits[1..].iter().all(|&h| h == 1)
    })
}

/// Some `q` triples cover every coordinate value on every axis.
pub fn matching_brute(inst: &Matching3d) -> bool {
    let m = inst.triples.len();
    (0u32..1 << m).any(|pick| {
        if pick.count_ones() as usize != inst.q {
            return false;
        }
        (0..3).all(|axis| {
            (0..inst.q).all(|i| (0..m).any(|t| pick >> t & 1 == 1 && inst.triples[t][axis] == i))
        })
    })
}

/// Some set of exactly `k` vertices meets every edge.
pub fn hitting_brute(h: &Hypergraph, k: usize) -> bool {
    (0u32..1 << h.num_vertices).any(|pick| {
        pick.count_ones() as usize == k && h.edges.iter().all(|e| e.iter().any(|&v| pick >> v & 1 == 1))
    })
}

/// Multisets of size `1..=max` drawn from `items`, as index lists.
pub fn multisets(items: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(items: usize, max: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in from..items {
            cur.push(i);
            rec(items, max, i, cur, out);
            cur.pop();
        }
    }
    rec(items, max, 0, &mut Vec::new(), &mut out);
    out
}

/// Non-empty subsets of `0..n` as sorted lists.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n).map(|b| (0..n).filter(|&i| b >> i & 1 == 1).collect()).collect()
}
