use crate::automata::Symbol;
use crate::error::{Error, Result};
use crate::model::{ColumnSpec, MatrixModel};

/// Default bound on the number of row-word combinations brute force may face.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Accepted row words (within resource bounds) compatible with the domains
/// of row `r`.
pub fn row_candidates(model: &MatrixModel, r: usize) -> Vec<Vec<Symbol>> {
    let dfa = model.row_automaton.dfa();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(model.cols);
    fn rec(model: &MatrixModel, r: usize, q: usize, word: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) {
        let k = word.len();
        if k == model.cols {
            if model.row_automaton.satisfied_by(word).unwrap_or(false) {
                out.push(word.clone());
            }
            return;
        }
        for &v in model.domain(r, k) {
            word.push(v);
            rec(model, r, model.row_automaton.dfa().next(q, v), word, out);
            word.pop();
        }
    }
    rec(model, r, dfa.start(), &mut word, &mut out);
    out
}

struct ColumnState {
    counts: Vec<Vec<i64>>,
    sums: Vec<i64>,
    states: Vec<usize>,
}

/// Enumerates every solution of the model (row-major symbol matrices).
///
/// Rows are chosen among their candidate words; partial columns are pruned
/// against Gcc and Sum bounds. Refuses with [`Error::OracleCap`] when the
/// product of the candidate counts exceeds `cap`.
pub fn brute_solve_capped(model: &MatrixModel, cap: u128) -> Result<Vec<Vec<Symbol>>> {
    model.validate()?;
    let candidates: Vec<Vec<Vec<Symbol>>> = (0..model.rows).map(|r| row_candidates(model, r)).collect();
    let size = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if size > cap {
        return Err(Error::OracleCap { size, cap });
    }
    let nv = model.num_values();
    let (min_label, max_label) = (
        *model.labels.iter().min().unwrap(),
        *model.labels.iter().max().unwrap(),
    );
    let mut st = ColumnState {
        counts: vec![vec![0; nv]; model.cols],
        sums: vec![0; model.cols],
        states: model
            .columns
            .iter()
            .map(|c| match c {
                ColumnSpec::Dfa(d) => d.start(),
                _ => 0,
            })
            .collect(),
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(model.rows);
    let mut out = Vec::new();

    fn feasible(model: &MatrixModel, st: &ColumnState, remaining: i64, min_label: i64, max_label: i64) -> bool {
        (0..model.cols).all(|k| match &model.columns[k] {
            ColumnSpec::Gcc(b) => st.counts[k]
                .iter()
                .zip(b)
                .all(|(&c, iv)| c <= iv.hi && c + remaining >= iv.lo),
            ColumnSpec::Sum(b) => {
                st.sums[k] + remaining * min_label <= b.hi && st.sums[k] + remaining * max_label >= b.lo
            }
            ColumnSpec::Dfa(_) => true,
        })
    }

    fn rec(
        model: &MatrixModel,
        cands: &[Vec<Vec<Symbol>>],
        st: &mut ColumnState,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Symbol>>,
        bounds: (i64, i64),
    ) {
        let r = chosen.len();
        if r == model.rows {
            let accepted = (0..model.cols).all(|k| match &model.columns[k] {
                ColumnSpec::Dfa(d) => d.is_accepting(st.states[k]),
                _ => true,
            });
            if accepted {
                let matrix: Vec<Symbol> = chosen.iter().enumerate().flat_map(|(r, &i)| cands[r][i].clone()).collect();
                debug_assert!(model.check(&matrix));
                out.push(matrix);
            }
            return;
        }
        for (i, word) in cands[r].iter().enumerate() {
            let saved: Vec<usize> = st.states.clone();
            for (k, &v) in word.iter().enumerate() {
                st.counts[k][v] += 1;
                st.sums[k] += model.labels[v];
                if let ColumnSpec::Dfa(d) = &model.columns[k] {
                    st.states[k] = d.next(st.states[k], v);
                }
            }
            let remaining = (model.rows - r - 1) as i64;
            if feasible(model, st, remaining, bounds.0, bounds.1) {
                chosen.push(i);
                rec(model, cands, st, chosen, out, bounds);
                chosen.pop();
            }
            for (k, &v) in word.iter().enumerate() {
                st.counts[k][v] -= 1;
                st.sums[k] -= model.labels[v];
            }
            st.states = saved;
        }
    }

    rec(model, &candidates, &mut st, &mut chosen, &mut out, (min_label, max_label));
    Ok(out)
}

/// [`brute_solve_capped`] with [`DEFAULT_CAP`].
pub fn brute_solve(model: &MatrixModel) -> Result<Vec<Vec<Symbol>>> {
    brute_solve_capped(model, DEFAULT_CAP)
}

/// True iff the model has a solution.
pub fn brute_satisfiable(model: &MatrixModel) -> Result<bool> {
    Ok(!brute_solve(model)?.is_empty())
}

/// Per-cell union of the values used by solutions: the domain-consistent
/// domains of the full matrix constraint. All empty when unsatisfiable.
pub fn brute_dc_from(model: &MatrixModel, solutions: &[Vec<Symbol>]) -> Vec<Vec<Symbol>> {
    let mut seen = vec![vec![false; model.num_values()]; model.rows * model.cols];
    for s in solutions {
        for (cell, &v) in s.iter().enumerate() {
            seen[cell][v] = true;
        }
    }
    seen.into_iter()
        .map(|vals| vals.iter().enumerate().filter_map(|(v, &b)| b.then_some(v)).collect())
        .collect()
}

pub fn brute_dc(model: &MatrixModel) -> Result<Vec<Vec<Symbol>>> {
    let solutions = brute_solve(model)?;
    Ok(brute_dc_from(model, &solutions))
}
