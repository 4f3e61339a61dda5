use crate::automata::{Dfa, Symbol};
use crate::engine::{Store, VarId};
use crate::error::{Error, Result};
use crate::model::{ColumnSpec, MatrixModel};
use crate::propagators::CostRegular;

/// Largest `|Q| * |Q'|^C` the encoding accepts.
pub const ENCODE_CAP: u128 = 1_000_000;

/// Single automaton over the row-major reading of an `rows x cols` matrix
/// whose rows are accepted by `row` and whose columns are accepted by `col`.
///
/// A state is the position inside the current row, the row automaton state
/// and one column automaton state per column. At the end of every row the row
/// state must be accepting and is reset to the start; a word is accepted at a
/// row boundary when every column state is accepting. Only words of length
/// `rows * cols` are meaningful; `rows` only serves the size guard.
pub fn encode_matrix_dfa(row: &Dfa, col: &Dfa, rows: usize, cols: usize) -> Result<Dfa> {
    if row.num_symbols() != col.num_symbols() {
        return Err(Error::AlphabetMismatch(row.num_symbols(), col.num_symbols()));
    }
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("matrix needs at least one row and column"));
    }
    let size = (col.num_states() as u128)
        .checked_pow(cols as u32)
        .and_then(|p| p.checked_mul(row.num_states() as u128))
        .unwrap_or(u128::MAX);
    if size > ENCODE_CAP {
        return Err(Error::OracleCap { size, cap: ENCODE_CAP });
    }
    type Key = (usize, usize, Vec<usize>);
    let start: Key = (0, row.start(), vec![col.start(); cols]);
    let (dfa, _) = crate::automata::explore(
        row.num_symbols(),
        start,
        |(c, q, qs), v| {
            let mut qs = qs.clone();
            qs[*c] = col.next(qs[*c], v);
            let q2 = row.next(*q, v);
            if c + 1 == cols {
                row.is_accepting(q2).then(|| (0, row.start(), qs))
            } else {
                Some((c + 1, q2, qs))
            }
        },
        |(c, _, qs)| *c == 0 && qs.iter().all(|&s| col.is_accepting(s)),
        usize::MAX,
    )?;
    Ok(dfa)
}

/// Domains left by Regular filtering on the encoding of a model whose columns
/// all carry the same automaton. `None` when filtering fails.
pub fn encoded_dc(model: &MatrixModel) -> Result<Option<Vec<Vec<Symbol>>>> {
    let col = match model.columns.first() {
        Some(ColumnSpec::Dfa(d)) if model.columns.iter().all(|c| c == &model.columns[0]) => d,
        _ => return Err(Error::invalid("encoding needs the same column automaton on every column")),
    };
    if model.row_automaton.num_resources() > 0 {
        return Err(Error::invalid("encoding needs an unweighted row automaton"));
    }
    let dfa = encode_matrix_dfa(model.row_automaton.dfa(), col, model.rows, model.cols)?;
    let mut store = Store::new();
    let cells: Vec<VarId> = model
        .domains
        .iter()
        .map(|d| store.new_var_values(&d.iter().map(|&v| v as i64).collect::<Vec<_>>()))
        .collect();
    store.post(Box::new(CostRegular::regular(cells.clone(), dfa)));
    if !store.propagate() {
        return Ok(None);
    }
    Ok(Some(
        cells
            .iter()
            .map(|&c| store.domain(c).iter().map(|v| v as Symbol).collect())
            .collect(),
    ))
}
