use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automata::builders::build_gcc_weights;
use crate::automata::{Dfa, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{ColumnSpec, MatrixModel};

#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    pub rows: usize,
    pub cols: usize,
    pub values: usize,
    /// States of the row automaton.
    pub states: usize,
    /// Probability in `[0, 1]` that a column bound (or cell domain) is
    /// restricted; 0 leaves every column free.
    pub tightness: f64,
    /// Add a resource counting symbol 0 per row, with random bounds.
    pub weighted: bool,
    /// Also shrink cell domains at random (with probability `tightness`).
    pub random_domains: bool,
    pub seed: u64,
}

impl RandomParams {
    pub fn new(rows: usize, cols: usize, values: usize, states: usize, tightness: f64, seed: u64) -> Self {
        RandomParams {
            rows,
            cols,
            values,
            states,
            tightness,
            weighted: false,
            random_domains: false,
            seed,
        }
    }
}

/// Random DFA in which every state is reachable from the start. At least one
/// state accepts.
pub fn random_dfa<R: Rng>(rng: &mut R, states: usize, symbols: usize, accept_prob: f64) -> Result<Dfa> {
    if states == 0 || symbols == 0 {
        return Err(Error::invalid("random automaton needs states and symbols"));
    }
    let mut table: Vec<Vec<usize>> = (0..states)
        .map(|_| (0..symbols).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    // Spanning tree: state i is entered from some earlier state.
    for q in 1..states {
        let from = rng.gen_range(0..q);
        let v = rng.gen_range(0..symbols);
        table[from][v] = q;
    }
    let mut accepting: Vec<usize> = (0..states).filter(|_| rng.gen_bool(accept_prob)).collect();
    if accepting.is_empty() {
        accepting.push(rng.gen_range(0..states));
    }
    Dfa::new(symbols, table, 0, accepting)
}

fn random_interval<R: Rng>(rng: &mut R, max: i64) -> Interval {
    let a = rng.gen_range(0..=max);
    let b = rng.gen_range(0..=max);
    Interval::new(a.min(b), a.max(b))
}

/// Seeded random RegularGcc model with a connected row automaton and random
/// column Gcc intervals. Labels are `0..values`.
pub fn gen_random(p: &RandomParams) -> Result<MatrixModel> {
    if p.rows == 0 || p.cols == 0 || p.values == 0 || p.states == 0 {
        return Err(Error::invalid("random model parameters must be positive"));
    }
    if !(0.0..=1.0).contains(&p.tightness) {
        return Err(Error::invalid("tightness must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let dfa = random_dfa(&mut rng, p.states, p.values, 0.5)?;
    let row = if p.weighted {
        let counts = build_gcc_weights(p.values, &[vec![0]], 0)?;
        let bound = random_interval(&mut rng, p.cols as i64);
        WeightedDfa::unweighted(dfa).product(&counts)?.with_bound(0, bound)
    } else {
        WeightedDfa::unweighted(dfa)
    };
    let labels = (0..p.values as i64).collect();
    let mut model = MatrixModel::new(p.rows, p.cols, labels, row)?;
    let r = p.rows as i64;
    for k in 0..p.cols {
        let bounds = (0..p.values)
            .map(|_| {
                if rng.gen_bool(p.tightness) {
                    random_interval(&mut rng, r)
                } else {
                    Interval::new(0, r)
                }
            })
            .collect();
        model.columns[k] = ColumnSpec::Gcc(bounds);
    }
    if p.random_domains {
        for cell in 0..p.rows * p.cols {
            if rng.gen_bool(p.tightness) {
                let keep: Vec<usize> = (0..p.values).filter(|_| rng.gen_bool(0.6)).collect();
                let dom = if keep.is_empty() { vec![rng.gen_range(0..p.values)] } else { keep };
                model.set_domain(cell / p.cols, cell % p.cols, dom);
            }
        }
    }
    Ok(model)
}

/// Seeded random model whose rows and columns are all constrained by
/// automata: `row_states` states for the shared row automaton and
/// `col_states` for the shared column automaton.
pub fn gen_random_regular2(
    rows: usize,
    cols: usize,
    values: usize,
    row_states: usize,
    col_states: usize,
    seed: u64,
) -> Result<MatrixModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let row = random_dfa(&mut rng, row_states, values, 0.6)?;
    let col = random_dfa(&mut rng, col_states, values, 0.6)?;
    let labels = (0..values as i64).collect();
    let mut model = MatrixModel::new(rows, cols, labels, WeightedDfa::unweighted(row))?;
    model.columns = vec![ColumnSpec::Dfa(col); cols];
    Ok(model)
}
