//! Constructors for the automata used by the matrix models: string-property
//! extractors (stretch counts, word occurrences, stretch lengths, value
//! counts) and the row rules of the reductions (stretch, sequence, finite
//! word sets).

use crate::automata::counters::{unfold_counters, Counter, CounterDfa, CounterExpr};
use crate::automata::dfa::{explore, Dfa, Symbol};
use crate::automata::weighted::{CostMatrices, ResourceId, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Membership table of a symbol set over `0..num_symbols`.
pub fn membership(set: &[Symbol], num_symbols: usize) -> Result<Vec<bool>> {
    let mut m = vec![false; num_symbols];
    for &v in set {
        if v >= num_symbols {
            return Err(Error::UnknownSymbol {
                symbol: v as i64,
                alphabet: num_symbols,
            });
        }
        m[v] = true;
    }
    Ok(m)
}

fn unbounded_up_to(r: ResourceId) -> Vec<Interval> {
    vec![Interval::unbounded(); r + 1]
}

/// Two-state automaton whose resource `r` counts the maximal stretches of
/// symbols from `set`: entering a stretch costs 1, everything else 0.
pub fn build_stretch_count(set: &[Symbol], num_symbols: usize, r: ResourceId) -> Result<WeightedDfa> {
    let inside = membership(set, num_symbols)?;
    let n_in = inside.iter().filter(|&&b| b).count();
    if n_in == 0 || n_in == num_symbols {
        return Err(Error::invalid("stretch set must be a non-empty proper subset of the alphabet"));
    }
    let dfa = Dfa::from_fn(2, num_symbols, 0, [0, 1], |_, v| usize::from(inside[v]))?;
    let mut costs = CostMatrices::zero(2 * num_symbols, r + 1);
    for v in (0..num_symbols).filter(|&v| inside[v]) {
        costs.set(r, None, v, 1);
    }
    WeightedDfa::new(dfa, costs, unbounded_up_to(r))
}

/// Automaton whose resource `r` is 1 iff positions `k..k+m` of a word of
/// length `n` fall into `pattern[0]..pattern[m-1]`.
///
/// States `0..=k+m` follow the word position; the extra state `k+m+1` absorbs
/// a mismatch. Only the two absorbing states accept, so every word of length
/// at least `k+m` is accepted.
pub fn build_word_occurrence(
    pattern: &[Vec<Symbol>],
    k: usize,
    r: ResourceId,
    n: usize,
    num_symbols: usize,
) -> Result<WeightedDfa> {
    let m = pattern.len();
    if m == 0 {
        return Err(Error::invalid("word pattern must not be empty"));
    }
    if k + m > n {
        return Err(Error::invalid(format!("pattern of length {m} cannot start at {k} in length {n}")));
    }
    let sets = pattern
        .iter()
        .map(|s| membership(s, num_symbols))
        .collect::<Result<Vec<_>>>()?;
    let matched = k + m;
    let reject = k + m + 1;
    let dfa = Dfa::from_fn(k + m + 2, num_symbols, 0, [matched, reject], |q, v| {
        if q < k {
            q + 1
        } else if q < matched {
            if sets[q - k][v] {
                q + 1
            } else {
                reject
            }
        } else {
            q
        }
    })?;
    let mut costs = CostMatrices::zero(dfa.num_states() * num_symbols, r + 1);
    for v in (0..num_symbols).filter(|&v| sets[m - 1][v]) {
        costs.set(r, None, (matched - 1) * num_symbols + v, 1);
    }
    WeightedDfa::new(dfa, costs, unbounded_up_to(r))
}

/// Single automaton carrying every start position of a word pattern at once.
///
/// Resource `first + k` is 1 iff the pattern occurs starting at position `k`,
/// for `0 <= k <= n - m`. The state is the set of pattern prefixes matched by
/// the suffix read so far (at most `2^(m-1)` states); costs are positional.
pub fn build_sliding_word_counter(
    pattern: &[Vec<Symbol>],
    first: ResourceId,
    n: usize,
    num_symbols: usize,
) -> Result<WeightedDfa> {
    let m = pattern.len();
    if m == 0 {
        return Err(Error::invalid("word pattern must not be empty"));
    }
    if m > n {
        return Err(Error::invalid(format!("pattern of length {m} longer than words of length {n}")));
    }
    if m > 32 {
        return Err(Error::invalid("word patterns are limited to 32 letters"));
    }
    let sets = pattern
        .iter()
        .map(|s| membership(s, num_symbols))
        .collect::<Result<Vec<_>>>()?;
    // Bit j-1 set: the last j symbols match pattern[0..j]. Only prefixes
    // shorter than m are remembered.
    let advance = |mask: u32, v: Symbol| -> (u32, bool) {
        let mut next = 0u32;
        let mut full = false;
        for j in 0..m {
            let prev_ok = j == 0 || mask & (1 << (j - 1)) != 0;
            if prev_ok && sets[j][v] {
                if j + 1 == m {
                    full = true;
                } else {
                    next |= 1 << j;
                }
            }
        }
        (next, full)
    };
    let (dfa, keys) = explore(num_symbols, 0u32, |&mask, v| Some(advance(mask, v).0), |_| true, usize::MAX)?;
    let starts = n - m + 1;
    let mut costs = CostMatrices::zero(dfa.num_states() * num_symbols, first + starts);
    for k in 0..starts {
        let position = k + m - 1;
        for (q, &mask) in keys.iter().enumerate() {
            for v in 0..num_symbols {
                if advance(mask, v).1 {
                    costs.set(first + k, Some(position), q * num_symbols + v, 1);
                }
            }
        }
    }
    let mut bounds = unbounded_up_to(first + starts - 1);
    for b in &mut bounds[first..] {
        *b = Interval::new(0, 1);
    }
    WeightedDfa::new(dfa, costs, bounds)
}

/// One-state universal automaton whose resource `first + i` counts the
/// occurrences of symbols from `counted[i]`.
pub fn build_gcc_weights(num_symbols: usize, counted: &[Vec<Symbol>], first: ResourceId) -> Result<WeightedDfa> {
    let dfa = Dfa::universal(num_symbols);
    let mut costs = CostMatrices::zero(num_symbols, first + counted.len());
    for (i, set) in counted.iter().enumerate() {
        let inside = membership(set, num_symbols)?;
        for v in (0..num_symbols).filter(|&v| inside[v]) {
            costs.set(first + i, None, v, 1);
        }
    }
    WeightedDfa::new(dfa, costs, vec![Interval::unbounded(); first + counted.len()])
}

/// Convenience: per-symbol counts, resource `first + v` counts symbol `v`.
pub fn build_symbol_counts(num_symbols: usize, first: ResourceId) -> Result<WeightedDfa> {
    let counted: Vec<Vec<Symbol>> = (0..num_symbols).map(|v| vec![v]).collect();
    build_gcc_weights(num_symbols, &counted, first)
}

/// Annotates `base` with counters tracking the shortest and the longest
/// maximal stretch of `set` over words of length at most `n`.
///
/// Counters: 0 current run (saturating at `n`), 1 shortest completed stretch
/// (`n + 1` when none), 2 shortest stretch including the running one (`n + 1`
/// when none), 3 longest stretch (0 when none). Outputs are counters 2 and 3.
pub fn stretch_length_counters(base: &Dfa, set: &[Symbol], n: usize) -> Result<CounterDfa> {
    let inside = membership(set, base.num_symbols())?;
    let n = n as u32;
    let none = n + 1;
    let range = n + 2;
    let run = Counter::by_symbol(base, range, 0, |v| {
        if inside[v] {
            CounterExpr::inc(0).min(CounterExpr::Const(n))
        } else {
            CounterExpr::Const(0)
        }
    });
    let completed = Counter::by_symbol(base, range, none, |v| {
        if inside[v] {
            CounterExpr::keep(1)
        } else {
            CounterExpr::keep(1).min_non_zero(CounterExpr::keep(0))
        }
    });
    let shortest = Counter::by_symbol(base, range, none, |v| {
        if inside[v] {
            CounterExpr::keep(1).min(CounterExpr::inc(0).min(CounterExpr::Const(n)))
        } else {
            CounterExpr::keep(1).min_non_zero(CounterExpr::keep(0))
        }
    });
    let longest = Counter::by_symbol(base, range, 0, |v| {
        if inside[v] {
            CounterExpr::keep(3).max(CounterExpr::inc(0).min(CounterExpr::Const(n)))
        } else {
            CounterExpr::keep(3)
        }
    });
    CounterDfa::new(base.clone(), vec![run, completed, shortest, longest], vec![2, 3])
}

/// Weighted automaton with resource `r` = shortest stretch of `set` (`n + 1`
/// if none) and `r + 1` = longest stretch (0 if none), for words of length at
/// most `n`.
pub fn build_stretch_lengths(set: &[Symbol], num_symbols: usize, r: ResourceId, n: usize) -> Result<WeightedDfa> {
    let cdfa = stretch_length_counters(&Dfa::universal(num_symbols), set, n)?;
    Ok(unfold_counters(&cdfa)?.with_resource_offset(r))
}

/// Stretch rule: every maximal stretch of `set` has length in `[lo, hi]`.
pub fn stretch_rule_dfa(num_symbols: usize, set: &[Symbol], lo: usize, hi: usize) -> Result<Dfa> {
    if lo == 0 || lo > hi {
        return Err(Error::invalid(format!("invalid stretch length interval [{lo}, {hi}]")));
    }
    let inside = membership(set, num_symbols)?;
    let (dfa, _) = explore(
        num_symbols,
        0usize,
        |&run, v| {
            if inside[v] {
                (run < hi).then_some(run + 1)
            } else {
                (run == 0 || run >= lo).then_some(0)
            }
        },
        |&run| run == 0 || run >= lo,
        usize::MAX,
    )?;
    Ok(dfa)
}

/// Sequence rule: every window of `window` consecutive symbols contains
/// between `lo` and `hi` symbols of `set`.
pub fn sequence_dfa(num_symbols: usize, set: &[Symbol], lo: usize, hi: usize, window: usize) -> Result<Dfa> {
    if window == 0 || window > 20 {
        return Err(Error::invalid("sequence window must be in 1..=20"));
    }
    let inside = membership(set, num_symbols)?;
    // Key: (symbols read, capped at window - 1; membership bits of the last
    // window - 1 symbols, most recent in bit 0).
    let keep = window - 1;
    let mask_keep: u32 = if keep == 0 { 0 } else { (1u32 << keep) - 1 };
    let (dfa, _) = explore(
        num_symbols,
        (0usize, 0u32),
        |&(len, bits), v| {
            let full = (bits << 1) | u32::from(inside[v]);
            if len + 1 >= window {
                let count = (full & ((1u32 << window) - 1)).count_ones() as usize;
                if count < lo || count > hi {
                    return None;
                }
            }
            Some(((len + 1).min(keep), full & mask_keep))
        },
        |_| true,
        usize::MAX,
    )?;
    Ok(dfa)
}

/// Trie automaton accepting exactly the given words.
pub fn word_set_dfa(num_symbols: usize, words: &[Vec<Symbol>]) -> Result<Dfa> {
    for w in words {
        membership(w, num_symbols)?;
    }
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    // A trie node is identified by the prefix it represents.
    let (dfa, _) = explore(
        num_symbols,
        Vec::<Symbol>::new(),
        |prefix, v| {
            let mut next = prefix.clone();
            next.push(v);
            sorted.iter().any(|w| w.starts_with(&next)).then_some(next)
        },
        |prefix| sorted.binary_search(prefix).is_ok(),
        usize::MAX,
    )?;
    Ok(dfa)
}

/// Counts maximal stretches of `set` in `word` directly.
pub fn count_stretches(word: &[Symbol], set: &[Symbol]) -> usize {
    let mut count = 0;
    let mut prev = false;
    for v in word {
        let cur = set.contains(v);
        if cur && !prev {
            count += 1;
        }
        prev = cur;
    }
    count
}

/// Lengths of the maximal stretches of `set` in `word`, in order.
pub fn stretch_lengths(word: &[Symbol], set: &[Symbol]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0;
    for v in word {
        if set.contains(v) {
            run += 1;
        } else if run > 0 {
            out.push(run);
            run = 0;
        }
    }
    if run > 0 {
        out.push(run);
    }
    out
}
