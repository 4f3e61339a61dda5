use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Index of a state inside a [`Dfa`].
pub type StateId = usize;

/// Internal symbols are the integers `0..num_symbols`. Models with other
/// labels (for instance `-1`) map them through a label table.
pub type Symbol = usize;

/// Complete deterministic finite automaton over the alphabet `0..num_symbols`.
///
/// The transition table is total; rejecting behaviour is expressed through an
/// explicit non-accepting sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    num_states: usize,
    num_symbols: usize,
    delta: Vec<StateId>,
    start: StateId,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a table with one row per state and one column per
    /// symbol.
    pub fn new<I>(num_symbols: usize, table: Vec<Vec<StateId>>, start: StateId, accepting: I) -> Result<Self>
    where
        I: IntoIterator<Item = StateId>,
    {
        let num_states = table.len();
        if num_states == 0 {
            return Err(Error::invalid("a DFA needs at least one state"));
        }
        if num_symbols == 0 {
            return Err(Error::invalid("alphabet must contain at least one symbol"));
        }
        let mut delta = Vec::with_capacity(num_states * num_symbols);
        for (q, row) in table.iter().enumerate() {
            if row.len() != num_symbols {
                return Err(Error::invalid(format!(
                    "state {q} has {} transitions, expected {num_symbols}",
                    row.len()
                )));
            }
            for &t in row {
                if t >= num_states {
                    return Err(Error::invalid(format!("transition target {t} out of range")));
                }
                delta.push(t);
            }
        }
        Self::from_parts(num_states, num_symbols, delta, start, accepting)
    }

    /// Builds a DFA from a transition function.
    pub fn from_fn<I, F>(num_states: usize, num_symbols: usize, start: StateId, accepting: I, f: F) -> Result<Self>
    where
        I: IntoIterator<Item = StateId>,
        F: Fn(StateId, Symbol) -> StateId,
    {
        let table = (0..num_states)
            .map(|q| (0..num_symbols).map(|v| f(q, v)).collect())
            .collect();
        Self::new(num_symbols, table, start, accepting)
    }

    pub(crate) fn from_parts<I>(
        num_states: usize,
        num_symbols: usize,
        delta: Vec<StateId>,
        start: StateId,
        accepting: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = StateId>,
    {
        debug_assert_eq!(delta.len(), num_states * num_symbols);
        if start >= num_states {
            return Err(Error::invalid(format!("start state {start} out of range")));
        }
        let mut acc = vec![false; num_states];
        for q in accepting {
            if q >= num_states {
                return Err(Error::invalid(format!("accepting state {q} out of range")));
            }
            acc[q] = true;
        }
        Ok(Dfa {
            num_states,
            num_symbols,
            delta,
            start,
            accepting: acc,
        })
    }

    /// One-state automaton accepting every word.
    pub fn universal(num_symbols: usize) -> Self {
        Dfa {
            num_states: 1,
            num_symbols,
            delta: vec![0; num_symbols],
            start: 0,
            accepting: vec![true],
        }
    }

    /// One-state automaton accepting nothing.
    pub fn empty(num_symbols: usize) -> Self {
        Dfa {
            num_states: 1,
            num_symbols,
            delta: vec![0; num_symbols],
            start: 0,
            accepting: vec![false],
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    #[inline]
    pub fn next(&self, q: StateId, v: Symbol) -> StateId {
        self.delta[q * self.num_symbols + v]
    }

    #[inline]
    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(q, &a)| a.then_some(q))
    }

    pub(crate) fn check_symbol(&self, v: Symbol) -> Result<()> {
        if v < self.num_symbols {
            Ok(())
        } else {
            Err(Error::UnknownSymbol {
                symbol: v as i64,
                alphabet: self.num_symbols,
            })
        }
    }

    /// State reached after reading `word` from the start state.
    pub fn run(&self, word: &[Symbol]) -> Result<StateId> {
        let mut q = self.start;
        for &v in word {
            self.check_symbol(v)?;
            q = self.next(q, v);
        }
        Ok(q)
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        Ok(self.is_accepting(self.run(word)?))
    }

    /// Cross product restricted to pairs reachable from the start pair.
    ///
    /// Returns the product automaton and, for every product state, the pair
    /// of component states it stands for.
    pub fn product(&self, other: &Dfa) -> Result<(Dfa, Vec<(StateId, StateId)>)> {
        self.product_capped(other, usize::MAX)
    }

    /// [`Dfa::product`] failing with a construction error once more than
    /// `max_states` states are reachable.
    pub fn product_capped(&self, other: &Dfa, max_states: usize) -> Result<(Dfa, Vec<(StateId, StateId)>)> {
        if self.num_symbols != other.num_symbols {
            return Err(Error::AlphabetMismatch(self.num_symbols, other.num_symbols));
        }
        explore(
            self.num_symbols,
            (self.start, other.start),
            |&(a, b), v| Some((self.next(a, v), other.next(b, v))),
            |&(a, b)| self.is_accepting(a) && other.is_accepting(b),
            max_states,
        )
    }

    /// Copy restricted to the states reachable from the start state.
    pub fn prune_unreachable(&self) -> (Dfa, Vec<StateId>) {
        explore(self.num_symbols, self.start, |&q, v| Some(self.next(q, v)), |&q| self.is_accepting(q), usize::MAX)
            .expect("pruning an existing automaton cannot fail")
    }

    /// States from which some accepting state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let mut live = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..self.num_states {
                if !live[q] && (0..self.num_symbols).any(|v| live[self.next(q, v)]) {
                    live[q] = true;
                    changed = true;
                }
            }
        }
        live
    }

    /// Minimal equivalent automaton (reachable part, merged states).
    pub fn minimize(&self) -> Dfa {
        crate::automata::WeightedDfa::unweighted(self.clone()).minimize().dfa().clone()
    }

    /// Words of length `len` accepted by the automaton, in lexicographic
    /// order. Intended for tests and oracles on tiny automata.
    pub fn words_of_length(&self, len: usize) -> Vec<Vec<Symbol>> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(len);
        self.collect_words(self.start, len, &mut word, &mut out);
        out
    }

    fn collect_words(&self, q: StateId, len: usize, word: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) {
        if word.len() == len {
            if self.is_accepting(q) {
                out.push(word.clone());
            }
            return;
        }
        for v in 0..self.num_symbols {
            word.push(v);
            self.collect_words(self.next(q, v), len, word, out);
            word.pop();
        }
    }
}

/// Breadth-first construction of a DFA over an implicit state space.
///
/// `step` returns `None` for a transition into an implicit rejecting sink; the
/// sink is materialised only if some transition needs it. The returned vector
/// maps each new state id to its key.
pub(crate) fn explore<K, S, A>(
    num_symbols: usize,
    start: K,
    mut step: S,
    mut accept: A,
    max_states: usize,
) -> Result<(Dfa, Vec<K>)>
where
    K: Clone + Eq + std::hash::Hash,
    S: FnMut(&K, Symbol) -> Option<K>,
    A: FnMut(&K) -> bool,
{
    let mut ids: HashMap<K, StateId> = HashMap::new();
    let mut keys: Vec<K> = Vec::new();
    let mut queue = VecDeque::new();
    let mut delta: Vec<Option<StateId>> = Vec::new();
    ids.insert(start.clone(), 0);
    keys.push(start);
    queue.push_back(0usize);
    while let Some(q) = queue.pop_front() {
        let key = keys[q].clone();
        for v in 0..num_symbols {
            let target = match step(&key, v) {
                Some(next) => Some(match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len();
                        if id >= max_states {
                            return Err(Error::Construction(format!(
                                "state limit of {max_states} exceeded"
                            )));
                        }
                        ids.insert(next.clone(), id);
                        keys.push(next);
                        queue.push_back(id);
                        id
                    }
                }),
                None => None,
            };
            delta.push(target);
        }
    }
    let mut num_states = keys.len();
    let needs_sink = delta.iter().any(Option::is_none);
    let sink = num_states;
    if needs_sink {
        num_states += 1;
    }
    let mut flat: Vec<StateId> = delta.into_iter().map(|t| t.unwrap_or(sink)).collect();
    if needs_sink {
        flat.extend(std::iter::repeat_n(sink, num_symbols));
    }
    let accepting: Vec<StateId> = keys
        .iter()
        .enumerate()
        .filter_map(|(q, k)| accept(k).then_some(q))
        .collect();
    let dfa = Dfa::from_parts(num_states, num_symbols, flat, 0, accepting)?;
    Ok((dfa, keys))
}
