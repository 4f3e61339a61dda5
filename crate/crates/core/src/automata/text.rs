//! Line-oriented text form of weighted automata.
//!
//! ```text
//! DFA <states> <symbols> <start> <resources> [positional <horizon>]
//! ACCEPT <q> <q> ...
//! BOUND <r> <lo> <hi>
//! <q> <v> <q'> [<r>:<cost> | <r>@<i>:<cost>]*
//! END
//! ```
//!
//! Every transition of the total table appears on its own line. Costs that
//! are zero are omitted; `r@i:c` is the cost of resource `r` at word position
//! `i`. `BOUND` lines are omitted for unbounded resources. Blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::automata::dfa::Dfa;
use crate::automata::weighted::{CostMatrices, ResourceCosts, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Cursor over the meaningful lines of a text, with 1-based line numbers.
pub(crate) struct LineCursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> LineCursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        LineCursor { lines, pos: 0 }
    }

    pub(crate) fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub(crate) fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        if l.is_some() {
            self.pos += 1;
        }
        l
    }

    /// Line number to blame when the text ends unexpectedly.
    pub(crate) fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

/// Appends the block for `w`, opening with `header` followed by the sizes.
pub(crate) fn write_block(out: &mut String, header: &str, w: &WeightedDfa) {
    let dfa = w.dfa();
    let nsym = dfa.num_symbols();
    let horizon = w
        .costs()
        .resources()
        .iter()
        .map(|c| match c {
            ResourceCosts::Positional(l) => l.len(),
            _ => 0,
        })
        .max()
        .unwrap_or(0);
    let _ = write!(out, "{header} {} {nsym} {} {}", dfa.num_states(), dfa.start(), w.num_resources());
    if w.costs().is_positional() {
        let _ = write!(out, " positional {horizon}");
    }
    out.push('\n');
    out.push_str("ACCEPT");
    for q in dfa.accepting_states() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    for (r, b) in w.bounds().iter().enumerate() {
        if *b != Interval::unbounded() {
            let _ = writeln!(out, "BOUND {r} {} {}", b.lo, b.hi);
        }
    }
    for q in 0..dfa.num_states() {
        for v in 0..nsym {
            let t = q * nsym + v;
            let _ = write!(out, "{q} {v} {}", dfa.next(q, v));
            for (r, costs) in w.costs().resources().iter().enumerate() {
                match costs {
                    ResourceCosts::Zero => {}
                    ResourceCosts::Fixed(c) => {
                        if c[t] != 0 {
                            let _ = write!(out, " {r}:{}", c[t]);
                        }
                    }
                    ResourceCosts::Positional(layers) => {
                        for (i, c) in layers.iter().enumerate() {
                            if c[t] != 0 {
                                let _ = write!(out, " {r}@{i}:{}", c[t]);
                            }
                        }
                    }
                }
            }
            out.push('\n');
        }
    }
    out.push_str("END\n");
}

/// Parses a block whose header line has already been split off; `fields`
/// are the header tokens after the keyword (and after any caller-specific
/// tokens).
pub(crate) fn parse_block(cur: &mut LineCursor<'_>, header_line: usize, fields: &[&str]) -> Result<WeightedDfa> {
    if fields.len() != 4 && !(fields.len() == 6 && fields[4] == "positional") {
        return Err(Error::parse(
            header_line,
            "automaton header needs <states> <symbols> <start> <resources> [positional <horizon>]",
        ));
    }
    let states: usize = parse_num(header_line, fields[0], "state count")?;
    let nsym: usize = parse_num(header_line, fields[1], "symbol count")?;
    let start: usize = parse_num(header_line, fields[2], "start state")?;
    let nres: usize = parse_num(header_line, fields[3], "resource count")?;
    let horizon: Option<usize> = if fields.len() == 6 {
        Some(parse_num(header_line, fields[5], "horizon")?)
    } else {
        None
    };
    if states == 0 || nsym == 0 {
        return Err(Error::parse(header_line, "automaton needs at least one state and one symbol"));
    }
    let transitions = states * nsym;
    let mut delta: Vec<Option<usize>> = vec![None; transitions];
    let mut accepting = Vec::new();
    let mut bounds = vec![Interval::unbounded(); nres];
    let mut fixed: Vec<Option<Vec<i64>>> = vec![None; nres];
    let mut positional: Vec<Option<Vec<Vec<i64>>>> = vec![None; nres];
    loop {
        let Some((ln, line)) = cur.next_line() else {
            return Err(Error::MissingSection("END".into()));
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "END" => break,
            "ACCEPT" => {
                for t in &toks[1..] {
                    let q: usize = parse_num(ln, t, "state")?;
                    if q >= states {
                        return Err(Error::parse(ln, format!("accepting state {q} out of range")));
                    }
                    accepting.push(q);
                }
            }
            "BOUND" => {
                if toks.len() != 4 {
                    return Err(Error::parse(ln, "BOUND needs <r> <lo> <hi>"));
                }
                let r: usize = parse_num(ln, toks[1], "resource")?;
                if r >= nres {
                    return Err(Error::parse(ln, format!("resource {r} out of range")));
                }
                bounds[r] = Interval::new(parse_num(ln, toks[2], "integer")?, parse_num(ln, toks[3], "integer")?);
            }
            _ => {
                if toks.len() < 3 {
                    return Err(Error::parse(ln, "transition needs <q> <v> <q'>"));
                }
                let q: usize = parse_num(ln, toks[0], "state")?;
                let v: usize = parse_num(ln, toks[1], "symbol")?;
                let target: usize = parse_num(ln, toks[2], "state")?;
                if q >= states || target >= states || v >= nsym {
                    return Err(Error::parse(ln, "transition out of range"));
                }
                let t = q * nsym + v;
                if delta[t].replace(target).is_some() {
                    return Err(Error::parse(ln, format!("duplicate transition for state {q} symbol {v}")));
                }
                for tok in &toks[3..] {
                    let (lhs, cost) = tok
                        .split_once(':')
                        .ok_or_else(|| Error::parse(ln, format!("expected r:cost, found `{tok}`")))?;
                    let cost: i64 = parse_num(ln, cost, "cost")?;
                    if let Some((r, i)) = lhs.split_once('@') {
                        let r: usize = parse_num(ln, r, "resource")?;
                        let i: usize = parse_num(ln, i, "position")?;
                        let h = horizon.ok_or_else(|| Error::parse(ln, "positional cost in a non-positional automaton"))?;
                        if r >= nres || i >= h {
                            return Err(Error::parse(ln, "positional cost out of range"));
                        }
                        if fixed[r].is_some() {
                            return Err(Error::parse(ln, format!("resource {r} mixes fixed and positional costs")));
                        }
                        positional[r].get_or_insert_with(|| vec![vec![0; transitions]; h])[i][t] = cost;
                    } else {
                        let r: usize = parse_num(ln, lhs, "resource")?;
                        if r >= nres {
                            return Err(Error::parse(ln, format!("resource {r} out of range")));
                        }
                        if positional[r].is_some() {
                            return Err(Error::parse(ln, format!("resource {r} mixes fixed and positional costs")));
                        }
                        fixed[r].get_or_insert_with(|| vec![0; transitions])[t] = cost;
                    }
                }
            }
        }
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(t, d)| {
            d.ok_or_else(|| {
                Error::parse(header_line, format!("missing transition for state {} symbol {}", t / nsym, t % nsym))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dfa = Dfa::from_parts(states, nsym, delta, start, accepting)?;
    let resources = fixed
        .into_iter()
        .zip(positional)
        .map(|(f, p)| match (f, p) {
            (Some(c), _) => ResourceCosts::Fixed(c),
            (None, Some(l)) => ResourceCosts::Positional(l),
            (None, None) => ResourceCosts::Zero,
        })
        .collect();
    WeightedDfa::new(dfa, CostMatrices::from_resources(transitions, resources)?, bounds)
}

/// Text dump of a weighted automaton.
pub fn dump(w: &WeightedDfa) -> String {
    let mut out = String::new();
    write_block(&mut out, "DFA", w);
    out
}

/// Parses the output of [`dump`].
pub fn parse(text: &str) -> Result<WeightedDfa> {
    let mut cur = LineCursor::new(text);
    let (ln, header) = cur.next_line().ok_or_else(|| Error::MissingSection("DFA".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks[0] != "DFA" {
        return Err(Error::parse(ln, format!("expected DFA header, found `{}`", toks[0])));
    }
    parse_block(&mut cur, ln, &toks[1..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::builders::{build_sliding_word_counter, build_stretch_count};

    #[test]
    fn round_trip_fixed_costs() {
        let w = build_stretch_count(&[1], 3, 0).unwrap().with_bound(0, Interval::new(0, 2));
        let text = dump(&w);
        assert_eq!(parse(&text).unwrap(), w);
    }

    #[test]
    fn round_trip_positional_costs() {
        let w = build_sliding_word_counter(&[vec![1], vec![1]], 0, 4, 2).unwrap();
        let back = parse(&dump(&w)).unwrap();
        assert_eq!(dump(&back), dump(&w));
        for word in [[1, 1, 0, 1], [1, 1, 1, 1], [0, 1, 1, 0]] {
            assert_eq!(back.run(&word).unwrap(), w.run(&word).unwrap());
        }
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("DFA 1 2 0 0\nACCEPT 0\n0 0 0\n0 x 0\nEND\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(matches!(parse("DFA 1 1 0 0\nACCEPT 0\n0 0 0\n"), Err(Error::MissingSection(_))));
        assert!(parse("DFA 1 2 0 0\nACCEPT 0\n0 0 0\nEND\n").is_err());
    }
}
