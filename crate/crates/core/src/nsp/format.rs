//! Canonical instance format.
//!
//! A file holds either a matrix model or a roster. Blank lines and lines
//! starting with `#` are ignored; cells, rows and columns count from 0,
//! days and shifts of a roster from 1.
//!
//! ```text
//! MATRIX <rows> <cols> <values>
//! LABELS <l_0> ... <l_{V-1}>
//! SYMMETRIC_ROWS                      (optional)
//! DOMAIN <r> <k>: <v> <v> ...         (cells without a line are full)
//! ROW_DFA <automaton header>          (automaton block, see automata::text)
//! COL_GCC <k> <v> <lo> <hi>           (bounds not given are [0, rows])
//! COL_SUM <k> <lo> <hi>
//! COL_DFA <k> <automaton header>
//! ```
//!
//! ```text
//! ROSTER <nurses> <days> <shifts>
//! COVER <d> <c_1> ... <c_S>           (one line per day)
//! SHIFT_OCC <s> <lo> <hi>             (rules not given are unconstrained)
//! WORK_OCC <lo> <hi>
//! SHIFT_STRETCH <s> <lo> <hi>
//! WORK_STRETCH <lo> <hi>
//! ```

use std::fmt::Write as _;

use crate::automata::text::{parse_block, parse_num, write_block, LineCursor};
use crate::automata::WeightedDfa;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{ColumnSpec, MatrixModel};
use crate::nsp::RosterInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Matrix(MatrixModel),
    Roster(RosterInstance),
}

impl Instance {
    /// The matrix model, building it first for a roster.
    pub fn to_model(&self) -> Result<MatrixModel> {
        match self {
            Instance::Matrix(m) => Ok(m.clone()),
            Instance::Roster(r) => crate::nsp::roster_to_model(r),
        }
    }
}

pub fn emit_canonical(inst: &Instance) -> String {
    match inst {
        Instance::Matrix(m) => emit_model(m),
        Instance::Roster(r) => emit_roster(r),
    }
}

pub fn emit_model(m: &MatrixModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "MATRIX {} {} {}", m.rows, m.cols, m.num_values());
    let labels: Vec<String> = m.labels.iter().map(i64::to_string).collect();
    let _ = writeln!(out, "LABELS {}", labels.join(" "));
    if m.symmetric_rows {
        out.push_str("SYMMETRIC_ROWS\n");
    }
    let full: Vec<usize> = (0..m.num_values()).collect();
    for (cell, dom) in m.domains.iter().enumerate() {
        if *dom != full {
            let vals: Vec<String> = dom.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "DOMAIN {} {}: {}", cell / m.cols, cell % m.cols, vals.join(" "));
        }
    }
    write_block(&mut out, "ROW_DFA", &m.row_automaton);
    let free = Interval::new(0, m.rows as i64);
    for (k, spec) in m.columns.iter().enumerate() {
        match spec {
            ColumnSpec::Gcc(bounds) => {
                for (v, b) in bounds.iter().enumerate().filter(|(_, b)| **b != free) {
                    let _ = writeln!(out, "COL_GCC {k} {v} {} {}", b.lo, b.hi);
                }
            }
            ColumnSpec::Sum(b) => {
                let _ = writeln!(out, "COL_SUM {k} {} {}", b.lo, b.hi);
            }
            ColumnSpec::Dfa(d) => write_block(&mut out, &format!("COL_DFA {k}"), &WeightedDfa::unweighted(d.clone())),
        }
    }
    out
}

pub fn emit_roster(r: &RosterInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ROSTER {} {} {}", r.nurses, r.days, r.shifts);
    for (d, cov) in r.coverage.iter().enumerate() {
        let cov: Vec<String> = cov.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "COVER {} {}", d + 1, cov.join(" "));
    }
    for (s, b) in r.shift_occ.iter().enumerate() {
        let _ = writeln!(out, "SHIFT_OCC {} {} {}", s + 1, b.lo, b.hi);
    }
    let _ = writeln!(out, "WORK_OCC {} {}", r.work_occ.lo, r.work_occ.hi);
    for (s, b) in r.shift_stretch.iter().enumerate() {
        let _ = writeln!(out, "SHIFT_STRETCH {} {} {}", s + 1, b.lo, b.hi);
    }
    let _ = writeln!(out, "WORK_STRETCH {} {}", r.work_stretch.lo, r.work_stretch.hi);
    out
}

fn expect_len(ln: usize, toks: &[&str], n: usize, usage: &str) -> Result<()> {
    if toks.len() == n {
        Ok(())
    } else {
        Err(Error::parse(ln, format!("expected `{usage}`")))
    }
}

fn interval(ln: usize, lo: &str, hi: &str) -> Result<Interval> {
    Ok(Interval::new(parse_num(ln, lo, "integer")?, parse_num(ln, hi, "integer")?))
}

fn index(ln: usize, tok: &str, bound: usize, what: &str) -> Result<usize> {
    let i: usize = parse_num(ln, tok, what)?;
    if i >= bound {
        return Err(Error::parse(ln, format!("{what} {i} out of range")));
    }
    Ok(i)
}

/// 1-based index in `1..=bound`, returned 0-based.
fn index1(ln: usize, tok: &str, bound: usize, what: &str) -> Result<usize> {
    let i: usize = parse_num(ln, tok, what)?;
    if i == 0 || i > bound {
        return Err(Error::parse(ln, format!("{what} {i} out of range 1..={bound}")));
    }
    Ok(i - 1)
}

pub fn parse_canonical(text: &str) -> Result<Instance> {
    let mut cur = LineCursor::new(text);
    let Some((ln, line)) = cur.next_line() else {
        return Err(Error::MissingSection("MATRIX or ROSTER".into()));
    };
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks[0] {
        "MATRIX" => parse_matrix(&mut cur, ln, &toks).map(Instance::Matrix),
        "ROSTER" => parse_roster(&mut cur, ln, &toks).map(Instance::Roster),
        other => Err(Error::parse(ln, format!("expected MATRIX or ROSTER, found `{other}`"))),
    }
}

fn parse_matrix(cur: &mut LineCursor<'_>, ln: usize, header: &[&str]) -> Result<MatrixModel> {
    expect_len(ln, header, 4, "MATRIX <rows> <cols> <values>")?;
    let rows: usize = parse_num(ln, header[1], "row count")?;
    let cols: usize = parse_num(ln, header[2], "column count")?;
    let nv: usize = parse_num(ln, header[3], "value count")?;
    if rows == 0 || cols == 0 || nv == 0 {
        return Err(Error::parse(ln, "matrix sizes must be positive"));
    }
    let mut labels = None;
    let mut symmetric = false;
    let mut domains: Vec<Vec<usize>> = vec![(0..nv).collect(); rows * cols];
    let mut row_dfa = None;
    let free = Interval::new(0, rows as i64);
    let mut columns = vec![ColumnSpec::Gcc(vec![free; nv]); cols];
    while let Some((ln, line)) = cur.next_line() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "LABELS" => {
                expect_len(ln, &toks, nv + 1, "LABELS <one label per value>")?;
                let ls = toks[1..]
                    .iter()
                    .map(|t| parse_num(ln, t, "label"))
                    .collect::<Result<Vec<i64>>>()?;
                labels = Some(ls);
            }
            "SYMMETRIC_ROWS" => symmetric = true,
            "DOMAIN" => {
                let (head, vals) = line
                    .split_once(':')
                    .ok_or_else(|| Error::parse(ln, "expected `DOMAIN <r> <k>: <values>`"))?;
                let head: Vec<&str> = head.split_whitespace().collect();
                expect_len(ln, &head, 3, "DOMAIN <r> <k>: <values>")?;
                let r = index(ln, head[1], rows, "row")?;
                let k = index(ln, head[2], cols, "column")?;
                let mut dom = vals
                    .split_whitespace()
                    .map(|t| index(ln, t, nv, "value"))
                    .collect::<Result<Vec<usize>>>()?;
                dom.sort_unstable();
                dom.dedup();
                domains[r * cols + k] = dom;
            }
            "ROW_DFA" => row_dfa = Some(parse_block(cur, ln, &toks[1..])?),
            "COL_GCC" => {
                expect_len(ln, &toks, 5, "COL_GCC <k> <v> <lo> <hi>")?;
                let k = index(ln, toks[1], cols, "column")?;
                let v = index(ln, toks[2], nv, "value")?;
                let b = interval(ln, toks[3], toks[4])?;
                match &mut columns[k] {
                    ColumnSpec::Gcc(bounds) => bounds[v] = b,
                    _ => return Err(Error::parse(ln, format!("column {k} already has another constraint"))),
                }
            }
            "COL_SUM" => {
                expect_len(ln, &toks, 4, "COL_SUM <k> <lo> <hi>")?;
                let k = index(ln, toks[1], cols, "column")?;
                columns[k] = ColumnSpec::Sum(interval(ln, toks[2], toks[3])?);
            }
            "COL_DFA" => {
                if toks.len() < 2 {
                    return Err(Error::parse(ln, "expected `COL_DFA <k> <automaton header>`"));
                }
                let k = index(ln, toks[1], cols, "column")?;
                let w = parse_block(cur, ln, &toks[2..])?;
                if w.num_resources() > 0 {
                    return Err(Error::parse(ln, "column automata carry no resources"));
                }
                columns[k] = ColumnSpec::Dfa(w.dfa().clone());
            }
            other => return Err(Error::parse(ln, format!("unknown section `{other}`"))),
        }
    }
    let labels = labels.ok_or_else(|| Error::MissingSection("LABELS".into()))?;
    let row_automaton = row_dfa.ok_or_else(|| Error::MissingSection("ROW_DFA".into()))?;
    let model = MatrixModel {
        rows,
        cols,
        labels,
        domains,
        row_automaton,
        columns,
        symmetric_rows: symmetric,
    };
    model
        .validate()
        .map_err(|e| Error::parse(cur.last_line(), e.to_string()))?;
    Ok(model)
}

fn parse_roster(cur: &mut LineCursor<'_>, ln: usize, header: &[&str]) -> Result<RosterInstance> {
    expect_len(ln, header, 4, "ROSTER <nurses> <days> <shifts>")?;
    let nurses: usize = parse_num(ln, header[1], "nurse count")?;
    let days: usize = parse_num(ln, header[2], "day count")?;
    let shifts: usize = parse_num(ln, header[3], "shift count")?;
    if nurses == 0 || days == 0 || shifts < 2 {
        return Err(Error::parse(ln, "roster needs nurses, days and at least two shifts"));
    }
    let mut inst = RosterInstance::unconstrained(nurses, days, shifts);
    let mut covered = vec![false; days];
    while let Some((ln, line)) = cur.next_line() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "COVER" => {
                expect_len(ln, &toks, shifts + 2, "COVER <day> <one bound per shift>")?;
                let d = index1(ln, toks[1], days, "day")?;
                inst.coverage[d] = toks[2..]
                    .iter()
                    .map(|t| parse_num(ln, t, "coverage"))
                    .collect::<Result<Vec<i64>>>()?;
                covered[d] = true;
            }
            "SHIFT_OCC" | "SHIFT_STRETCH" => {
                expect_len(ln, &toks, 4, "<rule> <shift> <lo> <hi>")?;
                let s = index1(ln, toks[1], shifts, "shift")?;
                let b = interval(ln, toks[2], toks[3])?;
                if toks[0] == "SHIFT_OCC" {
                    inst.shift_occ[s] = b;
                } else {
                    inst.shift_stretch[s] = b;
                }
            }
            "WORK_OCC" | "WORK_STRETCH" => {
                expect_len(ln, &toks, 3, "<rule> <lo> <hi>")?;
                let b = interval(ln, toks[1], toks[2])?;
                if toks[0] == "WORK_OCC" {
                    inst.work_occ = b;
                } else {
                    inst.work_stretch = b;
                }
            }
            other => return Err(Error::parse(ln, format!("unknown section `{other}`"))),
        }
    }
    if let Some(d) = covered.iter().position(|&c| !c) {
        return Err(Error::MissingSection(format!("COVER {}", d + 1)));
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "ROSTER 1 1 2\nCOVER 1 1 0\n";

    #[test]
    fn minimal_roster_parses() {
        let Instance::Roster(r) = parse_canonical(TINY).unwrap() else {
            panic!("expected a roster");
        };
        assert_eq!((r.nurses, r.days, r.shifts), (1, 1, 2));
        assert_eq!(r.coverage, vec![vec![1, 0]]);
    }

    #[test]
    fn truncated_roster_names_the_missing_section() {
        let err = parse_canonical("ROSTER 2 2 2\nCOVER 1 1 0\n").unwrap_err();
        assert_eq!(err, Error::MissingSection("COVER 2".into()));
        let err = parse_canonical("MATRIX 1 1 2\nLABELS 0 1\n").unwrap_err();
        assert_eq!(err, Error::MissingSection("ROW_DFA".into()));
        let err = parse_canonical("MATRIX 1 1 2\nLABELS 0 1\nROW_DFA 1 2 0 0\nACCEPT 0\n").unwrap_err();
        assert_eq!(err, Error::MissingSection("END".into()));
    }

    #[test]
    fn malformed_line_reports_its_number() {
        let err = parse_canonical("ROSTER 1 1 2\n\nCOVER 1 x 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
