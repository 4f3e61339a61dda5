//! Nurse rostering: instances, file formats and the benchmark runner.
//!
//! A roster assigns one of `S` shifts to each of `N` nurses on each of `D`
//! days. Shift `S` (symbol `S - 1`) is the day off; the others are working
//! shifts. Days carry coverage lower bounds per shift and every nurse's row
//! obeys the same rules on occurrences and stretch lengths.

mod bench;
mod format;
mod nsplib;

pub use bench::{bench, run_model, write_tsv, RunReport, Status, Summary, SummaryCell, SummaryRow, TSV_HEADER};
pub use format::{emit_canonical, emit_model, emit_roster, parse_canonical, Instance};
pub use nsplib::parse_nsp;

use crate::automata::builders::{build_gcc_weights, stretch_rule_dfa};
use crate::automata::{Dfa, Symbol, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{ColumnSpec, MatrixModel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RosterInstance {
    pub nurses: usize,
    pub days: usize,
    /// Number of shifts including the day off.
    pub shifts: usize,
    /// `coverage[d][s]`: least number of nurses on shift `s` on day `d`.
    pub coverage: Vec<Vec<i64>>,
    /// Occurrences of each shift in a row.
    pub shift_occ: Vec<Interval>,
    /// Occurrences of working shifts in a row.
    pub work_occ: Interval,
    /// Length of every stretch of each shift.
    pub shift_stretch: Vec<Interval>,
    /// Length of every stretch of working shifts.
    pub work_stretch: Interval,
}

impl RosterInstance {
    /// Instance without rules: occurrences in `[0, D]` and stretches in
    /// `[1, D]`.
    pub fn unconstrained(nurses: usize, days: usize, shifts: usize) -> Self {
        let d = days as i64;
        RosterInstance {
            nurses,
            days,
            shifts,
            coverage: vec![vec![0; shifts]; days],
            shift_occ: vec![Interval::new(0, d); shifts],
            work_occ: Interval::new(0, d),
            shift_stretch: vec![Interval::new(1, d); shifts],
            work_stretch: Interval::new(1, d),
        }
    }

    /// Shape checks; bound values are not judged here.
    pub fn validate(&self) -> Result<()> {
        if self.nurses == 0 || self.days == 0 || self.shifts < 2 {
            return Err(Error::invalid("roster needs nurses, days and at least two shifts"));
        }
        if self.coverage.len() != self.days || self.coverage.iter().any(|c| c.len() != self.shifts) {
            return Err(Error::invalid("coverage must have one line per day and one entry per shift"));
        }
        if self.shift_occ.len() != self.shifts || self.shift_stretch.len() != self.shifts {
            return Err(Error::invalid("one occurrence and one stretch rule per shift required"));
        }
        Ok(())
    }

    /// Reason why the instance cannot have a solution, found by counting
    /// alone.
    pub fn static_infeasibility(&self) -> Option<String> {
        let n = self.nurses as i64;
        for (d, cov) in self.coverage.iter().enumerate() {
            let total: i64 = cov.iter().sum();
            if total > n {
                return Some(format!("day {}: coverage needs {total} nurses, only {n} available", d + 1));
            }
        }
        let empty = self
            .shift_occ
            .iter()
            .chain(&self.shift_stretch)
            .chain([&self.work_occ, &self.work_stretch])
            .any(Interval::is_empty);
        empty.then(|| "a rule has an empty interval".to_string())
    }

    pub fn off_shift(&self) -> Symbol {
        self.shifts - 1
    }

    pub fn working(&self) -> Vec<Symbol> {
        (0..self.shifts - 1).collect()
    }
}

/// Row automaton of a roster: the product of the stretch rules that
/// actually restrict a row of length `D`, weighted by one resource per
/// restricting occurrence rule.
pub fn roster_row_automaton(inst: &RosterInstance) -> Result<WeightedDfa> {
    let (s, d) = (inst.shifts, inst.days as i64);
    let mut dfa = Dfa::universal(s);
    let mut stretch_rules: Vec<(Vec<Symbol>, Interval)> =
        inst.shift_stretch.iter().enumerate().map(|(v, &b)| (vec![v], b)).collect();
    stretch_rules.push((inst.working(), inst.work_stretch));
    for (set, b) in stretch_rules {
        if b.lo <= 1 && b.hi >= d {
            continue;
        }
        if b.is_empty() || b.hi < 1 {
            return Ok(WeightedDfa::unweighted(Dfa::empty(s)));
        }
        let rule = stretch_rule_dfa(s, &set, b.lo.max(1) as usize, b.hi.min(d) as usize)?;
        dfa = dfa.product(&rule)?.0.minimize();
    }
    let mut counted = Vec::new();
    let mut bounds = Vec::new();
    let occ_rules = inst
        .shift_occ
        .iter()
        .enumerate()
        .map(|(v, &b)| (vec![v], b))
        .chain([(inst.working(), inst.work_occ)]);
    for (set, b) in occ_rules {
        if b.lo <= 0 && b.hi >= d {
            continue;
        }
        counted.push(set);
        bounds.push(b);
    }
    let mut w = WeightedDfa::unweighted(dfa);
    if !counted.is_empty() {
        w = w.product(&build_gcc_weights(s, &counted, 0)?)?;
        for (r, b) in bounds.into_iter().enumerate() {
            w.set_bound(r, b);
        }
    }
    Ok(w.minimize())
}

/// `N x D` matrix model over the shifts (symbols `0..S`, labels `1..=S`)
/// with coverage lower bounds as column Gcc. Nurses are interchangeable.
pub fn roster_to_model(inst: &RosterInstance) -> Result<MatrixModel> {
    inst.validate()?;
    let labels = (1..=inst.shifts as i64).collect();
    let mut model = MatrixModel::new(inst.nurses, inst.days, labels, roster_row_automaton(inst)?)?;
    let n = inst.nurses as i64;
    for (d, cov) in inst.coverage.iter().enumerate() {
        model.columns[d] = ColumnSpec::Gcc(cov.iter().map(|&c| Interval::new(c.max(0), n)).collect());
    }
    model.symmetric_rows = true;
    Ok(model)
}
