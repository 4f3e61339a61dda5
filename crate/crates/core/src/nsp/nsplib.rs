//! Best-effort reader for NSPLib-style instance and case files.
//!
//! Instance file: a header `N D S`, then `D` lines of `S` coverage lower
//! bounds. Whatever follows (preference blocks) is ignored.
//!
//! Case file (layout of our own choosing):
//!
//! ```text
//! <D> <S>
//! <working occurrences lo> <hi>
//! <working stretch lo> <hi>
//! <stretch lo> <stretch hi> <occurrences lo> <occurrences hi>   (S lines)
//! ```

use crate::automata::text::{parse_num, LineCursor};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::nsp::RosterInstance;

fn numbers(ln: usize, line: &str) -> Result<Vec<i64>> {
    line.split_whitespace().map(|t| parse_num(ln, t, "integer")).collect()
}

fn take_line(cur: &mut LineCursor<'_>, n: usize, what: &str) -> Result<(usize, Vec<i64>)> {
    let (ln, line) = cur.next_line().ok_or_else(|| Error::MissingSection(what.to_string()))?;
    let nums = numbers(ln, line)?;
    if nums.len() != n {
        return Err(Error::parse(ln, format!("{what}: expected {n} integers, found {}", nums.len())));
    }
    Ok((ln, nums))
}

fn size(ln: usize, x: i64, what: &str) -> Result<usize> {
    usize::try_from(x)
        .ok()
        .filter(|&x| x > 0)
        .ok_or_else(|| Error::parse(ln, format!("{what} must be positive")))
}

/// Reads an instance file and its case file into a roster. Preference data
/// is discarded.
pub fn parse_nsp(instance: &str, case: &str) -> Result<RosterInstance> {
    let mut cur = LineCursor::new(instance);
    let (ln, head) = take_line(&mut cur, 3, "header")?;
    let nurses = size(ln, head[0], "nurse count")?;
    let days = size(ln, head[1], "day count")?;
    let shifts = size(ln, head[2], "shift count")?;
    if shifts < 2 {
        return Err(Error::parse(ln, "at least two shifts required"));
    }
    let mut inst = RosterInstance::unconstrained(nurses, days, shifts);
    for d in 0..days {
        let (_, cov) = take_line(&mut cur, shifts, &format!("coverage of day {}", d + 1))?;
        inst.coverage[d] = cov;
    }
    if cur.peek().is_some() {
        log::warn!("ignoring {} trailing lines of preference data", instance_tail(&mut cur));
    }

    let mut cur = LineCursor::new(case);
    let (ln, head) = take_line(&mut cur, 2, "case header")?;
    if head[0] != days as i64 || head[1] != shifts as i64 {
        return Err(Error::parse(
            ln,
            format!("case file is for {} days and {} shifts, instance has {days} and {shifts}", head[0], head[1]),
        ));
    }
    let (_, occ) = take_line(&mut cur, 2, "working occurrences")?;
    inst.work_occ = Interval::new(occ[0], occ[1]);
    let (_, st) = take_line(&mut cur, 2, "working stretch")?;
    inst.work_stretch = Interval::new(st[0], st[1]);
    for s in 0..shifts {
        let (_, rule) = take_line(&mut cur, 4, &format!("rules of shift {}", s + 1))?;
        inst.shift_stretch[s] = Interval::new(rule[0], rule[1]);
        inst.shift_occ[s] = Interval::new(rule[2], rule[3]);
    }
    if cur.peek().is_some() {
        log::warn!("ignoring trailing data in the case file");
    }
    Ok(inst)
}

fn instance_tail(cur: &mut LineCursor<'_>) -> usize {
    let mut n = 0;
    while cur.next_line().is_some() {
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    const CASE: &str = "2 3\n0 2\n1 2\n1 2 0 2\n1 2 0 2\n1 2 0 2\n";

    #[test]
    fn header_fixes_the_shape() {
        let inst = parse_nsp("25 7 4\n", "").unwrap_err();
        assert!(matches!(inst, Error::MissingSection(_)));
        let text = format!("25 7 4\n{}", "1 1 1 0\n".repeat(7));
        let case = format!("7 4\n3 5\n2 4\n{}", "1 3 0 7\n".repeat(4));
        let inst = parse_nsp(&text, &case).unwrap();
        assert_eq!((inst.nurses, inst.days, inst.shifts), (25, 7, 4));
        assert_eq!(inst.work_stretch, Interval::new(2, 4));
    }

    #[test]
    fn coverage_line_count_must_match() {
        assert!(parse_nsp("2 2 3\n1 0 0\n", CASE).is_err());
        assert!(parse_nsp("2 2 3\n1 0 0\n1 0\n", CASE).is_err());
    }

    #[test]
    fn preference_block_is_ignored() {
        let text = "2 2 3\n1 0 0\n0 1 0\n\n1 2 3 4 5 6\n6 5 4 3 2 1\n";
        let inst = parse_nsp(text, CASE).unwrap();
        assert_eq!(inst.coverage, vec![vec![1, 0, 0], vec![0, 1, 0]]);
    }
}
