//! Matrix models and their decompositions.
//!
//! A [`MatrixModel`] describes an `R x K` matrix of decision variables over
//! the symbols `0..V` (each with an integer label), one weighted row automaton
//! shared by all rows and one [`ColumnSpec`] per column. [`build`] turns it
//! into a propagation store in one of three [`Mode`]s.

mod build;
pub mod conditions;

use std::fmt;
use std::str::FromStr;

use crate::automata::{Dfa, Symbol, WeightedDfa};
use crate::error::{Error, Result};
use crate::interval::Interval;

pub use build::{build, BuildOptions, Built, PropertyConfig};

/// Constraint on one column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnSpec {
    /// Occurrence interval per symbol.
    Gcc(Vec<Interval>),
    /// Bounds on the sum of the labels in the column.
    Sum(Interval),
    /// The column, read top to bottom, must be accepted.
    Dfa(Dfa),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Row automata, column Gcc and channeling only.
    Decomp,
    /// Adds property automata (one constraint each) and the implied
    /// conditions linking them to the column cardinalities.
    Wa,
    /// Additionally crosses every property automaton with the row automaton.
    Cwa,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Decomp, Mode::Wa, Mode::Cwa];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Decomp => "decomp",
            Mode::Wa => "wa",
            Mode::Cwa => "cwa",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "decomp" => Ok(Mode::Decomp),
            "wa" => Ok(Mode::Wa),
            "cwa" => Ok(Mode::Cwa),
            other => Err(Error::invalid(format!("unknown mode `{other}` (expected decomp, wa or cwa)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModel {
    pub rows: usize,
    pub cols: usize,
    /// Label of every symbol; symbol `v` stands for `labels[v]`.
    pub labels: Vec<i64>,
    /// Allowed symbols per cell, row-major, sorted.
    pub domains: Vec<Vec<Symbol>>,
    pub row_automaton: WeightedDfa,
    pub columns: Vec<ColumnSpec>,
    /// Rows are interchangeable, so lexicographic ordering of rows may be
    /// imposed without losing satisfiability.
    pub symmetric_rows: bool,
}

impl MatrixModel {
    /// Model with full domains and unconstrained columns.
    pub fn new(rows: usize, cols: usize, labels: Vec<i64>, row_automaton: WeightedDfa) -> Result<Self> {
        let nv = labels.len();
        let free = ColumnSpec::Gcc(vec![Interval::new(0, rows as i64); nv]);
        let m = MatrixModel {
            rows,
            cols,
            domains: vec![(0..nv).collect(); rows * cols],
            labels,
            row_automaton,
            columns: vec![free; cols],
            symmetric_rows: false,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn num_values(&self) -> usize {
        self.labels.len()
    }

    pub fn domain(&self, r: usize, k: usize) -> &[Symbol] {
        &self.domains[r * self.cols + k]
    }

    pub fn set_domain(&mut self, r: usize, k: usize, mut values: Vec<Symbol>) {
        values.sort_unstable();
        values.dedup();
        self.domains[r * self.cols + k] = values;
    }

    /// Symbol carrying a label.
    pub fn symbol_of(&self, label: i64) -> Option<Symbol> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.labels.len();
        if self.rows == 0 || self.cols == 0 || nv == 0 {
            return Err(Error::invalid("matrix needs at least one row, column and value"));
        }
        let mut sorted = self.labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != nv {
            return Err(Error::invalid("value labels must be distinct"));
        }
        if self.row_automaton.dfa().num_symbols() != nv {
            return Err(Error::AlphabetMismatch(self.row_automaton.dfa().num_symbols(), nv));
        }
        if self.domains.len() != self.rows * self.cols {
            return Err(Error::invalid("one domain per cell required"));
        }
        if let Some(&v) = self.domains.iter().flatten().find(|&&v| v >= nv) {
            return Err(Error::UnknownSymbol {
                symbol: v as i64,
                alphabet: nv,
            });
        }
        if self.columns.len() != self.cols {
            return Err(Error::invalid("one column spec per column required"));
        }
        for (k, spec) in self.columns.iter().enumerate() {
            match spec {
                ColumnSpec::Gcc(b) if b.len() != nv => {
                    return Err(Error::invalid(format!("column {k}: Gcc needs one interval per value")))
                }
                ColumnSpec::Dfa(d) if d.num_symbols() != nv => {
                    return Err(Error::AlphabetMismatch(d.num_symbols(), nv))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn row(&self, matrix: &[Symbol], r: usize) -> Vec<Symbol> {
        matrix[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, matrix: &[Symbol], k: usize) -> Vec<Symbol> {
        (0..self.rows).map(|r| matrix[r * self.cols + k]).collect()
    }

    /// True if the column satisfies its spec.
    pub fn column_ok(&self, k: usize, column: &[Symbol]) -> bool {
        match &self.columns[k] {
            ColumnSpec::Gcc(bounds) => {
                let mut counts = vec![0i64; self.labels.len()];
                for &v in column {
                    counts[v] += 1;
                }
                counts.iter().zip(bounds).all(|(&c, b)| b.contains(c))
            }
            ColumnSpec::Sum(b) => b.contains(column.iter().map(|&v| self.labels[v]).sum()),
            ColumnSpec::Dfa(d) => d.accepts(column).unwrap_or(false),
        }
    }

    /// Independent check of a full matrix (row-major symbols).
    pub fn check(&self, matrix: &[Symbol]) -> bool {
        if matrix.len() != self.rows * self.cols {
            return false;
        }
        let domains_ok = matrix.iter().zip(&self.domains).all(|(v, d)| d.contains(v));
        domains_ok
            && (0..self.rows).all(|r| self.row_automaton.satisfied_by(&self.row(matrix, r)).unwrap_or(false))
            && (0..self.cols).all(|k| self.column_ok(k, &self.column(matrix, k)))
    }

    /// Matrix of labels, one row per line, for display.
    pub fn format_matrix(&self, matrix: &[Symbol]) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = self.row(matrix, r).iter().map(|&v| self.labels[v].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}
