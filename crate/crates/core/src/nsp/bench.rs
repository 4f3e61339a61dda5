use std::fmt::{self, Write as _};
use std::io;

use rayon::prelude::*;

use crate::engine::{solve, Outcome, SearchConfig};
use crate::error::{Error, Result};
use crate::model::{build, BuildOptions, MatrixModel, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
            Status::Timeout => "timeout",
        })
    }
}

/// Outcome of one run of one instance in one mode.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub id: String,
    pub mode: Mode,
    pub status: Status,
    pub seconds: f64,
    pub nodes: u64,
    pub backtracks: u64,
    pub root_failure: bool,
    /// The solution found, row-major symbols (empty unless sat).
    pub solution: Vec<usize>,
}

pub const TSV_HEADER: &str = "id\tmode\tstatus\ttime\tnodes\tbacktracks\troot_failure";

impl RunReport {
    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{:.3}\t{}\t{}\t{}",
            self.id, self.mode, self.status, self.seconds, self.nodes, self.backtracks, self.root_failure
        )
    }
}

/// Builds the model in the requested mode and searches for a first
/// solution. A solution is re-checked against the model before it is
/// reported.
pub fn run_model(id: &str, model: &MatrixModel, opts: &BuildOptions, cfg: &SearchConfig) -> Result<RunReport> {
    let mut built = build(model, opts)?;
    let decision = built.cells.clone();
    let res = solve(&mut built.store, &decision, cfg);
    let (status, solution) = match &res.outcome {
        Outcome::Sat(values) => {
            let matrix = built.matrix(values);
            if !model.check(&matrix) {
                return Err(Error::Construction(format!("{id} ({}): solution fails the re-check", opts.mode)));
            }
            (Status::Sat, matrix)
        }
        Outcome::Unsat => (Status::Unsat, Vec::new()),
        Outcome::Limit => (Status::Timeout, Vec::new()),
    };
    Ok(RunReport {
        id: id.to_string(),
        mode: opts.mode,
        status,
        seconds: res.elapsed.as_secs_f64(),
        nodes: res.stats.nodes,
        backtracks: res.stats.backtracks,
        root_failure: res.root_failure,
        solution,
    })
}

/// Runs every instance in every mode. Instances run in parallel when
/// `parallel` is set; each run is single-threaded, and reports come back in
/// input order (instance-major, then mode order).
pub fn bench(
    instances: &[(String, MatrixModel)],
    modes: &[Mode],
    base: &BuildOptions,
    cfg: &SearchConfig,
    parallel: bool,
) -> Result<Vec<RunReport>> {
    let run = |(id, model): &(String, MatrixModel)| -> Result<Vec<RunReport>> {
        modes
            .iter()
            .map(|&mode| {
                let opts = BuildOptions { mode, ..base.clone() };
                run_model(id, model, &opts, cfg)
            })
            .collect()
    };
    let per_instance: Vec<Result<Vec<RunReport>>> = if parallel {
        instances.par_iter().map(run).collect()
    } else {
        instances.iter().map(run).collect()
    };
    let mut out = Vec::with_capacity(instances.len() * modes.len());
    for r in per_instance {
        out.extend(r?);
    }
    Ok(out)
}

/// Header and one line per report.
pub fn write_tsv<W: io::Write>(mut w: W, reports: &[RunReport]) -> io::Result<()> {
    writeln!(w, "{TSV_HEADER}")?;
    for r in reports {
        writeln!(w, "{}", r.tsv())?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryCell {
    /// Instances this mode decided with the row's status.
    pub decided: usize,
    /// Means over the instances of this status decided by every mode.
    pub mean_time: f64,
    pub mean_backtracks: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub status: Status,
    /// Instances some mode decided with this status.
    pub known: usize,
    /// Instances every mode decided.
    pub common: usize,
    pub cells: Vec<SummaryCell>,
}

/// Per-status table: for every mode the number of decided instances and the
/// mean time and backtracks over the instances that no mode timed out on.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub modes: Vec<Mode>,
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    pub fn new(reports: &[RunReport]) -> Self {
        let mut modes: Vec<Mode> = Vec::new();
        let mut ids: Vec<&str> = Vec::new();
        for r in reports {
            if !modes.contains(&r.mode) {
                modes.push(r.mode);
            }
            if !ids.contains(&r.id.as_str()) {
                ids.push(&r.id);
            }
        }
        let find = |id: &str, mode: Mode| reports.iter().find(|r| r.id == id && r.mode == mode);
        let mut rows = Vec::new();
        for status in [Status::Sat, Status::Unsat] {
            let known: Vec<&str> = ids
                .iter()
                .copied()
                .filter(|id| modes.iter().any(|&m| find(id, m).is_some_and(|r| r.status == status)))
                .collect();
            if known.is_empty() {
                continue;
            }
            let common: Vec<&str> = known
                .iter()
                .copied()
                .filter(|id| modes.iter().all(|&m| find(id, m).is_some_and(|r| r.status == status)))
                .collect();
            let cells = modes
                .iter()
                .map(|&m| {
                    let decided = known.iter().filter(|id| find(id, m).is_some_and(|r| r.status == status)).count();
                    let runs: Vec<&RunReport> = common.iter().filter_map(|id| find(id, m)).collect();
                    let mean = |f: &dyn Fn(&RunReport) -> f64| {
                        if runs.is_empty() {
                            0.0
                        } else {
                            runs.iter().map(|r| f(r)).sum::<f64>() / runs.len() as f64
                        }
                    };
                    SummaryCell {
                        decided,
                        mean_time: mean(&|r| r.seconds),
                        mean_backtracks: mean(&|r| r.backtracks as f64),
                    }
                })
                .collect();
            rows.push(SummaryRow {
                status,
                known: known.len(),
                common: common.len(),
                cells,
            });
        }
        Summary { modes, rows }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Aligned text table with `#Inst`, `Time` and `#Bktk` per mode.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<14}", "");
        for m in &self.modes {
            let _ = write!(out, " | {:^25}", m.to_string());
        }
        out.push('\n');
        let _ = write!(out, "{:<8}{:>6}", "Status", "Known");
        for _ in &self.modes {
            let _ = write!(out, " | {:>6} {:>8} {:>9}", "#Inst", "Time", "#Bktk");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{:<8}{:>6}", row.status.to_string(), row.known);
            for c in &row.cells {
                let _ = write!(out, " | {:>6} {:>8.2} {:>9.1}", c.decided, c.mean_time, c.mean_backtracks);
            }
            out.push('\n');
        }
        out
    }
}
