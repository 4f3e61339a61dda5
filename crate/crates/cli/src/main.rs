use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use regulargcc::engine::SearchConfig;
use regulargcc::generators::{
    gen_3dm_bc, gen_3dm_dc, gen_3sat, gen_exact_cover, gen_hitting_set, gen_random, gen_roster, Cnf, Hypergraph,
    HittingVariant, Matching3d, RandomParams,
};
use regulargcc::model::{BuildOptions, MatrixModel, Mode};
use regulargcc::nsp::{
    bench, emit_canonical, parse_canonical, parse_nsp, run_model, write_tsv, Instance, Status, Summary,
};
use regulargcc::oracle::{brute_dc_from, brute_solve_capped};

#[derive(Parser)]
#[command(name = "rgcc", version, about = "RegularGcc matrix models: solving, generation, benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance (canonical file, or NSP instance file with --case).
    Solve(SolveArgs),
    /// Generate an instance in the canonical format.
    Gen {
        /// Output file (stdout if absent).
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run every instance of a directory in several modes.
    Bench(BenchArgs),
    /// Enumerate all solutions by brute force (tiny instances only).
    Oracle {
        file: PathBuf,
        /// Refuse when the number of row-word combinations exceeds this.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u128,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Decomp,
    Wa,
    Cwa,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Decomp => Mode::Decomp,
            ModeArg::Wa => Mode::Wa,
            ModeArg::Cwa => Mode::Cwa,
        }
    }
}

#[derive(Args)]
struct ModelFlags {
    /// Relate word occurrences to column bounds only through their totals.
    #[arg(long)]
    aggregate_words: bool,
    /// Do not order interchangeable rows lexicographically.
    #[arg(long)]
    no_lex: bool,
    /// Time limit per run in seconds.
    #[arg(long, default_value_t = 180.0)]
    time_limit: f64,
}

impl ModelFlags {
    fn options(&self, mode: Mode) -> BuildOptions {
        BuildOptions {
            aggregate_words: self.aggregate_words,
            lex: !self.no_lex,
            ..BuildOptions::new(mode)
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    /// Case file; makes FILE an NSP instance file.
    #[arg(long)]
    case: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "cwa")]
    mode: ModeArg,
    #[command(flatten)]
    flags: ModelFlags,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory holding `*.rgcc` files (and `*.nsp` files when --case is given).
    dir: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "decomp,wa,cwa")]
    modes: Vec<ModeArg>,
    /// Case file applied to every `*.nsp` instance file.
    #[arg(long)]
    case: Option<PathBuf>,
    /// Run instances one after another instead of in parallel.
    #[arg(long)]
    sequential: bool,
    /// Write the per-run report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    flags: ModelFlags,
}

#[derive(Subcommand)]
enum GenKind {
    /// From a CNF: clauses separated by `,`, literals by spaces (e.g. "1 2 -3,-1").
    #[command(name = "3sat")]
    ThreeSat {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: String,
    },
    /// Sets over 1..=universe separated by `;` (e.g. "1 2;1").
    Exactcover {
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        sets: String,
    },
    /// Triples over 0..q separated by `;` (e.g. "0 0 0;1 1 1").
    #[command(name = "3dm-dc")]
    ThreeDmDc {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        triples: String,
    },
    /// Interval-domain variant of 3dm-dc.
    #[command(name = "3dm-bc")]
    ThreeDmBc {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        triples: String,
    },
    /// Edges over vertices 0..vertices separated by `;` (e.g. "0 1;1 2").
    Hitting {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "gcc")]
        variant: VariantArg,
    },
    /// Seeded random model.
    Random {
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long, default_value_t = 3)]
        values: usize,
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long, default_value_t = 0.3)]
        tightness: f64,
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded toy roster.
    Roster {
        #[arg(long, default_value_t = 5)]
        nurses: usize,
        #[arg(long, default_value_t = 7)]
        days: usize,
        #[arg(long, default_value_t = 3)]
        shifts: usize,
        /// Fraction of nurses needed on working shifts per day.
        #[arg(long, default_value_t = 0.6)]
        load: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Gcc,
    Sum,
}

fn parse_groups<T: std::str::FromStr>(text: &str, sep: char) -> Result<Vec<Vec<T>>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(sep)
        .map(|g| {
            g.split_whitespace()
                .map(|t| t.parse::<T>().with_context(|| format!("bad number `{t}`")))
                .collect()
        })
        .collect()
}

fn parse_triples(text: &str) -> Result<Vec<[usize; 3]>> {
    parse_groups::<usize>(text, ';')?
        .into_iter()
        .map(|t| <[usize; 3]>::try_from(t).map_err(|t| anyhow::anyhow!("triple needs 3 coordinates, got {t:?}")))
        .collect()
}

fn generate(kind: &GenKind) -> Result<Instance> {
    let model = match kind {
        GenKind::ThreeSat { vars, clauses } => gen_3sat(&Cnf {
            num_vars: *vars,
            clauses: parse_groups(clauses, ',')?,
        })?,
        GenKind::Exactcover { universe, sets } => gen_exact_cover(*universe, &parse_groups(sets, ';')?)?,
        GenKind::ThreeDmDc { q, triples } => gen_3dm_dc(&Matching3d {
            q: *q,
            triples: parse_triples(triples)?,
        })?,
        GenKind::ThreeDmBc { q, triples } => {
            gen_3dm_bc(&Matching3d {
                q: *q,
                triples: parse_triples(triples)?,
            })?
            .0
        }
        GenKind::Hitting {
            vertices,
            edges,
            k,
            variant,
        } => {
            let h = Hypergraph {
                num_vertices: *vertices,
                edges: parse_groups(edges, ';')?,
            };
            let variant = match variant {
                VariantArg::Gcc => HittingVariant::Gcc,
                VariantArg::Sum => HittingVariant::Sum,
            };
            gen_hitting_set(&h, *k, variant)?
        }
        GenKind::Random {
            rows,
            cols,
            values,
            states,
            tightness,
            weighted,
            seed,
        } => {
            let mut p = RandomParams::new(*rows, *cols, *values, *states, *tightness, *seed);
            p.weighted = *weighted;
            gen_random(&p)?
        }
        GenKind::Roster {
            nurses,
            days,
            shifts,
            load,
            seed,
        } => return Ok(Instance::Roster(gen_roster(*nurses, *days, *shifts, *load, *seed)?)),
    };
    Ok(Instance::Matrix(model))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_model(file: &Path, case: Option<&Path>) -> Result<MatrixModel> {
    let text = read(file)?;
    let inst = match case {
        Some(case) => Instance::Roster(parse_nsp(&text, &read(case)?).with_context(|| file.display().to_string())?),
        None => parse_canonical(&text).with_context(|| file.display().to_string())?,
    };
    if let Instance::Roster(r) = &inst {
        if let Some(reason) = r.static_infeasibility() {
            log::info!("{}: statically infeasible ({reason})", file.display());
        }
    }
    Ok(inst.to_model()?)
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let model = load_model(&args.file, args.case.as_deref())?;
    let mode: Mode = args.mode.into();
    let cfg = SearchConfig::with_time_limit(args.flags.time_limit);
    let id = args.file.display().to_string();
    let report = run_model(&id, &model, &args.flags.options(mode), &cfg)?;
    let mut out = io::stdout().lock();
    writeln!(out, "status\t{}", report.status)?;
    writeln!(out, "mode\t{}", report.mode)?;
    writeln!(out, "time\t{:.3}", report.seconds)?;
    writeln!(out, "nodes\t{}", report.nodes)?;
    writeln!(out, "backtracks\t{}", report.backtracks)?;
    writeln!(out, "root_failure\t{}", report.root_failure)?;
    if report.status == Status::Sat {
        write!(out, "{}", model.format_matrix(&report.solution))?;
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)
        .with_context(|| format!("listing {}", args.dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<_>>()?;
    files.sort();
    let mut instances = Vec::new();
    for f in files {
        let case = match f.extension().and_then(|e| e.to_str()) {
            Some("rgcc") => None,
            Some("nsp") if args.case.is_some() => args.case.as_deref(),
            _ => continue,
        };
        let id = f.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        instances.push((id, load_model(&f, case)?));
    }
    let modes: Vec<Mode> = args.modes.iter().map(|&m| m.into()).collect();
    let cfg = SearchConfig::with_time_limit(args.flags.time_limit);
    let reports = bench(&instances, &modes, &args.flags.options(Mode::Decomp), &cfg, !args.sequential)?;
    match &args.report {
        Some(path) => write_tsv(fs::File::create(path)?, &reports)?,
        None => write_tsv(io::stdout().lock(), &reports)?,
    }
    let summary = Summary::new(&reports);
    if summary.is_empty() {
        eprintln!("no instance decided");
    } else {
        eprint!("{}", summary.table());
    }
    Ok(())
}

fn cmd_oracle(file: &Path, cap: u128) -> Result<()> {
    let model = load_model(file, None)?;
    let solutions = brute_solve_capped(&model, cap)?;
    let mut out = io::stdout().lock();
    writeln!(out, "solutions\t{}", solutions.len())?;
    if solutions.is_empty() {
        return Ok(());
    }
    let dc = brute_dc_from(&model, &solutions);
    for r in 0..model.rows {
        let cells: Vec<String> = (0..model.cols)
            .map(|k| {
                let labels: Vec<String> = dc[r * model.cols + k].iter().map(|&v| model.labels[v].to_string()).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        writeln!(out, "{}", cells.join(" "))?;
    }
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Gen { out, kind } => {
            let text = emit_canonical(&generate(kind)?);
            match out {
                Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
                None => {
                    io::stdout().lock().write_all(text.as_bytes())?;
                    Ok(())
                }
            }
        }
        Command::Bench(args) => cmd_bench(args),
        Command::Oracle { file, cap } => cmd_oracle(file, *cap),
    }
}
