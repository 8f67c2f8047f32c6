use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use copnum_core::coincidence::{candidate_relations, distance4_coincidences, Ring};
use copnum_core::game::trapped;
use copnum_core::gp::{classify, ClassificationReport};
use copnum_core::structure::{lemma51_survey, two_trap_pairs, two_trapped_scan};
use copnum_core::tables::{
    cache_load, cache_store, reproduce_appendix, rows_to_cache, HarnessConfig, RowCache, TableRun,
    DEFAULT_SLOW_ABOVE_N,
};
use copnum_core::{
    build_gp, cop_number, cops_win, optimal_cop_move, GameState, GpParams, Graph, Move, Side,
    SolverConfig,
};

/// Exact cops-and-robbers computations on generalized Petersen graphs.
#[derive(Parser)]
#[command(name = "copnum", version)]
struct Cli {
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Girth and exception classification of GP(n,k) as CSV.
    Classify {
        #[arg(long, requires = "k", conflicts_with = "max_n")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
        /// Classify every valid (n,k) with n up to this value.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Decide the game for a fixed number of cops.
    Solve {
        /// Graph file, or `gp:n,k`.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cops: usize,
        /// Print a winning placement and the first optimal cop move against
        /// each robber position.
        #[arg(long)]
        emit_strategy: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Smallest winning number of cops.
    Copnumber {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 4)]
        max_cops: usize,
        #[command(flatten)]
        limits: Limits,
    },
    /// List 3-cop positions that are 2-trapped but not trapped.
    ScanTraps {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 3)]
        cops: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Find pairs of 8-cycles meeting in a two-edge path.
    Detect {
        #[arg(long)]
        graph: String,
        /// How many pairs to print.
        #[arg(long, default_value_t = 5)]
        show: usize,
    },
    /// Compare two-trap pairs with the girth-8 exception families.
    SurveyLemma51 {
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        /// Write per-graph rows as CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance-4 coincidence relations, for one (n,k) or symbolically.
    Coincidences {
        #[arg(long, requires = "k")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
        #[arg(long, value_enum, ignore_case = true, default_value_t = SideArg::A)]
        side: SideArg,
    },
    /// Write a graph as DOT or edge list.
    Export {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
    },
    /// Reproduce the cop-number tables.
    Tables {
        #[command(subcommand)]
        which: TableKind,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct Limits {
    /// Memory budget for the state tables, in MiB.
    #[arg(long, default_value_t = 2048)]
    budget_mib: u64,
}

impl Limits {
    fn config(&self, max_cops: usize) -> SolverConfig {
        SolverConfig {
            max_cops: max_cops.max(4),
            memory_budget: self.budget_mib << 20,
            ..SolverConfig::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Edges,
}

#[derive(Subcommand)]
enum TableKind {
    /// Every valid (n,k).
    Appendix(TableArgs),
    /// Only rows with cop number 4.
    Table2(TableArgs),
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long, default_value_t = 30)]
    max_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also solve rows with n above the slow threshold.
    #[arg(long)]
    slow: bool,
    /// Rows with n above this are slow.
    #[arg(long, default_value_t = DEFAULT_SLOW_ABOVE_N)]
    slow_above: usize,
    /// Write zero timings so repeated runs are byte-identical.
    #[arg(long)]
    deterministic: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Loads `gp:n,k` or a graph file; returns the graph and its display id.
fn load_graph(spec: &str) -> Result<(Graph, String)> {
    if spec.starts_with("gp:") || spec.starts_with("GP(") {
        let p: GpParams = spec.parse()?;
        return Ok((build_gp(p), format!("gp:{},{}", p.n(), p.k())));
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    let g = Graph::parse(&text).with_context(|| format!("parsing {spec}"))?;
    Ok((g, spec.to_string()))
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn run(command: Command) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Classify { n, k, max_n } => {
            writeln!(out, "{}", ClassificationReport::CSV_HEADER)?;
            let params: Vec<GpParams> = match (n, k, max_n) {
                (Some(n), Some(k), None) => vec![GpParams::new(n, k)?],
                (None, None, Some(max_n)) => GpParams::range(5, max_n).collect(),
                _ => bail!("give either --n and --k, or --max-n"),
            };
            for p in params {
                writeln!(out, "{}", classify(p).csv_line())?;
            }
        }
        Command::Solve {
            graph,
            cops,
            emit_strategy,
            limits,
        } => {
            let (g, id) = load_graph(&graph)?;
            let start = Instant::now();
            let result = cops_win(&g, cops, &limits.config(cops))?;
            writeln!(
                out,
                "graph={id} cops={cops} cops_win={} states={} time_ms={}",
                result.cops_win_overall(),
                result.state_count(),
                start.elapsed().as_millis()
            )?;
            if emit_strategy {
                if let Some(placement) = result.winning_initial_placements().first() {
                    writeln!(out, "placement={}", join(placement))?;
                    for r in 0..g.vertex_count() {
                        let s = GameState::new(placement.clone(), r, Side::Cops);
                        if s.is_capture() {
                            continue;
                        }
                        let turns = result.capture_time_cop_turns(&s)?.unwrap_or(0);
                        if let Move::Cops(to) = optimal_cop_move(&result, &s)? {
                            writeln!(out, "robber={r} move={} turns={turns}", join(&to))?;
                        }
                    }
                }
            }
        }
        Command::Copnumber {
            graph,
            max_cops,
            limits,
        } => {
            let (g, id) = load_graph(&graph)?;
            let start = Instant::now();
            let c = cop_number(&g, max_cops, &limits.config(max_cops))?;
            writeln!(
                out,
                "graph={id} cop_number={c} time_ms={}",
                start.elapsed().as_millis()
            )?;
        }
        Command::ScanTraps { graph, cops, depth } => {
            if cops != 3 || depth != 2 {
                bail!("only --cops 3 --depth 2 is supported");
            }
            let (g, id) = load_graph(&graph)?;
            let report = two_trapped_scan(&g)?;
            let mut states: Vec<_> = report
                .conforming
                .iter()
                .map(|s| (s, true))
                .chain(report.violations.iter().map(|s| (s, false)))
                .collect();
            states.sort();
            for (s, conforms) in states {
                writeln!(
                    out,
                    "robber={} cops={} trapped={} conforms={conforms}",
                    s.robber,
                    join(&s.cops),
                    trapped(&g, &s.cops, s.robber)?
                )?;
            }
            writeln!(
                out,
                "graph={id} scanned={} two_trapped={} violations={}",
                report.scanned,
                report.two_trapped_count(),
                report.violations.len()
            )?;
        }
        Command::Detect { graph, show } => {
            let (g, id) = load_graph(&graph)?;
            let pairs = two_trap_pairs(&g);
            writeln!(out, "graph={id} pairs={}", pairs.len())?;
            for p in pairs.iter().take(show) {
                writeln!(
                    out,
                    "center={} path={} a={} b={}",
                    p.center,
                    join(&p.shared_path),
                    join(&p.cycle_a),
                    join(&p.cycle_b)
                )?;
            }
        }
        Command::SurveyLemma51 { max_n, out: path } => {
            let report = lemma51_survey(max_n)?;
            let violations = report.violations().count();
            writeln!(
                out,
                "girth8_min_k={} admitting={} violations={violations}",
                report.rows.len(),
                report.rows.iter().filter(|r| r.admits_two_trap).count()
            )?;
            for c in &report.coverage {
                writeln!(
                    out,
                    "family={} members={} admitting={}",
                    c.family, c.members, c.admitting
                )?;
            }
            if let Some(path) = path {
                std::fs::write(&path, report.to_csv())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if violations > 0 {
                out.flush()?;
                return Ok(ExitCode::from(3));
            }
        }
        Command::Coincidences { n, k, side } => {
            let ring = match side {
                SideArg::A => Ring::A,
                SideArg::B => Ring::B,
            };
            let rels = match (n, k) {
                (Some(n), Some(k)) => distance4_coincidences(GpParams::new(n, k)?, ring),
                _ => candidate_relations(ring),
            };
            for c in rels {
                let pairs: Vec<String> = c
                    .witnesses
                    .iter()
                    .map(|(x, y)| format!("{x}={y}"))
                    .collect();
                writeln!(out, "{} {}", c.relation, pairs.join(" "))?;
            }
        }
        Command::Export { graph, format } => {
            let (g, _) = load_graph(&graph)?;
            match format {
                ExportFormat::Dot => write!(out, "{}", g.to_dot())?,
                ExportFormat::Edges => write!(out, "{}", g.to_edge_list_text())?,
            }
        }
        Command::Tables { which } => {
            let (args, table2) = match which {
                TableKind::Appendix(a) => (a, false),
                TableKind::Table2(a) => (a, true),
            };
            let code = run_tables(&args, table2, &mut out)?;
            out.flush()?;
            return Ok(code);
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn load_cache(path: &Path) -> Result<RowCache> {
    if !path.exists() {
        return Ok(RowCache::new());
    }
    let file = File::open(path).with_context(|| format!("opening cache {}", path.display()))?;
    Ok(rows_to_cache(
        cache_load(file).with_context(|| format!("cache {}", path.display()))?,
    ))
}

fn run_tables(args: &TableArgs, table2: bool, out: &mut impl Write) -> Result<ExitCode> {
    let cache_path = std::env::var_os("COPNUM_CACHE").map(PathBuf::from);
    let cache = match &cache_path {
        Some(p) => load_cache(p)?,
        None => RowCache::new(),
    };
    let config = HarnessConfig {
        slow: args.slow,
        slow_above_n: args.slow_above,
        ..HarnessConfig::default()
    };
    if args.max_n > 40 {
        eprintln!("note: n above 40 goes beyond the published tables");
    }
    let mut run: TableRun = reproduce_appendix(args.max_n, &config, &cache)?;

    if let Some(path) = &cache_path {
        let mut all = cache;
        all.extend(run.rows.iter().map(|r| ((r.n, r.k), r.clone())));
        let mut rows: Vec<_> = all.into_values().collect();
        rows.sort_by_key(|r| (r.n, r.k));
        let file =
            File::create(path).with_context(|| format!("writing cache {}", path.display()))?;
        cache_store(&rows, BufWriter::new(file), true)?;
    }
    if table2 {
        run.rows.retain(|r| r.cop_number == 4);
    }

    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("writing {}", path.display()))?;
            cache_store(&run.rows, BufWriter::new(file), !args.deterministic)?;
        }
        None => cache_store(&run.rows, &mut *out, !args.deterministic)?,
    }
    for p in &run.skipped {
        eprintln!("skipped {p}: needs --slow");
    }
    for (p, e) in &run.failed {
        eprintln!("failed {p}: {e}");
    }
    Ok(if run.complete() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
