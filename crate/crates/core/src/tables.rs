//! Cop-number tables for `GP(n, k)` over a range of `n`, with a CSV cache.
//!
//! Each row is solved for 1, 2 and 3 cops in turn. When three cops lose the
//! row is recorded as 4, the known upper bound for every generalized Petersen
//! graph; a 4-cop solve on 80 vertices would not fit the memory budget.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gp::{appendix_relation, build_gp, classify, format_relations, min_k, GpParams};
use crate::solver::{cops_win, SolveError, SolverConfig};

/// Every generalized Petersen graph is won by four cops.
pub const GP_COP_NUMBER_BOUND: usize = 4;

/// Rows with `n` above this are only solved in the slow tier.
pub const DEFAULT_SLOW_ABOVE_N: usize = 36;

pub const CACHE_VERSION_LINE: &str = concat!("# copnum ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSource {
    Computed,
    Cached,
}

impl fmt::Display for RowSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowSource::Computed => "computed",
            RowSource::Cached => "cached",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    /// Formatted relations, `;`-separated.
    pub relation: String,
    /// Smallest isomorphic step when it differs from `k`.
    pub iso_min_k: Option<usize>,
    pub girth: usize,
    pub cop_number: usize,
    pub source: RowSource,
    pub solve_ms: u64,
}

impl TableRow {
    pub fn params(&self) -> GpParams {
        GpParams::new(self.n, self.k).expect("validated row")
    }

    fn validate(&self) -> Result<(), String> {
        GpParams::new(self.n, self.k).map_err(|e| e.to_string())?;
        if !(2..=GP_COP_NUMBER_BOUND).contains(&self.cop_number) {
            return Err(format!("cop number {} outside 2..=4", self.cop_number));
        }
        if !(3..=8).contains(&self.girth) {
            return Err(format!("girth {} outside 3..=8", self.girth));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("GP({n},{k}): known cop number {expected} but the solver found {computed}")]
    TheoryMismatch {
        n: usize,
        k: usize,
        expected: usize,
        computed: usize,
    },
    #[error("cache line {line}: {message}")]
    BadCacheRow { line: u64, message: String },
    #[error("cache: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Cop numbers that follow from known results rather than search: prisms
/// (`k = 1`) need 2; `k = 2` and `k = 3` need 3 apart from the small girth-4
/// and girth-3 cases; girth-8 parameters outside the exception families need
/// 4.
pub fn theory_cop_number(p: GpParams) -> Option<usize> {
    let rep = p.min_k_representative();
    match (rep.k(), rep.n()) {
        (1, _) => Some(2),
        (2, n) if n != 6 && n != 8 => Some(3),
        (3, n) if n != 9 && n != 12 => Some(3),
        _ if classify(p).cop4_guaranteed => Some(4),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HarnessConfig {
    pub solver: SolverConfig,
    /// Solve rows with `n > slow_above_n`; otherwise they are skipped.
    pub slow: bool,
    pub slow_above_n: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            solver: SolverConfig::default(),
            slow: false,
            slow_above_n: DEFAULT_SLOW_ABOVE_N,
        }
    }
}

/// Outcome of a table run. Rows are sorted by `(n, k)`.
#[derive(Debug, Default)]
pub struct TableRun {
    pub rows: Vec<TableRow>,
    /// Left for the slow tier.
    pub skipped: Vec<GpParams>,
    /// Rows the solver refused, e.g. over the memory budget.
    pub failed: Vec<(GpParams, SolveError)>,
}

impl TableRun {
    pub fn complete(&self) -> bool {
        self.skipped.is_empty() && self.failed.is_empty()
    }
}

/// Solves one row from scratch.
pub fn compute_row(p: GpParams, solver: &SolverConfig) -> Result<TableRow, SolveError> {
    let start = Instant::now();
    let g = build_gp(p);
    let mut cop_number = GP_COP_NUMBER_BOUND;
    for cops in 1..GP_COP_NUMBER_BOUND {
        if cops_win(&g, cops, solver)?.cops_win_overall() {
            cop_number = cops;
            break;
        }
    }
    let iso = min_k(p);
    Ok(TableRow {
        n: p.n(),
        k: p.k(),
        relation: format_relations(&appendix_relation(p)),
        iso_min_k: (iso != p.k()).then_some(iso),
        girth: g.girth().finite().expect("GP graphs have cycles"),
        cop_number,
        source: RowSource::Computed,
        solve_ms: start.elapsed().as_millis() as u64,
    })
}

pub type RowCache = HashMap<(usize, usize), TableRow>;

/// Every valid `(n, k)` with `n <= max_n`. Cached rows are reused; solver
/// results are checked against [`theory_cop_number`] and a disagreement
/// aborts the run.
pub fn reproduce_appendix(
    max_n: usize,
    config: &HarnessConfig,
    cache: &RowCache,
) -> Result<TableRun, TableError> {
    let params: Vec<GpParams> = GpParams::range(5, max_n).collect();
    let outcomes: Vec<(GpParams, Option<Result<TableRow, SolveError>>)> = params
        .par_iter()
        .map(|&p| {
            if let Some(row) = cache.get(&(p.n(), p.k())) {
                let mut row = row.clone();
                row.source = RowSource::Cached;
                return (p, Some(Ok(row)));
            }
            if !config.slow && p.n() > config.slow_above_n {
                return (p, None);
            }
            (p, Some(compute_row(p, &config.solver)))
        })
        .collect();

    let mut run = TableRun::default();
    for (p, outcome) in outcomes {
        match outcome {
            None => run.skipped.push(p),
            Some(Err(e)) => run.failed.push((p, e)),
            Some(Ok(row)) => {
                if let Some(expected) = theory_cop_number(p) {
                    if expected != row.cop_number {
                        return Err(TableError::TheoryMismatch {
                            n: p.n(),
                            k: p.k(),
                            expected,
                            computed: row.cop_number,
                        });
                    }
                }
                run.rows.push(row);
            }
        }
    }
    Ok(run)
}

/// Rows with cop number 4.
pub fn reproduce_table2(
    max_n: usize,
    config: &HarnessConfig,
    cache: &RowCache,
) -> Result<TableRun, TableError> {
    let mut run = reproduce_appendix(max_n, config, cache)?;
    run.rows.retain(|r| r.cop_number == 4);
    Ok(run)
}

/// Writes rows as CSV behind a `#` version line. With `timings` off the
/// `solve_ms` column is zeroed so repeated runs are byte-identical.
pub fn cache_store<W: Write>(rows: &[TableRow], out: W, timings: bool) -> Result<(), TableError> {
    let mut out = out;
    writeln!(out, "{CACHE_VERSION_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        if timings {
            w.serialize(row)?;
        } else {
            w.serialize(TableRow {
                solve_ms: 0,
                ..row.clone()
            })?;
        }
    }
    if rows.is_empty() {
        w.write_record([
            "n",
            "k",
            "relation",
            "iso_min_k",
            "girth",
            "cop_number",
            "source",
            "solve_ms",
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads and validates rows written by [`cache_store`].
pub fn cache_load<R: Read>(input: R) -> Result<Vec<TableRow>, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows = Vec::new();
    for record in reader.deserialize::<TableRow>() {
        let row = record.map_err(|e| match e.position() {
            Some(pos) => TableError::BadCacheRow {
                line: pos.line(),
                message: e.to_string(),
            },
            None => TableError::Csv(e),
        })?;
        if let Err(message) = row.validate() {
            return Err(TableError::BadCacheRow {
                line: reader.position().line().saturating_sub(1),
                message,
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn rows_to_cache(rows: Vec<TableRow>) -> RowCache {
    rows.into_iter().map(|r| ((r.n, r.k), r)).collect()
}
