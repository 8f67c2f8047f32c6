//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always reach the
//! terminal. A criterion can FAIL against published values that are
//! themselves wrong; those discrepancies are pinned below and checked
//! against independent computations. The process exits non-zero only when a
//! result departs from what is pinned here.
//!
//! Environment:
//! - `COPNUM_FAST=1` solves the table only up to n = 30 and skips criterion 2.
//! - `COPNUM_GIRTH9_GRAPH=<file>` supplies a graph for criterion 10.

mod common;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::Instant;

use copnum_core::game::trapped;
use copnum_core::gp::{brute_force_isomorphic, classify, iso_equivalent};
use copnum_core::oracle::naive_minimax_oracle;
use copnum_core::structure::{
    admits_two_trap, lemma42_conformance, lemma51_survey, two_trapped_scan,
};
use copnum_core::tables::{reproduce_appendix, HarnessConfig, RowCache, TableRow};
use copnum_core::{build_gp, cops_win, Girth, GpParams, Graph, Side, SolverConfig};

/// Printed girths contradicted by computation: `(n, k, computed, printed)`.
/// Each computed value also matches the girth-table prediction and the
/// edge-deletion oracle below.
const GIRTH_MISPRINTS: [(usize, usize, usize, usize); 7] = [
    (10, 4, 5, 6),
    (11, 4, 6, 7),
    (15, 6, 5, 7),
    (17, 7, 7, 8),
    (20, 8, 5, 8),
    (21, 6, 7, 8),
    (28, 12, 7, 8),
];

#[derive(PartialEq)]
enum Status {
    Pass,
    /// Fails against the stated target, exactly as analysed.
    Fail,
    Skip,
    /// The result differs from what this suite pins: a regression.
    Unexpected,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        status: if ok { Status::Pass } else { Status::Unexpected },
        detail: detail.into(),
    }
}

/// Shortest cycle through each edge: delete it and BFS between its ends.
fn girth_by_edge_deletion(g: &Graph) -> Option<usize> {
    let mut best = None;
    for (u, v) in g.edges() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if (x == u && y == v) || (x == v && y == u) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
        if dist[v] != usize::MAX {
            let len = dist[v] + 1;
            best = Some(best.map_or(len, |b: usize| b.min(len)));
        }
    }
    best
}

fn gp(n: usize, k: usize) -> GpParams {
    GpParams::new(n, k).unwrap()
}

fn solver() -> SolverConfig {
    SolverConfig::default()
}

fn criterion1(rows: &[TableRow]) -> Outcome {
    let published = common::published_by_params();
    let rows: Vec<&TableRow> = rows.iter().filter(|r| r.n <= 30).collect();
    let expected_rows = GpParams::range(5, 30).count();
    let mut cop_mismatch = Vec::new();
    let mut girth_mismatch = Vec::new();
    for r in &rows {
        let p = &published[&(r.n, r.k)];
        if p.cop_number != r.cop_number {
            cop_mismatch.push((r.n, r.k, r.cop_number, p.cop_number));
        }
        if p.girth != r.girth {
            girth_mismatch.push((r.n, r.k, r.girth, p.girth));
        }
    }
    let oracle_agrees = GIRTH_MISPRINTS.iter().all(|&(n, k, computed, _)| {
        girth_by_edge_deletion(&build_gp(gp(n, k))) == Some(computed)
            && copnum_core::gp::predicted_girth(gp(n, k)) == computed
    });
    let detail = format!(
        "{} rows; cop number mismatches {}; girth mismatches {} {:?}",
        rows.len(),
        cop_mismatch.len(),
        girth_mismatch.len(),
        girth_mismatch
    );
    let as_analysed = rows.len() == expected_rows
        && cop_mismatch.is_empty()
        && girth_mismatch == GIRTH_MISPRINTS
        && oracle_agrees;
    Outcome {
        status: match (as_analysed, girth_mismatch.is_empty()) {
            (false, _) => Status::Unexpected,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        },
        detail: format!("{detail} (printed girths contradicted by two independent computations)"),
    }
}

fn criterion2(rows: Option<&[TableRow]>) -> Outcome {
    // the upper bound 4 is used by the table; confirm it by solving directly
    // on the two smallest members
    let direct = [(25, 7), (26, 10)].iter().all(|&(n, k)| {
        cops_win(&build_gp(gp(n, k)), 4, &solver())
            .unwrap()
            .cops_win_overall()
    });
    let Some(rows) = rows else {
        return Outcome {
            status: if direct { Status::Skip } else { Status::Unexpected },
            detail: format!(
                "n <= 40 table skipped under COPNUM_FAST=1; 4 cops win directly on GP(25,7), GP(26,10): {direct}"
            ),
        };
    };
    let computed: BTreeSet<(usize, usize, usize)> = rows
        .iter()
        .filter(|r| r.cop_number == 4)
        .map(|r| (r.n, r.k, r.girth))
        .collect();
    let printed: BTreeSet<_> = common::table2().into_iter().collect();
    check(
        computed == printed && direct && printed.contains(&(25, 7, 8)) && printed.contains(&(40, 17, 8)),
        format!(
            "computed {} entries, printed {}; only computed {:?}; only printed {:?}; direct 4-cop wins {direct}",
            computed.len(),
            printed.len(),
            computed.difference(&printed).collect::<Vec<_>>(),
            printed.difference(&computed).collect::<Vec<_>>()
        ),
    )
}

fn criterion3() -> Outcome {
    let mismatches: Vec<_> = GpParams::range(5, 60)
        .map(classify)
        .filter(|r| !r.girth_matches())
        .map(|r| {
            (
                r.params.n(),
                r.params.k(),
                r.computed_girth,
                r.predicted_girth,
            )
        })
        .collect();
    check(
        mismatches.is_empty(),
        format!(
            "{} parameter pairs, mismatches {:?}",
            GpParams::range(5, 60).count(),
            mismatches
        ),
    )
}

fn criterion4() -> Outcome {
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    for n in 5..=14 {
        let ks: Vec<usize> = (1..).take_while(|&k| 2 * k < n).collect();
        for &k in &ks {
            for &l in &ks {
                pairs += 1;
                let predicted = iso_equivalent(n, k, l).unwrap();
                let actual =
                    brute_force_isomorphic(&build_gp(gp(n, k)), &build_gp(gp(n, l))).unwrap();
                if predicted != actual {
                    mismatches.push((n, k, l));
                }
            }
        }
    }
    check(
        mismatches.is_empty(),
        format!("{pairs} ordered pairs, mismatches {mismatches:?}"),
    )
}

fn criterion5() -> Outcome {
    let mut tested = 0;
    let mut violations = Vec::new();
    for p in GpParams::range(5, 36) {
        let g = build_gp(p);
        if g.girth() != Girth::Finite(8) || admits_two_trap(&g) {
            continue;
        }
        tested += 1;
        if cops_win(&g, 3, &solver()).unwrap().cops_win_overall() {
            violations.push(p.to_string());
        }
    }
    check(
        violations.is_empty() && tested > 0,
        format!("{tested} girth-8 graphs without a two-trap pair; 3-cop wins {violations:?}"),
    )
}

fn criterion6() -> Outcome {
    let report = lemma51_survey(60).unwrap();
    let violations: Vec<String> = report.violations().map(|r| r.params.to_string()).collect();
    let coverage: Vec<String> = report
        .coverage
        .iter()
        .map(|c| format!("{}: {}/{}", c.family, c.admitting, c.members))
        .collect();
    check(
        violations.is_empty(),
        format!(
            "{} girth-8 min-k graphs, violations {violations:?}; family coverage (admitting/members) {}",
            report.rows.len(),
            coverage.join(", ")
        ),
    )
}

/// `(n, k, computed girth, 2-trapped-not-trapped states, non-conforming)`
/// for the two listed graphs whose girth is below 8, so that the
/// characterization's hypothesis does not hold.
const BELOW_GIRTH8_SCANS: [(usize, usize, usize, usize, usize); 2] =
    [(17, 5, 7, 1173, 1020), (20, 8, 5, 1860, 1560)];

fn criterion7() -> Outcome {
    let r18 = lemma42_conformance(&build_gp(gp(18, 5))).unwrap();
    let r26 = lemma42_conformance(&build_gp(gp(26, 10))).unwrap();
    let girth8_ok =
        r18.violations.is_empty() && r18.two_trapped_count() > 0 && r26.two_trapped_count() == 0;
    let mut low = Vec::new();
    let mut low_as_pinned = true;
    for (n, k, girth, states, bad) in BELOW_GIRTH8_SCANS {
        let g = build_gp(gp(n, k));
        let refused = lemma42_conformance(&g).is_err();
        let scan = two_trapped_scan(&g).unwrap();
        low_as_pinned &= refused
            && g.girth() == Girth::Finite(girth)
            && scan.two_trapped_count() == states
            && scan.violations.len() == bad;
        low.push(format!(
            "GP({n},{k}) girth {} so outside the hypothesis: {} of {} states non-conforming",
            g.girth(),
            scan.violations.len(),
            scan.two_trapped_count()
        ));
    }
    let detail = format!(
        "GP(18,5): {} states, {} violations; GP(26,10): {} states; {}",
        r18.two_trapped_count(),
        r18.violations.len(),
        r26.two_trapped_count(),
        low.join("; ")
    );
    Outcome {
        status: match (girth8_ok && low_as_pinned, BELOW_GIRTH8_SCANS.is_empty()) {
            (false, _) => Status::Unexpected,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        },
        detail,
    }
}

fn criterion8() -> Outcome {
    let small = common::connected_graphs_up_to(7);
    let mut oracle_disagree = Vec::new();
    for (i, g) in small.iter().enumerate() {
        for cops in 1..=2 {
            let fast = cops_win(g, cops, &solver()).unwrap().cops_win_overall();
            if fast != naive_minimax_oracle(g, cops).unwrap() {
                oracle_disagree.push((i, cops));
            }
        }
    }
    let mut dismantle_disagree = 0;
    let gp_graphs: Vec<Graph> = GpParams::range(5, 12).map(build_gp).collect();
    let random = common::random_connected_graphs(200, 12, 0x5eed);
    for g in gp_graphs.iter().chain(&random) {
        if cops_win(g, 1, &solver()).unwrap().cops_win_overall() != g.dismantlable() {
            dismantle_disagree += 1;
        }
    }
    let cop_win_random = random.iter().filter(|g| g.dismantlable()).count();
    check(
        small.len() == 996 && oracle_disagree.is_empty() && dismantle_disagree == 0,
        format!(
            "{} connected graphs on <= 7 vertices, oracle disagreements {:?}; 1-cop vs dismantlable on {} GP + 200 random ({} dismantlable): {} disagreements",
            small.len(),
            oracle_disagree,
            gp_graphs.len(),
            cop_win_random,
            dismantle_disagree
        ),
    )
}

fn criterion9() -> Outcome {
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for p in GpParams::range(5, 20) {
        let g = build_gp(p);
        let result = cops_win(&g, 3, &solver()).unwrap();
        result.for_each_state(Side::Robber, |cops, robber, plies| {
            let Some(plies) = plies else { return };
            if cops.contains(&robber) || !trapped(&g, cops, robber).unwrap() {
                return;
            }
            checked += 1;
            if plies.div_ceil(2) > 2 {
                violations.push((p.to_string(), cops.to_vec(), robber));
            }
        });
    }
    check(
        violations.is_empty() && checked > 0,
        format!(
            "{checked} trapped cop-win states, over 2 cop turns: {}",
            violations.len()
        ),
    )
}

fn criterion10() -> Outcome {
    // a bundled cubic girth-9 graph unless another one is supplied
    let path = std::env::var_os("COPNUM_GIRTH9_GRAPH").map_or_else(
        || {
            std::path::PathBuf::from(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/tests/data/girth9_cubic64.txt"
            ))
        },
        std::path::PathBuf::from,
    );
    let text = std::fs::read_to_string(&path).expect("readable graph file");
    let g = Graph::parse(&text).expect("valid graph file");
    let delta = g.min_degree().unwrap_or(0);
    let girth_ok = match g.girth() {
        Girth::Finite(x) => x >= 9,
        Girth::Infinite => false,
    };
    if delta < 3 || !girth_ok || !g.is_connected() {
        return check(
            false,
            format!(
                "supplied graph does not qualify: min degree {delta}, girth {}",
                g.girth()
            ),
        );
    }
    let config = SolverConfig {
        max_cops: delta,
        ..solver()
    };
    match cops_win(&g, delta, &config) {
        Ok(r) => check(
            !r.cops_win_overall(),
            format!(
                "{}: {} vertices, girth {}, {delta} cops win: {}",
                path.display(),
                g.vertex_count(),
                g.girth(),
                r.cops_win_overall()
            ),
        ),
        Err(e) => check(false, format!("solver refused: {e}")),
    }
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let slow = !std::env::var("COPNUM_FAST").is_ok_and(|v| v == "1");
    let start = Instant::now();
    let config = HarnessConfig {
        slow,
        ..HarnessConfig::default()
    };
    let max_n = if slow { 40 } else { 30 };
    let run = reproduce_appendix(max_n, &config, &RowCache::new()).expect("table run");
    assert!(run.complete(), "rows skipped or failed: {:?}", run.failed);
    let table_secs = start.elapsed().as_secs_f64();

    let criteria: Vec<Criterion> = vec![
        (
            "appendix reproduction, n <= 30",
            Box::new(|| criterion1(&run.rows)),
        ),
        (
            "four-cop table reproduction, n <= 40",
            Box::new(|| criterion2(slow.then_some(&run.rows[..]))),
        ),
        ("girth classifier, n <= 60", Box::new(criterion3)),
        (
            "isomorphism predicate vs brute force, n <= 14",
            Box::new(criterion4),
        ),
        (
            "no two-trap pair implies 3 cops lose, girth 8, n <= 36",
            Box::new(criterion5),
        ),
        (
            "two-trap pairs only in the exception families, n <= 60",
            Box::new(criterion6),
        ),
        (
            "2-trapped positions have the two-antipodal-cops shape",
            Box::new(criterion7),
        ),
        (
            "solver vs naive minimax and dismantlability",
            Box::new(criterion8),
        ),
        (
            "trapped implies capture within 2 cop turns, n <= 20",
            Box::new(criterion9),
        ),
        (
            "min degree d, girth >= 9: d cops lose",
            Box::new(criterion10),
        ),
    ];
    println!("table rows n <= {max_n} solved in {table_secs:.1}s");
    let mut unexpected = 0;
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let label = match outcome.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Unexpected => "FAIL (unexpected)",
        };
        if outcome.status == Status::Unexpected {
            unexpected += 1;
        }
        *counts.entry(label).or_default() += 1;
        println!(
            "criterion {:>2} [{label}] {name} ({:.1}s): {}",
            i + 1,
            t.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    let mut summary: Vec<_> = counts.into_iter().collect();
    summary.sort();
    println!("summary: {summary:?}");
    if unexpected > 0 {
        eprintln!("{unexpected} criteria departed from the recorded results");
        std::process::exit(1);
    }
}
