//! Pairs of 8-cycles meeting in a two-edge path, and the checks built on them.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::game::{n_trapped_unchecked, trapped};
use crate::gp::{build_gp, min_k, GpParams};
use crate::graph::{Girth, Graph};
use crate::multiset::MultisetIndexer;
use crate::relation::{Relation, GIRTH8_EXCEPTIONS};

/// Simple cycles of `length` through `v`, each once, in canonical form:
/// rotated to start at its smallest vertex and oriented so the second entry
/// is smaller than the last. Lengths below 3 yield nothing.
pub fn cycles_of_length_through(g: &Graph, v: usize, length: usize) -> Vec<Vec<usize>> {
    if length < 3 || v >= g.vertex_count() {
        return Vec::new();
    }
    let dist = g.bfs_distances(v).expect("vertex in range");
    let mut found = BTreeSet::new();
    let mut path = vec![v];
    let mut on_path = vec![false; g.vertex_count()];
    on_path[v] = true;
    extend(g, &dist, length, &mut path, &mut on_path, &mut found);
    found.into_iter().collect()
}

fn extend(
    g: &Graph,
    dist: &[Option<usize>],
    length: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut BTreeSet<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if path.len() == length {
        if g.has_edge(last, path[0]) {
            found.insert(canonical_cycle(path));
        }
        return;
    }
    for &u in g.neighbors(last) {
        // after stepping to u there are length - path.len() edges left to close
        let remaining = length - path.len();
        if on_path[u] || dist[u].is_none_or(|d| d > remaining) {
            continue;
        }
        path.push(u);
        on_path[u] = true;
        extend(g, dist, length, path, on_path, found);
        on_path[u] = false;
        path.pop();
    }
}

pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let len = cycle.len();
    let start = (0..len).min_by_key(|&i| cycle[i]).unwrap();
    let forward: Vec<usize> = (0..len).map(|i| cycle[(start + i) % len]).collect();
    let backward: Vec<usize> = (0..len).map(|i| cycle[(start + len - i) % len]).collect();
    forward.min(backward)
}

/// Two 8-cycles whose intersection is the path `shared_path`, with `center`
/// in the middle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclePair {
    pub cycle_a: Vec<usize>,
    pub cycle_b: Vec<usize>,
    pub center: usize,
    pub shared_path: [usize; 3],
}

fn cycle_neighbors(cycle: &[usize], v: usize) -> Option<(usize, usize)> {
    let len = cycle.len();
    let i = cycle.iter().position(|&x| x == v)?;
    let (x, y) = (cycle[(i + len - 1) % len], cycle[(i + 1) % len]);
    Some((x.min(y), x.max(y)))
}

fn edge_set(cycle: &[usize]) -> BTreeSet<(usize, usize)> {
    (0..cycle.len())
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Every pair of 8-cycles whose intersection is a path with two edges and
/// three vertices.
pub fn two_trap_pairs(g: &Graph) -> Vec<CyclePair> {
    let mut pairs = BTreeSet::new();
    for c in 0..g.vertex_count() {
        pairs.extend(pairs_at(g, c, usize::MAX));
    }
    pairs.into_iter().collect()
}

/// Pairs centred at `c`, stopping after `limit` finds.
fn pairs_at(g: &Graph, c: usize, limit: usize) -> Vec<CyclePair> {
    let cycles = cycles_of_length_through(g, c, 8);
    let mut out = Vec::new();
    for (i, a) in cycles.iter().enumerate() {
        let na = cycle_neighbors(a, c).unwrap();
        for b in &cycles[i + 1..] {
            if cycle_neighbors(b, c).unwrap() != na {
                continue;
            }
            let shared: BTreeSet<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
            if shared.len() != 3 {
                continue;
            }
            let common_edges = edge_set(a).intersection(&edge_set(b)).count();
            if common_edges != 2 {
                continue;
            }
            out.push(CyclePair {
                cycle_a: a.clone(),
                cycle_b: b.clone(),
                center: c,
                shared_path: [na.0, c, na.1],
            });
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

pub fn admits_two_trap(g: &Graph) -> bool {
    (0..g.vertex_count()).any(|c| !pairs_at(g, c, 1).is_empty())
}

/// Re-checks a pair from the raw edge sets: both sequences are simple
/// 8-cycles of `g`, they share exactly the two path edges and the three path
/// vertices, and the centre is the middle of the path.
pub fn verify_cycle_pair(g: &Graph, pair: &CyclePair) -> bool {
    let is_cycle = |c: &[usize]| {
        c.len() == 8
            && c.iter().collect::<HashSet<_>>().len() == 8
            && (0..8).all(|i| g.has_edge(c[i], c[(i + 1) % 8]))
    };
    if !is_cycle(&pair.cycle_a) || !is_cycle(&pair.cycle_b) {
        return false;
    }
    let [x, c, y] = pair.shared_path;
    if c != pair.center || !g.has_edge(x, c) || !g.has_edge(c, y) {
        return false;
    }
    let va: HashSet<usize> = pair.cycle_a.iter().copied().collect();
    let vb: HashSet<usize> = pair.cycle_b.iter().copied().collect();
    let common_v: HashSet<usize> = va.intersection(&vb).copied().collect();
    let common_e: BTreeSet<_> = edge_set(&pair.cycle_a)
        .intersection(&edge_set(&pair.cycle_b))
        .copied()
        .collect();
    let expect_e: BTreeSet<_> = [(x.min(c), x.max(c)), (c.min(y), c.max(y))].into();
    common_v == HashSet::from([x, c, y]) && common_e == expect_e
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph girth {0} is below the required minimum")]
    GirthTooSmall(Girth),
    #[error("n_max {got} exceeds the survey cap {cap}")]
    SurveyCap { got: usize, cap: usize },
}

/// A three-cop, robber-to-move position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrapState {
    pub cops: Vec<usize>,
    pub robber: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Lemma42Report {
    /// Positions examined (robber × cop multisets within distance 4).
    pub scanned: u64,
    /// 2-trapped but not trapped positions that match the characterization.
    pub conforming: Vec<TrapState>,
    pub violations: Vec<TrapState>,
}

impl Lemma42Report {
    pub fn two_trapped_count(&self) -> usize {
        self.conforming.len() + self.violations.len()
    }
}

/// Scans every robber-to-move position with three cops (all cops within
/// distance 4 of the robber, none on it) and checks that each 2-trapped but
/// not trapped one has the two-antipodal-cops shape.
pub fn lemma42_conformance(g: &Graph) -> Result<Lemma42Report, StructureError> {
    scan_two_trapped(g, 8)
}

/// The same scan under the weaker requirement of girth at least 5, which is
/// all the distance-4 restriction needs: one cop can then cover only one edge
/// at the robber, so all three cops must come within distance 2 after one
/// move.
pub fn two_trapped_scan(g: &Graph) -> Result<Lemma42Report, StructureError> {
    scan_two_trapped(g, 5)
}

fn scan_two_trapped(g: &Graph, min_girth: usize) -> Result<Lemma42Report, StructureError> {
    if g.regular_degree() != Some(3) {
        return Err(StructureError::NotCubic);
    }
    match g.girth() {
        Girth::Finite(x) if x < min_girth => return Err(StructureError::GirthTooSmall(g.girth())),
        _ => {}
    }
    let mut report = Lemma42Report::default();
    for robber in 0..g.vertex_count() {
        let dist = g.bfs_distances(robber).expect("vertex in range");
        let near: Vec<usize> = (0..g.vertex_count())
            .filter(|&x| x != robber && dist[x].is_some_and(|d| d <= 4))
            .collect();
        let pairs = pairs_at(g, robber, usize::MAX);
        let indexer = MultisetIndexer::new(near.len(), 3);
        let mut pick = [0; 3];
        for m in 0..indexer.count() {
            indexer.unrank_into(m, &mut pick);
            let cops: Vec<usize> = pick.iter().map(|&i| near[i]).collect();
            report.scanned += 1;
            if trapped(g, &cops, robber).expect("robber not on a cop") {
                continue;
            }
            if !n_trapped_unchecked(g, &cops, robber, 2) {
                continue;
            }
            let state = TrapState { cops, robber };
            if conforms(g, &pairs, &state) {
                report.conforming.push(state);
            } else {
                report.violations.push(state);
            }
        }
    }
    Ok(report)
}

/// Antipode of `v` on an 8-cycle containing it.
fn antipode(cycle: &[usize], v: usize) -> usize {
    let i = cycle.iter().position(|&x| x == v).unwrap();
    cycle[(i + 4) % 8]
}

fn conforms(g: &Graph, pairs: &[CyclePair], s: &TrapState) -> bool {
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let r = s.robber;
    pairs.iter().any(|p| {
        let third = *g
            .neighbors(r)
            .iter()
            .find(|&&x| x != p.shared_path[0] && x != p.shared_path[2])
            .unwrap();
        let (ta, tb) = (antipode(&p.cycle_a, r), antipode(&p.cycle_b, r));
        ORDERS.iter().any(|o| {
            let (c1, c2, c3) = (s.cops[o[0]], s.cops[o[1]], s.cops[o[2]]);
            c1 == ta && c2 == tb && (c3 == third || (c3 != r && g.has_edge(c3, third)))
        })
    })
}

/// One girth-8 min-k parameter pair in the survey.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub params: GpParams,
    pub admits_two_trap: bool,
    pub families: Vec<Relation>,
}

impl SurveyRow {
    /// The structure occurs outside every listed family.
    pub fn is_violation(&self) -> bool {
        self.admits_two_trap && self.families.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct FamilyCoverage {
    pub family: Relation,
    pub members: usize,
    pub admitting: usize,
}

#[derive(Debug, Clone)]
pub struct Lemma51Report {
    pub rows: Vec<SurveyRow>,
    pub coverage: Vec<FamilyCoverage>,
}

impl Lemma51Report {
    pub fn violations(&self) -> impl Iterator<Item = &SurveyRow> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,admits_two_trap,families\n");
        for r in &self.rows {
            let fams: Vec<String> = r.families.iter().map(|f| f.to_string()).collect();
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                r.params.n(),
                r.params.k(),
                r.admits_two_trap,
                fams.join(";")
            ));
        }
        out
    }
}

pub const SURVEY_MAX_N: usize = 60;

/// For every girth-8 `GP(n, k)` with `k` minimal in its class and
/// `n <= n_max`, compares the presence of a two-trap pair with membership in
/// the girth-8 exception families.
pub fn lemma51_survey(n_max: usize) -> Result<Lemma51Report, StructureError> {
    if n_max > SURVEY_MAX_N {
        return Err(StructureError::SurveyCap {
            got: n_max,
            cap: SURVEY_MAX_N,
        });
    }
    let candidates: Vec<GpParams> = GpParams::range(5, n_max)
        .filter(|&p| min_k(p) == p.k())
        .collect();
    let rows: Vec<SurveyRow> = {
        use rayon::prelude::*;
        candidates
            .par_iter()
            .filter_map(|&p| {
                let g = build_gp(p);
                if g.girth() != Girth::Finite(8) {
                    return None;
                }
                Some(SurveyRow {
                    params: p,
                    admits_two_trap: admits_two_trap(&g),
                    families: GIRTH8_EXCEPTIONS
                        .iter()
                        .copied()
                        .filter(|f| f.holds(p.n(), p.k()))
                        .collect(),
                })
            })
            .collect()
    };
    let coverage = GIRTH8_EXCEPTIONS
        .iter()
        .map(|&family| {
            let members: Vec<&SurveyRow> = rows
                .iter()
                .filter(|r| r.families.contains(&family))
                .collect();
            FamilyCoverage {
                family,
                members: members.len(),
                admitting: members.iter().filter(|r| r.admits_two_trap).count(),
            }
        })
        .collect();
    Ok(Lemma51Report { rows, coverage })
}
