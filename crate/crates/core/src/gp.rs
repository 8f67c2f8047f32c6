//! Generalized Petersen graphs `GP(n, k)`: construction, isomorphism classes,
//! girth prediction and exception classification.
//!
//! Vertex `a_i` is index `i` and `b_i` is index `n + i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::relation::{Relation, ALL_EXCEPTIONS, GIRTH8_EXCEPTIONS, GIRTH_CLASSES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("GP({n},{k}) needs n >= 5")]
    TooSmall { n: usize, k: usize },
    #[error("GP({n},{k}) needs 1 <= k < n/2")]
    BadStep { n: usize, k: usize },
    #[error("cannot parse GP parameters from `{0}`")]
    Unparsable(String),
}

/// A validated `(n, k)` pair: `n >= 5` and `1 <= k` with `2k < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GpParams {
    n: usize,
    k: usize,
}

impl GpParams {
    pub fn new(n: usize, k: usize) -> Result<Self, ParamError> {
        if n < 5 {
            return Err(ParamError::TooSmall { n, k });
        }
        if k == 0 || 2 * k >= n {
            return Err(ParamError::BadStep { n, k });
        }
        Ok(GpParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Every valid pair with `n_min <= n <= n_max`, ordered by `(n, k)`.
    pub fn range(n_min: usize, n_max: usize) -> impl Iterator<Item = GpParams> {
        (n_min.max(5)..=n_max).flat_map(|n| (1..n.div_ceil(2)).map(move |k| GpParams { n, k }))
    }

    pub fn outer(&self, i: usize) -> usize {
        i % self.n
    }

    pub fn inner(&self, i: usize) -> usize {
        self.n + i % self.n
    }

    /// `a_i` / `b_i` label for a vertex index.
    pub fn vertex_label(&self, v: usize) -> String {
        if v < self.n {
            format!("a{v}")
        } else {
            format!("b{}", v - self.n)
        }
    }

    /// The representative with the smallest step in this isomorphism class.
    pub fn min_k_representative(&self) -> GpParams {
        GpParams {
            n: self.n,
            k: min_k(*self),
        }
    }
}

impl fmt::Display for GpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GP({},{})", self.n, self.k)
    }
}

/// Accepts `n,k`, `gp:n,k` and `GP(n,k)`.
impl FromStr for GpParams {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParamError::Unparsable(s.to_string());
        let body = s.trim();
        let body = body.strip_prefix("gp:").unwrap_or(body);
        let body = body
            .strip_prefix("GP(")
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let (n, k) = body.split_once(',').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        GpParams::new(n, k)
    }
}

/// Builds `GP(n, k)` with edges `a_i a_{i+1}`, `a_i b_i`, `b_i b_{i+k}`.
pub fn build_gp(p: GpParams) -> Graph {
    let n = p.n;
    let edges = (0..n).flat_map(|i| {
        [
            (p.outer(i), p.outer(i + 1)),
            (p.outer(i), p.inner(i)),
            (p.inner(i), p.inner(i + p.k)),
        ]
    });
    Graph::from_edge_list(2 * n, edges).expect("GP edges are in range and loop free")
}

/// `GP(n,k) ≅ GP(n,l)` iff `k = l` or `k·l ≡ ±1 (mod n)`.
pub fn iso_equivalent(n: usize, k: usize, l: usize) -> Result<bool, ParamError> {
    GpParams::new(n, k)?;
    GpParams::new(n, l)?;
    let r = (k * l) % n;
    Ok(k == l || r == 1 || r == n - 1)
}

pub fn min_k(p: GpParams) -> usize {
    (1..=p.k)
        .find(|&l| iso_equivalent(p.n, p.k, l).unwrap_or(false))
        .unwrap_or(p.k)
}

/// Girth read off the relation table for the min-k representative.
pub fn predicted_girth(p: GpParams) -> usize {
    let rep = p.min_k_representative();
    GIRTH_CLASSES
        .iter()
        .find(|(_, rels)| rels.iter().any(|r| r.holds(rep.n, rep.k)))
        .map_or(8, |&(g, _)| g)
}

/// The relation `a·n = l·k ∓ 1` tying `k` to a smaller isomorphic step `l`.
pub fn iso_relation(p: GpParams) -> Option<(usize, Relation)> {
    let l = min_k(p);
    if l == p.k {
        return None;
    }
    let prod = (p.k * l) as i64;
    let n = p.n as i64;
    let rel = if prod % n == 1 {
        Relation::linear((prod - 1) / n, l as i64, -1)
    } else {
        Relation::linear((prod + 1) / n, l as i64, 1)
    };
    debug_assert!(rel.holds(p.n, p.k));
    Some((l, rel))
}

/// Relations from the girth table and the exception list satisfied by `p`
/// as presented (no normalization), in canonical order.
pub fn satisfied_relations(p: GpParams) -> BTreeSet<Relation> {
    GIRTH_CLASSES
        .iter()
        .flat_map(|(_, rels)| rels.iter().copied())
        .chain(ALL_EXCEPTIONS)
        .filter(|r| r.holds(p.n, p.k))
        .collect()
}

/// The relation column used by the reproduction tables: the isomorphism
/// relation when a smaller step exists, otherwise every girth/exception
/// relation the parameters satisfy.
pub fn appendix_relation(p: GpParams) -> Vec<Relation> {
    match iso_relation(p) {
        Some((_, rel)) => vec![rel],
        None => satisfied_relations(p).into_iter().collect(),
    }
}

pub fn format_relations(rels: &[Relation]) -> String {
    rels.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub params: GpParams,
    pub min_k: usize,
    pub computed_girth: usize,
    pub predicted_girth: usize,
    /// Girth-8 families satisfied by the min-k representative.
    pub girth8_exception_tags: Vec<Relation>,
    /// Every exception family satisfied by the min-k representative.
    pub full_exception_tags: Vec<Relation>,
    pub cop4_guaranteed: bool,
}

impl ClassificationReport {
    pub fn girth_matches(&self) -> bool {
        self.computed_girth == self.predicted_girth
    }

    pub const CSV_HEADER: &'static str =
        "n,k,min_k,girth_computed,girth_predicted,tags,cop4_guaranteed";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.params.n,
            self.params.k,
            self.min_k,
            self.computed_girth,
            self.predicted_girth,
            format_relations(&self.full_exception_tags),
            self.cop4_guaranteed
        )
    }
}

pub fn classify(p: GpParams) -> ClassificationReport {
    let rep = p.min_k_representative();
    let computed_girth = build_gp(p)
        .girth()
        .finite()
        .expect("GP graphs always contain cycles");
    let girth8_exception_tags: Vec<Relation> = GIRTH8_EXCEPTIONS
        .into_iter()
        .filter(|r| r.holds(rep.n, rep.k))
        .collect();
    let full_exception_tags = ALL_EXCEPTIONS
        .into_iter()
        .filter(|r| r.holds(rep.n, rep.k))
        .collect();
    ClassificationReport {
        params: p,
        min_k: rep.k,
        computed_girth,
        predicted_girth: predicted_girth(p),
        cop4_guaranteed: computed_girth == 8 && girth8_exception_tags.is_empty(),
        girth8_exception_tags,
        full_exception_tags,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("brute-force isomorphism is capped at {cap} vertices, got {got}")]
pub struct IsoSizeError {
    pub cap: usize,
    pub got: usize,
}

pub const BRUTE_FORCE_ISO_CAP: usize = 28;

/// Exact isomorphism test by backtracking, for graphs of at most
/// [`BRUTE_FORCE_ISO_CAP`] vertices.
///
/// Vertices are first split by an invariant (degree plus BFS layer sizes);
/// the first graph is then mapped vertex by vertex in BFS order, each new
/// vertex going to an unused neighbour of its parent's image with the same
/// invariant, checking all adjacencies to already-mapped vertices.
pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, IsoSizeError> {
    for g in [g1, g2] {
        if g.vertex_count() > BRUTE_FORCE_ISO_CAP {
            return Err(IsoSizeError {
                cap: BRUTE_FORCE_ISO_CAP,
                got: g.vertex_count(),
            });
        }
    }
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let inv1 = invariants(g1);
    let inv2 = invariants(g2);
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }

    // BFS order over g1, restarting at each new component.
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g1.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    order.push(w);
                }
            }
        }
    }

    let mut search = IsoSearch {
        g1,
        g2,
        inv1: &inv1,
        inv2: &inv2,
        order: &order,
        parent: &parent,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(search.extend(0))
}

fn invariants(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|v| {
            let dist = g.bfs_distances(v).expect("vertex in range");
            let mut layers = vec![g.degree(v)];
            for d in dist.into_iter().flatten() {
                if layers.len() <= d + 1 {
                    layers.resize(d + 2, 0);
                }
                layers[d + 1] += 1;
            }
            layers
        })
        .collect()
}

struct IsoSearch<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    inv1: &'a [Vec<usize>],
    inv2: &'a [Vec<usize>],
    order: &'a [usize],
    parent: &'a [Option<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        let Some(&x) = self.order.get(depth) else {
            return true;
        };
        let candidates: Vec<usize> = match self.parent[x] {
            Some(p) => self.g2.neighbors(self.map[p]).to_vec(),
            None => (0..self.g2.vertex_count()).collect(),
        };
        for y in candidates {
            if self.used[y] || self.inv1[x] != self.inv2[y] || !self.consistent(x, y) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        false
    }

    /// Mapped neighbours of `x` go to neighbours of `y`, and `y` has no other
    /// mapped neighbours.
    fn consistent(&self, x: usize, y: usize) -> bool {
        let mut mapped = 0;
        for &w in self.g1.neighbors(x) {
            let img = self.map[w];
            if img != usize::MAX {
                if !self.g2.has_edge(y, img) {
                    return false;
                }
                mapped += 1;
            }
        }
        let mapped_in_g2 = self
            .g2
            .neighbors(y)
            .iter()
            .filter(|&&w| self.used[w])
            .count();
        mapped == mapped_in_g2
    }
}
