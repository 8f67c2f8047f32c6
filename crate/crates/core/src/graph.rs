//! Undirected simple graphs in adjacency-list form, plus the handful of
//! metrics the rest of the crate leans on: BFS distances, girth, pitfalls
//! and dismantlability. Also the plain-text graph file format and DOT export.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for a graph with {count} vertices")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("line {line}: malformed header, expected `p <V> <E>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge, expected `<u> <v>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: {source}")]
    BadEdge {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing `p <V> <E>` header")]
    MissingHeader,
}

/// Immutable undirected simple graph on vertices `0..vertex_count`.
///
/// Adjacency lists are sorted and duplicate free; `v` appears in `adj[u]`
/// exactly when `u` appears in `adj[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Length of a shortest cycle, or `Infinite` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edge_list(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(GraphError::IndexOutOfRange {
                        index: x,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Graph with no vertices.
    pub fn empty() -> Self {
        Graph { adj: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree()?;
        (self.max_degree() == Some(d)).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        self.bfs_from(0).iter().all(Option::is_some)
    }

    /// Hop distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
        if source >= self.vertex_count() {
            return Err(GraphError::IndexOutOfRange {
                index: source,
                count: self.vertex_count(),
            });
        }
        Ok(self.bfs_from(source))
    }

    fn bfs_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or_default();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances as a dense row-major matrix, `usize::MAX` for
    /// unreachable pairs.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|s| {
                self.bfs_from(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .collect()
            })
            .collect()
    }

    /// Length of a shortest cycle.
    ///
    /// Runs a BFS from every vertex; a non-tree edge between `u` and `w`
    /// closes a walk of length `dist[u] + dist[w] + 1` that contains a cycle
    /// no longer than that, and the minimum over all roots is exact. Each
    /// search stops once its frontier cannot beat the best cycle so far.
    pub fn girth(&self) -> Girth {
        let n = self.vertex_count();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut touched = Vec::with_capacity(n);
        let mut queue = VecDeque::with_capacity(n);
        for root in 0..n {
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            queue.clear();
            dist[root] = 0;
            touched.push(root);
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 3 {
                break;
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// True when some vertex `u` has a neighbour `w` with `N[u] ⊆ N[w]`
    /// (closed neighbourhoods).
    pub fn has_pitfall(&self) -> bool {
        let alive = vec![true; self.vertex_count()];
        (0..self.vertex_count()).any(|u| self.dominator_of(u, &alive).is_some())
    }

    /// Whether repeatedly deleting pitfall vertices shrinks the graph to a
    /// single vertex. Equivalent to the graph being one-cop-win.
    pub fn dismantlable(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut alive = vec![true; n];
        let mut remaining = n;
        while remaining > 1 {
            let Some(u) = (0..n).find(|&u| alive[u] && self.dominator_of(u, &alive).is_some())
            else {
                return false;
            };
            alive[u] = false;
            remaining -= 1;
        }
        true
    }

    /// A live neighbour of `u` whose closed neighbourhood (restricted to live
    /// vertices) contains that of `u`.
    fn dominator_of(&self, u: usize, alive: &[bool]) -> Option<usize> {
        if !alive[u] {
            return None;
        }
        self.adj[u]
            .iter()
            .copied()
            .filter(|&w| alive[w])
            .find(|&w| {
                self.adj[u]
                    .iter()
                    .all(|&x| !alive[x] || x == w || self.has_edge(w, x))
            })
    }

    /// Parses the `p <V> <E>` edge-list format. Lines starting with `#` and
    /// blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    let parsed = match fields.as_slice() {
                        ["p", v, e] => v.parse().ok().zip(e.parse().ok()),
                        _ => None,
                    };
                    header = Some(parsed.ok_or(GraphError::MalformedHeader { line: line_no })?);
                }
                Some((vertex_count, _)) => {
                    let (u, v) = match fields.as_slice() {
                        [u, v] => u
                            .parse::<usize>()
                            .ok()
                            .zip(v.parse::<usize>().ok())
                            .ok_or(GraphError::MalformedEdge { line: line_no })?,
                        _ => return Err(GraphError::MalformedEdge { line: line_no }),
                    };
                    for x in [u, v] {
                        if x >= vertex_count {
                            return Err(GraphError::BadEdge {
                                line: line_no,
                                source: Box::new(GraphError::IndexOutOfRange {
                                    index: x,
                                    count: vertex_count,
                                }),
                            });
                        }
                    }
                    if u == v {
                        return Err(GraphError::BadEdge {
                            line: line_no,
                            source: Box::new(GraphError::SelfLoop(u)),
                        });
                    }
                    edges.push((u, v));
                }
            }
        }
        let (vertex_count, declared) = header.ok_or(GraphError::MissingHeader)?;
        if declared != edges.len() {
            return Err(GraphError::EdgeCountMismatch {
                declared,
                found: edges.len(),
            });
        }
        Graph::from_edge_list(vertex_count, edges)
    }

    /// Inverse of [`Graph::parse`].
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Undirected DOT; isolated vertices are listed so they survive export.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in (0..self.vertex_count()).filter(|&v| self.adj[v].is_empty()) {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vertex_count());
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&w| perm[w]).collect();
            adj[perm[u]].sort_unstable();
        }
        Graph { adj }
    }
}

/// Cycle `C_n` on vertices `0..n`.
pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
}

/// Path on `n` vertices.
pub fn path_graph(n: usize) -> Graph {
    Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid complete graph")
}
