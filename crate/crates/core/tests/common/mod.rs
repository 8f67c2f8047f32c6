#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use copnum_core::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One row of the published appendix table.
#[derive(Debug, Clone)]
pub struct PublishedRow {
    pub n: usize,
    pub k: usize,
    /// Relation column with `$` and spaces removed, entries split on `,`.
    pub relations: Vec<String>,
    pub iso_min_k: Option<usize>,
    pub girth: usize,
    pub cop_number: usize,
    pub theory: bool,
}

pub fn published_appendix() -> Vec<PublishedRow> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/appendix_published.csv"
    );
    let mut reader = csv::Reader::from_path(path).expect("published appendix data");
    reader
        .records()
        .map(|rec| {
            let rec = rec.unwrap();
            let num = |i: usize| rec[i].parse::<usize>().unwrap();
            PublishedRow {
                n: num(0),
                k: num(1),
                relations: rec[2]
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect(),
                iso_min_k: (!rec[3].is_empty()).then(|| num(3)),
                girth: num(4),
                cop_number: num(5),
                theory: &rec[6] == "theory",
            }
        })
        .collect()
}

pub fn published_by_params() -> HashMap<(usize, usize), PublishedRow> {
    published_appendix()
        .into_iter()
        .map(|r| ((r.n, r.k), r))
        .collect()
}

/// The published four-cop table: `n`, the `k` values, and their girths.
const TABLE2_PRINTED: &[(usize, &[usize], &[usize])] = &[
    (25, &[7], &[8]),
    (26, &[10], &[8]),
    (27, &[6], &[8]),
    (28, &[6, 8], &[8, 7]),
    (29, &[8, 11, 12], &[8, 8, 8]),
    (31, &[7, 9, 12, 13], &[8, 8, 8, 8]),
    (32, &[6, 7, 9, 12], &[8, 8, 8, 8]),
    (33, &[6, 7, 9, 14], &[8, 8, 8, 8]),
    (34, &[6, 10, 13, 14], &[8, 8, 8, 8]),
    (35, &[6, 8, 10, 13, 15], &[8, 8, 7, 8, 7]),
    (36, &[8, 10, 14, 15], &[8, 8, 8, 8]),
    (37, &[6, 7, 8, 10, 11, 14, 16], &[8; 7]),
    (38, &[6, 7, 8, 11, 14, 16], &[8; 6]),
    (39, &[6, 7, 9, 11, 15, 16, 17], &[8; 7]),
    (40, &[6, 7, 9, 11, 12, 15, 17], &[8; 7]),
];

/// `(n, k, girth)` for every four-cop table entry, sorted.
pub fn table2() -> Vec<(usize, usize, usize)> {
    TABLE2_PRINTED
        .iter()
        .flat_map(|&(n, ks, gs)| ks.iter().zip(gs).map(move |(&k, &g)| (n, k, g)))
        .collect()
}

fn adjacency_mask(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    let mut mask = 0u64;
    for &(u, v) in edges {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        mask |= 1 << (a * n + b);
    }
    mask
}

/// Canonical adjacency bitmask: the smallest mask over relabellings that
/// list vertices in order of degree.
fn canonical_mask(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut best = u64::MAX;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    permute_within_classes(&order, &deg, 0, &mut |ord| {
        let mut perm = vec![0; n];
        for (pos, &v) in ord.iter().enumerate() {
            perm[v] = pos;
        }
        best = best.min(adjacency_mask(n, edges, &perm));
    });
    best
}

fn permute_within_classes(
    order: &[usize],
    deg: &[usize],
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if start == order.len() {
        f(order);
        return;
    }
    let mut end = start;
    while end < order.len() && deg[order[end]] == deg[order[start]] {
        end += 1;
    }
    let class: Vec<usize> = order[start..end].to_vec();
    let mut idx: Vec<usize> = (0..class.len()).collect();
    loop {
        let mut next = order.to_vec();
        for (i, &j) in idx.iter().enumerate() {
            next[start + i] = class[j];
        }
        permute_within_classes(&next, deg, end, f);
        if !next_permutation(&mut idx) {
            break;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Every connected graph on `1..=max_n` vertices, one per isomorphism class.
/// Each connected graph has a vertex whose removal leaves it connected, so
/// extending the classes on `n - 1` vertices by a new vertex with a
/// non-empty neighbourhood reaches every class on `n`.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    all.push(Graph::from_edge_list(1, []).unwrap());
    for n in 2..=max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for edges in &layer {
            for subset in 1u32..(1 << (n - 1)) {
                let mut e = edges.clone();
                e.extend(
                    (0..n - 1)
                        .filter(|&i| subset >> i & 1 == 1)
                        .map(|i| (i, n - 1)),
                );
                if seen.insert(canonical_mask(n, &e)) {
                    next.push(e);
                }
            }
        }
        all.extend(
            next.iter()
                .map(|e| Graph::from_edge_list(n, e.iter().copied()).unwrap()),
        );
        layer = next;
    }
    all
}

/// Random connected graphs: a random spanning tree plus each remaining pair
/// with a per-graph probability.
pub fn random_connected_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let density: f64 = rng.gen_range(0.0..0.8);
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edge_list(n, edges).unwrap()
        })
        .collect()
}
