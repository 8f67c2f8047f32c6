//! Symbolic coincidences among the vertices at distance 4 in `GP(n, k)`.
//!
//! Vertices near a root `x_i` are written `x_{i + p + q·k}` with symbolic
//! `p, q`. Walking the labelled distance-4 tree from an outer (A) or inner
//! (B) root gives the leaf labels; two same-ring leaves coincide exactly when
//! `Δq·k + Δp ≡ 0 (mod n)`, i.e. `a·n = Δq·k + Δp` for some integer `a`.
//! Each such identity that some valid `(n, k)` satisfies is a candidate
//! relation.

use std::collections::BTreeMap;
use std::fmt;

use crate::gp::GpParams;
use crate::relation::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    /// outer vertices `a_i`
    A,
    /// inner vertices `b_i`
    B,
}

/// The vertex `ring_{i + offset + k_multiple·k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub ring: Ring,
    pub offset: i64,
    pub k_multiple: i64,
}

impl Label {
    pub const fn root(ring: Ring) -> Self {
        Label {
            ring,
            offset: 0,
            k_multiple: 0,
        }
    }

    fn neighbors(self) -> [Label; 3] {
        let Label {
            ring,
            offset: p,
            k_multiple: q,
        } = self;
        let at = |ring, offset, k_multiple| Label {
            ring,
            offset,
            k_multiple,
        };
        match ring {
            Ring::A => [
                at(Ring::A, p + 1, q),
                at(Ring::A, p - 1, q),
                at(Ring::B, p, q),
            ],
            Ring::B => [
                at(Ring::B, p, q + 1),
                at(Ring::B, p, q - 1),
                at(Ring::A, p, q),
            ],
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.ring {
            Ring::A => 'a',
            Ring::B => 'b',
        };
        write!(f, "{ring}_(i")?;
        match self.k_multiple {
            0 => {}
            1 => write!(f, "+k")?,
            -1 => write!(f, "-k")?,
            q if q > 0 => write!(f, "+{q}k")?,
            q => write!(f, "{q}k")?,
        }
        match self.offset {
            0 => {}
            p if p > 0 => write!(f, "+{p}")?,
            p => write!(f, "{p}")?,
        }
        write!(f, ")")
    }
}

/// Distinct leaf labels of the distance-4 tree (non-backtracking walks of
/// length 4) from the root on `side`.
pub fn distance4_leaves(side: Ring) -> Vec<Label> {
    let mut walks = vec![(Label::root(side), None::<Label>)];
    for _ in 0..4 {
        walks = walks
            .into_iter()
            .flat_map(|(at, prev)| {
                at.neighbors()
                    .into_iter()
                    .filter(move |&x| Some(x) != prev)
                    .map(move |x| (x, Some(at)))
            })
            .collect();
    }
    let mut leaves: Vec<Label> = walks.into_iter().map(|(x, _)| x).collect();
    leaves.sort();
    leaves.dedup();
    leaves
}

/// A candidate relation with the leaf pairs it identifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceRelation {
    pub relation: Relation,
    pub side: Ring,
    pub witnesses: Vec<(Label, Label)>,
}

/// Largest `n` multiplier tried; with `|Δq| <= 4` and `2k < n` nothing
/// larger can have solutions.
const MAX_N_COEFF: i64 = 8;
const SOLUTION_SEARCH_K: usize = 500;

/// Every relation under which two distinct same-ring leaves of the tree
/// rooted on `side` coincide for some valid parameters.
pub fn candidate_relations(side: Ring) -> Vec<CoincidenceRelation> {
    let leaves = distance4_leaves(side);
    let mut found: BTreeMap<Relation, Vec<(Label, Label)>> = BTreeMap::new();
    for (i, x) in leaves.iter().enumerate() {
        for y in &leaves[i + 1..] {
            if x.ring != y.ring {
                continue;
            }
            let (dp, dq) = (y.offset - x.offset, y.k_multiple - x.k_multiple);
            for a in 0..=MAX_N_COEFF {
                for sign in [1, -1] {
                    let rel = Relation::linear(a, sign * dq, sign * dp);
                    if a == 0 && rel.k_coeff <= 0 {
                        continue;
                    }
                    if rel.gp_solutions(SOLUTION_SEARCH_K).next().is_none() {
                        continue;
                    }
                    let witnesses = found.entry(rel.normalized()).or_default();
                    if !witnesses.contains(&(*x, *y)) {
                        witnesses.push((*x, *y));
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|(relation, witnesses)| CoincidenceRelation {
            relation,
            side,
            witnesses,
        })
        .collect()
}

/// The candidate relations that hold for `p`.
pub fn distance4_coincidences(p: GpParams, side: Ring) -> Vec<CoincidenceRelation> {
    candidate_relations(side)
        .into_iter()
        .filter(|c| c.relation.holds(p.n(), p.k()))
        .collect()
}
