//! Rules of the classic game: cops move first, every pawn may pass or step to
//! a neighbour, and the game ends when a cop shares the robber's vertex.
//! Also the trapped / n-trapped predicates used by the structural analysis.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("vertex {vertex} is out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("cop positions must be sorted ascending")]
    UnsortedCops,
    #[error("the robber is already captured")]
    Captured,
    #[error("trap depth {depth} outside the supported range 2..={max}")]
    BadDepth { depth: usize, max: usize },
    #[error("illegal move: {0}")]
    IllegalMove(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Cops,
    Robber,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Cops => Side::Robber,
            Side::Robber => Side::Cops,
        }
    }
}

/// A position: sorted cop multiset, robber vertex and side to move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameState {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub to_move: Side,
}

impl GameState {
    /// Sorts the cop positions; no range checking.
    pub fn new(mut cops: Vec<usize>, robber: usize, to_move: Side) -> Self {
        cops.sort_unstable();
        GameState {
            cops,
            robber,
            to_move,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GameError> {
        let count = g.vertex_count();
        for &v in self.cops.iter().chain(std::iter::once(&self.robber)) {
            if v >= count {
                return Err(GameError::VertexOutOfRange { vertex: v, count });
            }
        }
        if self.cops.windows(2).any(|w| w[0] > w[1]) {
            return Err(GameError::UnsortedCops);
        }
        Ok(())
    }

    pub fn is_capture(&self) -> bool {
        is_capture(&self.cops, self.robber)
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.to_move {
            Side::Cops => "cops",
            Side::Robber => "robber",
        };
        write!(
            f,
            "cops={:?} robber={} to_move={side}",
            self.cops, self.robber
        )
    }
}

/// A move for the side to play. `Cops` lists one destination per cop in the
/// order of the (sorted) current positions; staying put is a pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Cops(Vec<usize>),
    Robber(usize),
}

impl Move {
    pub fn apply(&self, g: &Graph, s: &GameState) -> Result<GameState, GameError> {
        s.validate(g)?;
        let step_ok = |from: usize, to: usize| from == to || g.has_edge(from, to);
        match (self, s.to_move) {
            (Move::Cops(dest), Side::Cops) => {
                if dest.len() != s.cops.len() {
                    return Err(GameError::IllegalMove(format!(
                        "{} destinations for {} cops",
                        dest.len(),
                        s.cops.len()
                    )));
                }
                if let Some((&from, &to)) = s.cops.iter().zip(dest).find(|&(&a, &b)| !step_ok(a, b))
                {
                    return Err(GameError::IllegalMove(format!("cop {from} -> {to}")));
                }
                Ok(GameState::new(dest.clone(), s.robber, Side::Robber))
            }
            (Move::Robber(to), Side::Robber) if step_ok(s.robber, *to) => {
                Ok(GameState::new(s.cops.clone(), *to, Side::Cops))
            }
            (Move::Robber(to), Side::Robber) => Err(GameError::IllegalMove(format!(
                "robber {} -> {to}",
                s.robber
            ))),
            _ => Err(GameError::IllegalMove("wrong side to move".into())),
        }
    }
}

pub fn is_capture(cops: &[usize], robber: usize) -> bool {
    cops.contains(&robber)
}

/// `v` followed by its neighbours.
pub fn closed_neighborhood(g: &Graph, v: usize) -> impl Iterator<Item = usize> + '_ {
    std::iter::once(v).chain(g.neighbors(v).iter().copied())
}

/// Every joint cop move as a destination tuple aligned with `cops`, one per
/// combination of per-cop choices (so `∏(deg + 1)` entries, duplicates
/// included).
pub fn cop_move_tuples(g: &Graph, cops: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(cops.len())];
    for &c in cops {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                closed_neighborhood(g, c).map(move |d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    out
}

/// Distinct cop multisets reachable in one cop move, sorted.
pub fn cop_successors(g: &Graph, cops: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = cop_move_tuples(g, cops)
        .into_iter()
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Successor states of `s`, one per move combination (duplicates kept):
/// `∏(deg(cop)+1)` for the cops, `deg(robber)+1` for the robber.
pub fn legal_moves(g: &Graph, s: &GameState) -> Result<Vec<GameState>, GameError> {
    s.validate(g)?;
    Ok(match s.to_move {
        Side::Cops => cop_move_tuples(g, &s.cops)
            .into_iter()
            .map(|t| GameState::new(t, s.robber, Side::Robber))
            .collect(),
        Side::Robber => closed_neighborhood(g, s.robber)
            .map(|r| GameState::new(s.cops.clone(), r, Side::Cops))
            .collect(),
    })
}

/// Distinct successor states of `s`.
pub fn distinct_successors(g: &Graph, s: &GameState) -> Result<Vec<GameState>, GameError> {
    let mut out = legal_moves(g, s)?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Every edge at the robber has a cop within distance two along it: on the
/// neighbour itself, or on a neighbour of that neighbour.
pub fn trapped(g: &Graph, cops: &[usize], robber: usize) -> Result<bool, GameError> {
    check_position(g, cops, robber)?;
    Ok(trapped_unchecked(g, cops, robber))
}

fn trapped_unchecked(g: &Graph, cops: &[usize], robber: usize) -> bool {
    g.neighbors(robber)
        .iter()
        .all(|&v| cops.iter().any(|&c| c == v || g.has_edge(c, v)))
}

/// Upper bound on the recursion depth accepted by [`TrapProbe`].
pub const DEFAULT_MAX_TRAP_DEPTH: usize = 4;

/// Depth-limited evaluator for the n-trapped predicate.
#[derive(Debug, Clone, Copy)]
pub struct TrapProbe {
    pub max_depth: usize,
}

impl Default for TrapProbe {
    fn default() -> Self {
        TrapProbe {
            max_depth: DEFAULT_MAX_TRAP_DEPTH,
        }
    }
}

impl TrapProbe {
    /// Every robber move other than a pass either runs into a cop or admits a
    /// cop reply that captures him or leaves him `(depth-1)`-trapped; depth 1
    /// is plain [`trapped`].
    pub fn n_trapped(
        &self,
        g: &Graph,
        cops: &[usize],
        robber: usize,
        depth: usize,
    ) -> Result<bool, GameError> {
        if depth < 2 || depth > self.max_depth {
            return Err(GameError::BadDepth {
                depth,
                max: self.max_depth,
            });
        }
        check_position(g, cops, robber)?;
        Ok(n_trapped_unchecked(g, cops, robber, depth))
    }
}

pub fn n_trapped(
    g: &Graph,
    cops: &[usize],
    robber: usize,
    depth: usize,
) -> Result<bool, GameError> {
    TrapProbe::default().n_trapped(g, cops, robber, depth)
}

pub(crate) fn n_trapped_unchecked(g: &Graph, cops: &[usize], robber: usize, depth: usize) -> bool {
    if depth <= 1 {
        return trapped_unchecked(g, cops, robber);
    }
    let replies = cop_successors(g, cops);
    g.neighbors(robber).iter().all(|&u| {
        is_capture(cops, u)
            || replies
                .iter()
                .any(|reply| is_capture(reply, u) || n_trapped_unchecked(g, reply, u, depth - 1))
    })
}

fn check_position(g: &Graph, cops: &[usize], robber: usize) -> Result<(), GameError> {
    let count = g.vertex_count();
    for &v in cops.iter().chain(std::iter::once(&robber)) {
        if v >= count {
            return Err(GameError::VertexOutOfRange { vertex: v, count });
        }
    }
    if is_capture(cops, robber) {
        return Err(GameError::Captured);
    }
    Ok(())
}
