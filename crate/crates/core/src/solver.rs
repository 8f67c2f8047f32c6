//! Exact k-cop game values by retrograde analysis over the dense state space.
//!
//! A state is `(cop multiset, robber vertex, side to move)`. Cop multisets are
//! ranked with [`MultisetIndexer`], so each side's table is a flat array
//! indexed by `rank * V + robber`. Starting from the capture states, wins are
//! propagated backwards in FIFO order: a cop-to-move state is won as soon as
//! one successor is, a robber-to-move state once its counter of unresolved
//! successors reaches zero. Anything never reached is a robber win (the robber
//! can evade forever). Processing in FIFO order makes the recorded ply counts
//! optimal for both sides.

use std::fmt;

use thiserror::Error;

use crate::game::{cop_move_tuples, is_capture, GameError, GameState, Move, Side};
use crate::graph::Graph;
use crate::multiset::MultisetIndexer;

const UNRESOLVED: u16 = u16::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("cop count {got} outside 1..={max}")]
    CopCount { got: usize, max: usize },
    #[error(
        "state space of {states} states needs ~{required} bytes, over the {budget}-byte budget"
    )]
    BudgetExceeded {
        states: u64,
        required: u64,
        budget: u64,
    },
    #[error("maximum degree {0} is too large for the solver's counters")]
    DegreeTooLarge(usize),
    #[error("capture times exceed the table range")]
    CaptureTimeOverflow,
    #[error("state has {got} cops but the table was solved for {expected}")]
    WrongCopCount { got: usize, expected: usize },
    #[error("state is not a cop win")]
    RobberWins,
    #[error("it is not the cops' turn")]
    NotCopsTurn,
    #[error("the robber is already captured")]
    AlreadyCaptured,
    #[error("oracle limited to {max_vertices} vertices and {max_cops} cops")]
    OracleCap {
        max_vertices: usize,
        max_cops: usize,
    },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Largest cop count accepted.
    pub max_cops: usize,
    /// The solver refuses state spaces whose tables would exceed this.
    pub memory_budget: u64,
    /// How many winning initial placements to keep in the result.
    pub placement_limit: usize,
}

pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_cops: 4,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            placement_limit: 16,
        }
    }
}

/// Outcome of a solve for a fixed number of cops.
#[derive(Debug, Clone)]
pub struct SolveResult {
    cop_count: usize,
    graph: Graph,
    indexer: MultisetIndexer,
    /// plies to capture from each cop-to-move state, `UNRESOLVED` if robber wins
    cop_time: Vec<u16>,
    robber_time: Vec<u16>,
    cops_win_overall: bool,
    winning_placements: Vec<Vec<usize>>,
    winning_placement_count: u64,
}

impl SolveResult {
    pub fn cop_count(&self) -> usize {
        self.cop_count
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Some placement of the cops beats every robber placement.
    pub fn cops_win_overall(&self) -> bool {
        self.cops_win_overall
    }

    /// Winning placements, truncated to the configured limit.
    pub fn winning_initial_placements(&self) -> &[Vec<usize>] {
        &self.winning_placements
    }

    pub fn winning_placement_count(&self) -> u64 {
        self.winning_placement_count
    }

    /// Total states over both sides.
    pub fn state_count(&self) -> u64 {
        2 * self.cop_time.len() as u64
    }

    pub fn cop_win_state_count(&self) -> u64 {
        self.cop_time
            .iter()
            .chain(&self.robber_time)
            .filter(|&&t| t != UNRESOLVED)
            .count() as u64
    }

    fn index(&self, s: &GameState) -> Result<usize, SolveError> {
        s.validate(&self.graph)?;
        if s.cops.len() != self.cop_count {
            return Err(SolveError::WrongCopCount {
                got: s.cops.len(),
                expected: self.cop_count,
            });
        }
        let v = self.graph.vertex_count();
        Ok(self.indexer.rank(&s.cops) as usize * v + s.robber)
    }

    fn time_at(&self, side: Side, idx: usize) -> u16 {
        match side {
            Side::Cops => self.cop_time[idx],
            Side::Robber => self.robber_time[idx],
        }
    }

    pub fn is_cop_win(&self, s: &GameState) -> Result<bool, SolveError> {
        let idx = self.index(s)?;
        Ok(self.time_at(s.to_move, idx) != UNRESOLVED)
    }

    /// Plies (half-moves) until capture under optimal play, `None` for robber
    /// wins.
    pub fn capture_time_plies(&self, s: &GameState) -> Result<Option<u32>, SolveError> {
        let idx = self.index(s)?;
        let t = self.time_at(s.to_move, idx);
        Ok((t != UNRESOLVED).then_some(u32::from(t)))
    }

    /// Capture time counted in cop turns (captures always happen on a cop
    /// move, so this is the ply count halved and rounded up).
    pub fn capture_time_cop_turns(&self, s: &GameState) -> Result<Option<u32>, SolveError> {
        Ok(self.capture_time_plies(s)?.map(|p| p.div_ceil(2)))
    }

    /// Visits every state of one side as `(cops, robber, plies)`.
    pub fn for_each_state(&self, side: Side, mut f: impl FnMut(&[usize], usize, Option<u32>)) {
        let v = self.graph.vertex_count();
        let mut cops = vec![0; self.cop_count];
        for m in 0..self.indexer.count() {
            self.indexer.unrank_into(m, &mut cops);
            for r in 0..v {
                let t = self.time_at(side, m as usize * v + r);
                f(&cops, r, (t != UNRESOLVED).then_some(u32::from(t)));
            }
        }
    }
}

/// Solves the game for `cop_count` cops on a connected graph.
pub fn cops_win(
    g: &Graph,
    cop_count: usize,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let v = g.vertex_count();
    if v == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if cop_count == 0 || cop_count > config.max_cops {
        return Err(SolveError::CopCount {
            got: cop_count,
            max: config.max_cops,
        });
    }
    let max_deg = g.max_degree().unwrap_or(0);
    if max_deg >= u8::MAX as usize {
        return Err(SolveError::DegreeTooLarge(max_deg));
    }

    let indexer = MultisetIndexer::new(v, cop_count);
    let multisets = indexer.count();
    let per_side = multisets * v as u64;
    let fanout = ((max_deg + 1) as u64)
        .saturating_pow(cop_count as u32)
        .min(multisets);
    // two time tables, counters, a FIFO of u32 over both sides, and the
    // cop-move adjacency
    let required = per_side * (2 + 2 + 1 + 8) + multisets * (fanout * 4 + 8);
    if required > config.memory_budget || 2 * per_side > u64::from(u32::MAX) {
        return Err(SolveError::BudgetExceeded {
            states: 2 * per_side,
            required,
            budget: config.memory_budget,
        });
    }
    let per_side = per_side as usize;

    let moves = CopMoveTable::build(g, &indexer);
    let closed: Vec<Vec<u32>> = (0..v)
        .map(|x| {
            std::iter::once(x)
                .chain(g.neighbors(x).iter().copied())
                .map(|y| y as u32)
                .collect()
        })
        .collect();

    let mut cop_time = vec![UNRESOLVED; per_side];
    let mut robber_time = vec![UNRESOLVED; per_side];
    let mut pending: Vec<u8> = Vec::with_capacity(per_side);
    for _ in 0..multisets {
        pending.extend(closed.iter().map(|c| c.len() as u8));
    }

    const COP: u32 = 0;
    const ROBBER: u32 = 1;
    let mut queue: Vec<u32> = Vec::new();
    let mut cops = vec![0; cop_count];
    for m in 0..multisets {
        indexer.unrank_into(m, &mut cops);
        for (i, &c) in cops.iter().enumerate() {
            if i > 0 && cops[i - 1] == c {
                continue;
            }
            let idx = m as usize * v + c;
            cop_time[idx] = 0;
            robber_time[idx] = 0;
            queue.push((idx as u32) << 1 | ROBBER);
            queue.push((idx as u32) << 1 | COP);
        }
    }

    let mut head = 0;
    while head < queue.len() {
        let entry = queue[head];
        head += 1;
        let idx = (entry >> 1) as usize;
        let (m, r) = (idx / v, idx % v);
        if entry & 1 == ROBBER {
            let t = robber_time[idx];
            if t == UNRESOLVED - 1 {
                return Err(SolveError::CaptureTimeOverflow);
            }
            for &pred in moves.neighbors(m) {
                let j = pred as usize * v + r;
                if cop_time[j] == UNRESOLVED {
                    cop_time[j] = t + 1;
                    queue.push((j as u32) << 1 | COP);
                }
            }
        } else {
            let t = cop_time[idx];
            if t == UNRESOLVED - 1 {
                return Err(SolveError::CaptureTimeOverflow);
            }
            for &from in &closed[r] {
                let j = m * v + from as usize;
                if robber_time[j] != UNRESOLVED {
                    continue;
                }
                pending[j] -= 1;
                if pending[j] == 0 {
                    robber_time[j] = t + 1;
                    queue.push((j as u32) << 1 | ROBBER);
                }
            }
        }
    }
    drop(queue);

    let mut winning_placements = Vec::new();
    let mut winning_placement_count = 0;
    for m in 0..multisets {
        let base = m as usize * v;
        if cop_time[base..base + v].iter().all(|&t| t != UNRESOLVED) {
            winning_placement_count += 1;
            if winning_placements.len() < config.placement_limit {
                winning_placements.push(indexer.unrank(m));
            }
        }
    }

    Ok(SolveResult {
        cop_count,
        graph: g.clone(),
        indexer,
        cop_time,
        robber_time,
        cops_win_overall: winning_placement_count > 0,
        winning_placements,
        winning_placement_count,
    })
}

/// Distinct cop multisets one cop move away from each multiset, in CSR form.
/// The relation is symmetric, so it doubles as the predecessor relation.
struct CopMoveTable {
    offsets: Vec<u64>,
    targets: Vec<u32>,
}

impl CopMoveTable {
    fn build(g: &Graph, indexer: &MultisetIndexer) -> Self {
        let k = indexer.size();
        let mut offsets = Vec::with_capacity(indexer.count() as usize + 1);
        let mut targets = Vec::new();
        let mut cops = vec![0; k];
        let mut choice = vec![0usize; k];
        let mut tuple = vec![0; k];
        let mut ranks = Vec::new();
        offsets.push(0);
        for m in 0..indexer.count() {
            indexer.unrank_into(m, &mut cops);
            let options: Vec<&[usize]> = cops.iter().map(|&c| g.neighbors(c)).collect();
            choice.iter_mut().for_each(|c| *c = 0);
            ranks.clear();
            // odometer over closed neighbourhoods: choice 0 means stay
            loop {
                for i in 0..k {
                    tuple[i] = if choice[i] == 0 {
                        cops[i]
                    } else {
                        options[i][choice[i] - 1]
                    };
                }
                tuple.sort_unstable();
                ranks.push(indexer.rank(&tuple) as u32);
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    choice[i] += 1;
                    if choice[i] <= options[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
            ranks.sort_unstable();
            ranks.dedup();
            targets.extend_from_slice(&ranks);
            offsets.push(targets.len() as u64);
        }
        CopMoveTable { offsets, targets }
    }

    fn neighbors(&self, m: usize) -> &[u32] {
        &self.targets[self.offsets[m] as usize..self.offsets[m + 1] as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopNumber {
    Exactly(usize),
    /// No cop count up to the given maximum wins.
    ExceedsMax(usize),
}

impl fmt::Display for CopNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopNumber::Exactly(c) => write!(f, "{c}"),
            CopNumber::ExceedsMax(m) => write!(f, ">{m}"),
        }
    }
}

/// Least cop count up to `max_cops` that wins.
pub fn cop_number(
    g: &Graph,
    max_cops: usize,
    config: &SolverConfig,
) -> Result<CopNumber, SolveError> {
    let config = SolverConfig {
        max_cops: config.max_cops.max(max_cops),
        ..*config
    };
    for k in 1..=max_cops {
        if cops_win(g, k, &config)?.cops_win_overall() {
            return Ok(CopNumber::Exactly(k));
        }
    }
    Ok(CopNumber::ExceedsMax(max_cops))
}

/// A fastest-capturing cop move from a winning cop-to-move state; ties go to
/// the lexicographically smallest resulting multiset.
pub fn optimal_cop_move(result: &SolveResult, s: &GameState) -> Result<Move, SolveError> {
    if s.to_move != Side::Cops {
        return Err(SolveError::NotCopsTurn);
    }
    if !result.is_cop_win(s)? {
        return Err(SolveError::RobberWins);
    }
    if is_capture(&s.cops, s.robber) {
        return Err(SolveError::AlreadyCaptured);
    }
    let v = result.graph.vertex_count();
    let mut best: Option<(u16, Vec<usize>, Vec<usize>)> = None;
    for tuple in cop_move_tuples(&result.graph, &s.cops) {
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        let t = result.robber_time[result.indexer.rank(&sorted) as usize * v + s.robber];
        if t == UNRESOLVED {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bt, bs, _)) => (t, &sorted) < (*bt, bs),
        };
        if better {
            best = Some((t, sorted, tuple));
        }
    }
    best.map(|(_, _, tuple)| Move::Cops(tuple))
        .ok_or(SolveError::RobberWins)
}
