//! Slow, independent game evaluator used to cross-check the solver.
//!
//! Positions are kept in a hash map keyed by the raw state. Values are found
//! by depth-bounded minimax evaluated bottom-up: `won[d]` holds the states the
//! cops win within `d` plies. A play longer than the number of distinct
//! states must repeat a state, and a repeated state is scored as a robber
//! win, so iterating until nothing changes gives the exact game value.

use std::collections::HashSet;

use crate::game::{distinct_successors, GameState, Side};
use crate::graph::Graph;
use crate::solver::SolveError;

pub const ORACLE_MAX_VERTICES: usize = 12;
pub const ORACLE_MAX_COPS: usize = 2;

fn multisets(universe: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(universe, size - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for c in lo..universe {
            let mut m = rest.clone();
            m.push(c);
            out.push(m);
        }
    }
    out
}

/// Whether `cop_count` cops win on `g`, computed without the solver's tables.
pub fn naive_minimax_oracle(g: &Graph, cop_count: usize) -> Result<bool, SolveError> {
    let v = g.vertex_count();
    if v > ORACLE_MAX_VERTICES || cop_count > ORACLE_MAX_COPS || cop_count == 0 {
        return Err(SolveError::OracleCap {
            max_vertices: ORACLE_MAX_VERTICES,
            max_cops: ORACLE_MAX_COPS,
        });
    }
    if v == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let placements = multisets(v, cop_count);
    let mut states = Vec::new();
    for cops in &placements {
        for r in 0..v {
            for side in [Side::Cops, Side::Robber] {
                states.push(GameState::new(cops.clone(), r, side));
            }
        }
    }
    let successors: Vec<Vec<GameState>> = states
        .iter()
        .map(|s| distinct_successors(g, s))
        .collect::<Result<_, _>>()?;

    let mut won: HashSet<GameState> = states.iter().filter(|s| s.is_capture()).cloned().collect();
    for _ in 0..states.len() {
        let next: HashSet<GameState> = states
            .iter()
            .zip(&successors)
            .filter(|(s, succ)| {
                won.contains(*s)
                    || match s.to_move {
                        Side::Cops => succ.iter().any(|t| won.contains(t)),
                        Side::Robber => succ.iter().all(|t| won.contains(t)),
                    }
            })
            .map(|(s, _)| s.clone())
            .collect();
        if next.len() == won.len() {
            break;
        }
        won = next;
    }
    Ok(placements
        .iter()
        .any(|cops| (0..v).all(|r| won.contains(&GameState::new(cops.clone(), r, Side::Cops)))))
}
