//! Exact cops-and-robbers computations on generalized Petersen graphs and
//! arbitrary small graphs.

pub mod coincidence;
pub mod game;
pub mod gp;
pub mod graph;
pub mod multiset;
pub mod oracle;
pub mod relation;
pub mod solver;
pub mod structure;
pub mod tables;

pub use game::{GameError, GameState, Move, Side};
pub use gp::{build_gp, classify, ClassificationReport, GpParams, ParamError};
pub use graph::{Girth, Graph, GraphError};
pub use relation::Relation;
pub use solver::{
    cop_number, cops_win, optimal_cop_move, CopNumber, SolveError, SolveResult, SolverConfig,
};
