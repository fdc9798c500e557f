//! Saddle-point solves, the constrained generalized eigenproblem and the
//! consistency classification of square systems.

mod consistency;
mod eigen;
mod linalg;
mod saddle;

pub use consistency::{
    boundary_term_system, classify_square_system, tau_system, ConsistencyVerdict, VerdictTag,
    CONSISTENCY_RANK_RTOL, INCONSISTENCY_THRESHOLD, TRIVIAL_SOLUTION_TOL, ZERO_RHS_RTOL,
};
pub use eigen::{solve_constrained_gevp, ModeSet};
pub use linalg::{dependent_rows, nullspace_basis, rank_of, RankInfo, RankTolerance};
pub use saddle::{solve_saddle, TrialSolution, CONDITION_WARNING};
