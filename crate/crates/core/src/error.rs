use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Fewer trial functions than boundary equations; the boundary equations
    /// alone can then force the trivial solution.
    #[error(
        "degenerate configuration: {n_tot} trial functions vs {s_tot} boundary equations \
         (need N_tot > s_tot)"
    )]
    DegenerateConfiguration { n_tot: usize, s_tot: usize },

    #[error("constraint matrix has rank {rank} < {s_tot}; dependent rows {rows:?}")]
    ConstraintDegenerate {
        rank: usize,
        s_tot: usize,
        rows: Vec<usize>,
    },

    #[error("singular saddle-point system (smallest singular value {sigma_min:e})")]
    SingularSystem { sigma_min: f64 },

    #[error("reduced mass matrix is not positive definite")]
    MassDegenerate,

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("internal error: {0}")]
    Internal(String),
}
