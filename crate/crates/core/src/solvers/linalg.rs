use nalgebra::{DMatrix, SVD};

/// Threshold policy for numerical rank decisions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RankTolerance {
    /// `max(rows, cols) · ε · σ_max`.
    #[default]
    Default,
    /// `rtol · σ_max`.
    Relative(f64),
    Absolute(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankInfo {
    pub rank: usize,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
}

impl RankTolerance {
    pub(crate) fn threshold(self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        match self {
            RankTolerance::Default => rows.max(cols) as f64 * f64::EPSILON * sigma_max,
            RankTolerance::Relative(rtol) => rtol * sigma_max,
            RankTolerance::Absolute(t) => t,
        }
    }
}

/// Numerical rank from the singular values.
pub fn rank_of(a: &DMatrix<f64>, tol: RankTolerance) -> RankInfo {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return RankInfo {
            rank: 0,
            singular_values: Vec::new(),
            threshold: 0.0,
        };
    }
    let singular_values: Vec<f64> = SVD::new(a.clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold = tol.threshold(rows, cols, sigma_max);
    let rank = singular_values
        .iter()
        .filter(|&&s| s > threshold && s > 0.0)
        .count();
    RankInfo {
        rank,
        singular_values,
        threshold,
    }
}

/// Rows of `a` that do not raise the rank when added in order; these are the
/// rows responsible for a rank deficiency.
pub fn dependent_rows(a: &DMatrix<f64>, tol: RankTolerance) -> Vec<usize> {
    let full = rank_of(a, tol);
    let mut rows = Vec::new();
    let mut rank = 0;
    for j in 0..a.nrows() {
        let sub = a.rows(0, j + 1).into_owned();
        // Use the full matrix's threshold so that all prefixes are judged alike.
        let r = rank_of(&sub, RankTolerance::Absolute(full.threshold)).rank;
        if r == rank {
            rows.push(j);
        }
        rank = r;
    }
    rows
}

/// Orthonormal basis of `ker(L)` as the columns of the returned matrix.
pub fn nullspace_basis(l: &DMatrix<f64>) -> DMatrix<f64> {
    let n = l.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if l.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let rank = rank_of(l, RankTolerance::Default).rank;
    // Pad with zero rows so the SVD yields a full set of right singular vectors.
    let padded = if l.nrows() >= n {
        l.clone()
    } else {
        let mut p = DMatrix::zeros(n, n);
        p.rows_mut(0, l.nrows()).copy_from(l);
        p
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    // Singular values are sorted descending; the trailing rows of Vᵀ span the kernel.
    let mut z = v_t.rows(rank, n - rank).transpose();
    // Deterministic orientation: the largest entry of each column is positive.
    for mut col in z.column_iter_mut() {
        let imax = col.iamax();
        if col[imax] < 0.0 {
            col.neg_mut();
        }
    }
    z
}
