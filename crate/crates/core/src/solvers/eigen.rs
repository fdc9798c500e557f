use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};

use super::linalg::{dependent_rows, nullspace_basis, rank_of, RankTolerance};
use crate::{Error, Result};

/// Eigenpairs of the constrained pencil, ascending in `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    /// `μ_i = ω_i²`.
    pub eigenvalues: Vec<f64>,
    pub frequencies: Vec<f64>,
    /// Column `i` holds the coefficients of mode `i`, normalized to `cᵀMc = 1`.
    pub modes: DMatrix<f64>,
    /// Column `i` holds the multipliers of mode `i`.
    pub multipliers: DMatrix<f64>,
}

impl ModeSet {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Finite eigenpairs of
///
/// ```text
/// ( [K Lᵀ; L 0] - μ [M 0; 0 0] ) (c; λ) = 0
/// ```
///
/// by restriction to `ker(L)`: with `c = Z y`, `(ZᵀKZ) y = μ (ZᵀMZ) y`.
pub fn solve_constrained_gevp(
    k: &DMatrix<f64>,
    m: &DMatrix<f64>,
    l: &DMatrix<f64>,
) -> Result<ModeSet> {
    let n = k.nrows();
    if k.shape() != (n, n) || m.shape() != (n, n) || (l.nrows() > 0 && l.ncols() != n) {
        return Err(Error::InvalidArgument(format!(
            "incompatible shapes K {:?}, M {:?}, L {:?}",
            k.shape(),
            m.shape(),
            l.shape()
        )));
    }
    let s = l.nrows();
    if s > 0 {
        let rank = rank_of(l, RankTolerance::Default).rank;
        if rank < s {
            return Err(Error::ConstraintDegenerate {
                rank,
                s_tot: s,
                rows: dependent_rows(l, RankTolerance::Default),
            });
        }
    }
    let z = if s > 0 {
        nullspace_basis(l)
    } else {
        DMatrix::identity(n, n)
    };
    let kr = z.transpose() * k * &z;
    let mr = z.transpose() * m * &z;
    let kr = (&kr + kr.transpose()) * 0.5;
    let mr = (&mr + mr.transpose()) * 0.5;

    let chol = mr.cholesky().ok_or(Error::MassDegenerate)?;
    let r = chol.l();
    // A = R⁻¹ Kr R⁻ᵀ.
    let tmp = r.solve_lower_triangular(&kr).ok_or(Error::MassDegenerate)?;
    let a = r
        .solve_lower_triangular(&tmp.transpose())
        .ok_or(Error::MassDegenerate)?;
    let a = (&a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(a);

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let rt = r.transpose();
    let count = order.len();
    let mut modes = DMatrix::zeros(n, count);
    let mut multipliers = DMatrix::zeros(s, count);
    let mut eigenvalues = Vec::with_capacity(count);
    let lt_svd = (s > 0).then(|| SVD::new(l.transpose(), true, true));
    for (col, &idx) in order.iter().enumerate() {
        let mu = eig.eigenvalues[idx];
        let v = eig.eigenvectors.column(idx).into_owned();
        let y = rt.solve_upper_triangular(&v).ok_or(Error::MassDegenerate)?;
        let mut c = &z * y;
        let imax = c.iamax();
        if c[imax] < 0.0 {
            c.neg_mut();
        }
        if let Some(svd) = &lt_svd {
            // Lᵀλ = μMc - Kc, consistent by construction.
            let rhs: DVector<f64> = m * &c * mu - k * &c;
            let lambda = svd
                .solve(&rhs, 0.0)
                .map_err(|e| Error::Internal(e.into()))?;
            multipliers.set_column(col, &lambda);
        }
        modes.set_column(col, &c);
        eigenvalues.push(mu);
    }
    Ok(ModeSet {
        frequencies: eigenvalues.iter().map(|&mu| mu.max(0.0).sqrt()).collect(),
        eigenvalues,
        modes,
        multipliers,
    })
}
