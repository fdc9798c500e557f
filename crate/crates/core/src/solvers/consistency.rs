use nalgebra::{DMatrix, DVector, SVD};

use super::linalg::{rank_of, RankTolerance};
use crate::assembly::ScalarField;
use crate::basis::{Basis1D, EndpointFunctional};
use crate::quadrature::{composite_rule, default_panels, QuadratureRule1D, DEFAULT_ORDER};
use crate::{Error, Result};

/// Relative singular-value cutoff for rank decisions on quadrature-assembled
/// systems; their round-off sits near `1e-14`.
pub const CONSISTENCY_RANK_RTOL: f64 = 1e-10;
/// Relative least-squares residual above which a system is inconsistent.
pub const INCONSISTENCY_THRESHOLD: f64 = 1e-8;
/// `‖b‖ / ‖A‖₂` below which the right-hand side counts as zero.
pub const ZERO_RHS_RTOL: f64 = 1e-12;
/// `‖x‖_∞` below which a unique solution counts as the zero vector.
pub const TRIVIAL_SOLUTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    UniqueSolution,
    Inconsistent,
    Underdetermined,
    TrivialOnly,
}

impl VerdictTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictTag::UniqueSolution => "unique_solution",
            VerdictTag::Inconsistent => "inconsistent",
            VerdictTag::Underdetermined => "underdetermined",
            VerdictTag::TrivialOnly => "trivial_only",
        }
    }
}

impl std::fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyVerdict {
    pub tag: VerdictTag,
    pub rank: usize,
    pub augmented_rank: usize,
    pub dimension: usize,
    /// `min ‖Ax - b‖₂`.
    pub residual: f64,
    pub relative_residual: f64,
    /// Minimum-norm least-squares solution.
    pub solution: DVector<f64>,
}

/// Classify `A x = b` as inconsistent, uniquely solvable (possibly only by
/// zero) or underdetermined.
pub fn classify_square_system(a: &DMatrix<f64>, b: &DVector<f64>) -> ConsistencyVerdict {
    let tol = RankTolerance::Relative(CONSISTENCY_RANK_RTOL);
    let dimension = a.ncols();
    let rank_info = rank_of(a, tol);
    let mut augmented = DMatrix::zeros(a.nrows(), dimension + 1);
    augmented.columns_mut(0, dimension).copy_from(a);
    augmented.set_column(dimension, b);
    let augmented_rank = rank_of(&augmented, tol).rank;

    let solution = if rank_info.rank == 0 {
        DVector::zeros(dimension)
    } else {
        SVD::new(a.clone(), true, true)
            .solve(b, rank_info.threshold)
            .expect("U and V were computed")
    };
    let residual = (a * &solution - b).norm();
    let bnorm = b.norm();
    let scale = rank_info.singular_values.first().copied().unwrap_or(0.0);
    // A right-hand side at round-off level relative to A is a zero one.
    let relative_residual = if bnorm > ZERO_RHS_RTOL * scale {
        residual / bnorm
    } else {
        0.0
    };

    let tag = if relative_residual > INCONSISTENCY_THRESHOLD {
        VerdictTag::Inconsistent
    } else if rank_info.rank < dimension {
        VerdictTag::Underdetermined
    } else if solution.amax() <= TRIVIAL_SOLUTION_TOL * (1.0 + b.amax()) {
        VerdictTag::TrivialOnly
    } else {
        VerdictTag::UniqueSolution
    };
    ConsistencyVerdict {
        tag,
        rank: rank_info.rank,
        augmented_rank,
        dimension,
        residual,
        relative_residual,
        solution,
    }
}

fn default_rule(basis: &Basis1D) -> QuadratureRule1D {
    composite_rule(
        DEFAULT_ORDER,
        default_panels(basis.len()),
        0.0,
        basis.length(),
    )
    .expect("valid default rule")
}

/// Lanczos tau rows for `u'' = f`: the residual `u'' - f` orthogonal to the
/// selected members, followed by the boundary-condition rows.
pub fn tau_system(
    basis: &Basis1D,
    weight_members: &[usize],
    bc: &[EndpointFunctional],
    f: ScalarField,
) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let n = basis.len();
    if weight_members.len() + bc.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} weights + {} boundary rows != {n} unknowns",
            weight_members.len(),
            bc.len()
        )));
    }
    if let Some(&m) = weight_members.iter().find(|&&m| m >= n) {
        return Err(Error::InvalidArgument(format!(
            "weight member {m} outside basis of {n}"
        )));
    }
    let rule = default_rule(basis);
    let mut a = DMatrix::zeros(n, n);
    let mut b = DVector::zeros(n);
    for (row, &m) in weight_members.iter().enumerate() {
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let wm = w * basis.eval(m, x).value;
            for k in 0..n {
                a[(row, k)] += wm * basis.eval(k, x).d2;
            }
            b[row] += wm * f(&[x]);
        }
    }
    for (offset, functional) in bc.iter().enumerate() {
        let row = weight_members.len() + offset;
        for k in 0..n {
            a[(row, k)] = functional.apply(basis, k);
        }
    }
    Ok((a, b))
}

/// Galerkin rows of the multiplier-eliminated weak form of `u'' = f` with
/// `u(0) = u(ℓ) = 0`:
///
/// ```text
/// ∫ (-u'' + f) w + u(0) w'(0) - u(ℓ) w'(ℓ) = 0,   w = φ_0 … φ_{N-1}.
/// ```
pub fn boundary_term_system(basis: &Basis1D, f: ScalarField) -> (DMatrix<f64>, DVector<f64>) {
    let n = basis.len();
    let ell = basis.length();
    let rule = default_rule(basis);
    let mut a = DMatrix::zeros(n, n);
    let mut b = DVector::zeros(n);
    for m in 0..n {
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let wm = w * basis.eval(m, x).value;
            for k in 0..n {
                a[(m, k)] -= wm * basis.eval(k, x).d2;
            }
            b[m] -= wm * f(&[x]);
        }
        let (w0, wl) = (basis.eval(m, 0.0).d1, basis.eval(m, ell).d1);
        for k in 0..n {
            a[(m, k)] += basis.eval(k, 0.0).value * w0 - basis.eval(k, ell).value * wl;
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::basis::Endpoint;

    const ONE: &(dyn Fn(&[f64]) -> f64 + Sync) = &|_| 1.0;

    fn ends() -> Vec<EndpointFunctional> {
        vec![
            EndpointFunctional::value(Endpoint::Left),
            EndpointFunctional::value(Endpoint::Right),
        ]
    }

    #[test]
    fn classify_examples() {
        let v = classify_square_system(&DMatrix::zeros(1, 1), &DVector::from_vec(vec![-PI]));
        assert_eq!(v.tag, VerdictTag::Inconsistent);
        assert_eq!((v.rank, v.augmented_rank), (0, 1));
        assert!((v.residual - PI).abs() < 1e-15);

        let v = classify_square_system(
            &DMatrix::identity(3, 3),
            &DVector::from_vec(vec![1.0, 2.0, 3.0]),
        );
        assert_eq!(v.tag, VerdictTag::UniqueSolution);

        let v = classify_square_system(&DMatrix::identity(3, 3), &DVector::zeros(3));
        assert_eq!(v.tag, VerdictTag::TrivialOnly);

        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 2.0, 2.0]);
        let v = classify_square_system(&a, &DVector::from_vec(vec![1.0, 2.0]));
        assert_eq!(v.tag, VerdictTag::Underdetermined);
        let v = classify_square_system(&a, &DVector::from_vec(vec![1.0, 3.0]));
        assert_eq!(v.tag, VerdictTag::Inconsistent);
    }

    #[test]
    fn tau_with_low_weights_is_inconsistent() {
        // Harmonics 0..=6, residual orthogonal to cos mx for m = 0..4.
        let basis = Basis1D::cosine(7, PI).unwrap();
        let (a, b) = tau_system(&basis, &[0, 1, 2, 3, 4], &ends(), ONE).unwrap();
        assert_eq!(classify_square_system(&a, &b).tag, VerdictTag::Inconsistent);
    }

    #[test]
    fn tau_with_high_weights_is_trivial() {
        let basis = Basis1D::cosine(7, PI).unwrap();
        let (a, b) = tau_system(&basis, &[2, 3, 4, 5, 6], &ends(), ONE).unwrap();
        assert_eq!(classify_square_system(&a, &b).tag, VerdictTag::TrivialOnly);
    }

    #[test]
    fn tau_with_middle_weights_is_underdetermined() {
        // The load is orthogonal to cos mx for m ≥ 1, so b vanishes up to
        // round-off and the constant member is free.
        let basis = Basis1D::cosine(7, PI).unwrap();
        let (a, b) = tau_system(&basis, &[1, 2, 3, 4, 5], &ends(), ONE).unwrap();
        let v = classify_square_system(&a, &b);
        assert_eq!(v.tag, VerdictTag::Underdetermined, "{v:?}");
        assert_eq!((v.rank, v.augmented_rank), (6, 6));
    }

    #[test]
    fn tau_never_yields_a_nontrivial_unique_solution() {
        let basis = Basis1D::cosine(7, PI).unwrap();
        for start in 0..=2 {
            let weights: Vec<usize> = (start..start + 5).collect();
            let (a, b) = tau_system(&basis, &weights, &ends(), ONE).unwrap();
            let tag = classify_square_system(&a, &b).tag;
            assert_ne!(tag, VerdictTag::UniqueSolution, "weights {weights:?}");
        }
    }

    #[test]
    fn tau_rejects_count_mismatch() {
        let basis = Basis1D::cosine(6, PI).unwrap();
        assert!(tau_system(&basis, &[0, 1, 2, 3, 4], &ends(), ONE).is_err());
        assert!(tau_system(&basis, &[0, 1, 2, 9], &ends(), ONE).is_err());
    }

    #[test]
    fn boundary_term_examples() {
        for n in [1, 2, 5, 9] {
            let (a, b) = boundary_term_system(&Basis1D::cosine(n, PI).unwrap(), ONE);
            assert_eq!(
                classify_square_system(&a, &b).tag,
                VerdictTag::Inconsistent,
                "N = {n}"
            );
        }
        // x(π - x) satisfies the boundary conditions: -x(π-x)/2 is the exact solution.
        let bubble = Basis1D::polynomials(vec![vec![0.0, PI, -1.0]], PI).unwrap();
        let (a, b) = boundary_term_system(&bubble, ONE);
        assert!((a[(0, 0)] - PI.powi(3) / 3.0).abs() < 1e-12);
        let v = classify_square_system(&a, &b);
        assert_eq!(v.tag, VerdictTag::UniqueSolution);
        assert!((v.solution[0] + 0.5).abs() < 1e-13);
    }
}
