use nalgebra::{DMatrix, DVector, SVD};

use super::linalg::{dependent_rows, rank_of, RankTolerance};
use crate::assembly::ConstrainedSystem;
use crate::basis::{Jet2, TrialBasis};
use crate::{Error, Result};

/// Condition estimate above which a solve carries a warning.
pub const CONDITION_WARNING: f64 = 1e12;

/// Coefficients `a` and multipliers `λ` of a Ritz-Lagrange trial solution.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSolution {
    pub basis: TrialBasis,
    pub coefficients: DVector<f64>,
    pub multipliers: DVector<f64>,
    /// `‖K a + f + Lᵀλ‖_∞`.
    pub stationarity_residual: f64,
    /// `‖L a‖_∞`.
    pub constraint_residual: f64,
    /// `σ_max / σ_min` of the saddle-point matrix.
    pub condition_estimate: f64,
    pub warnings: Vec<String>,
}

impl TrialSolution {
    pub fn jet(&self, point: &[f64]) -> Jet2 {
        let mut out = Jet2::default();
        for (i, &c) in self.coefficients.iter().enumerate() {
            let j = self.basis.eval(i, point);
            out.value += c * j.value;
            out.dx += c * j.dx;
            out.dy += c * j.dy;
            out.dxx += c * j.dxx;
            out.dyy += c * j.dyy;
            out.dxy += c * j.dxy;
        }
        out
    }

    pub fn value(&self, point: &[f64]) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * self.basis.eval(i, point).value)
            .sum()
    }

    /// Whether both residual invariants hold for `sys`.
    pub fn residuals_ok(&self, sys: &ConstrainedSystem) -> bool {
        self.stationarity_residual <= 1e-9 * (1.0 + sys.load.amax())
            && self.constraint_residual <= 1e-9 * (1.0 + self.coefficients.amax())
    }
}

/// Solve `[[K, Lᵀ], [L, 0]] (a; λ) = (-f; 0)` by a fully pivoted LU of the
/// indefinite block matrix.
pub fn solve_saddle(sys: &ConstrainedSystem) -> Result<TrialSolution> {
    let (n, s) = (sys.n_tot(), sys.s_tot());
    let l = &sys.constraints;
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

    let dim = n + s;
    let mut kkt = DMatrix::<f64>::zeros(dim, dim);
    kkt.view_mut((0, 0), (n, n)).copy_from(&sys.stiffness);
    kkt.view_mut((n, 0), (s, n)).copy_from(l);
    kkt.view_mut((0, n), (n, s)).copy_from(&l.transpose());
    let mut rhs = DVector::<f64>::zeros(dim);
    rhs.rows_mut(0, n).copy_from(&(-&sys.load));

    let sv = SVD::new(kkt.clone(), false, false).singular_values;
    let sigma_max = sv.max();
    let sigma_min = sv.min();
    if sigma_min <= RankTolerance::Default.threshold(dim, dim, sigma_max) {
        return Err(Error::SingularSystem { sigma_min });
    }
    let condition_estimate = sigma_max / sigma_min;
    let mut warnings = Vec::new();
    if condition_estimate > CONDITION_WARNING {
        warnings.push(format!(
            "saddle-point matrix condition estimate {condition_estimate:.3e}"
        ));
    }

    let x = kkt
        .full_piv_lu()
        .solve(&rhs)
        .ok_or(Error::SingularSystem { sigma_min })?;
    let coefficients = x.rows(0, n).into_owned();
    let multipliers = x.rows(n, s).into_owned();
    let stationarity = &sys.stiffness * &coefficients + &sys.load + l.transpose() * &multipliers;
    let constraint = l * &coefficients;
    Ok(TrialSolution {
        basis: sys.basis.clone(),
        stationarity_residual: stationarity.amax(),
        constraint_residual: if s > 0 { constraint.amax() } else { 0.0 },
        coefficients,
        multipliers,
        condition_estimate,
        warnings,
    })
}
