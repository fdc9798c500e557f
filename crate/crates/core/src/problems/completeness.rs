//! Best-approximation residuals in the Sobolev inner products used to
//! decide completeness of 1D trial systems.

use nalgebra::{DMatrix, DVector, SVD};

use crate::basis::{Basis1D, Jet1};
use crate::quadrature::{composite_rule, default_panels, DEFAULT_ORDER};
use crate::solvers::{rank_of, RankTolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SobolevProduct {
    /// `u(0)v(0) + ∫ u'v'`.
    W21L3,
    /// `u(0)v(0) + u'(0)v'(0) + ∫ u''v''`.
    W22L3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SobolevResidual {
    pub residual: f64,
    pub rank: usize,
    /// The Gram matrix was numerically singular; `residual` comes from the
    /// minimum-norm solution.
    pub rank_deficient: bool,
}

impl SobolevProduct {
    fn boundary(self, u: &Jet1, v: &Jet1) -> f64 {
        match self {
            SobolevProduct::W21L3 => u.value * v.value,
            SobolevProduct::W22L3 => u.value * v.value + u.d1 * v.d1,
        }
    }

    fn interior(self, u: &Jet1, v: &Jet1) -> f64 {
        match self {
            SobolevProduct::W21L3 => u.d1 * v.d1,
            SobolevProduct::W22L3 => u.d2 * v.d2,
        }
    }
}

/// Residual norm of the best approximation of `target` by the first `n`
/// members of `basis`.
pub fn sobolev_residual(
    target: impl Fn(f64) -> Jet1,
    basis: &Basis1D,
    product: SobolevProduct,
    n: usize,
) -> Result<SobolevResidual> {
    if n == 0 || n > basis.len() {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ N ≤ {}, got {n}",
            basis.len()
        )));
    }
    let rule = composite_rule(DEFAULT_ORDER, default_panels(n), 0.0, basis.length())?;
    let ip = |u: &dyn Fn(f64) -> Jet1, v: &dyn Fn(f64) -> Jet1| {
        product.boundary(&u(0.0), &v(0.0))
            + rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&x, &w)| w * product.interior(&u(x), &v(x)))
                .sum::<f64>()
    };
    let member = |i: usize| move |x: f64| basis.eval(i, x);
    let mut gram = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    for i in 0..n {
        for j in i..n {
            let g = ip(&member(i), &member(j));
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
        rhs[i] = ip(&member(i), &target);
    }
    let info = rank_of(&gram, RankTolerance::Default);
    let coeffs = SVD::new(gram, true, true)
        .solve(&rhs, info.threshold)
        .map_err(|e| Error::Internal(e.into()))?;
    let residual = |x: f64| {
        let mut r = target(x);
        for (i, &c) in coeffs.iter().enumerate() {
            let m = basis.eval(i, x);
            r.value -= c * m.value;
            r.d1 -= c * m.d1;
            r.d2 -= c * m.d2;
        }
        r
    };
    let norm2 = ip(&residual, &residual);
    Ok(SobolevResidual {
        residual: norm2.max(0.0).sqrt(),
        rank: info.rank,
        rank_deficient: info.rank < n,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn cos3(x: f64) -> Jet1 {
        Jet1 {
            value: (3.0 * x).cos(),
            d1: -3.0 * (3.0 * x).sin(),
            d2: -9.0 * (3.0 * x).cos(),
        }
    }

    fn square(x: f64) -> Jet1 {
        Jet1 {
            value: x * x,
            d1: 2.0 * x,
            d2: 2.0,
        }
    }

    #[test]
    fn members_of_the_span_have_zero_residual() {
        let cos = Basis1D::cosine(8, PI).unwrap();
        for product in [SobolevProduct::W21L3, SobolevProduct::W22L3] {
            let r = sobolev_residual(cos3, &cos, product, 4).unwrap();
            assert!(
                r.residual < 1e-10 && !r.rank_deficient,
                "{product:?}: {r:?}"
            );
        }
        let aug = Basis1D::augmented_cosine(8, PI).unwrap();
        let r = sobolev_residual(square, &aug, SobolevProduct::W22L3, 5).unwrap();
        assert!(r.residual < 1e-10, "{r:?}");
    }

    #[test]
    fn square_is_not_in_the_cosine_closure_under_w22() {
        // x'' = 2 is L²-orthogonal to every (cos kx)'' with k ≥ 1.
        let cos = Basis1D::cosine(40, PI).unwrap();
        for n in [5, 20, 40] {
            let r = sobolev_residual(square, &cos, SobolevProduct::W22L3, n).unwrap();
            assert!(r.residual >= 2.0 * PI.sqrt() - 1e-9, "N = {n}: {r:?}");
        }
    }

    #[test]
    fn square_is_approximable_by_cosines_under_w21() {
        let cos = Basis1D::cosine(40, PI).unwrap();
        let r10 = sobolev_residual(square, &cos, SobolevProduct::W21L3, 10)
            .unwrap()
            .residual;
        let r40 = sobolev_residual(square, &cos, SobolevProduct::W21L3, 40)
            .unwrap()
            .residual;
        // The sine series of x' = 2x decays like 1/k, so the residual falls like N^(-1/2).
        assert!(r40 < 0.6 * r10, "{r10} {r40}");
    }
}
