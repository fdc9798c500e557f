use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use ritz_lagrange::assembly::ConstrainedSystem;
use ritz_lagrange::basis::Basis1D;
use ritz_lagrange::problems::{system_energy, BasisVariant, ProblemId, ProblemSpec};
use ritz_lagrange::quadrature::gauss_legendre;
use ritz_lagrange::solvers::{
    nullspace_basis, rank_of, solve_constrained_gevp, solve_saddle, RankTolerance,
};

fn matrix(rows: usize, cols: usize, entries: &[f64]) -> DMatrix<f64> {
    DMatrix::from_iterator(
        rows,
        cols,
        entries.iter().copied().cycle().take(rows * cols),
    )
}

fn spd(n: usize, entries: &[f64]) -> DMatrix<f64> {
    let g = matrix(n, n, entries);
    &g * g.transpose() + DMatrix::identity(n, n) * 0.5
}

/// `(n, s, entries)` with `1 ≤ s < n ≤ 8`.
fn dims_and_entries() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (2usize..=8).prop_flat_map(|n| {
        (
            Just(n),
            1..n,
            prop::collection::vec(-1.0f64..1.0, 3 * n * n),
        )
    })
}

fn system(n: usize, s: usize, entries: &[f64]) -> ConstrainedSystem {
    let k = spd(n, &entries[..n * n]);
    let l = matrix(s, n, &entries[n * n..2 * n * n]);
    let f = DVector::from_iterator(n, entries[2 * n * n..].iter().copied().take(n));
    ConstrainedSystem {
        basis: Basis1D::monomial(n, 1.0).unwrap().into(),
        stiffness: k,
        load: f,
        constraints: l,
        mass: None,
    }
}

/// Finite eigenvalues of `([K Lᵀ; L 0], [M 0; 0 0])`, from the `n − s`
/// largest eigenvalues of `A⁻¹B`.
fn pencil_eigenvalues(k: &DMatrix<f64>, m: &DMatrix<f64>, l: &DMatrix<f64>) -> Vec<f64> {
    let (n, s) = (k.nrows(), l.nrows());
    let mut a = DMatrix::zeros(n + s, n + s);
    a.view_mut((0, 0), (n, n)).copy_from(k);
    a.view_mut((n, 0), (s, n)).copy_from(l);
    a.view_mut((0, n), (n, s)).copy_from(&l.transpose());
    let mut b = DMatrix::zeros(n + s, n + s);
    b.view_mut((0, 0), (n, n)).copy_from(m);
    let c = a.lu().solve(&b).unwrap();
    let mut nus: Vec<f64> = c.complex_eigenvalues().iter().map(|z| z.re).collect();
    nus.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let mut mus: Vec<f64> = nus.iter().take(n - s).map(|v| 1.0 / v).collect();
    mus.sort_by(f64::total_cmp);
    mus
}

fn problem_config() -> impl Strategy<Value = (ProblemSpec, usize, usize)> {
    prop_oneof![
        (3usize..20).prop_map(|n| (ProblemSpec::new(ProblemId::P1), n, 0)),
        (5usize..20).prop_map(|n| (ProblemSpec::new(ProblemId::P3), n, 0)),
        (5usize..20).prop_map(|n| (
            ProblemSpec::new(ProblemId::P2).with_variant(BasisVariant::Augmented),
            n,
            0
        )),
        (3usize..=6).prop_flat_map(|n| (2..=n).prop_map(move |s| (
            ProblemSpec::new(ProblemId::P4),
            n,
            s
        ))),
        // Edge weights share the corners, so s close to N loses rank.
        (4usize..=8).prop_flat_map(|n| (1..=n / 2).prop_map(move |s| (
            ProblemSpec::new(ProblemId::P5),
            n,
            s
        ))),
        (4usize..=6).prop_flat_map(|n| (1..=n / 2).prop_map(move |s| (
            ProblemSpec::new(ProblemId::P6),
            n,
            s
        ))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_rules_integrate_polynomials_exactly(order in 1usize..16, k in 0u32..32, a in -2.0f64..0.0, len in 0.1f64..3.0) {
        prop_assume!((k as usize) < 2 * order);
        let b = a + len;
        let rule = gauss_legendre(order, a, b).unwrap();
        let got = rule.integrate(|x| x.powi(k as i32));
        let exact = (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k + 1) as f64;
        prop_assert!((got - exact).abs() <= 1e-11 * (1.0 + exact.abs()), "{got} vs {exact}");
    }

    #[test]
    fn basis_derivatives_match_finite_differences(i in 0usize..10, x in 0.2f64..2.9, family in 0usize..3) {
        let basis = match family {
            0 => Basis1D::cosine(10, PI),
            1 => Basis1D::augmented_cosine(10, PI),
            _ => Basis1D::monomial(10, PI),
        }
        .unwrap();
        let h = 1e-5;
        let (lo, mid, hi) = (basis.eval(i, x - h), basis.eval(i, x), basis.eval(i, x + h));
        let scale = 1.0 + mid.d2.abs() + mid.d1.abs() + mid.value.abs();
        prop_assert!(((hi.value - lo.value) / (2.0 * h) - mid.d1).abs() <= 1e-5 * scale);
        prop_assert!(((hi.d1 - lo.d1) / (2.0 * h) - mid.d2).abs() <= 1e-5 * scale);
    }

    #[test]
    fn assembled_blocks_are_symmetric_with_full_constraint_rank((spec, n, s) in problem_config()) {
        let (sys, _) = spec.build(n, s).unwrap();
        prop_assert_eq!(&sys.stiffness, &sys.stiffness.transpose());
        if let Some(m) = &sys.mass {
            prop_assert_eq!(m, &m.transpose());
            prop_assert!(m.clone().cholesky().is_some());
        }
        prop_assert_eq!(rank_of(&sys.constraints, RankTolerance::Default).rank, sys.s_tot());
    }

    #[test]
    fn assembly_is_deterministic((spec, n, s) in problem_config()) {
        let (a, _) = spec.build(n, s).unwrap();
        let (b, _) = spec.build(n, s).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn saddle_solutions_are_constrained_minimizers((n, s, entries) in dims_and_entries(), seed in prop::collection::vec(-1.0f64..1.0, 8)) {
        let sys = system(n, s, &entries);
        prop_assume!(rank_of(&sys.constraints, RankTolerance::Default).rank == s);
        let sol = solve_saddle(&sys).unwrap();
        prop_assert!(sol.residuals_ok(&sys), "{} {}", sol.stationarity_residual, sol.constraint_residual);
        let z = nullspace_basis(&sys.constraints);
        let step = &z * DVector::from_iterator(z.ncols(), seed.iter().copied().cycle().take(z.ncols()));
        let base = system_energy(&sys, &sol.coefficients);
        prop_assert!(system_energy(&sys, &(&sol.coefficients + step)) >= base - 1e-10 * (1.0 + base.abs()));
    }

    #[test]
    fn reduced_gevp_matches_the_block_pencil((n, s, entries) in dims_and_entries()) {
        let k = spd(n, &entries[..n * n]);
        let m = spd(n, &entries[n * n..2 * n * n]);
        let l = matrix(s, n, &entries[2 * n * n..]);
        prop_assume!(rank_of(&l, RankTolerance::Default).rank == s);
        let reduced = solve_constrained_gevp(&k, &m, &l).unwrap();
        let pencil = pencil_eigenvalues(&k, &m, &l);
        prop_assert_eq!(reduced.eigenvalues.len(), pencil.len());
        for (a, b) in reduced.eigenvalues.iter().zip(&pencil) {
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{a} vs {b}");
        }
        for (i, mu) in reduced.eigenvalues.iter().enumerate() {
            let c = reduced.modes.column(i);
            prop_assert!((&l * c).amax() <= 1e-9);
            prop_assert!(((c.transpose() * &m * c)[0] - 1.0).abs() <= 1e-9);
            prop_assert!((reduced.frequencies[i] - mu.sqrt()).abs() <= 1e-12 * mu.sqrt().max(1.0));
        }
    }

    #[test]
    fn nullspace_is_orthonormal_and_complementary((n, s, entries) in dims_and_entries()) {
        let l = matrix(s, n, &entries);
        let rank = rank_of(&l, RankTolerance::Default).rank;
        let z = nullspace_basis(&l);
        prop_assert_eq!(z.ncols(), n - rank);
        prop_assert!((&l * &z).amax() <= 1e-11);
        prop_assert!((z.transpose() * &z - DMatrix::identity(z.ncols(), z.ncols())).amax() <= 1e-12);
    }
}
