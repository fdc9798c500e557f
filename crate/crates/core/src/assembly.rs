//! Assembly of the stiffness `K`, load `f`, constraint `L` and mass `M` blocks.
//!
//! Stationarity of the Lagrange functional `½aᵀKa + fᵀa + λᵀLa` reads
//! `K a + f + Lᵀλ = 0`, `L a = 0`; the load sign of the functional lives in `f`.

use nalgebra::{DMatrix, DVector};

use crate::basis::{Jet2, TraceOperator, TrialBasis, WeightSet};
use crate::quadrature::{BoundaryQuadrature, QuadratureRule1D, QuadratureRule2D};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormKind {
    /// `B(u, v) = ∫ ∇u·∇v`.
    DirichletGradient,
    /// `B(u, v) = ∫ u'' v''` on an interval.
    SecondDerivative1D,
    /// Kirchhoff plate bending energy with Poisson ratio `nu`.
    KirchhoffPlate { nu: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadSign {
    Plus,
    Minus,
}

impl LoadSign {
    pub fn factor(self) -> f64 {
        match self {
            LoadSign::Plus => 1.0,
            LoadSign::Minus => -1.0,
        }
    }
}

/// `J(u) = ½B(u, u) + σ∫ f u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyForm {
    pub kind: FormKind,
    pub load_sign: LoadSign,
}

impl EnergyForm {
    pub fn dirichlet(load_sign: LoadSign) -> Self {
        Self {
            kind: FormKind::DirichletGradient,
            load_sign,
        }
    }

    pub fn second_derivative(load_sign: LoadSign) -> Self {
        Self {
            kind: FormKind::SecondDerivative1D,
            load_sign,
        }
    }

    /// Plate energy with load entering as `-∫ f u`.
    pub fn kirchhoff(nu: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&nu) {
            return Err(Error::InvalidArgument(format!(
                "Poisson ratio must lie in [0, 1), got {nu}"
            )));
        }
        Ok(Self {
            kind: FormKind::KirchhoffPlate { nu },
            load_sign: LoadSign::Minus,
        })
    }

    /// Strains `e` scaled so that the bilinear integrand is `e(u)·e(v)`.
    fn strains(&self, jet: &Jet2, planar: bool, out: &mut Vec<f64>) -> Result<()> {
        out.clear();
        match (self.kind, planar) {
            (FormKind::DirichletGradient, false) => out.push(jet.dx),
            (FormKind::DirichletGradient, true) => out.extend([jet.dx, jet.dy]),
            (FormKind::SecondDerivative1D, false) => out.push(jet.dxx),
            (FormKind::KirchhoffPlate { nu }, true) => {
                // Factor of [[1, ν, 0], [ν, 1, 0], [0, 0, 2(1-ν)]].
                out.extend([
                    jet.dxx + nu * jet.dyy,
                    (1.0 - nu * nu).sqrt() * jet.dyy,
                    (2.0 * (1.0 - nu)).sqrt() * jet.dxy,
                ]);
            }
            (kind, planar) => {
                return Err(Error::InvalidArgument(format!(
                    "{kind:?} is not defined on a {} domain",
                    if planar { "planar" } else { "one-dimensional" }
                )))
            }
        }
        Ok(())
    }

    /// Bilinear integrand `b(u, v)` at one point.
    pub fn integrand(&self, u: &Jet2, v: &Jet2) -> f64 {
        match self.kind {
            FormKind::DirichletGradient => u.dx * v.dx + u.dy * v.dy,
            FormKind::SecondDerivative1D => u.dxx * v.dxx,
            FormKind::KirchhoffPlate { nu } => {
                u.dxx * v.dxx
                    + u.dyy * v.dyy
                    + nu * (u.dxx * v.dyy + u.dyy * v.dxx)
                    + 2.0 * (1.0 - nu) * u.dxy * v.dxy
            }
        }
    }
}

/// Interior quadrature matching a [`TrialBasis`].
#[derive(Debug, Clone, PartialEq)]
pub enum VolumeRule {
    Line(QuadratureRule1D),
    Plane(QuadratureRule2D),
}

impl VolumeRule {
    pub fn len(&self) -> usize {
        match self {
            VolumeRule::Line(r) => r.len(),
            VolumeRule::Plane(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(point, weight)` pairs; points are `[x]` or `[x, y]`.
    pub fn samples(&self) -> Box<dyn Iterator<Item = (&[f64], f64)> + '_> {
        match self {
            VolumeRule::Line(r) => Box::new(
                r.nodes()
                    .iter()
                    .zip(r.weights())
                    .map(|(x, &w)| (std::slice::from_ref(x), w)),
            ),
            VolumeRule::Plane(r) => Box::new(
                r.points()
                    .iter()
                    .zip(r.weights())
                    .map(|(p, &w)| (&p[..], w)),
            ),
        }
    }

    fn check(&self, basis: &TrialBasis) -> Result<()> {
        match (self, basis) {
            (VolumeRule::Line(r), TrialBasis::Line(b)) => {
                let (a, c) = r.interval();
                if a == 0.0 && (c - b.length()).abs() <= 1e-14 * b.length() {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "quadrature on [{a}, {c}] does not match basis interval [0, {}]",
                        b.length()
                    )))
                }
            }
            (VolumeRule::Plane(r), TrialBasis::Plane(b)) if b.supports(r.domain()) => Ok(()),
            _ => Err(Error::InvalidArgument(
                "quadrature domain does not match basis domain".into(),
            )),
        }
    }
}

/// Interior and (for planar problems) boundary quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratures {
    pub volume: VolumeRule,
    pub boundary: Option<BoundaryQuadrature>,
}

/// A scalar field on the problem domain, evaluated at `[x]` or `[x, y]`.
pub type ScalarField<'a> = &'a (dyn Fn(&[f64]) -> f64 + Sync);

fn is_planar(basis: &TrialBasis) -> bool {
    matches!(basis, TrialBasis::Plane(_))
}

/// `K_ij = B(φ_i, φ_j)` by quadrature, symmetrized.
pub fn assemble_stiffness(
    form: &EnergyForm,
    basis: &TrialBasis,
    quad: &VolumeRule,
) -> Result<DMatrix<f64>> {
    quad.check(basis)?;
    let n = basis.len();
    let planar = is_planar(basis);
    let mut strain = Vec::with_capacity(3);
    form.strains(&Jet2::default(), planar, &mut strain)?;
    let k = strain.len();
    let mut s = DMatrix::<f64>::zeros(quad.len() * k, n);
    for (q, (p, w)) in quad.samples().enumerate() {
        let sw = w.sqrt();
        for i in 0..n {
            form.strains(&basis.eval(i, p), planar, &mut strain)?;
            for (c, e) in strain.iter().enumerate() {
                s[(q * k + c, i)] = sw * e;
            }
        }
    }
    let m = s.tr_mul(&s);
    Ok(symmetrize(m))
}

/// `f_i = σ ∫ f φ_i`.
pub fn assemble_load(
    form: &EnergyForm,
    f: ScalarField,
    basis: &TrialBasis,
    quad: &VolumeRule,
) -> Result<DVector<f64>> {
    quad.check(basis)?;
    let sigma = form.load_sign.factor();
    let mut out = DVector::zeros(basis.len());
    for (p, w) in quad.samples() {
        let fw = sigma * w * f(p);
        for i in 0..basis.len() {
            out[i] += fw * basis.eval(i, p).value;
        }
    }
    Ok(out)
}

/// `M_ij = ∫ φ_i φ_j`.
pub fn assemble_mass(basis: &TrialBasis, quad: &VolumeRule) -> Result<DMatrix<f64>> {
    quad.check(basis)?;
    let n = basis.len();
    let mut v = DMatrix::<f64>::zeros(quad.len(), n);
    for (q, (p, w)) in quad.samples().enumerate() {
        let sw = w.sqrt();
        for i in 0..n {
            v[(q, i)] = sw * basis.eval(i, p).value;
        }
    }
    Ok(symmetrize(v.tr_mul(&v)))
}

/// `L_ji = ⟨ψ_j, Γφ_i⟩`: exact point evaluation for endpoint functionals,
/// boundary quadrature otherwise.
pub fn assemble_constraints(
    trace: TraceOperator,
    weights: &WeightSet,
    basis: &TrialBasis,
    bquad: Option<&BoundaryQuadrature>,
) -> Result<DMatrix<f64>> {
    let n = basis.len();
    match (weights, basis) {
        (WeightSet::Endpoint(functionals), TrialBasis::Line(b)) => {
            if trace != TraceOperator::Endpoint {
                return Err(Error::InvalidArgument(format!(
                    "endpoint weights need the endpoint trace, got {trace:?}"
                )));
            }
            Ok(DMatrix::from_fn(functionals.len(), n, |j, i| {
                functionals[j].apply(b, i)
            }))
        }
        (
            WeightSet::CirclePartition { .. } | WeightSet::SquareEdgeCosines { .. },
            TrialBasis::Plane(b),
        ) => {
            let bquad = bquad.ok_or_else(|| {
                Error::InvalidArgument("boundary weights need a boundary quadrature".into())
            })?;
            if trace == TraceOperator::Endpoint {
                return Err(Error::InvalidArgument(
                    "endpoint trace on a planar domain".into(),
                ));
            }
            weights.check_quadrature(bquad)?;
            let samples = bquad.samples();
            let s_tot = weights.len();
            let psi = DMatrix::from_fn(samples.len(), s_tot, |q, j| {
                let smp = &samples[q];
                smp.weight
                    * weights
                        .density(j, smp, bquad.kind())
                        .expect("boundary weight")
            });
            let traces = DMatrix::from_fn(samples.len(), n, |q, i| {
                let smp = &samples[q];
                trace.apply(&b.eval(i, smp.point[0], smp.point[1]), smp)
            });
            Ok(psi.tr_mul(&traces))
        }
        _ => Err(Error::InvalidArgument(
            "weight set does not match the basis dimension".into(),
        )),
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// The blocks of the constrained quadratic problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedSystem {
    pub basis: TrialBasis,
    pub stiffness: DMatrix<f64>,
    pub load: DVector<f64>,
    pub constraints: DMatrix<f64>,
    pub mass: Option<DMatrix<f64>>,
}

impl ConstrainedSystem {
    pub fn n_tot(&self) -> usize {
        self.stiffness.nrows()
    }

    pub fn s_tot(&self) -> usize {
        self.constraints.nrows()
    }

    /// `N_tot / s_tot`; infinite when there are no constraints.
    pub fn ratio(&self) -> f64 {
        self.n_tot() as f64 / self.s_tot() as f64
    }

    /// Remove constraint rows that vanish identically on the basis (for
    /// example slope conditions on a cosine family). Returns the removed row
    /// indices, in original numbering.
    pub fn drop_vacuous_constraints(&mut self) -> Vec<usize> {
        let scale = self.constraints.amax().max(1.0);
        let keep: Vec<usize> = (0..self.s_tot())
            .filter(|&j| self.constraints.row(j).amax() > 1e-12 * scale)
            .collect();
        let dropped: Vec<usize> = (0..self.s_tot()).filter(|j| !keep.contains(j)).collect();
        if !dropped.is_empty() {
            self.constraints = self.constraints.select_rows(keep.iter());
        }
        dropped
    }
}

/// Assemble every block of the constrained system. Fails when the trial
/// functions do not outnumber the boundary equations.
#[allow(clippy::too_many_arguments)]
pub fn build_system(
    form: &EnergyForm,
    f: ScalarField,
    basis: &TrialBasis,
    trace: TraceOperator,
    weights: &WeightSet,
    quads: &Quadratures,
    with_mass: bool,
) -> Result<ConstrainedSystem> {
    let (n_tot, s_tot) = (basis.len(), weights.len());
    if n_tot <= s_tot {
        return Err(Error::DegenerateConfiguration { n_tot, s_tot });
    }
    Ok(ConstrainedSystem {
        basis: basis.clone(),
        stiffness: assemble_stiffness(form, basis, &quads.volume)?,
        load: assemble_load(form, f, basis, &quads.volume)?,
        constraints: assemble_constraints(trace, weights, basis, quads.boundary.as_ref())?,
        mass: if with_mass {
            Some(assemble_mass(basis, &quads.volume)?)
        } else {
            None
        },
    })
}
