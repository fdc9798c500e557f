//! The six model problems, their reference solutions and the experiment
//! runner.

pub mod completeness;
pub mod fd;
mod frequencies;
pub mod metrics;
pub mod reference;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

pub use completeness::{sobolev_residual, SobolevProduct, SobolevResidual};
pub use frequencies::{
    frequency_block, modal_content, pair_frequencies, ss_plate_frequency, FrequencyRow,
};
pub use metrics::{energy_value, functional_value, relative_errors, sup_error, system_energy};
pub use reference::{
    exact_1d, exact_disk, fd_biharmonic_ccplate, navier_ss_plate, ReferenceKind, ReferenceSolution,
    SampleDomain, DEFAULT_FD_POINTS,
};

use crate::assembly::{
    build_system, ConstrainedSystem, EnergyForm, LoadSign, Quadratures, VolumeRule,
};
use crate::basis::{Basis1D, Basis2D, Endpoint, TraceOperator, TrialBasis, WeightSet};
use crate::quadrature::{
    circle_partition, composite_rule, polar_disk, square_edges, tensor_square,
    DEFAULT_CIRCLE_SEGMENT_ORDER, DEFAULT_DISK_ANGULAR, DEFAULT_DISK_RADIAL, DEFAULT_EDGE_ORDER,
    DEFAULT_MIN_PANELS, DEFAULT_ORDER,
};
use crate::solvers::{solve_constrained_gevp, solve_saddle, ModeSet, TrialSolution};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    /// `u'' = 1` on `[0, π]`, `u(0) = u(π) = 0`.
    P1,
    /// `u'''' = 1` on `[0, π]`, `u = u'' = 0` at both ends.
    P2,
    /// `u'''' = 1` on `[0, π]`, `u = u' = 0` at both ends.
    P3,
    /// `Δu = cos r` on the unit disk, `u = 0` on the circle.
    P4,
    /// Unit-load plate on the unit square, `u = 0` on the edges.
    P5,
    /// Free vibration of the plate of P5.
    P6,
}

impl ProblemId {
    pub const ALL: [ProblemId; 6] = [
        ProblemId::P1,
        ProblemId::P2,
        ProblemId::P3,
        ProblemId::P4,
        ProblemId::P5,
        ProblemId::P6,
    ];

    pub fn is_1d(self) -> bool {
        matches!(self, ProblemId::P1 | ProblemId::P2 | ProblemId::P3)
    }

    /// Whether the boundary weight count `s` is a parameter.
    pub fn uses_s(self) -> bool {
        !self.is_1d()
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "P1" | "1" => Ok(ProblemId::P1),
            "P2" | "2" => Ok(ProblemId::P2),
            "P3" | "3" => Ok(ProblemId::P3),
            "P4" | "4" => Ok(ProblemId::P4),
            "P5" | "5" => Ok(ProblemId::P5),
            "P6" | "6" => Ok(ProblemId::P6),
            _ => Err(Error::InvalidArgument(format!("unknown problem {s:?}"))),
        }
    }
}

/// Plain family (cosines, or monomials on the disk) or the family completed
/// with `x` and `x²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BasisVariant {
    #[default]
    Plain,
    Augmented,
}

impl fmt::Display for BasisVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisVariant::Plain => "plain",
            BasisVariant::Augmented => "augmented",
        })
    }
}

impl FromStr for BasisVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" | "cosine" | "monomial" => Ok(BasisVariant::Plain),
            "augmented" | "augmented_cosine" => Ok(BasisVariant::Augmented),
            _ => Err(Error::InvalidArgument(format!(
                "unknown basis variant {s:?}"
            ))),
        }
    }
}

/// Quadrature orders; the defaults resolve every integrand used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSettings {
    /// Gauss order per panel for interval and square rules.
    pub order: usize,
    /// Panels per axis are `max(min_panels, N)`.
    pub min_panels: usize,
    pub disk_radial: usize,
    pub disk_angular: usize,
    pub circle_segment_order: usize,
    pub edge_order: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            min_panels: DEFAULT_MIN_PANELS,
            disk_radial: DEFAULT_DISK_RADIAL,
            disk_angular: DEFAULT_DISK_ANGULAR,
            circle_segment_order: DEFAULT_CIRCLE_SEGMENT_ORDER,
            edge_order: DEFAULT_EDGE_ORDER,
        }
    }
}

impl QuadratureSettings {
    /// Every order and panel count doubled.
    pub fn refined(self) -> Self {
        Self {
            order: 2 * self.order,
            min_panels: 2 * self.min_panels,
            disk_radial: 2 * self.disk_radial,
            disk_angular: 2 * self.disk_angular,
            circle_segment_order: 2 * self.circle_segment_order,
            edge_order: 2 * self.edge_order,
        }
    }

    fn panels(&self, n: usize) -> usize {
        self.min_panels.max(n)
    }
}

/// Everything needed to pose one of the model problems.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub variant: BasisVariant,
    /// Poisson ratio of the plate problems.
    pub nu: f64,
    pub quadrature: QuadratureSettings,
    /// Coarse grid of the clamped-plate finite-difference oracle.
    pub fd_points: usize,
}

/// Poisson ratio used when none is given.
pub const DEFAULT_NU: f64 = 0.3;

impl ProblemSpec {
    /// Defaults: plain basis except for P6, which uses the augmented basis
    /// (simply supported vibration).
    pub fn new(id: ProblemId) -> Self {
        Self {
            id,
            variant: if id == ProblemId::P6 {
                BasisVariant::Augmented
            } else {
                BasisVariant::Plain
            },
            nu: DEFAULT_NU,
            quadrature: QuadratureSettings::default(),
            fd_points: DEFAULT_FD_POINTS,
        }
    }

    pub fn with_variant(mut self, variant: BasisVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_quadrature(mut self, quadrature: QuadratureSettings) -> Self {
        self.quadrature = quadrature;
        self
    }

    pub fn energy_form(&self) -> Result<EnergyForm> {
        match self.id {
            ProblemId::P1 | ProblemId::P4 => Ok(EnergyForm::dirichlet(LoadSign::Plus)),
            ProblemId::P2 | ProblemId::P3 => Ok(EnergyForm::second_derivative(LoadSign::Minus)),
            ProblemId::P5 | ProblemId::P6 => EnergyForm::kirchhoff(self.nu),
        }
    }

    pub fn load(&self) -> fn(&[f64]) -> f64 {
        match self.id {
            ProblemId::P4 => |p| p[0].hypot(p[1]).cos(),
            ProblemId::P6 => |_| 0.0,
            _ => |_| 1.0,
        }
    }

    /// Short name of the trial family.
    pub fn basis_label(&self) -> &'static str {
        match (self.id, self.variant) {
            (ProblemId::P4, _) => "monomial",
            (_, BasisVariant::Plain) => "cosine",
            (_, BasisVariant::Augmented) => "augmented",
        }
    }

    /// `n` members on `[0, π]` in 1D; `n` per axis in 2D.
    pub fn basis(&self, n: usize) -> Result<TrialBasis> {
        let family = |len: f64| match self.variant {
            BasisVariant::Plain => Basis1D::cosine(n, len),
            BasisVariant::Augmented => Basis1D::augmented_cosine(n, len),
        };
        match self.id {
            ProblemId::P1 | ProblemId::P2 | ProblemId::P3 => Ok(family(PI)?.into()),
            ProblemId::P4 => match self.variant {
                BasisVariant::Plain => Ok(Basis2D::monomial(n)?.into()),
                BasisVariant::Augmented => Err(Error::InvalidArgument(
                    "the disk problem uses the monomial basis only".into(),
                )),
            },
            ProblemId::P5 | ProblemId::P6 => Ok(Basis2D::tensor(family(1.0)?, family(1.0)?).into()),
        }
    }

    pub fn weights(&self, s: usize) -> Result<WeightSet> {
        match self.id {
            ProblemId::P1 | ProblemId::P2 => {
                WeightSet::endpoints(&[(Endpoint::Left, 0), (Endpoint::Right, 0)])
            }
            ProblemId::P3 => WeightSet::endpoints(&[
                (Endpoint::Left, 0),
                (Endpoint::Right, 0),
                (Endpoint::Left, 1),
                (Endpoint::Right, 1),
            ]),
            ProblemId::P4 => WeightSet::circle_partition(s),
            ProblemId::P5 | ProblemId::P6 => WeightSet::square_edge_cosines(s),
        }
    }

    pub fn trace(&self) -> TraceOperator {
        if self.id.is_1d() {
            TraceOperator::Endpoint
        } else {
            TraceOperator::Value
        }
    }

    pub fn quadratures(&self, n: usize, s: usize) -> Result<Quadratures> {
        let q = &self.quadrature;
        match self.id {
            ProblemId::P1 | ProblemId::P2 | ProblemId::P3 => Ok(Quadratures {
                volume: VolumeRule::Line(composite_rule(q.order, q.panels(n), 0.0, PI)?),
                boundary: None,
            }),
            ProblemId::P4 => Ok(Quadratures {
                volume: VolumeRule::Plane(polar_disk(q.disk_radial, q.disk_angular)?),
                boundary: Some(circle_partition(s, q.circle_segment_order)?),
            }),
            ProblemId::P5 | ProblemId::P6 => {
                let axis = composite_rule(q.order, q.panels(n), 0.0, 1.0)?;
                Ok(Quadratures {
                    volume: VolumeRule::Plane(tensor_square(&axis, &axis)?),
                    boundary: Some(square_edges(q.edge_order)?),
                })
            }
        }
    }

    /// Assemble the constrained system. For P3 the slope rows vanish
    /// identically on cosine bases and are removed; their indices are
    /// returned.
    pub fn build(&self, n: usize, s: usize) -> Result<(ConstrainedSystem, Vec<usize>)> {
        let basis = self.basis(n)?;
        let weights = self.weights(s)?;
        let quads = self.quadratures(n, s)?;
        let load = self.load();
        let mut sys = build_system(
            &self.energy_form()?,
            &load,
            &basis,
            self.trace(),
            &weights,
            &quads,
            self.id == ProblemId::P6,
        )?;
        let dropped = if self.id == ProblemId::P3 {
            sys.drop_vacuous_constraints()
        } else {
            Vec::new()
        };
        Ok((sys, dropped))
    }

    /// The solution errors are measured against. P5 with cosines (whose
    /// members all have zero normal slope on the edges) is compared with the
    /// clamped plate; with the augmented family, with the simply supported
    /// one.
    pub fn reference(&self) -> Result<ReferenceSolution> {
        match self.id {
            ProblemId::P1 | ProblemId::P2 | ProblemId::P3 => exact_1d(self.id),
            ProblemId::P4 => Ok(cached(&DISK, exact_disk)),
            ProblemId::P5 => match self.variant {
                BasisVariant::Augmented => Ok(cached(&NAVIER, navier_ss_plate)),
                BasisVariant::Plain if self.fd_points == DEFAULT_FD_POINTS => {
                    if let Some(r) = CLAMPED.get() {
                        return Ok(r.clone());
                    }
                    let r = fd_biharmonic_ccplate(DEFAULT_FD_POINTS)?;
                    Ok(CLAMPED.get_or_init(|| r).clone())
                }
                BasisVariant::Plain => fd_biharmonic_ccplate(self.fd_points),
            },
            ProblemId::P6 => Err(Error::InvalidArgument(
                "P6 is an eigenproblem without a deflection reference".into(),
            )),
        }
    }

    /// Central and boundary probe points.
    pub fn probes(&self) -> (Vec<f64>, Vec<f64>) {
        match self.id {
            ProblemId::P1 | ProblemId::P2 | ProblemId::P3 => (vec![PI / 2.0], vec![0.0]),
            ProblemId::P4 => (vec![0.0, 0.0], vec![0.0, 1.0]),
            ProblemId::P5 | ProblemId::P6 => (vec![0.5, 0.5], vec![0.0, 0.0]),
        }
    }
}

static DISK: OnceLock<ReferenceSolution> = OnceLock::new();
static NAVIER: OnceLock<ReferenceSolution> = OnceLock::new();
static CLAMPED: OnceLock<ReferenceSolution> = OnceLock::new();

fn cached(
    cell: &'static OnceLock<ReferenceSolution>,
    make: fn() -> ReferenceSolution,
) -> ReferenceSolution {
    cell.get_or_init(make).clone()
}

/// Accuracy summary of one static solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub problem: ProblemId,
    pub basis: String,
    pub n: usize,
    pub s: Option<usize>,
    pub nu: Option<f64>,
    pub n_tot: usize,
    pub s_tot: usize,
    /// Constraint rows removed as identically zero.
    pub dropped_constraints: Vec<usize>,
    pub central_err_pct: f64,
    pub boundary_err_pct: f64,
    pub sup_err: f64,
    pub energy: f64,
    pub reference: String,
    pub wall_ms: f64,
    pub warnings: Vec<String>,
}

/// Frequencies of P6 with their `(m, n)` assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalReport {
    pub n: usize,
    pub s: usize,
    pub nu: f64,
    pub basis: String,
    pub modes: ModeSet,
    /// The lowest modes with their `(m, n)` assignment, ascending.
    pub paired: Vec<FrequencyRow>,
    /// The `m, n ≤ 3` block, ordered by `(m, n)`.
    pub rows: Vec<FrequencyRow>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemOutcome {
    Static {
        report: ErrorReport,
        solution: TrialSolution,
    },
    Modal(ModalReport),
}

/// Modes of P6 assigned to wave numbers; enough to cover every `m, n ≤ 3`.
pub const PAIRED_MODES: usize = 16;
/// Side of the reported `(m, n)` frequency block.
pub const FREQUENCY_BLOCK: usize = 3;

/// Build, solve and score one configuration.
pub fn run_problem(spec: &ProblemSpec, n: usize, s: usize) -> Result<ProblemOutcome> {
    let start = Instant::now();
    let (sys, dropped) = spec.build(n, s)?;
    let s_param = spec.id.uses_s().then_some(s);
    let nu = matches!(spec.id, ProblemId::P5 | ProblemId::P6).then_some(spec.nu);

    if spec.id == ProblemId::P6 {
        let mass = sys
            .mass
            .as_ref()
            .ok_or_else(|| Error::Internal("mass matrix missing".into()))?;
        let modes = solve_constrained_gevp(&sys.stiffness, mass, &sys.constraints)?;
        let paired = pair_frequencies(&modes, &sys.basis, PAIRED_MODES);
        let rows = frequency_block(&paired, FREQUENCY_BLOCK);
        return Ok(ProblemOutcome::Modal(ModalReport {
            n,
            s,
            nu: spec.nu,
            basis: spec.basis_label().into(),
            modes,
            paired,
            rows,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        }));
    }

    let solution = solve_saddle(&sys)?;
    let reference = spec.reference()?;
    let (central, boundary) = spec.probes();
    let u = |p: &[f64]| solution.value(p);
    let (central_err_pct, boundary_err_pct) = relative_errors(u, &reference, &central, &boundary)?;
    let report = ErrorReport {
        problem: spec.id,
        basis: spec.basis_label().into(),
        n,
        s: s_param,
        nu,
        n_tot: sys.n_tot(),
        s_tot: sys.s_tot(),
        dropped_constraints: dropped,
        central_err_pct,
        boundary_err_pct,
        sup_err: sup_error(u, &reference),
        energy: system_energy(&sys, &solution.coefficients),
        reference: reference.provenance.clone(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        warnings: solution.warnings.clone(),
    };
    Ok(ProblemOutcome::Static { report, solution })
}
