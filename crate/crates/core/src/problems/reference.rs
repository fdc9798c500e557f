//! Exact, series and finite-difference reference solutions.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use nalgebra::DMatrix;

use super::fd::{fd_biharmonic_extrapolated, fd_radial, PlateGrid, PlateSupport};
use super::ProblemId;
use crate::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Stop summing the disk series once the next term falls below this.
const DISK_SERIES_CUTOFF: f64 = 1e-14;
/// Target bound on the omitted tail of the plate series.
const NAVIER_TAIL_TARGET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceKind {
    ClosedForm,
    Series { terms: usize },
    FdOracle { grid: usize },
}

impl fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferenceKind::ClosedForm => f.write_str("closed_form"),
            ReferenceKind::Series { terms } => write!(f, "series({terms})"),
            ReferenceKind::FdOracle { grid } => write!(f, "fd_oracle({grid})"),
        }
    }
}

/// Where error metrics are sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleDomain {
    /// 1001 uniform points on `[0, length]`.
    Interval { length: f64 },
    /// 101 × 101 uniform points.
    UnitSquare,
    /// The 101 × 101 grid on `[-1, 1]²` restricted to the closed disk.
    UnitDisk,
}

impl SampleDomain {
    pub fn dim(self) -> usize {
        match self {
            SampleDomain::Interval { .. } => 1,
            _ => 2,
        }
    }

    /// Sample points; 1D points carry `y = 0`.
    pub fn points(self) -> Vec<[f64; 2]> {
        match self {
            SampleDomain::Interval { length } => (0..=1000)
                .map(|i| [length * i as f64 / 1000.0, 0.0])
                .collect(),
            SampleDomain::UnitSquare => {
                let axis: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
                axis.iter()
                    .flat_map(|&x| axis.iter().map(move |&y| [x, y]))
                    .collect()
            }
            SampleDomain::UnitDisk => {
                let axis: Vec<f64> = (0..=100).map(|i| -1.0 + i as f64 / 50.0).collect();
                axis.iter()
                    .flat_map(|&x| axis.iter().map(move |&y| [x, y]))
                    .filter(|p| p[0] * p[0] + p[1] * p[1] <= 1.0 + 1e-12)
                    .collect()
            }
        }
    }
}

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A reference solution with its values on the metric sample grid.
#[derive(Clone)]
pub struct ReferenceSolution {
    pub kind: ReferenceKind,
    pub provenance: String,
    /// Bound on the truncation error of the evaluator (0 for closed forms).
    pub truncation_estimate: f64,
    domain: SampleDomain,
    eval: Evaluator,
    grid: Vec<[f64; 2]>,
    grid_values: Vec<f64>,
    max_abs: f64,
}

impl fmt::Debug for ReferenceSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReferenceSolution")
            .field("kind", &self.kind)
            .field("provenance", &self.provenance)
            .field("truncation_estimate", &self.truncation_estimate)
            .field("domain", &self.domain)
            .field("max_abs", &self.max_abs)
            .finish_non_exhaustive()
    }
}

impl ReferenceSolution {
    fn new(
        kind: ReferenceKind,
        provenance: impl Into<String>,
        truncation_estimate: f64,
        domain: SampleDomain,
        eval: Evaluator,
        grid_values: Option<Vec<f64>>,
    ) -> Self {
        let grid = domain.points();
        let dim = domain.dim();
        let grid_values =
            grid_values.unwrap_or_else(|| grid.iter().map(|p| eval(&p[..dim])).collect());
        let max_abs = grid_values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Self {
            kind,
            provenance: provenance.into(),
            truncation_estimate,
            domain,
            eval,
            grid,
            grid_values,
            max_abs,
        }
    }

    pub fn value(&self, point: &[f64]) -> f64 {
        (self.eval)(point)
    }

    pub fn domain(&self) -> SampleDomain {
        self.domain
    }

    pub fn grid(&self) -> &[[f64; 2]] {
        &self.grid
    }

    pub fn grid_values(&self) -> &[f64] {
        &self.grid_values
    }

    /// `max |ū|` over the sample grid.
    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    /// Write the sample grid as CSV (`x,u` or `x,y,u`).
    pub fn write_grid_csv(&self, mut out: impl Write) -> io::Result<()> {
        if self.domain.dim() == 1 {
            writeln!(out, "x,u")?;
            for (p, v) in self.grid.iter().zip(&self.grid_values) {
                writeln!(out, "{},{}", p[0], v)?;
            }
        } else {
            writeln!(out, "x,y,u")?;
            for (p, v) in self.grid.iter().zip(&self.grid_values) {
                writeln!(out, "{},{},{}", p[0], p[1], v)?;
            }
        }
        Ok(())
    }
}

/// Quartic `c0 + c1 x + c2 x² + c3 x³ + c4 x⁴` with derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quartic(pub [f64; 5]);

impl Quartic {
    pub fn value(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn d1(&self, x: f64) -> f64 {
        let c = &self.0;
        c[1] + x * (2.0 * c[2] + x * (3.0 * c[3] + x * 4.0 * c[4]))
    }

    pub fn d2(&self, x: f64) -> f64 {
        let c = &self.0;
        2.0 * c[2] + x * (6.0 * c[3] + x * 12.0 * c[4])
    }
}

/// Closed-form solutions on `[0, π]`.
pub fn exact_1d_polynomial(id: ProblemId) -> Result<Quartic> {
    match id {
        ProblemId::P1 => Ok(Quartic([0.0, -PI / 2.0, 0.5, 0.0, 0.0])),
        ProblemId::P2 => Ok(Quartic([
            0.0,
            PI.powi(3) / 24.0,
            0.0,
            -PI / 12.0,
            1.0 / 24.0,
        ])),
        ProblemId::P3 => Ok(p2_cosine_limit()),
        other => Err(Error::InvalidArgument(format!(
            "{other} has no 1D closed form"
        ))),
    }
}

/// Limit of the cosine-basis trial solutions of P2, which is the clamped
/// solution `x⁴/24 − πx³/12 + π²x²/24` rather than the P2 solution.
pub fn p2_cosine_limit() -> Quartic {
    Quartic([0.0, 0.0, PI * PI / 24.0, -PI / 12.0, 1.0 / 24.0])
}

pub fn exact_1d(id: ProblemId) -> Result<ReferenceSolution> {
    let q = exact_1d_polynomial(id)?;
    Ok(ReferenceSolution::new(
        ReferenceKind::ClosedForm,
        format!("{id} closed form"),
        0.0,
        SampleDomain::Interval { length: PI },
        Arc::new(move |p: &[f64]| q.value(p[0])),
        None,
    ))
}

/// Terms `(-1)^i r^{2i} / (2i·(2i)!)` for `i ≥ 1`, stopping once the next
/// term at `r = 1` is below the cutoff. Returns the coefficients and the
/// magnitude of the first omitted one.
fn disk_series_coefficients() -> (Vec<f64>, f64) {
    let mut coeffs = Vec::new();
    let mut factorial = 1.0;
    let mut i = 1;
    loop {
        let k = 2 * i;
        factorial *= ((k - 1) * k) as f64;
        let c = 1.0 / (k as f64 * factorial);
        if c < DISK_SERIES_CUTOFF {
            return (coeffs, c);
        }
        coeffs.push(if i % 2 == 0 { c } else { -c });
        i += 1;
    }
}

fn even_series(coeffs: &[f64], r: f64) -> f64 {
    let r2 = r * r;
    coeffs.iter().rev().fold(0.0, |acc, &c| (acc + c) * r2)
}

/// `Ci(1) = γ + Σ_{i≥1} (-1)^i / (2i·(2i)!)`.
pub fn cosine_integral_at_one() -> f64 {
    let (coeffs, _) = disk_series_coefficients();
    EULER_GAMMA + even_series(&coeffs, 1.0)
}

/// Radial profile of the solution of `Δu = cos r` on the unit disk with
/// `u = 0` on the circle:
///
/// ```text
/// ū(r) = γ + cos 1 − Ci(1) − cos r + Σ_{i≥1} (-1)^i r^{2i} / (2i·(2i)!)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct DiskProfile {
    coeffs: Vec<f64>,
    constant: f64,
    pub truncation_estimate: f64,
}

impl DiskProfile {
    pub fn new() -> Self {
        let (coeffs, next) = disk_series_coefficients();
        let constant = EULER_GAMMA + 1f64.cos() - cosine_integral_at_one();
        Self {
            coeffs,
            constant,
            truncation_estimate: next,
        }
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn value(&self, r: f64) -> f64 {
        self.constant - r.cos() + even_series(&self.coeffs, r)
    }
}

impl Default for DiskProfile {
    fn default() -> Self {
        Self::new()
    }
}

pub fn exact_disk() -> ReferenceSolution {
    let profile = DiskProfile::new();
    let kind = ReferenceKind::Series {
        terms: profile.terms(),
    };
    let est = profile.truncation_estimate;
    ReferenceSolution::new(
        kind,
        "radial series for Δu = cos r, u(1) = 0",
        est,
        SampleDomain::UnitDisk,
        Arc::new(move |p: &[f64]| profile.value(p[0].hypot(p[1]))),
        None,
    )
}

/// Finite-volume oracle for the disk problem on `cells` radial cells.
pub fn fd_disk(cells: usize) -> ReferenceSolution {
    let profile = Arc::new(fd_radial(cells, f64::cos));
    let h = profile.h;
    ReferenceSolution::new(
        ReferenceKind::FdOracle { grid: cells },
        "finite-volume radial solve of (r u')' = r cos r",
        h * h,
        SampleDomain::UnitDisk,
        Arc::new(move |p: &[f64]| profile.value(p[0].hypot(p[1]))),
        None,
    )
}

/// Double-sine series of the simply supported unit-square plate under unit
/// load with unit flexural rigidity.
#[derive(Debug, Clone, PartialEq)]
pub struct NavierSeries {
    /// Largest odd index retained in each direction.
    pub max_index: usize,
    /// `c[a][b]` for `m = 2a + 1`, `n = 2b + 1`.
    coeffs: DMatrix<f64>,
}

impl NavierSeries {
    /// Bound on the omitted tail when all odd indices up to `max_index` are
    /// kept: `(m² + n²)² ≥ 2m³n` gives `Σ_{m > M} 1/(π⁴ m⁴) ≤ 1/(6π⁴M³)` per
    /// direction.
    pub fn tail_bound(max_index: usize) -> f64 {
        1.0 / (3.0 * PI.powi(4) * (max_index as f64).powi(3))
    }

    pub fn with_tail(target: f64) -> Self {
        let mut m = 1;
        while Self::tail_bound(m) >= target {
            m += 2;
        }
        Self::with_max_index(m)
    }

    pub fn with_max_index(max_index: usize) -> Self {
        let k = max_index.div_ceil(2);
        let scale = 16.0 / PI.powi(6);
        let coeffs = DMatrix::from_fn(k, k, |a, b| {
            let (m, n) = ((2 * a + 1) as f64, (2 * b + 1) as f64);
            let s = m * m + n * n;
            scale / (m * n * s * s)
        });
        Self { max_index, coeffs }
    }

    pub fn tail(&self) -> f64 {
        Self::tail_bound(self.max_index)
    }

    fn sines(&self, t: f64) -> Vec<f64> {
        (0..self.coeffs.nrows())
            .map(|a| ((2 * a + 1) as f64 * PI * t).sin())
            .collect()
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let (sx, sy) = (self.sines(x), self.sines(y));
        let mut total = 0.0;
        for (a, &sa) in sx.iter().enumerate() {
            let row: f64 = self.coeffs.row(a).iter().zip(&sy).map(|(c, s)| c * s).sum();
            total += sa * row;
        }
        total
    }

    /// Values on the tensor grid `xs × ys` as `S_x C S_yᵀ`, row-major in `(x, y)`.
    pub fn grid(&self, xs: &[f64], ys: &[f64]) -> DMatrix<f64> {
        let k = self.coeffs.nrows();
        let sx = DMatrix::from_fn(xs.len(), k, |i, a| ((2 * a + 1) as f64 * PI * xs[i]).sin());
        let sy = DMatrix::from_fn(ys.len(), k, |j, b| ((2 * b + 1) as f64 * PI * ys[j]).sin());
        sx * &self.coeffs * sy.transpose()
    }
}

pub fn navier_ss_plate() -> ReferenceSolution {
    let series = Arc::new(NavierSeries::with_tail(NAVIER_TAIL_TARGET));
    let axis: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let g = series.grid(&axis, &axis);
    let values: Vec<f64> = (0..axis.len())
        .flat_map(|i| (0..axis.len()).map(move |j| (i, j)))
        .map(|(i, j)| g[(i, j)])
        .collect();
    let kind = ReferenceKind::Series {
        terms: series.coeffs.len(),
    };
    let tail = series.tail();
    ReferenceSolution::new(
        kind,
        format!("double sine series, odd indices up to {}", series.max_index),
        tail,
        SampleDomain::UnitSquare,
        Arc::new(move |p: &[f64]| series.value(p[0], p[1])),
        Some(values),
    )
}

/// Default coarse grid of the plate finite-difference oracle.
pub const DEFAULT_FD_POINTS: usize = 65;

/// Richardson-extrapolated 13-point solve of the unit-load plate on grids
/// of `points` and `2·points − 1` nodes per side, interpolated bilinearly.
pub fn fd_biharmonic_plate(points: usize, support: PlateSupport) -> Result<ReferenceSolution> {
    if points < DEFAULT_FD_POINTS || points.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference grid needs an odd node count ≥ {DEFAULT_FD_POINTS}, got {points}"
        )));
    }
    let (extrapolated, coarse, fine) = fd_biharmonic_extrapolated(points, support, 1.0)
        .ok_or_else(|| {
            Error::Internal("finite-difference plate matrix is not positive definite".into())
        })?;
    let estimate = (fine.center() - coarse.center()).abs() / 3.0;
    let grid: Arc<PlateGrid> = Arc::new(extrapolated);
    let label = match support {
        PlateSupport::Clamped => "clamped",
        PlateSupport::SimplySupported => "simply supported",
    };
    Ok(ReferenceSolution::new(
        ReferenceKind::FdOracle { grid: points },
        format!(
            "13-point finite differences ({label}), {points} and {} nodes, Richardson",
            2 * points - 1
        ),
        estimate,
        SampleDomain::UnitSquare,
        Arc::new(move |p: &[f64]| grid.interpolate(p[0], p[1])),
        None,
    ))
}

pub fn fd_biharmonic_ccplate(points: usize) -> Result<ReferenceSolution> {
    fd_biharmonic_plate(points, PlateSupport::Clamped)
}
