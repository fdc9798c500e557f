use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use ritz_lagrange::basis::{Basis1D, Endpoint, EndpointFunctional, Jet1};
use ritz_lagrange::problems::{
    run_problem, sobolev_residual, ErrorReport, ModalReport, ProblemOutcome, ProblemSpec,
    SobolevProduct,
};
use ritz_lagrange::solvers::{
    boundary_term_system, classify_square_system, tau_system, ConsistencyVerdict,
};
use ritz_lagrange::Error;

use crate::registry::{Experiment, Preset};

/// One static solve in output form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StaticRow {
    pub problem: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub s: Option<usize>,
    pub basis: String,
    pub nu: Option<f64>,
    pub n_tot: usize,
    pub s_tot: usize,
    pub central_err_pct: f64,
    pub boundary_err_pct: f64,
    pub sup_err: f64,
    pub energy: f64,
    pub reference: String,
    pub warnings: Vec<String>,
    pub coefficients: Vec<f64>,
    pub multipliers: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyEntry {
    pub m: usize,
    pub n: usize,
    pub omega_est: f64,
    pub omega_exact: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyTable {
    #[serde(rename = "N")]
    pub n: usize,
    pub s: usize,
    pub nu: f64,
    pub basis: String,
    /// The `m, n ≤ 3` block, ordered by `(m, n)`.
    pub block: Vec<FrequencyEntry>,
    /// Every paired mode, ascending in frequency.
    pub paired: Vec<FrequencyEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRow {
    pub system: String,
    pub verdict: String,
    pub rank: usize,
    pub augmented_rank: usize,
    pub dimension: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessRow {
    pub basis: String,
    pub product: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub residual: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "rows", rename_all = "snake_case")]
pub enum Section {
    Static(Vec<StaticRow>),
    Frequencies(FrequencyTable),
    Verdicts(Vec<VerdictRow>),
    Completeness(Vec<CompletenessRow>),
}

/// A configuration that was not solved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Skipped {
    pub problem: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub s: usize,
    pub reason: String,
}

/// Wall-clock time of one solve; kept out of the data files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub label: String,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RunResult {
    pub title: String,
    pub sections: Vec<Section>,
    pub skipped: Vec<Skipped>,
    #[serde(skip)]
    pub timings: Vec<Timing>,
}

impl RunResult {
    fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Default::default()
        }
    }

    /// Consecutive static sections are merged into one table.
    fn push(&mut self, section: Section) {
        if let (Some(Section::Static(rows)), Section::Static(more)) =
            (self.sections.last_mut(), &section)
        {
            rows.extend(more.iter().cloned());
            return;
        }
        self.sections.push(section);
    }

    pub fn row_count(&self) -> usize {
        self.sections
            .iter()
            .map(|s| match s {
                Section::Static(rows) => rows.len(),
                Section::Frequencies(t) => t.block.len(),
                Section::Verdicts(rows) => rows.len(),
                Section::Completeness(rows) => rows.len(),
            })
            .sum()
    }
}

/// Failure of a whole run, classified for the exit status.
#[derive(Debug)]
pub enum RunError {
    /// `N_tot ≤ s_tot` or a rank-deficient constraint block.
    Degenerate(String),
    Solver(String),
    Usage(String),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Usage(_) => 1,
            RunError::Degenerate(_) => 2,
            RunError::Solver(_) => 3,
            RunError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Degenerate(m) => f.write_str(m),
            RunError::Solver(m) => write!(f, "solver failure: {m}"),
            RunError::Usage(m) => write!(f, "invalid request: {m}"),
            RunError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateConfiguration { .. } | Error::ConstraintDegenerate { .. } => {
                RunError::Degenerate(e.to_string())
            }
            Error::InvalidArgument(_) => RunError::Usage(e.to_string()),
            _ => RunError::Solver(e.to_string()),
        }
    }
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::DegenerateConfiguration { .. } | Error::ConstraintDegenerate { .. }
    )
}

fn static_row(report: &ErrorReport, coefficients: Vec<f64>, multipliers: Vec<f64>) -> StaticRow {
    StaticRow {
        problem: report.problem.to_string(),
        n: report.n,
        s: report.s,
        basis: report.basis.clone(),
        nu: report.nu,
        n_tot: report.n_tot,
        s_tot: report.s_tot,
        central_err_pct: report.central_err_pct,
        boundary_err_pct: report.boundary_err_pct,
        sup_err: report.sup_err,
        energy: report.energy,
        reference: report.reference.clone(),
        warnings: report.warnings.clone(),
        coefficients,
        multipliers,
    }
}

fn frequency_table(report: &ModalReport) -> FrequencyTable {
    let entry = |r: &ritz_lagrange::problems::FrequencyRow| FrequencyEntry {
        m: r.m,
        n: r.n,
        omega_est: r.omega_est,
        omega_exact: r.omega_exact,
        rel_err: r.rel_err,
    };
    let mut paired: Vec<FrequencyEntry> = report.paired.iter().map(entry).collect();
    paired.sort_by(|a, b| a.omega_est.total_cmp(&b.omega_est));
    FrequencyTable {
        n: report.n,
        s: report.s,
        nu: report.nu,
        basis: report.basis.clone(),
        block: report.rows.iter().map(entry).collect(),
        paired,
    }
}

fn label(spec: &ProblemSpec, n: usize, s: usize) -> String {
    if spec.id.uses_s() {
        format!("{} {} N={n} s={s}", spec.id, spec.basis_label())
    } else {
        format!("{} {} N={n}", spec.id, spec.basis_label())
    }
}

/// Solve every pair; degenerate pairs are recorded and skipped.
pub fn sweep(
    spec: &ProblemSpec,
    pairs: &[(usize, usize)],
    result: &mut RunResult,
) -> Result<(), RunError> {
    let mut rows = Vec::new();
    for &(n, s) in pairs {
        let start = Instant::now();
        match run_problem(spec, n, s) {
            Ok(ProblemOutcome::Static { report, solution }) => {
                rows.push(static_row(
                    &report,
                    solution.coefficients.iter().copied().collect(),
                    solution.multipliers.iter().copied().collect(),
                ));
            }
            Ok(ProblemOutcome::Modal(report)) => {
                result.push(Section::Frequencies(frequency_table(&report)))
            }
            Err(e) if is_degenerate(&e) => result.skipped.push(Skipped {
                problem: spec.id.to_string(),
                n,
                s,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
        result.timings.push(Timing {
            label: label(spec, n, s),
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    if !rows.is_empty() {
        result.push(Section::Static(rows));
    }
    Ok(())
}

fn verdict_row(system: &str, v: &ConsistencyVerdict) -> VerdictRow {
    VerdictRow {
        system: system.into(),
        verdict: v.tag.to_string(),
        rank: v.rank,
        augmented_rank: v.augmented_rank,
        dimension: v.dimension,
        residual: v.residual,
    }
}

/// Tau systems with harmonics `0..=6` and the boundary-term system with
/// six cosines, for `u'' = 1`, `u(0) = u(π) = 0`.
pub fn tau_demo() -> Result<Vec<VerdictRow>, RunError> {
    let basis = Basis1D::cosine(7, PI)?;
    let ends = [
        EndpointFunctional::value(Endpoint::Left),
        EndpointFunctional::value(Endpoint::Right),
    ];
    let one = |_: &[f64]| 1.0;
    let mut rows = Vec::new();
    for (name, weights) in [
        ("tau, weights cos mx, m = 0..4", [0, 1, 2, 3, 4]),
        ("tau, weights cos mx, m = 1..5", [1, 2, 3, 4, 5]),
        ("tau, weights cos mx, m = 2..6", [2, 3, 4, 5, 6]),
    ] {
        let (a, b) = tau_system(&basis, &weights, &ends, &one)?;
        rows.push(verdict_row(name, &classify_square_system(&a, &b)));
    }
    let (a, b) = boundary_term_system(&Basis1D::cosine(6, PI)?, &one);
    rows.push(verdict_row(
        "boundary-term Galerkin, N = 6",
        &classify_square_system(&a, &b),
    ));
    Ok(rows)
}

/// Residuals of `x²` on `[0, π]` in both Sobolev products.
pub fn completeness_demo() -> Result<Vec<CompletenessRow>, RunError> {
    let square = |x: f64| Jet1 {
        value: x * x,
        d1: 2.0 * x,
        d2: 2.0,
    };
    let families = [
        ("cosine", Basis1D::cosine(40, PI)?),
        ("augmented", Basis1D::augmented_cosine(40, PI)?),
    ];
    let mut rows = Vec::new();
    for (name, basis) in &families {
        for (product, tag) in [
            (SobolevProduct::W21L3, "W21"),
            (SobolevProduct::W22L3, "W22"),
        ] {
            for n in [5, 10, 20, 40] {
                let r = sobolev_residual(square, basis, product, n)?;
                rows.push(CompletenessRow {
                    basis: (*name).into(),
                    product: tag.into(),
                    n,
                    residual: r.residual,
                    rank: r.rank,
                });
            }
        }
    }
    Ok(rows)
}

pub fn run_preset(preset: &Preset) -> Result<RunResult, RunError> {
    let mut result = RunResult::new(format!("{}: {}", preset.name, preset.description));
    for experiment in &preset.experiments {
        match experiment {
            Experiment::Sweep { spec, pairs } => sweep(spec, pairs, &mut result)?,
            Experiment::Frequencies { spec, n, s } => sweep(spec, &[(*n, *s)], &mut result)?,
            Experiment::Tau => {
                let start = Instant::now();
                result.push(Section::Verdicts(tau_demo()?));
                result.timings.push(Timing {
                    label: "tau-demo".into(),
                    wall_ms: start.elapsed().as_secs_f64() * 1e3,
                });
            }
            Experiment::Completeness => {
                let start = Instant::now();
                result.push(Section::Completeness(completeness_demo()?));
                result.timings.push(Timing {
                    label: "completeness-demo".into(),
                    wall_ms: start.elapsed().as_secs_f64() * 1e3,
                });
            }
        }
    }
    Ok(result)
}

/// A sweep over every combination of `ns` and `ss`. Fails when nothing
/// could be solved.
pub fn run_sweep(spec: &ProblemSpec, ns: &[usize], ss: &[usize]) -> Result<RunResult, RunError> {
    let ss: Vec<usize> = if spec.id.uses_s() {
        ss.to_vec()
    } else {
        vec![0]
    };
    if ns.is_empty() || ss.is_empty() {
        return Err(RunError::Usage("empty N or s list".into()));
    }
    let pairs: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| ss.iter().map(move |&s| (n, s)))
        .collect();
    let mut result = RunResult::new(format!("{} sweep, {} basis", spec.id, spec.basis_label()));
    sweep(spec, &pairs, &mut result)?;
    if result.row_count() == 0 {
        let reasons: Vec<String> = result.skipped.iter().map(|s| s.reason.clone()).collect();
        return Err(RunError::Degenerate(format!(
            "no pair could be solved ({})",
            reasons.join("; ")
        )));
    }
    Ok(result)
}

pub fn run_single(spec: &ProblemSpec, n: usize, s: usize) -> Result<RunResult, RunError> {
    if spec.id.uses_s() && s == 0 {
        return Err(RunError::Usage(format!("{} needs --s", spec.id)));
    }
    let mut result = RunResult::new(label(spec, n, s));
    sweep(spec, &[(n, s)], &mut result)?;
    if let Some(skip) = result.skipped.first() {
        return Err(RunError::Degenerate(skip.reason.clone()));
    }
    Ok(result)
}
