//! Command-line driver for the Ritz-Lagrange experiments.
//!
//! `ritzlag run table1` runs a named preset, `ritzlag run --problem p4 --n 5
//! --s 4` a single configuration, and `ritzlag sweep --problem p1 --n
//! 5,10,20` a grid of configurations. Output goes to stdout or to `--out`;
//! in the latter case timings are written to `<out>.meta.json`.
//!
//! Exit codes: 0 success, 1 invalid request, 2 degenerate configuration,
//! 3 solver failure, 4 I/O.

pub mod config;
pub mod output;
pub mod registry;
pub mod run;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use ritz_lagrange::problems::{BasisVariant, ProblemId};

pub use config::{OutputFormat, QuadratureOverrides, RunConfig};
pub use registry::{preset, Experiment, Preset, PRESET_NAMES};
pub use run::{RunError, RunResult};

#[derive(Debug, Parser)]
#[command(
    name = "ritzlag",
    version,
    about = "Ritz method with Lagrange-multiplier boundary conditions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a preset or a single configuration.
    Run(RunArgs),
    /// Solve every combination of the given N and s values.
    Sweep(SweepArgs),
    /// List the presets.
    Presets,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the data here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// p1 … p6.
    #[arg(long)]
    pub problem: Option<ProblemId>,
    /// plain (cosine) or augmented.
    #[arg(long)]
    pub basis: Option<BasisVariant>,
    /// Poisson ratio of the plate problems.
    #[arg(long)]
    pub nu: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Preset name; same as --preset.
    #[arg(value_name = "PRESET", conflicts_with = "preset")]
    pub name: Option<String>,
    #[arg(long)]
    pub preset: Option<String>,
    /// JSON run configuration; command-line flags take precedence.
    #[arg(long, conflicts_with_all = ["name", "preset"])]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    /// Accepted and ignored; every computation is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Comma-separated N values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Comma-separated s values (ignored for the 1D problems).
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn read_config(path: &Path) -> Result<RunConfig, RunError> {
    let text =
        fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))
}

/// Merge the flags of `run` into a configuration.
pub fn run_config(args: &RunArgs) -> Result<RunConfig, RunError> {
    let mut config = match &args.config {
        Some(path) => read_config(path)?,
        None => {
            let problem = args
                .problem
                .problem
                .ok_or_else(|| RunError::Usage("need a preset or --problem".into()))?;
            let n = args
                .n
                .ok_or_else(|| RunError::Usage("--problem needs --n".into()))?;
            RunConfig::new(problem, n)
        }
    };
    if let Some(p) = args.problem.problem {
        config.problem = p;
    }
    if let Some(n) = args.n {
        config.n = n;
    }
    if args.s.is_some() {
        config.s = args.s;
    }
    if args.problem.basis.is_some() {
        config.basis = args.problem.basis;
    }
    if let Some(nu) = args.problem.nu {
        config.nu = nu;
    }
    if let Some(f) = args.output.format {
        config.format = f;
    }
    if args.output.out.is_some() {
        config.out = args.output.out.clone();
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn problem_spec(args: &ProblemArgs, problem: ProblemId) -> ritz_lagrange::problems::ProblemSpec {
    let mut config = RunConfig::new(problem, 0);
    config.basis = args.basis;
    if let Some(nu) = args.nu {
        config.nu = nu;
    }
    config.spec()
}

struct Job {
    result: RunResult,
    format: OutputFormat,
    out: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<Option<Job>, RunError> {
    match &cli.command {
        Command::Presets => Ok(None),
        Command::Run(args) => {
            if let Some(name) = args.name.as_ref().or(args.preset.as_ref()) {
                let p = preset(name).ok_or_else(|| {
                    RunError::Usage(format!(
                        "unknown preset {name:?}; known: {}",
                        PRESET_NAMES.join(", ")
                    ))
                })?;
                return Ok(Some(Job {
                    result: run::run_preset(&p)?,
                    format: args.output.format.unwrap_or_default(),
                    out: args.output.out.clone(),
                }));
            }
            let config = run_config(args)?;
            Ok(Some(Job {
                result: run::run_single(&config.spec(), config.n, config.s_or_zero())?,
                format: config.format,
                out: config.out,
            }))
        }
        Command::Sweep(args) => {
            let problem = args
                .problem
                .problem
                .ok_or_else(|| RunError::Usage("sweep needs --problem".into()))?;
            let spec = problem_spec(&args.problem, problem);
            Ok(Some(Job {
                result: run::run_sweep(&spec, &args.n, &args.s)?,
                format: args.output.format.unwrap_or_default(),
                out: args.output.out.clone(),
            }))
        }
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn emit(
    job: &Job,
    argv: &[String],
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), RunError> {
    let io = |e: std::io::Error| RunError::Io(e.to_string());
    let data = output::render(&job.result, job.format);
    for s in &job.result.skipped {
        writeln!(
            stderr,
            "skipped {} N={} s={}: {}",
            s.problem, s.n, s.s, s.reason
        )
        .map_err(io)?;
    }
    match &job.out {
        Some(path) => {
            let with_path = |e: std::io::Error| RunError::Io(format!("{}: {e}", path.display()));
            fs::write(path, data).map_err(with_path)?;
            fs::write(sidecar_path(path), output::sidecar(&job.result, argv)).map_err(with_path)?;
            writeln!(stdout, "{}", output::summary(&job.result)).map_err(io)?;
        }
        None => {
            stdout.write_all(data.as_bytes()).map_err(io)?;
            writeln!(stderr, "{}", output::summary(&job.result)).map_err(io)?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 1;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    if matches!(cli.command, Command::Presets) {
        for name in PRESET_NAMES {
            let p = preset(name).expect("registered");
            let _ = writeln!(stdout, "{name:<18} {}", p.description);
        }
        return 0;
    }
    let outcome = execute(&cli).and_then(|job| match job {
        Some(job) => emit(&job, &argv, stdout, stderr),
        None => Ok(()),
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
