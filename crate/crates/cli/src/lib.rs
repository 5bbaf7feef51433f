//! `fwlab` command-line harness: spectra, verification suites, FW-transformed states and
//! radial wavefunctions written as CSV or JSON tables.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 usage, 3 I/O, 4 domain error.

pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand};
use fwlab_core::algebra::{hermitian_eig, FwTransform};
use fwlab_core::landau::{
    analytic_spectrum, build_dirac_hamiltonian, connect_to_fw_with, dirac_eigenstate_from, fw_wavefunction,
    uniform_grid, HalfInteger, ModelParams, Spin, SpinCoupling,
};
use fwlab_core::verification::{execute, Perturbation, SuiteConfig, Tolerances};
use fwlab_core::FwError;
use num_complex::Complex64;

pub use output::{Format, Table, Value};

pub const TOLERANCE_SCALE_VAR: &str = "FWLAB_TOLERANCE_SCALE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECKS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// `--help` / `--version`; not an error, printed to stdout.
    Info(String),
    Usage(String),
    Io(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => EXIT_OK,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Info(s) | CliError::Usage(s) => f.write_str(s),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
            CliError::Domain(s) => write!(f, "error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<FwError> for CliError {
    fn from(e: FwError) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum {
        m_list: Vec<HalfInteger>,
    },
    Verify {
        coupling: SpinCoupling,
        perturbation: Option<Perturbation>,
        tolerance_scale: f64,
    },
    Transform {
        n: usize,
        lambda: Spin,
    },
    Wavefunction {
        n: usize,
        lambda: Spin,
        m_total: HalfInteger,
        rho_max: f64,
        points: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Verify { .. } => "verify",
            Command::Transform { .. } => "transform",
            Command::Wavefunction { .. } => "wavefunction",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: ModelParams,
    pub output_path: PathBuf,
    pub format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "fwlab", version, about = "Exact Foldy-Wouthuysen transformation for a Dirac particle in a uniform magnetic field")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Common {
    /// Particle mass.
    #[arg(long, default_value_t = ModelParams::default().m, allow_negative_numbers = true)]
    m: f64,
    /// Charge (nonzero, either sign).
    #[arg(long, default_value_t = ModelParams::default().e, allow_negative_numbers = true)]
    e: f64,
    /// Field strength along z (positive).
    #[arg(long = "H", value_name = "H", default_value_t = ModelParams::default().h, allow_negative_numbers = true)]
    h: f64,
    /// Anomalous magnetic moment.
    #[arg(long = "mu-prime", default_value_t = ModelParams::default().mu_prime, allow_negative_numbers = true)]
    mu_prime: f64,
    /// Highest Landau level kept in the truncated basis.
    #[arg(long = "n-max", default_value_t = ModelParams::default().n_max)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file, replaced atomically.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Analytic eigenvalue table.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Total angular momentum projections, e.g. `--M 1/2,-1/2`; one row per (n, λ) if omitted.
        #[arg(long = "M", value_name = "M", value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_half_integer)]
        m_list: Vec<HalfInteger>,
    },
    /// Residual checks for the transformation, spectrum and eigenfunctions.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Couple the anomalous moment through Σ instead of Π (negative control).
        #[arg(long)]
        sabotage: bool,
        /// Add a random Hermitian perturbation of this max-norm to the Hamiltonian (negative control).
        #[arg(long)]
        perturb: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Dirac eigenstate, its FW image and the predicted FW state.
    Transform {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_spin)]
        lambda: Spin,
    },
    /// Sampled radial FW eigenfunction.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_spin)]
        lambda: Spin,
        #[arg(long = "M", value_name = "M", allow_hyphen_values = true, value_parser = parse_half_integer)]
        m_total: HalfInteger,
        /// Grid extent; defaults to 12 magnetic lengths.
        #[arg(long = "rho-max", allow_negative_numbers = true)]
        rho_max: Option<f64>,
        #[arg(long, default_value_t = 4000)]
        points: usize,
    },
}

fn parse_spin(s: &str) -> std::result::Result<Spin, String> {
    let v: i32 = s.trim_start_matches('+').parse().map_err(|_| format!("expected 1 or -1, got {s:?}"))?;
    Spin::from_i32(v).map_err(|e| e.to_string())
}

/// Accepts `1/2`, `-3/2`, `0.5`, `-1.5`.
fn parse_half_integer(s: &str) -> std::result::Result<HalfInteger, String> {
    let parsed = match s.split_once('/') {
        Some((num, "2")) => {
            let twice: i32 = num.trim_start_matches('+').parse().map_err(|_| format!("bad half-integer {s:?}"))?;
            HalfInteger::from_twice(twice)
        }
        Some(_) => return Err(format!("bad half-integer {s:?}")),
        None => HalfInteger::from_f64(s.parse().map_err(|_| format!("bad half-integer {s:?}"))?),
    };
    parsed.map_err(|e| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> CliError {
    let usage = Cli::command().render_usage();
    CliError::Usage(format!("error: {msg}\n\n{usage}\n\nFor more information, try '--help'."))
}

fn tolerance_scale(raw: Option<&str>) -> std::result::Result<f64, CliError> {
    let Some(raw) = raw else { return Ok(1.0) };
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(usage_error(format!("{TOLERANCE_SCALE_VAR} must be a positive number, got {raw:?}"))),
    }
}

/// Parses the command line, reading the tolerance scale from the environment.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let scale = std::env::var(TOLERANCE_SCALE_VAR).ok();
    parse_args_with_scale(argv, scale.as_deref())
}

/// [`parse_args`] with the tolerance-scale variable supplied explicitly.
pub fn parse_args_with_scale<I, T>(argv: I, scale: Option<&str>) -> std::result::Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let text = e.render().to_string();
        if e.use_stderr() {
            CliError::Usage(text)
        } else {
            CliError::Info(text)
        }
    })?;
    let (common, command) = match cli.command {
        Sub::Spectrum { common, m_list } => (common, Command::Spectrum { m_list }),
        Sub::Verify { common, sabotage, perturb, seed } => {
            let perturbation = match perturb {
                Some(a) if !(a.is_finite() && a >= 0.0) => {
                    return Err(usage_error(format!("--perturb must be a non-negative number, got {a}")))
                }
                Some(amplitude) => Some(Perturbation { amplitude, seed }),
                None => None,
            };
            let coupling = if sabotage { SpinCoupling::SpinSabotage } else { SpinCoupling::Polarization };
            (common, Command::Verify { coupling, perturbation, tolerance_scale: tolerance_scale(scale)? })
        }
        Sub::Transform { common, n, lambda } => (common, Command::Transform { n, lambda }),
        Sub::Wavefunction { common, n, lambda, m_total, rho_max, points } => {
            let params = params_of(&common)?;
            let rho_max = rho_max.unwrap_or(12.0 * params.magnetic_length());
            if !(rho_max.is_finite() && rho_max > 0.0) {
                return Err(usage_error(format!("--rho-max must be positive, got {rho_max}")));
            }
            if points == 0 {
                return Err(usage_error("--points must be positive"));
            }
            (common, Command::Wavefunction { n, lambda, m_total, rho_max, points })
        }
    };
    Ok(RunConfig { command, params: params_of(&common)?, output_path: common.out, format: common.format })
}

fn params_of(c: &Common) -> std::result::Result<ModelParams, CliError> {
    ModelParams::new(c.m, c.e, c.h, c.mu_prime, c.n_max).map_err(usage_error)
}

/// Computes the requested table, writes it, and returns the process exit code.
pub fn run(config: &RunConfig) -> std::result::Result<i32, CliError> {
    let (table, code) = build_table(config)?;
    output::write_atomic(&config.output_path, &table.render(config.format))
        .map_err(|e| CliError::Io(format!("{}: {e}", config.output_path.display())))?;
    Ok(code)
}

/// The table `run` would write, and the exit code it would return.
pub fn build_table(config: &RunConfig) -> std::result::Result<(Table, i32), CliError> {
    let p = &config.params;
    p.validate()?;
    let mut meta = Table::default();
    meta.meta("command", config.command.name())
        .meta("m", p.m)
        .meta("e", p.e)
        .meta("H", p.h)
        .meta("mu_prime", p.mu_prime)
        .meta("n_max", p.n_max);
    let (mut table, code) = match &config.command {
        Command::Spectrum { m_list } => (spectrum_table(p, m_list), EXIT_OK),
        Command::Verify { coupling, perturbation, tolerance_scale } => {
            verify_table(p, *coupling, *perturbation, *tolerance_scale)?
        }
        Command::Transform { n, lambda } => (transform_table(p, *n, *lambda)?, EXIT_OK),
        Command::Wavefunction { n, lambda, m_total, rho_max, points } => {
            (wavefunction_table(p, *n, *lambda, *m_total, *rho_max, *points)?, EXIT_OK)
        }
    };
    meta.meta.append(&mut table.meta);
    table.meta = meta.meta;
    Ok((table, code))
}

fn spectrum_table(p: &ModelParams, m_list: &[HalfInteger]) -> Table {
    let mut t = Table::new(&["n", "lambda", "M", "eps0", "E0", "E", "interior"]);
    let records = analytic_spectrum(p, m_list);
    t.meta("records", records.len());
    for r in records {
        t.push(vec![
            r.n.into(),
            r.lambda.as_i32().into(),
            r.m_total.map(|m| m.to_string()).into(),
            r.eps0.into(),
            r.e0.into(),
            r.e_total.into(),
            p.is_interior(r.n).into(),
        ]);
    }
    t
}

fn verify_table(
    p: &ModelParams,
    coupling: SpinCoupling,
    perturbation: Option<Perturbation>,
    scale: f64,
) -> std::result::Result<(Table, i32), CliError> {
    let config = SuiteConfig {
        coupling,
        perturbation,
        tolerances: Tolerances::default().scaled(scale),
        ..SuiteConfig::default()
    };
    let run = execute(p, &config)?;
    let failed: Vec<&str> = run.reports.iter().filter(|r| !r.passed).map(|r| r.check_name.as_str()).collect();
    let mut t = Table::new(&["check", "max_residual", "tolerance", "passed", "context"]);
    t.meta("coupling", format!("{coupling:?}"))
        .meta("perturbation", perturbation.map(|q| q.amplitude))
        .meta("seed", perturbation.map(|q| q.seed as i64))
        .meta("tolerance_scale", scale)
        .meta("checks", run.reports.len())
        .meta("failed", failed.join(";"))
        .meta("all_passed", failed.is_empty());
    for r in &run.reports {
        let context = r.context.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        t.push(vec![
            r.check_name.as_str().into(),
            r.max_residual.into(),
            r.tolerance.into(),
            r.passed.into(),
            context.into(),
        ]);
    }
    let code = if failed.is_empty() { EXIT_OK } else { EXIT_FAILED_CHECKS };
    Ok((t, code))
}

fn transform_table(p: &ModelParams, n: usize, lambda: Spin) -> std::result::Result<Table, CliError> {
    if !p.is_interior(n) {
        return Err(FwError::EdgeLevel { n, max_interior: p.max_interior_level() }.into());
    }
    let split = build_dirac_hamiltonian(p)?;
    let h = split.full();
    let eig = hermitian_eig(&h)?;
    let (state, record) = dirac_eigenstate_from(p, &h, &eig, n, lambda)?;
    let fw = FwTransform::new(&split)?.forward.apply(state.coeffs());
    let predicted = connect_to_fw_with(&state, &record, p.m, &h)?;
    let diff = fw
        .iter()
        .zip(predicted.coeffs())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let lower: f64 = fw.iter().enumerate().filter(|(k, _)| k % 4 >= 2).map(|(_, z)| z.norm_sqr()).sum::<f64>().sqrt();

    let mut t = Table::new(&[
        "index", "level", "component", "dirac_re", "dirac_im", "fw_re", "fw_im", "predicted_re", "predicted_im",
    ]);
    t.meta("n", n)
        .meta("lambda", lambda.as_i32())
        .meta("eps0", record.eps0)
        .meta("E0", record.e0)
        .meta("E", record.e_total)
        .meta("upper_ratio", (2.0 * record.eps0 / (record.eps0 + p.m)).sqrt())
        .meta("difference_norm", diff)
        .meta("fw_lower_norm", lower);
    let parts = |z: Complex64| [Value::Float(z.re), Value::Float(z.im)];
    for (k, ((d, f), q)) in state.coeffs().iter().zip(&fw).zip(predicted.coeffs()).enumerate() {
        let mut row = vec![k.into(), (k / 4).into(), (k % 4).into()];
        row.extend(parts(*d));
        row.extend(parts(*f));
        row.extend(parts(*q));
        t.push(row);
    }
    Ok(t)
}

fn wavefunction_table(
    p: &ModelParams,
    n: usize,
    lambda: Spin,
    m_total: HalfInteger,
    rho_max: f64,
    points: usize,
) -> std::result::Result<Table, CliError> {
    let wf = fw_wavefunction(p, n, lambda, m_total, &uniform_grid(rho_max, points))?;
    let mut t = Table::new(&["rho", "R"]);
    t.meta("n", n)
        .meta("lambda", lambda.as_i32())
        .meta("M", m_total.to_string())
        .meta("n_rho", wf.radial.n_rho)
        .meta("m_l", wf.m_l)
        .meta("b", wf.radial.b)
        .meta("E", wf.record.e_total)
        .meta("rho_max", rho_max)
        .meta("points", points);
    for (rho, r) in wf.samples {
        t.push(vec![rho.into(), r.into()]);
    }
    Ok(t)
}

/// Entry point shared by the binary: parse, run, report, and map to an exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|cfg| {
        let code = run(&cfg)?;
        if code == EXIT_FAILED_CHECKS {
            eprintln!("verification failed; see {}", cfg.output_path.display());
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(CliError::Info(text)) => {
            print!("{text}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
