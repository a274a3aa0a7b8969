//! Command-line surface and output formats.
//!
//! ```text
//! selfgrav sweep        [--mass KG] [--separation M] [--durations S,S..] [--theta-start RAD]
//!                       [--theta-end RAD] [--theta-points N] [--engine analytic|numeric|both]
//!                       [--workers N]
//! selfgrav feasibility  [--mass KG] [--separation M] --duration S
//! selfgrav consistency  [--mass KG] [--separation M] --duration S --theta RAD
//! selfgrav constants
//! ```
//!
//! Every subcommand also takes `--G`, `--hbar`, `--c` (constant overrides),
//! `--config PATH` (TOML with a `[constants]` table), `--format csv|json|text`
//! and `--output PATH` (stdout when absent).
//!
//! Sweep CSV has the header `theta_rad,duration_s,T,P_x_plus,P_qm,D` and
//! prints every number with 17 significant digits so values round-trip
//! exactly.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::Error;
use crate::experiment::{
    consistency_run, feasibility, run_sweep, run_sweep_with_workers, ConsistencyReport, Engine,
    FeasibilityReport, SweepResult, SweepRow, SweepSpec, ThetaGrid,
};
use crate::sn_dynamics::StepControl;
use crate::units::{
    planck_mass, ExperimentParams, PhysConstants, PrepAngle, YB_MASS, YB_SEPARATION,
};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Unknown flag or subcommand, or otherwise malformed command line.
    pub const USAGE: i32 = 2;
    pub const MISSING_ARGUMENT: i32 = 3;
    /// A value that does not parse (e.g. `--mass abc`).
    pub const BAD_VALUE: i32 = 4;
    /// A value that parses but violates a physical invariant (e.g. `--mass -1`).
    pub const INVARIANT: i32 = 5;
    pub const IO: i32 = 6;
    /// The computation itself failed.
    pub const COMPUTATION: i32 = 7;
}

pub const SWEEP_CSV_HEADER: [&str; 6] = ["theta_rad", "duration_s", "T", "P_x_plus", "P_qm", "D"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Analytic,
    Numeric,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Analytic => Engine::Analytic,
            EngineArg::Numeric => Engine::Numeric,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "selfgrav",
    version,
    about = "Gravitational self-decoherence in a Stern-Gerlach interferometer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate P_x+, P_qm and D over a theta grid.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Dimensionless phase, kinetic-term ratio and largest deviation for one setup.
    #[command(allow_negative_numbers = true)]
    Feasibility(SingleRunArgs),
    /// Compare RK4 integration with the closed-form arm amplitudes.
    #[command(allow_negative_numbers = true)]
    Consistency(ConsistencyArgs),
    /// Print the constants in use and the reduced Planck mass.
    #[command(allow_negative_numbers = true)]
    Constants(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Gravitational constant override, m^3 kg^-1 s^-2 (0 gives standard QM).
    #[arg(long = "G", value_name = "G")]
    g: Option<f64>,
    /// Reduced Planck constant override, J s.
    #[arg(long)]
    hbar: Option<f64>,
    /// Speed of light override, m/s.
    #[arg(long)]
    c: Option<f64>,
    /// TOML file with a [constants] table (G, hbar, c).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SetupArgs {
    /// Particle mass, kg.
    #[arg(long, default_value_t = YB_MASS)]
    mass: f64,
    /// Arm separation, m.
    #[arg(long, default_value_t = YB_SEPARATION)]
    separation: f64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    setup: SetupArgs,
    /// Comma-separated durations, s.
    #[arg(
        long,
        alias = "duration",
        value_delimiter = ',',
        default_value = "5,50"
    )]
    durations: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    theta_start: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    theta_end: f64,
    #[arg(long, default_value_t = 721)]
    theta_points: usize,
    #[arg(long, value_enum, default_value = "analytic")]
    engine: EngineArg,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct SingleRunArgs {
    #[command(flatten)]
    setup: SetupArgs,
    /// Duration, s.
    #[arg(long)]
    duration: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ConsistencyArgs {
    #[command(flatten)]
    setup: SetupArgs,
    #[arg(long)]
    duration: f64,
    /// Preparation angle, rad.
    #[arg(long)]
    theta: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Sweep {
        spec: SweepSpec,
        workers: Option<usize>,
    },
    Feasibility(ExperimentParams),
    Consistency(ExperimentParams),
    Constants,
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub action: Action,
    pub constants: PhysConstants,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// `--help` / `--version`: not a failure.
    #[error("{0}")]
    Info(String),
    #[error("{message}")]
    Usage { message: String, code: i32 },
    #[error(transparent)]
    Invariant(Error),
    #[error(transparent)]
    Io(Error),
    #[error(transparent)]
    Computation(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => exit::OK,
            CliError::Usage { code, .. } => *code,
            CliError::Invariant(_) => exit::INVARIANT,
            CliError::Io(_) => exit::IO,
            CliError::Computation(_) => exit::COMPUTATION,
        }
    }

    fn from_clap(e: clap::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                return CliError::Info(e.to_string())
            }
            ErrorKind::MissingRequiredArgument
            | ErrorKind::MissingSubcommand
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => exit::MISSING_ARGUMENT,
            ErrorKind::ValueValidation | ErrorKind::InvalidValue => exit::BAD_VALUE,
            _ => exit::USAGE,
        };
        CliError::Usage {
            message: e.to_string(),
            code,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant { .. } => CliError::Invariant(e),
            Error::Io { .. } => CliError::Io(e),
            _ => CliError::Computation(e),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    constants: ConstantsOverride,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsOverride {
    #[serde(rename = "G")]
    g: Option<f64>,
    hbar: Option<f64>,
    c: Option<f64>,
}

/// Validation failures while building a config are invariant violations.
fn invalid(e: Error) -> CliError {
    match e {
        Error::Io { .. } => CliError::Io(e),
        _ => CliError::Invariant(e),
    }
}

fn resolve_constants(common: &CommonArgs) -> Result<PhysConstants, CliError> {
    let mut constants = PhysConstants::codata();
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(Error::io(path, e)))?;
        let file: ConfigFile = toml::from_str(&text).map_err(|e| CliError::Usage {
            message: format!("{}: {e}", path.display()),
            code: exit::BAD_VALUE,
        })?;
        let o = file.constants;
        constants.g = o.g.unwrap_or(constants.g);
        constants.hbar = o.hbar.unwrap_or(constants.hbar);
        constants.c = o.c.unwrap_or(constants.c);
    }
    constants.g = common.g.unwrap_or(constants.g);
    constants.hbar = common.hbar.unwrap_or(constants.hbar);
    constants.c = common.c.unwrap_or(constants.c);
    constants.validate().map_err(invalid)?;
    Ok(constants)
}

/// Parses arguments (without the program name) into a validated config.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("selfgrav")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(CliError::from_clap)?;

    let (action, common, default_format) = match cli.command {
        Command::Sweep(a) => {
            let params = ExperimentParams::new(a.setup.mass, a.setup.separation, 0.0, 0.0)
                .map_err(invalid)?;
            let grid = ThetaGrid {
                start: a.theta_start,
                end: a.theta_end,
                points: a.theta_points,
            };
            PrepAngle::new(grid.start).map_err(invalid)?;
            PrepAngle::new(grid.end).map_err(invalid)?;
            let spec = SweepSpec {
                params,
                grid,
                durations: a.durations,
                engine: a.engine.into(),
                step: StepControl::default(),
            };
            spec.validate().map_err(invalid)?;
            if a.workers == Some(0) {
                return Err(CliError::Usage {
                    message: "--workers must be at least 1".into(),
                    code: exit::BAD_VALUE,
                });
            }
            (
                Action::Sweep {
                    spec,
                    workers: a.workers,
                },
                a.common,
                Format::Csv,
            )
        }
        Command::Feasibility(a) => {
            let params = ExperimentParams::new(a.setup.mass, a.setup.separation, a.duration, 0.0)
                .map_err(invalid)?;
            (Action::Feasibility(params), a.common, Format::Text)
        }
        Command::Consistency(a) => {
            let params =
                ExperimentParams::new(a.setup.mass, a.setup.separation, a.duration, a.theta)
                    .map_err(invalid)?;
            (Action::Consistency(params), a.common, Format::Text)
        }
        Command::Constants(common) => (Action::Constants, common, Format::Text),
    };
    let constants = resolve_constants(&common)?;
    Ok(RunConfig {
        action,
        constants,
        format: common.format.unwrap_or(default_format),
        output: common.output,
    })
}

/// `x` in scientific notation with 17 significant digits; parses back to the same f64.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn sweep_csv(result: &SweepResult) -> Result<Vec<u8>, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(SWEEP_CSV_HEADER).map_err(csv_err)?;
    for r in &result.rows {
        w.write_record(
            [r.theta_rad, r.duration_s, r.phase, r.p_x_plus, r.p_qm, r.d].map(format_number),
        )
        .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Format(e.to_string()))
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, Error> {
    let mut buf = serde_json::to_vec_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    buf.push(b'\n');
    Ok(buf)
}

fn emit(bytes: &[u8], destination: &mut dyn Write, label: &Path) -> Result<usize, Error> {
    destination
        .write_all(bytes)
        .and_then(|_| destination.flush())
        .map_err(|e| Error::io(label, e))?;
    Ok(bytes.len())
}

fn write_to_path(path: &Path, bytes: &[u8]) -> Result<usize, Error> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))?;
    Ok(bytes.len())
}

/// Serialized sweep. `Text` is the same as `Csv`.
pub fn sweep_bytes(result: &SweepResult, format: Format) -> Result<Vec<u8>, Error> {
    match format {
        Format::Csv | Format::Text => sweep_csv(result),
        Format::Json => json_bytes(result),
    }
}

/// Writes a sweep and returns the number of bytes written.
pub fn write_sweep(
    result: &SweepResult,
    format: Format,
    destination: &mut dyn Write,
) -> Result<usize, Error> {
    emit(
        &sweep_bytes(result, format)?,
        destination,
        Path::new("<stream>"),
    )
}

pub fn write_sweep_to_path(
    result: &SweepResult,
    format: Format,
    path: &Path,
) -> Result<usize, Error> {
    write_to_path(path, &sweep_bytes(result, format)?)
}

/// Rows of a sweep CSV as written by [`write_sweep`].
pub fn read_sweep_csv(reader: impl Read) -> Result<Vec<SweepRow>, Error> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers().map_err(|e| Error::Format(e.to_string()))?;
    if header.iter().ne(SWEEP_CSV_HEADER) {
        return Err(Error::Format(format!(
            "unexpected sweep header: {header:?}"
        )));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
            let mut v = [0.0; 6];
            for (slot, field) in v.iter_mut().zip(rec.iter()) {
                *slot = field
                    .parse()
                    .map_err(|e| Error::Format(format!("bad number {field:?}: {e}")))?;
            }
            if rec.len() != 6 {
                return Err(Error::Format(format!(
                    "expected 6 fields, got {}",
                    rec.len()
                )));
            }
            Ok(SweepRow {
                theta_rad: v[0],
                duration_s: v[1],
                phase: v[2],
                p_x_plus: v[3],
                p_qm: v[4],
                d: v[5],
            })
        })
        .collect()
}

pub fn read_sweep_json(reader: impl Read) -> Result<SweepResult, Error> {
    serde_json::from_reader(reader).map_err(|e| Error::Format(e.to_string()))
}

fn verdict(report: &FeasibilityReport) -> &'static str {
    if report.kinetic_negligible {
        "kinetic term negligible"
    } else {
        "kinetic term not negligible"
    }
}

/// Shortest scientific text that parses back to `x`.
fn short(x: f64) -> String {
    format!("{x:e}")
}

type Fields = Vec<(&'static str, String)>;

fn constants_fields(c: &PhysConstants) -> Fields {
    vec![
        ("G", short(c.g)),
        ("hbar", short(c.hbar)),
        ("c", short(c.c)),
        ("planck_mass", short(planck_mass(c))),
    ]
}

fn render_fields(title: &str, fields: &Fields, format: Format) -> Vec<u8> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("field,value\n");
            for (k, v) in fields {
                out.push_str(&format!("{k},{v}\n"));
            }
        }
        _ => {
            out.push_str(title);
            out.push('\n');
            for (k, v) in fields {
                out.push_str(&format!("  {k:<26} {v}\n"));
            }
        }
    }
    out.into_bytes()
}

pub fn report_bytes(report: &FeasibilityReport, format: Format) -> Result<Vec<u8>, Error> {
    if format == Format::Json {
        return json_bytes(&json!({
            "report": report,
            "verdict": verdict(report),
            "planck_mass": planck_mass(&report.constants),
        }));
    }
    let p = &report.params;
    let mut fields: Fields = vec![
        ("mass_kg", short(p.mass)),
        ("separation_m", short(p.separation)),
        ("duration_s", short(p.duration)),
        ("T", short(report.phase)),
        ("kinetic_ratio", short(report.kinetic_ratio)),
        ("max_abs_D", short(report.max_abs_d)),
        ("argmax_theta_rad", short(report.argmax_theta)),
        ("verdict", verdict(report).to_string()),
    ];
    fields.extend(constants_fields(&report.constants));
    let ctx = &report.context;
    fields.extend([
        ("internal_temperature_K", short(ctx.internal_temperature_k)),
        (
            "environment_temperature_K",
            short(ctx.environment_temperature_k),
        ),
        ("pressure_Pa", short(ctx.pressure_pa)),
    ]);
    Ok(render_fields("feasibility", &fields, format))
}

/// Writes a feasibility report and returns the number of bytes written.
pub fn write_report(
    report: &FeasibilityReport,
    format: Format,
    destination: &mut dyn Write,
) -> Result<usize, Error> {
    emit(
        &report_bytes(report, format)?,
        destination,
        Path::new("<stream>"),
    )
}

pub fn consistency_bytes(report: &ConsistencyReport, format: Format) -> Result<Vec<u8>, Error> {
    if format == Format::Json {
        return json_bytes(report);
    }
    let fields: Fields = vec![
        ("theta_rad", short(report.theta)),
        ("T", short(report.phase)),
        ("max_discrepancy", short(report.max_discrepancy)),
        ("steps", report.steps.to_string()),
        ("max_norm_drift", short(report.max_norm_drift)),
        ("max_population_drift", short(report.max_population_drift)),
    ];
    Ok(render_fields("consistency", &fields, format))
}

pub fn constants_bytes(constants: &PhysConstants, format: Format) -> Result<Vec<u8>, Error> {
    if format == Format::Json {
        return json_bytes(&json!({
            "constants": constants,
            "planck_mass": planck_mass(constants),
        }));
    }
    Ok(render_fields(
        "constants",
        &constants_fields(constants),
        format,
    ))
}

/// Runs a parsed configuration and returns the serialized output.
pub fn execute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let bytes = match &config.action {
        Action::Sweep { spec, workers } => {
            let result = match workers {
                Some(n) => run_sweep_with_workers(spec, &config.constants, *n)?,
                None => run_sweep(spec, &config.constants)?,
            };
            sweep_bytes(&result, config.format)?
        }
        Action::Feasibility(params) => {
            report_bytes(&feasibility(params, &config.constants), config.format)?
        }
        Action::Consistency(params) => {
            let report = consistency_run(params, &config.constants, params.theta)?;
            consistency_bytes(&report, config.format)?
        }
        Action::Constants => constants_bytes(&config.constants, config.format)?,
    };
    Ok(bytes)
}

/// Full CLI: parse, compute, write to `--output` or `stdout`. Returns the
/// process exit code; diagnostics go to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = parse_args(argv).and_then(|config| {
        let bytes = execute(&config)?;
        match &config.output {
            Some(path) => write_to_path(path, &bytes)?,
            None => emit(&bytes, stdout, Path::new("<stdout>"))?,
        };
        Ok(())
    });
    match outcome {
        Ok(()) => exit::OK,
        Err(CliError::Info(text)) => {
            let _ = write!(stdout, "{text}");
            exit::OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.to_string().trim_end());
            e.exit_code()
        }
    }
}
