//! Command-line and config-file parsing into a validated [`RunConfig`].
//!
//! Precedence: command-line flag, then config file, then `LGSIM_SEED`
//! (seed only), then the built-in default.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SEED_ENV: &str = "LGSIM_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// K(θ) over a θ grid, with the analytic curve and the absolute error.
    Sweep,
    /// The three correlators C12, C23, C13 over a θ grid.
    Correlations,
    /// Largest disturbance of the system state for I/2 and for |0⟩⟨0|.
    NoninvasiveCheck,
    /// Pauli coefficients of the tomographed input state and its deviation-matrix fidelity.
    Tomography,
    /// K at θ = π/3 with and without T2 dephasing.
    NoiseCheck,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Sweep => "sweep",
            Command::Correlations => "correlations",
            Command::NoninvasiveCheck => "noninvasive-check",
            Command::Tomography => "tomography",
            Command::NoiseCheck => "noise-check",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "lgsim",
    version,
    about = "Leggett-Garg scattering-circuit simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat JSON object whose keys mirror the long flag names.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Lower end of the θ = ΔE·Δt grid (radians unless --degrees).
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta_min: Option<f64>,
    /// Upper end of the θ grid (radians unless --degrees).
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta_max: Option<f64>,
    /// Number of grid points, both ends included.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Interpret --theta-min/--theta-max as degrees.
    #[arg(long, global = true)]
    degrees: bool,
    /// Pseudo-pure probe polarization ε in (0, 1].
    #[arg(long, global = true, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// System populations "p0,p1" of p0|0⟩⟨0| + p1|1⟩⟨1|.
    #[arg(
        long,
        global = true,
        value_name = "P0,P1",
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    populations: Option<Vec<f64>>,
    /// Probe T2 in seconds.
    #[arg(long, global = true, allow_negative_numbers = true)]
    t2_probe: Option<f64>,
    /// System T2 in seconds.
    #[arg(long, global = true, allow_negative_numbers = true)]
    t2_system: Option<f64>,
    /// Protocol duration in seconds.
    #[arg(long, global = true, allow_negative_numbers = true)]
    duration: Option<f64>,
    /// Std-dev of the Gaussian readout noise on each Pauli coefficient.
    #[arg(long, global = true, allow_negative_numbers = true)]
    noise_sigma: Option<f64>,
    /// Seed for the readout-noise generator (falls back to $LGSIM_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; standard output when omitted (required for svg).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct ConfigFile {
    theta_min: Option<f64>,
    theta_max: Option<f64>,
    steps: Option<usize>,
    degrees: Option<bool>,
    epsilon: Option<f64>,
    populations: Option<Vec<f64>>,
    t2_probe: Option<f64>,
    t2_system: Option<f64>,
    duration: Option<f64>,
    noise_sigma: Option<f64>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

impl ConfigFile {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config file {}: {e}", path.display())))
    }
}

/// Fully resolved, validated run parameters. Angles are in radians.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: Command,
    pub theta_min: f64,
    pub theta_max: f64,
    pub steps: usize,
    pub epsilon: f64,
    pub populations: [f64; 2],
    pub t2_probe: f64,
    pub t2_system: f64,
    pub duration: f64,
    pub noise_sigma: f64,
    pub seed: u64,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            theta_min: 0.0,
            theta_max: std::f64::consts::TAU,
            steps: 721,
            epsilon: 1.0,
            populations: [0.5, 0.5],
            t2_probe: 3.0,
            t2_system: 0.8,
            duration: 0.01,
            noise_sigma: 0.0,
            seed: 42,
            output_path: None,
            format: Format::Csv,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |flag: &str, why: String| {
            Err(CliError::Usage(format!(
                "invalid value for --{flag}: {why}"
            )))
        };
        if !self.theta_min.is_finite() || self.theta_min < 0.0 {
            return bad(
                "theta-min",
                format!("must be finite and >= 0 (got {})", self.theta_min),
            );
        }
        if !self.theta_max.is_finite() || self.theta_max <= self.theta_min {
            return bad(
                "theta-max",
                format!(
                    "must be finite and greater than --theta-min (got {} <= {})",
                    self.theta_max, self.theta_min
                ),
            );
        }
        if self.steps < 2 {
            return bad("steps", format!("must be >= 2 (got {})", self.steps));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return bad(
                "epsilon",
                format!("must lie in (0, 1] (got {})", self.epsilon),
            );
        }
        let [p0, p1] = self.populations;
        if !(p0 >= 0.0 && p1 >= 0.0 && (p0 + p1 - 1.0).abs() <= 1e-12) {
            return bad(
                "populations",
                format!("need p0, p1 >= 0 with p0 + p1 = 1 (got {p0},{p1})"),
            );
        }
        if !(self.t2_probe > 0.0) {
            return bad("t2-probe", format!("must be > 0 (got {})", self.t2_probe));
        }
        if !(self.t2_system > 0.0) {
            return bad("t2-system", format!("must be > 0 (got {})", self.t2_system));
        }
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return bad(
                "duration",
                format!("must be finite and >= 0 (got {})", self.duration),
            );
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return bad(
                "noise-sigma",
                format!("must be finite and >= 0 (got {})", self.noise_sigma),
            );
        }
        if self.format == Format::Svg {
            if self.output_path.is_none() {
                return bad(
                    "output",
                    "an output path is required with --format svg".into(),
                );
            }
            if !matches!(self.command, Command::Sweep | Command::Correlations) {
                return bad(
                    "format",
                    format!(
                        "svg is only available for sweep and correlations, not {}",
                        self.command
                    ),
                );
            }
        }
        Ok(())
    }
}

fn populations_pair(v: Vec<f64>) -> Result<[f64; 2], CliError> {
    <[f64; 2]>::try_from(v).map_err(|v| {
        CliError::Usage(format!(
            "invalid value for --populations: expected two numbers, got {}",
            v.len()
        ))
    })
}

/// Parses `args` (program name first). `env_seed` is the value of
/// `LGSIM_SEED`, passed in so callers control the environment.
pub fn parse_config<I, T>(args: I, env_seed: Option<String>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliError::from_clap)?;
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };

    let mut cfg = RunConfig::defaults(cli.command);
    let degrees = cli.degrees || file.degrees.unwrap_or(false);
    let angle = |x: f64| if degrees { x.to_radians() } else { x };

    if let Some(v) = cli.theta_min.or(file.theta_min) {
        cfg.theta_min = angle(v);
    }
    if let Some(v) = cli.theta_max.or(file.theta_max) {
        cfg.theta_max = angle(v);
    }
    cfg.steps = cli.steps.or(file.steps).unwrap_or(cfg.steps);
    cfg.epsilon = cli.epsilon.or(file.epsilon).unwrap_or(cfg.epsilon);
    if let Some(p) = cli.populations.or(file.populations) {
        cfg.populations = populations_pair(p)?;
    }
    cfg.t2_probe = cli.t2_probe.or(file.t2_probe).unwrap_or(cfg.t2_probe);
    cfg.t2_system = cli.t2_system.or(file.t2_system).unwrap_or(cfg.t2_system);
    cfg.duration = cli.duration.or(file.duration).unwrap_or(cfg.duration);
    cfg.noise_sigma = cli
        .noise_sigma
        .or(file.noise_sigma)
        .unwrap_or(cfg.noise_sigma);
    cfg.seed = match cli.seed.or(file.seed) {
        Some(s) => s,
        None => match env_seed {
            Some(raw) => raw.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "invalid value for --seed: ${SEED_ENV}={raw:?} is not a u64"
                ))
            })?,
            None => cfg.seed,
        },
    };
    cfg.output_path = cli.output.or(file.output);
    cfg.format = cli.format.or(file.format).unwrap_or(cfg.format);

    cfg.validate()?;
    Ok(cfg)
}
