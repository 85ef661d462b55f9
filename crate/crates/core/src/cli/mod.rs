//! Command-line front end.

pub mod commands;
pub mod config;
pub mod output;
pub mod selftest;

use crate::error::Error;
use clap::{Args, Parser, Subcommand};
use config::{ConfigLayer, OutputFormat, ProfileKind, RunConfig};
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "dunkl-kg",
    version,
    about = "Radial Dunkl transforms, Klein-Gordon propagators, kernels and energy limits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Forward transform, round trip and Plancherel check of the position profile
    Transform,
    /// Solution u(., t) and d_t u(., t); mass 0 selects the wave equation
    Solve,
    /// Energy series on [0, t-max] with predicted limits and Cesaro residuals
    Energies,
    /// Predicted t -> infinity limits against measured Cesaro averages
    Limits,
    /// u(0, t) from the spectral solution against the kernel integral representation
    #[command(name = "repr-check")]
    ReprCheck,
    /// Run the invariant suite and print a pass/fail matrix
    Selftest,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Ambient dimension
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Dunkl index gamma_k >= 0
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Klein-Gordon mass m
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    /// Truncation radius of the radial grid
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rmax: Option<f64>,
    /// Number of Gauss-Legendre nodes
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Position datum g = u(., 0)
    #[arg(long, global = true, value_enum)]
    pub profile: Option<ProfileKind>,
    /// Velocity datum f = d_t u(., 0)
    #[arg(long, global = true, value_enum)]
    pub velocity_profile: Option<ProfileKind>,
    /// Width parameter of the profiles
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub width: Option<f64>,
    /// Evaluation time
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Horizon of time series
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// Number of time steps
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub out: Option<OutputFormat>,
    /// Configuration file with `key = value` lines
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl Flags {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            n: self.n,
            gamma: self.gamma,
            mass: self.mass,
            rmax: self.rmax,
            nodes: self.nodes,
            profile: self.profile,
            velocity_profile: self.velocity_profile,
            width: self.width,
            t: self.t,
            t_max: self.t_max,
            steps: self.steps,
            out: self.out,
            seed: self.seed,
        }
    }
}

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    VerificationFailure,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter { .. } | Error::Domain { .. } | Error::OutOfRange { .. } => {
            EXIT_INVALID
        }
        _ => EXIT_VERIFICATION,
    }
}

/// Resolves the configuration in the order defaults < config file < flags.
pub fn resolve_config(flags: &Flags) -> crate::Result<RunConfig> {
    let file = match &flags.config {
        Some(path) => ConfigLayer::from_file(path)?,
        None => ConfigLayer::default(),
    };
    RunConfig::resolve(file.overlay(flags.layer()))
}

/// Runs one command; output is written only after it has been fully computed.
pub fn run(cli: &Cli) -> i32 {
    let cfg = match resolve_config(&cli.flags) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INVALID;
        }
    };
    let result = match cli.command {
        Command::Transform => commands::cmd_transform(&cfg),
        Command::Solve => commands::cmd_solve(&cfg),
        Command::Energies => commands::cmd_energies(&cfg),
        Command::Limits => commands::cmd_limits(&cfg),
        Command::ReprCheck => commands::cmd_repr_check(&cfg),
        Command::Selftest => selftest::cmd_selftest(&cfg),
    };
    match result {
        Ok((text, outcome)) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(err) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if err.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write output: {err}");
                    return EXIT_VERIFICATION;
                }
            }
            match outcome {
                Outcome::Pass => EXIT_PASS,
                Outcome::VerificationFailure => {
                    eprintln!("verification failed");
                    EXIT_VERIFICATION
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}
