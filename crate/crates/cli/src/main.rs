//! `delaunay-lab`: sweeps, artifact export and the verification harness.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use delaunay_lab::config::{EpsGrid, EpsValue, RunConfig, DEFAULT_SEED};
use delaunay_lab::{PeriodicOrbit, Tolerance};

/// Exit code for usage and validation errors.
const EXIT_USAGE: u8 = 2;
/// Exit code for failed verification or a failed computation.
const EXIT_FAILURE: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "delaunay-lab", version, about = "Delaunay metrics: orbits, Jacobi fields, bands, indicial data, Pohozaev invariants")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Dimension n >= 3
    #[arg(long, global = true, default_value_t = 4)]
    n: usize,
    /// Integrator tolerance (absolute and relative)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for sweeps (0: one per core)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one orbit and export (t, u, v, r) samples
    Orbit {
        /// Delaunay parameter: a number, `ubar`, or a multiple such as `0.5ubar`
        #[arg(long)]
        eps: EpsValue,
        #[arg(long, default_value_t = 257)]
        samples: usize,
        /// Also export the phase portrait
        #[arg(long)]
        export_phase: bool,
    },
    /// Jacobi fields phi1..phi4 with residuals and the phi1/phi2 Wronskian
    Jacobi {
        #[arg(long)]
        eps: EpsValue,
        #[arg(long, default_value_t = 2.0)]
        periods: f64,
        #[arg(long, default_value_t = 257)]
        samples: usize,
    },
    /// Band structure of -L_j over a window of its spectral parameter
    Bands {
        #[arg(long)]
        eps: EpsValue,
        #[arg(long, default_value_t = 0)]
        mode: usize,
        /// Window `lo,hi` of the spectral parameter of -L_j
        #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [-8.0, 8.0])]
        window: Vec<f64>,
        #[arg(long, default_value_t = delaunay_lab::floquet::DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Floquet exponents of modes 0..=jmax
    Indicial {
        #[arg(long)]
        eps: EpsValue,
        #[arg(long, default_value_t = 6)]
        jmax: usize,
    },
    /// Dilational invariants, Killing norms and the c_n calibration over a grid
    Pohozaev {
        /// `standard`, `start:step:stop`, or a comma-separated list
        #[arg(long, default_value = "standard")]
        eps_grid: EpsGrid,
    },
    /// Relative index and bounded-nullspace dimension for a list of ends
    Relindex {
        /// Delaunay parameters of the ends, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        ends: Vec<EpsValue>,
    },
    /// (eps, T, R, H, D, |P|^2) table over a grid
    ModuliTable {
        #[arg(long, default_value = "standard")]
        eps_grid: EpsGrid,
    },
    /// Run the acceptance checks and write a JSON report
    Verify {
        /// Check ids or groups (orbit, jacobi, bands, indicial, pohozaev)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Divide every tolerance by this factor
        #[arg(long, default_value_t = 1.0)]
        tighten: f64,
    },
}

impl GlobalArgs {
    fn run_config(&self, eps_grid: EpsGrid, j_max: usize) -> delaunay_lab::Result<RunConfig> {
        let tolerance = match self.tol {
            Some(t) => Tolerance::uniform(t)?,
            None => PeriodicOrbit::default_tolerance(),
        };
        let config = RunConfig {
            n: self.n,
            eps_grid,
            j_max,
            tolerance,
            out: self.out.clone(),
            seed: self.seed,
            workers: self.workers,
        };
        config.validate()?;
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.workers).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::dispatch(&cli.global, &cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<delaunay_lab::Error>().is_some_and(is_validation_error);
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAILURE })
        }
    }
}

fn is_validation_error(e: &delaunay_lab::Error) -> bool {
    use delaunay_lab::Error::*;
    matches!(
        e,
        InvalidDimension { .. } | EpsOutOfRange { .. } | EpsBelowFloor { .. } | InvalidArgument(_) | Numerics(delaunay_lab::NumericsError::InvalidTolerance { .. })
    )
}
