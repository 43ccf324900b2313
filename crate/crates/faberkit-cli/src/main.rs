//! faberkit: Faber polynomial bounds for convex, disk-cut and lens domains.

mod commands;
mod config;
mod out;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{exit_code_for, EXIT_CONFIG};
use config::RunConfig;
use out::OutDir;

#[derive(Parser)]
#[command(name = "faberkit", version, about = "Faber polynomials and operator-norm bounds on non-convex spectral enclosures")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV/JSON artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Override the generator / right-hand-side seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the boundary quadrature node count.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Override the maximum polynomial degree.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical range polygon and numerical radius of the configured matrix.
    Numrange {
        /// Number of support sweep angles.
        #[arg(long)]
        angles: Option<usize>,
    },
    /// Evaluate the exterior map (or its inverse) on points or on the boundary.
    MapEval {
        /// CSV file of points (re,im); defaults to boundary samples.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Evaluate the inverse map Psi instead of Phi.
        #[arg(long)]
        inverse: bool,
    },
    /// Export Faber polynomial coefficients for the configured domain.
    FaberCoeffs,
    /// Run the operator-norm bound suite and write JSON/CSV reports.
    BoundSuite,
    /// Compare GMRES residuals against the degree-wise residual bound.
    GmresCompare,
    /// Lens gamma table: closed form vs numeric, with the Elman-limit sweep.
    LensGamma,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FABERKIT_LOG", "warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let code = run(&cli);
    ExitCode::from(code as u8)
}

fn run(cli: &Cli) -> i32 {
    let (cfg, base_dir) = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(pair) => pair,
            Err(e) => {
                eprintln!("error: {e}");
                return exit_code_for(&e);
            }
        },
        None => {
            eprintln!("error: --config <path> is required");
            return EXIT_CONFIG;
        }
    };
    let out_root = cfg.out_dir.clone().map(|d| if d.is_absolute() { d } else { base_dir.join(d) });
    let out_root = out_root.unwrap_or_else(|| cli.out.clone());
    let out = match OutDir::create(&out_root) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let mut cfg = cfg;
    if let Some(nodes) = cli.nodes {
        cfg.nodes = nodes;
    }
    let result = match &cli.command {
        Command::Numrange { angles } => commands::cmd_numrange(&cfg, &base_dir, &out, cli.seed, *angles),
        Command::MapEval { points, inverse } => {
            commands::cmd_map_eval(&cfg, &base_dir, &out, points.as_deref(), *inverse, cli.nodes)
        }
        Command::FaberCoeffs => commands::cmd_faber_coeffs(&cfg, &out, cli.nmax),
        Command::BoundSuite => commands::cmd_bound_suite(&cfg, &base_dir, &out, cli.seed, cli.nmax),
        Command::GmresCompare => commands::cmd_gmres_compare(&cfg, &base_dir, &out, cli.seed, cli.nmax),
        Command::LensGamma => commands::cmd_lens_gamma(&cfg, &out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
