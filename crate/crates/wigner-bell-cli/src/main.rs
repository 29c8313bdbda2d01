//! Command-line interface: single points, sweeps over the Wigner angle,
//! and the bundled figure reproductions.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wigner_bell::run::{
    load_config, run_point, run_sweep, write_point, write_sweep, FigurePreset, OutputFormat,
    RunConfig, RunError,
};

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wigner-bell",
    about = "Bell-inequality tests of massive qubits seen from a moving frame",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// Output directory (overrides the config's output.path).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Optimizer seed (overrides the config's optimizer.seed).
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, value_name = "csv|json")]
    format: Option<OutputFormat>,
    /// Also write an SVG plot.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize the Bell value at a single Wigner angle (the config
    /// grid's first point).
    Point {
        /// Run configuration (JSON).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Sweep the Wigner angle and write one row per grid point.
    Sweep {
        /// Run configuration (JSON).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Recompute the bundled figures (fig1, fig2, fig3, fig4), one data
    /// file per curve.
    Figures {
        /// Preset name: fig1, fig2, fig3 or fig4.
        preset: String,
        /// Optional config; its optimizer and output sections apply (the
        /// preset fixes the scenario and grid).
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn apply_flags(config: &mut RunConfig, flags: &CommonFlags) {
    if let Some(out) = &flags.out {
        config.output.path = out.clone();
    }
    if let Some(seed) = flags.seed {
        config.optimizer.seed = seed;
    }
    if let Some(format) = flags.format {
        config.output.format = format;
    }
    if flags.svg {
        config.output.svg = true;
    }
}

fn execute(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Point { config, common } => {
            let mut config = load_config(&config)?;
            apply_flags(&mut config, &common);
            let record = run_point(&config)?;
            let path = write_point(&record, &config)?;
            println!(
                "omega_rad={:.12} bell_value={:.12} converged={}",
                record.omega_rad, record.bell_value, record.converged
            );
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Sweep { config, common } => {
            let mut config = load_config(&config)?;
            apply_flags(&mut config, &common);
            let points = run_sweep(&config)?;
            let written = write_sweep(&points, &config, "sweep")?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Figures {
            preset,
            config,
            common,
        } => {
            let preset: FigurePreset = preset.parse().map_err(RunError::Config)?;
            let mut config = match config {
                Some(path) => load_config(&path)?,
                None => RunConfig::default(),
            };
            apply_flags(&mut config, &common);
            let written = wigner_bell::run::run_figures(
                preset,
                &config.output.path,
                &config.optimizer,
                config.output.format,
                config.output.svg,
            )?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(RunError::Io(err)) => {
            eprintln!("i/o error: {err}");
            ExitCode::from(EXIT_IO)
        }
    }
}
