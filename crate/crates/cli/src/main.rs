mod commands;
mod manifest;
mod oracle;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spincnn::analysis::App;

/// Spintronic cellular neural network simulator.
///
/// Exit status: 0 when the run converged (or the oracle agreed), 2 when it
/// completed without converging (or the oracle disagreed), 1 on any error.
#[derive(Parser, Debug)]
#[command(name = "spincnn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArg {
    /// Configuration file (INI-style sections); built-in defaults when absent.
    #[arg(long, env = "SPINCNN_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one application on the spin CNN and record its trajectory.
    Simulate(SimulateArgs),
    /// Hebbian-train space-varying templates from cue:target pattern pairs.
    Train(TrainArgs),
    /// Sweep drive voltage and driver size; write CSVs and the CMOS comparison.
    Sweep(SweepArgs),
    /// Compare numerical models against closed forms.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Print a bundled glyph (0-4) in pattern format.
    Glyph {
        name: String,
    },
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Initial state and input. Defaults to the bundled demo instance of --app.
    #[arg(long)]
    pub pattern: Option<PathBuf>,
    /// Expected final pattern; recorded as `correct` in the manifest.
    #[arg(long)]
    pub expected: Option<PathBuf>,
    #[arg(long, value_parser = parse_app, default_value = "noise-filter")]
    pub app: App,
    /// Template file from `train` (required for assoc).
    #[arg(long)]
    pub templates: Option<PathBuf>,
    /// Thermal noise seed (overrides sim.seed).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// `cue.pat:target.pat`, repeatable or comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub pairs: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[arg(long, value_parser = parse_app, default_value = "noise-filter")]
    pub app: App,
    /// Drive voltages in V (default: sweep.voltages).
    #[arg(long, value_delimiter = ',')]
    pub voltages: Option<Vec<f64>>,
    /// Driver size multipliers (default: sweep.sizes).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<u32>>,
    /// Thermal seeds per design point (default: sweep.seeds).
    #[arg(long)]
    pub seeds: Option<u32>,
    /// First seed; point k uses seed + k (default: sim.seed).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Bisection critical current against the small-angle estimate.
    CriticalCurrent(ConfigArg),
    /// Finite-difference channel transmission against 1/cosh(L/l_sf).
    Transmission {
        #[command(flatten)]
        config: ConfigArg,
        /// Grid nodes of the numerical solution.
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// Write the (x, mu_s, J_s) profile to this CSV.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Inverter output vs m_z for three matched oxide thicknesses (CSV).
    ReadCurve {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrated zero-temperature switching times against the closed form,
    /// with the thermal median alongside.
    SwitchStats {
        #[command(flatten)]
        config: ConfigArg,
        /// Thermal seeds for the median column.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
    },
}

fn parse_app(s: &str) -> Result<App, String> {
    s.parse().map_err(|e: spincnn::Error| e.to_string())
}

fn main() -> ExitCode {
    // Usage errors share the generic error status rather than clap's 2,
    // which is reserved for non-convergence.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(&a),
        Command::Train(a) => commands::train(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Oracle(o) => oracle::run(&o),
        Command::Glyph { name } => commands::glyph(&name),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
