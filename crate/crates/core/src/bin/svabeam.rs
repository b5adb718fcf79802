use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use svabeam::beamform::{has_grating_lobes, Method};
use svabeam::config::RunConfig;
use svabeam::runner::{self, SweepParam};
use svabeam::Error;

/// Beampattern computation for uniform line arrays, with per-bin
/// magnitude-minimizing apodization alongside fixed rectangular and
/// cosine-on-pedestal shadings.
#[derive(Parser)]
#[command(name = "svabeam", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario + run settings (TOML)
    #[arg(long, value_name = "FILE")]
    config: PathBuf,

    /// Comma-separated subset of methods to run
    /// (rect, hanning, raised-cosine:A, sva-jointly, sva-separately)
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    methods: Vec<String>,

    /// Output directory (overrides the config)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Noise seed (overrides the config)
    #[arg(long)]
    seed: Option<u64>,

    /// Also write a gnuplot script next to the CSVs
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute beampatterns for one scenario and write CSVs + metrics
    Run(CommonArgs),
    /// Re-run the scenario across a parameter range and tabulate metrics
    Sweep {
        #[command(flatten)]
        common: CommonArgs,

        /// Parameter to vary: sensor-count, snr-db, or dft-size
        #[arg(long, value_name = "NAME")]
        param: String,

        /// Comma-separated values for the swept parameter
        #[arg(long, value_delimiter = ',', value_name = "LIST", required = true)]
        values: Vec<f64>,
    },
    /// Parse the config, apply overrides, and print the effective TOML
    DumpConfig(CommonArgs),
}

fn load_config(common: &CommonArgs) -> Result<RunConfig, Error> {
    let mut config = RunConfig::from_file(&common.config)?;
    if !common.methods.is_empty() {
        config.methods = common
            .methods
            .iter()
            .map(|s| s.parse::<Method>())
            .collect::<Result<_, _>>()?;
    }
    if let Some(out) = &common.out {
        config.output_dir = out.clone();
    }
    if let Some(seed) = common.seed {
        config.scenario.seed = seed;
    }
    config.validate()?;
    Ok(config)
}

fn warn_grating(config: &RunConfig) {
    if has_grating_lobes(&config.scenario.geometry) {
        eprintln!(
            "warning: sensor spacing {} wavelengths aliases steering angles (grating lobes)",
            config.scenario.geometry.spacing_ratio
        );
    }
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(common) => {
            let gnuplot = common.gnuplot;
            let config = load_config(&common)?;
            warn_grating(&config);
            let out = runner::run(&config, gnuplot)?;
            for path in &out.csv_paths {
                println!("wrote {}", path.display());
            }
            println!("wrote {}", out.metrics_path.display());
            if let Some(gp) = &out.gnuplot_path {
                println!("wrote {}", gp.display());
            }
        }
        Command::Sweep {
            common,
            param,
            values,
        } => {
            let config = load_config(&common)?;
            warn_grating(&config);
            let param: SweepParam = param.parse()?;
            let summary = runner::sweep(&config, param, &values)?;
            println!("wrote {}", summary.display());
        }
        Command::DumpConfig(common) => {
            let config = load_config(&common)?;
            print!("{}", config.to_toml_string());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
