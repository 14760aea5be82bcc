use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mhd_bkm::cli::{self, RunStatus};
use mhd_bkm::Error;

#[derive(Parser)]
#[command(name = "mhd-bkm", version, about = "Pseudo-spectral MHD with shell-wise vorticity blow-up diagnostics")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation described by a TOML config.
    Run {
        config: PathBuf,
        /// Continue from a checkpoint snapshot written by an earlier run.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Override the output directory.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a snapshot header and norms as JSON.
    Inspect { snapshot: PathBuf },
    /// Recompute window integrals and the energy budget from a records file.
    Analyze {
        records: PathBuf,
        /// Comma-separated window lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
    },
    /// Run the built-in consistency checks.
    Verify,
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn execute(cmd: Command) -> Result<i32, Error> {
    match cmd {
        Command::Run { config, resume, output } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Error::io(&config, e))?;
            let mut cfg = cli::parse_config(&text)?;
            if let Some(o) = output {
                cfg.output = o;
            }
            let outcome = cli::run(&cfg, resume.as_deref())?;
            log::info!("{} steps to t = {}, records in {}", outcome.steps, outcome.t, cfg.output.display());
            Ok(match outcome.status {
                RunStatus::Completed => cli::EXIT_OK,
                RunStatus::BlowUpSuspected { .. } => cli::EXIT_BLOW_UP,
            })
        }
        Command::Inspect { snapshot } => {
            print_json(&cli::inspect(&snapshot)?);
            Ok(cli::EXIT_OK)
        }
        Command::Analyze { records, eps } => {
            print_json(&cli::analyze(&records, &eps)?);
            Ok(cli::EXIT_OK)
        }
        Command::Verify => {
            let checks = cli::self_checks()?;
            for c in &checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                println!("{tag} {:<40} {:e} (limit {:e})", c.name, c.value, c.limit);
            }
            Ok(if checks.iter().all(|c| c.passed()) { cli::EXIT_OK } else { cli::EXIT_FAILURE })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    let code = execute(args.command).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        cli::exit_code(&e)
    });
    ExitCode::from(code as u8)
}
