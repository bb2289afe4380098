use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qtorsor::cli::{parse_spec, run, RunOptions, EXIT_INPUT_ERROR};

#[derive(Parser)]
#[command(
    name = "qtorsor",
    version,
    about = "Verify quantum torsors and Hopf-Galois systems symbolically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a suite file.
    Run {
        spec: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Directory for completed rule systems (default: $QTORSOR_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Override the suite file's degree bound.
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        no_cache: bool,
        #[arg(long, default_value = "warn")]
        log_level: log::LevelFilter,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run {
        spec,
        report,
        cache_dir,
        degree_bound,
        no_cache,
        log_level,
    } = cli.command;
    env_logger::Builder::new().filter_level(log_level).init();

    let result = parse_spec(&spec).and_then(|s| {
        let options = RunOptions {
            cache_dir,
            no_cache,
            degree_bound,
        };
        run(&s, &options)
    });
    let outcome = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    let json = outcome.to_json();
    let written = match &report {
        Some(path) => std::fs::write(path, &json),
        None => {
            print!("{json}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_INPUT_ERROR as u8);
    }
    for r in outcome
        .results
        .iter()
        .filter(|r| r.status.as_str() != "pass")
    {
        eprintln!("{}: {}", r.status, r.label);
    }
    if let Some(e) = &outcome.error {
        eprintln!("{e}");
    }
    eprintln!("{}", outcome.status_line());
    ExitCode::from(outcome.exit_code() as u8)
}
