use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use growthmeter::measurement::BasePolicy;
use growthmeter::scenario::{list_builtins, run_builtin, run_scenario, write_files};

#[derive(Parser)]
#[command(name = "growthmeter", version)]
#[command(about = "Simulate multi-sector toy economies and measure their real GDP growth")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory for CSV (and SVG) reports
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Also write static SVG charts
    #[arg(long, global = true)]
    svg: bool,

    /// Comma-separated base policies, e.g. "chained,fixed:1900,lagged:15"
    #[arg(long, global = true, value_delimiter = ',')]
    policies: Option<Vec<BasePolicy>>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (JSON)
    Run { config: PathBuf },
    /// Run a built-in experiment or demo
    Builtin { name: String },
    /// List built-in experiments
    List,
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for name in list_builtins() {
                println!("{name}");
            }
        }
        Command::Run { config } => {
            let out = run_scenario(&config, &cli.out, cli.svg, cli.policies)
                .with_context(|| format!("running {}", config.display()))?;
            print!("{}", out.summary.render());
            for f in &out.files {
                println!("wrote {}", cli.out.join(&f.name).display());
            }
        }
        Command::Builtin { name } => {
            let out = run_builtin(&name, cli.svg, cli.policies)?;
            let dir = cli.out.join(&name);
            write_files(&dir, &out.files)?;
            print!("{}", out.summary);
            for f in &out.files {
                println!("wrote {}", dir.join(&f.name).display());
            }
        }
    }
    Ok(())
}
