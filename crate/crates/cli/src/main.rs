use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use talbot_gkp_cli::{run, CliError, RunConfig, Scenario};

/// Time-frequency GKP / Talbot-shear scenarios.
#[derive(Debug, Parser)]
#[command(name = "talbot-gkp", version)]
struct Cli {
    /// Which computation to run.
    #[arg(value_enum)]
    scenario: Scenario,

    /// Flat TOML file of parameters.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Worker threads.
    #[arg(long, env = "TALBOT_GKP_THREADS")]
    threads: Option<usize>,

    /// Parameter override, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn configure(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::new(cli.scenario, &cli.out);
    if let Some(path) = &cli.config {
        config.load_toml(path)?;
    }
    for assignment in &cli.set {
        config.set(assignment)?;
    }
    Ok(config)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("could not size the thread pool: {e}");
        }
    }
    let outcome = configure(&cli).and_then(|c| run(&c));
    match outcome {
        Ok(report) => {
            for f in &report.files {
                println!("{}", f.display());
            }
            if report.exit_code() != 0 {
                eprintln!("{} sweep cells failed and were written as NaN", report.cell_warnings.len());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
