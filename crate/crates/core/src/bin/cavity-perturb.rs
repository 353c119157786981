use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cavity_perturb::config::parse_config;
use cavity_perturb::output::emit_datasets;
use cavity_perturb::scan::run_scan;
use cavity_perturb::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Mode spectrum of a Fabry-Perot cavity with a tilted membrane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the membrane position and write branches, crossings and couplings.
    Scan {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output.directory`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "CAVITY_PERTURB_THREADS")]
        threads: Option<usize>,
        #[arg(long)]
        verbose: bool,
    },
}

fn scan(config: PathBuf, out: Option<PathBuf>, threads: Option<usize>) -> Result<()> {
    let text = std::fs::read_to_string(&config).map_err(|source| Error::Io { path: config.clone(), source })?;
    let cfg = parse_config(&text)?;
    let dir = out.unwrap_or_else(|| PathBuf::from(&cfg.output.directory));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let result = pool.install(|| run_scan(&cfg))?;
    log::info!(
        "{} branches, {} crossings, {} coupling rows in {:.3} s",
        result.branches.len(),
        result.crossings.len(),
        result.couplings.len(),
        result.elapsed.as_secs_f64()
    );
    for p in emit_datasets(&result, &dir)? {
        log::info!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Scan { config, out, threads, verbose } = cli.command;
    let level = if verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match scan(config, out, threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
