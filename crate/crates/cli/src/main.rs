mod args;
mod cache;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use cache::Cache;
use commands::{Context, Failure};
use kleinzeta_core::curves::CountBudget;

const THREADS_ENV: &str = "KLEINZETA_THREADS";

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))),
        },
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    if let Some(n) = thread_count(cli.global.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {n} threads: {e}")))?;
    }
    let mut cache = match &cli.global.cache {
        Some(path) => Cache::open(path, cli.global.verify_cache).map_err(Failure::Usage)?,
        None => Cache::disabled(),
    };
    let budget = CountBudget {
        plane: cli.global.budget_plane,
        linear: cli.global.budget_linear,
    };
    let outcome = {
        let mut ctx = Context {
            budget,
            cache: &mut cache,
        };
        commands::run(&cli.command, &mut ctx)?
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    outcome
        .table
        .render(cli.global.format, &mut lock)
        .and_then(|_| lock.flush())
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?;
    cache.save().map_err(Failure::Usage)?;
    Ok(outcome.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
