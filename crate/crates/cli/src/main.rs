mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser as _;
use serde_json::json;

use args::{Cli, Command};
use report::{Done, Outcome, RunReport};

fn main() -> ExitCode {
    // exit 2 means inconclusive here, so usage errors use 1, not clap's 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Outcome::Error.exit_code() } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return Outcome::Error.exit_code();
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return Outcome::Error.exit_code();
        }
    }

    let start = Instant::now();
    let done = commands::run(&cli.command).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        Done::new(Outcome::Error, json!({ "message": format!("{e:#}") }))
    });
    let elapsed = start.elapsed();
    if cli.timing {
        eprintln!("elapsed: {:.3}s", elapsed.as_secs_f64());
    }

    if let Some(path) = &cli.report {
        let report = RunReport {
            command: name(&cli.command).into(),
            inputs: serde_json::to_value(&cli.command).unwrap_or_default(),
            outcome: done.outcome,
            result: done.result,
            search: done.search,
            wall_time_ms: cli.timing.then_some(elapsed.as_millis() as u64),
        };
        if let Err(e) = report.write(path) {
            eprintln!("error: {e:#}");
            return Outcome::Error.exit_code();
        }
    }
    done.outcome.exit_code()
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Norm { .. } => "norm",
        Command::SolveNorm { .. } => "solve-norm",
        Command::Certify { .. } => "certify",
        Command::Family { .. } => "family",
        Command::Examples { .. } => "examples",
        Command::Fuzz { .. } => "fuzz",
        Command::Reduce { .. } => "reduce",
    }
}
