//! `wkf` — frame, K-frame, weaving, and certificate computations on
//! problem files.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use wkf_cli::{parse_problem, run_task, Overrides};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Task {
    /// Optimal frame bounds of one family.
    Bounds,
    /// Optimal weighted (K-frame) bounds of one family.
    Kbounds,
    /// Universal frame bounds over all interleavings of several families.
    Woven,
    /// Universal weighted bounds over all interleavings.
    Kwoven,
    /// Check a claimed bound transport against recomputed optima.
    Cert,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::Bounds => "bounds",
            Task::Kbounds => "kbounds",
            Task::Woven => "woven",
            Task::Kwoven => "kwoven",
            Task::Cert => "cert",
        }
    }
}

/// Frame and weaving computations with certified bound transport.
///
/// Exit status: 0 when the verdict is pass/true, 1 when it is fail/false,
/// 2 on any error.
#[derive(Debug, Parser)]
#[command(name = "wkf", version)]
struct Cli {
    /// What to compute; must match the task declared in the problem file.
    #[arg(value_enum)]
    task: Task,
    /// Path to the JSON problem file.
    problem: PathBuf,
    /// Maximum number of partitions a sweep may evaluate.
    #[arg(long)]
    budget: Option<u64>,
    /// Seed for sampled sweeps and residual searches.
    #[arg(long)]
    seed: Option<u64>,
    /// Verdict threshold: positivity cutoff for frame verdicts, relative
    /// slack for certificates.
    #[arg(long)]
    tol: Option<f64>,
    /// Emit the machine-readable report (byte-stable for identical input
    /// and seed).
    #[arg(long)]
    json: bool,
    /// Print nothing; answer through the exit status only.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = std::fs::read_to_string(&cli.problem)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", cli.problem.display()))
        .and_then(|text| parse_problem(&text))
        .and_then(|problem| {
            let overrides =
                Overrides { budget: cli.budget, seed: cli.seed, tol: cli.tol };
            run_task(&problem, cli.task.name(), &overrides)
        });
    match outcome {
        Ok(report) => {
            if !cli.quiet {
                if cli.json {
                    print!("{}", report.to_json());
                } else {
                    println!("{}", report.to_human());
                    println!("elapsed: {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(error) => {
            if !cli.quiet {
                eprintln!("error: {error:#}");
            }
            ExitCode::from(2)
        }
    }
}
