//! `mal`: Hilbert functions of algebras generated by linear forms.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{Method, Outcome, ScanArgs};
use report::{write_atomic, CliError, RunReport, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "mal", version, about = "Hilbert functions of algebras generated by linear forms")]
struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Lift the default size cap on direct-algebra commands.
    #[arg(long, global = true)]
    force: bool,

    /// Also write the JSON run report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function of A(M) by one or all routes.
    Hilbert {
        /// Matrix file, or `-` for standard input.
        file: String,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        /// Initial samples per flat for the ideal route.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tutte polynomial and its Poincare specialization.
    Tutte { file: String },
    /// Decide whether two representations give isomorphic algebras.
    Equiv { a: String, b: String },
    /// Run every consistency check on one matrix.
    Check { file: String },
    /// Random log-concavity scan.
    Scan {
        #[arg(long, default_value_t = 300)]
        count: u64,
        /// Comma-separated ranks to draw from.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        d: Vec<usize>,
        /// Column counts: `6`, `4..8` (inclusive).
        #[arg(long, default_value = "4..8", value_parser = commands::parse_m_range)]
        m: (usize, usize),
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = mal_core::analysis::DEFAULT_ENTRY_BOUND)]
        entry_bound: i64,
        /// Write the scan report JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a CSV summary here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads; defaults to MAL_THREADS or the number of CPUs.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Degenerate sl2 matrices X, Y, H over Laurent polynomials.
    Sl2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

fn dispatch(cli: &Cli) -> Result<(&'static str, Outcome), CliError> {
    Ok(match &cli.command {
        Command::Hilbert {
            file,
            method,
            samples,
            seed,
        } => ("hilbert", commands::hilbert(file, *method, *samples, *seed, cli.force)?),
        Command::Tutte { file } => ("tutte", commands::tutte(file)?),
        Command::Equiv { a, b } => ("equiv", commands::equiv(a, b)?),
        Command::Check { file } => ("check", commands::check(file, cli.force)?),
        Command::Scan {
            count,
            d,
            m,
            seed,
            entry_bound,
            out,
            csv,
            threads,
        } => (
            "scan",
            commands::scan(&ScanArgs {
                count: *count,
                d: d.clone(),
                m: *m,
                seed: *seed,
                entry_bound: *entry_bound,
                out: out.clone(),
                csv: csv.clone(),
                threads: *threads,
            })?,
        ),
        Command::Sl2 { n, r } => ("sl2", commands::sl2(*n, *r)?),
    })
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let start = Instant::now();
    let (command, outcome) = dispatch(cli)?;
    let report = RunReport {
        command: command.to_string(),
        input_digest: outcome.digests,
        result: outcome.result,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    if let Some(path) = &cli.report {
        write_atomic(path, &json)?;
    }
    if cli.pretty {
        print!("{}", outcome.pretty);
    } else {
        print!("{json}");
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            e.code
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_USAGE as u8))
}
