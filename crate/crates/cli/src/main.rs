use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use quadform_cli::report::{Report, Status};
use quadform_cli::suites::{self, Params};
use quadform_cli::CliError;

#[derive(Parser)]
#[command(name = "quadform", version, about = "Exact checks for quadratic forms, formations and gluing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: all, tg, phi, markexample, fixtures or roundtrip.
    Verify {
        suite: String,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, default_value_t = quadform::DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify embeddings (Z, q) -> H(Z) <- (Z, -q).
    EnumPrim {
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Components, invariant and hyperbolicity of the boundary automorphism t_g, g = t^n.
    Tg {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        invariant: bool,
        #[arg(long)]
        hyperbolic: bool,
    },
    /// Compare two stable isomorphisms (biso) or two embeddings (bprim) read from JSON files.
    Compare {
        kind: String,
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long, default_value_t = quadform::DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
        #[arg(long)]
        group_twist: bool,
    },
    /// Print a named object as JSON: tg, jg (with --p, --n), nab or zemb (with --a, --b).
    Emit {
        kind: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        p: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        n: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        a: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        b: i64,
    },
}

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))
}

fn run(cmd: Command) -> Result<Result<Report, Value>, CliError> {
    Ok(Ok(match cmd {
        Command::Verify { suite, p, n, degree_bound, seed } => {
            suites::run_verify(&suite, &Params { p, n, q: None, degree_bound, seed })?
        }
        Command::EnumPrim { q } => suites::cmd_enum_prim(q)?,
        Command::Tg { p, n, invariant, hyperbolic } => suites::cmd_tg(p, n, invariant, hyperbolic)?,
        Command::Compare { kind, lhs, rhs, degree_bound, group_twist } => {
            let (l, r) = (read_json(&lhs)?, read_json(&rhs)?);
            suites::cmd_compare(&kind, &l, &r, degree_bound, group_twist)?
        }
        Command::Emit { kind, p, n, a, b } => return Ok(Err(suites::emit(&kind, p, n, a, b)?)),
    }))
}

/// Write to stdout, ignoring a closed pipe.
fn write_out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok(Ok(mut report)) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            match cli.format {
                Format::Json => write_out(&format!("{}\n", report.to_json_string())),
                Format::Text => write_out(&report.to_text()),
            }
            ExitCode::from(if report.status == Status::Pass { 0 } else { 1 })
        }
        Ok(Err(value)) => {
            write_out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("values serialize")));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
