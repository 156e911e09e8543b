use std::path::PathBuf;
use std::process::ExitCode;

use algmatch::cli::{run, Command, RunConfig};
use algmatch::matching::DEFAULT_RETRIES;
use clap::Parser;

/// Perfect, exact-weight and matroid-parity matchings by random substitution.
#[derive(Parser, Debug)]
#[command(name = "algmatch", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Graph file ("n m" then "u v w" rows) or parity file for lmp-* commands.
    input: PathBuf,
    /// Field modulus; defaults to the smallest prime above max(2^20, 4n^3).
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target weight for exact-find.
    #[arg(long)]
    k: Option<usize>,
    /// Fresh substitutions tried after the first one fails.
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    retries: usize,
    /// Cross-check against exhaustive enumeration when the input is small.
    #[arg(long)]
    oracle: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let report = run(&RunConfig {
        command: args.command,
        input_path: args.input,
        prime: args.prime,
        seed: args.seed,
        k: args.k,
        retries: args.retries,
        oracle: args.oracle,
    });
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    ExitCode::from(report.code as u8)
}
