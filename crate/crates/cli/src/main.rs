use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use quadweb::{
    certificate_json, contracted_table, describe_fiber, exit_code, read_input, run_analyze, run_fiber, run_search, AnalyzeConfig,
    SearchConfig, EXIT_INPUT_ERROR,
};
use quadweb_core::webquadrics::{FieldMode, Verdict};

#[derive(Parser)]
#[command(name = "quadweb", version, about = "Exact analysis of webs of quadrics in P7 containing a plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the four assumptions and write a certificate.
    Analyze {
        file: PathBuf,
        /// `auto` (two random 62-bit primes) or a specific prime.
        #[arg(long, conflicts_with = "rational")]
        prime: Option<String>,
        /// Repeat the on-plane checks over the rationals.
        #[arg(long)]
        rational: bool,
        /// Wall-clock budget in seconds.
        #[arg(long, env = "QUADWEB_TIMEOUT", default_value_t = 600)]
        timeout: u64,
        /// Certificate path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sample random integer webs and keep the compliant ones.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
        entry_bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, env = "QUADWEB_TIMEOUT", default_value_t = 600)]
        timeout: u64,
    },
    /// Fiber type of the conic bundle over a point of P3.
    Fiber {
        file: PathBuf,
        /// Four integers, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        y: Vec<i64>,
    },
    /// List the classes of curves contracted by the conic bundle map.
    EnumContracted,
}

fn parse_mode(prime: Option<&str>, rational: bool) -> Result<Option<FieldMode>, String> {
    if rational {
        return Ok(Some(FieldMode::Rational));
    }
    match prime {
        None => Ok(None),
        Some("auto") => Ok(Some(FieldMode::Auto)),
        Some(p) => p.parse::<u64>().map(|p| Some(FieldMode::Prime(p))).map_err(|_| format!("--prime expects `auto` or an integer, got {p:?}")),
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e:#}");
    ExitCode::from(EXIT_INPUT_ERROR as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // clap exits with 2 on usage errors, which would read as a failed verdict
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR as u8 } else { 0 });
        }
    };
    match cli.command {
        Command::Analyze { file, prime, rational, timeout, out, seed } => {
            let mode = match parse_mode(prime.as_deref(), rational) {
                Ok(m) => m,
                Err(e) => return input_error(e),
            };
            let input = match read_input(&file) {
                Ok(i) => i,
                Err(e) => return input_error(format!("{e:#}")),
            };
            let cfg = AnalyzeConfig { mode, seed, timeout: Duration::from_secs(timeout) };
            let cert = match run_analyze(&input, &cfg) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(exit_code(Verdict::Inconclusive) as u8);
                }
            };
            let json = match certificate_json(&cert) {
                Ok(j) => j,
                Err(e) => return input_error(e),
            };
            match &out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, json) {
                        return input_error(format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print!("{json}"),
            }
            for w in &cert.certificate.warnings {
                eprintln!("warning: {w}");
            }
            eprintln!("{}", cert.certificate.summary);
            ExitCode::from(exit_code(cert.certificate.verdict) as u8)
        }
        Command::Search { trials, entry_bound, seed, jobs, out_dir, timeout } => {
            let cfg = SearchConfig { trials, entry_bound, seed, jobs, out_dir, timeout: Duration::from_secs(timeout) };
            match run_search(&cfg) {
                Ok(summary) => {
                    println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
                    eprintln!("{} of {} trials compliant", summary.found, summary.trials);
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(e),
            }
        }
        Command::Fiber { file, y } => {
            let input = match read_input(&file) {
                Ok(i) => i,
                Err(e) => return input_error(e),
            };
            match run_fiber(&input, &y) {
                Ok((prime, Ok(report))) => {
                    println!("{} [over F_{prime}]", describe_fiber(&report));
                    ExitCode::SUCCESS
                }
                Ok((prime, Err(msg))) => {
                    println!("contradiction over F_{prime}: {msg}");
                    ExitCode::from(exit_code(Verdict::Fails) as u8)
                }
                Err(e) => input_error(e),
            }
        }
        Command::EnumContracted => {
            print!("{}", contracted_table());
            ExitCode::SUCCESS
        }
    }
}
