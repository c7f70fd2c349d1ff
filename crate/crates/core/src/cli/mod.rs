//! The `maxzx` command line.

mod repl;

pub use repl::{run_repl, Session, Step};

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::engine::{maxzx, run_bench, unbounded_search, BenchConfig, BenchResult};
use crate::evidence::{deserialize_certificate, serialize_certificate, verify_certificate, Verdict};
use crate::oracle::Oracle;
use crate::parser::{parse_oracle_spec, OracleSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NEGATIVE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "maxzx", version, about = "Find a prime in a maximal ideal of Z[X], or evidence that it is not one")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the engine on an oracle file.
    Run {
        #[arg(long)]
        oracle: PathBuf,
        /// Write the certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Print the certificate as JSON instead of the verdict.
        #[arg(long)]
        json: bool,
    },
    /// Test primes 2, 3, 5, ... for membership.
    Search {
        #[arg(long)]
        oracle: PathBuf,
        /// Number of primes to try; 0 means no bound.
        #[arg(long, default_value_t = 0)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a certificate against an oracle.
    Verify {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare the engine with the prime search on a list of oracle files.
    Bench {
        /// File with one oracle path per line, relative to the list file.
        list: PathBuf,
        #[arg(long, default_value_t = 1)]
        repeat: u32,
        /// Search bound per instance; 0 means no bound.
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Edit oracle overrides and rerun interactively.
    Repl {
        #[arg(long, required_unless_present = "empty")]
        oracle: Option<PathBuf>,
        /// Start from the oracle that rejects everything, with nu = 1.
        #[arg(long, conflicts_with = "oracle")]
        empty: bool,
    },
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    let stdin = io::stdin();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    execute(cli, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn load_spec(path: &Path) -> Result<OracleSpec, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_oracle_spec(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn execute(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(cli, input, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn io_err(e: io::Error) -> String {
    e.to_string()
}

fn dispatch(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<u8, String> {
    match cli.command {
        Command::Run { oracle, cert, json } => {
            let o = Oracle::from_spec(&load_spec(&oracle)?);
            let outcome = maxzx(&o).map_err(|e| e.to_string())?;
            let text = serialize_certificate(&outcome.certificate);
            if let Some(path) = cert {
                fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if json {
                writeln!(out, "{text}").map_err(io_err)?;
            } else {
                writeln!(out, "{}", outcome.verdict).map_err(io_err)?;
            }
            Ok(verdict_status(&outcome.verdict))
        }
        Command::Search { oracle, limit, json } => {
            let o = Oracle::from_spec(&load_spec(&oracle)?);
            let found = unbounded_search(&o, limit);
            if json {
                let v = serde_json::json!({
                    "prime": found.as_ref().map(|p| p.to_string()),
                    "limit": limit,
                    "m_calls": o.m_calls(),
                });
                writeln!(out, "{v}").map_err(io_err)?;
            } else {
                match &found {
                    Some(p) => writeln!(out, "prime: {p} ({} membership calls)", o.m_calls()),
                    None => writeln!(out, "none within {limit} ({} membership calls)", o.m_calls()),
                }
                .map_err(io_err)?;
            }
            Ok(if found.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Verify { oracle, cert, json } => {
            let o = Oracle::from_spec(&load_spec(&oracle)?);
            let text = fs::read_to_string(&cert).map_err(|e| format!("{}: {e}", cert.display()))?;
            let c = match deserialize_certificate(&text) {
                Ok(c) => c,
                Err(e) => {
                    if json {
                        let v = serde_json::json!({"overall": "fail", "error": e.to_string()});
                        writeln!(out, "{v}").map_err(io_err)?;
                    } else {
                        writeln!(out, "malformed certificate: {e}\noverall: fail").map_err(io_err)?;
                    }
                    return Ok(EXIT_NEGATIVE);
                }
            };
            let report = verify_certificate(&o, &c);
            if json {
                writeln!(out, "{}", report.to_json()).map_err(io_err)?;
            } else {
                writeln!(out, "{report}").map_err(io_err)?;
            }
            Ok(if report.overall() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Bench { list, repeat, limit, json } => {
            let config = BenchConfig { repeat, search_limit: limit, ..BenchConfig::default() };
            bench(&list, &config, json, out)
        }
        Command::Repl { oracle, empty } => {
            let session = if empty {
                Session::empty()
            } else {
                let path = oracle.expect("clap requires --oracle without --empty");
                Session::new(Oracle::from_spec(&load_spec(&path)?))
            };
            run_repl(session, input, out).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}

/// Entries of a bench list file, resolved against its directory.
pub fn read_bench_list(list: &Path) -> Result<Vec<PathBuf>, String> {
    let text = fs::read_to_string(list).map_err(|e| format!("{}: {e}", list.display()))?;
    let base = list.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| base.join(l))
        .collect())
}

fn bench(list: &Path, config: &BenchConfig, json: bool, out: &mut dyn Write) -> Result<u8, String> {
    let paths = read_bench_list(list)?;
    let mut rows: Vec<(String, Result<BenchResult, String>)> = Vec::new();
    for path in &paths {
        let name = path.display().to_string();
        match load_spec(path) {
            Ok(spec) => {
                for r in run_bench(std::slice::from_ref(&spec), config) {
                    rows.push((name.clone(), Ok(r)));
                }
            }
            Err(e) => rows.push((name, Err(e))),
        }
    }
    if json {
        let v: Vec<_> = rows
            .iter()
            .map(|(name, r)| match r {
                Ok(r) => serde_json::json!({
                    "instance": name,
                    "method": r.method.to_string(),
                    "outcome": r.outcome,
                    "m_calls": r.m_calls,
                    "nu_calls": r.nu_calls,
                    "time_ms": r.time.as_secs_f64() * 1e3,
                }),
                Err(e) => serde_json::json!({"instance": name, "error": e}),
            })
            .collect();
        writeln!(out, "{}", serde_json::Value::Array(v)).map_err(io_err)?;
    } else {
        writeln!(out, "{:<32} {:<7} {:<28} {:>8} {:>8} {:>12}", "instance", "method", "outcome", "m_calls", "nu_calls", "time_ms")
            .map_err(io_err)?;
        for (name, r) in &rows {
            match r {
                Ok(r) => writeln!(
                    out,
                    "{:<32} {:<7} {:<28} {:>8} {:>8} {:>12.3}",
                    name,
                    r.method,
                    r.outcome,
                    r.m_calls,
                    r.nu_calls,
                    r.time.as_secs_f64() * 1e3
                ),
                Err(e) => writeln!(out, "{name:<32} error: {e}"),
            }
            .map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

/// Exit status for a verdict.
pub fn verdict_status(v: &Verdict) -> u8 {
    match v {
        Verdict::Prime(_) => EXIT_OK,
        Verdict::NotMaximal(_) => EXIT_NEGATIVE,
    }
}
