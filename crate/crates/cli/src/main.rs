//! Command-line front end.
//!
//! Subcommands mirror the library pipeline: `count`, `volume`,
//! `polynomial`, `ehrhart`, `reduce` and `chambers` consume a network
//! JSON file; `kostant` and `transport` build their configurations from
//! margins; `oracle` runs the brute-force enumerator. Results go to
//! stdout, either plain or as a JSON report.
//!
//! Exit codes: 0 success, 2 invalid input, 64 usage error, 70 internal
//! consistency failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use flowcount::network::Network;
use flowcount::{oracle, pipeline, Error};

#[derive(Parser)]
#[command(name = "flowcount", version, about = "Exact counting of integral network flows")]
struct Cli {
    /// Emit a JSON report instead of plain output.
    #[arg(long, global = true)]
    json: bool,

    /// Also report the number of special permutations summed.
    #[arg(long, global = true)]
    report_sp: bool,

    /// Worker threads for the per-permutation residue map (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count integral feasible flows of a network.
    Count { net: PathBuf },
    /// Flow-polytope volume (lattice normalization).
    Volume { net: PathBuf },
    /// Chamber counting polynomial in the excess parameters a1..ar.
    Polynomial { net: PathBuf },
    /// Ehrhart polynomial in t along the network's excess vector.
    Ehrhart { net: PathBuf },
    /// Rewrite into acyclic uncapacitated form.
    Reduce { net: PathBuf },
    /// Enumerate the chamber complex of the network's configuration.
    Chambers { net: PathBuf },
    /// Count flows on the complete graph with the given excesses.
    Kostant {
        /// Comma-separated excesses, including the last entry; must sum
        /// to zero (e.g. 6,8,-5,-9).
        #[arg(long, allow_hyphen_values = true)]
        excess: String,
    },
    /// Count lattice points of a transportation polytope.
    Transport {
        /// Comma-separated row margins.
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        /// Comma-separated column margins.
        #[arg(long, allow_hyphen_values = true)]
        cols: String,
    },
    /// Brute-force oracle: count, or enumerate with --enumerate.
    Oracle {
        net: PathBuf,
        #[arg(long)]
        enumerate: bool,
        /// Maximum number of flows to list.
        #[arg(long, requires = "enumerate")]
        limit: Option<usize>,
    },
}

/// Record of one run. The command echo and input digest identify what was
/// computed; only result, sp_size and seconds are part of the output
/// schema.
#[allow(dead_code)]
struct RunReport {
    command: String,
    input_digest: String,
    result: String,
    sp_size: Option<usize>,
    seconds: f64,
    /// Extra plain-mode lines (oracle enumeration).
    plain_lines: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    let json = cli.json;
    let report_sp = cli.report_sp;
    match run(cli) {
        Ok(report) => {
            emit(&report, json, report_sp);
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{err}");
            match err {
                Error::Internal(_) => ExitCode::from(70),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit(report: &RunReport, json: bool, report_sp: bool) {
    if json {
        let sp = if report_sp {
            report
                .sp_size
                .map_or(serde_json::Value::Null, |n| serde_json::json!(n))
        } else {
            serde_json::Value::Null
        };
        let value = serde_json::json!({
            "result": report.result,
            "sp_size": sp,
            "seconds": report.seconds,
        });
        println!("{value}");
    } else {
        match &report.plain_lines {
            Some(lines) => {
                for line in lines {
                    println!("{line}");
                }
            }
            None => println!("{}", report.result),
        }
        if report_sp {
            match report.sp_size {
                Some(n) => println!("sp_size: {n}"),
                None => println!("sp_size: n/a"),
            }
        }
    }
}

fn read_network(path: &Path) -> Result<(Network, String), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let digest = hex_digest(text.as_bytes());
    Ok((Network::from_json(&text)?, digest))
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let mut out = String::new();
    for byte in hasher.finalize() {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

fn parse_margins(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("not an integer: `{part}`")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<RunReport, Error> {
    let parallel = cli.parallel.max(1);
    let started = Instant::now();
    let (command, digest, result, sp_size, plain_lines) = match &cli.command {
        Command::Count { net } => {
            let (network, digest) = read_network(net)?;
            let counted = pipeline::count_network(&network, parallel)?;
            (
                format!("count {}", net.display()),
                digest,
                counted.value.to_string(),
                Some(counted.sp_size),
                None,
            )
        }
        Command::Volume { net } => {
            let (network, digest) = read_network(net)?;
            let volume = pipeline::volume_network(&network)?;
            (
                format!("volume {}", net.display()),
                digest,
                flowcount::algebra::format_rat(&volume),
                None,
                None,
            )
        }
        Command::Polynomial { net } => {
            let (network, digest) = read_network(net)?;
            let poly = pipeline::polynomial_network(&network)?;
            (
                format!("polynomial {}", net.display()),
                digest,
                poly.to_string(),
                None,
                None,
            )
        }
        Command::Ehrhart { net } => {
            let (network, digest) = read_network(net)?;
            let poly = pipeline::ehrhart_network(&network)?;
            (
                format!("ehrhart {}", net.display()),
                digest,
                poly.to_string(),
                None,
                None,
            )
        }
        Command::Reduce { net } => {
            let (network, digest) = read_network(net)?;
            let (reduced, _) = flowcount::network::reduce_to_acyclic(&network)?;
            (
                format!("reduce {}", net.display()),
                digest,
                reduced.to_json(),
                None,
                None,
            )
        }
        Command::Chambers { net } => {
            let (network, digest) = read_network(net)?;
            let chambers = pipeline::chambers_network(&network)?;
            (
                format!("chambers {}", net.display()),
                digest,
                chambers,
                None,
                None,
            )
        }
        Command::Kostant { excess } => {
            let excesses = parse_margins(excess)?;
            let value = flowcount::kostant_count_with_stats(&excesses, parallel)?;
            (
                format!("kostant --excess {excess}"),
                hex_digest(excess.as_bytes()),
                value.value.to_string(),
                Some(value.sp_size),
                None,
            )
        }
        Command::Transport { rows, cols } => {
            let d = parse_margins(rows)?;
            let c = parse_margins(cols)?;
            let value = flowcount::residue::transportation_count_with_stats(&d, &c, parallel)?;
            (
                format!("transport --rows {rows} --cols {cols}"),
                hex_digest(format!("{rows}|{cols}").as_bytes()),
                value.value.to_string(),
                Some(value.sp_size),
                None,
            )
        }
        Command::Oracle { net, enumerate, limit } => {
            let (network, digest) = read_network(net)?;
            if *enumerate {
                let listing = oracle::brute_enumerate(&network, limit.unwrap_or(usize::MAX))?;
                let flows: Vec<&Vec<u64>> = listing.flows.iter().map(|f| &f.values).collect();
                let result = serde_json::json!({
                    "flows": flows,
                    "truncated": listing.truncated,
                })
                .to_string();
                let mut lines: Vec<String> = listing
                    .flows
                    .iter()
                    .map(|f| {
                        f.values
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                if listing.truncated {
                    lines.push("(truncated)".into());
                }
                (
                    format!("oracle {} --enumerate", net.display()),
                    digest,
                    result,
                    None,
                    Some(lines),
                )
            } else {
                let count = oracle::brute_count(&network)?;
                (
                    format!("oracle {}", net.display()),
                    digest,
                    count.to_string(),
                    None,
                    None,
                )
            }
        }
    };
    Ok(RunReport {
        command,
        input_digest: digest,
        result,
        sp_size,
        seconds: started.elapsed().as_secs_f64(),
        plain_lines,
    })
}
