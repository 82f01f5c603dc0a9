//! Command-line surface. Reports go to the output stream as JSON lines; a
//! short human summary goes to the error stream.
//!
//! Exit codes: [`EXIT_OK`] when every check passes, [`EXIT_FAIL`] when a
//! check fails, [`EXIT_USAGE`] for bad flags or unreadable input, and
//! [`EXIT_INCONSISTENCY`] when the prover contradicts itself (the instance
//! is archived first).

mod scan;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::certificates::{builtin_certificates, spot_check_reductions, verify_certificate};
use crate::colouring::{verify, Colour, ColouringRecord};
use crate::configurations::{detect, Kind};
use crate::density::max_average_degree;
use crate::discharging::{apply_rules, degree_case_audit, verify_ghost_conditions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{parse_graph, sniff_format, to_graph6};
use crate::prover::{recursive_colour, ProofOutcome};
use crate::solver::{find_tnsd_with_stats, tnsd_index, Budget, IndexResult, SearchOutcome};
use crate::sumsets::exhaustive_sweep;

pub use scan::{process, run_task, Action, Filters, ScanArgs, ScanRecord, ScanSummary, ScanTask, Source, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENCY: i32 = 3;

/// Environment variable holding the default scan thread count.
pub const THREADS_ENV: &str = "TNSD_THREADS";

#[derive(Debug, Parser)]
#[command(name = "tnsd", version, about = "Total neighbour-sum-distinguishing colourings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// graph6 or edge-list file; `-` reads standard input.
    pub graph: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum average degree with a densest vertex set.
    Mad(GraphArg),
    /// Length of a shortest cycle, or null for forests.
    Girth(GraphArg),
    /// tnsd colouring with `--k` colours, or the exact index without it.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: Option<Colour>,
        /// Search node limit; unlimited when omitted.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Verifies a colouring given as JSON.
    Check {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        colouring: PathBuf,
    },
    /// Lists reducible configurations.
    Detect {
        #[command(flatten)]
        graph: GraphArg,
        /// Defaults to max(8, Δ).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        kind: Option<Kind>,
    },
    /// Applies the discharging rules and checks the ghost-vertex conditions.
    Discharge {
        #[command(flatten)]
        graph: GraphArg,
        /// Per-vertex degree-case audit instead.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Recomputes the six certificate coefficients.
    VerifyCn {
        /// Also instantiate every case system this many times.
        #[arg(long, default_value_t = 0)]
        spot_checks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive check of the distinct-sums bound.
    VerifyLemma {
        #[arg(long, default_value_t = 3)]
        max_t: usize,
        #[arg(long, default_value_t = 6)]
        max_value: i64,
    },
    /// Colours the graph by reduction and extension.
    Prove {
        #[command(flatten)]
        graph: GraphArg,
        /// Defaults to max(8, Δ).
        #[arg(long)]
        k: Option<usize>,
        /// Where inconsistent instances are written.
        #[arg(long, default_value = "tnsd-archive")]
        archive: PathBuf,
    },
    /// Runs one action over many graphs.
    Scan(ScanArgs),
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inconsistency(_) => EXIT_INCONSISTENCY,
                _ => EXIT_USAGE,
            }
        }
    }
}

pub(crate) fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let line = serde_json::to_string(value).expect("reports serialise");
    writeln!(out, "{line}").map_err(io_error)
}

fn io_error(e: io::Error) -> Error {
    Error::Domain(format!("i/o: {e}"))
}

pub(crate) fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(io_error)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
    }
}

fn read_graph(arg: &GraphArg) -> Result<Graph> {
    let bytes = read_input(&arg.graph)?;
    parse_graph(&bytes, sniff_format(&bytes))
}

/// `max(8, Δ)`.
pub fn default_k(g: &Graph) -> usize {
    g.max_degree().max(8)
}

/// Writes `g` and the error to `dir/name.json`; returns the path.
pub(crate) fn archive(dir: &Path, name: &str, g: &Graph, k: usize, error: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(io_error)?;
    let path = dir.join(format!("{name}.json"));
    let record = json!({ "graph6": to_graph6(g), "k": k, "error": error });
    fs::write(&path, format!("{record}\n")).map_err(io_error)?;
    Ok(path)
}

fn search_json(outcome: &SearchOutcome, g: &Graph) -> serde_json::Value {
    match outcome {
        SearchOutcome::Found(c) => {
            json!({ "outcome": "found", "colouring": ColouringRecord::from_colouring(g, c) })
        }
        SearchOutcome::Infeasible => json!({ "outcome": "infeasible" }),
        SearchOutcome::Indeterminate => json!({ "outcome": "indeterminate" }),
    }
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map_or_else(Budget::unlimited, Budget::nodes)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Mad(arg) => {
            let g = read_graph(&arg)?;
            let mad = max_average_degree(&g)?;
            emit(out, &json!({ "mad": mad.value.to_string(), "witness": mad.witness }))?;
            Ok(EXIT_OK)
        }
        Command::Girth(arg) => {
            let g = read_graph(&arg)?;
            emit(out, &json!({ "girth": g.girth() }))?;
            Ok(EXIT_OK)
        }
        Command::Solve { graph, k, budget: nodes } => {
            let g = read_graph(&graph)?;
            match k {
                Some(k) => {
                    let (outcome, stats) = find_tnsd_with_stats(&g, k, budget(nodes))?;
                    let mut record = search_json(&outcome, &g);
                    record["k"] = json!(k);
                    record["nodes"] = json!(stats.nodes);
                    emit(out, &record)?;
                    Ok(if matches!(outcome, SearchOutcome::Found(_)) { EXIT_OK } else { EXIT_FAIL })
                }
                None => match tnsd_index(&g, budget(nodes))? {
                    IndexResult::Exact { k, witness } => {
                        let c = ColouringRecord::from_colouring(&g, &witness);
                        emit(out, &json!({ "index": k, "colouring": c }))?;
                        Ok(EXIT_OK)
                    }
                    IndexResult::Bounds { lower, upper } => {
                        emit(out, &json!({ "index": null, "lower": lower, "upper": upper.map(|(k, _)| k) }))?;
                        Ok(EXIT_FAIL)
                    }
                },
            }
        }
        Command::Check { graph, colouring } => {
            let g = read_graph(&graph)?;
            let text = read_input(&colouring)?;
            let record: ColouringRecord = serde_json::from_slice(&text)
                .map_err(|e| Error::Parse { offset: e.column(), message: e.to_string() })?;
            let report = verify(&g, &record.to_colouring(&g)?)?;
            emit(out, &report)?;
            Ok(if report.tnsd { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Detect { graph, k, kind } => {
            let g = read_graph(&graph)?;
            let k = k.unwrap_or_else(|| default_k(&g));
            let kinds: Vec<Kind> = kind.map_or_else(|| Kind::ALL.to_vec(), |k| vec![k]);
            let mut total = 0;
            for kind in kinds {
                for occ in detect(&g, k, kind)? {
                    writeln!(out, "{}", occ.to_json()).map_err(io_error)?;
                    total += 1;
                }
            }
            let _ = writeln!(err, "{total} occurrences");
            Ok(EXIT_OK)
        }
        Command::Discharge { graph, audit, k } => {
            let g = read_graph(&graph)?;
            if audit {
                let report = degree_case_audit(&g, k.unwrap_or_else(|| default_k(&g)))?;
                emit(out, &report)?;
                Ok(if report.blocking.is_some() || report.all_ok { EXIT_OK } else { EXIT_FAIL })
            } else {
                let ledger = apply_rules(&g);
                let ghost = verify_ghost_conditions(&g, &ledger)?;
                let ok = ghost.conservation;
                emit(out, &json!({ "ledger": ledger, "ghost": ghost }))?;
                Ok(if ok { EXIT_OK } else { EXIT_FAIL })
            }
        }
        Command::VerifyCn { spot_checks, seed } => {
            let mut ok = true;
            for cert in builtin_certificates() {
                let check = verify_certificate(&cert)?;
                ok &= check.ok;
                emit(out, &check.to_json())?;
            }
            if spot_checks > 0 {
                let checks = spot_check_reductions(seed, spot_checks)?;
                let bad = checks.iter().filter(|c| !c.ok).count();
                for c in checks.iter().filter(|c| !c.ok) {
                    emit(out, c)?;
                }
                let _ = writeln!(err, "{} spot checks, {bad} mismatches", checks.len());
                ok &= bad == 0;
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Command::VerifyLemma { max_t, max_value } => {
            let report = exhaustive_sweep(max_t, max_value);
            emit(out, &report)?;
            Ok(if report.violations.is_empty() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Prove { graph, k, archive: dir } => {
            let g = read_graph(&graph)?;
            let k = k.unwrap_or_else(|| default_k(&g));
            match recursive_colour(&g, k) {
                Ok(ProofOutcome::Coloured { colouring, steps }) => {
                    let c = ColouringRecord::from_colouring(&g, &colouring);
                    emit(out, &json!({ "k": k, "outcome": "coloured", "colouring": c, "steps": steps }))?;
                    Ok(EXIT_OK)
                }
                Ok(ProofOutcome::HypothesisNotMet { mad, fallback }) => {
                    let mut record = search_json(&fallback, &g);
                    record["k"] = json!(k);
                    record["mad"] = json!(mad.to_string());
                    record["hypothesis"] = json!("not-met");
                    emit(out, &record)?;
                    Ok(if fallback.colouring().is_some() { EXIT_OK } else { EXIT_FAIL })
                }
                Err(Error::Inconsistency(msg)) => {
                    let path = archive(&dir, "prove", &g, k, &msg)?;
                    let _ = writeln!(err, "inconsistency: {msg}; instance archived at {}", path.display());
                    Ok(EXIT_INCONSISTENCY)
                }
                Err(e) => Err(e),
            }
        }
        Command::Scan(args) => scan::run_scan(args, out, err),
    }
}
