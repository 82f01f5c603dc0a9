//! Batch runs of one action over a stream of graphs.
//!
//! Instances are numbered in generation order and processed in parallel;
//! records are merged back in index order, so a seed fixes the output
//! byte for byte whatever the thread count.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{archive, default_k, emit, read_input, EXIT_FAIL, EXIT_INCONSISTENCY, EXIT_OK, THREADS_ENV};
use crate::colouring::{is_tnsd, Colour, ColouringRecord};
use crate::configurations::find_any_reducible;
use crate::density::max_average_degree;
use crate::discharging::{apply_rules, degree_case_audit, threshold, verify_ghost_conditions};
use crate::error::{Error, Result};
use crate::generate::{connected_graphs_up_to, random_sparse};
use crate::graph::Graph;
use crate::io::{parse_edge_list, parse_graph6_lines, sniff_format, to_graph6, Format};
use crate::prover::{recursive_colour_with, ProofOutcome};
use crate::rational::Rational;
use crate::solver::{find_tnsd, Budget, SearchOutcome};

/// Default node limit for the solver inside scans.
pub const DEFAULT_SCAN_NODES: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    /// tnsd colouring with `k` colours; `Δ+3` with `--k-auto`.
    Solve,
    /// A reducible configuration, or a configuration-free graph that is
    /// dense and meets the ghost-vertex conditions.
    Detect,
    /// Charge conservation, and the ghost-vertex conditions when no
    /// configuration is present.
    Discharge,
    /// Recursive colouring with `k + 3` colours.
    Prove,
    /// Degree-case audit of configuration-free graphs.
    Audit,
}

/// Scan flags; every field can also come from a flat `key = value` config
/// file using the flag names. Flags override the file.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScanArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// All connected graphs with at most this many vertices.
    #[arg(long)]
    pub exhaustive: Option<usize>,
    /// This many random sparse graphs.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// graph6 lines, or one edge list.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Keep graphs with `mad < p/q`.
    #[arg(long)]
    pub mad_below: Option<String>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Keep graphs with girth at least this (forests always pass).
    #[arg(long)]
    pub min_girth: Option<usize>,
    #[arg(long, value_enum)]
    pub action: Option<Action>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Per-instance k: `max(8, Δ)`, or the palette `Δ+3` for `solve`.
    #[arg(long)]
    #[serde(default)]
    pub k_auto: bool,
    /// Worker threads; defaults to the environment variable, then all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Solver node limit; 0 means unlimited.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub archive: Option<PathBuf>,
}

impl ScanArgs {
    /// Fields set in `self` win over those in `base`.
    fn over(self, base: ScanArgs) -> ScanArgs {
        ScanArgs {
            config: self.config.or(base.config),
            exhaustive: self.exhaustive.or(base.exhaustive),
            random: self.random.or(base.random),
            n_min: self.n_min.or(base.n_min),
            n_max: self.n_max.or(base.n_max),
            seed: self.seed.or(base.seed),
            file: self.file.or(base.file),
            mad_below: self.mad_below.or(base.mad_below),
            max_degree: self.max_degree.or(base.max_degree),
            min_girth: self.min_girth.or(base.min_girth),
            action: self.action.or(base.action),
            k: self.k.or(base.k),
            k_auto: self.k_auto || base.k_auto,
            threads: self.threads.or(base.threads),
            budget: self.budget.or(base.budget),
            archive: self.archive.or(base.archive),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Exhaustive { max_n: usize },
    Random { count: usize, n_min: usize, n_max: usize, seed: u64 },
    File(PathBuf),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub mad_below: Option<Rational>,
    pub max_degree: Option<usize>,
    pub min_girth: Option<usize>,
}

impl Filters {
    /// Exact checks, cheapest first.
    pub fn accept(&self, g: &Graph) -> Result<bool> {
        if self.max_degree.is_some_and(|d| g.max_degree() > d) {
            return Ok(false);
        }
        if let Some(min) = self.min_girth {
            if g.girth().is_some_and(|girth| girth < min) {
                return Ok(false);
            }
        }
        if let Some(bound) = &self.mad_below {
            if g.vertex_count() > 0 && max_average_degree(g)?.value >= *bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A fully resolved scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanTask {
    pub source: Source,
    pub filters: Filters,
    pub action: Action,
    /// `None`: chosen per instance.
    pub k: Option<usize>,
    pub budget: Budget,
    pub archive: PathBuf,
}

impl ScanTask {
    pub fn from_args(args: ScanArgs) -> Result<ScanTask> {
        let args = match &args.config {
            Some(path) => {
                let text = String::from_utf8(read_input(path)?)
                    .map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
                let file: ScanArgs =
                    toml::from_str(&text).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
                args.over(file)
            }
            None => args,
        };
        let sources = [args.exhaustive.is_some(), args.random.is_some(), args.file.is_some()];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(Error::Domain("give exactly one of exhaustive, random, file".into()));
        }
        let source = if let Some(max_n) = args.exhaustive {
            Source::Exhaustive { max_n }
        } else if let Some(count) = args.random {
            let n_min = args.n_min.unwrap_or(5);
            Source::Random { count, n_min, n_max: args.n_max.unwrap_or(n_min.max(30)), seed: args.seed.unwrap_or(0) }
        } else {
            Source::File(args.file.clone().expect("one source is set"))
        };
        let mad_below = args
            .mad_below
            .as_deref()
            .map(|s| s.parse::<Rational>().map_err(|e| Error::Domain(e.to_string())))
            .transpose()?;
        let action = args.action.ok_or_else(|| Error::Domain("missing action".into()))?;
        if args.k.is_some() && args.k_auto {
            return Err(Error::Domain("k and k-auto exclude each other".into()));
        }
        let budget = match args.budget {
            Some(0) => Budget::unlimited(),
            Some(n) => Budget::nodes(n),
            None => Budget::nodes(DEFAULT_SCAN_NODES),
        };
        Ok(ScanTask {
            source,
            filters: Filters { mad_below, max_degree: args.max_degree, min_girth: args.min_girth },
            action,
            k: args.k,
            budget,
            archive: args.archive.unwrap_or_else(|| PathBuf::from("tnsd-archive")),
        })
    }

    /// The graphs of the source, numbered from 0.
    pub fn instances(&self) -> Result<Vec<Graph>> {
        match &self.source {
            Source::Exhaustive { max_n } => connected_graphs_up_to(*max_n),
            Source::Random { count, n_min, n_max, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count).map(|_| random_sparse(*n_min, *n_max, &mut rng)).collect()
            }
            Source::File(path) => {
                let bytes = read_input(path)?;
                match sniff_format(&bytes) {
                    Format::EdgeList if !looks_like_graph6_lines(&bytes) => Ok(vec![parse_edge_list(&bytes)?]),
                    _ => parse_graph6_lines(&bytes),
                }
            }
        }
    }
}

fn looks_like_graph6_lines(bytes: &[u8]) -> bool {
    let body = bytes.strip_prefix(b">>graph6<<".as_slice()).unwrap_or(bytes);
    body.split(|&b| b == b'\n')
        .map(|l| l.trim_ascii())
        .filter(|l| !l.is_empty())
        .all(|l| l.iter().all(|b| (63..=126).contains(b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
    /// Rejected by a filter or outside the action's hypotheses.
    Filtered,
    /// The prover contradicted itself; the instance is archived.
    Inconsistency,
}

/// One instance; failures carry the graph so they can be replayed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub status: Status,
    pub detail: Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub scanned: usize,
    pub filtered: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub inconsistency: usize,
}

impl ScanSummary {
    pub fn of(records: &[ScanRecord]) -> ScanSummary {
        let mut s = ScanSummary { scanned: records.len(), ..Default::default() };
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Indeterminate => s.indeterminate += 1,
                Status::Filtered => s.filtered += 1,
                Status::Inconsistency => s.inconsistency += 1,
            }
        }
        s
    }
}

fn search_status(outcome: &SearchOutcome) -> (Status, &'static str) {
    match outcome {
        SearchOutcome::Found(_) => (Status::Pass, "found"),
        SearchOutcome::Infeasible => (Status::Fail, "infeasible"),
        SearchOutcome::Indeterminate => (Status::Indeterminate, "indeterminate"),
    }
}

/// Runs the task's action on one graph.
pub fn process(task: &ScanTask, index: usize, g: &Graph) -> Result<ScanRecord> {
    let mut record = ScanRecord {
        index,
        graph6: to_graph6(g),
        n: g.vertex_count(),
        m: g.edge_count(),
        k: None,
        status: Status::Filtered,
        detail: Value::Null,
    };
    if g.vertex_count() == 0 || !task.filters.accept(g)? {
        return Ok(record);
    }
    if task.action == Action::Solve {
        let palette = task.k.unwrap_or(g.max_degree() + 3);
        record.k = Some(palette);
        let outcome = find_tnsd(g, palette as Colour, task.budget)?;
        let (status, word) = search_status(&outcome);
        record.status = status;
        record.detail = match outcome.colouring() {
            Some(c) => {
                json!({ "outcome": word, "colouring": ColouringRecord::from_colouring(g, c) })
            }
            None => json!({ "outcome": word }),
        };
        return Ok(record);
    }
    let k = task.k.unwrap_or_else(|| default_k(g));
    record.k = Some(k);
    if g.max_degree() > k {
        return Ok(record);
    }
    let (status, detail) = match task.action {
        Action::Solve => unreachable!("handled above"),
        Action::Detect => match find_any_reducible(g, k)? {
            Some(occ) => {
                (Status::Pass, json!({ "occurrence": serde_json::from_str::<Value>(&occ.to_json()).expect("json") }))
            }
            None => {
                let mad = max_average_degree(g)?.value;
                let ghost = verify_ghost_conditions(g, &apply_rules(g))?;
                let ok = mad >= threshold() && ghost.all_pass;
                let status = if ok { Status::Pass } else { Status::Fail };
                (status, json!({ "occurrence": null, "mad": mad.to_string(), "ghost": ghost.conclusion }))
            }
        },
        Action::Discharge => {
            let ledger = apply_rules(g);
            let ghost = verify_ghost_conditions(g, &ledger)?;
            let reducible = find_any_reducible(g, k)?.is_some();
            let ok = ghost.conservation && (reducible || ghost.all_pass);
            let status = if ok { Status::Pass } else { Status::Fail };
            (status, json!({ "reducible": reducible, "conserved": ghost.conservation, "conclusion": ghost.conclusion }))
        }
        Action::Audit => {
            let report = degree_case_audit(g, k)?;
            let ok = report.blocking.is_some() || report.all_ok;
            let status = if ok { Status::Pass } else { Status::Fail };
            (
                status,
                json!({ "blocked": report.blocking.is_some(), "all_ok": report.all_ok, "cap_failures": report.cap_failures }),
            )
        }
        Action::Prove => match recursive_colour_with(g, k, task.budget) {
            Ok(ProofOutcome::Coloured { colouring, steps }) => {
                let ok = is_tnsd(g, &colouring)? && colouring.max_colour_used() as usize <= k + 3;
                let status = if ok { Status::Pass } else { Status::Fail };
                (status, json!({ "outcome": "coloured", "steps": steps.len() }))
            }
            Ok(ProofOutcome::HypothesisNotMet { mad, fallback }) => {
                let (status, word) = search_status(&fallback);
                (status, json!({ "outcome": "hypothesis-not-met", "mad": mad.to_string(), "fallback": word }))
            }
            Err(Error::Inconsistency(msg)) => {
                let path = archive(&task.archive, &format!("scan-{index}"), g, k, &msg)?;
                (Status::Inconsistency, json!({ "error": msg, "archived": path }))
            }
            Err(e) => return Err(e),
        },
    };
    record.status = status;
    record.detail = detail;
    Ok(record)
}

/// Processes every instance; records come back in index order.
pub fn run_task(task: &ScanTask, threads: usize) -> Result<Vec<ScanRecord>> {
    let graphs = task.instances()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    pool.install(|| graphs.par_iter().enumerate().map(|(i, g)| process(task, i, g)).collect())
}

fn thread_count(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Domain(format!("{THREADS_ENV}={v:?} is not a count"))),
        Err(_) => Ok(0),
    }
}

pub(super) fn run_scan(args: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let threads = thread_count(args.threads)?;
    let task = ScanTask::from_args(args)?;
    let records = run_task(&task, threads)?;
    for r in records.iter().filter(|r| r.status != Status::Filtered) {
        emit(out, r)?;
    }
    let s = ScanSummary::of(&records);
    let _ = writeln!(
        err,
        "scanned {}: {} filtered, {} pass, {} fail, {} indeterminate, {} inconsistent",
        s.scanned, s.filtered, s.pass, s.fail, s.indeterminate, s.inconsistency
    );
    if task.action == Action::Solve && task.k.is_none() && s.fail == 0 && s.indeterminate == 0 {
        let _ = writeln!(err, "all graphs satisfy χ″_Σ ≤ Δ+3");
    }
    if s.inconsistency > 0 {
        let _ = writeln!(err, "inconsistent instances archived under {}", task.archive.display());
        return Ok(EXIT_INCONSISTENCY);
    }
    Ok(if s.fail == 0 { EXIT_OK } else { EXIT_FAIL })
}
