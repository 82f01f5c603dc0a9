//! Exact discharging: initial charge `d(v) − 14/3`, three transfer rules,
//! the ghost-vertex conditions, and a per-degree audit of the closed-form
//! lower bounds on final charges.
//!
//! Rules (gross transfers, one per qualifying adjacency):
//! * `R1`: a 6⁺-vertex gives 1 to every adjacent 1- or 2-vertex;
//! * `R2`: a 6⁺-vertex gives 5/9 to every adjacent 3-vertex;
//! * `R3`: a 5⁺-vertex gives 1/6 to every adjacent 4-vertex.
//!
//! Ghost conditions, with `V1` the 3⁺-vertices and `V2` the rest: every
//! `v ∈ V1` ends non-negative, every `v ∈ V2` ends at least
//! `d(v) − 14/3 + d_{V1}(v)`. Together they force `mad(G[V1]) ≥ 14/3`.

use serde::Serialize;

use crate::configurations::{find_any_reducible, Occurrence};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;

/// `14/3`.
pub fn threshold() -> Rational {
    Rational::new(14, 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

impl Rule {
    pub fn amount(self) -> Rational {
        match self {
            Rule::R1 => Rational::one(),
            Rule::R2 => Rational::new(5, 9),
            Rule::R3 => Rational::new(1, 6),
        }
    }

    /// The rule under which a `giver`-degree vertex pays a
    /// `receiver`-degree neighbour, if any.
    pub fn applies(giver: usize, receiver: usize) -> Option<Rule> {
        match receiver {
            1 | 2 if giver >= 6 => Some(Rule::R1),
            3 if giver >= 6 => Some(Rule::R2),
            4 if giver >= 5 => Some(Rule::R3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: Vertex,
    pub to: Vertex,
    pub amount: Rational,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub initial: Vec<Rational>,
    pub transfers: Vec<Transfer>,
    #[serde(rename = "final")]
    pub final_charges: Vec<Rational>,
}

impl ChargeLedger {
    pub fn total_initial(&self) -> Rational {
        self.initial.iter().cloned().sum()
    }

    pub fn total_final(&self) -> Rational {
        self.final_charges.iter().cloned().sum()
    }

    pub fn is_conserved(&self) -> bool {
        self.total_initial() == self.total_final()
    }
}

/// `ω(v) = d(v) − 14/3`, no transfers.
pub fn initial_charges(g: &Graph) -> ChargeLedger {
    let initial: Vec<Rational> = g.vertices().map(|v| Rational::from_integer(g.deg(v) as i64) - threshold()).collect();
    ChargeLedger { final_charges: initial.clone(), initial, transfers: Vec::new() }
}

/// Applies `R1`–`R3` to every adjacency, in vertex then neighbour order.
pub fn apply_rules(g: &Graph) -> ChargeLedger {
    let mut ledger = initial_charges(g);
    for v in g.vertices() {
        for &u in g.neighbours(v) {
            if let Some(rule) = Rule::applies(g.deg(v), g.deg(u)) {
                let amount = rule.amount();
                ledger.final_charges[v] -= &amount;
                ledger.final_charges[u] += &amount;
                ledger.transfers.push(Transfer { from: v, to: u, amount, rule });
            }
        }
    }
    ledger
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhostPartition {
    pub v1: Vec<Vertex>,
    pub v2: Vec<Vertex>,
    /// Number of `V1`-neighbours of every vertex.
    pub d_v1: Vec<usize>,
}

impl GhostPartition {
    pub fn new(g: &Graph) -> Self {
        let in_v1: Vec<bool> = g.vertices().map(|v| g.deg(v) >= 3).collect();
        GhostPartition {
            v1: g.vertices().filter(|&v| in_v1[v]).collect(),
            v2: g.vertices().filter(|&v| !in_v1[v]).collect(),
            d_v1: g.vertices().map(|v| g.neighbours(v).iter().filter(|&&u| in_v1[u]).count()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    /// Both conditions hold and `V1 ≠ ∅`: `mad(G) ≥ mad(G[V1]) ≥ 14/3`.
    Implied,
    /// Both conditions hold but `V1 = ∅`.
    Vacuous,
    NotImplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhostVertex {
    pub vertex: Vertex,
    pub degree: usize,
    pub in_v1: bool,
    #[serde(rename = "final")]
    pub final_charge: Rational,
    pub required: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhostReport {
    pub vertices: Vec<GhostVertex>,
    pub all_pass: bool,
    pub conservation: bool,
    pub conclusion: Conclusion,
}

pub fn verify_ghost_conditions(g: &Graph, ledger: &ChargeLedger) -> Result<GhostReport> {
    let n = g.vertex_count();
    if ledger.initial.len() != n || ledger.final_charges.len() != n {
        return Err(Error::Domain(format!("ledger covers {} vertices, graph has {n}", ledger.final_charges.len())));
    }
    let part = GhostPartition::new(g);
    let vertices: Vec<GhostVertex> = g
        .vertices()
        .map(|v| {
            let in_v1 = g.deg(v) >= 3;
            let required = if in_v1 {
                Rational::zero()
            } else {
                Rational::from_integer((g.deg(v) + part.d_v1[v]) as i64) - threshold()
            };
            let final_charge = ledger.final_charges[v].clone();
            GhostVertex { vertex: v, degree: g.deg(v), in_v1, pass: final_charge >= required, final_charge, required }
        })
        .collect();
    let all_pass = vertices.iter().all(|x| x.pass);
    let conclusion = match (all_pass, part.v1.is_empty()) {
        (false, _) => Conclusion::NotImplied,
        (true, true) => Conclusion::Vacuous,
        (true, false) => Conclusion::Implied,
    };
    Ok(GhostReport { vertices, all_pass, conservation: ledger.is_conserved(), conclusion })
}

/// Audit of one vertex against the closed-form bound of its degree case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub vertex: Vertex,
    pub degree: usize,
    pub case: String,
    /// Whether the neighbour-count caps the closed form assumes hold.
    pub caps_hold: bool,
    pub bound: Rational,
    #[serde(rename = "final")]
    pub final_charge: Rational,
    /// Ghost requirement met, and the bound reached whenever its caps hold.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub k: usize,
    /// Set when the graph contains a reducible configuration; no entries then.
    pub blocking: Option<serde_json::Value>,
    pub entries: Vec<AuditEntry>,
    pub all_ok: bool,
    /// Vertices whose case caps failed.
    pub cap_failures: Vec<Vertex>,
}

struct Counts {
    low2: usize,
    low3: usize,
    three: usize,
    four: usize,
    min_nbr: usize,
}

fn counts(g: &Graph, v: Vertex) -> Counts {
    let nb = g.neighbours(v);
    Counts {
        low2: nb.iter().filter(|&&u| g.deg(u) <= 2).count(),
        low3: nb.iter().filter(|&&u| g.deg(u) <= 3).count(),
        three: nb.iter().filter(|&&u| g.deg(u) == 3).count(),
        four: nb.iter().filter(|&&u| g.deg(u) == 4).count(),
        min_nbr: nb.iter().map(|&u| g.deg(u)).min().unwrap_or(usize::MAX),
    }
}

/// Case label, whether its caps hold, and its closed-form bound.
pub fn degree_case(g: &Graph, v: Vertex) -> (String, bool, Rational) {
    let d = g.deg(v);
    let c = counts(g, v);
    let r = Rational::new;
    match d {
        0 => ("isolated".into(), true, -threshold()),
        1 => ("degree-1".into(), c.min_nbr >= 6, r(-8, 3)),
        2 => ("degree-2".into(), c.min_nbr >= 6, r(-2, 3)),
        3 => ("degree-3".into(), c.min_nbr >= 6, Rational::zero()),
        4 => ("degree-4".into(), c.min_nbr >= 5, Rational::zero()),
        5 => ("degree-5".into(), c.low3 == 0 && c.four <= 2, Rational::zero()),
        6 if c.low3 > 0 => {
            let others_ok = g.neighbours(v).iter().filter(|&&u| g.deg(u) >= 5).count() == 5;
            ("degree-6-with-3minus".into(), c.low3 == 1 && others_ok, r(1, 3))
        }
        6 => ("degree-6-without-3minus".into(), true, r(1, 3)),
        _ => {
            if c.low2 > d - 5 {
                return ("degree-7plus-too-many-2minus".into(), false, Rational::zero());
            }
            let gap = d - c.low2;
            match gap {
                5 => ("degree-7plus-n2=d-5".into(), c.low3 + c.four == c.low2, r(1, 3)),
                6 => ("degree-7plus-n2=d-6".into(), c.three == 0 || (c.three == 1 && c.four == 0), r(1, 3)),
                7 => ("degree-7plus-n2=d-7".into(), c.three <= 3, Rational::zero()),
                _ => {
                    let alpha = (gap - 8) as i64;
                    if c.four == 0 {
                        ("degree-7plus-n2<=d-8-no-4".into(), c.three as i64 <= alpha + 6, r(4 * alpha, 9))
                    } else {
                        let beta = alpha + 6 - c.three as i64;
                        let caps = beta >= 1 && c.four as i64 <= beta + 2;
                        let bound = r(4 * alpha, 9) + r(7 * beta, 18) - r(1, 3);
                        ("degree-7plus-n2<=d-8-with-4".into(), caps, bound)
                    }
                }
            }
        }
    }
}

/// Per-vertex audit; meaningful on configuration-free graphs only, so a
/// graph with a reducible configuration yields the blocking occurrence.
pub fn degree_case_audit(g: &Graph, k: usize) -> Result<AuditReport> {
    if let Some(occ) = find_any_reducible(g, k)? {
        let blocking: Occurrence = occ;
        let value: serde_json::Value = serde_json::from_str(&blocking.to_json()).expect("valid json");
        return Ok(AuditReport {
            k,
            blocking: Some(value),
            entries: Vec::new(),
            all_ok: false,
            cap_failures: Vec::new(),
        });
    }
    let ledger = apply_rules(g);
    let ghost = verify_ghost_conditions(g, &ledger)?;
    let mut entries = Vec::new();
    let mut cap_failures = Vec::new();
    for v in g.vertices() {
        let (case, caps_hold, bound) = degree_case(g, v);
        let final_charge = ledger.final_charges[v].clone();
        if !caps_hold {
            cap_failures.push(v);
        }
        let ok = ghost.vertices[v].pass && (!caps_hold || final_charge >= bound);
        entries.push(AuditEntry { vertex: v, degree: g.deg(v), case, caps_hold, bound, final_charge, ok });
    }
    let all_ok = entries.iter().all(|e| e.ok);
    Ok(AuditReport { k, blocking: None, entries, all_ok, cap_failures })
}
