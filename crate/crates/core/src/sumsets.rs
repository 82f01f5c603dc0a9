//! Sums of distinct representatives.
//!
//! For lists `L_1, …, L_t` with every `|L_i| ≥ t`, the sums
//! `x_1 + … + x_t` with `x_i ∈ L_i` pairwise distinct take at least
//! `Σ|L_i| − t² + 1` values. This module enumerates the sums exactly and
//! checks the bound; the prover uses it as a counting primitive.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListSystem {
    lists: Vec<BTreeSet<i64>>,
}

impl ListSystem {
    /// At least one list, none empty.
    pub fn new(lists: Vec<BTreeSet<i64>>) -> Result<Self> {
        if lists.is_empty() {
            return Err(Error::Domain("a list system needs at least one list".into()));
        }
        if let Some(i) = lists.iter().position(BTreeSet::is_empty) {
            return Err(Error::Domain(format!("list {i} is empty")));
        }
        Ok(ListSystem { lists })
    }

    pub fn from_slices(lists: &[&[i64]]) -> Result<Self> {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    pub fn lists(&self) -> &[BTreeSet<i64>] {
        &self.lists
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Every list has at least `t` elements.
    pub fn is_admissible(&self) -> bool {
        let t = self.lists.len();
        self.lists.iter().all(|l| l.len() >= t)
    }
}

/// Every achievable sum over tuples of pairwise-distinct representatives.
/// Empty when no system of distinct representatives exists.
pub fn distinct_sums(s: &ListSystem) -> BTreeSet<i64> {
    let lists: Vec<Vec<i64>> = s.lists.iter().map(|l| l.iter().copied().collect()).collect();
    let mut chosen = Vec::with_capacity(lists.len());
    let mut out = BTreeSet::new();
    walk(&lists, &mut chosen, 0, &mut out);
    out
}

fn walk(lists: &[Vec<i64>], chosen: &mut Vec<i64>, sum: i64, out: &mut BTreeSet<i64>) {
    let i = chosen.len();
    if i == lists.len() {
        out.insert(sum);
        return;
    }
    for &x in &lists[i] {
        if chosen.contains(&x) {
            continue;
        }
        chosen.push(x);
        walk(lists, chosen, sum + x, out);
        chosen.pop();
    }
}

/// `Σ|L_i| − t² + 1`.
pub fn lemma_lower_bound(s: &ListSystem) -> Result<i64> {
    if !s.is_admissible() {
        return Err(Error::Domain(format!("every list must have at least t = {} elements", s.len())));
    }
    let t = s.len() as i64;
    let total: i64 = s.lists.iter().map(|l| l.len() as i64).sum();
    Ok(total - t * t + 1)
}

/// Outcome of checking the bound on one system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub distinct_sums: usize,
    pub lower_bound: i64,
    pub holds: bool,
    pub tight: bool,
}

pub fn check_lemma(s: &ListSystem) -> Result<LemmaCheck> {
    let lower_bound = lemma_lower_bound(s)?;
    let count = distinct_sums(s).len();
    Ok(LemmaCheck {
        distinct_sums: count,
        lower_bound,
        holds: count as i64 >= lower_bound,
        tight: count as i64 == lower_bound,
    })
}

/// `|distinct_sums(s)| ≥ lemma_lower_bound(s)`.
pub fn verify_lemma(s: &ListSystem) -> Result<bool> {
    check_lemma(s).map(|c| c.holds)
}

/// Summary of an exhaustive sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub systems_checked: u64,
    pub violations: Vec<ListSystem>,
    pub tight_instances: u64,
    pub first_tight: Option<ListSystem>,
}

/// Checks every admissible system with `1 ≤ t ≤ max_t` lists drawn from the
/// non-empty subsets of `1..=max_value`, lists taken as an ordered tuple.
pub fn exhaustive_sweep(max_t: usize, max_value: i64) -> SweepReport {
    let universe: Vec<i64> = (1..=max_value).collect();
    let subsets: Vec<BTreeSet<i64>> = (1u32..1 << universe.len())
        .map(|mask| universe.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &x)| x).collect())
        .collect();
    let mut report = SweepReport::default();
    for t in 1..=max_t {
        let pool: Vec<&BTreeSet<i64>> = subsets.iter().filter(|s| s.len() >= t).collect();
        let mut idx = vec![0usize; t];
        'outer: loop {
            let system = ListSystem { lists: idx.iter().map(|&i| pool[i].clone()).collect() };
            let check = check_lemma(&system).expect("pool lists are admissible");
            report.systems_checked += 1;
            if !check.holds {
                report.violations.push(system.clone());
            }
            if check.tight {
                report.tight_instances += 1;
                if report.first_tight.is_none() {
                    report.first_tight = Some(system);
                }
            }
            let mut pos = t;
            while pos > 0 {
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < pool.len() {
                    continue 'outer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    report
}
