//! Combinatorial Nullstellensatz certificates for the extension cases, and
//! the factor systems the prover builds from live partial colourings.
//!
//! Each case system has two factor lists: `f` encodes exactly the
//! properness and sum-distinction requirements, `g` is `f` times padding
//! factors so that `deg g` equals the target's degree. Constants in the
//! factors are partial sums of the current colouring; they never affect the
//! coefficient of a maximal-degree monomial, so every `g` shares its target
//! coefficient with the constant-free certificate of its case.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::{product_coefficient, product_degree, Factor, LinearForm, Monomial};

/// The extension cases solved through a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CnCase {
    /// Edge between two 4⁻-vertices.
    Case23Small,
    /// Edge between a 5⁻-vertex and a 3⁻-vertex.
    Case23Large,
    Case4,
    Case5,
    Case6,
    Case7,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnCertificate {
    pub name: String,
    pub case: CnCase,
    pub variable_names: Vec<String>,
    pub factors: Vec<Factor>,
    pub target: Monomial,
    pub expected: BigInt,
}

impl CnCertificate {
    pub fn degree_matches(&self) -> bool {
        product_degree(&self.factors) == self.target.total_degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub name: String,
    pub computed: BigInt,
    pub expected: BigInt,
    pub ok: bool,
}

impl CertificateCheck {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "computed": big_to_json(&self.computed),
            "expected": big_to_json(&self.expected),
            "ok": self.ok,
        })
    }
}

fn big_to_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn diff(n: usize, a: usize, b: usize) -> Factor {
    Factor::once(LinearForm::difference(n, a, b))
}

fn sum(n: usize, plus: &[usize], minus: &[usize], constant: i64, mult: u32) -> Factor {
    Factor::new(LinearForm::signed_sum(n, plus, minus, constant), mult)
}

fn names(n: usize, offset: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + offset)).collect()
}

fn h23(q: u32, p: u32) -> Vec<Factor> {
    vec![
        diff(3, 0, 1),
        Factor::new(LinearForm::difference(3, 0, 2), 2),
        diff(3, 1, 2),
        sum(3, &[0, 1], &[], 0, q),
        sum(3, &[2, 1], &[], 0, p),
    ]
}

fn case4_g() -> Vec<Factor> {
    let mut f: Vec<Factor> = (1..=6).map(|i| diff(7, 0, i)).collect();
    f.extend([diff(7, 1, 2), diff(7, 1, 3), diff(7, 2, 3)]);
    f.extend([diff(7, 1, 4), diff(7, 2, 5), diff(7, 3, 6)]);
    f.push(sum(7, &[0, 2, 3], &[4], 0, 1));
    f.push(sum(7, &[0, 1, 3], &[5], 0, 1));
    f.push(sum(7, &[0, 1, 2], &[6], 0, 1));
    f.push(sum(7, &[0, 1, 2, 3], &[], 0, 2));
    f.push(sum(7, &[1, 4], &[], 0, 3));
    f.push(sum(7, &[2, 5], &[], 0, 3));
    f.push(sum(7, &[3, 6], &[], 0, 3));
    f
}

fn case5_h() -> Vec<Factor> {
    let mut f: Vec<Factor> = (1..=4).map(|i| diff(5, 0, i)).collect();
    f.extend([diff(5, 1, 2), diff(5, 1, 3), diff(5, 2, 4)]);
    f.push(sum(5, &[0, 2], &[3], 0, 1));
    f.push(sum(5, &[0, 1], &[4], 0, 1));
    f.push(sum(5, &[0, 1, 2], &[], 0, 4));
    f.push(sum(5, &[1, 3], &[], 0, 2));
    f.push(sum(5, &[2, 4], &[], 0, 3));
    f
}

// Variables x1..x4 are stored at indices 0..3.
fn case6_h() -> Vec<Factor> {
    vec![
        diff(4, 0, 1),
        diff(4, 0, 2),
        diff(4, 1, 2),
        diff(4, 2, 3),
        sum(4, &[0, 1, 2], &[], 0, 4),
        sum(4, &[0, 1], &[3], 0, 1),
        sum(4, &[2, 3], &[], 0, 3),
    ]
}

fn case7_h() -> Vec<Factor> {
    let mut f: Vec<Factor> = (1..=5).map(|i| diff(6, 0, i)).collect();
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)] {
        f.push(diff(6, a, b));
    }
    f.push(sum(6, &[0, 1, 2, 3, 4], &[], 0, 4));
    f.push(sum(6, &[0, 1, 2, 3], &[5], 0, 1));
    f.push(sum(6, &[4, 5], &[], 0, 3));
    f
}

/// Target monomial of each case.
pub fn case_target(case: CnCase) -> Monomial {
    Monomial::new(match case {
        CnCase::Case23Small => vec![4, 3, 3],
        CnCase::Case23Large => vec![2, 3, 5],
        CnCase::Case4 => vec![6, 5, 1, 5, 2, 3, 4],
        CnCase::Case5 => vec![2, 4, 3, 5, 4],
        CnCase::Case6 => vec![4, 3, 2, 3],
        CnCase::Case7 => vec![1, 5, 4, 3, 3, 4],
    })
}

/// The six certificates: factorisation, target monomial, expected value.
pub fn builtin_certificates() -> Vec<CnCertificate> {
    let cert = |name: &str, case, factors, vars, offset, expected: i64| CnCertificate {
        name: name.to_string(),
        case,
        variable_names: names(vars, offset),
        factors,
        target: case_target(case),
        expected: BigInt::from(expected),
    };
    vec![
        cert("h1", CnCase::Case23Small, h23(3, 3), 3, 0, 2),
        cert("h2", CnCase::Case23Large, h23(4, 2), 3, 0, 2),
        cert("case4-g", CnCase::Case4, case4_g(), 7, 0, 16),
        cert("case5-h", CnCase::Case5, case5_h(), 5, 0, -10),
        cert("case6-h", CnCase::Case6, case6_h(), 4, 1, -6),
        cert("case7-h", CnCase::Case7, case7_h(), 6, 0, 5),
    ]
}

pub fn builtin_certificate(case: CnCase) -> CnCertificate {
    builtin_certificates().into_iter().find(|c| c.case == case).expect("every case has a certificate")
}

/// Checks the degree condition, then extracts the target coefficient.
pub fn verify_certificate(c: &CnCertificate) -> Result<CertificateCheck> {
    if !c.degree_matches() {
        return Err(Error::Precondition(format!(
            "certificate {}: product degree {} differs from target degree {}",
            c.name,
            product_degree(&c.factors),
            c.target.total_degree()
        )));
    }
    let computed = product_coefficient(&c.factors, &c.target)?;
    Ok(CertificateCheck { name: c.name.clone(), ok: computed == c.expected, computed, expected: c.expected.clone() })
}

/// Factor systems of one extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSystem {
    pub case: CnCase,
    /// Exactly the requirements of the extension.
    pub f: Vec<Factor>,
    /// `f` times padding; `deg g` equals the target degree.
    pub g: Vec<Factor>,
    pub target: Monomial,
}

fn padding(n: usize, plus: &[usize], cap: usize, have: usize, what: &str) -> Result<Option<Factor>> {
    if have > cap {
        return Err(Error::Precondition(format!("{what}: {have} factors exceed the allowed {cap}")));
    }
    Ok((have < cap).then(|| sum(n, plus, &[], 0, (cap - have) as u32)))
}

fn system(case: CnCase, f: Vec<Factor>, pads: Vec<Option<Factor>>) -> CaseSystem {
    let mut g = f.clone();
    g.extend(pads.into_iter().flatten());
    CaseSystem { case, f, g, target: case_target(case) }
}

/// Edge `uv`; variables `x0 = c(u)`, `x1 = c(uv)`, `x2 = c(v)`. The edge
/// sums exclude `uv`; neighbour sums are those of `N(u)∖{v}` and `N(v)∖{u}`.
pub fn case23_system(
    case: CnCase,
    u_edge_sum: i64,
    v_edge_sum: i64,
    u_nbr_sums: &[i64],
    v_nbr_sums: &[i64],
) -> Result<CaseSystem> {
    let (cap_u, cap_v) = match case {
        CnCase::Case23Small => (3, 3),
        CnCase::Case23Large => (4, 2),
        other => return Err(Error::Domain(format!("{other:?} is not an edge case"))),
    };
    let mut f = vec![diff(3, 0, 1), diff(3, 0, 2), diff(3, 1, 2)];
    f.push(sum(3, &[0], &[2], u_edge_sum - v_edge_sum, 1));
    f.extend(u_nbr_sums.iter().map(|s| sum(3, &[0, 1], &[], u_edge_sum - s, 1)));
    f.extend(v_nbr_sums.iter().map(|s| sum(3, &[2, 1], &[], v_edge_sum - s, 1)));
    let pads = vec![
        padding(3, &[0, 1], cap_u, u_nbr_sums.len(), "neighbours of u")?,
        padding(3, &[2, 1], cap_v, v_nbr_sums.len(), "neighbours of v")?,
    ];
    Ok(system(case, f, pads))
}

/// 5-vertex `v` with 4-neighbours `v1, v2, v3`; variables
/// `x0 = c(v)`, `x1..x3 = c(vv_i)`, `x4..x6 = c(v_i)`. `s_v` is the partial
/// sum at `v`, `s_vi[i]` the partial sum at `v_i`, `s_far` the sums of the
/// other two neighbours, `nbr_sums[i]` the sums of `N(v_i)∖{v}`.
pub fn case4_system(s_v: i64, s_vi: [i64; 3], s_far: [i64; 2], nbr_sums: [&[i64]; 3]) -> Result<CaseSystem> {
    let mut f: Vec<Factor> = (1..=6).map(|i| diff(7, 0, i)).collect();
    f.extend([diff(7, 1, 2), diff(7, 1, 3), diff(7, 2, 3)]);
    f.extend([diff(7, 1, 4), diff(7, 2, 5), diff(7, 3, 6)]);
    for i in 1..=3 {
        let others: Vec<usize> = (0..=3).filter(|&j| j != i).collect();
        f.push(sum(7, &others, &[i + 3], s_v - s_vi[i - 1], 1));
    }
    for s in s_far {
        f.push(sum(7, &[0, 1, 2, 3], &[], s_v - s, 1));
    }
    for i in 1..=3 {
        if nbr_sums[i - 1].len() != 3 {
            return Err(Error::Precondition(format!("v{i} must have degree 4")));
        }
        f.extend(nbr_sums[i - 1].iter().map(|s| sum(7, &[i, i + 3], &[], s_vi[i - 1] - s, 1)));
    }
    Ok(system(CnCase::Case4, f, vec![]))
}

/// 6-vertex `v` with 3⁻-neighbour `u` and 4⁻-neighbour `w`; variables
/// `x0 = c(v)`, `x1 = c(vu)`, `x2 = c(vw)`, `x3 = c(u)`, `x4 = c(w)`.
pub fn case5_system(
    s_v: i64,
    s_u: i64,
    s_w: i64,
    s_others: [i64; 4],
    u_nbr_sums: &[i64],
    w_nbr_sums: &[i64],
) -> Result<CaseSystem> {
    let mut f: Vec<Factor> = (1..=4).map(|i| diff(5, 0, i)).collect();
    f.extend([diff(5, 1, 2), diff(5, 1, 3), diff(5, 2, 4)]);
    f.push(sum(5, &[0, 2], &[3], s_v - s_u, 1));
    f.push(sum(5, &[0, 1], &[4], s_v - s_w, 1));
    f.extend(s_others.iter().map(|s| sum(5, &[0, 1, 2], &[], s_v - s, 1)));
    f.extend(u_nbr_sums.iter().map(|s| sum(5, &[1, 3], &[], s_u - s, 1)));
    f.extend(w_nbr_sums.iter().map(|s| sum(5, &[2, 4], &[], s_w - s, 1)));
    let pads = vec![
        padding(5, &[1, 3], 2, u_nbr_sums.len(), "neighbours of u")?,
        padding(5, &[2, 4], 3, w_nbr_sums.len(), "neighbours of w")?,
    ];
    Ok(system(CnCase::Case5, f, pads))
}

/// 7-vertex `v` (kept coloured) with neighbours `u` (2⁻), `w` (3⁻), `y`
/// (4⁻); variables `c(vu), c(vw), c(vy), c(y)` at indices 0..3.
pub fn case6_system(s_v: i64, s_others: [i64; 4], s_y: i64, y_nbr_sums: &[i64]) -> Result<CaseSystem> {
    let mut f = vec![diff(4, 0, 1), diff(4, 0, 2), diff(4, 1, 2), diff(4, 2, 3)];
    f.extend(s_others.iter().map(|s| sum(4, &[0, 1, 2], &[], s_v - s, 1)));
    f.push(sum(4, &[0, 1], &[3], s_v - s_y, 1));
    f.extend(y_nbr_sums.iter().map(|s| sum(4, &[2, 3], &[], s_y - s, 1)));
    let pads = vec![padding(4, &[2, 3], 3, y_nbr_sums.len(), "neighbours of y")?];
    Ok(system(CnCase::Case6, f, pads))
}

/// `d`-vertex `v`, `d ≥ 8`; variables `x0 = c(v)`, `x1 = c(vv1)`,
/// `x2 = c(vu1)`, `x3 = c(vu2)`, `x4 = c(vw)`, `x5 = c(w)`.
pub fn case7_system(s_v: i64, s_others: [i64; 4], s_w: i64, w_nbr_sums: &[i64]) -> Result<CaseSystem> {
    let mut f: Vec<Factor> = (1..=5).map(|i| diff(6, 0, i)).collect();
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)] {
        f.push(diff(6, a, b));
    }
    f.extend(s_others.iter().map(|s| sum(6, &[0, 1, 2, 3, 4], &[], s_v - s, 1)));
    f.push(sum(6, &[0, 1, 2, 3], &[5], s_v - s_w, 1));
    f.extend(w_nbr_sums.iter().map(|s| sum(6, &[4, 5], &[], s_w - s, 1)));
    let pads = vec![padding(6, &[4, 5], 3, w_nbr_sums.len(), "neighbours of w")?];
    Ok(system(CnCase::Case7, f, pads))
}

/// Target coefficient of `g`, computed on the constant-free parts of the
/// factors and memoised by them.
pub fn top_coefficient(factors: &[Factor], target: &Monomial) -> Result<BigInt> {
    type Cache = Mutex<HashMap<(Vec<Factor>, Monomial), BigInt>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let mut key: Vec<Factor> = factors
        .iter()
        .map(|f| if f.form.degree() == 0 { f.clone() } else { Factor::new(f.form.homogeneous(), f.multiplicity) })
        .collect();
    key.sort_by(|a, b| {
        (&a.form.coefficients, a.form.constant, a.multiplicity).cmp(&(
            &b.form.coefficients,
            b.form.constant,
            b.multiplicity,
        ))
    });
    let key = (key, target.clone());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("coefficient cache poisoned").get(&key) {
        return Ok(c.clone());
    }
    let c = product_coefficient(&key.0, target)?;
    cache.lock().expect("coefficient cache poisoned").insert(key, c.clone());
    Ok(c)
}

/// One instantiated comparison of a case system's `g` with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub case: CnCase,
    pub shape: String,
    pub computed: String,
    pub expected: String,
    pub ok: bool,
}

/// Builds every case system from random constants and every admissible
/// neighbourhood size, and compares the coefficient of `g` (constants
/// included) with the certificate value.
pub fn spot_check_reductions(seed: u64, rounds: usize) -> Result<Vec<SpotCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut c = move || rng.gen_range(-40i64..=40);
    for _ in 0..rounds {
        let mut systems: Vec<(CaseSystem, String)> = Vec::new();
        for (case, cu, cv) in [(CnCase::Case23Small, 3, 3), (CnCase::Case23Large, 4, 2)] {
            for q in 0..=cu {
                for p in 0..=cv {
                    let us: Vec<i64> = (0..q).map(|_| c()).collect();
                    let vs: Vec<i64> = (0..p).map(|_| c()).collect();
                    systems.push((case23_system(case, c(), c(), &us, &vs)?, format!("q={q} p={p}")));
                }
            }
        }
        let n: [Vec<i64>; 3] = std::array::from_fn(|_| (0..3).map(|_| c()).collect());
        systems.push((case4_system(c(), [c(), c(), c()], [c(), c()], [&n[0], &n[1], &n[2]])?, String::new()));
        for du in 1..=3 {
            for dw in 1..=4 {
                let us: Vec<i64> = (1..du).map(|_| c()).collect();
                let ws: Vec<i64> = (1..dw).map(|_| c()).collect();
                let s = case5_system(c(), c(), c(), [c(), c(), c(), c()], &us, &ws)?;
                systems.push((s, format!("d(u)={du} d(w)={dw}")));
            }
        }
        for dy in 1..=4 {
            let ys: Vec<i64> = (1..dy).map(|_| c()).collect();
            systems.push((case6_system(c(), [c(), c(), c(), c()], c(), &ys)?, format!("d(y)={dy}")));
            systems.push((case7_system(c(), [c(), c(), c(), c()], c(), &ys)?, format!("d(w)={dy}")));
        }
        for (s, shape) in systems {
            let expected = builtin_certificate(s.case).expected;
            let computed = product_coefficient(&s.g, &s.target)?;
            out.push(SpotCheck {
                case: s.case,
                shape,
                ok: computed == expected && product_degree(&s.g) == s.target.total_degree(),
                computed: computed.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(out)
}
