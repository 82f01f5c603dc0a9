//! Sparse multivariate polynomials over the integers, products of linear
//! forms, coefficient extraction and Combinatorial Nullstellensatz search.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// `Σ coefficients[i]·x_i + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub coefficients: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>, constant: i64) -> Self {
        LinearForm { coefficients, constant }
    }

    /// `x_a − x_b` over `vars` variables.
    pub fn difference(vars: usize, a: usize, b: usize) -> Self {
        let mut c = vec![0; vars];
        c[a] += 1;
        c[b] -= 1;
        LinearForm::new(c, 0)
    }

    /// `Σ_{i ∈ plus} x_i − Σ_{i ∈ minus} x_i + constant`.
    pub fn signed_sum(vars: usize, plus: &[usize], minus: &[usize], constant: i64) -> Self {
        let mut c = vec![0; vars];
        for &i in plus {
            c[i] += 1;
        }
        for &i in minus {
            c[i] -= 1;
        }
        LinearForm::new(c, constant)
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    /// 1 unless every variable coefficient is zero.
    pub fn degree(&self) -> u32 {
        u32::from(self.coefficients.iter().any(|&c| c != 0))
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.degree() == 0
    }

    pub fn evaluate(&self, point: &[i64]) -> i64 {
        self.constant + self.coefficients.iter().zip(point).map(|(c, x)| c * x).sum::<i64>()
    }

    /// The form without its constant (its top-degree part).
    pub fn homogeneous(&self) -> LinearForm {
        LinearForm::new(self.coefficients.clone(), 0)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}x{i}")?;
            } else {
                write!(f, "{sign}{mag}x{i}")?;
            }
            first = false;
        }
        if self.constant != 0 || first {
            if first {
                write!(f, "{}", self.constant)?;
            } else if self.constant < 0 {
                write!(f, "-{}", -self.constant)?;
            } else {
                write!(f, "+{}", self.constant)?;
            }
        }
        Ok(())
    }
}

/// A linear form raised to a power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub form: LinearForm,
    pub multiplicity: u32,
}

impl Factor {
    pub fn new(form: LinearForm, multiplicity: u32) -> Self {
        Factor { form, multiplicity }
    }

    pub fn once(form: LinearForm) -> Self {
        Factor { form, multiplicity: 1 }
    }
}

/// Total degree of a product of factors.
pub fn product_degree(factors: &[Factor]) -> u32 {
    factors.iter().map(|f| f.form.degree() * f.multiplicity).sum()
}

fn common_arity(factors: &[Factor]) -> Result<usize> {
    let Some(first) = factors.first() else {
        return Err(Error::Domain("empty factor list".into()));
    };
    let n = first.form.arity();
    for f in factors {
        if f.form.arity() != n {
            return Err(Error::Arity { expected: n, found: f.form.arity() });
        }
    }
    Ok(n)
}

/// Integer polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(Monomial::one(vars), c.into());
        p
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let vars = form.arity();
        let mut p = Polynomial::constant(vars, form.constant);
        for (i, &c) in form.coefficients.iter().enumerate() {
            let mut e = vec![0; vars];
            e[i] = 1;
            p.add_term(Monomial(e), BigInt::from(c));
        }
        p
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&m).unwrap_or_else(BigInt::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.vars != other.vars {
            return Err(Error::Arity { expected: self.vars, found: other.vars });
        }
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        Ok(Polynomial::from_map(self.vars, acc))
    }

    fn from_map(vars: usize, map: HashMap<Vec<u32>, BigInt>) -> Polynomial {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect();
        Polynomial { vars, terms }
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Result<BigInt> {
        if m.arity() != self.vars {
            return Err(Error::Arity { expected: self.vars, found: m.arity() });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn evaluate(&self, point: &[i64]) -> Result<BigInt> {
        if point.len() != self.vars {
            return Err(Error::Arity { expected: self.vars, found: point.len() });
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (&e, &x) in m.0.iter().zip(point) {
                term *= num_traits::pow(BigInt::from(x), e as usize);
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i == 0 {
                ""
            } else {
                "+"
            };
            write!(f, "{sign}{}*{m}", c.abs())?;
        }
        Ok(())
    }
}

/// Fully expanded product of the factors.
pub fn expand_product(factors: &[Factor]) -> Result<Polynomial> {
    let vars = common_arity(factors)?;
    let mut p = Polynomial::constant(vars, 1);
    for f in factors {
        let lin = Polynomial::from_linear(&f.form);
        for _ in 0..f.multiplicity {
            p = p.mul(&lin)?;
        }
    }
    Ok(p)
}

pub fn coefficient(p: &Polynomial, m: &Monomial) -> Result<BigInt> {
    p.coefficient(m)
}

/// Coefficient of `target` in the product, without full expansion: terms
/// whose exponent in some variable already exceeds the target's, or whose
/// degree can no longer reach the target's, are dropped after each step.
pub fn product_coefficient(factors: &[Factor], target: &Monomial) -> Result<BigInt> {
    let vars = common_arity(factors)?;
    if target.arity() != vars {
        return Err(Error::Arity { expected: vars, found: target.arity() });
    }
    let goal = target.total_degree();
    let bound: Vec<u32> = target.0.clone();
    let mut steps: Vec<&LinearForm> = Vec::new();
    for f in factors {
        for _ in 0..f.multiplicity {
            steps.push(&f.form);
        }
    }
    // remaining[j] = degree still obtainable from steps[j..]
    let mut remaining = vec![0u32; steps.len() + 1];
    for j in (0..steps.len()).rev() {
        remaining[j] = remaining[j + 1] + steps[j].degree();
    }

    let mut current: HashMap<Vec<u32>, BigInt> = HashMap::from([(vec![0; vars], BigInt::one())]);
    for (j, form) in steps.iter().enumerate() {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(current.len() * 2);
        let reach = remaining[j + 1];
        for (e, c) in &current {
            let deg: u32 = e.iter().sum();
            if form.constant != 0 && deg + reach >= goal {
                *next.entry(e.clone()).or_insert_with(BigInt::zero) += c * form.constant;
            }
            if deg + 1 + reach < goal {
                continue;
            }
            for (i, &a) in form.coefficients.iter().enumerate() {
                if a == 0 || e[i] + 1 > bound[i] {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] += 1;
                *next.entry(e2).or_insert_with(BigInt::zero) += c * a;
            }
        }
        next.retain(|_, c| !c.is_zero());
        current = next;
    }
    Ok(current.remove(&bound).unwrap_or_else(BigInt::zero))
}

/// Value of the product at `point`.
pub fn evaluate_product(factors: &[Factor], point: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for f in factors {
        let v = BigInt::from(f.form.evaluate(point));
        acc *= num_traits::pow(v, f.multiplicity as usize);
    }
    acc
}

/// Finds `s_i ∈ lists[i]` with non-zero product value, under the hypotheses
/// of the Combinatorial Nullstellensatz: the product's total degree equals
/// the target's, the target coefficient is non-zero, and every
/// `|lists[i]| > target[i]`. Lists are tried in ascending order and the
/// first non-vanishing point is returned.
pub fn cn_nonzero_substitution(factors: &[Factor], target: &Monomial, lists: &[Vec<i64>]) -> Result<Vec<i64>> {
    let vars = common_arity(factors)?;
    if target.arity() != vars || lists.len() != vars {
        return Err(Error::Arity { expected: vars, found: target.arity().max(lists.len()) });
    }
    for (i, (l, &k)) in lists.iter().zip(&target.0).enumerate() {
        if l.len() <= k as usize {
            return Err(Error::Precondition(format!(
                "list {i} has {} elements but the target exponent is {k}",
                l.len()
            )));
        }
    }
    let deg = product_degree(factors);
    if deg != target.total_degree() {
        return Err(Error::Precondition(format!(
            "product degree {deg} differs from target degree {}",
            target.total_degree()
        )));
    }
    if product_coefficient(factors, target)?.is_zero() {
        return Err(Error::Precondition(format!("coefficient of {target} vanishes")));
    }
    nonzero_point(factors, lists).ok_or_else(|| {
        Error::Inconsistency(format!("no non-vanishing point although the coefficient of {target} is non-zero"))
    })
}

/// Plain search for a point of the lists where no factor vanishes; no
/// hypotheses are checked.
pub fn nonzero_point(factors: &[Factor], lists: &[Vec<i64>]) -> Option<Vec<i64>> {
    let vars = lists.len();
    let mut sorted: Vec<Vec<i64>> = lists.to_vec();
    for l in &mut sorted {
        l.sort_unstable();
        l.dedup();
    }
    // factors checked once their last variable is assigned
    let mut due: Vec<Vec<&LinearForm>> = vec![Vec::new(); vars + 1];
    for f in factors {
        let last = f.form.coefficients.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        due[last].push(&f.form);
    }
    if due[0].iter().any(|f| f.constant == 0) {
        return None;
    }
    let mut point = vec![0i64; vars];
    fn go(i: usize, point: &mut Vec<i64>, lists: &[Vec<i64>], due: &[Vec<&LinearForm>]) -> bool {
        if i == lists.len() {
            return true;
        }
        for &x in &lists[i] {
            point[i] = x;
            if due[i + 1].iter().all(|f| f.evaluate(point) != 0) && go(i + 1, point, lists, due) {
                return true;
            }
        }
        point[i] = 0;
        false
    }
    go(0, &mut point, &sorted, &due).then_some(point)
}

/// Parses the factor mini-grammar: one factor per line,
/// `coeff_0 … coeff_{n-1} constant ^ multiplicity` (the `^ m` suffix is
/// optional). Blank lines and `#` comments are ignored.
pub fn parse_factor_list(text: &str) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (lhs, mult) = match body.split_once('^') {
            Some((l, m)) => {
                let m: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse { offset: start, message: format!("bad multiplicity {:?}", m.trim()) })?;
                (l, m)
            }
            None => (body, 1),
        };
        let nums: Vec<i64> = lhs
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse { offset: start, message: format!("bad integer in {lhs:?}") })?;
        if nums.len() < 2 {
            return Err(Error::Parse {
                offset: start,
                message: "a factor needs at least one coefficient and a constant".into(),
            });
        }
        let (coeffs, constant) = nums.split_at(nums.len() - 1);
        out.push(Factor::new(LinearForm::new(coeffs.to_vec(), constant[0]), mult));
    }
    common_arity(&out)?;
    Ok(out)
}

pub fn format_factor_list(factors: &[Factor]) -> String {
    let mut s = String::new();
    for f in factors {
        let coeffs: Vec<String> = f.form.coefficients.iter().map(i64::to_string).collect();
        s.push_str(&format!("{} {} ^ {}\n", coeffs.join(" "), f.form.constant, f.multiplicity));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(c: &[i64], k: i64) -> LinearForm {
        LinearForm::new(c.to_vec(), k)
    }

    #[test]
    fn difference_of_squares() {
        let p = expand_product(&[Factor::once(lf(&[1, -1], 0)), Factor::once(lf(&[1, 1], 0))]).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0])).unwrap(), BigInt::from(1));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 2])).unwrap(), BigInt::from(-1));
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 1])).unwrap(), BigInt::zero());
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn square() {
        let p = expand_product(&[Factor::new(lf(&[1, -1], 0), 2)]).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 1])).unwrap(), BigInt::from(-2));
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn truncated_matches_full() {
        let factors = vec![
            Factor::new(lf(&[1, -1, 0], 3), 2),
            Factor::once(lf(&[0, 1, 2], -1)),
            Factor::new(lf(&[1, 1, 1], 0), 2),
        ];
        let full = expand_product(&factors).unwrap();
        for (m, c) in full.terms() {
            assert_eq!(&product_coefficient(&factors, m).unwrap(), c, "monomial {m}");
        }
        assert!(product_coefficient(&factors, &Monomial::new(vec![5, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn arity_errors() {
        let bad = [Factor::once(lf(&[1, 0], 0)), Factor::once(lf(&[1], 0))];
        assert!(matches!(expand_product(&bad), Err(Error::Arity { .. })));
        let p = expand_product(&[Factor::once(lf(&[1, 0], 0))]).unwrap();
        assert!(matches!(p.coefficient(&Monomial::new(vec![1])), Err(Error::Arity { .. })));
    }

    #[test]
    fn cn_simple() {
        let f = [Factor::once(lf(&[1, -1], 0))];
        let got = cn_nonzero_substitution(&f, &Monomial::new(vec![1, 0]), &[vec![0, 1], vec![0]]).unwrap();
        assert_eq!(got, vec![1, 0]);
    }

    #[test]
    fn cn_preconditions() {
        let f = [Factor::once(lf(&[1, -1], 0))];
        // list too short for exponent 1
        assert!(matches!(
            cn_nonzero_substitution(&f, &Monomial::new(vec![1, 0]), &[vec![0], vec![0]]),
            Err(Error::Precondition(_))
        ));
        // degree mismatch
        assert!(matches!(
            cn_nonzero_substitution(&f, &Monomial::new(vec![0, 0]), &[vec![0], vec![0]]),
            Err(Error::Precondition(_))
        ));
        // vanishing coefficient: x0^2 - x1^2 has no x0 x1 term
        let g = [Factor::once(lf(&[1, -1], 0)), Factor::once(lf(&[1, 1], 0))];
        assert!(matches!(
            cn_nonzero_substitution(&g, &Monomial::new(vec![1, 1]), &[vec![1, 2], vec![1, 2]]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mini_grammar() {
        let text = "# (x0 - x1)^2 (x0 + x1 + 3)\n1 -1 0 ^ 2\n1 1 3\n";
        let fs = parse_factor_list(text).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], Factor::new(lf(&[1, -1], 0), 2));
        assert_eq!(fs[1], Factor::once(lf(&[1, 1], 3)));
        assert_eq!(parse_factor_list(&format_factor_list(&fs)).unwrap(), fs);
        assert!(parse_factor_list("1 0\n1 0 0\n").is_err());
        assert!(matches!(parse_factor_list("1 x 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_forms() {
        assert_eq!(lf(&[1, -1, 0], 0).to_string(), "x0-x1");
        assert_eq!(lf(&[2, 0, 1], -5).to_string(), "2x0+x2-5");
        assert_eq!(Monomial::new(vec![2, 0, 1]).to_string(), "x0^2x2");
    }
}
