//! The truncated polynomial algebra A = k[x]/(x^p), its tensor powers
//! k[x_1..x_n]/(x_i^p), the Frobenius structure maps, and the sl(2) triple
//! of differential operators acting on it.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp::{self, FieldSpec, FpMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncAlgebraSpec {
    p: u64,
    n: usize,
}

impl TruncAlgebraSpec {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        FieldSpec::new(p)?;
        if n == 0 {
            return Err(Error::SpecMismatch("need at least one variable".into()));
        }
        Ok(TruncAlgebraSpec { p, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    /// All exponent vectors in lexicographic order; the position in this
    /// list is the basis index used by the operator matrices.
    pub fn basis(&self) -> Vec<Exponents> {
        let p = self.p as u16;
        let mut out = Vec::with_capacity(self.dim());
        let mut cur = vec![0u16; self.n];
        loop {
            out.push(cur.clone());
            let mut i = self.n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < p {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn index_of(&self, e: &[u16]) -> usize {
        e.iter().fold(0usize, |acc, &a| acc * self.p as usize + a as usize)
    }

    /// q-degree of each basis monomial (the degree of x is two).
    pub fn qdegs(&self) -> Vec<i64> {
        self.basis().iter().map(|e| qdeg(e)).collect()
    }
}

pub type Exponents = Vec<u16>;

pub fn qdeg(e: &[u16]) -> i64 {
    2 * e.iter().map(|&a| a as i64).sum::<i64>()
}

/// Element of k[x_1..x_n]/(x_i^p): exponent vector -> nonzero residue.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPolyElement {
    spec: TruncAlgebraSpec,
    terms: BTreeMap<Exponents, u64>,
}

impl fmt::Debug for TruncPolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPolyElement[p={}, n={}]({})", self.spec.p, self.spec.n, self)
    }
}

impl TruncPolyElement {
    pub fn zero(spec: TruncAlgebraSpec) -> Self {
        TruncPolyElement { spec, terms: BTreeMap::new() }
    }

    pub fn one(spec: TruncAlgebraSpec) -> Self {
        Self::monomial(spec, vec![0; spec.n], 1)
    }

    /// The variable x_{i+1} (zero-based index `i`).
    pub fn var(spec: TruncAlgebraSpec, i: usize) -> Self {
        let mut e = vec![0; spec.n];
        e[i] = 1;
        Self::monomial(spec, e, 1)
    }

    /// `c * x^e`; zero if any exponent reaches p.
    pub fn monomial(spec: TruncAlgebraSpec, e: Exponents, c: i64) -> Self {
        let mut out = Self::zero(spec);
        out.add_term(e, fp::reduce(spec.p, c));
        out
    }

    pub fn from_vector(spec: TruncAlgebraSpec, v: &[u64]) -> Self {
        let mut out = Self::zero(spec);
        for (e, &c) in spec.basis().into_iter().zip(v) {
            out.add_term(e, c);
        }
        out
    }

    pub fn to_vector(&self) -> Vec<u64> {
        let mut v = vec![0; self.spec.dim()];
        for (e, &c) in &self.terms {
            v[self.spec.index_of(e)] = c;
        }
        v
    }

    fn add_term(&mut self, e: Exponents, c: u64) {
        assert_eq!(e.len(), self.spec.n);
        let p = self.spec.p;
        if c % p == 0 || e.iter().any(|&a| a as u64 >= p) {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn spec(&self) -> TruncAlgebraSpec {
        self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u16]) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(format!("{:?} vs {:?}", self.spec, other.spec)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.spec.p - 1))
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.spec);
        for (e, &a) in &self.terms {
            out.add_term(e.clone(), a * (c % self.spec.p));
        }
        out
    }

    /// Product in the truncated ring: monomials with an exponent >= p drop out.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let p = self.spec.p;
        let mut out = Self::zero(self.spec);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2 % p);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.spec), |acc, _| acc.multiply(self).expect("same spec"))
    }

    /// Every term has q-degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| qdeg(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Comultiplication of A, landing in k[x_1, x_2]/(x_1^p, x_2^p):
    /// `Δ(x^i) = x_1^i * sum_j x_1^j x_2^{p-1-j}`.
    pub fn comultiply(&self) -> Result<Self> {
        if self.spec.n != 1 {
            return Err(Error::NeedsOneVariable(self.spec.n));
        }
        let p = self.spec.p;
        let target = TruncAlgebraSpec { p, n: 2 };
        let mut out = Self::zero(target);
        for (e, &c) in &self.terms {
            let i = e[0];
            for j in 0..p as u16 {
                out.add_term(vec![i + j, p as u16 - 1 - j], c);
            }
        }
        Ok(out)
    }

    /// Counit: the coefficient of x^{p-1}.
    pub fn counit(&self) -> Result<u64> {
        if self.spec.n != 1 {
            return Err(Error::NeedsOneVariable(self.spec.n));
        }
        Ok(self.coeff(&[self.spec.p as u16 - 1]))
    }

    /// Applies one of the Witt-type operators, extended by the Leibniz rule.
    ///
    /// `twist[i] = t` modifies the action on variable `x_{i+1}`: `d_plus`
    /// gains `t * x_{i+1}` (multiplication) and `d_zero` gains `-t`.
    pub fn apply_witt(&self, op: WittOperator, twist: Option<&[u64]>) -> Self {
        let p = self.spec.p;
        let n = self.spec.n;
        let mut out = Self::zero(self.spec);
        for (e, &c) in &self.terms {
            for i in 0..n {
                let a = e[i] as u64;
                match op {
                    WittOperator::DMinus => {
                        if a > 0 {
                            let mut f = e.clone();
                            f[i] -= 1;
                            out.add_term(f, fp::neg(p, a % p * c % p));
                        }
                    }
                    WittOperator::DZero => {
                        out.add_term(e.clone(), fp::neg(p, 2 * a % p * c % p));
                    }
                    WittOperator::DPlus => {
                        let mut f = e.clone();
                        f[i] += 1;
                        out.add_term(f, a % p * c % p);
                    }
                }
            }
            if let Some(tw) = twist {
                for (i, &t) in tw.iter().enumerate().take(n) {
                    match op {
                        WittOperator::DMinus => {}
                        WittOperator::DZero => out.add_term(e.clone(), fp::neg(p, t % p * c % p)),
                        WittOperator::DPlus => {
                            let mut f = e.clone();
                            f[i] += 1;
                            out.add_term(f, t % p * c % p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn parse(spec: TruncAlgebraSpec, s: &str) -> Result<Self> {
        parse_element(spec, s)
    }
}

/// The three operators `d_minus = -sum d/dx_i`, `d_zero = -2 sum x_i d/dx_i`,
/// `d_plus = sum x_i^2 d/dx_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WittOperator {
    DMinus,
    DZero,
    DPlus,
}

impl WittOperator {
    pub const ALL: [WittOperator; 3] = [WittOperator::DMinus, WittOperator::DZero, WittOperator::DPlus];

    pub fn degree(self) -> i64 {
        match self {
            WittOperator::DMinus => -2,
            WittOperator::DZero => 0,
            WittOperator::DPlus => 2,
        }
    }
}

/// Matrix of a linear endomorphism of A^{⊗n} in the monomial basis
/// (`spec.basis()` order), columns are images.
pub fn operator_matrix(spec: TruncAlgebraSpec, f: impl Fn(&TruncPolyElement) -> TruncPolyElement) -> FpMatrix {
    let basis = spec.basis();
    let dim = basis.len();
    let mut m = FpMatrix::zeros(spec.p, dim, dim);
    for (j, e) in basis.into_iter().enumerate() {
        let img = f(&TruncPolyElement::monomial(spec, e, 1));
        for (f_e, &c) in img.terms() {
            m.set(spec.index_of(f_e), j, c);
        }
    }
    m
}

/// Multiplication by the variable x_{i+1}.
pub fn multiplication_matrix(spec: TruncAlgebraSpec, i: usize) -> FpMatrix {
    let x = TruncPolyElement::var(spec, i);
    operator_matrix(spec, |a| a.multiply(&x).expect("same spec"))
}

pub fn witt_matrix(spec: TruncAlgebraSpec, op: WittOperator, twist: Option<&[u64]>) -> FpMatrix {
    operator_matrix(spec, |a| a.apply_witt(op, twist))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub p: u64,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

/// Checks that Δ and ε intertwine the p-differential on every basis
/// element x^i: `Δ(∂x^i) = ∂Δ(x^i)` with the diagonal ∂ on A⊗A, and
/// `ε(∂x^i) = 0`.
pub fn check_frobenius_compat(p: u64) -> Result<FrobeniusReport> {
    let spec = TruncAlgebraSpec::new(p, 1)?;
    let mut checked = 0;
    for i in 0..p as u16 {
        let xi = TruncPolyElement::monomial(spec, vec![i], 1);
        let lhs = xi.apply_witt(WittOperator::DMinus, None).comultiply()?;
        let rhs = xi.comultiply()?.apply_witt(WittOperator::DMinus, None);
        checked += 1;
        if lhs != rhs {
            return Ok(FrobeniusReport {
                p,
                passed: false,
                checked,
                counterexample: Some(format!("Δ∂(x^{i}) = {lhs} but ∂Δ(x^{i}) = {rhs}")),
            });
        }
        let eps = xi.apply_witt(WittOperator::DMinus, None).counit()?;
        checked += 1;
        if eps != 0 {
            return Ok(FrobeniusReport {
                p,
                passed: false,
                checked,
                counterexample: Some(format!("ε(∂x^{i}) = {eps}")),
            });
        }
    }
    Ok(FrobeniusReport { p, passed: true, checked, counterexample: None })
}

impl fmt::Display for TruncPolyElement {
    /// Terms in decreasing lexicographic order of exponents, e.g.
    /// `2*x1^2*x2 + x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                .collect();
            match (c, vars.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                (c, false) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

fn parse_element(spec: TruncAlgebraSpec, s: &str) -> Result<TruncPolyElement> {
    let err = |m: &str| Error::Parse(format!("{m} in {s:?}"));
    let mut out = TruncPolyElement::zero(spec);
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut coeff: i64 = 1;
        let mut e = vec![0u16; spec.n];
        for factor in term.split('*') {
            let factor = factor.trim();
            if let Some(rest) = factor.strip_prefix('x') {
                let (var, exp) = match rest.split_once('^') {
                    Some((v, x)) => (v, x.parse::<u16>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let var: usize = var.parse().map_err(|_| err("bad variable index"))?;
                if var == 0 || var > spec.n {
                    return Err(err("variable out of range"));
                }
                e[var - 1] += exp;
            } else {
                let c: i64 = factor.parse().map_err(|_| err("bad coefficient"))?;
                coeff *= c;
            }
        }
        out.add_term(e, fp::reduce(spec.p, coeff));
    }
    Ok(out)
}

impl std::str::FromStr for WittOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d_minus" | "e" => Ok(WittOperator::DMinus),
            "d_zero" | "h" => Ok(WittOperator::DZero),
            "d_plus" | "f" => Ok(WittOperator::DPlus),
            other => Err(Error::Parse(format!("unknown operator {other}"))),
        }
    }
}
