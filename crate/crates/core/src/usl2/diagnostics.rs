use std::collections::BTreeMap;
use std::fmt;

use super::catalog::make_steinberg;
use super::hom::hom_basis;
use super::label::{ModuleKind, ModuleLabel};
use super::GradedUModule;
use crate::fp::{self, FpMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationStyle {
    Delta,
    Nabla,
}

/// Subquotients of a Δ- or ∇-filtration, bottom first, or `None` when the
/// greedy construction gets stuck.
///
/// Δ: repeatedly take the lowest-degree homogeneous vector v with E v = 0
/// and F^{p-1} v != 0; it generates a copy of a shifted Δ(λ), which is
/// split off by passing to the quotient. ∇: Δ-filter the Cartan twist and
/// use Δ(λ)^ω ≅ ∇(2p-2-λ).
pub fn filtration(m: &GradedUModule, style: FiltrationStyle) -> Option<Vec<ModuleLabel>> {
    match style {
        FiltrationStyle::Delta => delta_filtration(m),
        FiltrationStyle::Nabla => {
            let p = m.p() as i64;
            let steps = delta_filtration(&m.cartan_twist())?;
            Some(
                steps
                    .into_iter()
                    .map(|l| ModuleLabel::new(ModuleKind::Nabla, 2 * p - 2 - l.lambda, -l.qshift, -l.tshift).canonical(m.p()))
                    .collect(),
            )
        }
    }
}

fn delta_filtration(m: &GradedUModule) -> Option<Vec<ModuleLabel>> {
    let p = m.p();
    let mut cur = m.clone();
    let mut steps = Vec::new();
    while cur.dim() > 0 {
        if cur.dim() % p as usize != 0 {
            return None;
        }
        let fp1 = cur.f().pow(p - 1);
        let mut blocks: Vec<(super::Key, Vec<usize>)> = cur.key_blocks().into_iter().collect();
        blocks.sort_by_key(|(k, _)| (k.0, k.1, k.2));
        let mut chosen = None;
        for (key, idx) in &blocks {
            let rows: Vec<usize> = (0..cur.dim()).collect();
            let ker = cur.e().submatrix(&rows, idx).kernel_basis();
            if ker.cols() == 0 {
                continue;
            }
            let vecs = FpMatrix::zeros(p, cur.dim(), ker.cols());
            let mut vecs = vecs;
            for j in 0..ker.cols() {
                for (r, &i) in idx.iter().enumerate() {
                    vecs.set(i, j, ker.get(r, j));
                }
            }
            let img = fp1.mul(&vecs);
            if let Some(j) = (0..img.cols()).find(|&j| img.column(j).iter().any(|&v| v != 0)) {
                chosen = Some((*key, vecs.select_columns(&[j])));
                break;
            }
        }
        let (key, v) = chosen?;
        let mut chain = v.clone();
        let mut cur_v = v;
        for _ in 1..p {
            cur_v = cur.f().mul(&cur_v);
            chain = chain.hstack(&cur_v);
        }
        let lambda = key.2 as i64;
        steps.push(ModuleLabel::new(ModuleKind::Delta, lambda, key.0 + lambda, key.1).canonical(p));
        cur = cur.quotient(&chain).ok()?.0;
    }
    Some(steps)
}

/// Projective-injective iff a ∇-filtration exists and F acts freely
/// (rank F^{p-1} = dim / p).
pub fn is_projective_injective(m: &GradedUModule) -> bool {
    let p = m.p() as usize;
    m.dim() % p == 0 && m.f().pow(m.p() - 1).rank() * p == m.dim() && filtration(m, FiltrationStyle::Nabla).is_some()
}

/// Acyclic as a p-DG module for ∂_-: E acts freely, rank E^{p-1} = dim/p.
pub fn acyclicity_check(m: &GradedUModule) -> bool {
    let p = m.p() as usize;
    m.dim() % p == 0 && m.e().pow(m.p() - 1).rank() * p == m.dim()
}

/// Number of summands q^k t^j St for each shift k, as the rank of the
/// composition pairing Hom(St_k, m) x Hom(m, St_k) → End(St_k) = k.
pub fn steinberg_multiplicity(m: &GradedUModule, tdeg: i64) -> BTreeMap<i64, usize> {
    let p = m.p();
    let pi = p as i64;
    let st = make_steinberg(p);
    let inv2 = fp::inv(p, 2).expect("p odd");
    let mut shifts = std::collections::BTreeSet::new();
    for i in 0..m.dim() {
        if m.tdeg()[i] != tdeg {
            continue;
        }
        // St vector b has weight p-1-2b and degree 2b-(p-1)
        let b = ((pi - 1 - m.weight(i) as i64).rem_euclid(pi) as u64 * inv2 % p) as i64;
        shifts.insert(m.qdeg()[i] - (2 * b - (pi - 1)));
    }
    let mut out = BTreeMap::new();
    for k in shifts {
        let s = st.shift(k, tdeg);
        let into = hom_basis(&s, m, (0, 0));
        let out_of = hom_basis(m, &s, (0, 0));
        if into.is_empty() || out_of.is_empty() {
            continue;
        }
        let pairing = FpMatrix::from_fn(p, into.len(), out_of.len(), |a, b| out_of[b].mul(&into[a]).get(0, 0) as i64);
        let r = pairing.rank();
        if r > 0 {
            out.insert(k, r);
        }
    }
    out
}

/// Poincaré polynomial Σ dim(M_{j,i}) t^j q^i.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDimension {
    /// (t-degree, q-degree) -> dimension
    pub coeffs: BTreeMap<(i64, i64), usize>,
}

impl GradedDimension {
    pub fn total(&self) -> usize {
        self.coeffs.values().sum()
    }

    /// Image in Z[t^{±1}, q]/(q^{2p} - 1).
    pub fn reduce(&self, p: u64) -> GradedDimension {
        let mut coeffs = BTreeMap::new();
        for (&(t, q), &c) in &self.coeffs {
            *coeffs.entry((t, q.rem_euclid(2 * p as i64))).or_default() += c;
        }
        GradedDimension { coeffs }
    }

    pub fn tdegrees(&self) -> Vec<i64> {
        let mut ts: Vec<i64> = self.coeffs.keys().map(|k| k.0).collect();
        ts.dedup();
        ts
    }
}

impl fmt::Display for GradedDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(t, q), &c)| {
                let mut mono = Vec::new();
                if t != 0 {
                    mono.push(format!("t^{t}"));
                }
                if q != 0 {
                    mono.push(format!("q^{q}"));
                }
                match (c, mono.is_empty()) {
                    (c, true) => c.to_string(),
                    (1, false) => mono.join(" "),
                    (c, false) => format!("{c} {}", mono.join(" ")),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn gdim(m: &GradedUModule) -> GradedDimension {
    let mut coeffs = BTreeMap::new();
    for i in 0..m.dim() {
        *coeffs.entry((m.tdeg()[i], m.qdeg()[i])).or_default() += 1;
    }
    GradedDimension { coeffs }
}

pub fn gdim_p(m: &GradedUModule) -> GradedDimension {
    gdim(m).reduce(m.p())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodalityReport {
    pub passed: bool,
    /// Per t-degree: coefficients at even residues 0, 2, ..., 2p-2 and at
    /// odd residues 1, 3, ..., 2p-1.
    pub rows: Vec<(i64, Vec<usize>, Vec<usize>)>,
}

/// For every t-degree, all even-residue coefficients of gdim_p agree and
/// all odd-residue coefficients agree.
pub fn unimodality_check(m: &GradedUModule) -> UnimodalityReport {
    let p = m.p() as i64;
    let red = gdim_p(m);
    let mut rows = Vec::new();
    let mut passed = true;
    for t in red.tdegrees() {
        let get = |r: i64| red.coeffs.get(&(t, r)).copied().unwrap_or(0);
        let even: Vec<usize> = (0..p).map(|i| get(2 * i)).collect();
        let odd: Vec<usize> = (0..p).map(|i| get(2 * i + 1)).collect();
        passed &= even.windows(2).all(|w| w[0] == w[1]) && odd.windows(2).all(|w| w[0] == w[1]);
        rows.push((t, even, odd));
    }
    UnimodalityReport { passed, rows }
}
