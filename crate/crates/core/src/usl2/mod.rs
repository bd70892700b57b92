//! Graded modules over the restricted enveloping algebra u(sl(2)) in
//! characteristic p: construction, functors, decomposition and the
//! invariants used to test link homology.

mod catalog;
mod decompose;
mod diagnostics;
mod hom;
mod label;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{self, FieldSpec, FpMatrix, QuotientMap};

pub use catalog::{make_dual_verma, make_projective, make_simple, make_steinberg, make_verma};
pub use decompose::{decompose, decompose_unlabeled, decompose_with_seed, iso_test, label_indecomposable, Summand};
pub use diagnostics::{
    acyclicity_check, filtration, gdim, gdim_p, is_projective_injective, steinberg_multiplicity, unimodality_check,
    FiltrationStyle, GradedDimension, UnimodalityReport,
};
pub use hom::hom_basis;
pub use label::{ModuleKind, ModuleLabel};

/// Grading key of a basis vector: (q-degree, t-degree, weight of H).
pub type Key = (i64, i64, u64);

/// A finite-dimensional graded u(sl(2))-module in a weight basis.
/// `e`, `f`, `h` are the actions of ∂_-, ∂_+, ∂_0; `h` is diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedUModule {
    p: u64,
    qdeg: Vec<i64>,
    tdeg: Vec<i64>,
    e: FpMatrix,
    f: FpMatrix,
    h: FpMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl GradedUModule {
    /// Builds and validates a module.
    pub fn new(p: u64, qdeg: Vec<i64>, tdeg: Vec<i64>, e: FpMatrix, f: FpMatrix, h: FpMatrix) -> Result<Self> {
        let m = Self::new_unchecked(p, qdeg, tdeg, e, f, h);
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(p: u64, qdeg: Vec<i64>, tdeg: Vec<i64>, e: FpMatrix, f: FpMatrix, h: FpMatrix) -> Self {
        GradedUModule { p, qdeg, tdeg, e, f, h }
    }

    /// Weights are given; H is the diagonal matrix of them.
    pub(crate) fn from_weights(p: u64, qdeg: Vec<i64>, tdeg: Vec<i64>, e: FpMatrix, f: FpMatrix, weights: &[i64]) -> Self {
        let n = weights.len();
        let mut h = FpMatrix::zeros(p, n, n);
        for (i, &w) in weights.iter().enumerate() {
            h.set(i, i, fp::reduce(p, w));
        }
        GradedUModule { p, qdeg, tdeg, e, f, h }
    }

    pub fn zero(p: u64) -> Self {
        let z = FpMatrix::zeros(p, 0, 0);
        GradedUModule { p, qdeg: vec![], tdeg: vec![], e: z.clone(), f: z.clone(), h: z }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.qdeg.len()
    }

    pub fn qdeg(&self) -> &[i64] {
        &self.qdeg
    }

    pub fn tdeg(&self) -> &[i64] {
        &self.tdeg
    }

    pub fn e(&self) -> &FpMatrix {
        &self.e
    }

    pub fn f(&self) -> &FpMatrix {
        &self.f
    }

    pub fn h(&self) -> &FpMatrix {
        &self.h
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.h.get(i, i)
    }

    pub fn key(&self, i: usize) -> Key {
        (self.qdeg[i], self.tdeg[i], self.weight(i))
    }

    /// Basis indices grouped by key, in key order.
    pub fn key_blocks(&self) -> BTreeMap<Key, Vec<usize>> {
        let mut out: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            out.entry(self.key(i)).or_default().push(i);
        }
        out
    }

    /// Multiset of keys, the finest graded character.
    pub fn character(&self) -> BTreeMap<Key, usize> {
        self.key_blocks().into_iter().map(|(k, v)| (k, v.len())).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let p = self.p;
        let n = self.dim();
        if p < 3 || FieldSpec::new(p).is_err() {
            failures.push(format!("p = {p} must be a prime >= 3"));
            return ValidationReport { failures };
        }
        if self.tdeg.len() != n {
            failures.push("tdeg has wrong length".into());
        }
        for (name, m) in [("E", &self.e), ("F", &self.f), ("H", &self.h)] {
            if m.rows() != n || m.cols() != n || m.p() != p {
                failures.push(format!("{name} has wrong shape"));
            }
        }
        if !failures.is_empty() {
            return ValidationReport { failures };
        }
        if let Some((r, c, _)) = self.h.nonzero_entries().find(|&(r, c, _)| r != c) {
            failures.push(format!("H is not diagonal: entry ({r},{c})"));
        }
        if self.h.commutator(&self.e) != self.e.scale(2) {
            failures.push("[H,E] != 2E".into());
        }
        if self.h.commutator(&self.f) != self.f.scale(p - 2) {
            failures.push("[H,F] != -2F".into());
        }
        if self.e.commutator(&self.f) != self.h {
            failures.push("[E,F] != H".into());
        }
        if !self.e.pow(p).is_zero() {
            failures.push("E^p != 0".into());
        }
        if !self.f.pow(p).is_zero() {
            failures.push("F^p != 0".into());
        }
        if self.h.pow(p) != self.h {
            failures.push("H^p != H".into());
        }
        for (name, m, shift) in [("E", &self.e, -2), ("F", &self.f, 2)] {
            if let Some((r, c, _)) = m
                .nonzero_entries()
                .find(|&(r, c, _)| self.qdeg[r] != self.qdeg[c] + shift || self.tdeg[r] != self.tdeg[c])
            {
                failures.push(format!(
                    "{name} entry ({r},{c}) maps bidegree ({},{}) to ({},{})",
                    self.qdeg[c], self.tdeg[c], self.qdeg[r], self.tdeg[r]
                ));
            }
        }
        ValidationReport { failures }
    }

    pub fn check(&self) -> Result<()> {
        let r = self.validate();
        if r.passed() {
            Ok(())
        } else {
            Err(Error::InvalidModule(r.failures.join("; ")))
        }
    }

    /// Whether H acts on each basis vector by minus its q-degree (mod p).
    /// True for the catalog modules and shifts by multiples of p; arbitrary
    /// shifts break it.
    pub fn weight_degree_aligned(&self) -> bool {
        (0..self.dim()).all(|i| self.weight(i) == fp::reduce(self.p, -self.qdeg[i]))
    }

    pub fn shift(&self, qk: i64, tj: i64) -> Self {
        let mut m = self.clone();
        m.qdeg.iter_mut().for_each(|q| *q += qk);
        m.tdeg.iter_mut().for_each(|t| *t += tj);
        m
    }

    pub fn direct_sum(p: u64, parts: &[GradedUModule]) -> Self {
        let cat = |g: fn(&GradedUModule) -> &FpMatrix| FpMatrix::block_diag(p, &parts.iter().map(|m| g(m).clone()).collect::<Vec<_>>());
        GradedUModule {
            p,
            qdeg: parts.iter().flat_map(|m| m.qdeg.iter().copied()).collect(),
            tdeg: parts.iter().flat_map(|m| m.tdeg.iter().copied()).collect(),
            e: cat(|m| &m.e),
            f: cat(|m| &m.f),
            h: cat(|m| &m.h),
        }
    }

    pub fn oplus(&self, other: &GradedUModule) -> Self {
        Self::direct_sum(self.p, &[self.clone(), other.clone()])
    }

    /// Homogeneous basis of the span of `vectors` (columns) as a graded
    /// subspace: each vector is split into key components first.
    fn graded_span(&self, vectors: &FpMatrix) -> FpMatrix {
        let mut cols = Vec::new();
        for idx in self.key_blocks().values() {
            let block = vectors.select_rows(idx);
            let basis = block.column_space_basis();
            for j in 0..basis.cols() {
                let mut v = vec![0; self.dim()];
                for (r, &i) in idx.iter().enumerate() {
                    v[i] = basis.get(r, j);
                }
                cols.push(v);
            }
        }
        FpMatrix::from_columns(self.p, self.dim(), &cols)
    }

    /// The submodule generated by `vectors` (columns); returns a homogeneous
    /// basis (columns) of it.
    pub fn submodule_generated(&self, vectors: &FpMatrix) -> FpMatrix {
        let mut basis = self.graded_span(vectors);
        loop {
            let grown = basis.hstack(&self.e.mul(&basis)).hstack(&self.f.mul(&basis));
            let next = self.graded_span(&grown);
            if next.cols() == basis.cols() {
                return basis;
            }
            basis = next;
        }
    }

    /// Restriction to a stable graded subspace with homogeneous basis `basis`.
    pub fn restrict_to(&self, basis: &FpMatrix) -> Result<Self> {
        let keys: Vec<Key> = (0..basis.cols())
            .map(|j| {
                let i = (0..self.dim()).find(|&i| basis.get(i, j) != 0).ok_or_else(|| Error::NotStable("zero basis vector".into()))?;
                Ok(self.key(i))
            })
            .collect::<Result<_>>()?;
        let r = |m: &FpMatrix, name: &str| {
            fp::restrict(m, basis).ok_or_else(|| Error::NotStable(format!("subspace is not {name}-stable")))
        };
        let (e, f) = (r(&self.e, "E")?, r(&self.f, "F")?);
        let weights: Vec<i64> = keys.iter().map(|k| k.2 as i64).collect();
        Ok(Self::from_weights(
            self.p,
            keys.iter().map(|k| k.0).collect(),
            keys.iter().map(|k| k.1).collect(),
            e,
            f,
            &weights,
        ))
    }

    /// Quotient by a stable subspace (columns of `sub`). The quotient basis
    /// consists of images of standard basis vectors.
    pub fn quotient(&self, sub: &FpMatrix) -> Result<(Self, QuotientMap)> {
        let graded = self.graded_span(sub);
        if graded.cols() != sub.rank() {
            return Err(Error::NotStable("subspace is not graded".into()));
        }
        for (name, m) in [("E", &self.e), ("F", &self.f)] {
            if !fp::is_stable(m, &graded) {
                return Err(Error::NotStable(format!("subspace is not {name}-stable")));
            }
        }
        let q = QuotientMap::new(&graded);
        let keys: Vec<Key> = q.complement.iter().map(|&i| self.key(i)).collect();
        let weights: Vec<i64> = keys.iter().map(|k| k.2 as i64).collect();
        let m = Self::from_weights(
            self.p,
            keys.iter().map(|k| k.0).collect(),
            keys.iter().map(|k| k.1).collect(),
            q.induced(&self.e),
            q.induced(&self.f),
            &weights,
        );
        Ok((m, q))
    }

    /// Contragredient module: actions `-X^T`, degrees negated.
    pub fn dual(&self) -> Self {
        GradedUModule {
            p: self.p,
            qdeg: self.qdeg.iter().map(|q| -q).collect(),
            tdeg: self.tdeg.iter().map(|t| -t).collect(),
            e: self.e.transpose().neg(),
            f: self.f.transpose().neg(),
            h: self.h.transpose().neg(),
        }
    }

    /// Twist by the Cartan involution: E and F swapped, H negated, degrees
    /// negated.
    pub fn cartan_twist(&self) -> Self {
        GradedUModule {
            p: self.p,
            qdeg: self.qdeg.iter().map(|q| -q).collect(),
            tdeg: self.tdeg.iter().map(|t| -t).collect(),
            e: self.f.clone(),
            f: self.e.clone(),
            h: self.h.neg(),
        }
    }

    /// Tensor product with basis `a_i ⊗ b_j` at index `i * dim(b) + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let p = self.p;
        let (i1, i2) = (FpMatrix::identity(p, self.dim()), FpMatrix::identity(p, other.dim()));
        let act = |a: &FpMatrix, b: &FpMatrix| a.kron(&i2).add(&i1.kron(b));
        let mut qdeg = Vec::with_capacity(self.dim() * other.dim());
        let mut tdeg = Vec::with_capacity(self.dim() * other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                qdeg.push(self.qdeg[i] + other.qdeg[j]);
                tdeg.push(self.tdeg[i] + other.tdeg[j]);
            }
        }
        Ok(GradedUModule { p, qdeg, tdeg, e: act(&self.e, &other.e), f: act(&self.f, &other.f), h: act(&self.h, &other.h) })
    }

    /// Conjugate by a homogeneous permutation-free change of basis `t`
    /// (columns are new basis vectors, each of the key of the old vector at
    /// the same index).
    pub fn conjugate(&self, t: &FpMatrix) -> Result<Self> {
        let inv = t.inverse().ok_or_else(|| Error::Shape("change of basis is singular".into()))?;
        let mut m = self.clone();
        m.e = inv.mul(&self.e.mul(t));
        m.f = inv.mul(&self.f.mul(t));
        m.h = inv.mul(&self.h.mul(t));
        Ok(m)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&ModuleJson {
            p: self.p,
            qdeg: self.qdeg.clone(),
            tdeg: self.tdeg.clone(),
            e: self.e.to_rows(),
            f: self.f.to_rows(),
            h: self.h.to_rows(),
        })?)
    }

    /// Parses the JSON form; shapes and residues are checked, the module
    /// invariants are not (call [`GradedUModule::validate`]).
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ModuleJson = serde_json::from_str(s)?;
        FieldSpec::new(raw.p)?;
        let n = raw.qdeg.len();
        if raw.tdeg.len() != n {
            return Err(Error::Shape("tdeg and qdeg lengths differ".into()));
        }
        let mat = |d: &[Vec<u64>]| crate::morita::matrix_from_json(raw.p, d, n, n);
        Ok(GradedUModule { p: raw.p, e: mat(&raw.e)?, f: mat(&raw.f)?, h: mat(&raw.h)?, qdeg: raw.qdeg, tdeg: raw.tdeg })
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    p: u64,
    qdeg: Vec<i64>,
    tdeg: Vec<i64>,
    e: Vec<Vec<u64>>,
    f: Vec<Vec<u64>>,
    h: Vec<Vec<u64>>,
}
