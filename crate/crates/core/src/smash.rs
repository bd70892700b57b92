//! The smash product B = A#H with H = k[∂]/(∂^p), its identification with
//! the matrix algebra M(p, k), and p-DG modules over A (B-modules).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp::{self, binomial_mod, FpMatrix};
use crate::trunc::{multiplication_matrix, witt_matrix, TruncAlgebraSpec, WittOperator};

/// `Σ c_{ij} x^i ∂^j`, stored row-major with index `i * p + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmashElement {
    p: u64,
    coeffs: Vec<u64>,
}

impl SmashElement {
    pub fn zero(p: u64) -> Self {
        SmashElement { p, coeffs: vec![0; (p * p) as usize] }
    }

    pub fn one(p: u64) -> Self {
        Self::basis(p, 0, 0)
    }

    pub fn x(p: u64) -> Self {
        Self::basis(p, 1, 0)
    }

    pub fn d(p: u64) -> Self {
        Self::basis(p, 0, 1)
    }

    /// `x^i ∂^j`; zero if an exponent reaches p.
    pub fn basis(p: u64, i: usize, j: usize) -> Self {
        let mut out = Self::zero(p);
        if i < p as usize && j < p as usize {
            out.coeffs[i * p as usize + j] = 1;
        }
        out
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != (p * p) as usize {
            return Err(Error::Shape(format!("expected {} coefficients, got {}", p * p, coeffs.len())));
        }
        Ok(SmashElement { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs[i * self.p as usize + j]
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_p(self.p, other.p)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % self.p).collect();
        Ok(SmashElement { p: self.p, coeffs })
    }

    pub fn scale(&self, c: u64) -> Self {
        SmashElement { p: self.p, coeffs: self.coeffs.iter().map(|a| a * (c % self.p) % self.p).collect() }
    }

    /// Terms whose total degree is `d` (x has degree 2, ∂ degree -2).
    pub fn is_homogeneous(&self, d: i64) -> bool {
        let p = self.p as usize;
        (0..p * p).all(|k| self.coeffs[k] == 0 || 2 * (k / p) as i64 - 2 * (k % p) as i64 == d)
    }
}

fn check_p(a: u64, b: u64) -> Result<()> {
    if a != b {
        return Err(Error::PrimeMismatch(a, b));
    }
    Ok(())
}

/// `∂_-^m (x^k) = (-1)^m k!/(k-m)! x^{k-m}`; returns the coefficient.
fn d_minus_power_coeff(p: u64, k: u64, m: u64) -> u64 {
    if m > k {
        return 0;
    }
    let mut c = 1u64;
    for r in 0..m {
        c = c * ((k - r) % p) % p;
    }
    if m % 2 == 1 {
        fp::neg(p, c)
    } else {
        c
    }
}

/// Product in B, normal ordered using `∂ a = a ∂ + ∂_-(a)`; in closed form
/// `∂^j x^k = Σ_m C(j,m) ∂_-^m(x^k) ∂^{j-m}`.
pub fn smash_multiply(a: &SmashElement, b: &SmashElement) -> Result<SmashElement> {
    check_p(a.p, b.p)?;
    let p = a.p;
    let pu = p as usize;
    let mut out = SmashElement::zero(p);
    for (ia, &ca) in a.coeffs.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        let (i, j) = (ia / pu, ia % pu);
        for (ib, &cb) in b.coeffs.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let (k, l) = (ib / pu, ib % pu);
            for m in 0..=j.min(k) {
                let (xe, de) = (i + k - m, j - m + l);
                if xe >= pu || de >= pu {
                    continue;
                }
                let c = binomial_mod(p, j as u64, m as u64) * d_minus_power_coeff(p, k as u64, m as u64) % p;
                let idx = xe * pu + de;
                out.coeffs[idx] = (out.coeffs[idx] + ca * cb % p * c) % p;
            }
        }
    }
    Ok(out)
}

/// Action of `a` on the column module V = A·v_0 (∂ v_0 = 0) in the basis
/// `(x^{p-1} v_0, ..., x v_0, v_0)`, so the matrix unit E_{i,j} has degree
/// 2(j - i).
pub fn phi_matrix(a: &SmashElement) -> FpMatrix {
    let p = a.p;
    let pu = p as usize;
    let pos = |k: usize| pu - 1 - k;
    let mut m = FpMatrix::zeros(p, pu, pu);
    for (idx, &c) in a.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (i, j) = (idx / pu, idx % pu);
        for k in j..pu {
            let out = i + k - j;
            if out >= pu {
                continue;
            }
            let v = c * d_minus_power_coeff(p, k as u64, j as u64) % p;
            m.add_at(pos(out), pos(k), v);
        }
    }
    m
}

/// q-degrees of the column-module basis used by [`phi_matrix`].
pub fn column_module_qdegs(p: u64) -> Vec<i64> {
    (0..p as i64).rev().map(|k| 2 * k).collect()
}

/// Inverse of φ on a matrix (solves the p^2 x p^2 linear system).
pub fn phi_inverse(m: &FpMatrix) -> Result<SmashElement> {
    let p = m.p();
    let pu = p as usize;
    if m.rows() != pu || m.cols() != pu {
        return Err(Error::Shape(format!("expected {pu}x{pu}")));
    }
    let lin = phi_linearization(p);
    let rhs = FpMatrix::from_columns(p, pu * pu, &[m.to_rows().concat()]);
    let sol = lin.solve(&rhs).ok_or_else(|| Error::Shape("φ is not surjective".into()))?;
    SmashElement::from_coeffs(p, sol.column(0))
}

/// The p^2 x p^2 matrix of φ, columns indexed by the basis x^i ∂^j.
pub fn phi_linearization(p: u64) -> FpMatrix {
    let pu = p as usize;
    let cols: Vec<Vec<u64>> = (0..pu * pu)
        .map(|idx| phi_matrix(&SmashElement::basis(p, idx / pu, idx % pu)).to_rows().concat())
        .collect();
    FpMatrix::from_columns(p, pu * pu, &cols)
}

/// Checks that A^{⊗n}#H ≅ A^{⊗(n-1)} ⊗ M(p,k) inside End(A^{⊗n}): the
/// differences y_i = x_1 - x_{i+1} are ∂-invariant, p-nilpotent, commute with
/// x_1 and ∂, and the products y^a x_1^b ∂^c are linearly independent and
/// span the same algebra as x^e ∂^c.
pub fn check_tensor_smash_structure(p: u64, n: usize) -> Result<bool> {
    let spec = TruncAlgebraSpec::new(p, n)?;
    let d = witt_matrix(spec, WittOperator::DMinus, None);
    let xs: Vec<FpMatrix> = (0..n).map(|i| multiplication_matrix(spec, i)).collect();
    let ys: Vec<FpMatrix> = (1..n).map(|i| xs[0].sub(&xs[i])).collect();
    let dim = spec.dim();
    for y in &ys {
        if !y.pow(p).is_zero() || !y.commutator(&d).is_zero() || !y.commutator(&xs[0]).is_zero() {
            return Ok(false);
        }
    }
    let flatten = |m: FpMatrix| m.to_rows().concat();
    let mut factored = Vec::new();
    let mut standard = Vec::new();
    let sub_spec = TruncAlgebraSpec::new(p, n.max(2) - 1)?;
    for a in sub_spec.basis() {
        let ya = if n == 1 {
            FpMatrix::identity(p, dim)
        } else {
            a.iter().zip(&ys).fold(FpMatrix::identity(p, dim), |acc, (&e, y)| acc.mul(&y.pow(e as u64)))
        };
        for b in 0..p {
            for c in 0..p {
                factored.push(flatten(ya.mul(&xs[0].pow(b)).mul(&d.pow(c))));
            }
        }
        if n == 1 {
            break;
        }
    }
    for e in spec.basis() {
        let xe = e.iter().zip(&xs).fold(FpMatrix::identity(p, dim), |acc, (&k, x)| acc.mul(&x.pow(k as u64)));
        for c in 0..p {
            standard.push(flatten(xe.mul(&d.pow(c))));
        }
    }
    let target = dim * p as usize;
    let f = FpMatrix::from_columns(p, dim * dim, &factored);
    let s = FpMatrix::from_columns(p, dim * dim, &standard);
    Ok(f.rank() == target && s.rank() == target && f.hstack(&s).rank() == target)
}

/// A p-DG module over A: commuting-up-to-one actions of x (degree 2) and
/// ∂ = ∂_- (degree -2) with `∂x - x∂ = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdgModule {
    pub p: u64,
    pub qdeg: Vec<i64>,
    pub x: FpMatrix,
    pub d: FpMatrix,
}

impl PdgModule {
    pub fn new(p: u64, qdeg: Vec<i64>, x: FpMatrix, d: FpMatrix) -> Result<Self> {
        let m = PdgModule { p, qdeg, x, d };
        m.validate()?;
        Ok(m)
    }

    /// The column module V shifted by q^k.
    pub fn column_module(p: u64, k: i64) -> Self {
        let x = phi_matrix(&SmashElement::x(p));
        let d = phi_matrix(&SmashElement::d(p));
        let qdeg = column_module_qdegs(p).into_iter().map(|q| q + k).collect();
        PdgModule { p, qdeg, x, d }
    }

    /// `⊕ q^{k_i} V`.
    pub fn free(p: u64, shifts: &[i64]) -> Self {
        let parts: Vec<PdgModule> = shifts.iter().map(|&k| Self::column_module(p, k)).collect();
        Self::direct_sum(p, &parts)
    }

    pub fn direct_sum(p: u64, parts: &[PdgModule]) -> Self {
        let x = FpMatrix::block_diag(p, &parts.iter().map(|m| m.x.clone()).collect::<Vec<_>>());
        let d = FpMatrix::block_diag(p, &parts.iter().map(|m| m.d.clone()).collect::<Vec<_>>());
        let qdeg = parts.iter().flat_map(|m| m.qdeg.iter().copied()).collect();
        PdgModule { p, qdeg, x, d }
    }

    pub fn dim(&self) -> usize {
        self.qdeg.len()
    }

    /// Change of basis `v ↦ T v` with `T` homogeneous: new actions
    /// `T^{-1} X T`. `qdeg` gives the degrees of the new basis vectors.
    pub fn conjugate(&self, t: &FpMatrix, qdeg: Vec<i64>) -> Result<Self> {
        let inv = t.inverse().ok_or_else(|| Error::Shape("change of basis is singular".into()))?;
        PdgModule::new(self.p, qdeg, inv.mul(&self.x.mul(t)), inv.mul(&self.d.mul(t)))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let p = self.p;
        for (name, m) in [("x", &self.x), ("d", &self.d)] {
            if m.rows() != n || m.cols() != n || m.p() != p {
                return Err(Error::InvalidModule(format!("{name} has wrong shape")));
            }
            if !m.pow(p).is_zero() {
                return Err(Error::InvalidModule(format!("{name}^p != 0")));
            }
        }
        if self.d.commutator(&self.x) != FpMatrix::scalar(p, n, p - 1) {
            return Err(Error::InvalidModule("d x - x d != -1".into()));
        }
        for (name, m, shift) in [("x", &self.x, 2), ("d", &self.d, -2)] {
            if let Some((r, c, _)) = m.nonzero_entries().find(|&(r, c, _)| self.qdeg[r] != self.qdeg[c] + shift) {
                return Err(Error::InvalidModule(format!(
                    "{name} entry ({r},{c}) maps degree {} to {}",
                    self.qdeg[c], self.qdeg[r]
                )));
            }
        }
        Ok(())
    }
}

/// Action of a smash element on a module through its x and ∂ matrices.
pub fn smash_action(m: &PdgModule, a: &SmashElement) -> FpMatrix {
    let p = m.p;
    let pu = p as usize;
    let n = m.dim();
    let xp: Vec<FpMatrix> = (0..pu).map(|i| m.x.pow(i as u64)).collect();
    let dp: Vec<FpMatrix> = (0..pu).map(|j| m.d.pow(j as u64)).collect();
    let mut out = FpMatrix::zeros(p, n, n);
    for (idx, &c) in a.coeffs().iter().enumerate() {
        if c != 0 {
            out = out.add(&xp[idx / pu].mul(&dp[idx % pu]).scale(c));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct PdgDecomposition {
    /// Degrees of the generators v_0 of the summands, sorted.
    pub shifts: Vec<i64>,
    /// Columns `x^k u_j` (k = p-1 .. 0 for each generator `u_j`), so that
    /// `T^{-1} X T` is block diagonal with blocks φ(x).
    pub change_of_basis: FpMatrix,
}

/// Splits a p-DG module into shifted copies of V. The generators are a
/// homogeneous basis of e·M where e ∈ B is the idempotent φ^{-1}(E_{v_0,v_0}).
pub fn decompose_pdg_module(m: &PdgModule) -> Result<PdgDecomposition> {
    m.validate()?;
    let p = m.p;
    let pu = p as usize;
    let mut unit = FpMatrix::zeros(p, pu, pu);
    unit.set(pu - 1, pu - 1, 1);
    let e = smash_action(m, &phi_inverse(&unit)?);
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &q) in m.qdeg.iter().enumerate() {
        by_deg.entry(q).or_default().push(i);
    }
    let mut gens: Vec<(i64, Vec<u64>)> = Vec::new();
    for (&q, idx) in &by_deg {
        let img = e.select_columns(idx).column_space_basis();
        for j in 0..img.cols() {
            gens.push((q, img.column(j)));
        }
    }
    if gens.len() * pu != m.dim() {
        return Err(Error::InvalidModule(format!(
            "found {} generators for dimension {}",
            gens.len(),
            m.dim()
        )));
    }
    gens.sort_by_key(|g| g.0);
    let mut cols = Vec::with_capacity(m.dim());
    for (_, g) in &gens {
        let mut chain = vec![g.clone()];
        for _ in 1..pu {
            let next = m.x.mul_vec(chain.last().unwrap());
            chain.push(next);
        }
        cols.extend(chain.into_iter().rev());
    }
    let t = FpMatrix::from_columns(p, m.dim(), &cols);
    let inv = t.inverse().ok_or_else(|| Error::InvalidModule("generators are not free".into()))?;
    let bx = FpMatrix::block_diag(p, &vec![phi_matrix(&SmashElement::x(p)); gens.len()]);
    let bd = FpMatrix::block_diag(p, &vec![phi_matrix(&SmashElement::d(p)); gens.len()]);
    if inv.mul(&m.x.mul(&t)) != bx || inv.mul(&m.d.mul(&t)) != bd {
        return Err(Error::InvalidModule("change of basis does not diagonalize the action".into()));
    }
    Ok(PdgDecomposition { shifts: gens.into_iter().map(|g| g.0).collect(), change_of_basis: t })
}

/// Dimensions of the slash homology `ker d^k / im d^{p-k}` for k = 1..p-1.
pub fn slash_homology(d: &FpMatrix, p: u64) -> Vec<usize> {
    let n = d.rows();
    (1..p)
        .map(|k| {
            let ker = n - d.pow(k).rank();
            let im = d.pow(p - k).rank();
            ker - im
        })
        .collect()
}

/// Freeness over k[x_1..x_m]/(x_i^p) for commuting p-nilpotent actions:
/// rank((x_1⋯x_m)^{p-1}) = dim / p^m.
pub fn free_over_trunc(actions: &[FpMatrix]) -> bool {
    let Some(first) = actions.first() else {
        return true;
    };
    let p = first.p();
    let n = first.rows();
    let pm = (p as usize).pow(actions.len() as u32);
    if n % pm != 0 {
        return false;
    }
    let top = actions.iter().fold(FpMatrix::identity(p, n), |acc, x| acc.mul(&x.pow(p - 1)));
    top.rank() == n / pm
}

/// Random free module `⊕ q^{k_i} V` conjugated by a random homogeneous
/// change of basis; returns the module and the sorted shifts.
pub fn random_pdg_module<R: rand::Rng + ?Sized>(p: u64, summands: usize, rng: &mut R) -> (PdgModule, Vec<i64>) {
    let mut shifts: Vec<i64> = (0..summands).map(|_| 2 * rng.gen_range(-3i64..=3)).collect();
    let free = PdgModule::free(p, &shifts);
    let t = random_homogeneous_automorphism(p, &free.qdeg, rng);
    let inv = t.inverse().expect("invertible");
    let m = PdgModule {
        p,
        qdeg: free.qdeg.clone(),
        x: t.mul(&free.x.mul(&inv)),
        d: t.mul(&free.d.mul(&inv)),
    };
    shifts.sort();
    (m, shifts)
}

/// Random invertible matrix preserving the grading blocks of `qdeg`.
pub fn random_homogeneous_automorphism<R: rand::Rng + ?Sized>(p: u64, qdeg: &[i64], rng: &mut R) -> FpMatrix {
    let n = qdeg.len();
    loop {
        let mut t = FpMatrix::zeros(p, n, n);
        for r in 0..n {
            for c in 0..n {
                if qdeg[r] == qdeg[c] {
                    t.set(r, c, rng.gen_range(0..p));
                }
            }
        }
        if t.rank() == n {
            return t;
        }
    }
}
