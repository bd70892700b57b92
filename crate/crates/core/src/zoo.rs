//! Example state spaces: the unknot, the 2-colored circle, the theta web,
//! the Hopf link, (2,n) torus links and unlinks, built from explicit
//! formulas.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix};
use crate::smash::free_over_trunc;
use crate::trunc::{witt_matrix, TruncAlgebraSpec, WittOperator};
use crate::usl2::{
    decompose, make_dual_verma, make_simple, GradedUModule, ModuleKind, ModuleLabel,
};

/// An sl(2) triple (E, F, H) acting on a module's underlying space.
pub type Triple = [FpMatrix; 3];

#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: String,
    pub p: u64,
    pub n: Option<usize>,
    pub t1: Option<i64>,
    pub module: GradedUModule,
    pub expected: String,
    /// Dot actions x_i, one per base point (component).
    pub dots: Vec<FpMatrix>,
    /// Per-component sl(2) triples, when available.
    pub triples: Vec<Triple>,
}

impl fmt::Display for ZooEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={}", self.name, self.p)?;
        if let Some(n) = self.n {
            write!(f, ", n={n}")?;
        }
        if let Some(t) = self.t1 {
            write!(f, ", t1={t}")?;
        }
        write!(f, "): dim {}, expected {}", self.module.dim(), self.expected)
    }
}

fn require_p(p: u64) -> Result<()> {
    fp::FieldSpec::new(p)?;
    if p < 3 {
        return Err(Error::PrimeTooSmall(p));
    }
    Ok(())
}

/// Multiplication by a dot on ∇(λ): v_i ↦ v_{i+1}. On every ∇(λ) it
/// satisfies [E,X] = -1, [H,X] = -2X, [F,X] = X^2.
pub fn dot_operator(p: u64) -> FpMatrix {
    let n = p as usize;
    FpMatrix::from_fn(p, n, n, |r, c| (r == c + 1) as i64)
}

/// The unknot: cups with i dots, v_i = x^i, with ∂_- = -d/dx and the twisted
/// ∂_+ v_i = (i+1) v_{i+1}; degrees 2i - (p-1).
pub fn unknot(p: u64) -> Result<ZooEntry> {
    require_p(p)?;
    let spec = TruncAlgebraSpec::new(p, 1)?;
    let e = witt_matrix(spec, WittOperator::DMinus, None);
    let f = witt_matrix(spec, WittOperator::DPlus, Some(&[1]));
    let h = witt_matrix(spec, WittOperator::DZero, Some(&[1]));
    let qdeg: Vec<i64> = (0..p as i64).map(|i| 2 * i - (p as i64 - 1)).collect();
    let module = GradedUModule::new(p, qdeg, vec![0; p as usize], e.clone(), f.clone(), h.clone())?;
    Ok(ZooEntry {
        name: "unknot".into(),
        p,
        n: None,
        t1: None,
        module,
        expected: "∇(p-1) = St".into(),
        dots: vec![dot_operator(p)],
        triples: vec![[e, f, h]],
    })
}

/// Coefficient and index of s_{m,n} after straightening, or `None` if it
/// vanishes. Basis: p-2 >= m >= n >= 0 in lexicographic order.
fn schur_index(p: u64, m: i64, n: i64) -> Option<(i64, usize)> {
    let top = p as i64 - 2;
    if n < 0 || m == n - 1 {
        return None;
    }
    if m < n - 1 {
        let (s, i) = schur_index(p, n - 1, m + 1)?;
        return Some((-s, i));
    }
    if m > top {
        return None;
    }
    // pairs (m', n') with m' < m come first: m'(m'+1)/2 + m' of them
    let before = m * (m + 1) / 2;
    Some((1, (before + n) as usize))
}

/// Basis labels (m, n) of the 2-colored circle, in index order.
pub fn colored_circle_basis(p: u64) -> Vec<(i64, i64)> {
    let top = p as i64 - 2;
    (0..=top).flat_map(|m| (0..=m).map(move |n| (m, n))).collect()
}

/// The circle colored 2: Schur functions s_{m,n}, p-2 >= m >= n >= 0, with
/// ∂_+ s = (m+2) s_{m+1,n} + (n+1) s_{m,n+1}, ∂_- s = -(m+1) s_{m-1,n} - n s_{m,n-1},
/// ∂_0 s = -2(2+m+n) s, and qdeg(s_{m,n}) = 2(m+n) + 4 so that ∂_0 is minus
/// the degree.
pub fn colored_circle_2(p: u64) -> Result<ZooEntry> {
    require_p(p)?;
    let basis = colored_circle_basis(p);
    let dim = basis.len();
    let mut e = FpMatrix::zeros(p, dim, dim);
    let mut f = FpMatrix::zeros(p, dim, dim);
    let put = |mat: &mut FpMatrix, col: usize, coeff: i64, m: i64, n: i64| {
        if let Some((s, row)) = schur_index(p, m, n) {
            mat.add_at(row, col, fp::reduce(p, s * coeff));
        }
    };
    for (col, &(m, n)) in basis.iter().enumerate() {
        put(&mut f, col, m + 2, m + 1, n);
        put(&mut f, col, n + 1, m, n + 1);
        put(&mut e, col, -(m + 1), m - 1, n);
        put(&mut e, col, -n, m, n - 1);
    }
    let weights: Vec<i64> = basis.iter().map(|&(m, n)| -2 * (2 + m + n)).collect();
    let mut h = FpMatrix::zeros(p, dim, dim);
    for (i, &w) in weights.iter().enumerate() {
        h.set(i, i, fp::reduce(p, w));
    }
    let qdeg = basis.iter().map(|&(m, n)| 2 * (m + n) + 4).collect();
    let module = GradedUModule::new(p, qdeg, vec![0; dim], e, f, h)?;
    let expected = colored_circle_expected(p).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ⊕ ");
    Ok(ZooEntry {
        name: "colored-circle-2".into(),
        p,
        n: None,
        t1: None,
        module,
        expected,
        dots: vec![],
        triples: vec![],
    })
}

/// ⊕_{λ=0}^{⌊(p-3)/4⌋} P(4λ+2-2p), in canonical labels.
pub fn colored_circle_expected(p: u64) -> Vec<ModuleLabel> {
    let pi = p as i64;
    let mut out: Vec<ModuleLabel> = (0..=(pi - 3) / 4)
        .map(|l| ModuleLabel::new(ModuleKind::P, 4 * l + 2 - 2 * pi, 0, 0).canonical(p))
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelStrata {
    /// dim ker ∂_- on the whole module.
    pub kernel_dim: usize,
    /// The vectors v_{m,n} (one per even m+n <= p-2) lie in ker ∂_-.
    pub v_vectors_in_kernel: bool,
    pub v_count: usize,
    /// Values of n in [(p-3)/4, (p-3)/2] for which ∂_- s_{n,n} lies in the
    /// submodule generated by the v_{m,n} with m+n <= (p-3)/2.
    pub diagonal_killed_modulo: Vec<i64>,
}

/// Reports both strata of the kernel of ∂_- on the 2-colored circle.
pub fn colored_circle_kernel_strata(p: u64) -> Result<KernelStrata> {
    let entry = colored_circle_2(p)?;
    let m = &entry.module;
    let dim = m.dim();
    let pi = p as i64;
    let kernel_dim = dim - m.e().rank();
    let mut vs = Vec::new();
    let mut low = Vec::new();
    for s in (0..=pi - 2).step_by(2) {
        let mut v = vec![0u64; dim];
        for i in 0..=s / 2 {
            if let Some((sign, idx)) = schur_index(p, s - i, i) {
                let c = fp::binomial_mod(p, (s + 1) as u64, i as u64) as i64;
                let c = if i % 2 == 1 { -c } else { c };
                v[idx] = fp::reduce(p, v[idx] as i64 + sign * c);
            }
        }
        if 2 * s <= pi - 3 {
            low.push(v.clone());
        }
        vs.push(v);
    }
    let v_vectors_in_kernel = vs.iter().all(|v| m.e().mul_vec(v).iter().all(|&x| x == 0));
    let mut diagonal_killed_modulo = Vec::new();
    if !low.is_empty() {
        let sub = m.submodule_generated(&FpMatrix::from_columns(p, dim, &low));
        for n in 0..=(pi - 3) / 2 {
            if 4 * n < pi - 3 {
                continue;
            }
            let Some((_, idx)) = schur_index(p, n, n) else { continue };
            let img = FpMatrix::from_columns(p, dim, &[m.e().column(idx)]);
            if sub.hstack(&img).rank() == sub.rank() {
                diagonal_killed_modulo.push(n);
            }
        }
    }
    Ok(KernelStrata { kernel_dim, v_vectors_in_kernel, v_count: vs.len(), diagonal_killed_modulo })
}

/// The claimed state space of the theta web at t1 = 1, t2 = 0:
/// L(1) ⊗ H(circle colored 2).
pub fn theta_expected(p: u64) -> Result<ZooEntry> {
    let circle = colored_circle_2(p)?;
    let module = make_simple(p, 1).tensor(&circle.module)?;
    Ok(ZooEntry {
        name: "theta".into(),
        p,
        n: None,
        t1: Some(1),
        module,
        expected: format!("L(1) ⊗ ({})", circle.expected),
        dots: vec![],
        triples: vec![],
    })
}

/// A module whose highest weight vector is killed by ∂_+ at p = 3, standing
/// in for the theta web at t1 = t2 = 2: L(1) ⊗ ∇(1).
pub fn theta_p3_witness() -> GradedUModule {
    make_simple(3, 1).tensor(&make_dual_verma(3, 1)).expect("same p")
}

#[derive(Debug, Clone)]
pub struct Embedding {
    /// ∇(λ1) ⊗ ∇(λ2)
    pub tensor: GradedUModule,
    /// ∇(μ)
    pub source: GradedUModule,
    pub map: FpMatrix,
    pub injective: bool,
    pub equivariant: bool,
    /// q-degree of the map (image degree minus source degree), if uniform.
    pub degree: Option<i64>,
}

/// The map ∇(μ) → ∇(λ1) ⊗ ∇(λ2), v_k ↦ Σ_{i+j=p-1+k} v_i ⊗ v_j.
pub fn hopf_embedding(p: u64, lambda1: i64, lambda2: i64, mu: i64) -> Result<Embedding> {
    require_p(p)?;
    let n = p as usize;
    let tensor = make_dual_verma(p, lambda1).tensor(&make_dual_verma(p, lambda2))?;
    let source = make_dual_verma(p, mu);
    let mut map = FpMatrix::zeros(p, n * n, n);
    let mut degrees = std::collections::BTreeSet::new();
    for k in 0..n {
        for i in 0..n {
            let j = (n - 1 + k) as i64 - i as i64;
            if (0..n as i64).contains(&j) {
                let row = i * n + j as usize;
                map.set(row, k, 1);
                degrees.insert(tensor.qdeg()[row] - source.qdeg()[k]);
            }
        }
    }
    let injective = map.rank() == n;
    let equivariant = map.mul(source.e()) == tensor.e().mul(&map)
        && map.mul(source.f()) == tensor.f().mul(&map)
        && map.mul(source.h()) == tensor.h().mul(&map);
    let degree = if degrees.len() == 1 { degrees.into_iter().next() } else { None };
    Ok(Embedding { tensor, source, map, injective, equivariant, degree })
}

/// The quotient (∇(λ1) ⊗ ∇(λ2)) / ∇(μ); the embedding must be an injective
/// degree-0 module map.
fn embedded_quotient(p: u64, lambda1: i64, lambda2: i64, mu: i64) -> Result<(GradedUModule, Embedding)> {
    let emb = hopf_embedding(p, lambda1, lambda2, mu)?;
    if !emb.injective || !emb.equivariant || emb.degree != Some(0) {
        return Err(Error::Embedding(format!(
            "∇({mu}) → ∇({lambda1}) ⊗ ∇({lambda2}) at p={p}: injective={}, equivariant={}, degree={:?}",
            emb.injective, emb.equivariant, emb.degree
        )));
    }
    let (q, _) = emb.tensor.quotient(&emb.map)?;
    Ok((q, emb))
}

/// Hopf link: q^{-2} ∇(0) ⊕ t^{-2} (∇(λ1) ⊗ ∇(λ2)) / ∇(-2) with
/// λ_i = 2t_i - 3 + p and t2 = 1 - t1.
pub fn hopf(p: u64, t1: i64) -> Result<ZooEntry> {
    require_p(p)?;
    let pi = p as i64;
    let t2 = 1 - t1;
    let (l1, l2) = (2 * t1 - 3 + pi, 2 * t2 - 3 + pi);
    let (q, _) = embedded_quotient(p, l1, l2, -2)?;
    let nabla0 = make_dual_verma(p, 0).shift(-2, 0);
    let module = nabla0.oplus(&q.shift(0, -2));
    // one dot on each of ∇(0) and the first tensor factor; both components
    // share it
    let x_q = q_dot(p, l1, l2, -2)?;
    let x = FpMatrix::block_diag(p, &[dot_operator(p), x_q]);
    let triple = [module.e().clone(), module.f().clone(), module.h().clone()];
    Ok(ZooEntry {
        name: "hopf".into(),
        p,
        n: Some(2),
        t1: Some(t1),
        module,
        expected: format!("q^-2 ∇(0) ⊕ t^-2 (∇({l1}) ⊗ ∇({l2}))/∇(-2)"),
        dots: vec![x.clone(), x],
        triples: vec![triple.clone(), triple],
    })
}

/// X ⊗ 1 induced on the quotient by the embedded ∇(μ).
fn q_dot(p: u64, l1: i64, l2: i64, mu: i64) -> Result<FpMatrix> {
    let emb = hopf_embedding(p, l1, l2, mu)?;
    let x = dot_operator(p).kron(&FpMatrix::identity(p, p as usize));
    if !fp::is_stable(&x, &emb.map) {
        return Err(Error::Embedding("dot does not preserve the embedded submodule".into()));
    }
    let q = fp::QuotientMap::new(&emb.map);
    Ok(q.induced(&x))
}

/// (2,n) torus link, assembled from the displayed sums; the inner sum runs
/// to ⌊(n-1)/2⌋ and even n adds t^{-n} (∇(2t1-n+p-1) ⊗ ∇(2t2-n+p-1)) / ∇(2-2n).
pub fn torus_2n(p: u64, n: usize, t1: i64) -> Result<ZooEntry> {
    require_p(p)?;
    if n < 2 {
        return Err(Error::InvalidModule("torus links need n >= 2".into()));
    }
    let pi = p as i64;
    let ni = n as i64;
    let t2 = 1 - t1;
    let mut parts = vec![make_dual_verma(p, 0).shift(-ni, 0)];
    let mut expected = vec![format!("q^{} ∇(0)", -ni)];
    for j in 1..=(ni - 1) / 2 {
        let a = 2 * t1 - 2 * j + pi - 1;
        parts.push(make_dual_verma(p, a).shift(-ni + 4 * j - 1, -2 * j));
        parts.push(make_dual_verma(p, 2 - 2 * j).shift(-ni + 4 * j + 1, -2 * j - 1));
        expected.push(format!("t^{} q^{} ∇({a})", -2 * j, -ni + 4 * j - 1));
        expected.push(format!("t^{} q^{} ∇({})", -2 * j - 1, -ni + 4 * j + 1, 2 - 2 * j));
    }
    if n % 2 == 0 {
        let (a, b) = (2 * t1 - ni + pi - 1, 2 * t2 - ni + pi - 1);
        let (q, _) = embedded_quotient(p, a, b, 2 - 2 * ni)?;
        parts.push(q.shift(0, -ni));
        expected.push(format!("t^{} (∇({a}) ⊗ ∇({b}))/∇({})", -ni, 2 - 2 * ni));
    }
    Ok(ZooEntry {
        name: "torus".into(),
        p,
        n: Some(n),
        t1: Some(t1),
        module: GradedUModule::direct_sum(p, &parts),
        expected: expected.join(" ⊕ "),
        dots: vec![],
        triples: vec![],
    })
}

/// m-component unlink: ∇(p-1)^{⊗m} with one dot and one sl(2) triple per
/// component.
pub fn unlink(p: u64, m: usize) -> Result<ZooEntry> {
    let u = unknot(p)?;
    if m == 0 {
        return Err(Error::InvalidModule("unlink needs at least one component".into()));
    }
    let mut module = u.module.clone();
    for _ in 1..m {
        module = module.tensor(&u.module)?;
    }
    let pn = p as usize;
    let embed = |x: &FpMatrix, i: usize| {
        (0..m).fold(FpMatrix::identity(p, 1), |acc, k| {
            acc.kron(&if k == i { x.clone() } else { FpMatrix::identity(p, pn) })
        })
    };
    let dots = (0..m).map(|i| embed(&u.dots[0], i)).collect();
    let triples = (0..m)
        .map(|i| [embed(u.module.e(), i), embed(u.module.f(), i), embed(u.module.h(), i)])
        .collect();
    Ok(ZooEntry {
        name: "unlink".into(),
        p,
        n: Some(m),
        t1: None,
        module,
        expected: format!("St^⊗{m}"),
        dots,
        triples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    /// [E_i, x_j] = -δ_ij, [H_i, x_j] = -2δ_ij x_j, [F_i, x_j] = δ_ij x_j^2,
    /// and each triple satisfies the sl(2) relations.
    pub relations: bool,
    /// Triples of distinct components commute.
    pub triples_commute: bool,
    pub free: bool,
    pub passed: bool,
}

/// Verifies a candidate double sl(2) action and reports freeness over
/// k[x_1..x_m]/(x_i^p).
pub fn split_detection_check(entry: &ZooEntry) -> SplitReport {
    let p = entry.p;
    let k = entry.dots.len();
    if k <= 1 {
        return SplitReport { relations: true, triples_commute: true, free: true, passed: true };
    }
    let dim = entry.module.dim();
    let id = FpMatrix::identity(p, dim);
    let mut relations = entry.triples.len() == k;
    for (i, [e, f, h]) in entry.triples.iter().enumerate() {
        relations &= h.commutator(e) == e.scale(2) && h.commutator(f) == f.scale(p - 2) && e.commutator(f) == *h;
        for (j, x) in entry.dots.iter().enumerate() {
            let d = (i == j) as u64;
            relations &= e.commutator(x) == id.scale(fp::neg(p, d))
                && h.commutator(x) == x.scale(fp::neg(p, 2 * d % p))
                && f.commutator(x) == x.mul(x).scale(d);
        }
    }
    let mut triples_commute = true;
    for a in 0..entry.triples.len() {
        for b in a + 1..entry.triples.len() {
            for x in &entry.triples[a] {
                for y in &entry.triples[b] {
                    triples_commute &= x.commutator(y).is_zero();
                }
            }
        }
    }
    let free = free_over_trunc(&entry.dots);
    SplitReport { relations, triples_commute, free, passed: relations && triples_commute && free }
}

/// Names accepted by [`build`].
pub const ENTRY_NAMES: [&str; 6] = ["unknot", "colored-circle-2", "theta", "hopf", "torus", "unlink"];

pub fn build(name: &str, p: u64, n: Option<usize>, t1: Option<i64>) -> Result<ZooEntry> {
    match name {
        "unknot" => unknot(p),
        "colored-circle-2" => colored_circle_2(p),
        "theta" => theta_expected(p),
        "hopf" => hopf(p, t1.unwrap_or(1)),
        "torus" => torus_2n(p, n.unwrap_or(3), t1.unwrap_or(1)),
        "unlink" => unlink(p, n.unwrap_or(2)),
        other => Err(Error::Parse(format!("unknown zoo entry {other:?}"))),
    }
}

/// Labels of the decomposition, sorted; `None` for unlabeled summands.
pub fn decomposition_labels(m: &GradedUModule) -> Vec<Option<ModuleLabel>> {
    let mut out: Vec<Option<ModuleLabel>> = decompose(m).into_iter().map(|s| s.label).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::usl2::{
        acyclicity_check, filtration, iso_test, is_projective_injective, make_steinberg, steinberg_multiplicity,
        unimodality_check, FiltrationStyle,
    };

    #[test]
    fn unknot_is_steinberg() {
        for p in [3u64, 5, 7, 11] {
            let u = unknot(p).unwrap();
            assert_eq!(u.module, make_dual_verma(p, p as i64 - 1));
            // ∂_+ v_{p-2} = (p-1) v_{p-1}
            assert_eq!(u.module.f().get(p as usize - 1, p as usize - 2), p - 1);
            assert!(iso_test(&u.module, &make_steinberg(p)).is_some());
            assert!(iso_test(&u.module.dual(), &u.module).is_some());
            assert_eq!(steinberg_multiplicity(&u.module, 0).values().sum::<usize>(), 1);
            assert!(u.module.weight_degree_aligned());
        }
    }

    #[test]
    fn colored_circle_dimensions() {
        for p in [3u64, 5, 7, 11, 13] {
            let c = colored_circle_2(p).unwrap();
            assert_eq!(c.module.dim(), (p * (p - 1) / 2) as usize);
            assert!(c.module.weight_degree_aligned());
        }
    }

    #[test]
    fn colored_circle_decomposition() {
        for p in [3u64, 5, 7] {
            let c = colored_circle_2(p).unwrap();
            let labels = decomposition_labels(&c.module);
            let want: Vec<Option<ModuleLabel>> = colored_circle_expected(p).into_iter().map(Some).collect();
            assert_eq!(labels, want, "p={p}");
        }
        assert_eq!(colored_circle_expected(3)[0].to_string(), "q^6 St");
    }

    #[test]
    fn colored_circle_kernel() {
        for p in [5u64, 7, 11] {
            let s = colored_circle_kernel_strata(p).unwrap();
            assert!(s.v_vectors_in_kernel, "{s:?}");
            assert_eq!(s.v_count, (p as usize - 1) / 2);
        }
    }

    #[test]
    fn theta_dimension_and_projectivity() {
        for p in [3u64, 5, 7] {
            let t = theta_expected(p).unwrap();
            assert_eq!(t.module.dim(), (p * (p - 1)) as usize);
            assert!(is_projective_injective(&t.module));
        }
        assert!(!is_projective_injective(&theta_p3_witness()));
    }

    #[test]
    fn hopf_embedding_lifts() {
        for p in [3u64, 5, 7] {
            let pi = p as i64;
            for t1 in 0..3 {
                let t2 = 1 - t1;
                let e = hopf_embedding(p, 2 * t1 - 3 + pi, 2 * t2 - 3 + pi, -2).unwrap();
                assert!(e.injective && e.equivariant);
                assert_eq!(e.degree, Some(0));
                let lit = hopf_embedding(p, 2 * t1 - 3, 2 * t2 - 3, -2).unwrap();
                assert!(lit.injective && lit.equivariant);
                assert_eq!(lit.degree, Some(2 * pi));
            }
        }
    }

    #[test]
    fn hopf_module() {
        for p in [3u64, 5, 7] {
            for t1 in 0..3 {
                let h = hopf(p, t1).unwrap();
                assert_eq!(h.module.dim(), (p * p) as usize);
                assert!(unimodality_check(&h.module).passed);
                assert!(acyclicity_check(&h.module));
                assert!(filtration(&h.module, FiltrationStyle::Nabla).is_some());
                let torus = torus_2n(p, 2, t1).unwrap();
                assert!(iso_test(&torus.module, &h.module).is_some());
            }
        }
    }

    #[test]
    fn torus_battery() {
        for p in [3u64, 5] {
            for n in 2..=7 {
                for t1 in 0..3 {
                    let t = torus_2n(p, n, t1).unwrap();
                    assert!(t.module.validate().passed());
                    assert!(unimodality_check(&t.module).passed, "p={p} n={n} t1={t1}");
                    assert!(acyclicity_check(&t.module));
                    assert!(filtration(&t.module, FiltrationStyle::Nabla).is_some());
                }
            }
        }
    }

    #[test]
    fn trefoil_has_no_steinberg_in_degree_zero() {
        for p in [3u64, 5, 7] {
            for n in [3, 5] {
                let t = torus_2n(p, n, 1).unwrap();
                assert!(steinberg_multiplicity(&t.module, 0).is_empty());
            }
        }
    }

    #[test]
    fn unlink_checks() {
        for p in [3u64, 5] {
            let u1 = unlink(p, 1).unwrap();
            assert_eq!(u1.module, unknot(p).unwrap().module);
            let u = unlink(p, 2).unwrap();
            let r = split_detection_check(&u);
            assert!(r.relations && r.triples_commute && r.free, "{r:?}");
            let uk = unknot(p).unwrap().module;
            assert_eq!(u.module, uk.tensor(&uk).unwrap());
            assert!(is_projective_injective(&u.module));
            let h = hopf(p, 1).unwrap();
            let r = split_detection_check(&h);
            assert!(!r.free);
            assert!(!r.passed);
            assert!(split_detection_check(&unknot(p).unwrap()).passed);
        }
    }

    #[test]
    fn dot_relations_on_dual_vermas() {
        for p in [3u64, 5, 7] {
            for lambda in -3..8 {
                let m = make_dual_verma(p, lambda);
                let x = dot_operator(p);
                let id = FpMatrix::identity(p, p as usize);
                assert_eq!(m.e().commutator(&x), id.scale(p - 1));
                assert_eq!(m.h().commutator(&x), x.scale(p - 2));
                assert_eq!(m.f().commutator(&x), x.mul(&x));
            }
        }
    }
}
