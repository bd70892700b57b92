//! Krull-Schmidt decomposition through the degree-0 endomorphism ring,
//! labeling against the catalog, and isomorphism testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::hom_basis;
use super::label::{ModuleKind, ModuleLabel};
use super::GradedUModule;
use crate::fp::{factor_poly, min_poly, FpMatrix};

const RANDOM_TRIES: usize = 32;

/// A direct summand with its inclusion (n x k) and projection (k x n);
/// `projection * inclusion = I` and the projections of all summands of a
/// decomposition sum (after inclusion) to the identity.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: GradedUModule,
    pub inclusion: FpMatrix,
    pub projection: FpMatrix,
    pub label: Option<ModuleLabel>,
}

pub fn decompose(m: &GradedUModule) -> Vec<Summand> {
    decompose_with_seed(m, 0)
}

pub fn decompose_with_seed(m: &GradedUModule, seed: u64) -> Vec<Summand> {
    let mut out = decompose_unlabeled(m, seed);
    for s in &mut out {
        s.label = label_indecomposable(&s.module);
    }
    out
}

/// Decomposition without catalog matching.
pub fn decompose_unlabeled(m: &GradedUModule, seed: u64) -> Vec<Summand> {
    let p = m.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for comp in components(m) {
        let incl = selection(p, m.dim(), &comp);
        let sub = m.restrict_to(&incl).expect("components are submodules");
        for (i, pr) in split(&sub, &mut rng) {
            let module = sub.restrict_to(&i).expect("split parts are submodules");
            out.push(Summand {
                module,
                inclusion: incl.mul(&i),
                projection: pr.mul(&incl.transpose()),
                label: None,
            });
        }
    }
    out.sort_by_key(|s| {
        let q = s.module.qdeg().iter().min().copied().unwrap_or(0);
        let t = s.module.tdeg().first().copied().unwrap_or(0);
        (t, q, s.module.dim())
    });
    out
}

fn selection(p: u64, n: usize, idx: &[usize]) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, n, idx.len());
    for (j, &i) in idx.iter().enumerate() {
        m.set(i, j, 1);
    }
    m
}

/// Connected components of the graph whose edges are nonzero E/F entries.
fn components(m: &GradedUModule) -> Vec<Vec<usize>> {
    let n = m.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut j = i;
        while parent[j] != r {
            let next = parent[j];
            parent[j] = r;
            j = next;
        }
        r
    }
    for a in [m.e(), m.f()] {
        for (r, c, _) in a.nonzero_entries() {
            let (x, y) = (find(&mut parent, r), find(&mut parent, c));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Splits `m` into indecomposables; returns (inclusion, projection) pairs
/// in the coordinates of `m`.
fn split(m: &GradedUModule, rng: &mut ChaCha8Rng) -> Vec<(FpMatrix, FpMatrix)> {
    let p = m.p();
    let n = m.dim();
    let whole = || vec![(FpMatrix::identity(p, n), FpMatrix::identity(p, n))];
    if n <= 1 {
        return whole();
    }
    let endos = hom_basis(m, m, (0, 0));
    if endos.len() <= 1 {
        return whole();
    }
    for phi in &endos {
        if let Some(r) = try_split(m, phi, rng) {
            return r;
        }
    }
    if certify_local(&endos) {
        return whole();
    }
    for _ in 0..RANDOM_TRIES {
        let mut phi = FpMatrix::zeros(p, n, n);
        for b in &endos {
            phi = phi.add(&b.scale(rng.gen_range(0..p)));
        }
        if let Some(r) = try_split(m, &phi, rng) {
            return r;
        }
    }
    whole()
}

fn try_split(m: &GradedUModule, phi: &FpMatrix, rng: &mut ChaCha8Rng) -> Option<Vec<(FpMatrix, FpMatrix)>> {
    let parts = eigen_split(m, phi)?;
    let t = parts.iter().skip(1).fold(parts[0].clone(), |acc, w| acc.hstack(w));
    let tinv = t.inverse().expect("generalized eigenspaces span");
    let mut out = Vec::new();
    let mut offset = 0;
    for w in &parts {
        let rows: Vec<usize> = (offset..offset + w.cols()).collect();
        offset += w.cols();
        let proj = tinv.select_rows(&rows);
        let sub = m.restrict_to(w).expect("eigenspaces are submodules");
        for (i2, p2) in split(&sub, rng) {
            out.push((w.mul(&i2), p2.mul(&proj)));
        }
    }
    Some(out)
}

/// Generalized eigenspaces `ker g(φ)^k` for the coprime factors of the
/// minimal polynomial, each with a homogeneous basis; `None` if φ has a
/// single primary component.
fn eigen_split(m: &GradedUModule, phi: &FpMatrix) -> Option<Vec<FpMatrix>> {
    let factors = factor_poly(&min_poly(phi).ok()?).ok()?;
    if factors.len() < 2 {
        return None;
    }
    let p = m.p();
    let n = m.dim();
    let blocks = m.key_blocks();
    let mut parts = Vec::new();
    for (g, k) in &factors {
        let a = g.pow(*k).eval_matrix(phi);
        let mut cols = Vec::new();
        for idx in blocks.values() {
            let ker = a.submatrix(idx, idx).kernel_basis();
            for j in 0..ker.cols() {
                let mut v = vec![0; n];
                for (r, &i) in idx.iter().enumerate() {
                    v[i] = ker.get(r, j);
                }
                cols.push(v);
            }
        }
        parts.push(FpMatrix::from_columns(p, n, &cols));
    }
    Some(parts)
}

/// End^0 is local when each basis element is `c·I + nilpotent` and the
/// nilpotent parts span a subalgebra (then it is a nilpotent ideal).
fn certify_local(endos: &[FpMatrix]) -> bool {
    let Some(first) = endos.first() else {
        return true;
    };
    let p = first.p();
    let n = first.rows();
    let mut nil = Vec::new();
    for b in endos {
        let Ok(mp) = min_poly(b) else {
            return false;
        };
        let Ok(fs) = factor_poly(&mp) else {
            return false;
        };
        if fs.len() != 1 || fs[0].0.degree() != Some(1) {
            return false;
        }
        // factor is x + a0, so the eigenvalue is -a0
        let c = crate::fp::neg(p, fs[0].0.coeff(0));
        let nb = b.sub(&FpMatrix::scalar(p, n, c));
        if !nb.is_zero() {
            nil.push(nb);
        }
    }
    if nil.is_empty() {
        return true;
    }
    let flat = |m: &FpMatrix| m.to_rows().concat();
    let span = FpMatrix::from_columns(p, n * n, &nil.iter().map(flat).collect::<Vec<_>>());
    let r = span.rank();
    let mut products = Vec::new();
    for a in &nil {
        for b in &nil {
            products.push(flat(&a.mul(b)));
        }
    }
    let prod = FpMatrix::from_columns(p, n * n, &products);
    span.hstack(&prod).rank() == r
}

/// Matches an indecomposable module against the catalog. The candidate is
/// read off the lowest-degree vector, then confirmed by an explicit
/// isomorphism.
pub fn label_indecomposable(s: &GradedUModule) -> Option<ModuleLabel> {
    let p = s.p();
    let pi = p as i64;
    let dim = s.dim();
    if dim == 0 {
        return None;
    }
    let dmin = *s.qdeg().iter().min()?;
    let lows: Vec<usize> = (0..dim).filter(|&i| s.qdeg()[i] == dmin).collect();
    if lows.len() != 1 {
        return None;
    }
    let w = s.weight(lows[0]) as i64;
    let t = s.tdeg()[0];
    let mut candidates = Vec::new();
    if dim == p as usize && w == pi - 1 {
        candidates.push(ModuleLabel::new(ModuleKind::St, -1, dmin + w, t));
    }
    if dim <= p as usize - 1 && dim as i64 == w + 1 {
        candidates.push(ModuleLabel::new(ModuleKind::L, w, dmin + w, t));
    }
    if dim == p as usize {
        candidates.push(ModuleLabel::new(ModuleKind::Delta, w, dmin + w, t));
        candidates.push(ModuleLabel::new(ModuleKind::Nabla, w, dmin + w, t));
    }
    if dim == 2 * p as usize {
        let mu0 = (-2 - w).rem_euclid(pi);
        if mu0 != pi - 1 {
            candidates.push(ModuleLabel::new(ModuleKind::P, mu0, dmin - (mu0 + 2 - 2 * pi), t));
        }
    }
    for c in candidates {
        let c = c.canonical(p);
        let built = c.build(p);
        if built.character() == s.character() && indecomposable_iso(&built, s).is_some() {
            return Some(c);
        }
    }
    None
}

/// Isomorphism between modules assumed indecomposable. Homs into a module
/// isomorphic to `a` correspond to End(a), whose non-units form a subspace
/// when End(a) is local, so some basis element is invertible.
fn indecomposable_iso(a: &GradedUModule, b: &GradedUModule) -> Option<FpMatrix> {
    if a.dim() != b.dim() {
        return None;
    }
    let homs = hom_basis(a, b, (0, 0));
    if let Some(f) = homs.iter().find(|f| f.rank() == a.dim()) {
        return Some(f.clone());
    }
    random_invertible(&homs, a.dim(), 0)
}

fn random_invertible(homs: &[FpMatrix], n: usize, seed: u64) -> Option<FpMatrix> {
    let first = homs.first()?;
    let p = first.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let mut f = FpMatrix::zeros(p, first.rows(), first.cols());
        for h in homs {
            f = f.add(&h.scale(rng.gen_range(0..p)));
        }
        if f.rows() == n && f.rank() == n {
            return Some(f);
        }
    }
    None
}

fn is_module_map(f: &FpMatrix, a: &GradedUModule, b: &GradedUModule) -> bool {
    f.mul(a.e()) == b.e().mul(f) && f.mul(a.f()) == b.f().mul(f) && f.mul(a.h()) == b.h().mul(f)
}

/// Decides graded isomorphism, returning an invertible intertwiner
/// `m1 → m2`. Tries homs directly, then matches indecomposable summands.
pub fn iso_test(m1: &GradedUModule, m2: &GradedUModule) -> Option<FpMatrix> {
    if m1.p() != m2.p() || m1.character() != m2.character() {
        return None;
    }
    let p = m1.p();
    let n = m1.dim();
    if n == 0 {
        return Some(FpMatrix::zeros(p, 0, 0));
    }
    let homs = hom_basis(m1, m2, (0, 0));
    if homs.is_empty() {
        return None;
    }
    if let Some(f) = homs.iter().find(|f| f.rank() == n) {
        return Some(f.clone());
    }
    if let Some(f) = random_invertible(&homs, n, 1) {
        return Some(f);
    }
    let s1 = decompose_unlabeled(m1, 0);
    let s2 = decompose_unlabeled(m2, 0);
    if s1.len() != s2.len() {
        return None;
    }
    let mut used = vec![false; s2.len()];
    let mut phi = FpMatrix::zeros(p, n, n);
    for a in &s1 {
        let ch = a.module.character();
        let mut found = false;
        for (j, b) in s2.iter().enumerate() {
            if used[j] || b.module.character() != ch {
                continue;
            }
            if let Some(f) = indecomposable_iso(&a.module, &b.module) {
                used[j] = true;
                phi = phi.add(&b.inclusion.mul(&f.mul(&a.projection)));
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    (phi.rank() == n && is_module_map(&phi, m1, m2)).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::super::{make_dual_verma, make_projective, make_simple, make_steinberg, make_verma};
    use super::*;

    fn sum_check(m: &GradedUModule, parts: &[Summand]) {
        let p = m.p();
        let n = m.dim();
        let mut id = FpMatrix::zeros(p, n, n);
        for s in parts {
            assert!(s.projection.mul(&s.inclusion).is_identity());
            // inclusion is a module map
            assert!(is_module_map(&s.inclusion, &s.module, m));
            id = id.add(&s.inclusion.mul(&s.projection));
        }
        assert!(id.is_identity());
        let rebuilt = GradedUModule::direct_sum(p, &parts.iter().map(|s| s.module.clone()).collect::<Vec<_>>());
        assert!(iso_test(&rebuilt, m).is_some());
    }

    #[test]
    fn verma_plus_dual() {
        for p in [3u64, 5, 7] {
            let m = make_verma(p, 1).oplus(&make_dual_verma(p, 0).shift(2, 1));
            let parts = decompose(&m);
            assert_eq!(parts.len(), 2);
            let labels: Vec<String> = parts.iter().map(|s| s.label.unwrap().to_string()).collect();
            assert_eq!(labels, vec!["Δ(1)".to_string(), "q^2 t^1 ∇(0)".to_string()]);
            sum_check(&m, &parts);
        }
    }

    #[test]
    fn l1_squared() {
        let l1 = make_simple(3, 1);
        let m = l1.tensor(&l1).unwrap();
        let parts = decompose(&m);
        let labels: Vec<String> = parts.iter().map(|s| s.label.unwrap().to_string()).collect();
        assert_eq!(labels, vec!["St".to_string(), "L(0)".to_string()]);
        sum_check(&m, &parts);
        for p in [5u64, 7] {
            let l1 = make_simple(p, 1);
            let m = l1.tensor(&l1).unwrap();
            let parts = decompose(&m);
            let mut labels: Vec<String> = parts.iter().map(|s| s.label.unwrap().to_string()).collect();
            labels.sort();
            assert_eq!(labels, vec!["L(0)".to_string(), "L(2)".to_string()]);
        }
    }

    #[test]
    fn projectives_are_indecomposable() {
        for p in [3u64, 5, 7] {
            for lambda in 0..p as i64 - 1 {
                let m = make_projective(p, lambda);
                let parts = decompose(&m);
                assert_eq!(parts.len(), 1);
                assert_eq!(parts[0].label, Some(ModuleLabel::new(ModuleKind::P, lambda, 0, 0)));
            }
        }
    }

    #[test]
    fn iso_examples() {
        for p in [3u64, 5, 7] {
            assert!(iso_test(&make_verma(p, 0), &make_dual_verma(p, 0)).is_none());
            let st = make_steinberg(p);
            let m = st.oplus(&make_verma(p, 1)).oplus(&st.shift(2, 0));
            let f = iso_test(&m, &m).unwrap();
            assert!(is_module_map(&f, &m, &m));
            // a scrambled copy: permute summands
            let m2 = st.shift(2, 0).oplus(&st).oplus(&make_verma(p, 1));
            let g = iso_test(&m, &m2).unwrap();
            assert!(is_module_map(&g, &m, &m2));
        }
    }

    #[test]
    fn steinberg_tensor_square() {
        for p in [3u64, 5] {
            let st = make_steinberg(p);
            let m = st.tensor(&st).unwrap();
            let parts = decompose(&m);
            assert!(parts.iter().all(|s| s.label.is_some()), "{:?}", parts.iter().map(|s| s.label).collect::<Vec<_>>());
            let total: usize = parts.iter().map(|s| s.module.dim()).sum();
            assert_eq!(total, (p * p) as usize);
            sum_check(&m, &parts);
        }
    }
}
