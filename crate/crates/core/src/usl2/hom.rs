use std::collections::HashMap;

use super::{GradedUModule, Key};
use crate::fp::{self, FpMatrix};

/// Basis of the homogeneous module maps `m1 → m2` of bidegree `(qk, tj)`.
/// Unknowns are restricted to entries between compatible keys, so
/// commutation with H is automatic; E and F give the linear constraints.
pub fn hom_basis(m1: &GradedUModule, m2: &GradedUModule, (qk, tj): (i64, i64)) -> Vec<FpMatrix> {
    assert_eq!(m1.p(), m2.p(), "hom between different characteristics");
    let p = m1.p();
    let (n1, n2) = (m1.dim(), m2.dim());
    let target = |k: Key| (k.0 + qk, k.1 + tj, k.2);
    let blocks2 = m2.key_blocks();
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for c in 0..n1 {
        if let Some(rows) = blocks2.get(&target(m1.key(c))) {
            for &r in rows {
                vars.push((r, c));
            }
        }
    }
    if vars.is_empty() {
        return Vec::new();
    }
    // sparse columns of the actions
    let cols_of = |m: &FpMatrix, n: usize| {
        let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for (r, c, v) in m.nonzero_entries() {
            out[c].push((r, v));
        }
        out
    };
    let rows_of = |m: &FpMatrix, n: usize| {
        let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for (r, c, v) in m.nonzero_entries() {
            out[r].push((c, v));
        }
        out
    };
    let mut equations: Vec<Vec<u64>> = Vec::new();
    for (a1, a2) in [(m1.e(), m2.e()), (m1.f(), m2.f())] {
        let a1_rows = rows_of(a1, n1);
        let a2_cols = cols_of(a2, n2);
        // equation entries (r, c) of φ A1 - A2 φ, accumulated sparsely
        let mut eqs: HashMap<(usize, usize), HashMap<usize, u64>> = HashMap::new();
        for (idx, &(r, k)) in vars.iter().enumerate() {
            // φ[r,k] A1[k,c] contributes to (r, c)
            for &(c, v) in &a1_rows[k] {
                let e = eqs.entry((r, c)).or_default().entry(idx).or_insert(0);
                *e = (*e + v) % p;
            }
            // -A2[r',r] φ[r,k] contributes to (r', k)
            for &(r2, v) in &a2_cols[r] {
                let e = eqs.entry((r2, k)).or_default().entry(idx).or_insert(0);
                *e = (*e + fp::neg(p, v)) % p;
            }
        }
        let mut keys: Vec<(usize, usize)> = eqs.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let row = &eqs[&key];
            if row.values().all(|&v| v == 0) {
                continue;
            }
            let mut dense = vec![0u64; vars.len()];
            for (&i, &v) in row {
                dense[i] = v;
            }
            equations.push(dense);
        }
    }
    let kernel = if equations.is_empty() {
        FpMatrix::identity(p, vars.len())
    } else {
        let rows: Vec<Vec<i64>> = equations.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        FpMatrix::from_rows(p, &rows).kernel_basis()
    };
    (0..kernel.cols())
        .map(|j| {
            let mut m = FpMatrix::zeros(p, n2, n1);
            for (idx, &(r, c)) in vars.iter().enumerate() {
                m.set(r, c, kernel.get(idx, j));
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{make_dual_verma, make_simple, make_steinberg, make_verma};
    use super::*;

    #[test]
    fn weight_mismatch_gives_zero() {
        assert!(hom_basis(&make_simple(5, 0), &make_simple(5, 1), (0, 0)).is_empty());
    }

    #[test]
    fn verma_endomorphisms_are_scalars() {
        for p in [3u64, 5, 7] {
            for lambda in 0..p as i64 - 1 {
                let d = make_verma(p, lambda);
                let homs = hom_basis(&d, &d, (0, 0));
                assert_eq!(homs.len(), 1, "p={p} λ={lambda}");
                assert!(homs[0].is_identity());
            }
            let st = make_steinberg(p);
            assert_eq!(hom_basis(&st, &st, (0, 0)).len(), 1);
        }
    }

    #[test]
    fn homs_commute() {
        let p = 5;
        let a = make_verma(p, 1);
        let b = make_dual_verma(p, 1);
        for (m1, m2) in [(&a, &b), (&b, &a)] {
            for f in hom_basis(m1, m2, (0, 0)) {
                assert_eq!(f.mul(m1.e()), m2.e().mul(&f));
                assert_eq!(f.mul(m1.f()), m2.f().mul(&f));
                assert_eq!(f.mul(m1.h()), m2.h().mul(&f));
            }
        }
    }

    #[test]
    fn shifted_hom() {
        let p = 3;
        let l = make_steinberg(p);
        assert_eq!(hom_basis(&l, &l.shift(2, 1), (2, 1)).len(), 1);
        assert!(hom_basis(&l, &l.shift(2, 1), (0, 0)).is_empty());
    }
}
