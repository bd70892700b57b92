use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::decompose::decompose_unlabeled;
use super::GradedUModule;
use crate::fp::{self, FpMatrix};

fn euclid(p: u64, lambda: i64) -> (i64, i64) {
    let p = p as i64;
    (lambda.rem_euclid(p), lambda.div_euclid(p))
}

/// Baby Verma module Δ(λ) on u_0..u_{p-1}: `E u_i = (λ-i+1) u_{i-1}`,
/// `F u_i = (i+1) u_{i+1}`, `H u_i = (λ-2i) u_i`, qdeg(u_i) = -λ + 2i.
pub fn make_verma(p: u64, lambda: i64) -> GradedUModule {
    let n = p as usize;
    let mut e = FpMatrix::zeros(p, n, n);
    let mut f = FpMatrix::zeros(p, n, n);
    for i in 0..n {
        if i > 0 {
            e.set(i - 1, i, fp::reduce(p, lambda - i as i64 + 1));
        }
        if i + 1 < n {
            f.set(i + 1, i, fp::reduce(p, i as i64 + 1));
        }
    }
    let weights: Vec<i64> = (0..n as i64).map(|i| lambda - 2 * i).collect();
    let qdeg = (0..n as i64).map(|i| -lambda + 2 * i).collect();
    GradedUModule::from_weights(p, qdeg, vec![0; n], e, f, &weights)
}

/// Dual baby Verma module ∇(λ) on v_0..v_{p-1}: `E v_i = -i v_{i-1}`,
/// `F v_i = (-λ+i) v_{i+1}`, same weights and degrees as Δ(λ).
pub fn make_dual_verma(p: u64, lambda: i64) -> GradedUModule {
    let n = p as usize;
    let mut e = FpMatrix::zeros(p, n, n);
    let mut f = FpMatrix::zeros(p, n, n);
    for i in 0..n {
        if i > 0 {
            e.set(i - 1, i, fp::reduce(p, -(i as i64)));
        }
        if i + 1 < n {
            f.set(i + 1, i, fp::reduce(p, -lambda + i as i64));
        }
    }
    let weights: Vec<i64> = (0..n as i64).map(|i| lambda - 2 * i).collect();
    let qdeg = (0..n as i64).map(|i| -lambda + 2 * i).collect();
    GradedUModule::from_weights(p, qdeg, vec![0; n], e, f, &weights)
}

/// Simple module L(λ): for λ_0 in [0, p) the quotient of Δ(λ_0) by
/// u_{λ_0+1}, ..., u_{p-1}; in general q^{-pμ_1} L(μ_0).
pub fn make_simple(p: u64, lambda: i64) -> GradedUModule {
    let (mu0, mu1) = euclid(p, lambda);
    let d = make_verma(p, mu0);
    let keep: Vec<usize> = (0..=mu0 as usize).collect();
    let weights: Vec<i64> = keep.iter().map(|&i| mu0 - 2 * i as i64).collect();
    let m = GradedUModule::from_weights(
        p,
        keep.iter().map(|&i| d.qdeg()[i]).collect(),
        vec![0; keep.len()],
        d.e().submatrix(&keep, &keep),
        d.f().submatrix(&keep, &keep),
        &weights,
    );
    m.shift(-(p as i64) * mu1, 0)
}

/// The Steinberg module L(p-1).
pub fn make_steinberg(p: u64) -> GradedUModule {
    make_simple(p, p as i64 - 1)
}

fn projective_cache() -> &'static Mutex<HashMap<(u64, i64), GradedUModule>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, i64), GradedUModule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Indecomposable projective P(λ). For λ_0 ≤ p-2 this is the summand of
/// L(p-1-λ_0) ⊗ L(p-1) containing its extreme weight vector (dimension 2p,
/// weights 2p-2-λ_0 down to λ_0+2-2p); for λ_0 = p-1 it is the Steinberg
/// module. General λ is shifted by q^{-pμ_1}.
pub fn make_projective(p: u64, lambda: i64) -> GradedUModule {
    let (mu0, mu1) = euclid(p, lambda);
    let shift = -(p as i64) * mu1;
    if mu0 == p as i64 - 1 {
        return make_steinberg(p).shift(shift, 0);
    }
    if let Some(m) = projective_cache().lock().expect("cache").get(&(p, mu0)) {
        return m.shift(shift, 0);
    }
    let t = make_simple(p, p as i64 - 1 - mu0).tensor(&make_steinberg(p)).expect("same p");
    let lowest = *t.qdeg().iter().min().expect("nonempty");
    let summand = decompose_unlabeled(&t, 0)
        .into_iter()
        .find(|s| s.module.qdeg().contains(&lowest))
        .expect("extreme vector lies in some summand");
    let m = summand.module;
    projective_cache().lock().expect("cache").insert((p, mu0), m.clone());
    m.shift(shift, 0)
}

#[cfg(test)]
mod tests {
    use super::super::{filtration, iso_test, is_projective_injective, FiltrationStyle};
    use super::*;

    #[test]
    fn verma_formulas() {
        let p = 5;
        let d = make_verma(p, 2);
        assert!(d.validate().passed());
        // E u_1 = 2 u_0, F u_0 = u_1, H u_1 = 0
        assert_eq!(d.e().get(0, 1), 2);
        assert_eq!(d.f().get(1, 0), 1);
        assert_eq!(d.weight(1), 0);
        let n = make_dual_verma(p, 2);
        assert!(n.validate().passed());
        // F v_0 = -2 v_1, E v_2 = -2 v_1
        assert_eq!(n.f().get(1, 0), 3);
        assert_eq!(n.e().get(1, 2), 3);
    }

    #[test]
    fn constructors_validate() {
        for p in [3u64, 5, 7, 11] {
            let pi = p as i64;
            for lambda in -2 * pi..=2 * pi {
                for m in [make_verma(p, lambda), make_dual_verma(p, lambda), make_simple(p, lambda)] {
                    assert!(m.validate().passed(), "p={p} λ={lambda}");
                    assert!(m.weight_degree_aligned());
                }
            }
        }
        for p in [3u64, 5, 7] {
            let pi = p as i64;
            for lambda in -2 * pi..=2 * pi {
                let m = make_projective(p, lambda);
                assert!(m.validate().passed(), "p={p} λ={lambda}");
                assert!(m.weight_degree_aligned());
            }
        }
    }

    #[test]
    fn simple_examples() {
        let l1 = make_simple(5, 1);
        assert_eq!(l1.dim(), 2);
        // w_{-1} (qdeg 1) and w_1 (qdeg -1): F w_1 = w_{-1}, E w_{-1} = w_1
        assert_eq!(l1.qdeg(), &[-1, 1]);
        assert_eq!(l1.f().get(1, 0), 1);
        assert_eq!(l1.e().get(0, 1), 1);
        assert_eq!((l1.weight(0), l1.weight(1)), (1, 4));
        let l0 = make_simple(5, 0);
        assert_eq!(l0.dim(), 1);
        assert!(l0.e().is_zero() && l0.f().is_zero() && l0.h().is_zero());
        let l7 = make_simple(5, 7);
        assert_eq!(l7, make_simple(5, 2).shift(-5, 0));
    }

    #[test]
    fn projective_shape() {
        for p in [3u64, 5, 7] {
            for mu0 in 0..p as i64 - 1 {
                let m = make_projective(p, mu0);
                assert_eq!(m.dim(), 2 * p as usize);
                let hi = 2 * p as i64 - mu0 - 2;
                assert_eq!(*m.qdeg().iter().min().unwrap(), -hi);
                assert_eq!(*m.qdeg().iter().max().unwrap(), hi);
                assert!(is_projective_injective(&m));
                assert_eq!(filtration(&m, FiltrationStyle::Delta).map(|f| f.len()), Some(2));
            }
        }
        let st = make_projective(3, -4);
        assert_eq!(st.dim(), 3);
        assert_eq!(st, make_steinberg(3).shift(6, 0));
    }

    #[test]
    fn projective_zero_p3_head_and_socle() {
        let m = make_projective(3, 0);
        assert_eq!(m.dim(), 6);
        // invariants: ker E ∩ ker F is one-dimensional, of weight 0
        let both = m.e().vstack(m.f()).kernel_basis();
        assert_eq!(both.cols(), 1);
        let i = (0..6).find(|&i| both.get(i, 0) != 0).unwrap();
        assert_eq!(m.weight(i), 0);
    }

    #[test]
    fn steinberg_coincidences() {
        for p in [3u64, 5, 7] {
            let l = make_steinberg(p);
            assert!(iso_test(&make_verma(p, p as i64 - 1), &l).is_some());
            assert!(iso_test(&make_dual_verma(p, p as i64 - 1), &l).is_some());
        }
    }
}
