use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sl2p::morita::{synthetic_free_complex, UChainComplex};
use sl2p::usl2::{
    decompose, gdim, is_projective_injective, iso_test, make_dual_verma, make_simple, make_steinberg, make_verma,
    GradedUModule,
};

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7)]
}

fn catalog_module(p: u64, kind: u8, lambda: i64) -> GradedUModule {
    match kind {
        0 => make_verma(p, lambda),
        1 => make_dual_verma(p, lambda),
        _ => make_simple(p, lambda),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn module_json_round_trip(p in prime(), kind in 0u8..3, lambda in -20i64..20, qk in -6i64..6, tj in -3i64..3) {
        let m = catalog_module(p, kind, lambda).shift(qk, tj);
        let back = GradedUModule::from_json(&m.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn double_dual_is_identity(p in prime(), kind in 0u8..3, lambda in -20i64..20) {
        let m = catalog_module(p, kind, lambda);
        prop_assert!(iso_test(&m.dual().dual(), &m).is_some());
    }

    #[test]
    fn tensor_gdim_is_multiplicative(p in prime(), a in -8i64..8, b in -8i64..8) {
        let (m1, m2) = (make_verma(p, a), make_simple(p, b));
        let t = m1.tensor(&m2).unwrap();
        prop_assert!(t.validate().passed());
        let (g1, g2, gt) = (gdim(&m1), gdim(&m2), gdim(&t));
        for (&(t0, q), &c) in &gt.coeffs {
            let mut expect = 0;
            for (&(t1, q1), &c1) in &g1.coeffs {
                if let Some(&c2) = g2.coeffs.get(&(t0 - t1, q - q1)) {
                    expect += c1 * c2;
                }
            }
            prop_assert_eq!(c, expect);
        }
    }

    #[test]
    fn steinberg_tensor_ideal(p in prime(), kind in 0u8..3, lambda in -8i64..8) {
        let m = catalog_module(p, kind, lambda).tensor(&make_steinberg(p)).unwrap();
        prop_assert!(is_projective_injective(&m));
    }

    #[test]
    fn decomposition_reassembles(p in prime(), a in -6i64..6, b in -6i64..6) {
        let m = make_dual_verma(p, a).oplus(&make_simple(p, b).tensor(&make_verma(p, a)).unwrap());
        let parts = decompose(&m);
        let dims: usize = parts.iter().map(|s| s.module.dim()).sum();
        prop_assert_eq!(dims, m.dim());
        for s in &parts {
            prop_assert!(s.projection.mul(&s.inclusion).is_identity());
            prop_assert!(s.module.validate().passed());
        }
    }

    #[test]
    fn complex_json_round_trip(seed in any::<u64>(), p in prop_oneof![Just(3u64), Just(5)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = synthetic_free_complex(p, &mut rng).unwrap();
        let back = UChainComplex::from_json(&c.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.homology(), c.homology());
        prop_assert_eq!(back.total_differential(), c.total_differential());
    }
}
