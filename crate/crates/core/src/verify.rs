//! Named verification cases: each runs one claim over a parameter grid and
//! reports pass/fail with short, deterministic details.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::morita::{
    base_point_independence, contractible_complex, is_rank_one_free, synthetic_free_complex, unknot_complex,
    unlink_complex, verify_unreduced_eq_reduced_tensor,
};
use crate::smash::{
    column_module_qdegs, decompose_pdg_module, phi_linearization, phi_matrix, random_pdg_module, slash_homology,
    smash_multiply, SmashElement,
};
use crate::trunc::check_frobenius_compat;
use crate::usl2::{
    acyclicity_check, decompose, filtration, is_projective_injective, iso_test, make_dual_verma, make_projective,
    make_steinberg, make_verma, steinberg_multiplicity, unimodality_check, FiltrationStyle,
};
use crate::zoo;

#[derive(Debug, Clone, Copy)]
pub struct CaseInfo {
    pub id: &'static str,
    pub claim: &'static str,
    /// Smallest prime the case accepts.
    pub min_p: u64,
}

pub const CASES: &[CaseInfo] = &[
    CaseInfo {
        id: "lemma-frobenius-compat",
        claim: "comultiplication and counit of k[x]/(x^p) commute with the p-differential",
        min_p: 2,
    },
    CaseInfo {
        id: "lemma-matrix-algebra",
        claim: "A#H is isomorphic to the graded matrix algebra M(p,k)",
        min_p: 2,
    },
    CaseInfo {
        id: "cor-contractible",
        claim: "every p-DG module over A is a sum of shifted column modules and is acyclic",
        min_p: 2,
    },
    CaseInfo {
        id: "thm-base-point",
        claim: "reduced homology does not depend on the choice of base point",
        min_p: 2,
    },
    CaseInfo {
        id: "prop-unreduced-reduced",
        claim: "unreduced homology is reduced homology tensored with the column module",
        min_p: 2,
    },
    CaseInfo {
        id: "catalog",
        claim: "Steinberg coincidences and the duality rules for baby Verma modules",
        min_p: 3,
    },
    CaseInfo {
        id: "prop-projective-criterion",
        claim: "a module is projective-injective iff it is free over k[E]/(E^p) and k[F]/(F^p)",
        min_p: 3,
    },
    CaseInfo {
        id: "ex-colored-circle",
        claim: "the 2-colored circle splits into projectives P(4λ+2-2p)",
        min_p: 3,
    },
    CaseInfo {
        id: "ex-theta",
        claim: "the theta web state space L(1) ⊗ H(circle colored 2) is projective-injective",
        min_p: 3,
    },
    CaseInfo {
        id: "ex-hopf-torus",
        claim: "Hopf link and (2,n) torus links: the ∇(-2) embedding is a module map and the sums are ∇-filtered",
        min_p: 3,
    },
    CaseInfo {
        id: "thm-unimodality",
        claim: "state spaces of thickness-1 diagrams have parity unimodal gdim_p",
        min_p: 3,
    },
    CaseInfo {
        id: "thm-steinberg",
        claim: "slice knots carry a Steinberg summand in homological degree 0",
        min_p: 3,
    },
    CaseInfo {
        id: "thm-split",
        claim: "split links carry commuting sl(2) actions with free two-variable dot action",
        min_p: 3,
    },
];

pub fn case_info(id: &str) -> Option<&'static CaseInfo> {
    CASES.iter().find(|c| c.id == id)
}

/// Resolves "all" or a single id.
pub fn select(selector: &str) -> Result<Vec<&'static CaseInfo>> {
    if selector == "all" {
        return Ok(CASES.iter().collect());
    }
    case_info(selector)
        .map(|c| vec![c])
        .ok_or_else(|| Error::Parse(format!("unknown verification case {selector:?}")))
}

#[derive(Debug, Clone)]
pub struct CaseParams {
    pub primes: Vec<u64>,
    pub seed: u64,
    pub twists: Vec<i64>,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams { primes: vec![3, 5, 7], seed: 0, twists: vec![0, 1, 2] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub claim: String,
    pub primes: Vec<u64>,
    pub passed: bool,
    pub details: Vec<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

/// Runs one case over the primes it accepts; primes below its minimum are
/// listed as skipped.
pub fn run_case(id: &str, params: &CaseParams) -> Result<CaseResult> {
    let info = case_info(id).ok_or_else(|| Error::Parse(format!("unknown verification case {id:?}")))?;
    let start = Instant::now();
    let mut details = Vec::new();
    let mut passed = true;
    let mut primes = Vec::new();
    for &p in &params.primes {
        crate::fp::FieldSpec::new(p)?;
        if p < info.min_p {
            details.push(format!("p={p}: skipped (needs p >= {})", info.min_p));
            continue;
        }
        primes.push(p);
        let seed = params.seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let (ok, lines) = match info.id {
            "lemma-frobenius-compat" => frobenius(p)?,
            "lemma-matrix-algebra" => matrix_algebra(p)?,
            "cor-contractible" => contractible(p, seed)?,
            "thm-base-point" => base_point(p, seed)?,
            "prop-unreduced-reduced" => unreduced(p, seed)?,
            "catalog" => catalog(p),
            "prop-projective-criterion" => projective_criterion(p),
            "ex-colored-circle" => colored_circle(p)?,
            "ex-theta" => theta(p)?,
            "ex-hopf-torus" => hopf_torus(p, &params.twists)?,
            "thm-unimodality" => unimodality(p, &params.twists)?,
            "thm-steinberg" => steinberg(p)?,
            "thm-split" => split(p)?,
            _ => unreachable!("registry and dispatch agree"),
        };
        passed &= ok;
        details.extend(lines.into_iter().map(|l| format!("p={p}: {l}")));
    }
    Ok(CaseResult {
        id: info.id.into(),
        claim: info.claim.into(),
        primes,
        passed,
        details,
        runtime: start.elapsed(),
    })
}

type Outcome = Result<(bool, Vec<String>)>;

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn frobenius(p: u64) -> Outcome {
    let r = check_frobenius_compat(p)?;
    let mut line = format!("{} ({} basis elements)", mark(r.passed), r.checked);
    if let Some(c) = &r.counterexample {
        line.push_str(&format!(", counterexample {c}"));
    }
    Ok((r.passed, vec![line]))
}

/// The four images displayed for p = 2, in the basis (x v_0, v_0).
pub fn phi_p2_expected() -> [(SmashElement, FpMatrix); 4] {
    let p = 2;
    let m = |rows: [[i64; 2]; 2]| FpMatrix::from_rows(p, &rows);
    let x = SmashElement::x(p);
    let d = SmashElement::d(p);
    let xd = smash_multiply(&x, &d).expect("same p");
    [
        (SmashElement::one(p), m([[1, 0], [0, 1]])),
        (x, m([[0, 1], [0, 0]])),
        (d, m([[0, 0], [1, 0]])),
        (xd, m([[1, 0], [0, 0]])),
    ]
}

fn matrix_algebra(p: u64) -> Outcome {
    let pu = p as usize;
    let n = pu * pu;
    let bijective = phi_linearization(p).rank() == n;
    let basis: Vec<SmashElement> = (0..n).map(|k| SmashElement::basis(p, k / pu, k % pu)).collect();
    let images: Vec<FpMatrix> = basis.iter().map(phi_matrix).collect();
    let mut multiplicative = true;
    'outer: for (a, pa) in basis.iter().zip(&images) {
        for (b, pb) in basis.iter().zip(&images) {
            if phi_matrix(&smash_multiply(a, b)?) != pa.mul(pb) {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    // x^i ∂^j has degree 2(i-j); its image must only have entries E_{r,c}
    // with qdeg[r] - qdeg[c] equal to that
    let q = column_module_qdegs(p);
    let graded = images.iter().enumerate().all(|(k, m)| {
        let deg = 2 * ((k / pu) as i64 - (k % pu) as i64);
        m.nonzero_entries().all(|(r, c, _)| q[r] - q[c] == deg)
    });
    let unit = phi_matrix(&SmashElement::one(p)).is_identity();
    let mut ok = bijective && multiplicative && graded && unit;
    let mut lines = vec![format!(
        "bijective {}, multiplicative {}, graded {}, unital {}",
        mark(bijective),
        mark(multiplicative),
        mark(graded),
        mark(unit)
    )];
    if p == 2 {
        let displayed = phi_p2_expected().iter().all(|(a, m)| phi_matrix(a) == *m);
        ok &= displayed;
        lines.push(format!("displayed p=2 matrices {}", mark(displayed)));
    }
    Ok((ok, lines))
}

fn contractible(p: u64, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 100;
    let mut decomposed = 0;
    let mut acyclic = 0;
    for _ in 0..trials {
        let summands = rng.gen_range(1..=5);
        let (m, shifts) = random_pdg_module(p, summands, &mut rng);
        if decompose_pdg_module(&m).map(|d| d.shifts == shifts).unwrap_or(false) {
            decomposed += 1;
        }
        if slash_homology(&m.d, p).iter().all(|&h| h == 0) {
            acyclic += 1;
        }
    }
    let ok = decomposed == trials && acyclic == trials;
    Ok((ok, vec![format!("{decomposed}/{trials} split into column modules, {acyclic}/{trials} acyclic")]))
}

fn base_point(p: u64, seed: u64) -> Outcome {
    let unlink = base_point_independence(&unlink_complex(p)?)?;
    let free = is_rank_one_free(&unlink.y_first, p) && is_rank_one_free(&unlink.y_second, p);
    let mut lines = vec![format!(
        "2-unlink: isomorphic reductions {}, both k[y]/(y^p) {}",
        mark(unlink.passed),
        mark(free)
    )];
    if let Some(f) = &unlink.failure {
        lines.push(format!("2-unlink: {f}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 50;
    let mut good = 0;
    for k in 0..trials {
        let c = synthetic_free_complex(p, &mut rng)?;
        let r = base_point_independence(&c)?;
        if r.passed {
            good += 1;
        } else if let Some(f) = r.failure {
            lines.push(format!("synthetic #{k}: {f}"));
        }
    }
    lines.push(format!("{good}/{trials} synthetic free complexes"));
    Ok((unlink.passed && free && good == trials, lines))
}

fn unreduced(p: u64, seed: u64) -> Outcome {
    let mut complexes = vec![
        ("unknot".to_string(), unknot_complex(p)?),
        ("2-unlink".to_string(), unlink_complex(p)?),
        ("contractible".to_string(), contractible_complex(p)?),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..50 {
        complexes.push((format!("synthetic #{k}"), synthetic_free_complex(p, &mut rng)?));
    }
    let mut ok = true;
    let mut good = 0;
    let mut lines = Vec::new();
    for (name, c) in &complexes {
        let r = verify_unreduced_eq_reduced_tensor(c, 0)?;
        if r.passed {
            good += 1;
        } else {
            ok = false;
            lines.push(format!(
                "{name}: termwise {}, free {}, homology {}",
                mark(r.termwise),
                mark(r.free_terms),
                mark(r.homology_matches)
            ));
        }
    }
    lines.insert(0, format!("{good}/{} complexes", complexes.len()));
    Ok((ok, lines))
}

fn catalog(p: u64) -> (bool, Vec<String>) {
    let pi = p as i64;
    let st = make_steinberg(p);
    let coincide = iso_test(&make_verma(p, pi - 1), &st).is_some() && iso_test(&make_dual_verma(p, pi - 1), &st).is_some();
    let mut dual_failures = Vec::new();
    let mut omega_failures = Vec::new();
    for lambda in -2 * pi..=2 * pi {
        let mirror = 2 * pi - 2 - lambda;
        if iso_test(&make_verma(p, lambda).dual(), &make_verma(p, mirror)).is_none()
            || iso_test(&make_dual_verma(p, lambda).dual(), &make_dual_verma(p, mirror)).is_none()
        {
            dual_failures.push(lambda);
        }
        if iso_test(&make_verma(p, lambda).cartan_twist(), &make_dual_verma(p, mirror)).is_none() {
            omega_failures.push(lambda);
        }
    }
    let ok = coincide && dual_failures.is_empty() && omega_failures.is_empty();
    let range = format!("λ in [{}, {}]", -2 * pi, 2 * pi);
    let lines = vec![
        format!("Δ(p-1) ≅ ∇(p-1) ≅ L(p-1) {}", mark(coincide)),
        format!("Δ(λ)* ≅ Δ(2p-2-λ), ∇(λ)* ≅ ∇(2p-2-λ), {range}: failures {dual_failures:?}"),
        format!("Δ(λ)^ω ≅ ∇(2p-2-λ), {range}: failures {omega_failures:?}"),
    ];
    (ok, lines)
}

fn projective_criterion(p: u64) -> (bool, Vec<String>) {
    let pi = p as i64;
    let proj_ok = (0..pi).all(|l| is_projective_injective(&make_projective(p, l)));
    let mut verma_wrong = Vec::new();
    for lambda in -2 * pi..=2 * pi {
        let expect = lambda.rem_euclid(pi) == pi - 1;
        if is_projective_injective(&make_verma(p, lambda)) != expect {
            verma_wrong.push(lambda);
        }
    }
    let st = make_steinberg(p);
    let sq = st.tensor(&st).expect("same p");
    let parts = decompose(&sq);
    let sq_ok = is_projective_injective(&sq) && parts.iter().all(|s| is_projective_injective(&s.module));
    let ok = proj_ok && verma_wrong.is_empty() && sq_ok;
    (
        ok,
        vec![
            format!("P(λ), λ in [0, p): projective-injective {}", mark(proj_ok)),
            format!("Δ(λ) projective exactly when λ ≡ -1: mismatches {verma_wrong:?}"),
            format!("St ⊗ St and its {} summands {}", parts.len(), mark(sq_ok)),
        ],
    )
}

fn colored_circle(p: u64) -> Outcome {
    let c = zoo::colored_circle_2(p)?;
    let parts = decompose(&c.module);
    let mut got: Vec<String> =
        parts.iter().map(|s| s.label.map(|l| l.to_string()).unwrap_or_else(|| format!("[unlabeled dim {}]", s.module.dim()))).collect();
    got.sort();
    let mut want: Vec<String> = zoo::colored_circle_expected(p).iter().map(|l| l.to_string()).collect();
    want.sort();
    let total: usize = parts.iter().map(|s| s.module.dim()).sum();
    let dims_ok = total == (p * (p - 1) / 2) as usize;
    let strata = zoo::colored_circle_kernel_strata(p)?;
    let ok = got == want && dims_ok;
    Ok((
        ok,
        vec![
            format!("decomposition {} (expected {})", got.join(" ⊕ "), want.join(" ⊕ ")),
            format!("summand dimensions sum to {total} {}", mark(dims_ok)),
            format!(
                "ker ∂_- has dim {}; {} vectors v_(m,n) in it: {}; s_(n,n) killed modulo the v's for n in {:?}",
                strata.kernel_dim,
                strata.v_count,
                strata.v_vectors_in_kernel,
                strata.diagonal_killed_modulo
            ),
        ],
    ))
}

fn theta(p: u64) -> Outcome {
    let t = zoo::theta_expected(p)?;
    let dim_ok = t.module.dim() == (p * (p - 1)) as usize;
    let proj = is_projective_injective(&t.module);
    let mut lines = vec![format!("dim {} {}, projective-injective {}", t.module.dim(), mark(dim_ok), mark(proj))];
    if p == 3 {
        let w = is_projective_injective(&zoo::theta_p3_witness());
        lines.push(format!("t1 = t2 = 2 stand-in L(1) ⊗ ∇(1) is projective: {w}"));
    }
    Ok((dim_ok && proj, lines))
}

fn hopf_torus(p: u64, twists: &[i64]) -> Outcome {
    let pi = p as i64;
    let mut ok = true;
    let mut lines = Vec::new();
    for &t1 in twists {
        let t2 = 1 - t1;
        let e = zoo::hopf_embedding(p, 2 * t1 - 3 + pi, 2 * t2 - 3 + pi, -2)?;
        let lit = zoo::hopf_embedding(p, 2 * t1 - 3, 2 * t2 - 3, -2)?;
        let emb_ok = e.injective && e.equivariant && e.degree == Some(0);
        let hopf = zoo::hopf(p, t1)?;
        let torus2 = zoo::torus_2n(p, 2, t1)?;
        let same = iso_test(&torus2.module, &hopf.module).is_some();
        let mut battery = Vec::new();
        for n in 2..=7 {
            let t = zoo::torus_2n(p, n, t1)?;
            let good = t.module.validate().passed()
                && unimodality_check(&t.module).passed
                && acyclicity_check(&t.module)
                && filtration(&t.module, FiltrationStyle::Nabla).is_some();
            if !good {
                battery.push(n);
            }
        }
        ok &= emb_ok && same && battery.is_empty();
        lines.push(format!(
            "t1={t1}: embedding injective {} equivariant {} degree {:?} (literal lift degree {:?}); T(2,2) ≅ Hopf {}; n in 2..=7 failures {battery:?}",
            mark(e.injective),
            mark(e.equivariant),
            e.degree,
            lit.degree,
            mark(same)
        ));
    }
    Ok((ok, lines))
}

fn unimodality(p: u64, twists: &[i64]) -> Outcome {
    let mut entries = vec![zoo::unknot(p)?, zoo::unlink(p, 2)?];
    for &t1 in twists {
        entries.push(zoo::hopf(p, t1)?);
        for n in 3..=7 {
            entries.push(zoo::torus_2n(p, n, t1)?);
        }
    }
    let failed: Vec<String> = entries
        .iter()
        .filter(|e| !unimodality_check(&e.module).passed)
        .map(|e| format!("{} n={:?} t1={:?}", e.name, e.n, e.t1))
        .collect();
    let circle = unimodality_check(&zoo::colored_circle_2(p)?.module).passed;
    Ok((
        failed.is_empty(),
        vec![
            format!("{} thickness-1 state spaces, failures {failed:?}", entries.len()),
            format!("colored circle (no thickness-1 edge) unimodal: {circle}"),
        ],
    ))
}

fn steinberg(p: u64) -> Outcome {
    let count = |m: &crate::usl2::GradedUModule| steinberg_multiplicity(m, 0).values().sum::<usize>();
    let unknot = count(&zoo::unknot(p)?.module);
    let t3 = count(&zoo::torus_2n(p, 3, 1)?.module);
    let t5 = count(&zoo::torus_2n(p, 5, 1)?.module);
    let ok = unknot == 1 && t3 == 0 && t5 == 0;
    Ok((ok, vec![format!("Steinberg summands at t=0: unknot {unknot}, T(2,3) {t3}, T(2,5) {t5}")]))
}

fn split(p: u64) -> Outcome {
    let u = zoo::split_detection_check(&zoo::unlink(p, 2)?);
    let h = zoo::split_detection_check(&zoo::hopf(p, 1)?);
    let ok = u.passed && !h.free;
    Ok((
        ok,
        vec![
            format!(
                "2-unlink: relations {}, triples commute {}, free {}",
                mark(u.relations),
                mark(u.triples_commute),
                mark(u.free)
            ),
            format!("Hopf link with one shared dot: free {} (expected false)", h.free),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = CASES.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CASES.len());
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(select("nonsense").is_err());
        assert!(run_case("nonsense", &CaseParams::default()).is_err());
        assert_eq!(select("all").unwrap().len(), CASES.len());
    }

    #[test]
    fn small_cases_pass() {
        let params = CaseParams { primes: vec![2, 3], seed: 7, twists: vec![1] };
        for id in ["lemma-frobenius-compat", "lemma-matrix-algebra", "thm-steinberg", "thm-split"] {
            let r = run_case(id, &params).unwrap();
            assert!(r.passed, "{id}: {:?}", r.details);
        }
        let r = run_case("thm-split", &params).unwrap();
        assert_eq!(r.primes, vec![3]);
        assert!(r.details[0].contains("skipped"));
    }

    #[test]
    fn deterministic_details() {
        let params = CaseParams { primes: vec![3], seed: 11, twists: vec![0] };
        let a = run_case("cor-contractible", &params).unwrap();
        let b = run_case("cor-contractible", &params).unwrap();
        assert_eq!(a.details, b.details);
    }
}
