//! Chain complexes of p-DG modules carrying base-point actions, their Morita
//! reduction `C ⊗_B V` (realized as `C / x C`), and the checks relating
//! reduced and unreduced homology.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, QuotientMap};
use crate::smash::{decompose_pdg_module, free_over_trunc, PdgModule};
use crate::trunc::{multiplication_matrix, witt_matrix, TruncAlgebraSpec, WittOperator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub t: i64,
    pub qdeg: Vec<i64>,
}

/// Actions of a base-point variable x and of ∂ on the total space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePoint {
    pub x: FpMatrix,
    pub d: FpMatrix,
}

/// Cochain complex `C_0 → C_1 → ...` with consecutive cohomological degrees.
/// `differentials[k]` maps term k to term k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UChainComplex {
    pub p: u64,
    pub terms: Vec<Term>,
    pub differentials: Vec<FpMatrix>,
    pub basepoints: Vec<BasePoint>,
}

/// Graded homology: for each term, q-degree -> dimension.
pub type GradedHomology = Vec<(i64, BTreeMap<i64, usize>)>;

impl UChainComplex {
    pub fn new(p: u64, terms: Vec<Term>, differentials: Vec<FpMatrix>, basepoints: Vec<BasePoint>) -> Result<Self> {
        let c = UChainComplex { p, terms, differentials, basepoints };
        c.validate()?;
        Ok(c)
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.qdeg.len()).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for t in &self.terms {
            off.push(off.last().unwrap() + t.qdeg.len());
        }
        off
    }

    pub fn total_qdeg(&self) -> Vec<i64> {
        self.terms.iter().flat_map(|t| t.qdeg.iter().copied()).collect()
    }

    /// The differential as a single endomorphism of the total space.
    pub fn total_differential(&self) -> FpMatrix {
        let off = self.offsets();
        let n = self.total_dim();
        let mut m = FpMatrix::zeros(self.p, n, n);
        for (k, d) in self.differentials.iter().enumerate() {
            for (r, c, v) in d.nonzero_entries() {
                m.set(off[k + 1] + r, off[k] + c, v);
            }
        }
        m
    }

    /// Block of a total-space operator on term `k`.
    pub fn term_block(&self, op: &FpMatrix, k: usize) -> FpMatrix {
        let off = self.offsets();
        let idx: Vec<usize> = (off[k]..off[k + 1]).collect();
        op.submatrix(&idx, &idx)
    }

    pub fn basepoint(&self, i: usize) -> Result<&BasePoint> {
        self.basepoints.get(i).ok_or(Error::MissingBasePoint(i))
    }

    /// The p-DG module structure of term `k` at base point `i`.
    pub fn term_module(&self, k: usize, i: usize) -> Result<PdgModule> {
        let bp = self.basepoint(i)?;
        PdgModule::new(self.p, self.terms[k].qdeg.clone(), self.term_block(&bp.x, k), self.term_block(&bp.d, k))
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if self.terms.is_empty() {
            if self.differentials.is_empty() {
                return Ok(());
            }
            return bad("differentials without terms".into());
        }
        if self.differentials.len() + 1 != self.terms.len() {
            return bad(format!("{} terms need {} differentials", self.terms.len(), self.terms.len() - 1));
        }
        for w in self.terms.windows(2) {
            if w[1].t != w[0].t + 1 {
                return bad("cohomological degrees must be consecutive".into());
            }
        }
        for (k, d) in self.differentials.iter().enumerate() {
            let (src, dst) = (&self.terms[k].qdeg, &self.terms[k + 1].qdeg);
            if d.rows() != dst.len() || d.cols() != src.len() || d.p() != p {
                return bad(format!("differential {k} has wrong shape"));
            }
            if let Some((r, c, _)) = d.nonzero_entries().find(|&(r, c, _)| dst[r] != src[c]) {
                return bad(format!("differential {k} entry ({r},{c}) is not homogeneous"));
            }
        }
        let total = self.total_differential();
        if !total.mul(&total).is_zero() {
            return bad("d ∘ d != 0".into());
        }
        let n = self.total_dim();
        let off = self.offsets();
        for (i, bp) in self.basepoints.iter().enumerate() {
            for (name, m) in [("x", &bp.x), ("d", &bp.d)] {
                if m.rows() != n || m.cols() != n || m.p() != p {
                    return bad(format!("base point {i}: {name} has wrong shape"));
                }
                if let Some((r, c, _)) =
                    m.nonzero_entries().find(|&(r, c, _)| off.partition_point(|&o| o <= r) != off.partition_point(|&o| o <= c))
                {
                    return bad(format!("base point {i}: {name} entry ({r},{c}) mixes terms"));
                }
                if !m.commutator(&total).is_zero() {
                    return bad(format!("base point {i}: {name} does not commute with the differential"));
                }
            }
            for k in 0..self.terms.len() {
                self.term_module(k, i)
                    .map_err(|e| Error::InvalidComplex(format!("base point {i}, term {k}: {e}")))?;
            }
        }
        Ok(())
    }

    /// Homology per term, split by q-degree.
    pub fn homology(&self) -> GradedHomology {
        let mut out = Vec::new();
        for (k, term) in self.terms.iter().enumerate() {
            let mut by_q: BTreeMap<i64, usize> = BTreeMap::new();
            let degs: std::collections::BTreeSet<i64> = term.qdeg.iter().copied().collect();
            for q in degs {
                let here: Vec<usize> = (0..term.qdeg.len()).filter(|&i| term.qdeg[i] == q).collect();
                let ker = if k < self.differentials.len() {
                    let next = &self.terms[k + 1].qdeg;
                    let rows: Vec<usize> = (0..next.len()).filter(|&i| next[i] == q).collect();
                    here.len() - self.differentials[k].submatrix(&rows, &here).rank()
                } else {
                    here.len()
                };
                let im = if k > 0 {
                    let prev = &self.terms[k - 1].qdeg;
                    let cols: Vec<usize> = (0..prev.len()).filter(|&i| prev[i] == q).collect();
                    self.differentials[k - 1].submatrix(&here, &cols).rank()
                } else {
                    0
                };
                if ker > im {
                    by_q.insert(q, ker - im);
                }
            }
            out.push((term.t, by_q));
        }
        out
    }

    pub fn homology_dims(&self) -> Vec<(i64, usize)> {
        self.homology().into_iter().map(|(t, h)| (t, h.values().sum())).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&ComplexJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(s)?;
        raw.into_complex()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    t: i64,
    qdeg: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct BasePointJson {
    x: Vec<Vec<u64>>,
    d: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    p: u64,
    terms: Vec<TermJson>,
    differentials: Vec<Vec<Vec<u64>>>,
    basepoints: Vec<BasePointJson>,
}

impl From<&UChainComplex> for ComplexJson {
    fn from(c: &UChainComplex) -> Self {
        ComplexJson {
            p: c.p,
            terms: c.terms.iter().map(|t| TermJson { t: t.t, qdeg: t.qdeg.clone() }).collect(),
            differentials: c.differentials.iter().map(|d| d.to_rows()).collect(),
            basepoints: c.basepoints.iter().map(|b| BasePointJson { x: b.x.to_rows(), d: b.d.to_rows() }).collect(),
        }
    }
}

/// Matrix from JSON rows; `rows`/`cols` are needed for empty shapes.
pub(crate) fn matrix_from_json(p: u64, data: &[Vec<u64>], rows: usize, cols: usize) -> Result<FpMatrix> {
    if data.len() != rows && !(rows == 0 && data.is_empty()) {
        return Err(Error::Shape(format!("expected {rows} rows, got {}", data.len())));
    }
    let mut m = FpMatrix::zeros(p, rows, cols);
    for (r, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Shape(format!("row {r} has {} entries, expected {cols}", row.len())));
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= p {
                return Err(Error::Parse(format!("entry {v} is not a residue mod {p}")));
            }
            m.set(r, c, v);
        }
    }
    Ok(m)
}

impl ComplexJson {
    fn into_complex(self) -> Result<UChainComplex> {
        crate::fp::FieldSpec::new(self.p)?;
        let p = self.p;
        let terms: Vec<Term> = self.terms.into_iter().map(|t| Term { t: t.t, qdeg: t.qdeg }).collect();
        if self.differentials.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex("differential count".into()));
        }
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(k, d)| matrix_from_json(p, d, terms[k + 1].qdeg.len(), terms[k].qdeg.len()))
            .collect::<Result<Vec<_>>>()?;
        let n: usize = terms.iter().map(|t| t.qdeg.len()).sum();
        let basepoints = self
            .basepoints
            .iter()
            .map(|b| Ok(BasePoint { x: matrix_from_json(p, &b.x, n, n)?, d: matrix_from_json(p, &b.d, n, n)? }))
            .collect::<Result<Vec<_>>>()?;
        UChainComplex::new(p, terms, differentials, basepoints)
    }
}

/// Result of reducing at a base point, with the quotient maps per term.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub complex: UChainComplex,
    pub quotients: Vec<QuotientMap>,
}

/// Morita reduction at base point `i`: each term becomes `C_t / x C_t`, and
/// the topological differential descends. Remaining base points are dropped.
pub fn morita_reduce(c: &UChainComplex, i: usize) -> Result<UChainComplex> {
    Ok(morita_reduce_with_maps(c, i)?.complex)
}

pub fn morita_reduce_with_maps(c: &UChainComplex, i: usize) -> Result<Reduction> {
    let bp = c.basepoint(i)?;
    let quotients: Vec<QuotientMap> = (0..c.terms.len())
        .map(|k| QuotientMap::new(&c.term_block(&bp.x, k).column_space_basis()))
        .collect();
    let terms = c
        .terms
        .iter()
        .zip(&quotients)
        .map(|(t, q)| Term { t: t.t, qdeg: q.complement.iter().map(|&j| t.qdeg[j]).collect() })
        .collect();
    let differentials = c
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| quotients[k + 1].proj.mul(&d.mul(&quotients[k].section)))
        .collect();
    let complex = UChainComplex::new(c.p, terms, differentials, Vec::new())?;
    Ok(Reduction { complex, quotients })
}

/// Reduction of a chain map `f: C1 → C2` (a total-space matrix commuting
/// with the differentials and with the base-point actions at `i`).
pub fn morita_reduce_map(c1: &UChainComplex, c2: &UChainComplex, f: &FpMatrix, i: usize) -> Result<FpMatrix> {
    let (b1, b2) = (c1.basepoint(i)?, c2.basepoint(i)?);
    if f.rows() != c2.total_dim() || f.cols() != c1.total_dim() {
        return Err(Error::Shape("chain map has wrong shape".into()));
    }
    if f.mul(&c1.total_differential()) != c2.total_differential().mul(f) {
        return Err(Error::InvalidComplex("map does not commute with the differentials".into()));
    }
    if f.mul(&b1.x) != b2.x.mul(f) || f.mul(&b1.d) != b2.d.mul(f) {
        return Err(Error::InvalidComplex("map is not B-linear".into()));
    }
    let (r1, r2) = (morita_reduce_with_maps(c1, i)?, morita_reduce_with_maps(c2, i)?);
    let proj = FpMatrix::block_diag(c1.p, &r2.quotients.iter().map(|q| q.proj.clone()).collect::<Vec<_>>());
    let section = FpMatrix::block_diag(c1.p, &r1.quotients.iter().map(|q| q.section.clone()).collect::<Vec<_>>());
    Ok(proj.mul(&f.mul(&section)))
}

/// `H(C)` graded against `H(C̄) ⊗ V`: each class of degree q in the reduced
/// homology contributes classes in degrees q, q+2, ..., q+2(p-1).
pub fn tensor_with_column(h: &GradedHomology, p: u64) -> GradedHomology {
    h.iter()
        .map(|(t, by_q)| {
            let mut out: BTreeMap<i64, usize> = BTreeMap::new();
            for (&q, &dim) in by_q {
                for k in 0..p as i64 {
                    *out.entry(q + 2 * k).or_default() += dim;
                }
            }
            (*t, out)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnreducedReport {
    pub passed: bool,
    pub termwise: bool,
    pub free_terms: bool,
    pub homology_matches: bool,
    pub unreduced_homology: Vec<(i64, usize)>,
    pub reduced_homology: Vec<(i64, usize)>,
}

/// Checks `C ≅ C̄ ⊗ V` termwise and `H(C) ≅ H(C̄) ⊗ V` as graded spaces.
pub fn verify_unreduced_eq_reduced_tensor(c: &UChainComplex, i: usize) -> Result<UnreducedReport> {
    let p = c.p;
    let reduced = morita_reduce(c, i)?;
    let mut free_terms = true;
    let mut termwise = true;
    for k in 0..c.terms.len() {
        let dec = match decompose_pdg_module(&c.term_module(k, i)?) {
            Ok(d) => d,
            Err(_) => {
                free_terms = false;
                continue;
            }
        };
        let mut shifts = dec.shifts.clone();
        let mut reduced_degs = reduced.terms[k].qdeg.clone();
        shifts.sort();
        reduced_degs.sort();
        termwise &= c.terms[k].qdeg.len() == p as usize * reduced.terms[k].qdeg.len() && shifts == reduced_degs;
    }
    let h = c.homology();
    let hr = reduced.homology();
    let homology_matches = h == tensor_with_column(&hr, p);
    Ok(UnreducedReport {
        passed: termwise && free_terms && homology_matches,
        termwise,
        free_terms,
        homology_matches,
        unreduced_homology: c.homology_dims(),
        reduced_homology: reduced.homology_dims(),
    })
}

#[derive(Debug, Clone)]
pub struct BasePointReport {
    pub passed: bool,
    /// Per term, the isomorphism `C/x_1 C → C/x_2 C`.
    pub isomorphisms: Vec<FpMatrix>,
    pub reduced_first: UChainComplex,
    pub reduced_second: UChainComplex,
    /// The induced action of y = x_1 - x_2 on each reduction (total space).
    pub y_first: FpMatrix,
    pub y_second: FpMatrix,
    pub failure: Option<String>,
}

/// Compares the reductions at base points 0 and 1. Both quotient maps
/// restrict to isomorphisms on `ker ∂` (a subcomplex, stable under
/// y = x_1 - x_2), which gives the explicit chain isomorphism
/// `π_2 ∘ (π_1|_{ker ∂})^{-1}`; it also intertwines the induced y actions.
pub fn base_point_independence(c: &UChainComplex) -> Result<BasePointReport> {
    let p = c.p;
    let (b1, b2) = (c.basepoint(0)?, c.basepoint(1)?);
    if !b1.x.commutator(&b2.x).is_zero() {
        return Err(Error::InvalidComplex("base-point actions do not commute".into()));
    }
    if b1.d != b2.d {
        return Err(Error::InvalidComplex("base points must share the diagonal ∂".into()));
    }
    let r1 = morita_reduce_with_maps(c, 0)?;
    let r2 = morita_reduce_with_maps(c, 1)?;
    let y = b1.x.sub(&b2.x);
    let mut isos = Vec::new();
    let mut y1 = Vec::new();
    let mut y2 = Vec::new();
    let mut failure = None;
    for k in 0..c.terms.len() {
        let dk = c.term_block(&b1.d, k);
        let ker = dk.kernel_basis();
        let a = r1.quotients[k].proj.mul(&ker);
        let b = r2.quotients[k].proj.mul(&ker);
        let Some(a_inv) = a.inverse() else {
            failure = Some(format!("term {k}: ker ∂ does not map isomorphically onto C/x_1C"));
            isos.push(FpMatrix::zeros(p, b.rows(), a.rows()));
            continue;
        };
        if b.rank() != b.rows() || b.cols() != b.rows() {
            failure = Some(format!("term {k}: ker ∂ does not map isomorphically onto C/x_2C"));
        }
        isos.push(b.mul(&a_inv));
        let yk = c.term_block(&y, k);
        y1.push(r1.quotients[k].induced(&yk));
        y2.push(r2.quotients[k].induced(&yk));
    }
    let iso_total = FpMatrix::block_diag(p, &isos);
    let (d1, d2) = (r1.complex.total_differential(), r2.complex.total_differential());
    let y_first = FpMatrix::block_diag(p, &y1);
    let y_second = FpMatrix::block_diag(p, &y2);
    if failure.is_none() {
        if iso_total.mul(&d1) != d2.mul(&iso_total) {
            failure = Some("map does not commute with the reduced differentials".into());
        } else if iso_total.mul(&y_first) != y_second.mul(&iso_total) {
            failure = Some("map does not intertwine the y actions".into());
        } else if r1.complex.homology() != r2.complex.homology() {
            failure = Some("reduced homologies differ".into());
        } else {
            let q1 = r1.complex.total_qdeg();
            let q2 = r2.complex.total_qdeg();
            if let Some((r, col, _)) = iso_total.nonzero_entries().find(|&(r, col, _)| q2[r] != q1[col]) {
                failure = Some(format!("map entry ({r},{col}) is not homogeneous"));
            }
        }
    }
    Ok(BasePointReport {
        passed: failure.is_none(),
        isomorphisms: isos,
        reduced_first: r1.complex,
        reduced_second: r2.complex,
        y_first,
        y_second,
        failure,
    })
}

/// One-term complex A with its own x and ∂ (the unreduced unknot, degrees
/// 0..2(p-1)).
pub fn unknot_complex(p: u64) -> Result<UChainComplex> {
    let spec = TruncAlgebraSpec::new(p, 1)?;
    let x = multiplication_matrix(spec, 0);
    let d = witt_matrix(spec, WittOperator::DMinus, None);
    UChainComplex::new(p, vec![Term { t: 0, qdeg: spec.qdegs() }], vec![], vec![BasePoint { x, d }])
}

/// One-term complex A⊗A with base points x_1, x_2 and the diagonal ∂.
pub fn unlink_complex(p: u64) -> Result<UChainComplex> {
    free_two_variable_complex(p, &[vec![0]], &[])
}

/// `0 → V → V → 0` with the identity differential.
pub fn contractible_complex(p: u64) -> Result<UChainComplex> {
    let v = PdgModule::column_module(p, 0);
    let pu = p as usize;
    let x = FpMatrix::block_diag(p, &[v.x.clone(), v.x.clone()]);
    let d = FpMatrix::block_diag(p, &[v.d.clone(), v.d.clone()]);
    UChainComplex::new(
        p,
        vec![Term { t: 0, qdeg: v.qdeg.clone() }, Term { t: 1, qdeg: v.qdeg.clone() }],
        vec![FpMatrix::identity(p, pu)],
        vec![BasePoint { x, d }],
    )
}

/// Complex whose term k is `⊕_g q^{deg g} A⊗A` over the generator degrees
/// `gens[k]`; `diffs[k][(b, a)] = (c, j)` puts `c·y^j` (y = x_1 - x_2) from
/// generator a of term k to generator b of term k+1. Base points are x_1, x_2.
pub fn free_two_variable_complex(
    p: u64,
    gens: &[Vec<i64>],
    diffs: &[BTreeMap<(usize, usize), (u64, u32)>],
) -> Result<UChainComplex> {
    let spec = TruncAlgebraSpec::new(p, 2)?;
    let x1 = multiplication_matrix(spec, 0);
    let x2 = multiplication_matrix(spec, 1);
    let d = witt_matrix(spec, WittOperator::DMinus, None);
    let y = x1.sub(&x2);
    let base = spec.qdegs();
    let block = spec.dim();
    let terms: Vec<Term> = gens
        .iter()
        .enumerate()
        .map(|(k, g)| Term { t: k as i64, qdeg: g.iter().flat_map(|&s| base.iter().map(move |&q| q + s)).collect() })
        .collect();
    let mut differentials = Vec::new();
    for (k, entries) in diffs.iter().enumerate() {
        let mut m = FpMatrix::zeros(p, gens[k + 1].len() * block, gens[k].len() * block);
        for (&(b, a), &(c, j)) in entries {
            let piece = y.pow(j as u64).scale(c);
            for (r, col, v) in piece.nonzero_entries() {
                m.add_at(b * block + r, a * block + col, v);
            }
        }
        differentials.push(m);
    }
    let total: usize = gens.iter().map(|g| g.len()).sum();
    let rep = |m: &FpMatrix| FpMatrix::block_diag(p, &vec![m.clone(); total]);
    let basepoints = vec![BasePoint { x: rep(&x1), d: rep(&d) }, BasePoint { x: rep(&x2), d: rep(&d) }];
    UChainComplex::new(p, terms, differentials, basepoints)
}

/// A random complex of free A⊗A-modules: either two terms with a random
/// homogeneous `y`-polynomial differential, or a three-term Koszul-type
/// complex `y^j` followed by `y^{p-j}`.
pub fn synthetic_free_complex<R: Rng + ?Sized>(p: u64, rng: &mut R) -> Result<UChainComplex> {
    if rng.gen_bool(0.3) {
        let j = rng.gen_range(1..p as u32);
        let s = 2 * rng.gen_range(-2i64..=2);
        let c1 = rng.gen_range(1..p);
        let c2 = rng.gen_range(1..p);
        let gens = vec![vec![s], vec![s - 2 * j as i64], vec![s - 2 * p as i64]];
        let d0 = BTreeMap::from([((0, 0), (c1, j))]);
        let d1 = BTreeMap::from([((0, 0), (c2, p as u32 - j))]);
        return free_two_variable_complex(p, &gens, &[d0, d1]);
    }
    let n0 = rng.gen_range(1..=3usize);
    let n1 = rng.gen_range(1..=3usize);
    let g0: Vec<i64> = (0..n0).map(|_| 2 * rng.gen_range(-2i64..=2)).collect();
    let g1: Vec<i64> = (0..n1).map(|_| 2 * rng.gen_range(-4i64..=2)).collect();
    let mut entries = BTreeMap::new();
    for (a, &sa) in g0.iter().enumerate() {
        for (b, &sb) in g1.iter().enumerate() {
            // c·y^j raises the A⊗A degree by 2j, so sb + 2j = sa
            let diff = sa - sb;
            if diff >= 0 && diff < 2 * p as i64 && rng.gen_bool(0.8) {
                let j = (diff / 2) as u32;
                let c = rng.gen_range(0..p);
                if c != 0 {
                    entries.insert((b, a), (c, j));
                }
            }
        }
    }
    free_two_variable_complex(p, &[g0, g1], &[entries])
}

/// Dimension over k of the module and whether k[y]/(y^p) acts freely of rank
/// one (the expected shape of the reduced 2-unlink).
pub fn is_rank_one_free(y: &FpMatrix, p: u64) -> bool {
    y.rows() == p as usize && free_over_trunc(std::slice::from_ref(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unknot_reduces_to_point() {
        for p in [2u64, 3, 5, 7] {
            let c = unknot_complex(p).unwrap();
            let r = morita_reduce(&c, 0).unwrap();
            assert_eq!(r.terms[0].qdeg, vec![0]);
            let rep = verify_unreduced_eq_reduced_tensor(&c, 0).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn unlink_reduces_to_truncated_polynomials() {
        for p in [3u64, 5] {
            let c = unlink_complex(p).unwrap();
            let r1 = morita_reduce(&c, 0).unwrap();
            assert_eq!(r1.total_dim(), p as usize);
            let rep = base_point_independence(&c).unwrap();
            assert!(rep.passed, "{:?}", rep.failure);
            assert!(is_rank_one_free(&rep.y_first, p));
            assert!(is_rank_one_free(&rep.y_second, p));
            let u = verify_unreduced_eq_reduced_tensor(&c, 0).unwrap();
            assert!(u.passed);
            assert_eq!(u.unreduced_homology, vec![(0, (p * p) as usize)]);
            assert_eq!(u.reduced_homology, vec![(0, p as usize)]);
        }
    }

    #[test]
    fn contractible_has_no_homology() {
        for p in [3u64, 5] {
            let c = contractible_complex(p).unwrap();
            let r = morita_reduce(&c, 0).unwrap();
            assert_eq!(r.total_dim(), 2);
            assert!(r.homology_dims().iter().all(|&(_, d)| d == 0));
            assert!(verify_unreduced_eq_reduced_tensor(&c, 0).unwrap().passed);
        }
    }

    #[test]
    fn equal_base_points_give_identity() {
        let mut c = unlink_complex(3).unwrap();
        c.basepoints[1] = c.basepoints[0].clone();
        let rep = base_point_independence(&c).unwrap();
        assert!(rep.passed);
        assert!(rep.isomorphisms.iter().all(|m| m.is_identity()));
    }

    #[test]
    fn missing_basepoint_is_an_error() {
        let c = unknot_complex(3).unwrap();
        assert_eq!(morita_reduce(&c, 1).unwrap_err(), Error::MissingBasePoint(1));
    }

    #[test]
    fn synthetic_battery() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3u64, 5] {
            for _ in 0..20 {
                let c = synthetic_free_complex(p, &mut rng).unwrap();
                let rep = base_point_independence(&c).unwrap();
                assert!(rep.passed, "{:?}", rep.failure);
                assert!(verify_unreduced_eq_reduced_tensor(&c, 0).unwrap().passed);
                assert!(verify_unreduced_eq_reduced_tensor(&c, 1).unwrap().passed);
            }
        }
    }

    #[test]
    fn reduced_chain_map_is_chain_map() {
        let p = 3;
        let c = unlink_complex(p).unwrap();
        let y = c.basepoints[0].x.sub(&c.basepoints[1].x);
        let f = morita_reduce_map(&c, &c, &y, 0).unwrap();
        let r = morita_reduce(&c, 0).unwrap();
        let d = r.total_differential();
        assert_eq!(f.mul(&d), d.mul(&f));
        assert!(is_rank_one_free(&f, p));
    }

    #[test]
    fn json_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = synthetic_free_complex(3, &mut rng).unwrap();
        let s = c.to_json().unwrap();
        let back = UChainComplex::from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json().unwrap(), s);
        assert!(UChainComplex::from_json("{\"p\": 4, \"terms\": [], \"differentials\": [], \"basepoints\": []}").is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let p = 3;
        let id = FpMatrix::identity(p, 1);
        let terms = vec![Term { t: 0, qdeg: vec![0] }, Term { t: 1, qdeg: vec![0] }, Term { t: 2, qdeg: vec![0] }];
        assert!(UChainComplex::new(p, terms, vec![id.clone(), id], vec![]).is_err());
    }
}
