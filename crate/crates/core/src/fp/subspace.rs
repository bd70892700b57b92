use super::matrix::FpMatrix;

/// Standard basis indices completing the column span of `sub` to the whole
/// space (greedy, lowest index first).
pub fn complement_indices(sub: &FpMatrix) -> Vec<usize> {
    let n = sub.rows();
    let k = sub.cols();
    let aug = sub.hstack(&FpMatrix::identity(sub.p(), n));
    aug.rref().pivots.into_iter().filter(|&c| c >= k).map(|c| c - k).collect()
}

/// Quotient of F_p^n by a subspace, with the complement spanned by standard
/// basis vectors. `proj` maps F_p^n onto coordinates of the quotient,
/// `section` lifts them back.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub sub: FpMatrix,
    pub complement: Vec<usize>,
    pub proj: FpMatrix,
    pub section: FpMatrix,
}

impl QuotientMap {
    pub fn new(sub: &FpMatrix) -> Self {
        let p = sub.p();
        let n = sub.rows();
        let basis = sub.column_space_basis();
        let complement = complement_indices(&basis);
        let mut section = FpMatrix::zeros(p, n, complement.len());
        for (j, &i) in complement.iter().enumerate() {
            section.set(i, j, 1);
        }
        let full = basis.hstack(&section);
        let inv = full.inverse().expect("basis plus complement is invertible");
        let rows: Vec<usize> = (basis.cols()..n).collect();
        let proj = inv.select_rows(&rows);
        QuotientMap { sub: basis, complement, proj, section }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Induced endomorphism on the quotient; `op` must preserve the subspace.
    pub fn induced(&self, op: &FpMatrix) -> FpMatrix {
        self.proj.mul(&op.mul(&self.section))
    }
}

/// `op` maps the column span of `basis` into itself.
pub fn is_stable(op: &FpMatrix, basis: &FpMatrix) -> bool {
    let r = basis.rank();
    basis.hstack(&op.mul(basis)).rank() == r
}

/// Matrix of `op` restricted to the span of the (independent) columns of
/// `basis`, or `None` if the span is not stable.
pub fn restrict(op: &FpMatrix, basis: &FpMatrix) -> Option<FpMatrix> {
    basis.solve(&op.mul(basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_line() {
        let p = 5;
        let sub = FpMatrix::from_rows(p, &[[1], [1], [0]]);
        let q = QuotientMap::new(&sub);
        assert_eq!(q.dim(), 2);
        assert!(q.proj.mul(&sub).is_zero());
        assert!(q.proj.mul(&q.section).is_identity());
        // shift operator e0 -> e1 -> e2 -> 0 does not preserve the line
        let shift = FpMatrix::from_rows(p, &[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert!(!is_stable(&shift, &sub));
        assert!(restrict(&shift, &sub).is_none());
        let scal = FpMatrix::scalar(p, 3, 3);
        assert_eq!(restrict(&scal, &sub).unwrap(), FpMatrix::scalar(p, 1, 3));
    }
}
