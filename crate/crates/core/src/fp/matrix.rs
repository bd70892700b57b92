use std::fmt;

use rand::Rng;

use super::field::{self, FieldSpec};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix[p={}] {}x{}", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(p: u64, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&a| field::reduce(p, a)));
        }
        FpMatrix { p, rows: rows.len(), cols, data }
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(field::reduce(p, f(r, c)));
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Columns given as residue vectors of equal length `rows`.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v % p;
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(p: u64, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        FpMatrix { p, rows, cols, data }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::new(self.p).expect("matrix built over a prime")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u64) {
        let i = r * self.cols + c;
        self.data[i] = field::add(self.p, self.data[i], v % self.p);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u64::from(r == c)))
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&a| a != 0).count()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, &v)| (i / self.cols, i % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix product. Panics on a shape or characteristic mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "characteristic mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        let n = other.cols;
        for r in 0..self.rows {
            let orow = &mut out.data[r * n..(r + 1) * n];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = (*o + a * b) % p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |p, a, b| field::add(p, a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |p, a, b| field::sub(p, a, b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64, u64) -> u64) -> Self {
        assert_eq!(self.p, other.p, "characteristic mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(self.p, a, b)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| a * c % self.p).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| field::neg(self.p, a)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.data[r * m.cols..r * m.cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * m.cols + self.cols..(r + 1) * m.cols].copy_from_slice(other.row(r));
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(p: u64, blocks: &[FpMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.data[(r0 + r) * cols + c0 + c] = b.get(r, c);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product, index `(i, j) -> i * other.dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.nonzero_entries() {
            for (r2, c2, b) in other.nonzero_entries() {
                m.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b % self.p);
            }
        }
        m
    }

    /// Reduced row echelon form with deterministic pivoting: the first row
    /// holding a nonzero entry in the current column becomes the pivot row.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(sel) = (pr..rows).find(|&r| m.data[r * cols + c] != 0) else {
                continue;
            };
            if sel != pr {
                for j in 0..cols {
                    m.data.swap(sel * cols + j, pr * cols + j);
                }
            }
            let inv = field::inv(p, m.data[pr * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                let i = pr * cols + j;
                m.data[i] = m.data[i] * inv % p;
            }
            let (head, tail) = m.data.split_at_mut(pr * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let f = p - f;
                for j in c..cols {
                    let b = pivot_row[j];
                    if b != 0 {
                        row[j] = (row[j] + f * b) % p;
                    }
                }
            };
            head.chunks_exact_mut(cols).for_each(eliminate);
            rest.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(c);
            pr += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Returns the reduced row echelon form and the rank.
    pub fn rref_and_rank(&self) -> (FpMatrix, usize) {
        let r = self.rref();
        let rank = r.rank();
        (r.matrix, rank)
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            self.transpose().rref().rank()
        } else {
            self.rref().rank()
        }
    }

    /// Columns form a basis of the right null space (free variables in
    /// increasing order, each basis vector has a 1 in its free coordinate).
    pub fn kernel_basis(&self) -> FpMatrix {
        let Rref { matrix: r, pivots } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(self.p, n, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if v != 0 {
                    k.set(pc, j, field::neg(self.p, v));
                }
            }
        }
        k
    }

    /// A basis of the column space, chosen among the columns of `self`.
    pub fn column_space_basis(&self) -> FpMatrix {
        let piv = self.rref().pivots;
        self.select_columns(&piv)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.p, n));
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.matrix.submatrix(&rows, &cols))
    }

    /// Solves `self * X = rhs`, returning one solution if it exists.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let aug = self.hstack(rhs);
        let r = aug.rref();
        if r.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Self::zeros(self.p, n, rhs.cols);
        for (i, &pc) in r.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.matrix.get(i, n + j));
            }
        }
        Some(x)
    }
}
