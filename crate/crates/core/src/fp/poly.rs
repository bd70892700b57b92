use std::cmp::Ordering;
use std::fmt;

use super::field;
use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// Univariate polynomial over F_p, coefficients lowest degree first.
///
/// The zero polynomial has an empty coefficient list; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        poly.trim();
        poly
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| field::reduce(p, c)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `x - a`.
    pub fn linear(p: u64, a: u64) -> Self {
        Self::new(p, vec![field::neg(p, a % p), 1])
    }

    pub fn monomial(p: u64, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = field::inv(self.p, self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| a * (c % self.p) % self.p).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| field::add(self.p, self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| field::sub(self.p, self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = field::inv(p, d.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv % p;
            if c == 0 {
                continue;
            }
            quo[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = field::sub(p, rem[k], c * b % p);
            }
        }
        (Self::new(p, quo), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let g = self.gcd(other);
        self.mul(other).div_rem(&g).0.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % self.p) * c % self.p).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &FpMatrix) -> FpMatrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&FpMatrix::scalar(self.p, n, c));
        }
        acc
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Inverse of the Frobenius on coefficients: requires every exponent
    /// with a nonzero coefficient to be divisible by p.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        Self::new(self.p, coeffs)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, k)` with
/// `f = prod g^k`, each `g` square-free and monic.
fn square_free(f: &FpPoly) -> Vec<(FpPoly, u64)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f is a p-th power
        for (g, k) in square_free(&f.pth_root()) {
            out.push((g, k * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u64;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, k) in square_free(&c.pth_root()) {
            out.push((g, k * p));
        }
    }
    out
}

/// Berlekamp splitting of a monic square-free polynomial. Exhausts the
/// constants of F_p when splitting, so the output is deterministic.
fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    // Q - I where row i holds x^{ip} mod f
    let mut q = FpMatrix::zeros(p, n, n);
    let xp = FpPoly::x(p).pow_mod(p, f);
    let mut cur = FpPoly::one(p);
    for i in 0..n {
        for j in 0..n {
            q.set(j, i, cur.coeff(j));
        }
        cur = cur.mul(&xp).rem(f);
    }
    let kernel = q.sub(&FpMatrix::identity(p, n)).kernel_basis();
    let r = kernel.cols();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    for k in 0..r {
        let v = FpPoly::new(p, kernel.column(k));
        if v.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.degree() == Some(1) {
                next.push(g);
                continue;
            }
            let mut rest = g.clone();
            for s in 0..p {
                if rest.degree() == Some(0) {
                    break;
                }
                let h = rest.gcd(&v.sub(&FpPoly::new(p, vec![s])));
                if h.degree().unwrap_or(0) > 0 && h.degree() != rest.degree() {
                    next.push(h.clone());
                    rest = rest.div_rem(&h).0.monic();
                }
            }
            if rest.degree().unwrap_or(0) > 0 {
                next.push(rest);
            }
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors
}

/// Factorization into monic irreducibles with multiplicities, sorted by
/// degree then by coefficients from the top down. The leading unit of `f`
/// is dropped.
pub fn factor_poly(f: &FpPoly) -> Result<Vec<(FpPoly, u64)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let mut out: Vec<(FpPoly, u64)> = Vec::new();
    for (g, k) in square_free(&f) {
        for h in berlekamp(&g) {
            match out.iter_mut().find(|(e, _)| *e == h) {
                Some(entry) => entry.1 += k,
                None => out.push((h, k)),
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Monic minimal polynomial of a square matrix.
pub fn min_poly(m: &FpMatrix) -> Result<FpPoly> {
    if !m.is_square() {
        return Err(Error::Shape(format!("min_poly needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let p = m.p();
    let n = m.rows();
    if n == 0 {
        return Ok(FpPoly::one(p));
    }
    // lcm of the local minimal polynomials of the standard basis vectors
    let mut acc = FpPoly::one(p);
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        if !acc.eval_matrix_vec(m, &e).iter().all(|&c| c == 0) {
            acc = acc.lcm(&local_min_poly(m, &e));
        }
    }
    Ok(acc)
}

impl FpPoly {
    fn eval_matrix_vec(&self, m: &FpMatrix, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; v.len()];
        for &c in self.coeffs.iter().rev() {
            acc = m.mul_vec(&acc);
            for (a, &b) in acc.iter_mut().zip(v) {
                *a = (*a + c * b) % self.p;
            }
        }
        acc
    }
}

/// Least-degree monic polynomial g with g(m) v = 0, via the Krylov sequence.
fn local_min_poly(m: &FpMatrix, v: &[u64]) -> FpPoly {
    let p = m.p();
    let n = v.len();
    let mut krylov: Vec<Vec<u64>> = vec![v.to_vec()];
    loop {
        let next = m.mul_vec(krylov.last().unwrap());
        let basis = FpMatrix::from_columns(p, n, &krylov);
        let target = FpMatrix::from_columns(p, n, &[next.clone()]);
        if let Some(sol) = basis.solve(&target) {
            let k = krylov.len();
            let mut coeffs: Vec<u64> = (0..k).map(|i| field::neg(p, sol.get(i, 0))).collect();
            coeffs.push(1);
            return FpPoly::new(p, coeffs);
        }
        krylov.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn product(p: u64, fs: &[(FpPoly, u64)]) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, k)| acc.mul(&g.pow(*k)))
    }

    /// Irreducibility by exhaustive trial division against all monic
    /// polynomials of degree <= deg/2.
    fn brute_irreducible(f: &FpPoly) -> bool {
        let p = f.p();
        let d = f.degree().unwrap();
        if d == 0 {
            return false;
        }
        for dd in 1..=d / 2 {
            let count = p.pow(dd as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(dd + 1);
                let mut t = idx;
                for _ in 0..dd {
                    coeffs.push(t % p);
                    t /= p;
                }
                coeffs.push(1);
                let g = FpPoly::new(p, coeffs);
                if f.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x_squared_minus_one_mod_three() {
        let f = FpPoly::from_signed(3, &[-1, 0, 1]);
        let fs = factor_poly(&f).unwrap();
        // roots by enumeration over F_3
        let roots: Vec<u64> = (0..3).filter(|&a| f.eval(a) == 0).collect();
        assert_eq!(roots, vec![1, 2]);
        // sorted lexicographically from the top coefficient: x + 1 before x + 2
        assert_eq!(fs, vec![(FpPoly::linear(3, 2), 1), (FpPoly::linear(3, 1), 1)]);
    }

    #[test]
    fn x_is_irreducible() {
        let fs = factor_poly(&FpPoly::x(5)).unwrap();
        assert_eq!(fs, vec![(FpPoly::x(5), 1)]);
    }

    #[test]
    fn x_squared_plus_one_mod_three_irreducible() {
        let f = FpPoly::from_signed(3, &[1, 0, 1]);
        assert!((0..3).all(|a| f.eval(a) != 0));
        assert_eq!(factor_poly(&f).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor_poly(&FpPoly::zero(7)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pth_powers() {
        let f = FpPoly::from_signed(3, &[1, 1]).pow(6).mul(&FpPoly::x(3).pow(3));
        let fs = factor_poly(&f).unwrap();
        assert_eq!(fs, vec![(FpPoly::x(3), 3), (FpPoly::linear(3, 2), 6)]);
        assert_eq!(product(3, &fs), f);
    }

    #[test]
    fn random_factorizations_remultiply() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for p in [2u64, 3, 5, 7, 11] {
            for _ in 0..1000 {
                let deg = rng.gen_range(0..=12);
                let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                coeffs.push(rng.gen_range(1..p));
                let f = FpPoly::new(p, coeffs);
                let fs = factor_poly(&f).unwrap();
                assert_eq!(product(p, &fs), f.monic(), "p={p} f={f}");
                for (g, _) in &fs {
                    assert_eq!(g.leading(), 1);
                    if g.degree().unwrap() <= 6 {
                        assert!(brute_irreducible(g), "{g} reducible");
                    }
                }
                let mut sorted = fs.clone();
                sorted.sort_by(|a, b| a.0.canonical_cmp(&b.0));
                assert_eq!(sorted, fs);
            }
        }
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(min_poly(&FpMatrix::identity(5, 4)).unwrap(), FpPoly::linear(5, 1));
        for p in [2u64, 3, 5, 7] {
            let n = p as usize;
            let jordan = FpMatrix::from_fn(p, n, n, |r, c| i64::from(r == c + 1));
            // direct powers: J^{p-1} != 0, J^p = 0
            assert!(!jordan.pow(p - 1).is_zero());
            assert!(jordan.pow(p).is_zero());
            assert_eq!(min_poly(&jordan).unwrap(), FpPoly::monomial(p, 1, n));
        }
        let d = FpMatrix::from_rows(5, &[[1, 0], [0, 2]]);
        assert_eq!(min_poly(&d).unwrap(), FpPoly::linear(5, 1).mul(&FpPoly::linear(5, 2)));
        assert!(min_poly(&FpMatrix::zeros(5, 2, 3)).is_err());
    }

    #[test]
    fn min_poly_annihilates() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [2u64, 3, 5, 7] {
            for n in 0..7 {
                let m = FpMatrix::random(p, n, n, &mut rng);
                let g = min_poly(&m).unwrap();
                assert!(g.eval_matrix(&m).is_zero());
                // minimality: no proper divisor annihilates
                for (h, _) in factor_poly(&g).unwrap() {
                    let smaller = g.div_rem(&h).0;
                    assert!(!smaller.eval_matrix(&m).is_zero());
                }
            }
        }
    }
}
