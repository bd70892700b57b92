use crate::error::{Error, Result};

/// The prime field F_p. Residues are always kept in `[0, p)`.
///
/// Inverses are computed with the extended Euclidean algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        // keeps products of two residues inside u64
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        add(self.p, a, b)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        sub(self.p, a, b)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        neg(self.p, a)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        inv(self.p, a)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow(self.p, a, e)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

#[inline]
pub(crate) fn add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn neg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn reduce(p: u64, a: i64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

pub(crate) fn inv(p: u64, a: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Some(reduce(p, t0))
}

pub(crate) fn pow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Binomial coefficient reduced mod p (Lucas' theorem).
pub fn binomial_mod(p: u64, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for j in 0..ki {
            c = c * ((ni - j) % p) % p;
            c = c * inv(p, j + 1).expect("j+1 < p") % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}
