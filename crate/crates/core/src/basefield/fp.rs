//! The prime field F_p with a runtime modulus.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

pub const MAX_PRIME: u64 = 61;

/// Session context carrying the characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if (2..=MAX_PRIME).contains(&p) && is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> Fp {
        Fp::new(n, self.p)
    }

    pub fn zero(&self) -> Fp {
        Fp { value: 0, p: self.p }
    }

    pub fn one(&self) -> Fp {
        Fp { value: 1, p: self.p }
    }

    /// All residues `0..p` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| Fp { value: v, p: self.p })
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A residue modulo `p`, stored in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(n: i64, p: u64) -> Self {
        Self { value: n.rem_euclid(p as i64) as u64, p }
    }

    pub fn from_u64(n: u64, p: u64) -> Self {
        Self { value: n % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(Self { value: inv_mod(self.value, self.p), p: self.p })
        }
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
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

/// `n mod p` for `C(n, k)`, computed with Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1;
        for j in 0..ki {
            c = c * ((ni - j) % p) % p;
            c = c * inv_mod(j + 1, p) % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: (self.value + rhs.value) % self.p, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: (self.value + self.p - rhs.value) % self.p, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.value * rhs.value % self.p, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|r| *self * r)
    }
    fn from_int(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
    fn pow(&self, e: u64) -> Self {
        Fp { value: pow_mod(self.value, e, self.p), p: self.p }
    }
    fn frobenius_pow(&self, _i: u32) -> Self {
        *self
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_holds_for_every_residue() {
        for p in [2u64, 3, 5, 7, 61] {
            let f = PrimeField::new(p).unwrap();
            for x in f.elements() {
                assert_eq!(x.pow(p), x);
            }
        }
    }

    #[test]
    fn rejects_composites_and_large_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(67).is_err());
        assert!(PrimeField::new(61).is_ok());
    }

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binomial_mod(2, 1, 5), 2);
        assert_eq!(binomial_mod(3, 1, 7), 3);
        assert_eq!(binomial_mod(3, 2, 7), 3);
        assert_eq!(binomial_mod(5, 2, 5), 0);
        assert_eq!(binomial_mod(1, 2, 5), 0);
    }
}
