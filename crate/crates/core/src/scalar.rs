//! Scalar traits shared by every coefficient domain in the crate.
//!
//! The prime `p` is a runtime value carried inside each element, so the
//! usual `Zero::zero()`-style constructors cannot exist. Instead every
//! element can produce the additive and multiplicative identities of its
//! own domain (`zero_like` / `one_like`).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// The characteristic of the ring (always the prime `p` here).
    fn characteristic(&self) -> u64;

    /// Exact quotient `self / rhs`, or `None` when `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn from_int(&self, n: i64) -> Self {
        let p = self.characteristic() as i64;
        let r = n.rem_euclid(p) as u64;
        let one = self.one_like();
        let mut acc = self.zero_like();
        // r < p <= 61, so a short loop is fine.
        for _ in 0..r {
            acc = acc + one.clone();
        }
        acc
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// `self^(p^i)`. Implementors with cheap Frobenius override this.
    fn frobenius_pow(&self, i: u32) -> Self {
        let p = self.characteristic();
        let mut x = self.clone();
        for _ in 0..i {
            x = x.pow(p);
        }
        x
    }
}

/// A field: a ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}
