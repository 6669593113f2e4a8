//! Rational functions over F_p: fractions of [`MultiPoly`].
//!
//! Univariate fractions are always fully reduced (gcd 1, monic denominator).
//! Multivariate fractions are only lightly normalized (monomial content and
//! exact-divisibility cancellation); equality is decided by cross
//! multiplication so the missing gcd never affects correctness.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::fp::{inv_mod, Fp};
use super::multipoly::{forward_owned, MultiPoly};
use super::unipoly;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Build `num / den` and normalize.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.vars(), den.vars(), "numerator/denominator variable mismatch");
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let den = num.one_like();
        Self { num, den }
    }

    pub fn zero(p: u64, vars: Arc<[String]>) -> Self {
        Self::from_poly(MultiPoly::zero(p, vars))
    }

    pub fn constant(p: u64, vars: Arc<[String]>, c: i64) -> Self {
        Self::from_poly(MultiPoly::constant(p, vars, c))
    }

    pub fn var(p: u64, vars: Arc<[String]>, name: &str) -> Result<Self> {
        Ok(Self::from_poly(MultiPoly::var(p, vars, name)?))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn p(&self) -> u64 {
        self.num.p()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.num.vars()
    }

    pub fn is_univariate(&self) -> bool {
        self.num.nvars() == 1
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant() == Some(1)
    }

    /// The value as an element of F_p, if constant.
    pub fn as_constant(&self) -> Option<Fp> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(Fp::from_u64(n * inv_mod(d, self.p()) % self.p(), self.p()))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let p = num.p();
        if num.is_zero() {
            let den = num.one_like();
            return Self { num, den };
        }
        if num.nvars() == 1 {
            let g = unipoly::gcd(&num.to_dense(), &den.to_dense(), p);
            let (n, _) = unipoly::divrem(&num.to_dense(), &g, p);
            let (d, _) = unipoly::divrem(&den.to_dense(), &g, p);
            let inv = inv_mod(*d.last().unwrap(), p);
            let n: Vec<u64> = n.iter().map(|c| c * inv % p).collect();
            let d = unipoly::monic(&d, p);
            let vars = num.vars().clone();
            return Self {
                num: MultiPoly::from_dense(p, vars.clone(), &n),
                den: MultiPoly::from_dense(p, vars, &d),
            };
        }
        // Multivariate: cancel common monomial content, then try exact division.
        let cn = num.monomial_content();
        let cd = den.monomial_content();
        let common: Vec<u32> = cn.iter().zip(&cd).map(|(a, b)| *a.min(b)).collect();
        let mut num = num.div_monomial(&common);
        let mut den = den.div_monomial(&common);
        if let Some(q) = num.div_exact(&den) {
            num = q;
            den = den.one_like();
        } else if let Some(q) = den.div_exact(&num) {
            den = q;
            num = num.one_like();
        }
        let lc = den.leading_coeff();
        let inv = inv_mod(lc, p);
        Self { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    /// Formal derivative with respect to a named variable (quotient rule).
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let idx = self
            .vars()
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.derivative_index(idx))
    }

    pub fn derivative_index(&self, idx: usize) -> Self {
        let n1 = self.num.derivative(idx);
        let d1 = self.den.derivative(idx);
        if d1.is_zero() {
            return Self::reduce(n1, self.den.clone());
        }
        let top = &(&n1 * &self.den) - &(&self.num * &d1);
        Self::reduce(top, &self.den * &self.den)
    }

    /// `self^p` (exponent scaling on numerator and denominator).
    pub fn frobenius(&self) -> Self {
        Self { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    /// Substitute every variable `x` by `x^k`.
    pub fn scale_exponents(&self, k: u32) -> Self {
        Self::reduce(self.num.scale_exponents(k), self.den.scale_exponents(k))
    }

    /// `Some(g)` with `g^p = self` if `self` is a p-th power.
    ///
    /// Coefficients lie in F_p and are Frobenius-fixed, so `self` is a p-th
    /// power exactly when every exponent of the reduced numerator and
    /// denominator is divisible by `p`.
    pub fn pth_root(&self) -> Option<Self> {
        let n = self.num.pth_root()?;
        let d = self.den.pth_root()?;
        Some(Self { num: n, den: d })
    }

    /// Repeated [`pth_root`](Self::pth_root), `times` times.
    pub fn pth_root_iter(&self, times: u32) -> Option<Self> {
        let mut x = self.clone();
        for _ in 0..times {
            x = x.pth_root()?;
        }
        Some(x)
    }

    /// Re-express over a larger variable list.
    pub fn embed(&self, vars: Arc<[String]>) -> Result<Self> {
        Ok(Self::reduce(self.num.embed(vars.clone())?, self.den.embed(vars)?))
    }

    /// Coordinates of `self` over the subfield `k^(p^depth)`.
    ///
    /// Writes `self = sum_e m_e * g_e^(p^depth)` where `m_e` ranges over the
    /// monomials whose exponents are all `< p^depth` (in the order returned
    /// by [`frobenius_basis`]) and returns the `g_e`.
    pub fn frobenius_coordinates(&self, depth: u32) -> Vec<RatFunc> {
        let p = self.p();
        let q = (p as u32).pow(depth);
        let vars = self.vars().clone();
        let basis = frobenius_basis(vars.len(), q);
        // self = num * den^(q-1) / den^q, and den^q is a q-th power.
        let lifted = &self.num * &self.den.pow(q as u64 - 1);
        let mut parts: Vec<MultiPoly> = vec![MultiPoly::zero(p, vars.clone()); basis.len()];
        for (m, c) in lifted.terms() {
            let residue: Vec<u32> = m.iter().map(|e| e % q).collect();
            let quotient: Vec<u32> = m.iter().map(|e| e / q).collect();
            let slot = basis_index(&residue, q);
            parts[slot] = &parts[slot]
                + &MultiPoly::monomial(p, vars.clone(), quotient, c.value());
        }
        parts
            .into_iter()
            .map(|g| Self::reduce(g, self.den.clone()))
            .collect()
    }

    pub fn eval<R: Field>(&self, values: &[R], one: &R) -> Option<R> {
        let n = self.num.eval(values, one);
        let d = self.den.eval(values, one);
        d.inv().map(|di| n * di)
    }
}

/// Exponent vectors `e` with every entry `< q`, in mixed-radix order
/// (first variable least significant).
pub fn frobenius_basis(nvars: usize, q: u32) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(nvars as u32);
    (0..total)
        .map(|mut idx| {
            (0..nvars)
                .map(|_| {
                    let e = (idx % q as usize) as u32;
                    idx /= q as usize;
                    e
                })
                .collect()
        })
        .collect()
}

fn basis_index(residue: &[u32], q: u32) -> usize {
    residue
        .iter()
        .rev()
        .fold(0usize, |acc, &e| acc * q as usize + e as usize)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.vars() != other.vars() || self.p() != other.p() {
            return false;
        }
        if self.is_univariate() {
            return self.num == other.num && self.den == other.den;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |poly: &MultiPoly| {
            if poly.len() > 1 {
                format!("({poly})")
            } else {
                poly.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self} over F_{})", self.p())
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduce(n, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inverse().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(RatFunc, Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero(self.p(), self.vars().clone())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.p(), self.vars().clone(), 1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().ok().map(|r| self * &r)
    }
    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.p(), self.vars().clone(), n)
    }
    fn pow(&self, e: u64) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }
    fn frobenius_pow(&self, i: u32) -> Self {
        let k = (self.p() as u32).pow(i);
        Self { num: self.num.scale_exponents(k), den: self.den.scale_exponents(k) }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}
