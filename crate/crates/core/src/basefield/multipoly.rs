//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::fp::{inv_mod, Fp};
use super::unipoly;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Exponent vector, one entry per declared variable.
pub type Monomial = Vec<u32>;

/// Graded lexicographic comparison: total degree first, then lexicographic
/// with the first declared variable most significant.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    p: u64,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, u64>,
}

impl MultiPoly {
    pub fn zero(p: u64, vars: Arc<[String]>) -> Self {
        Self { p, vars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, vars: Arc<[String]>, c: i64) -> Self {
        let mut out = Self::zero(p, vars);
        let v = c.rem_euclid(p as i64) as u64;
        if v != 0 {
            out.terms.insert(vec![0; out.vars.len()], v);
        }
        out
    }

    pub fn var(p: u64, vars: Arc<[String]>, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(p, vars, idx))
    }

    pub fn var_index(p: u64, vars: Arc<[String]>, idx: usize) -> Self {
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        let mut out = Self::zero(p, vars);
        out.terms.insert(exp, 1);
        out
    }

    pub fn monomial(p: u64, vars: Arc<[String]>, exp: Monomial, c: u64) -> Self {
        assert_eq!(exp.len(), vars.len());
        let mut out = Self::zero(p, vars);
        if !c.is_multiple_of(p) {
            out.terms.insert(exp, c % p);
        }
        out
    }

    pub fn from_terms(
        p: u64,
        vars: Arc<[String]>,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Self {
        let mut out = Self::zero(p, vars);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// Univariate polynomial from dense coefficients (low to high).
    pub fn from_dense(p: u64, vars: Arc<[String]>, coeffs: &[u64]) -> Self {
        assert_eq!(vars.len(), 1);
        Self::from_terms(
            p,
            vars,
            coeffs.iter().enumerate().map(|(i, &c)| (vec![i as u32], c)),
        )
    }

    pub fn to_dense(&self) -> Vec<u64> {
        assert_eq!(self.vars.len(), 1, "to_dense needs a univariate polynomial");
        let deg = self.terms.keys().map(|m| m[0]).max();
        let mut out = match deg {
            None => return Vec::new(),
            Some(d) => vec![0u64; d as usize + 1],
        };
        for (m, &c) in &self.terms {
            out[m[0] as usize] = c;
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = (*v + c) % p;
                if *v == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> + '_ {
        self.terms.iter().map(move |(m, &c)| (m, Fp::from_u64(c, self.p)))
    }

    pub fn coeff(&self, m: &[u32]) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// The constant value if the polynomial has no nonconstant terms.
    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then_some(c)
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[idx]).max()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0))
            .map(|(m, &c)| (m, c))
    }

    pub fn leading_coeff(&self) -> u64 {
        self.leading_term().map(|(_, c)| c).unwrap_or(0)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let mut out = Self::zero(self.p, self.vars.clone());
        if c != 0 {
            for (m, &v) in &self.terms {
                out.terms.insert(m.clone(), v * c % self.p);
            }
        }
        out
    }

    /// Divide through by the leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => self.scale(inv_mod(lc, self.p)),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32], c: u64) -> Self {
        let mut out = Self::zero(self.p, self.vars.clone());
        let c = c % self.p;
        if c == 0 {
            return out;
        }
        for (m, &v) in &self.terms {
            let nm: Monomial = m.iter().zip(exp).map(|(a, b)| a + b).collect();
            out.terms.insert(nm, v * c % self.p);
        }
        out
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.p, self.vars.clone());
        for (m, &c) in &self.terms {
            let e = m[idx] as u64;
            if e.is_multiple_of(self.p) {
                continue;
            }
            let mut nm = m.clone();
            nm[idx] -= 1;
            out.add_term(nm, c * (e % self.p));
        }
        out
    }

    /// `self^p`: exponents scale by `p`, coefficients are Frobenius-fixed.
    pub fn frobenius(&self) -> Self {
        self.scale_exponents(self.p as u32)
    }

    /// Substitute every variable `x` by `x^k`.
    pub fn scale_exponents(&self, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.iter().map(|e| e * k).collect(), c))
            .collect();
        Self { p: self.p, vars: self.vars.clone(), terms }
    }

    /// `Some(g)` with `g^p = self` when every exponent is divisible by `p`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as u32;
        if self.terms.keys().any(|m| m.iter().any(|e| e % p != 0)) {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.iter().map(|e| e / p).collect(), c))
            .collect();
        Some(Self { p: self.p, vars: self.vars.clone(), terms })
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut acc = match it.next() {
            None => return vec![0; self.vars.len()],
            Some(m) => m.clone(),
        };
        for m in it {
            for (a, &e) in acc.iter_mut().zip(m) {
                *a = (*a).min(e);
            }
        }
        acc
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, exp: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.iter().zip(exp).map(|(a, b)| a - b).collect(), c))
            .collect();
        Self { p: self.p, vars: self.vars.clone(), terms }
    }

    /// Exact division. Returns `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        if self.vars.len() == 1 {
            let (q, r) = unipoly::divrem(&self.to_dense(), &rhs.to_dense(), self.p);
            return r.is_empty().then(|| Self::from_dense(self.p, self.vars.clone(), &q));
        }
        let (lm, lc) = rhs.leading_term().map(|(m, c)| (m.clone(), c)).unwrap();
        let lc_inv = inv_mod(lc, self.p);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.p, self.vars.clone());
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c)) {
            if m.iter().zip(&lm).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let q = c * lc_inv % self.p;
            quot.add_term(shift.clone(), q);
            rem = rem - rhs.mul_monomial(&shift, q);
        }
        Some(quot)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.p, self.vars.clone(), 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate with `values[i]` substituted for variable `i`.
    pub fn eval<R: Ring>(&self, values: &[R], one: &R) -> R {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = one.zero_like();
        for (m, &c) in &self.terms {
            let mut term = one.from_int(c as i64);
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    term = term * v.pow(e as u64);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Re-express over another variable list that contains every variable
    /// actually occurring here.
    pub fn embed(&self, vars: Arc<[String]>) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero(self.p, vars.clone());
        for (m, &c) in &self.terms {
            let mut nm = vec![0u32; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => nm[j] = e,
                    None => return Err(Error::UnknownVariable(self.vars[i].clone())),
                }
            }
            out.add_term(nm, c);
        }
        Ok(out)
    }

    /// Same terms over a different variable list of equal length.
    pub fn rename(&self, vars: Arc<[String]>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        Self { p: self.p, vars, terms: self.terms.clone() }
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    /// Terms sorted for printing: descending graded lex.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    fn check_compat(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        assert_eq!(self.vars, rhs.vars, "mixed variable lists");
    }
}

pub(crate) fn fmt_monomial(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mono = fmt_monomial(&self.vars, m);
                match (mono.is_empty(), c) {
                    (true, _) => c.to_string(),
                    (false, 1) => mono,
                    (false, _) => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self} over F_{})", self.p)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compat(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compat(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), self.p - c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compat(rhs);
        if self.vars.len() == 1 {
            let d = unipoly::mul(&self.to_dense(), &rhs.to_dense(), self.p);
            return MultiPoly::from_dense(self.p, self.vars.clone(), &d);
        }
        let mut out = MultiPoly::zero(self.p, self.vars.clone());
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb % self.p);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(self.p - 1)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $f:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(MultiPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.vars.clone())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.p, self.vars.clone(), 1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        MultiPoly::div_exact(self, rhs)
    }
    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.p, self.vars.clone(), n)
    }
    fn pow(&self, e: u64) -> Self {
        MultiPoly::pow(self, e)
    }
    fn frobenius_pow(&self, i: u32) -> Self {
        self.scale_exponents((self.p as u32).pow(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
    }

    #[test]
    fn prints_in_graded_lex_order() {
        let v = vars(&["t"]);
        let t = MultiPoly::var(3, v.clone(), "t").unwrap();
        let f = &(&t.pow(2) + &t.scale(2)) + &MultiPoly::constant(3, v, 1);
        assert_eq!(f.to_string(), "t^2 + 2*t + 1");
    }

    #[test]
    fn bivariate_exact_division() {
        let v = vars(&["a", "b"]);
        let a = MultiPoly::var(5, v.clone(), "a").unwrap();
        let b = MultiPoly::var(5, v.clone(), "b").unwrap();
        let f = &a + &b;
        let g = &(&a - &b) + &MultiPoly::constant(5, v, 3);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!((&prod + &a).div_exact(&f), None);
    }

    #[test]
    fn derivative_drops_multiples_of_p() {
        let v = vars(&["t"]);
        let t = MultiPoly::var(3, v, "t").unwrap();
        assert!(t.pow(3).derivative(0).is_zero());
        assert_eq!(t.pow(2).derivative(0), t.scale(2));
    }
}
