//! The purely inseparable tower `k ⊂ k(t^(1/p)) ⊂ ... ⊂ k(t^(1/p^r))` over
//! `k = F_p(t)`.
//!
//! An element of level `r` is stored as a rational function `f(s)` over F_p
//! in one root variable `s`, read as `s = t^(1/p^r)`. Since
//! `F_p(s^p) = F_p(s)^p`, an element drops a level exactly when its
//! representative is a p-th power, which is what [`TowerElement::normalize`]
//! exploits.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basefield::{parse, FunctionField, PrimeField, RatFunc};
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

pub const DEFAULT_MAX_LEVEL: u32 = 8;
pub const ROOT_VAR: &str = "s";

/// Context handle for the tower over `F_p(t)`.
#[derive(Debug, Clone)]
pub struct Tower {
    prime: PrimeField,
    max_level: u32,
    root_vars: Arc<[String]>,
}

impl Tower {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_max_level(p, DEFAULT_MAX_LEVEL)
    }

    pub fn with_max_level(p: u64, max_level: u32) -> Result<Self> {
        Ok(Self {
            prime: PrimeField::new(p)?,
            max_level,
            root_vars: vec![ROOT_VAR.to_string()].into(),
        })
    }

    /// A tower over the base field `k`; only `F_p(t)` is supported.
    pub fn over(k: &FunctionField) -> Result<Self> {
        if k.vars().len() != 1 || k.vars()[0] != "t" {
            return Err(Error::MultivariateTower(k.vars().to_vec()));
        }
        Self::new(k.p())
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// The base field `F_p(t)`.
    pub fn base(&self) -> FunctionField {
        FunctionField::from_parts(self.prime, vec!["t".to_string()].into())
    }

    /// `F_p(s)`, the field in which representatives live.
    pub fn root_field(&self) -> FunctionField {
        FunctionField::from_parts(self.prime, self.root_vars.clone())
    }

    fn check_level(&self, level: u32) -> Result<()> {
        if level > self.max_level {
            Err(Error::LevelCap { level, max: self.max_level })
        } else {
            Ok(())
        }
    }

    /// Wrap a representative at a level, without normalizing.
    pub fn element(&self, level: u32, repr: RatFunc) -> Result<TowerElement> {
        self.check_level(level)?;
        assert_eq!(repr.vars(), &self.root_vars, "representative must be a function of `s`");
        Ok(TowerElement { level, repr, max_level: self.max_level })
    }

    pub fn zero(&self) -> TowerElement {
        self.constant(0)
    }

    pub fn one(&self) -> TowerElement {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> TowerElement {
        TowerElement {
            level: 0,
            repr: RatFunc::constant(self.p(), self.root_vars.clone(), c),
            max_level: self.max_level,
        }
    }

    /// `t^(1/p^level)`.
    pub fn root(&self, level: u32) -> Result<TowerElement> {
        let s = RatFunc::var(self.p(), self.root_vars.clone(), ROOT_VAR)?;
        self.element(level, s)
    }

    pub fn t(&self) -> TowerElement {
        self.root(0).expect("level 0 is always allowed")
    }

    /// Embed an element of `F_p(t)` at level 0.
    pub fn from_base(&self, x: &RatFunc) -> Result<TowerElement> {
        if x.vars().len() != 1 || x.vars()[0] != "t" {
            return Err(Error::MultivariateTower(x.vars().to_vec()));
        }
        let repr = RatFunc::new(
            x.num().rename(self.root_vars.clone()),
            x.den().rename(self.root_vars.clone()),
        )?;
        self.element(0, repr)
    }

    /// Parse an expression in `s` (meaning `t^(1/p^level)`) and `t`.
    pub fn parse(&self, src: &str, level: u32) -> Result<TowerElement> {
        self.check_level(level)?;
        let expr = parse::parse(src)?;
        let one = self.one();
        let s = self.root(level)?;
        let t = self.t();
        let v = expr.eval(&one, &|name| match name {
            "s" => Ok(s.clone()),
            "t" => Ok(t.clone()),
            other => Err(Error::UnknownVariable(other.to_string())),
        })?;
        // Present the result at the requested level.
        v.lift(level.max(v.level))
    }

    /// Random element at `level` whose numerator and denominator have degree
    /// `<= degree` in the root variable and at most `terms` monomials each.
    ///
    /// With probability 1/2 every exponent is a multiple of `p`, so that the
    /// sample lies in the previous level; this keeps hypotheses of the form
    /// "y lies in a smaller field" from being vacuous in property runs.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        level: u32,
        degree: u32,
        terms: usize,
    ) -> TowerElement {
        let field = self.root_field();
        let drop_level = level > 0 && rng.gen_bool(0.5);
        let (num, den) = if drop_level {
            let d = degree / self.p() as u32;
            let n = field.random_poly(rng, d, terms);
            let mut m = field.random_poly(rng, d, terms.max(1));
            while m.is_zero() {
                m = field.random_poly(rng, d, terms.max(1));
            }
            (n.frobenius(), m.frobenius())
        } else {
            let n = field.random_poly(rng, degree, terms);
            let mut m = field.random_poly(rng, degree, terms.max(1));
            while m.is_zero() {
                m = field.random_poly(rng, degree, terms.max(1));
            }
            (n, m)
        };
        TowerElement {
            level,
            repr: RatFunc::new(num, den).expect("nonzero denominator"),
            max_level: self.max_level,
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        level: u32,
        degree: u32,
        terms: usize,
    ) -> TowerElement {
        loop {
            let x = self.random_element(rng, level, degree, terms);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Executable form of the field-intersection property: for seeded random
    /// `y` of level `r`, whenever `y^(p^(r-1))` lies in `F_p(t)`, `y` itself
    /// must lie in level `r - 1`.
    pub fn intersection_property(
        &self,
        r: u32,
        trials: usize,
        degree_bound: u32,
        seed: u64,
    ) -> Result<PropertyReport> {
        if r == 0 {
            return Err(Error::UnsupportedLevel(r));
        }
        self.check_level(r)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = PropertyReport::default();
        for _ in 0..trials {
            let terms = rng.gen_range(1..=3);
            let y = self.random_element(&mut rng, r, degree_bound, terms);
            report.trials += 1;
            let image = y.pow_p_power(r - 1);
            if !image.member(0) {
                continue;
            }
            report.hypothesis_held += 1;
            if !y.member(r - 1) {
                report.violations += 1;
                report.counterexample.get_or_insert_with(|| y.to_string());
            }
        }
        Ok(report)
    }
}

/// Outcome of a seeded property run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub trials: usize,
    /// Samples for which the hypothesis of the implication held.
    pub hypothesis_held: usize,
    pub violations: usize,
    pub counterexample: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// An element of `F_p(t^(1/p^level))`.
#[derive(Clone)]
pub struct TowerElement {
    level: u32,
    repr: RatFunc,
    max_level: u32,
}

impl TowerElement {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Representative as a rational function of `s = t^(1/p^level)`.
    pub fn repr(&self) -> &RatFunc {
        &self.repr
    }

    pub fn p(&self) -> u64 {
        self.repr.p()
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    /// Same field element written at level `target >= self.level`
    /// (substitutes `s -> s'^(p^(target - level))`).
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target < self.level {
            return Err(Error::LevelDecrease { from: self.level, to: target });
        }
        if target > self.max_level {
            return Err(Error::LevelCap { level: target, max: self.max_level });
        }
        let k = (self.p() as u32).pow(target - self.level);
        Ok(Self { level: target, repr: self.repr.scale_exponents(k), max_level: self.max_level })
    }

    /// Rewrite at the smallest level containing the element.
    pub fn normalize(&self) -> Self {
        let mut out = self.clone();
        while out.level > 0 {
            match out.repr.pth_root() {
                Some(r) => {
                    out.repr = r;
                    out.level -= 1;
                }
                None => break,
            }
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        self.level == 0 || self.repr.pth_root().is_none()
    }

    /// True iff the element lies in `F_p(t^(1/p^j))`.
    pub fn member(&self, j: u32) -> bool {
        self.normalize().level <= j
    }

    /// `self^p`, normalized.
    pub fn frobenius(&self) -> Self {
        Self { level: self.level, repr: self.repr.frobenius(), max_level: self.max_level }
            .normalize()
    }

    /// `self^(p^n)`, normalized.
    pub fn pow_p_power(&self, n: u32) -> Self {
        let k = (self.p() as u32).pow(n);
        Self { level: self.level, repr: self.repr.scale_exponents(k), max_level: self.max_level }
            .normalize()
    }

    /// The unique p-th root, one level up (then normalized).
    pub fn pth_root(&self) -> Result<Self> {
        let n = self.normalize();
        let level = n.level + 1;
        if level > self.max_level {
            return Err(Error::LevelCap { level, max: self.max_level });
        }
        Ok(Self { level, repr: n.repr, max_level: self.max_level }.normalize())
    }

    /// Derivative with respect to the root variable of level `level`.
    pub fn root_derivative(&self, level: u32) -> Result<Self> {
        let x = self.lift(level)?;
        Ok(Self { level, repr: x.repr.derivative_index(0), max_level: self.max_level })
    }

    /// Value in `F_p(t)` if the element lies at level 0.
    pub fn to_base(&self) -> Option<RatFunc> {
        let n = self.normalize();
        if n.level != 0 {
            return None;
        }
        let vars: Arc<[String]> = vec!["t".to_string()].into();
        Some(
            RatFunc::new(n.repr.num().rename(vars.clone()), n.repr.den().rename(vars))
                .expect("nonzero denominator"),
        )
    }

    fn common(&self, rhs: &Self) -> (Self, Self) {
        let level = self.level.max(rhs.level);
        (
            self.lift(level).expect("level within cap"),
            rhs.lift(level).expect("level within cap"),
        )
    }

    fn with(&self, level: u32, repr: RatFunc) -> Self {
        Self { level, repr, max_level: self.max_level.max(level) }.normalize()
    }
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.repr == b.repr
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            let vars: Arc<[String]> = vec!["t".to_string()].into();
            let r = RatFunc::new(self.repr.num().rename(vars.clone()), self.repr.den().rename(vars))
                .expect("nonzero denominator");
            return write!(f, "{r}");
        }
        let q = self.p().pow(self.level);
        write!(f, "{} [s = t^(1/{q})]", self.repr)
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElement(level {}: {})", self.level, self)
    }
}

impl<'a> Add<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        let (a, b) = self.common(rhs);
        a.with(a.level, &a.repr + &b.repr)
    }
}

impl<'a> Sub<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn sub(self, rhs: &TowerElement) -> TowerElement {
        let (a, b) = self.common(rhs);
        a.with(a.level, &a.repr - &b.repr)
    }
}

impl<'a> Mul<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        let (a, b) = self.common(rhs);
        a.with(a.level, &a.repr * &b.repr)
    }
}

impl<'a> Div<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn div(self, rhs: &TowerElement) -> TowerElement {
        let (a, b) = self.common(rhs);
        a.with(a.level, &a.repr / &b.repr)
    }
}

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement { level: self.level, repr: -&self.repr, max_level: self.max_level }
    }
}

crate::basefield::forward_owned!(TowerElement, Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        -&self
    }
}

impl Ring for TowerElement {
    fn zero_like(&self) -> Self {
        Self { level: 0, repr: self.repr.zero_like(), max_level: self.max_level }
    }
    fn one_like(&self) -> Self {
        Self { level: 0, repr: self.repr.one_like(), max_level: self.max_level }
    }
    fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn from_int(&self, n: i64) -> Self {
        Self { level: 0, repr: self.repr.from_int(n), max_level: self.max_level }
    }
    fn pow(&self, e: u64) -> Self {
        self.with(self.level, self.repr.pow(e))
    }
    fn frobenius_pow(&self, i: u32) -> Self {
        self.pow_p_power(i)
    }
}

impl Field for TowerElement {
    fn inv(&self) -> Option<Self> {
        self.repr.inverse().ok().map(|r| Self { level: self.level, repr: r, max_level: self.max_level })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower3() -> Tower {
        Tower::new(3).unwrap()
    }

    #[test]
    fn lift_examples() {
        let tw = tower3();
        let lifted = tw.t().lift(1).unwrap();
        assert_eq!(lifted.level(), 1);
        assert_eq!(lifted.repr().to_string(), "s^3");
        let s1 = tw.root(1).unwrap();
        assert_eq!(s1.lift(2).unwrap().repr().to_string(), "s^3");
        let e = tw.parse("s + 1", 2).unwrap();
        assert_eq!(e.lift(2).unwrap().repr(), e.repr());
        assert!(matches!(s1.lift(0), Err(Error::LevelDecrease { .. })));
        assert!(matches!(s1.lift(9), Err(Error::LevelCap { .. })));
    }

    #[test]
    fn normalize_examples() {
        let tw = tower3();
        let x = tw.parse("s^3", 2).unwrap().normalize();
        assert_eq!((x.level(), x.repr().to_string()), (1, "s".to_string()));
        let y = tw.parse("s + 1", 1).unwrap();
        assert_eq!(y.normalize().level(), 1);
        assert_eq!(y.normalize().repr(), y.repr());
        // (t + t^2) written at level 1 is s^3 + s^6; computed here by cubing.
        let base = tw.root(1).unwrap().pow(3);
        let z = &base + &base.pow(2);
        let z_raw = tw.element(1, z.lift(1).unwrap().repr().clone()).unwrap();
        assert_eq!(z_raw.repr().to_string(), "s^6 + s^3");
        let n = z_raw.normalize();
        assert_eq!((n.level(), n.to_string()), (0, "t^2 + t".to_string()));
    }

    #[test]
    fn member_examples() {
        let tw = tower3();
        let cube_root_t = tw.root(1).unwrap().lift(2).unwrap();
        assert!(cube_root_t.member(1));
        assert!(!tw.root(2).unwrap().member(1));
        let e = tw.parse("s^2 + t", 2).unwrap();
        assert!(e.member(e.level()));
    }

    #[test]
    fn frobenius_and_roots() {
        let tw = tower3();
        assert_eq!(tw.root(1).unwrap().frobenius(), tw.t());
        let r = tw.t().pth_root().unwrap();
        assert_eq!(r, tw.root(1).unwrap());
        assert_eq!(r.level(), 1);
        let x = tw.parse("t + t^2", 0).unwrap();
        let rx = x.pth_root().unwrap();
        assert_eq!((rx.level(), rx.repr().to_string()), (1, "s^2 + s".to_string()));
        // (s + s^2)^3 = t + t^2 checked by direct multiplication.
        assert_eq!(&(&rx * &rx) * &rx, x);
        let top = tw.root(8).unwrap();
        assert!(matches!(top.pth_root(), Err(Error::LevelCap { .. })));
    }

    #[test]
    fn intersection_examples() {
        let tw = tower3();
        let v = tw.root(1).unwrap().lift(2).unwrap();
        assert!(v.pow_p_power(1).member(0) && v.member(1));
        let w = tw.root(2).unwrap();
        assert!(!w.pow_p_power(1).member(0));
        let rep = tw.intersection_property(2, 200, 4, 11).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.hypothesis_held > 0);
    }

    #[test]
    fn rejects_multivariate_base() {
        let k = FunctionField::new(3, &["a", "b"]).unwrap();
        assert!(matches!(Tower::over(&k), Err(Error::MultivariateTower(_))));
    }
}
