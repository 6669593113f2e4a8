//! Exact arithmetic over F_p and over rational function fields
//! F_p(t), F_p(a, b), ...

mod fp;
mod independence;
mod multipoly;
pub mod parse;
mod ratfunc;
mod unipoly;

use std::sync::Arc;

pub use fp::{binomial_mod, is_prime, Fp, PrimeField, MAX_PRIME};
pub use independence::{
    frobenius_basis_labels, frobenius_relation, polynomial_rows, FrobeniusRelation,
};
pub(crate) use multipoly::forward_owned;
pub use multipoly::{grlex_cmp, Monomial, MultiPoly};
pub use ratfunc::{frobenius_basis, RatFunc};

use crate::error::Result;

/// Context handle for a rational function field `F_p(vars)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionField {
    prime: PrimeField,
    vars: Arc<[String]>,
}

impl FunctionField {
    pub fn new(p: u64, vars: &[&str]) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Ok(Self { prime, vars: vars.into() })
    }

    pub fn univariate(p: u64, var: &str) -> Result<Self> {
        Self::new(p, &[var])
    }

    pub fn from_parts(prime: PrimeField, vars: Arc<[String]>) -> Self {
        Self { prime, vars }
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    pub fn prime(&self) -> PrimeField {
        self.prime
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc::zero(self.p(), self.vars.clone())
    }

    pub fn one(&self) -> RatFunc {
        RatFunc::constant(self.p(), self.vars.clone(), 1)
    }

    pub fn constant(&self, c: i64) -> RatFunc {
        RatFunc::constant(self.p(), self.vars.clone(), c)
    }

    pub fn var(&self, name: &str) -> Result<RatFunc> {
        RatFunc::var(self.p(), self.vars.clone(), name)
    }

    pub fn poly_zero(&self) -> MultiPoly {
        MultiPoly::zero(self.p(), self.vars.clone())
    }

    /// Parse an expression in this field's variables.
    pub fn parse(&self, src: &str) -> Result<RatFunc> {
        let expr = parse::parse(src)?;
        let one = self.one();
        expr.eval(&one, &|name| self.var(name))
    }

    /// Random polynomial with up to `terms` monomials of total degree
    /// `<= degree` and nonzero coefficients.
    pub fn random_poly<R: rand::Rng + ?Sized>(
        &self,
        rng: &mut R,
        degree: u32,
        terms: usize,
    ) -> MultiPoly {
        let n = self.vars.len();
        let mut out = self.poly_zero();
        for _ in 0..terms {
            let mut budget = degree;
            let mut exp = vec![0u32; n];
            for e in exp.iter_mut() {
                let take = rng.gen_range(0..=budget);
                *e = take;
                budget -= take;
            }
            let c = rng.gen_range(1..self.p());
            out = &out + &MultiPoly::monomial(self.p(), self.vars.clone(), exp, c);
        }
        out
    }

    /// Random element: quotient of two random polynomials with nonzero
    /// denominator. Reproducible for a seeded `rng`.
    pub fn random_element<R: rand::Rng + ?Sized>(
        &self,
        rng: &mut R,
        degree: u32,
        terms: usize,
    ) -> RatFunc {
        let num = self.random_poly(rng, degree, terms);
        let mut den = self.random_poly(rng, degree, terms.max(1));
        while den.is_zero() {
            den = self.random_poly(rng, degree, terms.max(1));
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(
        &self,
        rng: &mut R,
        degree: u32,
        terms: usize,
    ) -> RatFunc {
        loop {
            let x = self.random_element(rng, degree, terms);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k3() -> FunctionField {
        FunctionField::univariate(3, "t").unwrap()
    }

    #[test]
    fn field_op_examples() {
        let k = k3();
        assert_eq!(k.parse("t/(t+1) + 1/(t+1)").unwrap(), k.one());
        assert_eq!(k.parse("(t+1)/t").unwrap().inverse().unwrap(), k.parse("t/(t+1)").unwrap());
        assert_eq!(k.parse("t*t^2").unwrap(), k.parse("t^3").unwrap());
        assert!(k.zero().inverse().is_err());
    }

    #[test]
    fn derivative_examples() {
        let k = k3();
        assert!(k.parse("t^3").unwrap().derivative("t").unwrap().is_zero());
        assert_eq!(k.parse("t^2").unwrap().derivative("t").unwrap(), k.parse("2*t").unwrap());
        assert_eq!(k.parse("1/t").unwrap().derivative("t").unwrap(), k.parse("-1/t^2").unwrap());
        assert!(k.parse("t").unwrap().derivative("x").is_err());
    }

    #[test]
    fn pth_root_examples() {
        let k = k3();
        // (t + t^2)^3 expanded by repeated multiplication, independent of pth_root.
        let g = k.parse("t + t^2").unwrap();
        let cube = &(&g * &g) * &g;
        assert_eq!(cube, k.parse("t^3 + t^6").unwrap());
        assert_eq!(k.parse("t^3 + t^6").unwrap().pth_root(), Some(g));
        assert_eq!(k.parse("t").unwrap().pth_root(), None);
        assert_eq!(k.one().pth_root(), Some(k.one()));
    }

    #[test]
    fn canonical_printing() {
        let k = k3();
        assert_eq!(k.parse("-t").unwrap().to_string(), "2*t");
        assert_eq!(k.parse("1/t").unwrap().to_string(), "1/t");
        assert_eq!(k.parse("(t+1)/(t^2+1)").unwrap().to_string(), "(t + 1)/(t^2 + 1)");
    }

    #[test]
    fn random_elements_are_seed_reproducible() {
        let k = FunctionField::univariate(5, "t").unwrap();
        let a = k.random_element(&mut ChaCha8Rng::seed_from_u64(9), 4, 3);
        let b = k.random_element(&mut ChaCha8Rng::seed_from_u64(9), 4, 3);
        assert_eq!(a, b);
        assert_eq!(a.pow(5), a.frobenius());
    }
}
