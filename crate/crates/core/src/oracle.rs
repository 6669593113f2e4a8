//! Brute-force enumeration over bounded coefficient spaces.
//!
//! The main algorithms never call into this module; tests and the CLI's
//! `--cross-check` mode use it as an independent reference.

use std::sync::Arc;

use crate::basefield::{MultiPoly, RatFunc};
use crate::error::{Error, Result};

/// Largest number of tuples an enumeration may visit.
pub const CARDINALITY_CAP: u128 = 1_000_000;

/// Tuples of `count` polynomials over F_p in the given variables, each of
/// total degree `<= bound`.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    p: u64,
    count: usize,
    bound: u32,
    vars: Arc<[String]>,
    monomials: Vec<Vec<u32>>,
}

impl SearchSpace {
    /// Univariate space over `F_p[t]`.
    pub fn new(p: u64, count: usize, bound: u32) -> Result<Self> {
        Self::with_vars(p, count, bound, vec!["t".to_string()].into())
    }

    pub fn with_vars(p: u64, count: usize, bound: u32, vars: Arc<[String]>) -> Result<Self> {
        let monomials = crate::ppoly::bounded_monomials(vars.len(), bound);
        let space = Self { p, count, bound, vars, monomials };
        let size = space.cardinality();
        if size > CARDINALITY_CAP {
            return Err(Error::SpaceTooLarge(size));
        }
        Ok(space)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn cardinality(&self) -> u128 {
        let digits = (self.count * self.monomials.len()) as u32;
        (self.p as u128).checked_pow(digits).unwrap_or(u128::MAX)
    }

    /// The tuple with the given coefficient digits (unknown-major, then
    /// monomial order).
    fn tuple(&self, digits: &[u64]) -> Vec<RatFunc> {
        digits
            .chunks(self.monomials.len().max(1))
            .take(self.count)
            .map(|cs| {
                let poly = MultiPoly::from_terms(
                    self.p,
                    self.vars.clone(),
                    self.monomials.iter().cloned().zip(cs.iter().copied()),
                );
                RatFunc::from_poly(poly)
            })
            .collect()
    }
}

/// Every tuple in `space` satisfying `predicate`, in lexicographic order of
/// coefficient digits (the first digit most significant).
pub fn enumerate_solutions(
    space: &SearchSpace,
    predicate: impl Fn(&[RatFunc]) -> bool,
) -> Result<Vec<Vec<RatFunc>>> {
    let size = space.cardinality();
    if size > CARDINALITY_CAP {
        return Err(Error::SpaceTooLarge(size));
    }
    let ndigits = space.count * space.monomials.len();
    let mut digits = vec![0u64; ndigits];
    let mut out = Vec::new();
    for _ in 0..size {
        let tuple = space.tuple(&digits);
        if predicate(&tuple) {
            out.push(tuple);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d == space.p {
                *d = 0;
            } else {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::FunctionField;
    use crate::scalar::Ring;

    #[test]
    fn fermat_constants() {
        let space = SearchSpace::new(3, 1, 0).unwrap();
        let sols = enumerate_solutions(&space, |x| x[0].pow(3) == x[0]).unwrap();
        let k = FunctionField::univariate(3, "t").unwrap();
        assert_eq!(sols, vec![vec![k.zero()], vec![k.one()], vec![k.constant(2)]]);
    }

    #[test]
    fn principal_part_of_u_has_only_the_trivial_zero() {
        let k = FunctionField::univariate(3, "t").unwrap();
        let t = k.var("t").unwrap();
        let space = SearchSpace::new(3, 2, 2).unwrap();
        let sols =
            enumerate_solutions(&space, |v| (&t * &v[0].pow(3) + v[1].pow(3)).is_zero()).unwrap();
        assert_eq!(sols, vec![vec![k.zero(), k.zero()]]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(SearchSpace::new(7, 4, 3), Err(Error::SpaceTooLarge(_))));
    }
}
