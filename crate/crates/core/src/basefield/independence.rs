//! Linear (in)dependence of function-field elements over the subfield of
//! `p^depth`-th powers.

use super::{frobenius_basis, MultiPoly, RatFunc};
use crate::linalg::{self, Matrix};
use crate::scalar::Ring;

/// Result of testing `x_1, ..., x_n` for dependence over `k^(p^depth)`.
#[derive(Debug, Clone, PartialEq)]
pub enum FrobeniusRelation {
    /// The elements are independent; `coordinates[j]` holds the expansion of
    /// `x_j` (see [`RatFunc::frobenius_coordinates`]) and `rank == n`.
    Independent { coordinates: Matrix<RatFunc>, rank: usize },
    /// `sum_j relation[j]^(p^depth) * x_j = 0` with `relation` nonzero and
    /// polynomial.
    Dependent { coordinates: Matrix<RatFunc>, rank: usize, relation: Vec<RatFunc> },
}

impl FrobeniusRelation {
    pub fn is_independent(&self) -> bool {
        matches!(self, FrobeniusRelation::Independent { .. })
    }

    pub fn rank(&self) -> usize {
        match self {
            FrobeniusRelation::Independent { rank, .. }
            | FrobeniusRelation::Dependent { rank, .. } => *rank,
        }
    }
}

/// Basis monomials of `k` over `k^(p^depth)` as printable strings.
pub fn frobenius_basis_labels(vars: &[String], p: u64, depth: u32) -> Vec<String> {
    let q = (p as u32).pow(depth);
    frobenius_basis(vars.len(), q)
        .into_iter()
        .map(|m| {
            let s = super::multipoly::fmt_monomial(vars, &m);
            if s.is_empty() {
                "1".to_string()
            } else {
                s
            }
        })
        .collect()
}

/// Clear denominators row by row so each row is polynomial; the rank over
/// `k` is unchanged.
pub fn polynomial_rows(rows: &[Vec<RatFunc>]) -> Matrix<MultiPoly> {
    rows.iter()
        .map(|row| {
            let den = row
                .iter()
                .fold(row[0].den().one_like(), |acc, x| &acc * x.den());
            row.iter()
                .map(|x| {
                    let scaled = &RatFunc::from_poly(den.clone()) * x;
                    debug_assert!(scaled.is_polynomial());
                    scaled.num().clone()
                })
                .collect()
        })
        .collect()
}

/// Decide `k^(p^depth)`-linear dependence of `elements` (all in the same
/// function field, nonzero) by expanding them in the basis of monomials
/// with exponents `< p^depth` and computing an exact rank over `k`.
pub fn frobenius_relation(elements: &[RatFunc], depth: u32) -> FrobeniusRelation {
    assert!(!elements.is_empty(), "need at least one element");
    let coordinates: Matrix<RatFunc> =
        elements.iter().map(|x| x.frobenius_coordinates(depth)).collect();
    let rank = linalg::rank_bareiss(&polynomial_rows(&coordinates));
    if rank == elements.len() {
        return FrobeniusRelation::Independent { coordinates, rank };
    }
    // Relation g with sum_j g_j * coordinates[j] = 0: kernel of the transpose.
    let nb = coordinates[0].len();
    let transpose: Matrix<RatFunc> = (0..nb)
        .map(|e| coordinates.iter().map(|row| row[e].clone()).collect())
        .collect();
    let one = elements[0].one_like();
    let kernel = linalg::nullspace(&transpose, elements.len(), &one);
    let g = kernel.into_iter().next().expect("rank deficiency gives a kernel vector");
    // Scale to polynomial entries.
    let den = g.iter().fold(one.num().clone(), |acc, x| &acc * x.den());
    let relation = g
        .iter()
        .map(|x| &RatFunc::from_poly(den.clone()) * x)
        .collect();
    FrobeniusRelation::Dependent { coordinates, rank, relation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::FunctionField;

    #[test]
    fn powers_of_t_are_independent_over_cubes() {
        let k = FunctionField::univariate(3, "t").unwrap();
        let xs: Vec<_> = ["1", "t", "t^2"].iter().map(|s| k.parse(s).unwrap()).collect();
        assert!(frobenius_relation(&xs, 1).is_independent());
    }

    #[test]
    fn a_cube_is_dependent_on_one() {
        let k = FunctionField::univariate(3, "t").unwrap();
        let xs = vec![k.one(), k.parse("t^3").unwrap()];
        match frobenius_relation(&xs, 1) {
            FrobeniusRelation::Dependent { relation, .. } => {
                let combo = &(&relation[0].frobenius() * &xs[0]) + &(&relation[1].frobenius() * &xs[1]);
                assert!(combo.is_zero());
            }
            other => panic!("expected dependence, got {other:?}"),
        }
    }

    #[test]
    fn bivariate_independence() {
        let k = FunctionField::new(3, &["a", "b"]).unwrap();
        let xs: Vec<_> = ["a", "b", "1"].iter().map(|s| k.parse(s).unwrap()).collect();
        assert!(frobenius_relation(&xs, 1).is_independent());
        let ys: Vec<_> = ["a", "a*b^3", "1"].iter().map(|s| k.parse(s).unwrap()).collect();
        assert!(!frobenius_relation(&ys, 1).is_independent());
    }
}
