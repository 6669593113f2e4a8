//! Exact computations with p-polynomial group schemes over `F_p(t)`.
//!
//! The crate provides function-field arithmetic, the inseparable tower
//! `k ⊂ k^(1/p) ⊂ k^(1/p^2) ⊂ ...`, p-polynomial presentations with a
//! woundness test, Weil restriction bundles, a Frobenius-semilinear solver,
//! a hyperelliptic regularity pipeline and a brute-force enumeration oracle.

pub mod basefield;
pub mod cli;
pub mod curve;
pub mod error;
pub mod extsolve;
pub mod linalg;
pub mod oracle;
pub mod ppoly;
pub mod scalar;
pub mod tower;
pub mod weil;

pub use error::{Error, Result};

/// p-polynomials with coefficients in a function field over `F_p`.
pub type KPPolynomial = ppoly::PPolynomial<basefield::RatFunc>;
/// p-polynomials with coefficients in the inseparable tower.
pub type TowerPPolynomial = ppoly::PPolynomial<tower::TowerElement>;
