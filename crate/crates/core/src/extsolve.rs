//! Frobenius-semilinear equations over `F_p(t)` and the computation of
//! `Ext^1(U, G_m)` for the wound groups `y^p = x - t x^p`.
//!
//! A semilinear system is a list of equations `sum c_{j,i} x_j^(p^i) = 0`.
//! Its solutions with polynomial entries of degree `<= D` form an F_p-vector
//! space: writing `x_j = sum_m x_{j,m} t^m` turns `x_j^(p^i)` into
//! `sum_m x_{j,m} t^(m p^i)`, which is F_p-linear in the digits `x_{j,m}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basefield::{frobenius_relation, Fp, FunctionField, MultiPoly, RatFunc};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ppoly::PPolynomial;
use crate::scalar::Ring;

/// Homogeneous semilinear equations in `nunknowns` unknowns over `F_p(t)`.
#[derive(Clone, PartialEq)]
pub struct SemilinearSystem {
    field: FunctionField,
    nunknowns: usize,
    equations: Vec<PPolynomial<RatFunc>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Completeness {
    /// A proof bounds the degree of every solution by the search degree.
    CompleteByBoundProof,
    /// Only solutions of degree `<=` the bound were searched.
    BoundedOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBasis {
    pub degree_bound: u32,
    pub basis: Vec<Vec<RatFunc>>,
    pub completeness: Completeness,
}

impl SolutionBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

impl SemilinearSystem {
    pub fn new(field: FunctionField, nunknowns: usize, equations: Vec<PPolynomial<RatFunc>>) -> Result<Self> {
        if field.vars().len() != 1 || field.vars()[0] != "t" {
            return Err(Error::Invalid("semilinear systems are solved over F_p(t)".into()));
        }
        for e in &equations {
            if e.nvars() != nunknowns {
                return Err(Error::ArityMismatch { expected: nunknowns, got: e.nvars() });
            }
        }
        Ok(Self { field, nunknowns, equations })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn nunknowns(&self) -> usize {
        self.nunknowns
    }

    pub fn equations(&self) -> &[PPolynomial<RatFunc>] {
        &self.equations
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.nunknowns).map(|j| format!("c{j}")).collect()
    }

    pub fn is_solution(&self, x: &[RatFunc]) -> Result<bool> {
        for e in &self.equations {
            if !e.evaluate(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parse the JSON form `{"unknowns": m, "equations": [[[j, i, "coeff"], ...], ...]}`.
    /// A flat list of triples is read as a single equation.
    pub fn from_json(p: u64, src: &str) -> Result<Self> {
        let file: SystemFile =
            serde_json::from_str(src).map_err(|e| Error::Invalid(format!("system file: {e}")))?;
        let field = FunctionField::univariate(p, "t")?;
        let groups: Vec<Vec<(usize, u32, String)>> = match file.equations {
            EquationList::Many(v) => v,
            EquationList::One(v) => vec![v],
        };
        let mut equations = Vec::new();
        for terms in groups {
            let mut f = PPolynomial::zero(file.unknowns);
            for (j, i, c) in terms {
                if j >= file.unknowns {
                    return Err(Error::Invalid(format!("unknown index {j} out of range")));
                }
                f.add_term(j, i, field.parse(&c)?);
            }
            equations.push(f);
        }
        Self::new(field, file.unknowns, equations)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let eqs: Vec<Vec<(usize, u32, String)>> = self
            .equations
            .iter()
            .map(|e| e.terms().map(|(j, i, c)| (j, i, c.to_string())).collect())
            .collect();
        serde_json::json!({ "unknowns": self.nunknowns, "equations": eqs })
    }
}

impl fmt::Debug for SemilinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.display()).finish()
    }
}

impl SemilinearSystem {
    /// Canonical text of every equation (`... = 0`).
    pub fn display(&self) -> Vec<String> {
        let names = self.names();
        self.equations
            .iter()
            .map(|e| format!("{} = 0", e.display_with(&names)))
            .collect()
    }
}

#[derive(Deserialize)]
struct SystemFile {
    unknowns: usize,
    equations: EquationList,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EquationList {
    Many(Vec<Vec<(usize, u32, String)>>),
    One(Vec<(usize, u32, String)>),
}

/// All solutions with polynomial entries of degree `<= degree_bound`, as an
/// F_p-basis. The basis is reproducible: elimination pivots on the first
/// nonzero entry.
pub fn kernel_bounded(sys: &SemilinearSystem, degree_bound: u32) -> SolutionBasis {
    let p = sys.p();
    let width = degree_bound as usize + 1;
    let ncols = sys.nunknowns * width;
    let mut rows: Vec<Vec<Fp>> = Vec::new();
    for eq in &sys.equations {
        // Clear denominators; the solution set is unchanged.
        let den = eq
            .terms()
            .fold(sys.field.poly_zero().one_like(), |acc, (_, _, c)| &acc * c.den());
        let mut by_power: BTreeMap<u64, Vec<Fp>> = BTreeMap::new();
        for (j, i, c) in eq.terms() {
            let scaled = &RatFunc::from_poly(den.clone()) * c;
            let pi = p.pow(i);
            for (exp, a) in scaled.num().terms() {
                for m in 0..width {
                    let target = exp[0] as u64 + m as u64 * pi;
                    let row = by_power.entry(target).or_insert_with(|| vec![Fp::new(0, p); ncols]);
                    row[j * width + m] = row[j * width + m] + a;
                }
            }
        }
        rows.extend(by_power.into_values());
    }
    let kernel = linalg::nullspace(&rows, ncols, &Fp::new(1, p));
    let vars = sys.field.vars().clone();
    let basis = kernel
        .into_iter()
        .map(|v| {
            (0..sys.nunknowns)
                .map(|j| {
                    let dense: Vec<u64> = v[j * width..(j + 1) * width].iter().map(|c| c.value()).collect();
                    RatFunc::from_poly(MultiPoly::from_dense(p, vars.clone(), &dense))
                })
                .collect()
        })
        .collect();
    SolutionBasis { degree_bound, basis, completeness: Completeness::BoundedOnly }
}

/// `c_{p-2} - sum_{j <= p-2} t^j c_j^p = 0` in unknowns `c_0..c_{p-2}`,
/// whose solution space is `Ext^1(U, G_m)` for `U: y^p = x - t x^p`.
pub fn kmt_system(p: u64) -> Result<SemilinearSystem> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(p));
    }
    let k = FunctionField::univariate(p, "t")?;
    let m = p as usize - 1;
    let t = k.var("t")?;
    let mut f = PPolynomial::zero(m);
    f.add_term(m - 1, 0, k.one());
    for j in 0..m {
        f.add_term(j, 1, -t.pow(j as u64));
    }
    SemilinearSystem::new(k, m, vec![f])
}

/// One checked step of the degree-bound argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub name: String,
    pub statement: String,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    pub bound: u32,
    pub trace: Vec<TraceStep>,
}

impl DegreeBound {
    pub fn verified(&self) -> bool {
        self.trace.iter().all(|s| s.verified)
    }
}

fn factorial_mod(n: u64, p: u64) -> u64 {
    (1..=n).fold(1, |acc, i| acc * i % p)
}

/// The bound `D` for which [`kernel_bounded`] is complete on
/// [`kmt_system`], with each step of the argument instantiated for `p` and
/// checked by direct computation:
///
/// * differentiating `p - 2` times kills `t^j c_j^p` for `j < p - 2` and
///   turns `t^(p-2) c^p` into `(p-2)! c^p`, so `c^((p-2)) = (p-2)! c^p`
///   for `c = c_{p-2}`;
/// * at a pole of order `e >= 1` the left side has order `<= e + p - 2`
///   and the right side order `p e`, which is larger, so `c` is a
///   polynomial;
/// * a polynomial of degree `d` has `c^((p-2))` of degree `< p d` (or zero),
///   so `c` is constant, and then the left side vanishes, so `c = 0`;
/// * with `c_{p-2} = 0` the rest is a `k^p`-linear relation among
///   `1, t, ..., t^(p-3)`, which are independent.
///
/// Hence every solution is zero and `D = 0` already gives the full answer.
pub fn kmt_degree_bound(p: u64) -> Result<DegreeBound> {
    let sys = kmt_system(p)?;
    let k = sys.field().clone();
    let t = k.var("t")?;
    let order = p - 2;
    let mut trace = Vec::new();

    // Derivatives of the coefficients t^j.
    let mut ok = true;
    for j in 0..=order {
        let mut d = t.pow(j);
        for _ in 0..order {
            d = d.derivative("t")?;
        }
        let expected = if j < order { k.zero() } else { k.constant(factorial_mod(order, p) as i64) };
        ok &= d == expected;
    }
    // Derivatives of p-th powers vanish, so D^(p-2)(t^j c^p) = D^(p-2)(t^j) c^p.
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(p);
    for _ in 0..8 {
        let c = k.random_element(&mut rng, 4, 3);
        ok &= c.frobenius().derivative("t")?.is_zero();
    }
    let fact = factorial_mod(order, p);
    trace.push(TraceStep {
        name: "derivative identity".into(),
        statement: format!("c{order}^({order}) = {fact}*c{order}^{p}"),
        verified: ok,
    });

    // Pole orders: p e > e + p - 2 for every e >= 1, since the difference
    // is (p - 1)(e - 1) + 1.
    let poles_ok = (1..=64u64).all(|e| p * e > e + p - 2)
        && (1..=64u64).all(|e| p * e - (e + p - 2) == (p - 1) * (e - 1) + 1);
    trace.push(TraceStep {
        name: "no poles".into(),
        statement: format!("pole order e >= 1 would need {p}e <= e + {order}"),
        verified: poles_ok,
    });

    // Degrees: for d >= order, deg c^((p-2)) <= d - (p-2) < p d; for
    // 1 <= d < order it vanishes; a nonzero constant has zero derivative.
    let degree_ok = (0..=64u64).all(|d| d < order || d - order < p * d);
    let constant_ok = {
        let mut c = k.constant(1);
        for _ in 0..order {
            c = c.derivative("t")?;
        }
        c.is_zero() && fact != 0
    };
    trace.push(TraceStep {
        name: "degree".into(),
        statement: format!("deg c{order}^({order}) < {p}*deg c{order}, so c{order} = 0"),
        verified: degree_ok && constant_ok,
    });

    let powers: Vec<RatFunc> = (0..order).map(|j| t.pow(j)).collect();
    let indep = powers.is_empty() || pth_power_independence(&powers, 1);
    trace.push(TraceStep {
        name: "independence over k^p".into(),
        statement: format!("1, ..., t^{} independent over k^{p}", order.saturating_sub(1)),
        verified: indep,
    });

    Ok(DegreeBound { bound: 0, trace })
}

/// `kernel_bounded` on the KMT system, marked complete when the
/// degree-bound argument checks out and `degree_bound` reaches it.
pub fn ext1(p: u64, degree_bound: u32) -> Result<(SemilinearSystem, SolutionBasis, DegreeBound)> {
    let sys = kmt_system(p)?;
    let proof = kmt_degree_bound(p)?;
    let mut basis = kernel_bounded(&sys, degree_bound);
    if proof.verified() && degree_bound >= proof.bound {
        basis.completeness = Completeness::CompleteByBoundProof;
    }
    Ok((sys, basis, proof))
}

/// True iff the nonzero `elements` are linearly independent over
/// `F_p(t)^(p^d)`.
pub fn pth_power_independence(elements: &[RatFunc], d: u32) -> bool {
    frobenius_relation(elements, d).is_independent()
}
