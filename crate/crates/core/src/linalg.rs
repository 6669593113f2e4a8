//! Dense exact linear algebra, generic over the scalar domain.
//!
//! Fields get reduced row echelon form and nullspaces; integral domains get
//! fraction-free (Bareiss) elimination and a cofactor-expansion route that
//! tests use as an independent cross-check.

use crate::scalar::{Field, Ring};

pub type Matrix<R> = Vec<Vec<R>>;

fn ncols<R>(m: &[Vec<R>]) -> usize {
    m.first().map_or(0, |r| r.len())
}

/// Reduced row echelon form. Pivots are the first nonzero entry in each
/// column scanning rows top to bottom, so results are reproducible.
/// Returns the reduced matrix and the pivot columns.
pub fn rref<F: Field>(m: &[Vec<F>]) -> (Matrix<F>, Vec<usize>) {
    let mut a: Matrix<F> = m.to_vec();
    let rows = a.len();
    let cols = ncols(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = a[r][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank_field<F: Field>(m: &[Vec<F>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column (free entry 1).
/// `cols` is needed when `m` has no rows.
pub fn nullspace<F: Field>(m: &[Vec<F>], cols: usize, one: &F) -> Vec<Vec<F>> {
    if m.is_empty() {
        return (0..cols)
            .map(|j| {
                (0..cols)
                    .map(|i| if i == j { one.clone() } else { one.zero_like() })
                    .collect()
            })
            .collect();
    }
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![one.zero_like(); cols];
            v[fc] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

/// Fraction-free row echelon form over an integral domain. Every division
/// is exact (Bareiss); returns the rank.
pub fn rank_bareiss<R: Ring>(m: &[Vec<R>]) -> usize {
    let mut a: Matrix<R> = m.to_vec();
    let rows = a.len();
    let cols = ncols(m);
    let Some(sample) = m.iter().flatten().next() else {
        return 0;
    };
    let mut prev = sample.one_like();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c..cols {
                let v = piv.clone() * a[i][j].clone() - f.clone() * a[r][j].clone();
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Determinant by Bareiss elimination.
pub fn det_bareiss<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    let mut a: Matrix<R> = m.to_vec();
    let one = m[0][0].one_like();
    let mut prev = one.clone();
    let mut sign = one.clone();
    for k in 0..n {
        let Some(pr) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return one.zero_like();
        };
        if pr != k {
            a.swap(pr, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Determinant by cofactor expansion along the first row.
pub fn det_laplace<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    match n {
        0 => unreachable!("empty determinant"),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = m[0][0].zero_like();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Matrix<R> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * det_laplace(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rank as the size of the largest nonvanishing minor (cofactor expansion).
/// Exponential; intended for the small matrices used in cross-checks.
pub fn rank_by_minors<R: Ring>(m: &[Vec<R>]) -> usize {
    let rows = m.len();
    let cols = ncols(m);
    for k in (1..=rows.min(cols)).rev() {
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub: Matrix<R> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                    .collect();
                if !det_laplace(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

pub fn mat_vec<R: Ring>(m: &[Vec<R>], v: &[R], zero: &R) -> Vec<R> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(zero.clone(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{Fp, FunctionField, MultiPoly};

    fn fp_mat(p: u64, rows: &[&[i64]]) -> Matrix<Fp> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Fp::new(x, p)).collect())
            .collect()
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let m = fp_mat(5, &[&[1, 2, 3], &[2, 4, 6]]);
        let one = Fp::new(1, 5);
        let ns = nullspace(&m, 3, &one);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&m, v, &one.zero_like()).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank_field(&m), 1);
        assert_eq!(rank_bareiss(&m), 1);
        assert_eq!(rank_by_minors(&m), 1);
    }

    #[test]
    fn empty_system_nullspace_is_everything() {
        let one = Fp::new(1, 3);
        let ns = nullspace::<Fp>(&[], 2, &one);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn determinant_routes_agree_over_polynomials() {
        let k = FunctionField::new(7, &["a", "b"]).unwrap();
        let e = |s: &str| -> MultiPoly { k.parse(s).unwrap().num().clone() };
        let m = vec![
            vec![e("a"), e("b"), e("1")],
            vec![e("b^2"), e("a + 1"), e("a*b")],
            vec![e("3"), e("a^2"), e("b + 2")],
        ];
        assert_eq!(det_bareiss(&m), det_laplace(&m));
        assert_eq!(rank_bareiss(&m), 3);
        let singular = vec![m[0].clone(), m[0].iter().map(|x| x.scale(2)).collect(), m[2].clone()];
        assert_eq!(rank_bareiss(&singular), 2);
        assert_eq!(rank_by_minors(&singular), 2);
    }
}
