//! Dense univariate helpers over F_p (coefficients low to high), used for
//! gcd-based reduction of univariate fractions.

use super::fp::inv_mod;

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_factor() {
        // (t+1)(t+2) and (t+1)t over F_5
        let a = mul(&[1, 1], &[2, 1], 5);
        let b = mul(&[1, 1], &[0, 1], 5);
        assert_eq!(gcd(&a, &b, 5), vec![1, 1]);
    }

    #[test]
    fn divrem_reconstructs() {
        let a = vec![3, 0, 2, 1];
        let b = vec![1, 4];
        let (q, r) = divrem(&a, &b, 7);
        let mut back = mul(&q, &b, 7);
        back.resize(a.len().max(back.len()), 0);
        for (i, c) in r.iter().enumerate() {
            back[i] = (back[i] + c) % 7;
        }
        trim(&mut back);
        assert_eq!(back, a);
    }
}
