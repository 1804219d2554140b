use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::complex::SparseRationalMatrix;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniform random prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.random_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u64().expect("reduced below p")
}

/// Rank over `F_p`; `None` when `p` divides a denominator.
pub fn rank_mod_prime(m: &SparseRationalMatrix, p: u64) -> Option<usize> {
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m.rows()];
    for (r, c, v) in m.entries() {
        let den = reduce(v.denom(), p);
        if den == 0 {
            return None;
        }
        let val = mul_mod(reduce(v.numer(), p), pow_mod(den, p - 2, p), p);
        if val != 0 {
            rows[*r].push((*c, val));
        }
    }
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for mut row in rows {
        while let Some(&(lead, coeff)) = row.first() {
            let Some(piv) = pivots.get(&lead) else {
                let inv = pow_mod(coeff, p - 2, p);
                for (_, v) in &mut row {
                    *v = mul_mod(*v, inv, p);
                }
                pivots.insert(lead, row);
                break;
            };
            row = axpy_mod(&row, coeff, piv, p);
        }
    }
    Some(pivots.len())
}

fn axpy_mod(row: &[(usize, u64)], f: u64, pivot: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1)
        } else {
            let sub = mul_mod(f, pivot[j].1, p);
            j += 1;
            if ci == cj {
                i += 1;
                (ci, (row[i - 1].1 + p - sub) % p)
            } else {
                (cj, (p - sub) % p)
            }
        };
        if v != 0 {
            out.push((col, v));
        }
    }
    out
}
