//! Exact rank over the rationals.
//!
//! [`rank`] is the shipped backend: rows are scaled to integers, split into
//! connected components of the row/column incidence graph, and each
//! component is reduced with fraction-free elimination (dense below 64×64,
//! sparse with Markowitz pivoting above). [`rank_rational_elimination`] and
//! [`rank_via_modular_check`] are independent cross-checks.

mod bareiss;
mod modular;
mod rational;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::SparseRationalMatrix;

pub use modular::{is_prime_u64, random_prime, rank_mod_prime};
pub use rational::rank_rational_elimination;

/// Components with both dimensions below this use dense elimination.
pub const DENSE_CUTOFF: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub pivot_count: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub(crate) type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators row by row and removes the row content.
pub(crate) fn integer_rows(m: &SparseRationalMatrix) -> Vec<IntRow> {
    m.row_lists()
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let mut ints: IntRow = row
                .into_iter()
                .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
                .collect();
            let g = ints
                .iter()
                .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
            if !g.is_zero() && !g.is_one() {
                for (_, v) in &mut ints {
                    *v /= &g;
                }
            }
            ints
        })
        .collect()
}

/// Splits rows into connected components; columns are renumbered densely
/// within each component.
fn components(rows: Vec<IntRow>, ncols: usize) -> Vec<(Vec<IntRow>, usize)> {
    let nrows = rows.len();
    let mut parent: Vec<usize> = (0..nrows + ncols).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            let (a, b) = (find(&mut parent, r), find(&mut parent, nrows + c));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut comp_of_root = std::collections::HashMap::new();
    let mut out: Vec<(Vec<IntRow>, Vec<usize>)> = Vec::new();
    for (r, row) in rows.into_iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let root = find(&mut parent, r);
        let id = *comp_of_root.entry(root).or_insert_with(|| {
            out.push((Vec::new(), Vec::new()));
            out.len() - 1
        });
        out[id].1.extend(row.iter().map(|(c, _)| *c));
        out[id].0.push(row);
    }
    out.into_iter()
        .map(|(rows, mut cols)| {
            cols.sort_unstable();
            cols.dedup();
            let remap: std::collections::HashMap<usize, usize> =
                cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (remap[&c], v)).collect())
                .collect();
            (rows, cols.len())
        })
        .collect()
}

/// Exact rank by fraction-free elimination.
pub fn rank(m: &SparseRationalMatrix) -> RankReport {
    let start = Instant::now();
    let rows = integer_rows(m);
    let mut total = 0;
    for (comp, ncols) in components(rows, m.cols()) {
        total += if comp.len() < DENSE_CUTOFF && ncols < DENSE_CUTOFF {
            bareiss::dense_rank(&comp, ncols)
        } else {
            bareiss::sparse_rank(comp, ncols)
        };
    }
    RankReport {
        rank: total,
        rows: m.rows(),
        cols: m.cols(),
        pivot_count: total,
        elapsed: start.elapsed(),
    }
}

/// Sparse fraction-free elimination on the whole matrix, without the
/// component split or the dense path.
pub fn rank_sparse_bareiss(m: &SparseRationalMatrix) -> usize {
    bareiss::sparse_rank(integer_rows(m), m.cols())
}

/// Dense fraction-free elimination on the whole matrix.
pub fn rank_dense_bareiss(m: &SparseRationalMatrix) -> usize {
    bareiss::dense_rank(&integer_rows(m), m.cols())
}

/// Rank modulo a freshly drawn random 62-bit prime. Never exceeds the
/// rational rank; equality is expected with overwhelming probability.
pub fn rank_via_modular_check(m: &SparseRationalMatrix) -> RankReport {
    let start = Instant::now();
    let mut rng = rand::rng();
    let r = loop {
        let p = random_prime(&mut rng);
        if let Some(r) = rank_mod_prime(m, p) {
            break r;
        }
    };
    RankReport {
        rank: r,
        rows: m.rows(),
        cols: m.cols(),
        pivot_count: r,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn mat(rows: &[&[i64]]) -> SparseRationalMatrix {
        let dense: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        SparseRationalMatrix::from_dense(&dense)
    }

    #[test]
    fn small_examples() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m).rank, 1);
        assert_eq!(rank_via_modular_check(&m).rank, 1);
        assert_eq!(rank_rational_elimination(&m), 1);
        let z = SparseRationalMatrix::zeros(5, 7);
        assert_eq!(rank(&z).rank, 0);
        assert_eq!(rank_via_modular_check(&z).rank, 0);
        assert_eq!(rank(&SparseRationalMatrix::zeros(0, 0)).rank, 0);
    }

    #[test]
    fn components_are_independent() {
        let m = mat(&[&[1, 0, 0], &[0, 2, 3], &[0, 4, 6], &[0, 0, 0]]);
        let comps = components(integer_rows(&m), 3);
        assert_eq!(comps.len(), 2);
        assert_eq!(rank(&m).rank, 2);
    }

    #[test]
    fn fractions_are_cleared() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let m = SparseRationalMatrix::from_dense(&[
            vec![half.clone(), third.clone()],
            vec![third * BigRational::from_integer(3.into()), half * BigRational::from_integer(4.into()) / BigRational::from_integer(3.into())],
        ]);
        // Row 2 is 2 × row 1.
        assert_eq!(rank(&m).rank, 1);
        assert_eq!(integer_rows(&m)[0], vec![(0, BigInt::from(3)), (1, BigInt::from(2))]);
    }

    #[test]
    fn large_sparse_path_matches_dense() {
        // A 100×100 banded matrix: the sparse path handles it; a rank-deficient
        // copy with duplicated rows checks deficiency detection.
        let n = 100;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, BigRational::from_integer(2.into())));
            if i + 1 < n {
                t.push((i, i + 1, BigRational::from_integer((-1).into())));
            }
        }
        let full = SparseRationalMatrix::from_triplets(n, n, t.clone()).unwrap();
        assert_eq!(rank(&full).rank, n);
        assert_eq!(rank_dense_bareiss(&full), n);
        let mut t2: Vec<_> = t.into_iter().filter(|e| e.0 % 10 != 0).collect();
        for i in (0..n).step_by(10) {
            t2.push((i, 5, BigRational::from_integer(1.into())));
        }
        let def = SparseRationalMatrix::from_triplets(n, n, t2).unwrap();
        let want = rank_dense_bareiss(&def);
        assert_eq!(rank(&def).rank, want);
        assert_eq!(rank_sparse_bareiss(&def), want);
        assert_eq!(rank_rational_elimination(&def), want);
        assert_eq!(want, 91);
    }
}
