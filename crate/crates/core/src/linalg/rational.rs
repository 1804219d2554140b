use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::SparseRationalMatrix;

/// Textbook row reduction over `Q`: each row is reduced against the
/// normalized pivot rows keyed by leading column.
pub fn rank_rational_elimination(m: &SparseRationalMatrix) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, BigRational)>> = BTreeMap::new();
    for mut row in m.row_lists() {
        while let Some((lead, coeff)) = row.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                let inv = BigRational::one() / coeff;
                for (_, v) in &mut row {
                    *v *= &inv;
                }
                pivots.insert(lead, row);
                break;
            };
            row = axpy(&row, &coeff, p);
        }
    }
    pivots.len()
}

/// `row − f · pivot`, dropping zeros.
fn axpy(
    row: &[(usize, BigRational)],
    f: &BigRational,
    pivot: &[(usize, BigRational)],
) -> Vec<(usize, BigRational)> {
    let mut acc: BTreeMap<usize, BigRational> = row.iter().cloned().collect();
    for (c, v) in pivot {
        let e = acc.entry(*c).or_insert_with(BigRational::zero);
        *e -= f * v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}
