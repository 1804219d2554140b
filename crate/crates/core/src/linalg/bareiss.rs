//! Fraction-free (Bareiss) elimination on integer matrices.
//!
//! After `k` steps every active entry equals a `(k+1)×(k+1)` minor of the
//! (permuted) input, and the update
//! `a_ij ← (p·a_ij − a_ik·a_kj) / p_prev` divides exactly. The sparse
//! variant touches only rows with a nonzero in the pivot column; a row last
//! updated at step `s` is brought to step `k` by `row · p_{k-1} / p_{s-1}`,
//! which telescopes the skipped scalings.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntRow;

pub(crate) fn dense_rank(rows: &[IntRow], ncols: usize) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); ncols];
            for (c, v) in r {
                d[*c] = v.clone();
            }
            d
        })
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // Smallest nonzero entry as pivot.
        let Some(p) = (rank..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].bits())
        else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let f = row[col].clone();
            for c in col..ncols {
                let v = &pivot * &row[c] - &f * &pivot_row[c];
                row[c] = exact_div(v, &prev);
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn exact_div(v: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return v;
    }
    let (q, r) = v.div_rem(d);
    assert!(r.is_zero(), "fraction-free elimination lost exactness");
    q
}

struct Row {
    entries: IntRow,
    /// Number of elimination steps this row has been brought through.
    step: usize,
    active: bool,
}

/// Sparse Bareiss with Markowitz pivot selection over the columns of
/// smallest count.
pub(crate) fn sparse_rank(rows: Vec<IntRow>, ncols: usize) -> usize {
    let mut rows: Vec<Row> = rows
        .into_iter()
        .map(|entries| Row {
            entries,
            step: 0,
            active: true,
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in &row.entries {
            col_rows[*c].insert(r);
        }
    }
    // denominators[s] is the divisor applicable at step s: 1, then each pivot.
    let mut denominators: Vec<BigInt> = vec![BigInt::one()];
    let mut rank = 0;

    while let Some((pr, pc)) = choose_pivot(&rows, &col_rows) {
        let step = denominators.len() - 1;
        bring_to(&mut rows[pr], step, &denominators);
        let pivot_entries = std::mem::take(&mut rows[pr].entries);
        rows[pr].active = false;
        for (c, _) in &pivot_entries {
            col_rows[*c].remove(&pr);
        }
        let pivot = lookup(&pivot_entries, pc).expect("pivot entry").clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            bring_to(&mut rows[r], step, &denominators);
            let row = &mut rows[r];
            let factor = lookup(&row.entries, pc).expect("column entry").clone();
            let old_cols: Vec<usize> = row.entries.iter().map(|e| e.0).collect();
            row.entries = combine(
                &row.entries,
                &pivot,
                &pivot_entries,
                &factor,
                &denominators[step],
            );
            row.step = step + 1;
            let new_cols: Vec<usize> = row.entries.iter().map(|e| e.0).collect();
            update_columns(&mut col_rows, r, &old_cols, &new_cols);
        }
        debug_assert!(col_rows[pc].is_empty());
        denominators.push(pivot);
        rank += 1;
    }
    rank
}

fn lookup(entries: &IntRow, col: usize) -> Option<&BigInt> {
    entries
        .binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|i| &entries[i].1)
}

fn bring_to(row: &mut Row, step: usize, denominators: &[BigInt]) {
    if row.step == step {
        return;
    }
    let (num, den) = (&denominators[step], &denominators[row.step]);
    if num != den {
        for (_, v) in &mut row.entries {
            *v = exact_div(&*v * num, den);
        }
    }
    row.step = step;
}

/// `(pivot · row − factor · pivot_row) / den`, merged in column order.
fn combine(row: &IntRow, pivot: &BigInt, pivot_row: &IntRow, factor: &BigInt, den: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot_row.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, pivot * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(factor * &pivot_row[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, pivot * &row[i - 1].1 - factor * &pivot_row[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, exact_div(v, den)));
        }
    }
    out
}

fn update_columns(col_rows: &mut [BTreeSet<usize>], r: usize, old: &[usize], new: &[usize]) {
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < new.len() {
        let a = old.get(i).copied().unwrap_or(usize::MAX);
        let b = new.get(j).copied().unwrap_or(usize::MAX);
        if a < b {
            col_rows[a].remove(&r);
            i += 1;
        } else if b < a {
            col_rows[b].insert(r);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

/// Markowitz cost `(r−1)(c−1)` among the columns of minimal count, ties
/// broken by the smaller entry, then by position.
fn choose_pivot(rows: &[Row], col_rows: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    const CANDIDATE_COLUMNS: usize = 4;
    let mut cols: Vec<(usize, usize)> = col_rows
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(c, s)| (s.len(), c))
        .collect();
    if cols.is_empty() {
        return None;
    }
    let k = CANDIDATE_COLUMNS.min(cols.len());
    cols.select_nth_unstable(k - 1);
    // Markowitz cost, pivot size, then position as the tie-break.
    let mut best: Option<(usize, u64, usize, usize)> = None;
    for &(count, c) in &cols[..k] {
        for &r in &col_rows[c] {
            let row = &rows[r];
            debug_assert!(row.active);
            let v = lookup(&row.entries, c).expect("indexed entry");
            let key = ((row.entries.len() - 1) * (count - 1), v.abs().bits(), r, c);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, r, c)| (r, c))
}
