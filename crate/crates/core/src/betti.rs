//! Betti tables by rank–nullity, closed forms, and Poincaré series.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Dga;
use crate::complex::{assemble_differential, enumerate_basis, enumerate_weight, BasisSlice};
use crate::error::{consistency, usage, Error, Result};
use crate::linalg::rank;
use crate::model::{Family, ModelDga};

/// `dims[i] = dim H^i(Ω_n, D)`, with the slice dimensions and the ranks of
/// `D: Ω_n^i → Ω_n^{i+1}` it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub manifold: String,
    pub n: u32,
    pub dims: Vec<usize>,
    pub slice_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BettiTable {
    pub fn euler_from_slices(&self) -> i64 {
        alternating(&self.slice_dims)
    }

    pub fn euler_from_dims(&self) -> i64 {
        alternating(&self.dims)
    }

    /// `dims[i]` or 0 past the end of the table.
    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    /// Rank–nullity bookkeeping and the Euler characteristic identity.
    pub fn check_consistency(&self) -> Result<()> {
        let len = self.slice_dims.len();
        if self.dims.len() != len || self.ranks.len() != len {
            return Err(consistency!("table columns have different lengths"));
        }
        for i in 0..len {
            let before = if i == 0 { 0 } else { self.ranks[i - 1] };
            let expect = self.slice_dims[i] as i64 - self.ranks[i] as i64 - before as i64;
            if expect < 0 || expect as usize != self.dims[i] {
                return Err(consistency!("rank–nullity fails at degree {i}"));
            }
        }
        if *self.ranks.last().unwrap_or(&0) != 0 {
            return Err(consistency!("nonzero differential out of the top degree"));
        }
        if self.euler_from_slices() != self.euler_from_dims() {
            return Err(consistency!("Euler characteristics disagree"));
        }
        Ok(())
    }
}

pub(crate) fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Ranks of the differential between consecutive slices; the last entry is
/// the map out of the top slice, which is zero.
pub(crate) fn slice_ranks(dga: &Dga, slices: &[BasisSlice]) -> Result<Vec<usize>> {
    let mut ranks: Vec<usize> = (0..slices.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let m = assemble_differential(dga, &slices[i], &slices[i + 1])?;
            Ok(rank(&m).rank)
        })
        .collect::<Result<_>>()?;
    ranks.push(0);
    Ok(ranks)
}

fn dims_from(slice_dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..slice_dims.len())
        .map(|i| slice_dims[i] - ranks[i] - if i == 0 { 0 } else { ranks[i - 1] })
        .collect()
}

/// `H*(Ω_n, D)` for `0 ≤ i ≤ max(2n, top degree)`.
pub fn betti(model: &ModelDga, n: u32) -> Result<BettiTable> {
    let slices = enumerate_weight(model.algebra(), n)?;
    if let Some(top) = slices.last() {
        if !top.is_empty() && top.degree as usize + 1 != slices.len() {
            return Err(consistency!("slice list does not end at the top degree"));
        }
    }
    let ranks = slice_ranks(model.dga(), &slices)?;
    let slice_dims: Vec<usize> = slices.iter().map(BasisSlice::len).collect();
    let dims = dims_from(&slice_dims, &ranks);
    let mut notes: Vec<String> = model.warnings().to_vec();
    if n <= 1 {
        notes.push("n ≤ 1: C_1(X) ≃ X and C_0(X) is a point".to_string());
    } else if n == 2 {
        if let Family::EvenSphere { .. } = model.cohomology().family() {
            notes.push("outside stated range: the sphere closed form is stated for n ≥ 3".to_string());
        }
    }
    let table = BettiTable {
        manifold: model.name().to_string(),
        n,
        dims,
        slice_dims,
        ranks,
        notes,
    };
    table.check_consistency()?;
    Ok(table)
}

/// `dim H^i` for `0 ≤ i ≤ i_max` of a complex graded by degree alone. Every
/// generator must have positive degree so that each degree slice is finite.
pub fn betti_graded_only(dga: &Dga, i_max: u32) -> Result<Vec<usize>> {
    let alg = dga.algebra();
    if let Some(g) = alg.generators().iter().find(|g| g.degree == 0) {
        return Err(Error::Unsupported(format!(
            "generator {} has degree 0: degree slices are infinite",
            g.name
        )));
    }
    let slices: Vec<BasisSlice> = (0..=i_max + 1)
        .into_par_iter()
        .map(|i| enumerate_basis(alg, None, i))
        .collect::<Result<_>>()?;
    let ranks: Vec<usize> = (0..=i_max as usize)
        .into_par_iter()
        .map(|i| Ok(rank(&assemble_differential(dga, &slices[i], &slices[i + 1])?).rank))
        .collect::<Result<_>>()?;
    Ok((0..=i_max as usize)
        .map(|i| slices[i].len() - ranks[i] - if i == 0 { 0 } else { ranks[i - 1] })
        .collect())
}

/// Closed-form Betti numbers of `C_n(Σ_1)`.
pub fn torus_closed_form(n: u32, i: u32) -> Result<u64> {
    if n < 2 {
        return Err(usage!("the torus closed form needs n ≥ 2, got {n}"));
    }
    let (n, i) = (n as u64, i as u64);
    let even = n % 2 == 0;
    Ok(match i {
        0 => 1,
        1 => 2,
        _ if i < n => 2 * i - 1,
        _ if i == n && even => (3 * n - 4) / 2,
        _ if i == n => (3 * n - 1) / 2,
        _ if i == n + 1 && even => (n - 2) / 2,
        _ if i == n + 1 => n.div_ceil(2),
        _ => 0,
    })
}

/// Closed-form Betti numbers of `C_n(S^{2d})` for `n ≥ 3`: 1 in degrees 0 and
/// `4d − 1`.
pub fn sphere_closed_form(d: u32, n: u32, i: u32) -> Result<u64> {
    if d == 0 || n < 3 {
        return Err(usage!("the sphere closed form needs d ≥ 1 and n ≥ 3"));
    }
    Ok(u64::from(i == 0 || i == 4 * d - 1))
}

/// Coefficients through `t^{i_max}` of `Π_odd (1 + t^deg) / Π_even (1 − t^deg)`,
/// the Poincaré series of the free graded-commutative algebra on generators
/// of the given degrees.
pub fn poincare_series_coeffs(degrees: &[u32], i_max: u32) -> Result<Vec<u128>> {
    if let Some(&d) = degrees.iter().find(|&&d| d == 0) {
        return Err(usage!("generator degrees must be positive, got {d}"));
    }
    let len = i_max as usize + 1;
    let mut series = vec![0u128; len];
    series[0] = 1;
    for &d in degrees {
        let d = d as usize;
        if d % 2 == 1 {
            for k in (d..len).rev() {
                series[k] += series[k - d];
            }
        } else {
            for k in d..len {
                series[k] += series[k - d];
            }
        }
    }
    Ok(series)
}
