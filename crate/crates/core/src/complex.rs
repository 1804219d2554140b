//! Monomial bases of bigraded slices and their differential matrices.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{AlgebraMorphism, Dga, Element, GradedAlgebra, Monomial};
use crate::error::{consistency, usage, Error, Result};
use crate::rational::{format_rational, parse_rational};

/// The monomials of weight `n` (when weight graded) and degree `degree`,
/// in lexicographic exponent order.
#[derive(Clone, Debug)]
pub struct BasisSlice {
    pub n: Option<u32>,
    pub degree: u32,
    monomials: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl BasisSlice {
    fn new(n: Option<u32>, degree: u32, monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        let position = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        BasisSlice {
            n,
            degree,
            monomials,
            position,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    /// Coordinates of `x` in this basis; fails if `x` leaves the slice.
    pub fn coordinates(&self, x: &Element) -> Result<Vec<(usize, BigRational)>> {
        x.terms()
            .iter()
            .map(|(m, c)| {
                self.position(m).map(|p| (p, c.clone())).ok_or_else(|| {
                    consistency!(
                        "monomial {} is not in the degree-{} basis slice",
                        x.algebra().format_monomial(m),
                        self.degree
                    )
                })
            })
            .collect()
    }
}

fn check_enumerable(alg: &GradedAlgebra, by_weight: bool) -> Result<()> {
    for g in alg.generators() {
        let bounded = if by_weight {
            g.weight.unwrap_or(0) > 0
        } else {
            g.degree > 0
        };
        if !bounded && !g.is_odd() {
            return Err(Error::Unsupported(format!(
                "generator {} has degree {} and weight {:?}: slices would be infinite",
                g.name, g.degree, g.weight
            )));
        }
    }
    Ok(())
}

/// Depth-first enumeration of exponent vectors, ascending at every position,
/// so output is in lexicographic order. `weight` bounds when given; the
/// degree bound always applies.
fn enumerate(
    alg: &GradedAlgebra,
    weight: Option<u32>,
    max_degree: u32,
    mut visit: impl FnMut(&[u32], u32),
) {
    fn rec(
        alg: &GradedAlgebra,
        idx: usize,
        exps: &mut Vec<u32>,
        rw: Option<u32>,
        rd: u32,
        visit: &mut dyn FnMut(&[u32], u32),
        max_degree: u32,
    ) {
        if idx == alg.len() {
            if rw.unwrap_or(0) == 0 {
                visit(exps, max_degree - rd);
            }
            return;
        }
        let g = &alg.generators()[idx];
        let gw = g.weight.unwrap_or(0);
        let mut cap = if g.is_odd() { 1 } else { u32::MAX };
        if let Some(c) = rw.and_then(|r| r.checked_div(gw)) {
            cap = cap.min(c);
        }
        if let Some(c) = rd.checked_div(g.degree) {
            cap = cap.min(c);
        }
        for e in 0..=cap {
            exps.push(e);
            rec(
                alg,
                idx + 1,
                exps,
                rw.map(|r| r - e * gw),
                rd - e * g.degree,
                visit,
                max_degree,
            );
            exps.pop();
        }
    }
    let mut exps = Vec::with_capacity(alg.len());
    rec(alg, 0, &mut exps, weight, max_degree, &mut visit, max_degree);
}

/// All monomials of weight `n` and degree `i`; pass `n = None` to enumerate
/// an algebra without weight grading by degree alone.
pub fn enumerate_basis(alg: &GradedAlgebra, n: Option<u32>, i: u32) -> Result<BasisSlice> {
    if n.is_some() && !alg.is_weight_graded() {
        return Err(usage!("weight requested for an algebra without weight grading"));
    }
    check_enumerable(alg, n.is_some())?;
    let mut out = Vec::new();
    enumerate(alg, n, i, |e, deg| {
        if deg == i {
            out.push(Monomial::from_raw(e.to_vec()));
        }
    });
    Ok(BasisSlice::new(n, i, out))
}

/// Every degree slice of weight `n`, indexed by degree from 0 through
/// `max(2n, top degree present)`.
pub fn enumerate_weight(alg: &GradedAlgebra, n: u32) -> Result<Vec<BasisSlice>> {
    if !alg.is_weight_graded() {
        return Err(usage!("algebra has no weight grading"));
    }
    check_enumerable(alg, true)?;
    // At most n occurrences of positive-weight generators, plus each
    // weight-zero odd generator at most once.
    let gens = alg.generators();
    let max_degree = gens.iter().map(|g| g.degree).max().unwrap_or(0);
    let free: u32 = gens
        .iter()
        .filter(|g| g.weight == Some(0))
        .map(|g| g.degree)
        .sum();
    let bound = n * max_degree + free;
    let mut buckets: Vec<Vec<Monomial>> = Vec::new();
    enumerate(alg, Some(n), bound, |e, deg| {
        let deg = deg as usize;
        if buckets.len() <= deg {
            buckets.resize_with(deg + 1, Vec::new);
        }
        buckets[deg].push(Monomial::from_raw(e.to_vec()));
    });
    let top = buckets.len().max(2 * n as usize + 1);
    buckets.resize_with(top, Vec::new);
    Ok(buckets
        .into_iter()
        .enumerate()
        .map(|(i, ms)| BasisSlice::new(Some(n), i as u32, ms))
        .collect())
}

/// Sparse matrix with exact rational entries, stored as `(row, col, value)`
/// sorted by position, without duplicates or zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigRational)>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Duplicate positions are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, BigRational)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(usage!("entry ({r}, {c}) outside a {rows}×{cols} matrix"));
            }
            entries.push((r, c, v));
        }
        entries.sort_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(usize, usize, BigRational)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| !e.2.is_zero());
        Ok(SparseRationalMatrix {
            rows,
            cols,
            entries: merged,
        })
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, v.clone()))
        });
        Self::from_triplets(rows.len(), cols, triplets).expect("in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, BigRational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let t = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone()));
        Self::from_triplets(self.cols, self.rows, t).expect("in range")
    }

    /// Row-major sparse rows.
    pub fn row_lists(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn column_support(&self, col: usize) -> usize {
        self.entries.iter().filter(|e| e.1 == col).count()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseRationalMatrix) -> Result<SparseRationalMatrix> {
        if self.cols != rhs.rows {
            return Err(usage!(
                "cannot multiply {}×{} by {}×{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            ));
        }
        let rhs_rows = rhs.row_lists();
        let mut out = Vec::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rhs_rows[*k] {
                out.push((*r, *c, a * b));
            }
        }
        Self::from_triplets(self.rows, rhs.cols, out)
    }

    pub fn scale_rows(&self, factors: &[BigRational]) -> Self {
        let t = self
            .entries
            .iter()
            .map(|(r, c, v)| (*r, *c, v * &factors[*r]));
        Self::from_triplets(self.rows, self.cols, t).expect("in range")
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let t = self.entries.iter().map(|(r, c, v)| (perm[*r], *c, v.clone()));
        Self::from_triplets(self.rows, self.cols, t).expect("in range")
    }

    /// Coordinate text: a `%%dims rows cols nnz` header, then one
    /// `row col value` line per entry with 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut s = format!("%%dims {} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in &self.entries {
            let _ = writeln!(s, "{} {} {}", r + 1, c + 1, format_rational(v));
        }
        s
    }

    pub fn from_matrix_market(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let dims: Vec<usize> = header
            .strip_prefix("%%dims")
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(Error::Parse(format!("bad entry line {line:?}")));
            };
            let idx = |t: &str| -> Result<usize> {
                let k: usize = t.parse().map_err(|_| Error::Parse(format!("bad index {t:?}")))?;
                k.checked_sub(1)
                    .ok_or_else(|| Error::Parse("indices are 1-based".into()))
            };
            triplets.push((idx(r)?, idx(c)?, parse_rational(v)?));
        }
        if triplets.len() != nnz {
            return Err(Error::Parse(format!(
                "header announces {nnz} entries, found {}",
                triplets.len()
            )));
        }
        Self::from_triplets(rows, cols, triplets)
    }
}

/// Matrix of a linear map given on basis monomials, columns indexed by
/// `domain`, rows by `codomain`.
pub fn matrix_of(
    domain: &BasisSlice,
    codomain: &BasisSlice,
    mut image: impl FnMut(&Monomial) -> Result<Element>,
) -> Result<SparseRationalMatrix> {
    let mut triplets = Vec::new();
    for (col, m) in domain.monomials().iter().enumerate() {
        for (row, v) in codomain.coordinates(&image(m)?)? {
            triplets.push((row, col, v));
        }
    }
    SparseRationalMatrix::from_triplets(codomain.len(), domain.len(), triplets)
}

/// Matrix of `D` from the `(n, i)` slice to the `(n, i + 1)` slice.
pub fn assemble_differential(
    dga: &Dga,
    domain: &BasisSlice,
    codomain: &BasisSlice,
) -> Result<SparseRationalMatrix> {
    if domain.degree + 1 != codomain.degree || domain.n != codomain.n {
        return Err(usage!(
            "codomain slice (n={:?}, i={}) does not follow domain slice (n={:?}, i={})",
            codomain.n,
            codomain.degree,
            domain.n,
            domain.degree
        ));
    }
    let d = dga.differential();
    matrix_of(domain, codomain, |m| Ok(d.apply_monomial(m)))
}

/// Matrix of an algebra morphism between two slices of equal degree.
pub fn morphism_matrix(
    f: &AlgebraMorphism,
    domain: &BasisSlice,
    codomain: &BasisSlice,
) -> Result<SparseRationalMatrix> {
    matrix_of(domain, codomain, |m| Ok(f.apply_monomial(m)))
}
