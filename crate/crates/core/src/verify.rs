//! Verification drivers: the torus closed form over a range of `n`, and the
//! structural checks on the auxiliary complexes and maps.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraMorphism, Element};
use crate::betti::{betti, betti_graded_only, poincare_series_coeffs, torus_closed_form, BettiTable};
use crate::complex::{
    assemble_differential, enumerate_basis, enumerate_weight, morphism_matrix, SparseRationalMatrix,
};
use crate::error::{usage, Result};
use crate::linalg::rank;
use crate::model::{build_model, sphere_preset, torus_preset, ModelDga};
use crate::torus::{p_map, phi_map, pi_map, theta0_model, theta_model, top_cocycle_basis};

#[derive(Clone, Debug, Serialize)]
pub struct TheoremEntry {
    pub n: u32,
    pub slice_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub betti: Vec<usize>,
    pub closed_form: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Euler characteristic of `Ω_n`, from the slice dimensions.
    pub euler: i64,
    pub euler_from_betti: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityViolation {
    pub n: u32,
    pub i: usize,
    pub dim_n: usize,
    pub dim_n_plus_1: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub manifold: String,
    pub n_max: u32,
    pub entries: Vec<TheoremEntry>,
    pub stability_checked: usize,
    pub stability_violations: Vec<StabilityViolation>,
    pub all_passed: bool,
}

impl TheoremReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per `(n, i)`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "i", "slice_dim", "rank", "betti", "closed_form", "match"])
            .expect("in-memory write");
        for e in &self.entries {
            for i in 0..e.betti.len() {
                w.write_record([
                    e.n.to_string(),
                    i.to_string(),
                    e.slice_dims[i].to_string(),
                    e.ranks[i].to_string(),
                    e.betti[i].to_string(),
                    e.closed_form[i].to_string(),
                    (e.betti[i] as u64 == e.closed_form[i]).to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&format!(
                "n={:<3} betti={:?} closed_form={:?} euler={} {}\n",
                e.n,
                e.betti,
                e.closed_form,
                e.euler,
                if e.matches { "✓" } else { "✗" }
            ));
        }
        s.push_str(&format!(
            "stability: {} comparisons, {} violations\n",
            self.stability_checked,
            self.stability_violations.len()
        ));
        s.push_str(if self.all_passed { "all checks passed\n" } else { "FAILED\n" });
        s
    }
}

/// `dims(n+1)[i] = dims(n)[i]` for `i < n`, over consecutive tables.
pub fn stability_violations(tables: &[BettiTable]) -> (usize, Vec<StabilityViolation>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for pair in tables.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if b.n != a.n + 1 {
            continue;
        }
        for i in 0..a.n as usize {
            checked += 1;
            if a.dim(i) != b.dim(i) {
                bad.push(StabilityViolation {
                    n: a.n,
                    i,
                    dim_n: a.dim(i),
                    dim_n_plus_1: b.dim(i),
                });
            }
        }
    }
    (checked, bad)
}

/// Compares computed torus tables against the closed form for `2 ≤ n ≤ n_max`.
pub fn verify_theorem(n_max: u32) -> Result<TheoremReport> {
    if n_max < 2 {
        return Err(usage!("n-max must be at least 2, got {n_max}"));
    }
    let model = build_model(&torus_preset())?;
    let tables: Vec<BettiTable> = (2..=n_max)
        .into_par_iter()
        .map(|n| betti(&model, n))
        .collect::<Result<_>>()?;
    let entries: Vec<TheoremEntry> = tables
        .iter()
        .map(|t| {
            let closed_form: Vec<u64> = (0..t.dims.len() as u32)
                .map(|i| torus_closed_form(t.n, i))
                .collect::<Result<_>>()?;
            let matches = t
                .dims
                .iter()
                .zip(&closed_form)
                .all(|(&d, &c)| d as u64 == c);
            Ok(TheoremEntry {
                n: t.n,
                slice_dims: t.slice_dims.clone(),
                ranks: t.ranks.clone(),
                betti: t.dims.clone(),
                closed_form,
                matches,
                euler: t.euler_from_slices(),
                euler_from_betti: t.euler_from_dims(),
            })
        })
        .collect::<Result<_>>()?;
    let (stability_checked, stability_violations) = stability_violations(&tables);
    let all_passed = stability_violations.is_empty()
        && entries
            .iter()
            .all(|e| e.matches && e.euler == 0 && e.euler_from_betti == 0);
    Ok(TheoremReport {
        manifold: model.name().to_string(),
        n_max,
        entries,
        stability_checked,
        stability_violations,
        all_passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, n: Option<u32>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            n,
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, n: Option<u32>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, n, passed, detail),
            Err(e) => Check::new(name, n, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub n_max: u32,
    pub degree_max: u32,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl StructureReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "n", "passed", "detail"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                c.name.clone(),
                c.n.map(|n| n.to_string()).unwrap_or_default(),
                c.passed.to_string(),
                c.detail.clone(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let n = c.n.map(|n| format!(" n={n}")).unwrap_or_default();
            s.push_str(&format!(
                "{} {}{}: {}\n",
                if c.passed { "✓" } else { "✗" },
                c.name,
                n,
                c.detail
            ));
        }
        s.push_str(if self.all_passed { "all checks passed\n" } else { "FAILED\n" });
        s
    }
}

/// `D∘D = 0` as a product of consecutive slice matrices, for every degree.
pub fn check_d_squared(model: &ModelDga, n: u32) -> Result<(bool, String)> {
    let slices = enumerate_weight(model.algebra(), n)?;
    let mats: Vec<SparseRationalMatrix> = slices
        .windows(2)
        .map(|w| assemble_differential(model.dga(), &w[0], &w[1]))
        .collect::<Result<_>>()?;
    for (i, pair) in mats.windows(2).enumerate() {
        if !pair[1].mul(&pair[0])?.is_zero() {
            return Ok((false, format!("D∘D ≠ 0 from degree {i}")));
        }
    }
    Ok((true, format!("{} composites vanish", mats.len().saturating_sub(1))))
}

/// `χ(Ω_n)` from slice dimensions alone.
pub fn euler_from_slices(model: &ModelDga, n: u32) -> Result<i64> {
    let dims: Vec<usize> = enumerate_weight(model.algebra(), n)?
        .iter()
        .map(|s| s.len())
        .collect();
    Ok(crate::betti::alternating(&dims))
}

/// `π∘D = d∘π` on every basis monomial of `Ω_n`.
pub fn check_pi_commutes(omega: &ModelDga, n: u32) -> Result<(bool, String)> {
    let pi = pi_map(omega)?;
    let theta = theta_model();
    let mut count = 0;
    for slice in enumerate_weight(omega.algebra(), n)? {
        for m in slice.monomials() {
            let lhs = pi.apply(&omega.differential().apply_monomial(m))?;
            let rhs = theta.d(&pi.apply_monomial(m))?;
            if lhs != rhs {
                return Ok((
                    false,
                    format!("fails on {}", omega.algebra().format_monomial(m)),
                ));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} monomials")))
}

fn full_rank_onto(f: &AlgebraMorphism, domain: &crate::BasisSlice, target: &crate::BasisSlice) -> Result<bool> {
    Ok(rank(&morphism_matrix(f, domain, target)?).rank == target.len())
}

/// `π: Ω_n^i → Θ^i` is onto for every `i < n`.
pub fn check_pi_surjective(omega: &ModelDga, n: u32) -> Result<(bool, String)> {
    let pi = pi_map(omega)?;
    let slices = enumerate_weight(omega.algebra(), n)?;
    for i in 0..n {
        let target = enumerate_basis(pi.target(), None, i)?;
        if !full_rank_onto(&pi, &slices[i as usize], &target)? {
            return Ok((false, format!("not onto in degree {i}")));
        }
    }
    Ok((true, format!("onto in degrees 0..{n}")))
}

/// `H^i(Ω_n, D) = H^i(Θ, d)` for `i < n`.
pub fn check_low_degrees_match_theta(omega: &ModelDga, n: u32) -> Result<(bool, String)> {
    if n == 0 {
        return Ok((true, "empty range".into()));
    }
    let table = betti(omega, n)?;
    let theta = betti_graded_only(&theta_model(), n - 1)?;
    let ok = (0..n as usize).all(|i| table.dim(i) == theta[i]);
    Ok((ok, format!("Ω_n: {:?}, Θ: {theta:?}", &table.dims[..n as usize])))
}

/// `d∘φ = φ∘d₀` on every monomial of `Θ` up to `degree_max`.
pub fn check_phi_chain_map(degree_max: u32) -> Result<(bool, String)> {
    let phi = phi_map();
    let (t, t0) = (theta_model(), theta0_model());
    let mut count = 0;
    for i in 0..=degree_max {
        for m in enumerate_basis(t.algebra(), None, i)?.monomials() {
            let lhs = t.differential().apply(&phi.apply_monomial(m))?;
            let rhs = phi.apply(&t0.differential().apply_monomial(m))?;
            if lhs != rhs {
                return Ok((false, format!("fails on {}", t.algebra().format_monomial(m))));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} monomials")))
}

/// `φ: Θ^i → Θ^i` has full rank for every `i ≤ degree_max`.
pub fn check_phi_bijective(degree_max: u32) -> Result<(bool, String)> {
    let phi = phi_map();
    for i in 0..=degree_max {
        let s = enumerate_basis(phi.source(), None, i)?;
        if !full_rank_onto(&phi, &s, &s)? {
            return Ok((false, format!("singular in degree {i}")));
        }
    }
    Ok((true, format!("bijective in degrees 0..={degree_max}")))
}

/// `p(D(x)) = 0` for every basis monomial `x` of `Ω_n`.
pub fn check_p_kills_boundaries(omega: &ModelDga, n: u32) -> Result<(bool, String)> {
    let p = p_map(omega)?;
    let mut count = 0;
    for slice in enumerate_weight(omega.algebra(), n)? {
        for m in slice.monomials() {
            if !p.apply(&omega.differential().apply_monomial(m))?.is_zero() {
                return Ok((
                    false,
                    format!("p∘D ≠ 0 on {}", omega.algebra().format_monomial(m)),
                ));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} monomials")))
}

/// Rank of a family of elements of one algebra.
pub fn element_rank(elements: &[Element]) -> usize {
    let mut index: BTreeMap<crate::Monomial, usize> = BTreeMap::new();
    let mut triplets = Vec::new();
    for (col, e) in elements.iter().enumerate() {
        for (m, c) in e.terms() {
            let next = index.len();
            let row = *index.entry(m.clone()).or_insert(next);
            triplets.push((row, col, c.clone()));
        }
    }
    let m = SparseRationalMatrix::from_triplets(index.len(), elements.len(), triplets)
        .expect("indices in range");
    rank(&m).rank
}

/// The top cocycles of `Ω_n` are closed, span a space of dimension
/// `dim H^{n+1}(Ω_n)`, and have linearly independent `p`-images.
pub fn check_top_cocycles(omega: &ModelDga, n: u32, table: &BettiTable) -> Result<(bool, String)> {
    let basis = top_cocycle_basis(omega, n)?;
    for x in &basis {
        if !omega.d(x)?.is_zero() {
            return Ok((false, format!("{x} is not closed")));
        }
    }
    let p = p_map(omega)?;
    let images: Vec<Element> = basis.iter().map(|x| p.apply(x)).collect::<Result<_>>()?;
    if images.iter().any(Element::is_zero) {
        return Ok((false, "a p-image vanishes".into()));
    }
    let r = element_rank(&images);
    let want = table.dim(n as usize + 1);
    let ok = basis.len() == want && r == basis.len();
    Ok((
        ok,
        format!("{} cocycles, p-image rank {r}, dim H^(n+1) = {want}", basis.len()),
    ))
}

/// `(Θ, d₀)` and `(Θ, d)` have equal Betti numbers through `degree_max`, and
/// they match the Poincaré series of `Λ⟨v_a, v_b, w_1, w_a, w_b⟩`.
pub fn check_theta_betti(degree_max: u32) -> Result<(bool, String)> {
    let b0 = betti_graded_only(&theta0_model(), degree_max)?;
    let b = betti_graded_only(&theta_model(), degree_max)?;
    let series = poincare_series_coeffs(&[1, 1, 3, 2, 2], degree_max)?;
    let ok = b0 == b && b0.iter().zip(&series).all(|(&x, &y)| x as u128 == y);
    Ok((ok, format!("d₀: {b0:?}, d: {b:?}")))
}

#[derive(Clone, Copy, Debug)]
pub struct StructureBounds {
    /// Upper bound on `n` for every per-`n` check.
    pub n_max: u32,
    /// Upper bound on the degree for the `Θ` and `φ` checks.
    pub degree_max: u32,
}

impl StructureBounds {
    pub fn new(n_max: u32) -> Self {
        StructureBounds {
            n_max,
            degree_max: 10,
        }
    }
}

fn dga_label(model: &ModelDga) -> String {
    model.name().to_string()
}

pub fn verify_structure(bounds: StructureBounds) -> Result<StructureReport> {
    let StructureBounds { n_max, degree_max } = bounds;
    if n_max < 2 {
        return Err(usage!("n-max must be at least 2, got {n_max}"));
    }
    let torus = build_model(&torus_preset())?;
    let models = vec![
        torus.clone(),
        build_model(&sphere_preset(1)?)?,
        build_model(&sphere_preset(2)?)?,
    ];
    let tables: Vec<BettiTable> = (0..=n_max + 1)
        .into_par_iter()
        .map(|n| betti(&torus, n))
        .collect::<Result<_>>()?;

    let mut checks = Vec::new();
    for model in &models {
        let name = format!("d_squared_zero[{}]", dga_label(model));
        for n in 0..=n_max {
            checks.push(Check::from_result(&name, Some(n), check_d_squared(model, n)));
        }
    }
    for n in 1..=n_max {
        let r = euler_from_slices(&torus, n).map(|e| (e == 0, format!("χ = {e}")));
        checks.push(Check::from_result("euler_zero", Some(n), r));
    }
    for n in 1..=n_max {
        checks.push(Check::from_result("pi_commutes", Some(n), check_pi_commutes(&torus, n)));
        checks.push(Check::from_result("pi_surjective_below_n", Some(n), check_pi_surjective(&torus, n)));
        checks.push(Check::from_result(
            "low_degrees_match_theta",
            Some(n),
            check_low_degrees_match_theta(&torus, n),
        ));
        checks.push(Check::from_result("p_kills_boundaries", Some(n), check_p_kills_boundaries(&torus, n)));
    }
    checks.push(Check::from_result("phi_chain_map", None, check_phi_chain_map(degree_max)));
    checks.push(Check::from_result("phi_bijective", None, check_phi_bijective(degree_max)));
    checks.push(Check::from_result("theta_betti", None, check_theta_betti(degree_max)));
    for n in 2..=n_max {
        let t = &tables[n as usize];
        checks.push(Check::from_result("top_cocycles", Some(n), check_top_cocycles(&torus, n, t)));
        let stable = (2..n as usize).all(|i| t.dim(i) == 2 * i - 1) && t.dim(0) == 1 && t.dim(1) == 2;
        checks.push(Check::new(
            "stable_range_2i_minus_1",
            Some(n),
            stable,
            format!("{:?}", &t.dims[..n as usize]),
        ));
    }
    let (count, bad) = stability_violations(&tables[2..]);
    checks.push(Check::new(
        "stability",
        None,
        bad.is_empty(),
        format!("{count} comparisons, {} violations", bad.len()),
    ));
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(StructureReport {
        n_max,
        degree_max,
        checks,
        all_passed,
    })
}
