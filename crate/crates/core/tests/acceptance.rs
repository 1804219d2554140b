//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use ftbetti::betti::{betti, betti_graded_only, sphere_closed_form, torus_closed_form, BettiTable};
use ftbetti::linalg::{rank, rank_dense_bareiss, rank_rational_elimination, rank_sparse_bareiss, rank_via_modular_check};
use ftbetti::model::{build_model, sphere_preset, torus_preset, ModelDga};
use ftbetti::torus::{theta0_model, theta_model};
use ftbetti::verify::{
    check_d_squared, check_p_kills_boundaries, check_phi_bijective, check_phi_chain_map,
    check_pi_commutes, check_pi_surjective, check_top_cocycles, euler_from_slices,
    stability_violations, verify_theorem,
};
use ftbetti::{assemble_differential, enumerate_weight, Result};

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<(bool, String)> + 'a>);

const BASE_N_MAX: u32 = 12;
const EXTENDED_N_MAX: u32 = 20;

fn trimmed(dims: &[usize]) -> &[usize] {
    let end = dims.iter().rposition(|&d| d != 0).map_or(0, |k| k + 1);
    &dims[..end]
}

fn torus() -> ModelDga {
    build_model(&torus_preset()).unwrap()
}

fn torus_tables(n_max: u32) -> Result<Vec<BettiTable>> {
    let model = torus();
    (0..=n_max).map(|n| betti(&model, n)).collect()
}

fn theorem_pointwise(n_max: u32, budget: Duration) -> Result<(bool, String)> {
    let start = Instant::now();
    let report = verify_theorem(n_max)?;
    let elapsed = start.elapsed();
    // The report's own comparison is recomputed here against the closed form.
    let mut ok = report.entries.len() == (n_max - 1) as usize;
    for e in &report.entries {
        for (i, &b) in e.betti.iter().enumerate() {
            ok &= torus_closed_form(e.n, i as u32)? == b as u64;
        }
    }
    ok &= report.all_passed && elapsed < budget;
    Ok((ok, format!("2 ≤ n ≤ {n_max} in {:.2?} (budget {:?})", elapsed, budget)))
}

fn criterion_1() -> Result<(bool, String)> {
    let (base, base_detail) = theorem_pointwise(BASE_N_MAX, Duration::from_secs(60))?;
    let (ext, ext_detail) = theorem_pointwise(EXTENDED_N_MAX, Duration::from_secs(15 * 60))?;
    Ok((base && ext, format!("{base_detail}; {ext_detail}")))
}

fn criterion_2() -> Result<(bool, String)> {
    let model = torus();
    let want: [(u32, &[usize]); 3] = [(2, &[1, 2, 1]), (3, &[1, 2, 3, 4, 2]), (4, &[1, 2, 3, 5, 4, 1])];
    let mut ok = true;
    let mut got = Vec::new();
    for (n, w) in want {
        let t = betti(&model, n)?;
        ok &= trimmed(&t.dims) == w;
        got.push(format!("n={n}: {:?}", trimmed(&t.dims)));
    }
    Ok((ok, got.join(", ")))
}

fn criterion_3(tables: &[BettiTable]) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut ok = true;
    for t in &tables[2..=BASE_N_MAX as usize] {
        ok &= t.dim(0) == 1 && t.dim(1) == 2;
        for i in 2..t.n as usize {
            checked += 1;
            ok &= t.dim(i) == 2 * i - 1;
        }
    }
    Ok((ok, format!("{checked} entries with 2 ≤ i < n ≤ {BASE_N_MAX}")))
}

fn criterion_4() -> Result<(bool, String)> {
    let want: Vec<usize> = (0..=10).map(|i| if i < 2 { i + 1 } else { 2 * i - 1 }).collect();
    let d0 = betti_graded_only(&theta0_model(), 10)?;
    let d = betti_graded_only(&theta_model(), 10)?;
    Ok((d0 == want && d == want, format!("d₀: {d0:?}, d: {d:?}")))
}

fn criterion_5() -> Result<(bool, String)> {
    let mut ok = true;
    let mut cases = 0;
    for d in [1, 2] {
        let model = build_model(&sphere_preset(d)?)?;
        for n in 3..=8 {
            let t = betti(&model, n)?;
            cases += 1;
            let nonzero: Vec<usize> = (0..t.dims.len()).filter(|&i| t.dims[i] != 0).collect();
            ok &= nonzero == [0, 4 * d as usize - 1] && nonzero.iter().all(|&i| t.dims[i] == 1);
            for i in 0..t.dims.len() {
                ok &= sphere_closed_form(d, n, i as u32)? == t.dims[i] as u64;
            }
        }
    }
    Ok((ok, format!("{cases} tables, d ∈ {{1, 2}}, 3 ≤ n ≤ 8")))
}

fn criterion_6(tables: &[BettiTable]) -> Result<(bool, String)> {
    let omega = torus();
    let mut failures = Vec::new();
    let mut record = |name: &str, r: (bool, String)| {
        if !r.0 {
            failures.push(format!("{name}: {}", r.1));
        }
    };
    for model in [omega.clone(), build_model(&sphere_preset(1)?)?, build_model(&sphere_preset(2)?)?] {
        for n in 0..=10 {
            record("d_squared", check_d_squared(&model, n)?);
        }
    }
    for n in 1..=EXTENDED_N_MAX {
        let e = euler_from_slices(&omega, n)?;
        let from_dims = tables[n as usize].euler_from_dims();
        record("euler", (e == 0 && from_dims == 0, format!("n={n}: {e}, {from_dims}")));
    }
    for n in 1..=8 {
        record("pi_commutes", check_pi_commutes(&omega, n)?);
        record("pi_surjective", check_pi_surjective(&omega, n)?);
        record("p_kills_boundaries", check_p_kills_boundaries(&omega, n)?);
    }
    record("phi_chain_map", check_phi_chain_map(10)?);
    record("phi_bijective", check_phi_bijective(10)?);
    for n in 2..=BASE_N_MAX {
        record("top_cocycles", check_top_cocycles(&omega, n, &tables[n as usize])?);
    }
    let ok = failures.is_empty();
    Ok((ok, if ok { "all structural checks hold".into() } else { failures.join("; ") }))
}

fn criterion_7(tables: &[BettiTable]) -> Result<(bool, String)> {
    let (checked, bad) = stability_violations(&tables[2..]);
    Ok((bad.is_empty(), format!("{checked} comparisons up to n = {EXTENDED_N_MAX}, {} violations", bad.len())))
}

fn criterion_8() -> Result<(bool, String)> {
    let mut matrices = 0;
    let mut mismatches = Vec::new();
    for model in [torus(), build_model(&sphere_preset(1)?)?, build_model(&sphere_preset(2)?)?] {
        for n in 0..=10 {
            let slices = enumerate_weight(model.algebra(), n)?;
            for i in 0..slices.len().saturating_sub(1) {
                let m = assemble_differential(model.dga(), &slices[i], &slices[i + 1])?;
                matrices += 1;
                let r = rank(&m).rank;
                let mut others = vec![
                    rank_via_modular_check(&m).rank,
                    rank_sparse_bareiss(&m),
                    rank_dense_bareiss(&m),
                ];
                if n <= 8 {
                    others.push(rank_rational_elimination(&m));
                }
                if others.iter().any(|&o| o != r) {
                    mismatches.push(format!("{} n={n} i={i}: {r} vs {others:?}", model.name()));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    Ok((ok, if ok { format!("{matrices} differentials agree") } else { mismatches.join("; ") }))
}

fn main() {
    let tables = torus_tables(EXTENDED_N_MAX).expect("torus tables");
    let criteria: Vec<Criterion> = vec![
        ("1 torus closed form, pointwise", Box::new(criterion_1)),
        ("2 torus spot values", Box::new(criterion_2)),
        ("3 stable range 2i-1", Box::new(|| criterion_3(&tables))),
        ("4 theta cohomology", Box::new(criterion_4)),
        ("5 even spheres", Box::new(criterion_5)),
        ("6 structural properties", Box::new(|| criterion_6(&tables))),
        ("7 stability in n", Box::new(|| criterion_7(&tables))),
        ("8 rank backends agree", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
