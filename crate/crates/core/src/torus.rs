//! Auxiliary complexes and maps for the torus model.
//!
//! `Θ = Λ⟨v_1, v_a, v_b, w_1, w_a, w_b, w_ab⟩` is the torus model with `v_ab`
//! set to 1; it has no weight grading since `d(w_ab) = 2v_1 + 2v_a v_b`
//! mixes weights. `d₀` keeps only the `w_ab` image. `φ: (Θ, d₀) → (Θ, d)`
//! is an isomorphism of complexes, `π: Ω → Θ` substitutes `v_ab ↦ 1`, and
//! `p: Ω → Λ⟨v_a, v_b, w_1, w_a, w_b, w_ab⟩` additionally sends
//! `v_1 ↦ −v_a v_b`, killing every boundary.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{AlgebraMorphism, Derivation, Dga, Element, GradedAlgebra};
use crate::error::{usage, Result};
use crate::model::ModelDga;

const THETA_GENERATORS: [(&str, u32); 7] = [
    ("v_1", 2),
    ("v_a", 1),
    ("v_b", 1),
    ("w_1", 3),
    ("w_a", 2),
    ("w_b", 2),
    ("w_ab", 1),
];

const OMEGA_GENERATORS: [&str; 8] = ["v_1", "v_a", "v_b", "v_ab", "w_1", "w_a", "w_b", "w_ab"];

pub fn theta_algebra() -> Arc<GradedAlgebra> {
    GradedAlgebra::unweighted(&THETA_GENERATORS).expect("static generator list")
}

/// `Θ' = Λ⟨v_1, v_a, v_b, v_ab, w_a, w_b, w_ab⟩`, the part of the model
/// without `w_1`, as a free-standing algebra.
pub fn theta_prime_algebra() -> Arc<GradedAlgebra> {
    GradedAlgebra::unweighted(&[
        ("v_1", 2),
        ("v_a", 1),
        ("v_b", 1),
        ("v_ab", 0),
        ("w_a", 2),
        ("w_b", 2),
        ("w_ab", 1),
    ])
    .expect("static generator list")
}

/// Target of `p`: `Λ⟨v_a, v_b, w_1, w_a, w_b, w_ab⟩`.
pub fn p_target_algebra() -> Arc<GradedAlgebra> {
    GradedAlgebra::unweighted(&[
        ("v_a", 1),
        ("v_b", 1),
        ("w_1", 3),
        ("w_a", 2),
        ("w_b", 2),
        ("w_ab", 1),
    ])
    .expect("static generator list")
}

fn gen(alg: &Arc<GradedAlgebra>, name: &str) -> Element {
    Element::generator(alg, name).expect("known generator")
}

fn theta_with(full: bool) -> Dga {
    let alg = theta_algebra();
    let v1 = gen(&alg, "v_1");
    let va = gen(&alg, "v_a");
    let vb = gen(&alg, "v_b");
    let mut images = vec![(
        "w_ab",
        &v1.scale_int(2) + &(&va * &vb).scale_int(2),
    )];
    if full {
        images.push(("w_1", &v1 * &v1));
        images.push(("w_a", (&v1 * &va).scale_int(2)));
        images.push(("w_b", (&v1 * &vb).scale_int(2)));
    }
    Dga::new(Derivation::from_named(&alg, images).expect("degree +1 images"))
}

/// `(Θ, d)`.
pub fn theta_model() -> Dga {
    theta_with(true)
}

/// `(Θ, d₀)`.
pub fn theta0_model() -> Dga {
    theta_with(false)
}

/// `φ: (Θ, d₀) → (Θ, d)`.
pub fn phi_map() -> AlgebraMorphism {
    let alg = theta_algebra();
    let g = |n: &str| gen(&alg, n);
    let half = BigRational::new(1.into(), 2.into());
    let (v1, va, vb) = (g("v_1"), g("v_a"), g("v_b"));
    let (w1, wa, wb, wab) = (g("w_1"), g("w_a"), g("w_b"), g("w_ab"));
    let phi_w1 = &(&w1 - &(&v1 * &wab).scale(&half)) + &(&vb * &wa).scale(&half);
    let images = vec![
        v1.clone(),
        va.clone(),
        vb.clone(),
        phi_w1,
        &wa + &(&va * &wab),
        &wb + &(&vb * &wab),
        wab,
    ];
    AlgebraMorphism::new(&alg, &alg, images).expect("degree-preserving images")
}

fn require_torus(omega: &ModelDga) -> Result<()> {
    let names: Vec<&str> = omega
        .algebra()
        .generators()
        .iter()
        .map(|g| g.name.as_str())
        .collect();
    if names != OMEGA_GENERATORS {
        return Err(usage!(
            "expected the torus model generators {:?}, found {:?}",
            OMEGA_GENERATORS,
            names
        ));
    }
    Ok(())
}

/// Substitution morphism from the torus model into `target`: each generator
/// maps to the same-named generator, with `overrides` taking precedence.
fn substitution(
    omega: &ModelDga,
    target: &Arc<GradedAlgebra>,
    overrides: &[(&str, Element)],
) -> Result<AlgebraMorphism> {
    require_torus(omega)?;
    let images = omega
        .algebra()
        .generators()
        .iter()
        .map(|g| {
            if let Some((_, e)) = overrides.iter().find(|(n, _)| *n == g.name) {
                Ok(e.clone())
            } else {
                Element::generator(target, &g.name)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::new(omega.algebra(), target, images)
}

/// `π: Ω → Θ`, `v_ab ↦ 1`.
pub fn pi_map(omega: &ModelDga) -> Result<AlgebraMorphism> {
    let theta = theta_algebra();
    let one = Element::one(&theta);
    substitution(omega, &theta, &[("v_ab", one)])
}

/// `p: Ω → Λ⟨v_a, v_b, w_1, w_a, w_b, w_ab⟩`, `v_ab ↦ 1`, `v_1 ↦ −v_a v_b`.
pub fn p_map(omega: &ModelDga) -> Result<AlgebraMorphism> {
    let t = p_target_algebra();
    let one = Element::one(&t);
    let minus_vavb = -(&gen(&t, "v_a") * &gen(&t, "v_b"));
    substitution(omega, &t, &[("v_ab", one), ("v_1", minus_vavb)])
}

/// The seed set for the top cocycles of `Ω_n`: `w_a^{n₁} w_b^{n₂}` with
/// `2n₁ + 2n₂ + 1 = n` for odd `n`, and `v_b w_a^{n₁+1} w_b^{n₂}` with
/// `2n₁ + 2n₂ + 4 = n` for even `n`.
pub fn top_cocycle_seeds(omega: &ModelDga, n: u32) -> Result<Vec<Element>> {
    require_torus(omega)?;
    if n < 2 {
        return Err(usage!("top cocycles are defined for n ≥ 2, got {n}"));
    }
    let alg = omega.algebra();
    let (wa, wb, vb) = (gen(alg, "w_a"), gen(alg, "w_b"), gen(alg, "v_b"));
    let mut out = Vec::new();
    if n % 2 == 1 {
        let total = (n - 1) / 2;
        for n1 in 0..=total {
            out.push(&wa.pow(n1) * &wb.pow(total - n1));
        }
    } else if n >= 4 {
        let total = (n - 4) / 2;
        for n1 in 0..=total {
            out.push(&(&vb * &wa.pow(n1 + 1)) * &wb.pow(total - n1));
        }
    }
    Ok(out)
}

/// `x(f) = v_1 f − w_1 · D(f)/v_1`; fails when `v_1` does not divide `D(f)`.
pub fn top_cocycle(omega: &ModelDga, f: &Element) -> Result<Element> {
    require_torus(omega)?;
    let alg = omega.algebra();
    let v1 = gen(alg, "v_1");
    let w1 = gen(alg, "w_1");
    let quotient = omega.d(f)?.divide_by_generator(alg.require_index("v_1")?)?;
    v1.try_mul(f)?.try_sub(&w1.try_mul(&quotient)?)
}

/// `{x(b) : b ∈ B}` for the parity of `n`; elements of `Ω_n` in degree `n + 1`.
pub fn top_cocycle_basis(omega: &ModelDga, n: u32) -> Result<Vec<Element>> {
    top_cocycle_seeds(omega, n)?
        .iter()
        .map(|f| top_cocycle(omega, f))
        .collect()
}
