//! Félix–Thomas models `(Λ(V ⊕ W), D)` built from the cohomology ring of a
//! closed even-dimensional manifold.
//!
//! Each cohomology class `e` of degree `r` contributes a generator `v_e` of
//! degree `m - r` and weight 1, and a generator `w_e` of degree `2m - 1 - r`
//! and weight 2. `D` vanishes on the `v`'s and sends `w_{e_k}` to
//! `Σ_{i,j} c^k_{ij} v_{e_i} v_{e_j}` over all ordered pairs `(i, j)`.
//!
//! Orientability and nilpotency of the manifold cannot be checked from the
//! ring alone; the caller is responsible for them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Derivation, Dga, Element, GradedAlgebra};
use crate::error::{usage, validation, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub name: String,
    pub degree: u32,
}

/// Graded basis of `H*(M; Q)` with cup-product structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldCohomology {
    name: String,
    dim: u32,
    classes: Vec<CohomologyClass>,
    /// `cup[i][j][k]` is the coefficient of `e_k` in `e_i ∪ e_j`.
    cup: Vec<Vec<Vec<BigRational>>>,
    unit: usize,
}

/// One specified cup product `e_left ∪ e_right = Σ coeff · e_class`.
#[derive(Clone, Debug)]
pub struct CupEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, BigRational)>,
}

/// Structural recognition of a few families of rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `H*(S^{2d})`.
    EvenSphere { d: u32 },
    /// Ring of a closed orientable surface of genus `g ≥ 1` (genus 1 is the torus).
    Surface { genus: u32 },
    Other,
}

impl ManifoldCohomology {
    /// Builds and validates a ring. Products involving the unit may be
    /// omitted; any other omitted product is zero.
    pub fn new(
        name: &str,
        dim: u32,
        classes: Vec<CohomologyClass>,
        products: Vec<CupEntry>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(validation!("manifold dimension must be positive"));
        }
        let count = classes.len();
        for (i, c) in classes.iter().enumerate() {
            if c.name.is_empty() {
                return Err(validation!("class {i} has an empty name"));
            }
            if classes[..i].iter().any(|o| o.name == c.name) {
                return Err(validation!("duplicate class name {:?}", c.name));
            }
            if c.degree > dim {
                return Err(validation!(
                    "class {} has degree {} above the dimension {dim}",
                    c.name,
                    c.degree
                ));
            }
        }
        let units: Vec<usize> = (0..count).filter(|&i| classes[i].degree == 0).collect();
        if units.len() != 1 {
            return Err(validation!(
                "expected exactly one class of degree 0 (the unit), found {}",
                units.len()
            ));
        }
        let unit = units[0];

        let mut cup = vec![vec![vec![BigRational::zero(); count]; count]; count];
        let mut specified = vec![vec![false; count]; count];
        for entry in products {
            let (i, j) = (entry.left, entry.right);
            if i >= count || j >= count {
                return Err(usage!("cup entry references a class out of range"));
            }
            if specified[i][j] {
                return Err(validation!(
                    "cup product {} ∪ {} specified twice",
                    classes[i].name,
                    classes[j].name
                ));
            }
            specified[i][j] = true;
            for (k, c) in entry.result {
                if k >= count {
                    return Err(usage!("cup result references a class out of range"));
                }
                cup[i][j][k] += c;
            }
        }
        // Unit laws: fill in omitted unit products, check the given ones.
        for x in 0..count {
            for (i, j) in [(unit, x), (x, unit)] {
                let mut expected = vec![BigRational::zero(); count];
                expected[x] = BigRational::one();
                if specified[i][j] {
                    if cup[i][j] != expected {
                        return Err(validation!(
                            "unit law fails: {} ∪ {} is not {}",
                            classes[i].name,
                            classes[j].name,
                            classes[x].name
                        ));
                    }
                } else {
                    cup[i][j] = expected;
                }
            }
        }
        let mc = ManifoldCohomology {
            name: name.to_string(),
            dim,
            classes,
            cup,
            unit,
        };
        mc.validate()?;
        Ok(mc)
    }

    /// Degree compatibility, graded commutativity, and associativity on all
    /// triples of basis classes.
    pub fn validate(&self) -> Result<()> {
        let n = self.classes.len();
        let deg = |i: usize| self.classes[i].degree;
        let name = |i: usize| self.classes[i].name.as_str();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.cup[i][j][k];
                    if !c.is_zero() && deg(k) != deg(i) + deg(j) {
                        return Err(validation!(
                            "degree mismatch: {} appears in {} ∪ {}",
                            name(k),
                            name(i),
                            name(j)
                        ));
                    }
                    let sign = if deg(i) * deg(j) % 2 == 1 { -c.clone() } else { c.clone() };
                    if sign != self.cup[j][i][k] {
                        return Err(validation!(
                            "graded commutativity fails: coefficient of {} in {} ∪ {} vs {} ∪ {}",
                            name(k),
                            name(i),
                            name(j),
                            name(j),
                            name(i)
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul_vec(&self.cup[a][b], &basis_vec(n, c), n);
                    let right = self.mul_vec(&basis_vec(n, a), &self.cup[b][c], n);
                    if left != right {
                        return Err(validation!(
                            "associativity fails: ({} ∪ {}) ∪ {} ≠ {} ∪ ({} ∪ {})",
                            name(a),
                            name(b),
                            name(c),
                            name(a),
                            name(b),
                            name(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_vec(&self, x: &[BigRational], y: &[BigRational], n: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, c) in self.cup[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += xi * yj * c;
                    }
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn classes(&self) -> &[CohomologyClass] {
        &self.classes
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Coefficient of `e_k` in `e_i ∪ e_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.cup[i][j][k]
    }

    /// `e_i ∪ e_j` as a coefficient vector over the basis.
    pub fn cup_product(&self, i: usize, j: usize) -> &[BigRational] {
        &self.cup[i][j]
    }

    pub fn betti(&self, degree: u32) -> usize {
        self.classes.iter().filter(|c| c.degree == degree).count()
    }

    pub fn family(&self) -> Family {
        let n = self.classes.len();
        if n == 2 && self.dim.is_multiple_of(2) && self.betti(self.dim) == 1 {
            let top = 1 - self.unit;
            if self.cup[top][top].iter().all(Zero::is_zero) {
                return Family::EvenSphere { d: self.dim / 2 };
            }
        }
        if self.dim == 2 && self.betti(2) == 1 && self.betti(1) >= 2 && self.betti(1).is_multiple_of(2) {
            // A surface ring has a nondegenerate pairing H^1 × H^1 → H^2.
            let top = self.classes.iter().position(|c| c.degree == 2).unwrap();
            let ones: Vec<usize> = (0..n).filter(|&i| self.classes[i].degree == 1).collect();
            let pairing: Vec<Vec<BigRational>> = ones
                .iter()
                .map(|&i| ones.iter().map(|&j| self.cup[i][j][top].clone()).collect())
                .collect();
            if full_rank_square(pairing) {
                return Family::Surface {
                    genus: (self.betti(1) / 2) as u32,
                };
            }
        }
        Family::Other
    }
}

fn basis_vec(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

fn full_rank_square(mut m: Vec<Vec<BigRational>>) -> bool {
    let n = m.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(col, p);
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let (top, bottom) = m.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= &f * y;
                }
            }
        }
    }
    true
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `H*(Σ_1)` with basis `1, a, b, ab`, `a ∪ b = ab = -b ∪ a`, `a² = b² = 0`.
pub fn torus_preset() -> ManifoldCohomology {
    let classes = [("1", 0), ("a", 1), ("b", 1), ("ab", 2)]
        .iter()
        .map(|&(n, d)| CohomologyClass {
            name: n.into(),
            degree: d,
        })
        .collect();
    let products = vec![
        CupEntry {
            left: 1,
            right: 2,
            result: vec![(3, q(1))],
        },
        CupEntry {
            left: 2,
            right: 1,
            result: vec![(3, q(-1))],
        },
    ];
    ManifoldCohomology::new("torus", 2, classes, products).expect("torus preset is valid")
}

/// `H*(S^{2d})` with basis `1, omega` and `omega ∪ omega = 0`.
pub fn sphere_preset(d: u32) -> Result<ManifoldCohomology> {
    if d == 0 {
        return Err(usage!("sphere preset needs d ≥ 1"));
    }
    let classes = vec![
        CohomologyClass {
            name: "1".into(),
            degree: 0,
        },
        CohomologyClass {
            name: "omega".into(),
            degree: 2 * d,
        },
    ];
    ManifoldCohomology::new(&format!("sphere:d={d}"), 2 * d, classes, vec![])
}

/// The model `(Ω, D)` with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDga {
    cohomology: ManifoldCohomology,
    dga: Dga,
    v: Vec<usize>,
    w: Vec<usize>,
    warnings: Vec<String>,
}

pub fn build_model(mc: &ManifoldCohomology) -> Result<ModelDga> {
    let m = mc.dim();
    if m % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "manifold {:?} has odd dimension {m}; the model needs an even-dimensional manifold",
            mc.name()
        )));
    }
    mc.validate()?;
    let classes = mc.classes();
    let mut gens: Vec<(String, u32, u32)> = Vec::with_capacity(2 * classes.len());
    for c in classes {
        gens.push((format!("v_{}", c.name), m - c.degree, 1));
    }
    for c in classes {
        gens.push((format!("w_{}", c.name), 2 * m - 1 - c.degree, 2));
    }
    let spec: Vec<(&str, u32, u32)> = gens.iter().map(|(n, d, w)| (n.as_str(), *d, *w)).collect();
    let algebra: Arc<GradedAlgebra> = GradedAlgebra::weighted(&spec)?;
    let count = classes.len();
    let v: Vec<usize> = (0..count).collect();
    let w: Vec<usize> = (count..2 * count).collect();
    let vgen: Vec<Element> = v
        .iter()
        .map(|&i| Element::generator(&algebra, &algebra.generators()[i].name))
        .collect::<Result<_>>()?;

    let mut images = vec![Element::zero(&algebra); algebra.len()];
    for k in 0..count {
        let mut img = Element::zero(&algebra);
        for i in 0..count {
            for j in 0..count {
                let c = mc.structure_constant(i, j, k);
                if !c.is_zero() {
                    img = img.try_add(&vgen[i].try_mul(&vgen[j])?.scale(c))?;
                }
            }
        }
        images[w[k]] = img;
    }
    let differential = Derivation::new(&algebra, images)?;

    for &k in &w {
        let img = differential.image(k);
        if !matches!(img.weight(), Some(crate::algebra::Degree::Any | crate::algebra::Degree::Homogeneous(2))) {
            return Err(validation!(
                "D({}) does not have weight 2",
                algebra.generators()[k].name
            ));
        }
        if !differential.apply(img)?.is_zero() {
            return Err(validation!(
                "D∘D is nonzero on {}",
                algebra.generators()[k].name
            ));
        }
    }

    let mut warnings = Vec::new();
    match mc.family() {
        Family::Surface { genus } if genus >= 2 => warnings.push(format!(
            "outside the model hypotheses: a surface of genus {genus} is not nilpotent; \
             H*(Ω_n, D) is computed but not claimed to be the configuration-space cohomology"
        )),
        Family::Other if classes.iter().any(|c| c.degree % 2 == 1 && c.degree >= 3) => {
            warnings.push(
                "odd-degree classes in degree ≥ 3: signs follow the ordered-pair Δ convention, \
                 which is validated only for the torus and even spheres"
                    .to_string(),
            )
        }
        _ => {}
    }

    Ok(ModelDga {
        cohomology: mc.clone(),
        dga: Dga::new(differential),
        v,
        w,
        warnings,
    })
}

impl ModelDga {
    pub fn cohomology(&self) -> &ManifoldCohomology {
        &self.cohomology
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.dga.algebra()
    }

    pub fn differential(&self) -> &Derivation {
        self.dga.differential()
    }

    pub fn d(&self, x: &Element) -> Result<Element> {
        self.dga.d(x)
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        self.dga.generator(name)
    }

    /// Indices of the `v` generators, in class order.
    pub fn v_indices(&self) -> &[usize] {
        &self.v
    }

    /// Indices of the `w` generators, in class order.
    pub fn w_indices(&self) -> &[usize] {
        &self.w
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn name(&self) -> &str {
        self.cohomology.name()
    }
}
