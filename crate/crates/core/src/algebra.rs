//! Free graded-commutative algebras over the rationals.
//!
//! An algebra is a fixed, ordered list of generators. A monomial is an
//! exponent vector over that list; odd generators carry exponent 0 or 1.
//! The declaration order fixes the normal form of every monomial and hence
//! every Koszul sign.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{usage, validation, Result};
use crate::rational::format_rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// Cohomological (upper) degree.
    pub degree: u32,
    /// Lower degree; `None` when the algebra carries no weight grading.
    pub weight: Option<u32>,
    pub index: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// The ambient algebra `Λ(generators)`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct GradedAlgebra {
    generators: Vec<Generator>,
    weighted: bool,
}

impl GradedAlgebra {
    /// Algebra without a weight grading, generators given as `(name, degree)`.
    pub fn unweighted(gens: &[(&str, u32)]) -> Result<Arc<Self>> {
        Self::build(gens.iter().map(|&(n, d)| (n, d, None)).collect(), false)
    }

    /// Weight-graded algebra, generators given as `(name, degree, weight)`.
    pub fn weighted(gens: &[(&str, u32, u32)]) -> Result<Arc<Self>> {
        Self::build(
            gens.iter().map(|&(n, d, w)| (n, d, Some(w))).collect(),
            true,
        )
    }

    fn build(gens: Vec<(&str, u32, Option<u32>)>, weighted: bool) -> Result<Arc<Self>> {
        let mut generators = Vec::with_capacity(gens.len());
        for (index, (name, degree, weight)) in gens.into_iter().enumerate() {
            if name.is_empty() {
                return Err(validation!("generator {index} has an empty name"));
            }
            if generators.iter().any(|g: &Generator| g.name == name) {
                return Err(validation!("duplicate generator name {name:?}"));
            }
            generators.push(Generator {
                name: name.to_string(),
                degree,
                weight,
                index,
            });
        }
        Ok(Arc::new(GradedAlgebra {
            generators,
            weighted,
        }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_weight_graded(&self) -> bool {
        self.weighted
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| usage!("no generator named {name:?}"))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Option<u32> {
        if !self.weighted {
            return None;
        }
        Some(
            m.0.iter()
                .zip(&self.generators)
                .map(|(&e, g)| e * g.weight.unwrap_or(0))
                .sum(),
        )
    }

    /// Checks the exponent vector has the right length and respects
    /// exterior relations.
    pub fn monomial(&self, exponents: Vec<u32>) -> Result<Monomial> {
        if exponents.len() != self.len() {
            return Err(usage!(
                "exponent vector of length {} for an algebra with {} generators",
                exponents.len(),
                self.len()
            ));
        }
        for (g, &e) in self.generators.iter().zip(&exponents) {
            if g.is_odd() && e > 1 {
                return Err(usage!("odd generator {} with exponent {e}", g.name));
            }
        }
        Ok(Monomial(exponents))
    }

    /// Product of two normal-form monomials, `None` when an odd generator
    /// would be repeated. The flag is `true` when the Koszul sign is negative.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut exps = Vec::with_capacity(self.len());
        // Number of odd generators of `a` with index strictly above the
        // current position, scanned from the top.
        let mut odd_a_above = 0u32;
        let mut swaps = 0u32;
        for idx in (0..self.len()).rev() {
            let (ea, eb) = (a.0[idx], b.0[idx]);
            if self.generators[idx].is_odd() {
                if ea + eb > 1 {
                    return None;
                }
                if eb == 1 {
                    swaps += odd_a_above;
                }
                if ea == 1 {
                    odd_a_above += 1;
                }
            }
            exps.push(ea + eb);
        }
        exps.reverse();
        Some((Monomial(exps), swaps % 2 == 1))
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial(vec![0; self.len()])
    }

    pub fn generator_monomial(&self, index: usize) -> Monomial {
        let mut e = vec![0; self.len()];
        e[index] = 1;
        Monomial(e)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector in generator order. Lexicographic order on the vector is
/// the monomial order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total number of generator occurrences.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub(crate) fn from_raw(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }
}

/// Degree information of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The zero element, which is homogeneous of every degree.
    Any,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Degree {
    pub fn value(self) -> Option<u32> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    fn fold(values: impl Iterator<Item = u32>) -> Degree {
        let mut out = Degree::Any;
        for v in values {
            out = match out {
                Degree::Any => Degree::Homogeneous(v),
                Degree::Homogeneous(d) if d == v => out,
                _ => return Degree::Inhomogeneous,
            };
        }
        out
    }
}

/// A rational linear combination of normal-form monomials. Zero coefficients
/// are never stored, so equality is structural.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<GradedAlgebra>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(algebra: &Arc<GradedAlgebra>) -> Self {
        Element {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<GradedAlgebra>) -> Self {
        Self::from_monomial(algebra, algebra.unit_monomial(), BigRational::one())
    }

    pub fn from_monomial(algebra: &Arc<GradedAlgebra>, m: Monomial, coeff: BigRational) -> Self {
        let mut e = Self::zero(algebra);
        if !coeff.is_zero() {
            e.terms.insert(m, coeff);
        }
        e
    }

    pub fn generator(algebra: &Arc<GradedAlgebra>, name: &str) -> Result<Self> {
        let idx = algebra.require_index(name)?;
        Ok(Self::from_monomial(
            algebra,
            algebra.generator_monomial(idx),
            BigRational::one(),
        ))
    }

    pub fn from_terms(
        algebra: &Arc<GradedAlgebra>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut e = Self::zero(algebra);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(usage!("elements belong to different algebras"))
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Element {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Bilinear extension of the Koszul-signed monomial product.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.algebra);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = self.algebra.multiply_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same algebra");
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        Degree::fold(self.terms.keys().map(|m| self.algebra.monomial_degree(m)))
    }

    /// `None` when the algebra is not weight graded.
    pub fn weight(&self) -> Option<Degree> {
        if !self.algebra.is_weight_graded() {
            return None;
        }
        Some(Degree::fold(
            self.terms
                .keys()
                .filter_map(|m| self.algebra.monomial_weight(m)),
        ))
    }

    /// Exact division by a generator: every term must contain it.
    pub fn divide_by_generator(&self, index: usize) -> Result<Element> {
        let g = &self.algebra.generators()[index];
        let mut out = Self::zero(&self.algebra);
        for (m, c) in &self.terms {
            if m.0[index] == 0 {
                return Err(usage!(
                    "term {} is not divisible by {}",
                    self.algebra.format_monomial(m),
                    g.name
                ));
            }
            // Move the generator to the front, then strip it.
            let mut exps = m.0.clone();
            exps[index] -= 1;
            let rest = Monomial(exps);
            let (_, negative) = self
                .algebra
                .multiply_monomials(&self.algebra.generator_monomial(index), &rest)
                .expect("divisible monomial");
            out.add_term(rest, if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

// Operator forms panic on mixed algebras; use the `try_` methods for
// fallible arithmetic.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("elements from different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("elements from different algebras")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("elements from different algebras")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Largest monomial first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.algebra.format_monomial(m);
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs.is_one(), m.is_unit()) {
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{}", format_rational(&abs))?,
                (false, false) => write!(f, "{} {mono}", format_rational(&abs))?,
            }
        }
        Ok(())
    }
}

/// Degree +1 derivation determined by its values on generators and extended
/// by the graded Leibniz rule `d(xy) = d(x) y + (-1)^{|x|} x d(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    algebra: Arc<GradedAlgebra>,
    images: Vec<Element>,
}

impl Derivation {
    pub fn new(algebra: &Arc<GradedAlgebra>, images: Vec<Element>) -> Result<Self> {
        if images.len() != algebra.len() {
            return Err(usage!(
                "{} generator images for {} generators",
                images.len(),
                algebra.len()
            ));
        }
        for (g, img) in algebra.generators().iter().zip(&images) {
            if !same_algebra(algebra, img.algebra()) {
                return Err(usage!("image of {} lies in a different algebra", g.name));
            }
            match img.degree() {
                Degree::Any => {}
                Degree::Homogeneous(d) if d == g.degree + 1 => {}
                other => {
                    return Err(validation!(
                        "image of {} (degree {}) has degree {:?}, expected {}",
                        g.name,
                        g.degree,
                        other,
                        g.degree + 1
                    ))
                }
            }
        }
        Ok(Derivation {
            algebra: algebra.clone(),
            images,
        })
    }

    /// Derivation given by `(generator name, image)` pairs, zero elsewhere.
    pub fn from_named(algebra: &Arc<GradedAlgebra>, images: Vec<(&str, Element)>) -> Result<Self> {
        let mut all = vec![Element::zero(algebra); algebra.len()];
        for (name, img) in images {
            all[algebra.require_index(name)?] = img;
        }
        Self::new(algebra, all)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn image(&self, index: usize) -> &Element {
        &self.images[index]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_algebra(&self.algebra, x.algebra()) {
            return Err(usage!("derivation applied to an element of another algebra"));
        }
        let mut out = Element::zero(&self.algebra);
        for (m, c) in x.terms() {
            for (mm, cc) in self.apply_monomial(m).terms {
                out.add_term(mm, cc * c);
            }
        }
        Ok(out)
    }

    /// Leibniz expansion over the generators of `m` in index order. Copies of
    /// an even generator all contribute the same term, hence the factor `e`.
    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let alg = &self.algebra;
        let mut out = Element::zero(alg);
        let mut prefix = vec![0u32; alg.len()];
        let mut prefix_degree = 0u32;
        for (k, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let image = &self.images[k];
            if !image.is_zero() {
                let mut rest = vec![0u32; alg.len()];
                rest[k] = e - 1;
                rest[k + 1..].copy_from_slice(&m.0[k + 1..]);
                let left = Monomial(prefix.clone());
                let right = Monomial(rest);
                let sign_negative = prefix_degree % 2 == 1;
                let factor = BigRational::from_integer(BigInt::from(e));
                for (mi, ci) in image.terms() {
                    let Some((lm, n1)) = alg.multiply_monomials(&left, mi) else {
                        continue;
                    };
                    let Some((full, n2)) = alg.multiply_monomials(&lm, &right) else {
                        continue;
                    };
                    let c = ci * &factor;
                    let negative = sign_negative ^ n1 ^ n2;
                    out.add_term(full, if negative { -c } else { c });
                }
            }
            prefix[k] = e;
            prefix_degree += e * alg.generators[k].degree;
        }
        out
    }
}

/// Algebra homomorphism given on generators and extended multiplicatively.
/// Images must preserve degree so that the extension is well defined.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    images: Vec<Element>,
}

impl AlgebraMorphism {
    pub fn new(
        source: &Arc<GradedAlgebra>,
        target: &Arc<GradedAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(usage!(
                "{} generator images for {} generators",
                images.len(),
                source.len()
            ));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if !same_algebra(target, img.algebra()) {
                return Err(usage!("image of {} is not in the target algebra", g.name));
            }
            match img.degree() {
                Degree::Any => {}
                Degree::Homogeneous(d) if d == g.degree => {}
                other => {
                    return Err(validation!(
                        "image of {} has degree {:?}, expected {}",
                        g.name,
                        other,
                        g.degree
                    ))
                }
            }
        }
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.target
    }

    pub fn image(&self, index: usize) -> &Element {
        &self.images[index]
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let mut acc = Element::one(&self.target);
        for (k, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = acc.try_mul(&self.images[k]).expect("target algebra");
                if acc.is_zero() {
                    return acc;
                }
            }
        }
        acc
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_algebra(&self.source, x.algebra()) {
            return Err(usage!("morphism applied to an element of another algebra"));
        }
        let mut out = Element::zero(&self.target);
        for (m, c) in x.terms() {
            for (mm, cc) in self.apply_monomial(m).terms {
                out.add_term(mm, cc * c);
            }
        }
        Ok(out)
    }
}

/// An algebra together with a differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    pub(crate) differential: Derivation,
}

impl Dga {
    pub fn new(differential: Derivation) -> Self {
        Dga { differential }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.differential.algebra()
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn d(&self, x: &Element) -> Result<Element> {
        self.differential.apply(x)
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Element::generator(self.algebra(), name)
    }
}
