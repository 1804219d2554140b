use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ftbetti::linalg::{rank, rank_dense_bareiss, rank_rational_elimination, rank_sparse_bareiss, rank_via_modular_check};
use ftbetti::model::{build_model, sphere_preset, torus_preset, ModelDga};
use ftbetti::{enumerate_basis, Degree, Element, GradedAlgebra, SparseRationalMatrix};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn torus() -> ModelDga {
    build_model(&torus_preset()).unwrap()
}

/// Exponent vectors for the torus model, odd generators capped at 1.
fn exponents() -> impl Strategy<Value = Vec<u32>> {
    let alg = torus().algebra().clone();
    let caps: Vec<u32> = alg.generators().iter().map(|g| if g.is_odd() { 1 } else { 2 }).collect();
    caps.into_iter().map(|c| 0..=c).collect::<Vec<_>>()
}

fn coefficient() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=4).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| q(n, d)))
}

fn monomial_element(alg: &Arc<GradedAlgebra>, e: Vec<u32>, c: BigRational) -> Element {
    Element::from_monomial(alg, alg.monomial(e).unwrap(), c)
}

fn element() -> impl Strategy<Value = Element> {
    let alg = torus().algebra().clone();
    prop::collection::vec((exponents(), coefficient()), 0..4).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(Element::zero(&alg), |acc, (e, c)| &acc + &monomial_element(&alg, e, c))
    })
}

fn homogeneous() -> impl Strategy<Value = Element> {
    let alg = torus().algebra().clone();
    (exponents(), coefficient()).prop_map(move |(e, c)| monomial_element(&alg, e, c))
}

fn degree_of(x: &Element) -> u32 {
    match x.degree() {
        Degree::Homogeneous(d) => d,
        _ => 0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn unit_is_neutral(a in element()) {
        let one = Element::one(a.algebra());
        prop_assert_eq!(&one * &a, a.clone());
        prop_assert_eq!(&a * &one, a);
    }

    #[test]
    fn product_distributes(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn graded_commutativity(x in homogeneous(), y in homogeneous()) {
        let sign = if degree_of(&x) * degree_of(&y) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(&x * &y, (&y * &x).scale_int(sign));
    }

    #[test]
    fn differential_raises_degree_and_is_leibniz(x in homogeneous(), y in homogeneous()) {
        let model = torus();
        let dx = model.d(&x).unwrap();
        if !dx.is_zero() {
            prop_assert_eq!(dx.degree(), Degree::Homogeneous(degree_of(&x) + 1));
        }
        let dy = model.d(&y).unwrap();
        let sign = if degree_of(&x) % 2 == 1 { -1 } else { 1 };
        let rhs = &(&dx * &y) + &(&x * &dy).scale_int(sign);
        prop_assert_eq!(model.d(&(&x * &y)).unwrap(), rhs);
    }

    #[test]
    fn differential_squares_to_zero(x in element()) {
        let model = torus();
        prop_assert!(model.d(&model.d(&x).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn d_squared_vanishes_on_every_monomial_up_to_degree_12() {
    for model in [torus(), build_model(&sphere_preset(1).unwrap()).unwrap()] {
        let alg = model.algebra();
        let mut seen = 0;
        for n in 0..=6 {
            for i in 0..=12 {
                for m in enumerate_basis(alg, Some(n), i).unwrap().monomials() {
                    let x = Element::from_monomial(alg, m.clone(), q(1, 1));
                    let dx = model.d(&x).unwrap();
                    assert!(model.d(&dx).unwrap().is_zero(), "D²({}) ≠ 0", x);
                    seen += 1;
                }
            }
        }
        assert!(seen >= 50, "{} monomials for {}", seen, model.name());
    }
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SparseRationalMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec((0..r, 0..c, coefficient()), 0..=(r * c).min(40))
            .prop_map(move |t| SparseRationalMatrix::from_triplets(r, c, t).unwrap())
    })
}

/// A product of two random sparse factors, so that the rank is usually
/// well below both dimensions and the large-matrix path is taken.
fn low_rank_matrix() -> impl Strategy<Value = SparseRationalMatrix> {
    (65usize..=90, 65usize..=90, 3usize..=30).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec((0..r, 0..k, coefficient()), r..=2 * r),
            prop::collection::vec((0..k, 0..c, coefficient()), c..=2 * c),
        )
            .prop_map(move |(a, b)| {
                let a = SparseRationalMatrix::from_triplets(r, k, a).unwrap();
                let b = SparseRationalMatrix::from_triplets(k, c, b).unwrap();
                a.mul(&b).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_backends_agree(m in matrix(12, 12)) {
        let r = rank(&m).rank;
        prop_assert_eq!(rank_sparse_bareiss(&m), r);
        prop_assert_eq!(rank_dense_bareiss(&m), r);
        prop_assert_eq!(rank_rational_elimination(&m), r);
        prop_assert_eq!(rank_via_modular_check(&m).rank, r);
    }

    #[test]
    fn rank_of_transpose(m in matrix(12, 12)) {
        prop_assert_eq!(rank(&m.transpose()).rank, rank(&m).rank);
    }

    #[test]
    fn rank_invariant_under_row_operations(
        (m, perm) in matrix(10, 10).prop_flat_map(|m| {
            let rows: Vec<usize> = (0..m.rows()).collect();
            (Just(m), Just(rows).prop_shuffle())
        }),
        factors in prop::collection::vec(coefficient(), 10),
    ) {
        let r = rank(&m).rank;
        prop_assert_eq!(rank(&m.permute_rows(&perm)).rank, r);
        prop_assert_eq!(rank(&m.scale_rows(&factors[..m.rows()])).rank, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn large_sparse_matrices(m in low_rank_matrix()) {
        let r = rank(&m).rank;
        prop_assert_eq!(rank_sparse_bareiss(&m), r);
        prop_assert_eq!(rank_rational_elimination(&m), r);
        prop_assert_eq!(rank_via_modular_check(&m).rank, r);
        prop_assert_eq!(rank(&m.transpose()).rank, r);
    }
}
