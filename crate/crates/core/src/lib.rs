//! Exact rational Betti numbers of unordered configuration spaces of closed
//! even-dimensional manifolds, computed from the Félix–Thomas model.
//!
//! The pipeline is: a cohomology ring ([`ManifoldCohomology`]) is turned into
//! a model `(Ω, D)` by [`build_model`]; [`enumerate_weight`] lists the
//! monomial bases of the weight-`n` subcomplex `Ω_n`; [`assemble_differential`]
//! builds sparse rational matrices; [`linalg::rank`] computes exact ranks;
//! [`betti`] assembles the table by rank–nullity.

pub mod algebra;
pub mod betti;
pub mod complex;
mod error;
pub mod linalg;
pub mod manifold_file;
pub mod model;
pub mod rational;
pub mod torus;
pub mod verify;

pub use algebra::{AlgebraMorphism, Degree, Derivation, Dga, Element, Generator, GradedAlgebra, Monomial};
pub use betti::{
    betti, betti_graded_only, poincare_series_coeffs, sphere_closed_form, torus_closed_form,
    BettiTable,
};
pub use complex::{
    assemble_differential, enumerate_basis, enumerate_weight, BasisSlice, SparseRationalMatrix,
};
pub use error::{Error, Result};
pub use linalg::{rank, rank_via_modular_check, RankReport};
pub use model::{build_model, sphere_preset, torus_preset, CohomologyClass, Family, ManifoldCohomology, ModelDga};
