//! Finite-dimensional group-graded algebras over exact fields, with
//! certified decisions of graded Frobenius and graded symmetric properties.
//!
//! Everything is generic over a [`scalar::Field`]; the aliases below fix the
//! two supported fields.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod format;
pub mod frobenius;
pub mod group;
pub mod linalg;
pub mod module;
pub mod radical;
pub mod scalar;

pub use algebra::GradedAlgebra;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement};
pub use linalg::{Budget, Matrix};
pub use scalar::{Field, FieldDecl, Fp, PrimeField, Rational, Rationals, Scalar};

/// A graded algebra over Q.
pub type QAlgebra = GradedAlgebra<Rationals>;
/// A graded algebra over a prime field.
pub type FpAlgebra = GradedAlgebra<PrimeField>;
/// A graded module over Q.
pub type QModule = module::GradedModule<Rationals>;
/// A graded module over a prime field.
pub type FpModule = module::GradedModule<PrimeField>;
