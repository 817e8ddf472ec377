//! strengthlab: exact invariants of homogeneous ideals at desk scale.
//!
//! The crate computes, over F_p (odd p) and Q with exact arithmetic:
//!
//! - strength and collective strength of homogeneous forms, with certified
//!   lower/upper bounds and explicit decomposition witnesses;
//! - Jacobian matrices, minor ideals J_c, singular-locus ideals and the
//!   codimension of the singular locus;
//! - reduced Gröbner bases, ideal membership, Krull dimension and minimal
//!   generator counts;
//! - the complete-intersection criterion (minimal generators = codimension)
//!   and a randomized harness for the strength-vs-Jacobian codimension
//!   inequality.
//!
//! The library surface is the primary interface; see the `examples/`
//! directory for one runnable walkthrough per capability, and the
//! `strengthlab` binary for a scriptable front end over `.ideal` files.

pub mod ci;
pub mod cli;
pub mod differential;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod ideal_file;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod rng;
pub mod strength;


pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use groebner::{Budget, GroebnerBasis, MinimalGenerators};
pub use ideal::Ideal;
pub use order::MonomialOrder;
pub use poly::{graded_monomials, random_homogeneous, Monomial, PolyRing, Polynomial};

