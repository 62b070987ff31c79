//! Exact dynamics of self-correspondences on the projective line.
//!
//! A correspondence is stored as a divisor on P^1 x P^1: a multiset of
//! squarefree bivariate components over Q or a finite field.

pub mod analysis;
pub mod corr;
pub mod error;
pub mod expr;
pub mod field;
pub mod graph;
pub mod job;
pub mod linalg;
pub mod oper;
pub mod point;
pub mod poly;
pub mod ratfunc;
pub mod universe;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, FiniteField, Fq, Rationals, Ring, RootField};
pub use point::ProjectivePoint;
pub use poly::{BiPoly, Poly};
pub use ratfunc::RationalFunction;
