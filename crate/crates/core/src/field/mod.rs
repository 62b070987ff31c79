//! Exact coefficient domains.
//!
//! Arithmetic is context-passing: a ring value (`Rationals`, `FiniteField`,
//! `PolyRing<R>`, ...) carries the structure and elements are plain data.
//! This keeps elements cheap to store in polynomials and hash sets while
//! letting finite fields share their lookup tables behind an `Arc`.

mod finite;
mod rational;
mod spec;

pub use finite::{Embedding, FiniteField, Fq};
pub use rational::Rationals;
pub use spec::FieldSpec;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::poly::Poly;

/// A commutative ring with exact division where it exists.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Default + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `a / b` when `b` divides `a` exactly.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn mul_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }
}

/// A field of characteristic 0 or p.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Canonical printed form of an element.
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// The spec string (`Q`, `Fp:5`, `Fp:5^2`).
    fn spec_string(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The p-th root in characteristic p (finite fields are perfect).
    /// Unused in characteristic 0.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }
}

/// Result of splitting a univariate polynomial over a concrete field:
/// the roots it has in the field and whatever is left over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting<E> {
    /// Distinct roots in increasing order, with multiplicities.
    pub roots: Vec<(E, u32)>,
    /// Monic factors without roots in the field, with multiplicities.
    /// Over a finite field these are irreducible; over Q they are the
    /// squarefree parts of the root-free cofactor.
    pub residual: Vec<(Poly<E>, u32)>,
}

/// Fields in which univariate polynomials can be split into roots and a
/// root-free remainder. This is what fiber computations need.
pub trait RootField: Field {
    fn split(&self, f: &Poly<Self::Elem>) -> Splitting<Self::Elem>;

    /// Degree of the element over the designated base subfield (always 1
    /// over Q).
    fn element_degree(&self, _a: &Self::Elem) -> u32 {
        1
    }

    /// Parse an element written with integers, `t` (extension generator),
    /// `+ - * / ^` and parentheses.
    fn parse_elem(&self, text: &str) -> crate::Result<Self::Elem> {
        crate::expr::parse_constant(self, text)
    }

    /// Generator of the field over its prime field, if it has one besides 1.
    fn generator(&self) -> Option<Self::Elem> {
        None
    }
}
