//! Dense bivariate polynomials as `Poly<Poly<E>>`: the outer variable is the
//! main one and coefficients live in `k[inner]`.

use super::{Poly, PolyRing};
use crate::field::{Field, Ring};

pub type Nested<E> = Poly<Poly<E>>;

pub fn content<F: Field>(field: &F, f: &Nested<F::Elem>) -> Poly<F::Elem> {
    let mut g = Poly::zero();
    for c in f.coeffs() {
        g = g.gcd(field, c);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

pub fn primitive_part<F: Field>(field: &F, f: &Nested<F::Elem>) -> Nested<F::Elem> {
    let c = content(field, f);
    if c.is_zero() {
        return f.clone();
    }
    divide_coeffs(field, f, &c)
}

pub fn divide_coeffs<F: Field>(
    field: &F,
    f: &Nested<F::Elem>,
    c: &Poly<F::Elem>,
) -> Nested<F::Elem> {
    Poly::new(
        f.coeffs()
            .iter()
            .map(|a| a.div_exact_ring(field, c).expect("content divides"))
            .collect(),
    )
}

/// Scale so the leading coefficient of the leading coefficient is 1.
pub fn normalize<F: Field>(field: &F, f: &Nested<F::Elem>) -> Nested<F::Elem> {
    if f.is_zero() {
        return f.clone();
    }
    let inv = field.inv(&f.lead().lead()).expect("nonzero");
    f.map(|c| c.scale(field, &inv))
}

pub fn derivative_outer<F: Field>(field: &F, f: &Nested<F::Elem>) -> Nested<F::Elem> {
    f.derivative(&PolyRing::new(field.clone()))
}

pub fn derivative_inner<F: Field>(field: &F, f: &Nested<F::Elem>) -> Nested<F::Elem> {
    f.map(|c| c.derivative(field))
}

pub fn div_exact<F: Field>(
    field: &F,
    a: &Nested<F::Elem>,
    b: &Nested<F::Elem>,
) -> Option<Nested<F::Elem>> {
    a.div_exact_ring(&PolyRing::new(field.clone()), b)
}

pub fn outer_degree<E>(f: &Nested<E>) -> usize
where
    E: Clone + Default + PartialEq,
{
    f.degree().unwrap_or(0)
}

pub fn inner_degree<E>(f: &Nested<E>) -> usize
where
    E: Clone + Default + PartialEq,
{
    f.coeffs()
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0)
}

/// Monic-normalized gcd in `k[inner][outer]`.
pub fn gcd<F: Field>(field: &F, a: &Nested<F::Elem>, b: &Nested<F::Elem>) -> Nested<F::Elem> {
    if a.is_zero() {
        return normalize(field, b);
    }
    if b.is_zero() {
        return normalize(field, a);
    }
    let ring = PolyRing::new(field.clone());
    let c = content(field, a).gcd(field, &content(field, b));
    let mut p = primitive_part(field, a);
    let mut q = primitive_part(field, b);
    if p.degree() < q.degree() {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.is_zero() {
            break p;
        }
        if q.degree() == Some(0) {
            break Poly::constant(ring.one());
        }
        let r = p.pseudo_rem(&ring, &q);
        p = q;
        q = primitive_part(field, &r);
    };
    let g = primitive_part(field, &g);
    normalize(field, &g.map(|x| x.mul(field, &c)))
}

/// Transpose the variable roles.
pub fn swap<E>(f: &Nested<E>) -> Nested<E>
where
    E: Clone + Default + PartialEq,
{
    let di = inner_degree(f);
    let mut rows: Vec<Vec<E>> = vec![vec![E::default(); f.coeffs().len()]; di + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            rows[j][i] = a.clone();
        }
    }
    Poly::new(rows.into_iter().map(Poly::new).collect())
}

/// If every exponent is divisible by p, the p-th root; otherwise `None`.
pub fn pth_root<F: Field>(field: &F, f: &Nested<F::Elem>) -> Option<Nested<F::Elem>> {
    let p = field.characteristic() as usize;
    if p == 0 {
        return None;
    }
    let mut outer = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p != 0 {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        let mut inner = Vec::new();
        for (j, a) in c.coeffs().iter().enumerate() {
            if j % p != 0 {
                if !field.is_zero(a) {
                    return None;
                }
                continue;
            }
            inner.push(field.pth_root(a));
        }
        outer.push(Poly::new(inner));
    }
    Some(Poly::new(outer))
}
