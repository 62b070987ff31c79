//! Roots of binary forms on the projective line.

use super::factor::factor_fq;
use super::Poly;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq, Ring, RootField};
use crate::point::ProjectivePoint;

/// A homogeneous form `sum c_i X0^i X1^(d-i)` of declared degree `d`,
/// stored through its dehomogenization `sum c_i x^i`. Missing top
/// coefficients encode roots at `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<E> {
    pub degree: usize,
    pub affine: Poly<E>,
}

impl<E: Clone + Default + PartialEq> BinaryForm<E> {
    pub fn new(degree: usize, affine: Poly<E>) -> Self {
        debug_assert!(affine.degree().unwrap_or(0) <= degree);
        BinaryForm { degree, affine }
    }

    /// From coefficients `c_0..c_d` of `X0^i X1^(d-i)`.
    pub fn from_coeffs(c: Vec<E>) -> Self {
        let degree = c.len().saturating_sub(1);
        BinaryForm {
            degree,
            affine: Poly::new(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    /// Multiplicity of the root `[1:0]`.
    pub fn infinity_multiplicity(&self) -> u32 {
        match self.affine.degree() {
            Some(d) => (self.degree - d) as u32,
            None => 0,
        }
    }
}

/// Roots of a form over a concrete field plus the factors with no root there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRoots<E> {
    pub roots: Vec<(ProjectivePoint<E>, u32)>,
    pub residual: Vec<(Poly<E>, u32)>,
}

/// Split a binary form over `field`.
pub fn split_form<F: RootField>(field: &F, form: &BinaryForm<F::Elem>) -> Result<FormRoots<F::Elem>> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = field.split(&form.affine);
    let mut roots: Vec<(ProjectivePoint<F::Elem>, u32)> = s
        .roots
        .into_iter()
        .map(|(r, m)| (ProjectivePoint::Finite(r), m))
        .collect();
    let inf = form.infinity_multiplicity();
    if inf > 0 {
        roots.push((ProjectivePoint::Infinity, inf));
    }
    Ok(FormRoots {
        roots,
        residual: s.residual,
    })
}

/// A closed point of the projective line over F_q: a rational point or a
/// Galois orbit of degree m, given by its monic minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedPoint<E> {
    Rational(ProjectivePoint<E>),
    Conjugates(Poly<E>),
}

impl<E: Clone + Default + PartialEq> ClosedPoint<E> {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Rational(_) => 1,
            ClosedPoint::Conjugates(g) => g.degree().unwrap_or(0),
        }
    }
}

/// All roots of `form` in P^1(F_{q^m}) for m <= ext_bound, as closed points
/// with multiplicities.
pub fn roots_p1(
    field: &FiniteField,
    form: &BinaryForm<Fq>,
    ext_bound: usize,
) -> Result<Vec<(ClosedPoint<Fq>, u32)>> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if ext_bound == 0 {
        return Err(Error::InvalidParameter("ext_bound".into(), "must be >= 1".into()));
    }
    let mut out = Vec::new();
    if form.affine.degree().unwrap_or(0) > 0 {
        for (g, m) in factor_fq(field, &form.affine) {
            let d = g.degree().unwrap_or(0);
            if d == 1 {
                let r = field.neg(&g.coeff(0));
                out.push((ClosedPoint::Rational(ProjectivePoint::Finite(r)), m));
            } else if d <= ext_bound {
                out.push((ClosedPoint::Conjugates(g), m));
            }
        }
    }
    let inf = form.infinity_multiplicity();
    if inf > 0 {
        out.push((ClosedPoint::Rational(ProjectivePoint::Infinity), inf));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn double_root_at_zero_and_infinity() {
        let f5 = FiniteField::prime(5).unwrap();
        // -X0^2
        let form = BinaryForm::from_coeffs(vec![Fq(0), Fq(0), Fq(4)]);
        let r = roots_p1(&f5, &form, 1).unwrap();
        assert_eq!(r, vec![(ClosedPoint::Rational(ProjectivePoint::Finite(Fq(0))), 2)]);
        // X1^2
        let form = BinaryForm::from_coeffs(vec![Fq(1), Fq(0), Fq(0)]);
        let r = roots_p1(&f5, &form, 1).unwrap();
        assert_eq!(r, vec![(ClosedPoint::Rational(ProjectivePoint::Infinity), 2)]);
        // X1^2 - X0^2
        let form = BinaryForm::from_coeffs(vec![Fq(1), Fq(0), Fq(4)]);
        let r = roots_p1(&f5, &form, 1).unwrap();
        assert_eq!(
            r,
            vec![
                (ClosedPoint::Rational(ProjectivePoint::Finite(Fq(1))), 1),
                (ClosedPoint::Rational(ProjectivePoint::Finite(Fq(4))), 1)
            ]
        );
    }

    #[test]
    fn multiplicities_sum_to_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [2u64, 3, 5, 7] {
            let field = FiniteField::prime(p).unwrap();
            for _ in 0..30 {
                let d = rng.gen_range(1..=8);
                let c: Vec<Fq> = (0..=d).map(|_| Fq(rng.gen_range(0..p))).collect();
                let form = BinaryForm::from_coeffs(c);
                if form.is_zero() {
                    continue;
                }
                let r = roots_p1(&field, &form, 8).unwrap();
                let total: usize = r.iter().map(|(pt, m)| pt.degree() * *m as usize).sum();
                assert_eq!(total, d);
            }
        }
    }

    #[test]
    fn zero_form_is_rejected() {
        let f5 = FiniteField::prime(5).unwrap();
        let form = BinaryForm::from_coeffs(vec![Fq(0), Fq(0)]);
        assert_eq!(roots_p1(&f5, &form, 1).unwrap_err(), Error::ZeroPolynomial);
    }
}
