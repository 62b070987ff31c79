use std::collections::BTreeMap;

use super::nested::Nested;
use super::{format_sum, monomial_str, Poly};
use crate::error::Result;
use crate::field::{Field, RootField, Ring};

/// Sparse polynomial in x and y. Keys are `(deg_x, deg_y)`; zero terms are
/// never stored. Canonical order is descending lexicographic on the key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly<E> {
    terms: BTreeMap<(u32, u32), E>,
}

impl<E: Clone + Default + PartialEq> BiPoly<E> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), E)>) -> Self {
        let z = E::default();
        BiPoly {
            terms: it.into_iter().filter(|(_, c)| *c != z).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> E {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// `(deg_x, deg_y)`.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.deg_x(), self.deg_y())
    }

    /// Swap x and y.
    pub fn swap(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Dense form with y outermost, coefficients in k[x].
    pub fn to_y_major(&self) -> Nested<E> {
        let dy = self.deg_y() as usize;
        let dx = self.deg_x() as usize;
        if self.is_zero() {
            return Poly::zero();
        }
        let mut rows = vec![vec![E::default(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        Poly::new(rows.into_iter().map(Poly::new).collect())
    }

    /// Dense form with x outermost, coefficients in k[y].
    pub fn to_x_major(&self) -> Nested<E> {
        self.swap().to_y_major()
    }

    pub fn from_y_major(f: &Nested<E>) -> Self {
        Self::from_terms(f.coeffs().iter().enumerate().flat_map(|(j, row)| {
            row.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| ((i as u32, j as u32), c.clone()))
        }))
    }

    pub fn from_x_major(f: &Nested<E>) -> Self {
        Self::from_y_major(f).swap()
    }

    /// Embed a polynomial in x.
    pub fn from_x_poly(p: &Poly<E>) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Embed a polynomial in y.
    pub fn from_y_poly(p: &Poly<E>) -> Self {
        Self::from_x_poly(p).swap()
    }

    pub fn map<E2: Clone + Default + PartialEq>(&self, f: impl Fn(&E) -> E2) -> BiPoly<E2> {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Key of the leading term in canonical order.
    pub fn leading_key(&self) -> Option<(u32, u32)> {
        self.terms.keys().next_back().copied()
    }
}

impl<E> BiPoly<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    pub fn constant<R: Ring<Elem = E>>(_ring: &R, c: E) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::from_terms([((1, 0), ring.one())])
    }

    pub fn y<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::from_terms([((0, 1), ring.one())])
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let v = match terms.get(k) {
                Some(a) => ring.add(a, c),
                None => c.clone(),
            };
            if ring.is_zero(&v) {
                terms.remove(k);
            } else {
                terms.insert(*k, v);
            }
        }
        BiPoly { terms }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, ring.neg(c))).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        self.add(ring, &o.neg(ring))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), E> = BTreeMap::new();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                let key = (i + k, j + l);
                let prod = ring.mul(a, b);
                let v = match terms.get(&key) {
                    Some(c) => ring.add(c, &prod),
                    None => prod,
                };
                terms.insert(key, v);
            }
        }
        terms.retain(|_, c| !ring.is_zero(c));
        BiPoly { terms }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, ring.mul(c, s))))
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, e: u32) -> Self {
        let mut acc = Self::constant(ring, ring.one());
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Substitute x = a, giving a polynomial in y.
    pub fn eval_x<R: Ring<Elem = E>>(&self, ring: &R, a: &E) -> Poly<E> {
        let f = self.to_x_major();
        let mut acc = Poly::zero();
        for c in f.coeffs().iter().rev() {
            acc = acc.scale(ring, a).add(ring, c);
        }
        acc
    }

    /// Substitute y = b, giving a polynomial in x.
    pub fn eval_y<R: Ring<Elem = E>>(&self, ring: &R, b: &E) -> Poly<E> {
        self.swap().eval_x(ring, b)
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, a: &E, b: &E) -> E {
        self.eval_x(ring, a).eval(ring, b)
    }

    pub fn derivative_x<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), ring.mul_int(c, i as i64))),
        )
    }

    pub fn derivative_y<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.swap().derivative_x(ring).swap()
    }
}

impl<E> BiPoly<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    /// Scale so the leading coefficient in canonical order is 1.
    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.terms.values().next_back() {
            Some(lc) => {
                let inv = field.inv(lc).expect("nonzero");
                self.scale(field, &inv)
            }
            None => self.clone(),
        }
    }

    /// Canonical text, e.g. `x^2*y - x + y^2 + 1`.
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        format_sum(
            field,
            self.terms.iter().rev().map(|(&(i, j), c)| {
                (
                    c.clone(),
                    monomial_str(&[("x", i as usize), ("y", j as usize)]),
                )
            }),
        )
    }

    /// Parse a polynomial expression in x and y.
    pub fn parse<F: RootField<Elem = E>>(field: &F, text: &str) -> Result<Self> {
        crate::expr::parse_bivariate(field, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn canonical_printing_order() {
        let q = Rationals;
        let f = BiPoly::parse(&q, "1 + y^2 - x + x^2*y").unwrap();
        assert_eq!(f.format(&q), "x^2*y - x + y^2 + 1");
        assert_eq!(f.bidegree(), (2, 2));
        let g = BiPoly::parse(&q, "y^2 - x^3 + 1").unwrap();
        assert_eq!(g.bidegree(), (3, 2));
        assert_eq!(g.format(&q), "-x^3 + y^2 + 1");
        assert_eq!(g.normalized(&q).format(&q), "x^3 - y^2 - 1");
    }

    #[test]
    fn dense_round_trip() {
        let f7 = FiniteField::prime(7).unwrap();
        let f = BiPoly::parse(&f7, "3*x^2*y^3 + x*y + 5*y + 2").unwrap();
        assert_eq!(BiPoly::from_y_major(&f.to_y_major()), f);
        assert_eq!(BiPoly::from_x_major(&f.to_x_major()), f);
        assert_eq!(f.swap().swap(), f);
    }

    #[test]
    fn evaluation() {
        let q = Rationals;
        let f = BiPoly::parse(&q, "x*y - 1").unwrap();
        assert!(q.is_zero(&f.eval(&q, &q.from_i64(2), &q.div(&q.one(), &q.from_i64(2)).unwrap())));
        assert_eq!(f.eval_x(&q, &q.from_i64(3)).format(&q, "y"), "3*y - 1");
        assert_eq!(f.derivative_x(&q).format(&q), "y");
    }
}
