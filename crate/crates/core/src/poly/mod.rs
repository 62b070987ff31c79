//! Univariate and bivariate polynomials.

pub mod bivariate;
pub(crate) mod nested;
pub mod factor;
pub mod graphs;
pub mod resultant;
pub mod roots;
pub mod squarefree;

pub use bivariate::BiPoly;
pub use roots::{roots_p1, BinaryForm};

use crate::field::{Field, Ring};

/// Dense univariate polynomial, little-endian, trailing zeros stripped.
/// Arithmetic takes the coefficient ring as an explicit argument.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E: Clone + Default + PartialEq> Poly<E> {
    pub fn new(mut c: Vec<E>) -> Self {
        let z = E::default();
        while c.last() == Some(&z) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(c: E) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: E, d: usize) -> Self {
        let mut v = vec![E::default(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> E {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn map<F2: Clone + Default + PartialEq>(&self, f: impl Fn(&E) -> F2) -> Poly<F2> {
        Poly::new(self.c.iter().map(f).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![E::default(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Coefficients reversed with respect to degree `d` (`x^d f(1/x)`).
    pub fn reversed(&self, d: usize) -> Self {
        let mut c: Vec<E> = (0..=d).map(|i| self.coeff(i)).collect();
        c.reverse();
        Self::new(c)
    }
}

impl<E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync>
    Poly<E>
{
    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::monomial(ring.one(), 1)
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => ring.add(a, b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Poly {
            c: self.c.iter().map(|a| ring.neg(a)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        self.add(ring, &o.neg(ring))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if ring.is_zero(b) {
                    continue;
                }
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        Self::new(self.c.iter().map(|a| ring.mul(a, s)).collect())
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, x: &E) -> E {
        let mut acc = ring.zero();
        for c in self.c.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), c);
        }
        acc
    }

    /// `self(g)`.
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(ring, g).add(ring, &Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| ring.mul_int(a, i as i64))
                .collect(),
        )
    }

    /// Exact division over a ring; `None` if `d` does not divide `self`.
    pub fn div_exact_ring<R: Ring<Elem = E>>(&self, ring: &R, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return None;
        }
        let lc = d.lead();
        let mut q = vec![ring.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            if ring.is_zero(top) {
                continue;
            }
            let qi = ring.div_exact(top, &lc)?;
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = ring.sub(&r[i + j], &ring.mul(&qi, dj));
            }
            q[i] = qi;
        }
        if r.iter().all(|a| ring.is_zero(a)) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(d)^{deg f - deg d + 1} f mod d`.
    pub fn pseudo_rem<R: Ring<Elem = E>>(&self, ring: &R, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.lead();
        let mut r = self.clone();
        let Some(df) = r.degree() else {
            return r;
        };
        if df < dd {
            return r;
        }
        let mut steps = df - dd + 1;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let t = Self::monomial(r.lead(), dr - dd);
            r = r.scale(ring, &lc).sub(ring, &t.mul(ring, d));
            steps -= 1;
        }
        r.scale(ring, &ring.pow(&lc, steps as u64))
    }

    /// Content-free over a ring with gcd-like exact division: divides all
    /// coefficients by `g` when possible.
    pub fn div_scalar_exact<R: Ring<Elem = E>>(&self, ring: &R, g: &E) -> Option<Self> {
        let c: Option<Vec<E>> = self.c.iter().map(|a| ring.div_exact(a, g)).collect();
        c.map(Self::new)
    }
}

impl<E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync>
    Poly<E>
{
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = field.inv(&d.lead()).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            if field.is_zero(top) {
                continue;
            }
            let qi = field.mul(top, &inv);
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = field.sub(&r[i + j], &field.mul(&qi, dj));
            }
            q[i] = qi;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> Self {
        self.div_rem(field, d).1
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = field.inv(&self.lead()).expect("nonzero");
        self.scale(field, &inv)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(field.one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(field.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(field, &r1);
            let s2 = s0.sub(field, &q.mul(field, &s1));
            let t2 = t0.sub(field, &q.mul(field, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = field.inv(&r0.lead()).expect("nonzero");
        (
            r0.scale(field, &inv),
            s0.scale(field, &inv),
            t0.scale(field, &inv),
        )
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod<F: Field<Elem = E>>(&self, field: &F, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(field, m).ext_gcd(field, m);
        if g.degree() == Some(0) {
            Some(s.rem(field, m))
        } else {
            None
        }
    }

    pub fn mul_mod<F: Field<Elem = E>>(&self, field: &F, o: &Self, m: &Self) -> Self {
        self.mul(field, o).rem(field, m)
    }

    pub fn pow_mod<F: Field<Elem = E>>(&self, field: &F, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(field, m);
        let mut acc = Self::constant(field.one()).rem(field, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(field, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(field, &base, m);
            }
        }
        acc
    }

    /// Quotient by `x - r` when `r` is a root.
    pub fn div_exact_by_linear<F: Field<Elem = E>>(&self, field: &F, r: &E) -> Option<Self> {
        let lin = Self::new(vec![field.neg(r), field.one()]);
        let (q, rem) = self.div_rem(field, &lin);
        if rem.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Canonical printing in descending degree.
    pub fn format<F: Field<Elem = E>>(&self, field: &F, var: &str) -> String {
        let terms = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !field.is_zero(a))
            .map(|(i, a)| (a.clone(), monomial_str(&[(var, i)])));
        format_sum(field, terms)
    }
}

/// `x^2*y` style monomial text; empty for the constant monomial.
pub(crate) fn monomial_str(parts: &[(&str, usize)]) -> String {
    parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Join signed terms `c*mono` into canonical text.
pub(crate) fn format_sum<F: Field>(
    field: &F,
    terms: impl Iterator<Item = (F::Elem, String)>,
) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let s = field.format_elem(&c);
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, s),
        };
        let body = if body.contains(' ') {
            format!("({body})")
        } else {
            body
        };
        let term = match (mono.is_empty(), body.as_str()) {
            (true, _) => body,
            (false, "1") => mono,
            (false, _) => format!("{body}*{mono}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Polynomials over a ring, as a ring (so `k[x][y]` nests).
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        Poly::constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        Poly::constant(self.base.from_i64(n))
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        a.div_exact_ring(&self.base, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn mul_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let c = self.base.from_i64(n);
        a.scale(&self.base, &c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Fq, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&n| q(n)).collect())
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = qp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(qp(&[0, 0]).is_zero());
        assert_eq!(qp(&[0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        let f = qp(&[-1, 0, 1]);
        let g = qp(&[1, 1]);
        let (quo, r) = f.div_rem(&Rationals, &g);
        assert_eq!(quo, qp(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&Rationals, &qp(&[-1, 1])), qp(&[-1, 1]));
        let (gg, s, t) = qp(&[1, 0, 1]).ext_gcd(&Rationals, &qp(&[0, 1]));
        assert_eq!(gg, qp(&[1]));
        let lhs = s
            .mul(&Rationals, &qp(&[1, 0, 1]))
            .add(&Rationals, &t.mul(&Rationals, &qp(&[0, 1])));
        assert_eq!(lhs, qp(&[1]));
    }

    #[test]
    fn exact_division_over_nested_rings() {
        let kx = PolyRing::new(Rationals);
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 1]);
        assert_eq!(kx.div_exact(&a, &b), Some(qp(&[-1, 1])));
        assert_eq!(kx.div_exact(&a, &qp(&[2, 1])), None);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let f = qp(&[3, 1, 4, 1, 5]);
        let d = qp(&[2, 7, 3]);
        let pr = f.pseudo_rem(&Rationals, &d);
        let lc = q(3);
        let scaled = f.scale(&Rationals, &Rationals.pow(&lc, 3));
        assert_eq!(scaled.rem(&Rationals, &d), pr);
    }

    #[test]
    fn printing() {
        assert_eq!(qp(&[1, -2, 1]).format(&Rationals, "x"), "x^2 - 2*x + 1");
        assert_eq!(qp(&[0, -1]).format(&Rationals, "x"), "-x");
        assert_eq!(qp(&[]).format(&Rationals, "x"), "0");
        let half = Poly::new(vec![q(0), BigRational::new(1.into(), 2.into())]);
        assert_eq!(half.format(&Rationals, "x"), "1/2*x");
        let f25 = FiniteField::new(5, 2).unwrap();
        let p = Poly::new(vec![Fq(1), Fq(11)]);
        assert_eq!(p.format(&f25, "x"), "(2*t + 1)*x + 1");
    }

    #[test]
    fn modular_inverse() {
        let f7 = FiniteField::prime(7).unwrap();
        let m = Poly::new(vec![Fq(1), Fq(0), Fq(1)]);
        let a = Poly::new(vec![Fq(3), Fq(2)]);
        let inv = a.inv_mod(&f7, &m).unwrap();
        assert_eq!(a.mul_mod(&f7, &inv, &m), Poly::constant(Fq(1)));
    }
}
