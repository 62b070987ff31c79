//! Rational functions in one variable.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::point::ProjectivePoint;
use crate::poly::Poly;

/// `num / den` with coprime parts and monic denominator. The zero function
/// is stored with an empty denominator so that `Default` is canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction<E> {
    num: Poly<E>,
    den: Poly<E>,
}

impl<E> RationalFunction<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    pub fn new<F: Field<Elem = E>>(field: &F, num: Poly<E>, den: Poly<E>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(field, num, den))
    }

    fn reduce<F: Field<Elem = E>>(field: &F, num: Poly<E>, den: Poly<E>) -> Self {
        if num.is_zero() {
            return Self::default();
        }
        let g = num.gcd(field, &den);
        let (mut n, mut d) = (num.div_rem(field, &g).0, den.div_rem(field, &g).0);
        let inv = field.inv(&d.lead()).expect("nonzero");
        n = n.scale(field, &inv);
        d = d.scale(field, &inv);
        RationalFunction { num: n, den: d }
    }

    pub fn from_poly<F: Field<Elem = E>>(field: &F, p: Poly<E>) -> Self {
        if p.is_zero() {
            return Self::default();
        }
        RationalFunction {
            num: p,
            den: Poly::constant(field.one()),
        }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_poly(field, Poly::constant(c))
    }

    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self::from_poly(field, Poly::x(field))
    }

    pub fn num(&self) -> &Poly<E> {
        &self.num
    }

    pub fn den<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        if self.den.is_zero() {
            Poly::constant(field.one())
        } else {
            self.den.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree().unwrap_or(0) == 0
    }

    pub fn as_constant(&self) -> Option<E> {
        if self.num.degree().unwrap_or(0) == 0 && self.is_polynomial() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Degree as a map of the projective line.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        let (a, b) = (self.den(field), o.den(field));
        Self::reduce(
            field,
            self.num.mul(field, &b).add(field, &o.num.mul(field, &a)),
            a.mul(field, &b),
        )
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        RationalFunction {
            num: self.num.neg(field),
            den: self.den.clone(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        self.add(field, &o.neg(field))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        Self::reduce(
            field,
            self.num.mul(field, &o.num),
            self.den(field).mul(field, &o.den(field)),
        )
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::reduce(field, self.num.scale(field, c), self.den(field))
    }

    pub fn inv<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(field, self.den(field), self.num.clone()))
    }

    pub fn div<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Option<Self> {
        o.inv(field).map(|oi| self.mul(field, &oi))
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u64) -> Self {
        Self::reduce(
            field,
            self.num.pow(field, e),
            self.den(field).pow(field, e),
        )
    }

    /// `self(g)`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, g: &Self) -> Self {
        // Homogenize: num(g) = sum a_i gn^i gd^(n-i) / gd^n.
        let n = self.degree();
        let (gn, gd) = (g.num.clone(), g.den(field));
        let hom = |p: &Poly<E>| {
            let mut acc = Poly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                let t = gn
                    .pow(field, i as u64)
                    .mul(field, &gd.pow(field, (n - i) as u64))
                    .scale(field, c);
                acc = acc.add(field, &t);
            }
            acc
        };
        Self::reduce(field, hom(&self.num), hom(&self.den(field)))
    }

    /// Value at a point of the projective line.
    pub fn eval_point<F: Field<Elem = E>>(
        &self,
        field: &F,
        p: &ProjectivePoint<E>,
    ) -> ProjectivePoint<E> {
        match p {
            ProjectivePoint::Finite(a) => {
                let n = self.num.eval(field, a);
                let d = self.den(field).eval(field, a);
                if field.is_zero(&d) {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(field.div(&n, &d).unwrap())
                }
            }
            ProjectivePoint::Infinity => {
                let dn = self.num.degree();
                let dd = self.den(field).degree().unwrap_or(0);
                match dn {
                    None => ProjectivePoint::Finite(field.zero()),
                    Some(dn) if dn > dd => ProjectivePoint::Infinity,
                    Some(dn) if dn < dd => ProjectivePoint::Finite(field.zero()),
                    Some(_) => ProjectivePoint::Finite(
                        field.div(&self.num.lead(), &self.den(field).lead()).unwrap(),
                    ),
                }
            }
        }
    }

    /// Order of vanishing at a point (negative at poles); `None` for zero.
    pub fn ord_at<F: Field<Elem = E>>(&self, field: &F, p: &ProjectivePoint<E>) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match p {
            ProjectivePoint::Infinity => {
                let dn = self.num.degree().unwrap() as i64;
                let dd = self.den(field).degree().unwrap_or(0) as i64;
                Some(dd - dn)
            }
            ProjectivePoint::Finite(a) => {
                let mult = |f: &Poly<E>| {
                    let mut f = f.clone();
                    let mut m = 0i64;
                    while let Some(q) = f.div_exact_by_linear(field, a) {
                        if f.is_zero() {
                            break;
                        }
                        f = q;
                        m += 1;
                    }
                    m
                };
                Some(mult(&self.num) - mult(&self.den(field)))
            }
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, field: &F, var: &str) -> String {
        let n = self.num.format(field, var);
        if self.is_polynomial() {
            return n;
        }
        let d = self.den.format(field, var);
        let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        let (n, d) = (wrap(n), wrap(d));
        format!("{n}/{d}")
    }
}

/// The field k(t) of rational functions over `base`, as a ring.
#[derive(Clone, Debug)]
pub struct RationalFunctions<F> {
    pub base: F,
    pub var: &'static str,
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(base: F, var: &'static str) -> Self {
        RationalFunctions { base, var }
    }
}

impl<F: Field> Ring for RationalFunctions<F> {
    type Elem = RationalFunction<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RationalFunction::default()
    }
    fn one(&self) -> Self::Elem {
        RationalFunction::constant(&self.base, self.base.one())
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
        RationalFunction::constant(&self.base, self.base.from_i64(n))
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        a.div(&self.base, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inv(&self.base)
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        RationalFunction::constant(&self.base, self.base.from_bigint(n))
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        a.format(&self.base, self.var)
    }
    fn spec_string(&self) -> String {
        format!("{}({})", self.base.spec_string(), self.var)
    }
}
