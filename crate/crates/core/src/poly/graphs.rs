//! Splitting off factors of degree one in a variable, i.e. graphs of
//! rational maps `y = b(x)/a(x)` inside a bivariate polynomial.
//!
//! A root of `G(x0, y)` is lifted to a power series in `x - x0` by Newton
//! iteration and turned back into a rational function by Padé
//! approximation. Every candidate is checked by exact division.

use super::nested;
use super::{BiPoly, Poly};
use crate::field::RootField;

fn trunc<E: Clone + Default + PartialEq>(mut v: Vec<E>, n: usize) -> Vec<E> {
    v.truncate(n);
    v
}

pub(crate) fn series_mul<F: RootField>(field: &F, a: &[F::Elem], b: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

pub(crate) fn series_inv<F: RootField>(field: &F, d: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let d0 = field.inv(&d[0]).expect("unit constant term");
    let mut out = vec![field.zero(); n];
    out[0] = d0.clone();
    for k in 1..n {
        let mut acc = field.zero();
        for i in 1..=k.min(d.len() - 1) {
            acc = field.add(&acc, &field.mul(&d[i], &out[k - i]));
        }
        out[k] = field.neg(&field.mul(&acc, &d0));
    }
    out
}

/// `sum h_j(t) s(t)^j mod t^n`.
fn eval_series<F: RootField>(
    field: &F,
    h: &[Poly<F::Elem>],
    s: &[F::Elem],
    n: usize,
) -> Vec<F::Elem> {
    let mut acc = vec![field.zero(); n];
    for c in h.iter().rev() {
        acc = series_mul(field, &acc, s, n);
        for (i, x) in c.coeffs().iter().enumerate().take(n) {
            acc[i] = field.add(&acc[i], x);
        }
    }
    acc
}

/// Try to find a factor `a(x) y - b(x)` of `g` through the root `r` of
/// `g(x0, y)`.
fn lift_root<F: RootField>(
    field: &F,
    g: &BiPoly<F::Elem>,
    x0: &F::Elem,
    r: &F::Elem,
) -> Option<BiPoly<F::Elem>> {
    let m = g.deg_x() as usize;
    let n = 2 * m + 2;
    let shift = Poly::new(vec![x0.clone(), field.one()]);
    let h: Vec<Poly<F::Elem>> = g
        .to_y_major()
        .coeffs()
        .iter()
        .map(|c| c.compose(field, &shift))
        .collect();
    let hy: Vec<Poly<F::Elem>> = h
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c.scale(field, &field.from_i64(j as i64)))
        .collect();
    let mut s = vec![field.zero(); n];
    s[0] = r.clone();
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let val = eval_series(field, &h, &s, prec);
        let der = eval_series(field, &hy, &s, prec);
        if field.is_zero(&der[0]) {
            return None;
        }
        let step = series_mul(field, &val, &series_inv(field, &der, prec), prec);
        for i in 0..prec {
            s[i] = field.sub(&s[i], &step[i]);
        }
    }
    // Padé: a*s = b mod t^n with deg a, deg b <= m.
    let mut r0 = Poly::monomial(field.one(), n);
    let mut r1 = Poly::new(trunc(s, n));
    let (mut u0, mut u1) = (Poly::zero(), Poly::constant(field.one()));
    while r1.degree().is_some_and(|d| d > m) {
        let (q, rem) = r0.div_rem(field, &r1);
        let u2 = u0.sub(field, &q.mul(field, &u1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
    }
    if u1.degree()? > m || field.is_zero(&u1.coeff(0)) {
        return None;
    }
    let back = Poly::new(vec![field.neg(x0), field.one()]);
    let (a, b) = (u1.compose(field, &back), r1.compose(field, &back));
    let c = a.gcd(field, &b);
    let (a, b) = (a.div_rem(field, &c).0, b.div_rem(field, &c).0);
    let cand = BiPoly::from_x_poly(&a)
        .mul(field, &BiPoly::y(field))
        .sub(field, &BiPoly::from_x_poly(&b));
    nested::div_exact(field, &g.to_y_major(), &cand.to_y_major()).map(|_| cand)
}

/// A point `x0` where `g(x0, y)` keeps its degree and is squarefree.
fn good_specialization<F: RootField>(field: &F, g: &BiPoly<F::Elem>) -> Option<F::Elem> {
    let tries = match field.characteristic() {
        0 => 64,
        p => p.min(64),
    };
    let lc = g.to_y_major().lead();
    let gy = g.derivative_y(field);
    (0..tries as i64)
        .map(|i| field.from_i64(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }))
        .find(|x0| {
            if field.is_zero(&lc.eval(field, x0)) {
                return false;
            }
            let s = g.eval_x(field, x0);
            s.gcd(field, &gy.eval_x(field, x0)).degree() == Some(0)
        })
}

/// Peel factors of degree one in y from a squarefree `g`.
fn peel<F: RootField>(field: &F, g: &BiPoly<F::Elem>) -> (Vec<BiPoly<F::Elem>>, BiPoly<F::Elem>) {
    let mut found = Vec::new();
    let mut rest = g.clone();
    'outer: while rest.deg_y() > 1 && rest.deg_x() > 0 {
        let Some(x0) = good_specialization(field, &rest) else {
            break;
        };
        let roots = field.split(&rest.eval_x(field, &x0)).roots;
        for (r, _) in roots {
            if let Some(l) = lift_root(field, &rest, &x0, &r) {
                let q = nested::div_exact(field, &rest.to_y_major(), &l.to_y_major())
                    .expect("checked");
                rest = BiPoly::from_y_major(&q);
                found.push(l);
                continue 'outer;
            }
        }
        break;
    }
    (found, rest)
}

/// Split a squarefree bivariate polynomial with no content into factors
/// that are graphs (degree one in x or in y) and one remaining factor.
pub fn split_graph_factors<F: RootField>(field: &F, g: &BiPoly<F::Elem>) -> Vec<BiPoly<F::Elem>> {
    let mut out = Vec::new();
    let (ys, rest) = peel(field, g);
    out.extend(ys);
    if rest.bidegree() == (0, 0) {
        return out;
    }
    let (xs, rest) = peel(field, &rest.swap());
    out.extend(xs.into_iter().map(|f| f.swap()));
    let rest = rest.swap();
    if rest.bidegree() != (0, 0) {
        out.push(rest);
    }
    out
}
