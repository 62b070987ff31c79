//! Resultants by the subresultant PRS.

use super::{BiPoly, Poly, PolyRing};
use crate::field::{Field, Ring};

/// `Res(a, b)` over an integral domain with exact division.
pub fn resultant<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> R::Elem {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return ring.zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = ring.one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = ring.neg(&s);
        }
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        return ring.mul(&s, &ring.pow(&b.lead(), da as u64));
    }
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = ring.neg(&s);
        }
        let r = a.pseudo_rem(ring, &b);
        a = b;
        let div = ring.mul(&g, &ring.pow(&h, delta as u64));
        b = r.div_scalar_exact(ring, &div).expect("subresultant division is exact");
        g = a.lead();
        h = if delta == 0 {
            h
        } else {
            let num = ring.pow(&g, delta as u64);
            let den = ring.pow(&h, delta as u64 - 1);
            ring.div_exact(&num, &den).expect("subresultant division is exact")
        };
        match b.degree() {
            None => return ring.zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let dega = a.degree().unwrap() as u64;
    let num = ring.pow(&b.lead(), dega);
    let den = ring.pow(&h, dega - 1);
    let res = ring.div_exact(&num, &den).expect("subresultant division is exact");
    ring.mul(&s, &res)
}

/// Which variable to eliminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// `Res_var(f, g)` as a polynomial in the remaining variable.
pub fn resultant_bivariate<F: Field>(
    field: &F,
    f: &BiPoly<F::Elem>,
    g: &BiPoly<F::Elem>,
    var: Var,
) -> Poly<F::Elem> {
    let (a, b) = match var {
        Var::Y => (f.to_y_major(), g.to_y_major()),
        Var::X => (f.to_x_major(), g.to_x_major()),
    };
    resultant(&PolyRing::new(field.clone()), &a, &b)
}

/// `Res_y(f(x, y), g(y, z))`, returned as a polynomial in x and z where z
/// takes the role of y in the output.
pub fn resultant_compose<F: Field>(
    field: &F,
    f: &BiPoly<F::Elem>,
    g: &BiPoly<F::Elem>,
) -> BiPoly<F::Elem> {
    // Coefficient ring k[x][z]: outer x, inner z.
    let kxz = PolyRing::new(PolyRing::new(field.clone()));
    let fy = f.to_y_major();
    let a: Poly<Poly<Poly<F::Elem>>> = Poly::new(
        fy.coeffs()
            .iter()
            .map(|cx| Poly::new(cx.coeffs().iter().map(|c| Poly::constant(c.clone())).collect()))
            .collect(),
    );
    // g(y, z) has y in the x slot and z in the y slot.
    let gy = g.to_x_major();
    let b: Poly<Poly<Poly<F::Elem>>> = Poly::new(
        gy.coeffs()
            .iter()
            .map(|cz| Poly::constant(cz.clone()))
            .collect(),
    );
    let r = resultant(&kxz, &a, &b);
    BiPoly::from_x_major(&r)
}
