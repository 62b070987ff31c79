//! Squarefree decomposition (Musser's algorithm, with p-th roots in
//! characteristic p).

use super::nested::{self, Nested};
use super::{BiPoly, Poly};
use crate::error::{Error, Result};
use crate::field::Field;

/// Monic pairwise coprime squarefree factors with multiplicities, in
/// increasing multiplicity. The zero or constant polynomial gives `[]`.
pub fn squarefree_univariate<F: Field>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    sqf_uni_rec(field, &f.monic(field), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn sqf_uni_rec<F: Field>(
    field: &F,
    f: &Poly<F::Elem>,
    scale: u32,
    out: &mut Vec<(Poly<F::Elem>, u32)>,
) {
    let mut g = f.gcd(field, &f.derivative(field));
    let mut w = f.div_rem(field, &g).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(field, &g);
        let z = w.div_rem(field, &y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(field), i * scale));
        }
        i += 1;
        g = g.div_rem(field, &y).0;
        w = y;
    }
    if g.degree().unwrap_or(0) > 0 {
        let p = field.characteristic() as usize;
        debug_assert!(p > 0, "characteristic 0 leaves no p-th power part");
        let root = Poly::new(
            g.coeffs()
                .iter()
                .step_by(p)
                .map(|a| field.pth_root(a))
                .collect(),
        );
        sqf_uni_rec(field, &root.monic(field), scale * p as u32, out);
    }
}

/// Squarefree decomposition of a polynomial in one variable.
pub fn squarefree_decomposition<F: Field>(
    field: &F,
    f: &Poly<F::Elem>,
) -> Result<Vec<(Poly<F::Elem>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(squarefree_univariate(field, f))
}

/// Result of decomposing a bivariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSquarefree<E> {
    /// The part depending on x only (monic, possibly constant 1).
    pub x_content: Poly<E>,
    /// The part depending on y only (monic, possibly constant 1).
    pub y_content: Poly<E>,
    /// Factors with positive degree in both variables, separable in each.
    pub factors: Vec<(BiPoly<E>, u32)>,
}

/// Squarefree decomposition of `f(x, y)` into components with positive
/// degree in both variables, each separable in x and in y.
pub fn squarefree_bivariate<F: Field>(
    field: &F,
    f: &BiPoly<F::Elem>,
) -> Result<BivariateSquarefree<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ymaj = f.to_y_major();
    let x_content = nested::content(field, &ymaj).monic(field);
    let prim = nested::primitive_part(field, &ymaj);
    // The y-only content: primitive part viewed with x outermost.
    let xmaj = nested::swap(&prim);
    let y_content = nested::content(field, &xmaj).monic(field);
    let prim = nested::swap(&nested::primitive_part(field, &xmaj));
    let mut parts = Vec::new();
    if nested::outer_degree(&prim) > 0 {
        sqf_bi_rec(field, &prim, 1, &mut parts)?;
    }
    let mut factors = Vec::new();
    for (g, m) in parts {
        let g = nested::primitive_part(field, &g);
        if nested::inner_degree(&g) == 0 {
            // Cannot happen after removing y-content, but stay defensive.
            continue;
        }
        let gx = nested::derivative_inner(field, &g);
        let common = nested::gcd(field, &g, &gx);
        if gx.is_zero() || nested::outer_degree(&common) > 0 || nested::inner_degree(&common) > 0 {
            let b = BiPoly::from_y_major(&g).normalized(field);
            return Err(Error::Inseparable(b.format(field)));
        }
        factors.push((BiPoly::from_y_major(&g).normalized(field), m));
    }
    factors.sort();
    Ok(BivariateSquarefree {
        x_content,
        y_content,
        factors,
    })
}

fn sqf_bi_rec<F: Field>(
    field: &F,
    f: &Nested<F::Elem>,
    scale: u32,
    out: &mut Vec<(Nested<F::Elem>, u32)>,
) -> Result<()> {
    let fy = nested::derivative_outer(field, f);
    let mut g = nested::gcd(field, f, &fy);
    let mut w = nested::div_exact(field, f, &g).expect("gcd divides");
    let mut i = 1;
    while nested::outer_degree(&w) > 0 {
        let y = nested::gcd(field, &w, &g);
        let z = nested::div_exact(field, &w, &y).expect("gcd divides");
        if nested::outer_degree(&z) > 0 {
            out.push((nested::normalize(field, &z), i * scale));
        }
        i += 1;
        g = nested::div_exact(field, &g, &y).expect("gcd divides");
        w = y;
    }
    if nested::outer_degree(&g) > 0 {
        let p = field.characteristic() as u32;
        match nested::pth_root(field, &g) {
            Some(root) if p > 0 => sqf_bi_rec(field, &root, scale * p, out)?,
            _ => {
                let b = BiPoly::from_y_major(&nested::normalize(field, &g)).normalized(field);
                return Err(Error::Inseparable(b.format(field)));
            }
        }
    }
    Ok(())
}
