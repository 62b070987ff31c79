#![allow(dead_code)]

use corrdyn::corr::Correspondence;
use corrdyn::field::{Field, FiniteField, Fq};
use corrdyn::{BiPoly, Poly, ProjectivePoint, RationalFunction};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero(rng: &mut ChaCha8Rng, f: &FiniteField) -> Fq {
    Fq(rng.gen_range(1..f.order()))
}

pub fn any(rng: &mut ChaCha8Rng, f: &FiniteField) -> Fq {
    Fq(rng.gen_range(0..f.order()))
}

/// Random `F(x, y)` of exact bidegree `(dx, dy)` that defines a valid
/// correspondence.
pub fn random_corr(rng: &mut ChaCha8Rng, f: &FiniteField, dx: u32, dy: u32) -> Correspondence<FiniteField> {
    loop {
        let mut terms = Vec::new();
        for i in 0..=dx {
            for j in 0..=dy {
                if rng.gen_bool(0.6) {
                    terms.push(((i, j), any(rng, f)));
                }
            }
        }
        terms.push(((dx, rng.gen_range(0..=dy)), nonzero(rng, f)));
        terms.push(((rng.gen_range(0..=dx), dy), nonzero(rng, f)));
        let mut acc = BiPoly::zero();
        for (k, c) in terms {
            acc = acc.add(f, &BiPoly::from_terms([(k, c)]));
        }
        if acc.bidegree() != (dx, dy) {
            continue;
        }
        if let Ok(c) = Correspondence::from_poly(f, &acc) {
            return c;
        }
    }
}

pub fn random_poly(rng: &mut ChaCha8Rng, f: &FiniteField, deg: usize) -> Poly<Fq> {
    let mut c: Vec<Fq> = (0..deg).map(|_| any(rng, f)).collect();
    c.push(nonzero(rng, f));
    Poly::new(c)
}

/// Random rational function with numerator degree <= `dn` and a monic
/// denominator of degree <= `dd`.
pub fn random_rational(rng: &mut ChaCha8Rng, f: &FiniteField, dn: usize, dd: usize) -> RationalFunction<Fq> {
    let (a, b) = (rng.gen_range(0..=dn), rng.gen_range(0..=dd));
    let num = random_poly(rng, f, a);
    let mut den = random_poly(rng, f, b);
    den = den.scale(f, &f.inv(&den.lead()).unwrap());
    RationalFunction::new(f, num, den).unwrap()
}

pub fn fpt(n: u64) -> ProjectivePoint<Fq> {
    ProjectivePoint::Finite(Fq(n))
}

/// All points of P^1 over a finite field.
pub fn projective_line(f: &FiniteField) -> Vec<ProjectivePoint<Fq>> {
    let mut v: Vec<_> = f.elements().map(ProjectivePoint::Finite).collect();
    v.push(ProjectivePoint::Infinity);
    v
}
