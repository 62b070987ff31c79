//! Factorization over finite fields: squarefree, distinct-degree, then
//! Cantor–Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::squarefree::squarefree_univariate;
use super::Poly;
use crate::field::{FiniteField, Fq, Ring};

/// Monic irreducible factors with multiplicities, sorted by factor.
pub fn factor_fq(field: &FiniteField, f: &Poly<Fq>) -> Vec<(Poly<Fq>, u32)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_univariate(field, f) {
        for h in factor_squarefree(field, &g) {
            out.push((h, m));
        }
    }
    out.sort();
    out
}

/// Irreducible factors of a monic squarefree polynomial, sorted.
pub fn factor_squarefree(field: &FiniteField, f: &Poly<Fq>) -> Vec<Poly<Fq>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(field, f) {
        let mut rng = ChaCha8Rng::seed_from_u64(field.split_seed() ^ poly_hash(&g));
        equal_degree(field, &g, d, &mut rng, &mut out);
    }
    out.sort();
    out
}

fn poly_hash(f: &Poly<Fq>) -> u64 {
    // FNV-1a over the coefficient codes; stable across runs and platforms.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in f.coeffs() {
        for b in c.0.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    h
}

/// Splits a monic squarefree `f` into products of irreducibles of equal
/// degree: pairs `(product, degree)`.
pub fn distinct_degree(field: &FiniteField, f: &Poly<Fq>) -> Vec<(Poly<Fq>, usize)> {
    let q = field.order() as u128;
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut g = f.monic(field);
    let mut h = x.clone();
    let mut d = 0;
    while g.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(field, q, &g);
        let common = g.gcd(field, &h.sub(field, &x));
        if common.degree().unwrap_or(0) > 0 {
            g = g.div_rem(field, &common).0;
            h = h.rem(field, &g);
            out.push((common, d));
        }
    }
    if let Some(dg) = g.degree() {
        if dg > 0 {
            out.push((g, dg));
        }
    }
    out
}

fn equal_degree(
    field: &FiniteField,
    f: &Poly<Fq>,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly<Fq>>,
) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic(field));
        return;
    }
    let q = field.order();
    loop {
        let a = Poly::new((0..n).map(|_| Fq(rng.gen_range(0..q))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // Absolute trace of a over F_2: a + a^2 + ... + a^(2^(kd-1)).
            let steps = field.degree() as usize * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..steps {
                t = t.mul_mod(field, &t, f);
                acc = acc.add(field, &t);
            }
            acc
        } else {
            // Norm to F_q, then the quadratic character.
            let mut conj = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                conj = conj.pow_mod(field, q as u128, f);
                norm = norm.mul_mod(field, &conj, f);
            }
            norm.pow_mod(field, ((q - 1) / 2) as u128, f)
                .sub(field, &Poly::constant(field.one()))
        };
        let g = f.gcd(field, &b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let rest = f.div_rem(field, &g).0;
            equal_degree(field, &g, d, rng, out);
            equal_degree(field, &rest, d, rng, out);
            return;
        }
    }
}
