use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring, RootField, Splitting};
use crate::poly::{squarefree, Poly};

/// The rational numbers. `BigRational` keeps values in lowest terms with a
/// positive denominator, which is the canonical form we print and hash.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn spec_string(&self) -> String {
        "Q".to_string()
    }
}

impl RootField for Rationals {
    fn split(&self, f: &Poly<BigRational>) -> Splitting<BigRational> {
        let mut roots = Vec::new();
        let mut residual = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return Splitting { roots, residual };
        }
        for (part, mult) in squarefree::squarefree_univariate(self, f) {
            let mut rest = part.clone();
            for r in rational_roots(&part) {
                rest = rest
                    .div_exact_by_linear(self, &r)
                    .expect("root divides its polynomial");
                roots.push((r, mult));
            }
            if rest.degree().unwrap_or(0) > 0 {
                residual.push((rest.monic(self), mult));
            }
        }
        roots.sort();
        residual.sort();
        Splitting { roots, residual }
    }
}

/// Scale a rational polynomial to a primitive integer polynomial.
pub(crate) fn to_primitive_integer(f: &Poly<BigRational>) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Small primes for modular root finding.
fn primes() -> impl Iterator<Item = u64> {
    (1009u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn eval_mod(ints: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in ints.iter().rev() {
        acc = (acc * r + c).mod_floor(m);
    }
    acc
}

fn derivative(ints: &[BigInt]) -> Vec<BigInt> {
    ints.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `n/d` with `n = d r mod m` and `|n|, d <= sqrt(m/2)`, if any.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// All rational roots of a squarefree polynomial: roots modulo a prime
/// where the reduction stays squarefree, lifted p-adically and turned back
/// into fractions. Every candidate is checked exactly.
pub(crate) fn rational_roots(f: &Poly<BigRational>) -> Vec<BigRational> {
    let mut ints = to_primitive_integer(f);
    let mut out = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        if !out.iter().any(|r: &BigRational| r.is_zero()) {
            out.push(BigRational::zero());
        }
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return out;
    }
    let is_root = |r: &BigRational| {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * r + BigRational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    if ints.len() == 2 {
        out.push(BigRational::new(-ints[0].clone(), ints[1].clone()));
        out.sort();
        return out;
    }
    let lead = ints.last().unwrap().clone();
    let df = derivative(&ints);
    // Any rational root n/d has |n| <= |a0| and d <= |lead|.
    let size = ints[0].abs().max(lead.abs());
    let target = size.pow(2) * BigInt::from(4);
    for p in primes() {
        let pb = BigInt::from(p);
        if (&lead % &pb).is_zero() {
            continue;
        }
        let roots: Vec<BigInt> = (0..p)
            .map(BigInt::from)
            .filter(|r| eval_mod(&ints, r, &pb).is_zero())
            .collect();
        if roots.iter().any(|r| eval_mod(&df, r, &pb).is_zero()) {
            continue;
        }
        for r0 in roots {
            let (mut r, mut m) = (r0, pb.clone());
            while m <= target {
                m = &m * &m;
                let fr = eval_mod(&ints, &r, &m);
                let inv = inv_mod(&eval_mod(&df, &r, &m), &m).expect("simple root");
                r = (&r - fr * inv).mod_floor(&m);
            }
            if let Some(c) = reconstruct(&r, &m) {
                if is_root(&c) && !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        break;
    }
    out.sort();
    out
}
