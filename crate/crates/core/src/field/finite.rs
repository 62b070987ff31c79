use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Field, Ring, RootField, Splitting};
use crate::error::{Error, Result};
use crate::poly::{factor, Poly};

/// Largest field order we build; elements are stored as `u64` codes.
const MAX_ORDER: u64 = 1 << 62;
/// Fields up to this size get exp/log tables for multiplication.
const TABLE_LIMIT: u64 = 1 << 22;

/// Element of a finite field, encoded as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
/// where `c_0 + c_1 t + ...` is its residue modulo the field's modulus.
/// The code order is the canonical element order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u64);

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    order: u64,
    /// Monic modulus, little-endian, length `k + 1`.
    modulus: Vec<u64>,
    /// Degree over F_p of the subfield treated as the base field.
    base_k: u32,
    tables: Option<Tables>,
    split_seed: u64,
}

/// The finite field F_{p^k} with the canonical modulus.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec_string())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.k == other.inner.k
            && self.inner.base_k == other.inner.base_k
    }
}

impl Eq for FiniteField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

// Small dense polynomials over F_p, used only to pick moduli.
mod fp_poly {
    use super::pow_mod;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * inv % p;
            for (j, mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub(crate) fn is_irreducible_fp(m: &[u64], p: u64) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^{p^j} mod m
    let frob = |j: u32| {
        let mut h = x.clone();
        for _ in 0..j {
            h = fp_poly::powmod(&h, p, m, p);
        }
        h
    };
    let full = frob(k);
    if !fp_poly::sub(&full, &x, p).is_empty() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let h = frob(k / r as u32);
        let diff = fp_poly::sub(&h, &x, p);
        let g = fp_poly::gcd(m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `k` over F_p, where
/// candidates `t^k + c_{k-1} t^{k-1} + ... + c_0` are ordered by the code
/// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
pub(crate) fn canonical_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k);
    for code in 0..count {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if is_irreducible_fp(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge(p.to_string()));
        }
        Ok(Self::build(p, 1, 1, vec![0, 1]))
    }

    /// F_{p^k} over the prime field `base`; `k = 1` returns `base`.
    pub fn extension(base: &FiniteField, k: u32) -> Result<Self> {
        if base.degree() != 1 {
            return Err(Error::BadFieldSpec(format!(
                "{} is not a prime field",
                base.spec_string()
            )));
        }
        if k == 0 {
            return Err(Error::NonPositiveDegree);
        }
        Self::new(base.p(), k)
    }

    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_base(p, k, k)
    }

    fn with_base(p: u64, k: u32, base_k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge(p.to_string()));
        }
        if k == 0 {
            return Err(Error::NonPositiveDegree);
        }
        let order = (p as u128).checked_pow(k);
        match order {
            Some(o) if o < MAX_ORDER as u128 => {}
            _ => return Err(Error::FieldTooLarge(format!("{p}^{k}"))),
        }
        let modulus = canonical_modulus(p, k);
        Ok(Self::build(p, k, base_k, modulus))
    }

    fn build(p: u64, k: u32, base_k: u32, modulus: Vec<u64>) -> Self {
        let order = p.pow(k);
        let mut inner = Inner {
            p,
            k,
            order,
            modulus,
            base_k,
            tables: None,
            split_seed: 0,
        };
        if k > 1 && order <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        FiniteField {
            inner: Arc::new(inner),
        }
    }

    /// The field F_{q^l} where F_q is this field; elements of this field
    /// embed into it and `element_degree` is measured over F_q.
    pub fn ambient(&self, l: u32) -> Result<Self> {
        let k = self
            .degree()
            .checked_mul(l)
            .ok_or_else(|| Error::FieldTooLarge(format!("{}^({}*{l})", self.p(), self.degree())))?;
        let f = Self::with_base(self.p(), k, self.degree())?;
        Ok(f.with_split_seed(self.inner.split_seed))
    }

    /// Same field with another seed for randomized factorization.
    pub fn with_split_seed(&self, seed: u64) -> Self {
        let old = &self.inner;
        let tables = old.tables.as_ref().map(|t| Tables {
            exp: t.exp.clone(),
            log: t.log.clone(),
        });
        FiniteField {
            inner: Arc::new(Inner {
                p: old.p,
                k: old.k,
                order: old.order,
                modulus: old.modulus.clone(),
                base_k: old.base_k,
                tables,
                split_seed: seed,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }
    pub fn degree(&self) -> u32 {
        self.inner.k
    }
    pub fn order(&self) -> u64 {
        self.inner.order
    }
    pub fn base_degree(&self) -> u32 {
        self.inner.base_k
    }
    /// Order of the base subfield F_q.
    pub fn base_order(&self) -> u64 {
        self.inner.p.pow(self.inner.base_k)
    }
    pub fn split_seed(&self) -> u64 {
        self.inner.split_seed
    }
    /// Monic modulus, little-endian.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Every element in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.order).map(Fq)
    }

    fn decode(&self, a: Fq) -> Vec<u64> {
        let p = self.inner.p;
        let mut c = a.0;
        (0..self.inner.k)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> Fq {
        let p = self.inner.p;
        let mut code = 0u64;
        for d in digits.iter().rev() {
            code = code * p + d;
        }
        Fq(code)
    }

    /// Coefficients of the element in the basis 1, t, ..., t^{k-1}.
    pub fn coordinates(&self, a: Fq) -> Vec<u64> {
        self.decode(a)
    }

    pub fn from_coordinates(&self, digits: &[u64]) -> Fq {
        let mut d: Vec<u64> = digits.iter().map(|x| x % self.inner.p).collect();
        d.resize(self.inner.k as usize, 0);
        self.encode(&d)
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let p = self.inner.p;
        let k = self.inner.k as usize;
        if k == 1 {
            return Fq(a.0 * b.0 % p);
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in da.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.inner.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + p - c * m[j] % p) % p;
            }
            prod[top] = 0;
        }
        self.encode(&prod[..k])
    }

    /// Frobenius relative to the base subfield: a -> a^q.
    pub fn frobenius(&self, a: &Fq) -> Fq {
        self.pow(a, self.base_order())
    }

    /// Embedding of a subfield with the same characteristic.
    pub fn embedding_from(&self, sub: &FiniteField) -> Result<Embedding> {
        if sub.p() != self.p() || self.degree() % sub.degree() != 0 {
            return Err(Error::FieldMismatch(sub.spec_string(), self.spec_string()));
        }
        if sub.degree() == 1 {
            return Ok(Embedding {
                target: self.clone(),
                sub_p: sub.p(),
                images: vec![self.one()],
            });
        }
        let m = Poly::new(sub.modulus().iter().map(|c| Fq(*c)).collect());
        let split = self.split(&m);
        let root = split
            .roots
            .first()
            .map(|(r, _)| *r)
            .expect("a subfield modulus splits in the larger field");
        let mut images = Vec::with_capacity(sub.degree() as usize);
        let mut acc = self.one();
        for _ in 0..sub.degree() {
            images.push(acc);
            acc = self.mul(&acc, &root);
        }
        Ok(Embedding {
            target: self.clone(),
            sub_p: sub.p(),
            images,
        })
    }

    /// The elements of the intermediate field F_{q^m} (q the base order),
    /// sorted by code.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Fq>> {
        let rel = self.degree() / self.base_degree();
        if m == 0 || rel % m != 0 {
            return Err(Error::InvalidParameter(
                "m".into(),
                format!("{m} does not divide {rel}"),
            ));
        }
        let sub = FiniteField::new(self.p(), self.base_degree() * m)?;
        let emb = self.embedding_from(&sub)?;
        let mut out: Vec<Fq> = sub.elements().map(|a| emb.apply(&sub, a)).collect();
        out.sort();
        Ok(out)
    }
}

fn build_tables(inner: &Inner) -> Tables {
    let tmp = FiniteField {
        inner: Arc::new(Inner {
            p: inner.p,
            k: inner.k,
            order: inner.order,
            modulus: inner.modulus.clone(),
            base_k: inner.base_k,
            tables: None,
            split_seed: 0,
        }),
    };
    let n = inner.order - 1;
    let factors = prime_factors(n);
    let mut g = Fq(1);
    for code in 2..inner.order {
        let cand = Fq(code);
        if factors
            .iter()
            .all(|r| tmp.pow_slow(cand, n / r) != Fq(1))
        {
            g = cand;
            break;
        }
    }
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; inner.order as usize];
    let mut acc = Fq(1);
    for i in 0..n {
        exp.push(acc.0 as u32);
        log[acc.0 as usize] = i as u32;
        acc = tmp.mul_slow(acc, g);
    }
    Tables { exp, log }
}

impl FiniteField {
    fn pow_slow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Ring for FiniteField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }
    fn one(&self) -> Fq {
        Fq(1)
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.inner.p;
        if self.inner.k == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut code = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.k {
            let d = (x % p + y % p) % p;
            code += d * place;
            place = place.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Fq(code)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Fq) -> Fq {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if p == 2 {
            return *a;
        }
        let mut x = a.0;
        let mut code = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.k {
            let d = x % p;
            code += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            x /= p;
        }
        Fq(code)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        match &self.inner.tables {
            Some(t) => {
                let n = self.inner.order - 1;
                let s = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
                Fq(t.exp[s as usize] as u64)
            }
            None => self.mul_slow(*a, *b),
        }
    }
    fn from_i64(&self, n: i64) -> Fq {
        let p = self.inner.p as i64;
        Fq(n.rem_euclid(p) as u64)
    }
    fn div_exact(&self, a: &Fq, b: &Fq) -> Option<Fq> {
        self.div(a, b)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }
    fn pow(&self, a: &Fq, e: u64) -> Fq {
        if let Some(t) = &self.inner.tables {
            if a.0 == 0 {
                return if e == 0 { Fq(1) } else { Fq(0) };
            }
            let n = self.inner.order - 1;
            let l = t.log[a.0 as usize] as u128 * e as u128 % n as u128;
            return Fq(t.exp[l as usize] as u64);
        }
        if self.inner.k == 1 {
            return Fq(pow_mod(a.0, e, self.inner.p));
        }
        self.pow_slow(*a, e)
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.inner.tables {
            let n = self.inner.order - 1;
            let l = t.log[a.0 as usize] as u64;
            return Some(Fq(t.exp[((n - l) % n) as usize] as u64));
        }
        Some(self.pow(a, self.inner.order - 2))
    }
    fn characteristic(&self) -> u64 {
        self.inner.p
    }
    fn from_bigint(&self, n: &BigInt) -> Fq {
        let p = BigInt::from(self.inner.p);
        let r = ((n % &p) + &p) % &p;
        Fq(r.to_u64().expect("reduced residue fits"))
    }
    fn format_elem(&self, a: &Fq) -> String {
        if a.0 < self.inner.p {
            return a.0.to_string();
        }
        let digits = self.decode(*a);
        let mut terms = Vec::new();
        for (i, d) in digits.iter().enumerate().rev() {
            if *d == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (i, *d) {
                (0, d) => d.to_string(),
                (_, 1) => mono,
                (_, d) => format!("{d}*{mono}"),
            });
        }
        terms.join(" + ")
    }
    fn pth_root(&self, a: &Fq) -> Fq {
        self.pow(a, self.inner.order / self.inner.p)
    }
    fn spec_string(&self) -> String {
        if self.inner.k == 1 {
            format!("Fp:{}", self.inner.p)
        } else {
            format!("Fp:{}^{}", self.inner.p, self.inner.k)
        }
    }
}

impl RootField for FiniteField {
    fn split(&self, f: &Poly<Fq>) -> Splitting<Fq> {
        let mut roots = Vec::new();
        let mut residual = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return Splitting { roots, residual };
        }
        for (g, m) in factor::factor_fq(self, f) {
            if g.degree() == Some(1) {
                let c0 = g.coeff(0);
                roots.push((self.neg(&c0), m));
            } else {
                residual.push((g, m));
            }
        }
        roots.sort();
        residual.sort();
        Splitting { roots, residual }
    }

    fn element_degree(&self, a: &Fq) -> u32 {
        let rel = self.degree() / self.base_degree();
        let mut b = *a;
        for m in 1..=rel {
            b = self.frobenius(&b);
            if b == *a {
                return m;
            }
        }
        rel
    }

    fn generator(&self) -> Option<Fq> {
        if self.inner.k > 1 {
            Some(Fq(self.inner.p))
        } else {
            None
        }
    }
}

/// An embedding F_{p^a} -> F_{p^b}, sending the generator `t` of the small
/// field to the smallest root of its modulus in the large one.
#[derive(Debug, Clone)]
pub struct Embedding {
    target: FiniteField,
    sub_p: u64,
    images: Vec<Fq>,
}

impl Embedding {
    pub fn apply(&self, sub: &FiniteField, a: Fq) -> Fq {
        debug_assert_eq!(sub.p(), self.sub_p);
        if self.images.len() == 1 {
            return a;
        }
        let digits = sub.decode(a);
        let mut acc = Fq(0);
        for (d, img) in digits.iter().zip(&self.images) {
            if *d != 0 {
                let term = self.target.mul(&Fq(*d), img);
                acc = self.target.add(&acc, &term);
            }
        }
        acc
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }
}
