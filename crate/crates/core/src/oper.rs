//! The trace operator `T_D f = tr(pi1^* f)` on k(x) and its matrices on
//! the pole-order filtration `B_{S,n}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use serde::Serialize;

use crate::corr::{Correspondence, Direction};
use crate::error::{Error, Result};
use crate::field::{Field, RootField};
use crate::graph::Explorer;
use crate::linalg::Matrix;
use crate::point::ProjectivePoint;
use crate::poly::{BiPoly, Poly};
use crate::ratfunc::{RationalFunction, RationalFunctions};

type Pt<F> = ProjectivePoint<<F as crate::field::Ring>::Elem>;
type Rf<F> = RationalFunction<<F as crate::field::Ring>::Elem>;

/// A component as a monic polynomial in x over k(y).
fn monic_in_x<F: Field>(
    field: &F,
    ky: &RationalFunctions<F>,
    g: &BiPoly<F::Elem>,
) -> Poly<Rf<F>> {
    let p: Poly<Rf<F>> = g
        .to_x_major()
        .map(|c| RationalFunction::from_poly(field, c.clone()));
    p.monic(ky)
}

fn lift_constants<F: Field>(field: &F, p: &Poly<F::Elem>) -> Poly<Rf<F>> {
    p.map(|c| RationalFunction::constant(field, c.clone()))
}

/// `T_D f`, written again as a function of x.
pub fn td_apply<F: RootField>(c: &Correspondence<F>, f: &Rf<F>) -> Result<Rf<F>> {
    let field = c.field();
    let ky = RationalFunctions::new(field.clone(), "y");
    let mut total = RationalFunction::default();
    for (g, m) in c.components() {
        let fm = monic_in_x(field, &ky, g);
        let n = fm.degree().expect("component has positive x-degree");
        let num = lift_constants(field, f.num()).rem(&ky, &fm);
        let den = lift_constants(field, &f.den(field)).rem(&ky, &fm);
        let dinv = den
            .inv_mod(&ky, &fm)
            .ok_or_else(|| Error::TraceUndefined(format!("denominator vanishes on {}", g.format(field))))?;
        let mut r = num.mul_mod(&ky, &dinv, &fm);
        let mut tr = RationalFunction::default();
        for j in 0..n {
            tr = tr.add(field, &r.coeff(j));
            r = r.shift(1).rem(&ky, &fm);
        }
        let w = field.from_i64(*m as i64);
        total = total.add(field, &tr.scale(field, &w));
    }
    Ok(total)
}

/// `T_D(x^i)` for `i = 0..=n` by Newton's identities on the x-coefficients.
pub fn td_power_sums<F: RootField>(c: &Correspondence<F>, n: usize) -> Vec<Rf<F>> {
    let field = c.field();
    let ky = RationalFunctions::new(field.clone(), "y");
    let mut total = vec![RationalFunction::default(); n + 1];
    for (g, m) in c.components() {
        let fm = monic_in_x(field, &ky, g);
        let d = fm.degree().unwrap();
        // e_k = (-1)^k a_{d-k}.
        let e: Vec<Rf<F>> = (0..=d)
            .map(|k| {
                let a = fm.coeff(d - k);
                if k % 2 == 1 {
                    a.neg(field)
                } else {
                    a
                }
            })
            .collect();
        let mut p: Vec<Rf<F>> = vec![RationalFunction::constant(field, field.from_i64(d as i64))];
        for k in 1..=n {
            let mut acc = RationalFunction::default();
            for i in 1..k.min(d + 1) {
                let t = e[i].mul(field, &p[k - i]);
                acc = if i % 2 == 1 { acc.add(field, &t) } else { acc.sub(field, &t) };
            }
            if k <= d {
                let t = e[k].scale(field, &field.from_i64(k as i64));
                acc = if k % 2 == 1 { acc.add(field, &t) } else { acc.sub(field, &t) };
            }
            p.push(acc);
        }
        let w = field.from_i64(*m as i64);
        for (t, v) in total.iter_mut().zip(p) {
            *t = t.add(field, &v.scale(field, &w));
        }
    }
    total
}

/// Basis of `B_{S,n}`: 1, then for each `j = 1..=n` and each `s` in S
/// (sorted) either `x^j` for infinity or `(x - s)^-j`. Each `B_{S,m}` with
/// `m <= n` is a prefix.
pub fn filtration_basis<F: Field>(field: &F, set: &[Pt<F>], n: usize) -> Vec<Rf<F>> {
    let mut out = vec![RationalFunction::constant(field, field.one())];
    for j in 1..=n {
        for s in set {
            out.push(basis_element(field, s, j));
        }
    }
    out
}

fn basis_element<F: Field>(field: &F, s: &Pt<F>, j: usize) -> Rf<F> {
    match s {
        ProjectivePoint::Infinity => RationalFunction::from_poly(field, Poly::monomial(field.one(), j)),
        ProjectivePoint::Finite(a) => {
            let lin = Poly::new(vec![field.neg(a), field.one()]);
            RationalFunction::new(field, Poly::constant(field.one()), lin.pow(field, j as u64))
                .expect("nonzero denominator")
        }
    }
}

/// Coordinates of `g` in the basis of `B_{S,n}`, or a description of the
/// first pole that does not fit.
pub fn expand_in_basis<F: RootField>(
    field: &F,
    set: &[Pt<F>],
    n: usize,
    g: &Rf<F>,
) -> std::result::Result<Vec<F::Elem>, String> {
    let idx = |j: usize, si: usize| 1 + (j - 1) * set.len() + si;
    let mut coords = vec![field.zero(); 1 + n * set.len()];
    let mut rest = g.clone();
    for (si, s) in set.iter().enumerate() {
        let ProjectivePoint::Finite(a) = s else { continue };
        while let Some(ord) = rest.ord_at(field, s).filter(|&o| o < 0) {
            let k = (-ord) as usize;
            if k > n {
                return Err(format!("{} of order {k}", s.format(field)));
            }
            let lin = Poly::new(vec![field.neg(a), field.one()]);
            let (cofactor, _) = rest.den(field).div_rem(field, &lin.pow(field, k as u64));
            let c = field
                .div(&rest.num().eval(field, a), &cofactor.eval(field, a))
                .expect("cofactor is a unit at s");
            coords[idx(k, si)] = c.clone();
            rest = rest.sub(field, &basis_element(field, s, k).scale(field, &c));
        }
    }
    if !rest.is_polynomial() {
        let den = rest.den(field);
        let pole = match field.split(&den).roots.first() {
            Some((r, _)) => ProjectivePoint::Finite(r.clone()).format(field),
            None => format!("root of {}", den.format(field, "x")),
        };
        return Err(pole);
    }
    let p = rest.num();
    let dn = p.degree().unwrap_or(0);
    if dn > 0 {
        let inf = set.iter().position(|s| s.is_infinity());
        match inf {
            Some(si) if dn <= n => {
                for j in 1..=dn {
                    coords[idx(j, si)] = p.coeff(j);
                }
            }
            _ => return Err(format!("[1:0] of order {dn}")),
        }
    }
    coords[0] = p.coeff(0);
    Ok(coords)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationOperator<E> {
    pub set: Vec<ProjectivePoint<E>>,
    pub n: usize,
    pub basis: Vec<RationalFunction<E>>,
    /// Column j holds the coordinates of `T_D(basis[j])`.
    pub matrix: Matrix<E>,
    pub min_poly: Poly<E>,
    pub char_poly: Poly<E>,
}

impl<E> FiltrationOperator<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    /// The matrix restricted to `B_{S,m}`.
    pub fn level(&self, m: usize) -> Matrix<E> {
        let k = 1 + m.min(self.n) * self.set.len();
        Matrix::from_rows(
            (0..k)
                .map(|i| self.matrix.row_slice(i)[..k].to_vec())
                .collect(),
        )
    }
}

fn check_filtration_set<F: RootField>(c: &Correspondence<F>, set: &[Pt<F>]) -> Result<Vec<Pt<F>>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let field = c.field();
    let mut s = set.to_vec();
    s.sort();
    s.dedup();
    let members: BTreeSet<&Pt<F>> = s.iter().collect();
    let mut ex = Explorer::new(c);
    for v in &s {
        for fib in ex.fibers(Direction::Forward, v) {
            if !fib.residual.is_empty() {
                return Err(Error::NotForwardComplete(format!(
                    "a point over an extension above {}",
                    v.format(field)
                )));
            }
            if let Some((w, _)) = fib.points.iter().find(|(w, _)| !members.contains(w)) {
                return Err(Error::NotForwardComplete(w.format(field)));
            }
        }
    }
    if let Some(e) = ex.edges_within(&s).iter().find(|e| !e.is_ram_increasing()) {
        return Err(Error::NotRamificationIncreasing(format!(
            "{} -> {}",
            e.source.format(field),
            e.target.format(field)
        )));
    }
    Ok(s)
}

/// Exact matrix of `T_D` on `B_{S,n}`.
pub fn td_matrix<F: RootField>(
    c: &Correspondence<F>,
    set: &[Pt<F>],
    n: usize,
) -> Result<FiltrationOperator<F::Elem>> {
    let field = c.field();
    let set = check_filtration_set(c, set)?;
    let basis = filtration_basis(field, &set, n);
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let img = td_apply(c, b)?;
        cols.push(expand_in_basis(field, &set, n, &img).map_err(Error::StabilityViolation)?);
    }
    let matrix = Matrix::from_cols(cols);
    Ok(FiltrationOperator {
        min_poly: matrix.min_poly(field),
        char_poly: matrix.char_poly(field),
        set,
        n,
        basis,
        matrix,
    })
}

pub fn td_min_poly<F: RootField>(c: &Correspondence<F>, set: &[Pt<F>], n: usize) -> Result<Poly<F::Elem>> {
    Ok(td_matrix(c, set, n)?.min_poly)
}

/// Order of a degree-one morphism, if it is at most `max`.
pub fn automorphism_order<F: RootField>(c: &Correspondence<F>, max: u64) -> Option<u64> {
    let m = c.morphism()?;
    if m.map.degree() != 1 {
        return None;
    }
    let field = c.field();
    let id = RationalFunction::x(field);
    let mut g = m.map.clone();
    for k in 1..=max {
        if g == id {
            return Some(k);
        }
        g = m.map.compose(field, &g);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnihilatorStatus<E> {
    CertifiedAnnihilated(Poly<E>),
    StabilizedCandidate { q: Poly<E>, from: usize, to: usize },
    /// No polynomial of degree below this annihilates `T_D`.
    NoAnnihilatorUpToDegree(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorVerdict<E> {
    pub status: AnnihilatorStatus<E>,
    /// Minimal polynomials of levels `1..=n_max`.
    pub levels: Vec<Poly<E>>,
    pub evidence: Vec<String>,
}

pub const DEFAULT_BUFFER: usize = 3;
const MAX_AUTOMORPHISM_ORDER: u64 = 1024;

pub fn lin_finitary_test<F: RootField>(
    c: &Correspondence<F>,
    set: &[Pt<F>],
    n_max: usize,
    buffer: usize,
) -> Result<AnnihilatorVerdict<F::Elem>> {
    let field = c.field();
    let op = td_matrix(c, set, n_max)?;
    let levels: Vec<Poly<F::Elem>> = (1..=n_max).map(|m| op.level(m).min_poly(field)).collect();
    let mut evidence: Vec<String> = levels
        .iter()
        .enumerate()
        .map(|(i, q)| format!("n={}: {}", i + 1, q.format(field, "X")))
        .collect();
    if let Some(m) = automorphism_order(c, MAX_AUTOMORPHISM_ORDER) {
        evidence.push(format!("f has order {m}: f^{m} = x verified by composition"));
        let q = Poly::monomial(field.one(), m as usize).sub(field, &Poly::constant(field.one()));
        return Ok(AnnihilatorVerdict {
            status: AnnihilatorStatus::CertifiedAnnihilated(q),
            levels,
            evidence,
        });
    }
    // Nilpotent chains such as x^(2^m) -> ... -> x only lengthen when the
    // level doubles, so the window covers the upper half of the levels.
    let window = buffer.max(1).max(n_max.div_ceil(2));
    let tail = &levels[levels.len().saturating_sub(window)..];
    let status = if levels.len() >= window && tail.iter().all(|q| *q == tail[0]) {
        AnnihilatorStatus::StabilizedCandidate {
            q: tail[0].clone(),
            from: n_max + 1 - window,
            to: n_max,
        }
    } else {
        AnnihilatorStatus::NoAnnihilatorUpToDegree(levels.last().map_or(0, |q| q.degree().unwrap_or(0)))
    };
    Ok(AnnihilatorVerdict {
        status,
        levels,
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QtdOutcome<E> {
    Holds,
    FalsifiedAt(ProjectivePoint<E>, ProjectivePoint<E>),
}

/// Check `sum a_i np(x, x', i) = 0` inside a truncated set. Only sources
/// whose forward paths of length `deg Q` stay in the set are checked, and
/// only targets within directed distance `radius`. Off-diagonal witnesses
/// are preferred.
pub fn qtd_check<F: RootField>(
    c: &Correspondence<F>,
    q: &Poly<F::Elem>,
    set: &[Pt<F>],
    radius: usize,
) -> Result<QtdOutcome<F::Elem>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = c.field();
    let mut vs = set.to_vec();
    vs.sort();
    vs.dedup();
    let index: BTreeMap<Pt<F>, usize> = vs.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut ex = Explorer::new(c);
    let edges = ex.edges_within(&vs);
    let k = vs.len();
    let mut out: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); k];
    for e in &edges {
        out[index[&e.source]].push((index[&e.target], field.from_i64(e.mult as i64)));
    }
    let deg = q.degree().unwrap();
    let mut diagonal = None;
    for x in 0..k {
        // Forward ball of radius deg Q must be complete inside the set.
        let mut ok = true;
        let mut dist = vec![usize::MAX; k];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            if dist[v] >= deg.max(radius) {
                continue;
            }
            for fib in ex.fibers(Direction::Forward, &vs[v]) {
                if !fib.residual.is_empty() || fib.points.iter().any(|(w, _)| !index.contains_key(w)) {
                    if dist[v] < deg {
                        ok = false;
                    }
                }
            }
            for &(w, _) in &out[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !ok {
            continue;
        }
        let mut v = vec![field.zero(); k];
        v[x] = field.one();
        let mut acc = vec![field.zero(); k];
        for i in 0..=deg {
            let a = q.coeff(i);
            for (s, t) in acc.iter_mut().zip(&v) {
                *s = field.add(s, &field.mul(&a, t));
            }
            let mut next = vec![field.zero(); k];
            for (src, row) in out.iter().enumerate() {
                for (dst, m) in row {
                    next[*dst] = field.add(&next[*dst], &field.mul(m, &v[src]));
                }
            }
            v = next;
        }
        for y in 0..k {
            if dist[y] > radius || field.is_zero(&acc[y]) {
                continue;
            }
            if y != x {
                return Ok(QtdOutcome::FalsifiedAt(vs[x].clone(), vs[y].clone()));
            }
            diagonal.get_or_insert(x);
        }
    }
    Ok(match diagonal {
        Some(x) => QtdOutcome::FalsifiedAt(vs[x].clone(), vs[x].clone()),
        None => QtdOutcome::Holds,
    })
}

/// The space `V_{S,S'',n}` against a third set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThirdSetCheck<E> {
    pub n_second: i64,
    pub basis: Vec<RationalFunction<E>>,
    /// `V_{S,S',n}` and `V_{S,S'',n}` are disjoint above this level.
    pub threshold: BigRational,
    pub above_threshold: bool,
    pub intersection_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSplitReport<E> {
    pub n: usize,
    pub n_prime: i64,
    pub basis: Vec<RationalFunction<E>>,
    pub dim: usize,
    /// `B_{S,n-1} + V = B_{S,n}`.
    pub complement_ok: bool,
    pub dim_bound: usize,
    pub dim_bound_ok: bool,
    pub third: Option<ThirdSetCheck<E>>,
}

/// The integer `n'` with `|S'| - 2 >= (n-1)|S| - n'|S'| > -2`.
pub fn n_prime(s: usize, s1: usize, n: usize) -> i64 {
    let (s, s1, n) = (s as i64, s1 as i64, n as i64);
    let lo = (n - 1) * s - s1 + 2;
    lo.div_euclid(s1) + i64::from(lo.rem_euclid(s1) != 0)
}

/// `B_{S,n}` as `{P / den : deg P <= top}` with `den = prod (x - s)^n`
/// over the finite points of S.
struct PoleSpace<E> {
    den: Poly<E>,
    top: usize,
}

fn pole_space<F: RootField>(field: &F, set: &[Pt<F>], n: usize) -> PoleSpace<F::Elem> {
    let den = vanishing(field, set, n);
    let top = den.degree().unwrap_or(0) + if set.contains(&ProjectivePoint::Infinity) { n } else { 0 };
    PoleSpace { den, top }
}

/// `prod (x - a)^k` over the finite points of `set`.
fn vanishing<F: RootField>(field: &F, set: &[Pt<F>], k: usize) -> Poly<F::Elem> {
    set.iter()
        .filter_map(|s| s.finite())
        .fold(Poly::constant(field.one()), |acc, a| {
            acc.mul(field, &Poly::new(vec![field.neg(a), field.one()]).pow(field, k as u64))
        })
}

/// Numerators of `V_{S,S',n}`: multiples of the vanishing polynomial of S'
/// to order `order`, with the degree cut at infinity.
fn v_space<F: RootField>(field: &F, space: &PoleSpace<F::Elem>, s1: &[Pt<F>], order: i64) -> Vec<Poly<F::Elem>> {
    let k = order.max(0) as usize;
    let w = vanishing(field, s1, k);
    let cap = space.top as i64 - if s1.contains(&ProjectivePoint::Infinity) { k as i64 } else { 0 };
    let free = cap - w.degree().unwrap_or(0) as i64;
    (0..=free).map(|i| w.shift(i as usize)).collect()
}

impl<E> PoleSpace<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    fn quotient<F: Field<Elem = E>>(&self, field: &F, num: &Poly<E>) -> RationalFunction<E> {
        RationalFunction::new(field, num.clone(), self.den.clone()).expect("nonzero denominator")
    }
}

fn coeff_rows<F: Field>(field: &F, polys: &[Poly<F::Elem>], len: usize) -> Vec<Vec<F::Elem>> {
    polys
        .iter()
        .map(|p| (0..len).map(|i| p.coeffs().get(i).cloned().unwrap_or_else(|| field.zero())).collect())
        .collect()
}

#[cfg(test)]
fn combine<F: Field>(field: &F, basis: &[Rf<F>], v: &[F::Elem]) -> Rf<F> {
    basis
        .iter()
        .zip(v)
        .fold(RationalFunction::default(), |acc, (b, c)| acc.add(field, &b.scale(field, c)))
}

fn sorted_set<F: RootField>(s: &[Pt<F>]) -> Result<Vec<Pt<F>>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut v = s.to_vec();
    v.sort();
    v.dedup();
    Ok(v)
}

/// Riemann–Roch subspaces `V_{S,S',n}` on the projective line.
pub fn almost_split<F: RootField>(
    field: &F,
    s: &[Pt<F>],
    s1: &[Pt<F>],
    s2: Option<&[Pt<F>]>,
    n: usize,
) -> Result<AlmostSplitReport<F::Elem>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n".into(), "must be at least 1".into()));
    }
    let s = sorted_set::<F>(s)?;
    let s1 = sorted_set::<F>(s1)?;
    let s2 = s2.map(sorted_set::<F>).transpose()?;
    let disjoint = |a: &[Pt<F>], b: &[Pt<F>]| a.iter().all(|p| !b.contains(p));
    if !disjoint(&s, &s1) || s2.as_ref().is_some_and(|t| !disjoint(&s, t) || !disjoint(&s1, t)) {
        return Err(Error::NotDisjoint);
    }
    let space = pole_space(field, &s, n);
    let np = n_prime(s.len(), s1.len(), n);
    let v = v_space(field, &space, &s1, np);
    // B_{S,n-1} is the kernel of the top principal parts: P(s) at finite s
    // and the coefficient of x^top at infinity.
    let parts: Vec<Vec<F::Elem>> = v
        .iter()
        .map(|p| {
            s.iter()
                .map(|pt| match pt {
                    ProjectivePoint::Finite(a) => p.eval(field, a),
                    ProjectivePoint::Infinity => p.coeffs().get(space.top).cloned().unwrap_or_else(|| field.zero()),
                })
                .collect()
        })
        .collect();
    let complement_ok = !parts.is_empty() && Matrix::from_rows(parts).rank(field) == s.len();
    let dim_bound = s.len() + s1.len() - 1;
    let third = s2.map(|t| {
        let n2 = n_prime(s.len(), t.len(), n);
        let v2 = v_space(field, &space, &t, n2);
        let mut rows = coeff_rows(field, &v, space.top + 1);
        rows.extend(coeff_rows(field, &v2, space.top + 1));
        let intersection_trivial =
            rows.is_empty() || Matrix::from_rows(rows).rank(field) == v.len() + v2.len();
        // Degree of n S - n' S' - n'' S'' is negative beyond this level.
        let threshold = BigRational::new(
            (2 * s.len() as i64 + s1.len() as i64 + t.len() as i64 - 4).into(),
            (s.len() as i64).into(),
        );
        ThirdSetCheck {
            n_second: n2,
            basis: v2.iter().map(|w| space.quotient(field, w)).collect(),
            above_threshold: BigRational::from_integer((n as i64).into()) > threshold,
            threshold,
            intersection_trivial,
        }
    });
    Ok(AlmostSplitReport {
        n,
        n_prime: np,
        dim: v.len(),
        dim_bound_ok: v.len() <= dim_bound,
        dim_bound,
        basis: v.iter().map(|w| space.quotient(field, w)).collect(),
        complement_ok,
        third,
    })
}

/// Serializable view of an annihilator status.
#[derive(Clone, Debug, Serialize)]
pub struct StatusView {
    pub status: &'static str,
    pub polynomial: Option<String>,
    pub degree: Option<usize>,
    pub range: Option<(usize, usize)>,
}

impl<E> AnnihilatorStatus<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    pub fn view<F: Field<Elem = E>>(&self, field: &F) -> StatusView {
        match self {
            AnnihilatorStatus::CertifiedAnnihilated(q) => StatusView {
                status: "certified_annihilated",
                polynomial: Some(q.format(field, "X")),
                degree: q.degree(),
                range: None,
            },
            AnnihilatorStatus::StabilizedCandidate { q, from, to } => StatusView {
                status: "stabilized_candidate",
                polynomial: Some(q.format(field, "X")),
                degree: q.degree(),
                range: Some((*from, *to)),
            },
            AnnihilatorStatus::NoAnnihilatorUpToDegree(d) => StatusView {
                status: "no_annihilator_up_to_degree",
                polynomial: None,
                degree: Some(*d),
                range: None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_rational, parse_univariate};
    use crate::field::{FiniteField, Rationals, Ring};

    fn rf(s: &str) -> RationalFunction<num_rational::BigRational> {
        parse_rational(&Rationals, s).unwrap()
    }

    fn show(f: &RationalFunction<num_rational::BigRational>) -> String {
        f.format(&Rationals, "x")
    }

    #[test]
    fn traces_of_squaring() {
        let c = Correspondence::parse_map(&Rationals, "x^2").unwrap();
        assert_eq!(show(&td_apply(&c, &rf("1")).unwrap()), "2");
        assert_eq!(show(&td_apply(&c, &rf("x^4")).unwrap()), "2*x^2");
        assert_eq!(show(&td_apply(&c.transpose(), &rf("x")).unwrap()), "x^2");
        let p: Vec<String> = td_power_sums(&c, 2).iter().map(show).collect();
        assert_eq!(p, vec!["2", "0", "2*x"]);
        let d = Correspondence::parse_map(&Rationals, "2*x").unwrap();
        assert_eq!(show(&td_power_sums(&d, 1)[1]), "1/2*x");
    }

    #[test]
    fn trace_of_a_pole() {
        let c = Correspondence::parse_map(&Rationals, "x^2").unwrap();
        assert_eq!(show(&td_apply(&c, &rf("1/(x - 1)")).unwrap()), "2/(x - 1)");
    }

    #[test]
    fn matrices_and_min_polys() {
        let q = Rationals;
        let inf = [ProjectivePoint::Infinity];
        let c = Correspondence::parse_map(&q, "x^2").unwrap();
        let op = td_matrix(&c, &inf, 2).unwrap();
        let imgs: Vec<String> = (0..3)
            .map(|j| show(&combine(&q, &op.basis, &op.matrix.col(j))))
            .collect();
        assert_eq!(imgs, vec!["2", "0", "2*x"]);
        assert_eq!(op.min_poly.format(&q, "X"), "X^3 - 2*X^2");
        let neg = Correspondence::parse_map(&q, "-x").unwrap();
        assert_eq!(td_min_poly(&neg, &inf, 2).unwrap().format(&q, "X"), "X^2 - 1");
        let dbl = Correspondence::parse_map(&q, "2*x").unwrap();
        let expected = parse_univariate(&q, "(x - 1)*(x - 1/2)*(x - 1/4)", 'x').unwrap();
        assert_eq!(td_min_poly(&dbl, &inf, 2).unwrap(), expected);
        let one = [ProjectivePoint::Finite(q.from_i64(2))];
        assert!(matches!(td_matrix(&c, &one, 1), Err(Error::NotForwardComplete(_))));
        assert!(matches!(
            td_matrix(&c.transpose(), &inf, 1),
            Err(Error::NotRamificationIncreasing(_))
        ));
    }

    #[test]
    fn lin_finitary_verdicts() {
        let q = Rationals;
        let inf = [ProjectivePoint::Infinity];
        let neg = Correspondence::parse_map(&q, "-x").unwrap();
        let v = lin_finitary_test(&neg, &inf, 4, DEFAULT_BUFFER).unwrap();
        assert_eq!(
            v.status,
            AnnihilatorStatus::CertifiedAnnihilated(parse_univariate(&q, "x^2 - 1", 'x').unwrap())
        );
        let sq = Correspondence::parse_map(&q, "x^2").unwrap();
        let v = lin_finitary_test(&sq, &inf, 12, DEFAULT_BUFFER).unwrap();
        assert!(matches!(v.status, AnnihilatorStatus::NoAnnihilatorUpToDegree(_)));
        let dbl = Correspondence::parse_map(&q, "2*x").unwrap();
        let v = lin_finitary_test(&dbl, &inf, 12, DEFAULT_BUFFER).unwrap();
        assert_eq!(v.status, AnnihilatorStatus::NoAnnihilatorUpToDegree(13));
    }

    #[test]
    fn qtd_examples() {
        let q = Rationals;
        let pt = |n: i64| ProjectivePoint::Finite(q.from_i64(n));
        let dbl = Correspondence::parse_map(&q, "2*x").unwrap();
        let x1 = parse_univariate(&q, "x - 1", 'x').unwrap();
        assert_eq!(
            qtd_check(&dbl, &x1, &[pt(1), pt(2), pt(4)], 2).unwrap(),
            QtdOutcome::FalsifiedAt(pt(1), pt(2))
        );
        let neg = Correspondence::parse_map(&q, "-x").unwrap();
        let x2 = parse_univariate(&q, "x^2 - 1", 'x').unwrap();
        assert_eq!(qtd_check(&neg, &x2, &[pt(1), pt(-1)], 2).unwrap(), QtdOutcome::Holds);
        assert_eq!(qtd_check(&neg, &Poly::zero(), &[pt(1)], 2), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn almost_split_examples() {
        let q = Rationals;
        let inf = [ProjectivePoint::Infinity];
        let zero = [ProjectivePoint::Finite(q.zero())];
        let one = [ProjectivePoint::Finite(q.one())];
        let r = almost_split(&q, &inf, &zero, Some(&one), 3).unwrap();
        assert_eq!(r.n_prime, 3);
        assert_eq!(r.basis.iter().map(show).collect::<Vec<_>>(), vec!["x^3"]);
        assert!(r.complement_ok && r.dim_bound_ok && r.dim == 1);
        let t = r.third.unwrap();
        assert_eq!(t.basis.iter().map(show).collect::<Vec<_>>(), vec!["x^3 - 3*x^2 + 3*x - 1"]);
        assert!(t.intersection_trivial);
        assert_eq!(almost_split(&q, &inf, &inf, None, 2), Err(Error::NotDisjoint));
    }

    #[test]
    fn finite_field_traces() {
        let f7 = FiniteField::prime(7).unwrap();
        let c = Correspondence::parse_poly(&f7, "x^2*y + x + y^2 + 3").unwrap();
        let sums = td_power_sums(&c, 4);
        for (i, s) in sums.iter().enumerate() {
            let xi = RationalFunction::from_poly(&f7, Poly::monomial(f7.one(), i));
            assert_eq!(td_apply(&c, &xi).unwrap(), *s);
        }
    }
}
