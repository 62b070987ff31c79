//! Global bounds and verdicts: the unbalanced size bound, core maps,
//! finitary verdicts, Pakovich's bound and naive heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals, Ring, RootField};
use crate::graph::{complete_set_search, Budgets};
use crate::linalg::Matrix;
use crate::oper::{automorphism_order, lin_finitary_test, AnnihilatorStatus, DEFAULT_BUFFER};
use crate::point::ProjectivePoint;
use crate::poly::{nested, BiPoly, Poly};
use crate::ratfunc::{RationalFunction, RationalFunctions};

type Pt<F> = ProjectivePoint<<F as crate::field::Ring>::Elem>;
type Rf<F> = RationalFunction<<F as crate::field::Ring>::Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnbalancedBound {
    pub bound: BigRational,
    pub genus: u64,
    /// The bound concerns backward-complete sets of the transpose.
    pub transposed: bool,
}

/// Arithmetic genus bound `sum m (deg_x - 1)(deg_y - 1)` of the components.
pub fn genus_upper<F: RootField>(c: &Correspondence<F>) -> u64 {
    c.components()
        .iter()
        .map(|(g, m)| {
            let (dx, dy) = g.bidegree();
            *m as u64 * (dx.saturating_sub(1) as u64) * (dy.saturating_sub(1) as u64)
        })
        .sum()
}

/// Size bound `2(g_D + d2 - 1)/(d2 - d1)` for finite backward-complete sets,
/// oriented so that `d1 < d2`.
pub fn unbalanced_bound<F: RootField>(c: &Correspondence<F>, genus: Option<u64>) -> Result<UnbalancedBound> {
    let (d1, d2) = c.bidegree();
    if d1 == d2 {
        return Err(Error::Balanced);
    }
    let (lo, hi, transposed) = if d1 < d2 { (d1, d2, false) } else { (d2, d1, true) };
    let g = genus.unwrap_or_else(|| genus_upper(c));
    let bound = BigRational::new(
        BigInt::from(2 * (g + hi as u64 - 1)),
        BigInt::from(hi - lo),
    );
    Ok(UnbalancedBound {
        bound,
        genus: g,
        transposed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreMode<E> {
    Polynomial,
    PoleSupport(Vec<ProjectivePoint<E>>),
    Twisted,
}

/// A map with `h(pi1) = lambda * h(pi2)` on every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreMap<E> {
    pub h: RationalFunction<E>,
    pub lambda: E,
}

fn core_basis<F: Field>(field: &F, mode: &CoreMode<F::Elem>, m: usize) -> Vec<Rf<F>> {
    let mono = |j: usize| RationalFunction::from_poly(field, Poly::monomial(field.one(), j));
    match mode {
        CoreMode::Polynomial | CoreMode::Twisted => (1..=m).map(mono).collect(),
        CoreMode::PoleSupport(ps) => {
            let mut pts = ps.clone();
            pts.sort();
            pts.dedup();
            let mut out = Vec::new();
            for j in 1..=m {
                for p in &pts {
                    out.push(match p {
                        ProjectivePoint::Infinity => mono(j),
                        ProjectivePoint::Finite(s) => {
                            let lin = Poly::new(vec![field.neg(s), field.one()]);
                            RationalFunction::new(field, Poly::constant(field.one()), lin.pow(field, j as u64))
                                .expect("nonzero")
                        }
                    });
                }
            }
            out
        }
    }
}

/// The linear conditions `sum c_b (b(x) - lambda b(y)) = 0 mod G` split as
/// `A c = lambda B c` over the field.
fn core_system<F: RootField>(
    c: &Correspondence<F>,
    basis: &[Rf<F>],
) -> (Matrix<F::Elem>, Matrix<F::Elem>) {
    let field = c.field();
    let ky = RationalFunctions::new(field.clone(), "y");
    let (mut arows, mut brows) = (Vec::new(), Vec::new());
    for (g, _) in c.components() {
        let fm: Poly<Rf<F>> = g
            .to_x_major()
            .map(|p| RationalFunction::from_poly(field, p.clone()))
            .monic(&ky);
        let n = fm.degree().unwrap();
        let lift = |p: &Poly<F::Elem>| p.map(|a| RationalFunction::constant(field, a.clone())).rem(&ky, &fm);
        let residues: Vec<Option<Poly<Rf<F>>>> = basis
            .iter()
            .map(|b| {
                let inv = lift(&b.den(field)).inv_mod(&ky, &fm)?;
                Some(lift(b.num()).mul_mod(&ky, &inv, &fm))
            })
            .collect();
        for j in 0..n {
            let a: Vec<Rf<F>> = residues
                .iter()
                .map(|r| r.as_ref().map_or(RationalFunction::default(), |r| r.coeff(j)))
                .collect();
            let bcol: Vec<Rf<F>> = basis
                .iter()
                .zip(&residues)
                .map(|(b, r)| if j == 0 && r.is_some() { b.clone() } else { RationalFunction::default() })
                .collect();
            let l = a.iter().chain(&bcol).fold(Poly::constant(field.one()), |acc, f| {
                let d = f.den(field);
                let g = acc.gcd(field, &d);
                acc.mul(field, &d).div_rem(field, &g).0
            });
            let cleared = |f: &Rf<F>| {
                let (q, _) = f.num().mul(field, &l).div_rem(field, &f.den(field));
                q
            };
            let ap: Vec<Poly<F::Elem>> = a.iter().map(cleared).collect();
            let bp: Vec<Poly<F::Elem>> = bcol.iter().map(cleared).collect();
            let top = ap.iter().chain(&bp).filter_map(|p| p.degree()).max();
            for k in 0..=top.unwrap_or(0) {
                if top.is_none() {
                    break;
                }
                arows.push(ap.iter().map(|p| p.coeff(k)).collect::<Vec<_>>());
                brows.push(bp.iter().map(|p| p.coeff(k)).collect::<Vec<_>>());
            }
        }
    }
    let width = basis.len();
    let fix = |rows: Vec<Vec<F::Elem>>| {
        if rows.is_empty() {
            Matrix::zeros(0, width)
        } else {
            Matrix::from_rows(rows)
        }
    };
    (fix(arows), fix(brows))
}

/// The kernel vector whose last nonzero coordinate comes first, scaled so
/// that coordinate is 1.
fn lowest_vector<F: Field>(field: &F, kernel: &[Vec<F::Elem>]) -> Option<Vec<F::Elem>> {
    let first = kernel.first()?;
    let w = first.len();
    let rev: Vec<Vec<F::Elem>> = kernel
        .iter()
        .map(|v| v.iter().rev().cloned().collect())
        .collect();
    let (r, pivots) = Matrix::from_rows(rev).rref(field);
    let last = pivots.len().checked_sub(1)?;
    let mut v: Vec<F::Elem> = r.row_slice(last).iter().rev().cloned().collect();
    let lead = v.iter().rev().find(|a| !field.is_zero(a))?.clone();
    let inv = field.inv(&lead)?;
    for a in v.iter_mut() {
        *a = field.mul(a, &inv);
    }
    debug_assert_eq!(v.len(), w);
    Some(v)
}

fn kernel_of<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    if m.rows() == 0 {
        return (0..m.cols())
            .map(|i| {
                let mut e = vec![field.zero(); m.cols()];
                e[i] = field.one();
                e
            })
            .collect();
    }
    m.kernel(field)
}

/// Exact check that `h(x) - lambda h(y)` vanishes on every component.
pub fn verify_core<F: RootField>(c: &Correspondence<F>, core: &CoreMap<F::Elem>) -> bool {
    let field = c.field();
    let (n, d) = (core.h.num().clone(), core.h.den(field));
    if core.h.as_constant().is_some() {
        return false;
    }
    let lhs = BiPoly::from_x_poly(&n).mul(field, &BiPoly::from_y_poly(&d));
    let rhs = BiPoly::from_y_poly(&n)
        .mul(field, &BiPoly::from_x_poly(&d))
        .scale(field, &core.lambda);
    let p = lhs.sub(field, &rhs);
    c.components()
        .iter()
        .all(|(g, _)| p.is_zero() || nested::div_exact(field, &p.to_y_major(), &g.to_y_major()).is_some())
}

fn combine<F: Field>(field: &F, basis: &[Rf<F>], v: &[F::Elem]) -> Rf<F> {
    basis
        .iter()
        .zip(v)
        .fold(RationalFunction::default(), |acc, (b, a)| acc.add(field, &b.scale(field, a)))
}

/// Row echelon form of `A - lambda B` over k[lambda]; returns the pivots.
fn pencil_pivots<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Vec<Poly<F::Elem>> {
    let mut rows: Vec<Vec<Poly<F::Elem>>> = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| Poly::new(vec![a.get(i, j).clone(), field.neg(b.get(i, j))]))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..a.cols() {
        loop {
            let best = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| rows[r][col].degree());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let (q, _) = rows[r][col].div_rem(field, &rows[top][col]);
                for j in col..a.cols() {
                    let t = q.mul(field, &rows[top][j]);
                    rows[r][j] = rows[r][j].sub(field, &t);
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            pivots.push(rows[top][col].clone());
            top += 1;
        }
    }
    pivots
}

/// Maps `h` with `h(x) = lambda h(y)` on every component, found by exact
/// linear algebra up to degree (or pole order) `m`. Untwisted modes return
/// at most one map, with `lambda = 1`; twisted mode returns one map for
/// every `lambda` that admits a polynomial of degree at most `m`, lowest
/// degree first.
pub fn core_search<F: RootField>(
    c: &Correspondence<F>,
    mode: &CoreMode<F::Elem>,
    m: usize,
) -> Vec<CoreMap<F::Elem>> {
    let field = c.field();
    let basis = core_basis(field, mode, m);
    if basis.is_empty() {
        return Vec::new();
    }
    let (a, b) = core_system(c, &basis);
    let lambdas: Vec<F::Elem> = match mode {
        CoreMode::Twisted => {
            let pivots = pencil_pivots(field, &a, &b);
            if pivots.len() < basis.len() {
                log::warn!("degenerate pencil in twisted core search");
                return Vec::new();
            }
            let det = pivots
                .iter()
                .fold(Poly::constant(field.one()), |acc, p| acc.mul(field, p));
            let mut roots: Vec<F::Elem> = field.split(&det).roots.into_iter().map(|(r, _)| r).collect();
            roots.sort();
            roots
        }
        _ => vec![field.one()],
    };
    let mut out = Vec::new();
    for lambda in lambdas {
        let pencil = a.add(field, &b.scale(field, &field.neg(&lambda)));
        let Some(v) = lowest_vector(field, &kernel_of(field, &pencil)) else {
            continue;
        };
        let core = CoreMap {
            h: combine(field, &basis, &v),
            lambda,
        };
        if verify_core(c, &core) {
            out.push(core);
        } else {
            log::warn!("core candidate failed exact verification");
        }
    }
    out.sort_by_key(|k| k.h.degree());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictBudgets {
    pub graph: Budgets,
    /// Degree bound for core searches.
    pub core_degree: usize,
    pub max_order: u64,
    /// Filtration levels for the linearly finitary probe.
    pub n_max: usize,
}

impl Default for VerdictBudgets {
    fn default() -> Self {
        VerdictBudgets {
            graph: Budgets::default(),
            core_degree: 6,
            max_order: 1024,
            n_max: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FinitaryStatus {
    CertifiedFinitary,
    CertifiedNonFinitary,
    EvidenceNonFinitary,
    EvidenceFinitary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitaryVerdict<E> {
    pub status: FinitaryStatus,
    pub core: Option<CoreMap<E>>,
    pub automorphism_order: Option<u64>,
    pub log: Vec<String>,
    pub budgets: VerdictBudgets,
}

/// Small seeds: points of height at most 2 over Q, the first rational
/// points over a finite field.
pub fn sample_seeds<F: RootField>(field: &F) -> Vec<Pt<F>> {
    let mut out: Vec<Pt<F>> = Vec::new();
    if field.characteristic() == 0 {
        for (a, b) in [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)] {
            let v = field.div(&field.from_i64(a), &field.from_i64(b)).unwrap();
            out.push(ProjectivePoint::Finite(v));
        }
    } else {
        let p = field.characteristic().min(16) as i64;
        out.extend((0..p).map(|i| ProjectivePoint::Finite(field.from_i64(i))));
    }
    out.push(ProjectivePoint::Infinity);
    out
}

pub fn finitary_verdict<F: RootField>(c: &Correspondence<F>, budgets: VerdictBudgets) -> FinitaryVerdict<F::Elem> {
    let field = c.field();
    let (d1, d2) = c.bidegree();
    let mut log = Vec::new();
    let verdict = |status, core, automorphism_order, log| FinitaryVerdict {
        status,
        core,
        automorphism_order,
        log,
        budgets,
    };
    if d1 != d2 {
        log.push(format!("unbalanced bidegree ({d1}, {d2}): degrees are additive under composition"));
        return verdict(FinitaryStatus::CertifiedNonFinitary, None, None, log);
    }
    let is_automorphism = c.morphism().is_some_and(|m| m.map.degree() == 1);
    if is_automorphism {
        match automorphism_order(c, budgets.max_order) {
            Some(k) => {
                log.push(format!("automorphism of order {k}"));
                return verdict(FinitaryStatus::CertifiedFinitary, None, Some(k), log);
            }
            None => log.push(format!("automorphism without finite order <= {}", budgets.max_order)),
        }
    }
    let mut modes = vec![CoreMode::Polynomial];
    modes.push(CoreMode::PoleSupport(vec![
        ProjectivePoint::Finite(field.zero()),
        ProjectivePoint::Infinity,
    ]));
    for mode in &modes {
        if let Some(core) = core_search(c, mode, budgets.core_degree).into_iter().next() {
            log.push(format!("core h = {}", core.h.format(field, "x")));
            return verdict(FinitaryStatus::CertifiedFinitary, Some(core), None, log);
        }
    }
    log.push(format!("no core up to degree {}", budgets.core_degree));
    let mut non_finitary = false;
    let mut certified_sets = Vec::new();
    for seed in sample_seeds(field) {
        let r = complete_set_search(c, &seed, budgets.graph);
        if r.is_certified() {
            certified_sets.push(r.vertices);
        } else {
            non_finitary = true;
            log.push(format!(
                "closure of {} exceeds budgets: {}",
                seed.format(field),
                r.reason.unwrap_or_default()
            ));
        }
    }
    if field.characteristic() == 0 {
        for s in &certified_sets {
            if let Ok(v) = lin_finitary_test(c, s, budgets.n_max, DEFAULT_BUFFER) {
                if let AnnihilatorStatus::NoAnnihilatorUpToDegree(d) = v.status {
                    non_finitary = true;
                    let names: Vec<String> = s.iter().map(|p| p.format(field)).collect();
                    log.push(format!(
                        "T_D on B_{{S,n}} with S = {{{}}} has no annihilator of degree < {d}",
                        names.join(", ")
                    ));
                }
                break;
            }
        }
    }
    let status = if non_finitary {
        FinitaryStatus::EvidenceNonFinitary
    } else {
        FinitaryStatus::EvidenceFinitary
    };
    verdict(status, None, None, log)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PakovichBound {
    pub bound: String,
    pub equality_possible: bool,
    pub hypotheses: Vec<&'static str>,
}

/// `3 + (2 g_D - 1)/d`.
pub fn pakovich_bound(genus: i64, degree: i64) -> Result<(BigRational, PakovichBound)> {
    if degree < 1 {
        return Err(Error::NonPositiveDegree);
    }
    if genus < 0 {
        return Err(Error::InvalidParameter("genus".into(), "must be non-negative".into()));
    }
    let b = BigRational::from_integer(3.into()) + BigRational::new((2 * genus - 1).into(), degree.into());
    let report = PakovichBound {
        bound: b.to_string(),
        equality_possible: genus == 0 && degree == 1,
        hypotheses: vec![
            "characteristic zero and bidegree (d, d)",
            "(i) {inf} is a complete equiramified set",
            "(ii) some lambda has ord_z(pi1 - lambda pi2) > ord_z(pi1) = ord_z(pi2) over inf",
            "(iii) D is not finitary",
        ],
    };
    Ok((b, report))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Height {
    pub a: BigInt,
    pub b: BigInt,
    pub log: f64,
}

fn ln_big(n: &BigInt) -> f64 {
    match n.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = n.bits();
            let shift = bits.saturating_sub(52);
            (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// `log max(|a|, |b|)` for the coprime coordinates `[a:b]`.
pub fn naive_height(p: &ProjectivePoint<BigRational>) -> Height {
    let (a, b) = match p {
        ProjectivePoint::Infinity => (BigInt::one(), BigInt::zero()),
        ProjectivePoint::Finite(r) => (r.numer().clone(), r.denom().clone()),
    };
    let m = a.abs().max(b.abs());
    Height {
        log: ln_big(&m),
        a,
        b,
    }
}

/// Points of P^1(Q) of naive height at most `bound`, sorted.
pub fn points_of_height(bound: u64) -> Vec<ProjectivePoint<BigRational>> {
    let q = Rationals;
    let mut out = vec![ProjectivePoint::Finite(q.zero()), ProjectivePoint::Infinity];
    for b in 1..=bound as i64 {
        for a in 1..=bound as i64 {
            if a.gcd(&b) == 1 {
                out.push(ProjectivePoint::Finite(BigRational::new(a.into(), b.into())));
                out.push(ProjectivePoint::Finite(BigRational::new((-a).into(), b.into())));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Ring};

    fn show(f: &RationalFunction<BigRational>) -> String {
        f.format(&Rationals, "x")
    }

    #[test]
    fn bounds() {
        let q = Rationals;
        let sq = Correspondence::parse_map(&q, "x^2").unwrap();
        assert_eq!(unbalanced_bound(&sq, None).unwrap().bound, BigRational::from_integer(2.into()));
        let cusp = Correspondence::parse_poly(&q, "x^2 - y^3").unwrap();
        let b = unbalanced_bound(&cusp, None).unwrap();
        assert_eq!((b.bound.to_string(), b.genus, b.transposed), ("8".into(), 2, true));
        let dbl = Correspondence::parse_map(&q, "2*x").unwrap();
        assert_eq!(unbalanced_bound(&dbl, None), Err(Error::Balanced));
        assert_eq!(pakovich_bound(0, 1).unwrap().0, BigRational::from_integer(2.into()));
        assert!(pakovich_bound(0, 1).unwrap().1.equality_possible);
        assert_eq!(pakovich_bound(2, 3).unwrap().0, BigRational::from_integer(4.into()));
        assert_eq!(pakovich_bound(0, 0), Err(Error::NonPositiveDegree));
    }

    #[test]
    fn cores() {
        let q = Rationals;
        let neg = Correspondence::parse_map(&q, "-x").unwrap();
        let h = core_search(&neg, &CoreMode::Polynomial, 2);
        assert_eq!(h.iter().map(|c| show(&c.h)).collect::<Vec<_>>(), vec!["x^2"]);
        let inv = Correspondence::parse_poly(&q, "x*y - 1").unwrap();
        let p = vec![ProjectivePoint::Finite(q.zero()), ProjectivePoint::Infinity];
        let h = core_search(&inv, &CoreMode::PoleSupport(p), 1);
        assert_eq!(show(&h[0].h), "(x^2 + 1)/x");
        let sq = Correspondence::parse_map(&q, "x^2").unwrap();
        assert!(core_search(&sq, &CoreMode::Polynomial, 6).is_empty());
        let dbl = Correspondence::parse_map(&q, "2*x").unwrap();
        let t = core_search(&dbl, &CoreMode::Twisted, 1);
        assert_eq!(t.len(), 1);
        assert_eq!((show(&t[0].h), q.format_elem(&t[0].lambda)), ("x".into(), "1/2".into()));
        let t = core_search(&dbl, &CoreMode::Twisted, 3);
        assert_eq!(t.len(), 3);
        assert!(core_search(&dbl, &CoreMode::Polynomial, 6).is_empty());
    }

    #[test]
    fn verdicts() {
        let q = Rationals;
        let sq = Correspondence::parse_map(&q, "x^2").unwrap();
        assert_eq!(finitary_verdict(&sq, VerdictBudgets::default()).status, FinitaryStatus::CertifiedNonFinitary);
        let neg = Correspondence::parse_map(&q, "-x").unwrap();
        let v = finitary_verdict(&neg, VerdictBudgets::default());
        assert_eq!((v.status, v.automorphism_order), (FinitaryStatus::CertifiedFinitary, Some(2)));
        let dbl = Correspondence::parse_map(&q, "2*x").unwrap();
        assert_eq!(finitary_verdict(&dbl, VerdictBudgets::default()).status, FinitaryStatus::EvidenceNonFinitary);
        let f5 = FiniteField::prime(5).unwrap();
        let sym = Correspondence::parse_poly(&f5, "x^2 + y^2 - 1").unwrap();
        let v = finitary_verdict(&sym, VerdictBudgets::default());
        assert_eq!(v.status, FinitaryStatus::CertifiedFinitary);
        assert_eq!(v.core.unwrap().h.format(&f5, "x"), "x^4 + 4*x^2");
    }

    #[test]
    fn heights() {
        let q = Rationals;
        let r = |a: i64, b: i64| ProjectivePoint::Finite(BigRational::new(a.into(), b.into()));
        assert!((naive_height(&r(2, 3)).log - 3f64.ln()).abs() < 1e-12);
        assert!((naive_height(&r(4, 6)).log - 3f64.ln()).abs() < 1e-12);
        assert_eq!(naive_height(&ProjectivePoint::Infinity).log, 0.0);
        for p in [r(0, 1), r(1, 1), r(-1, 1), ProjectivePoint::Infinity] {
            assert_eq!(naive_height(&p).log, 0.0);
        }
        assert_eq!(points_of_height(1).len(), 4);
        assert_eq!(points_of_height(2).len(), 8);
        let _ = q.one();
    }
}
