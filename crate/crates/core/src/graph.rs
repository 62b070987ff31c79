//! The directed graph of a correspondence: closure searches for complete
//! sets, classification of their edges, adjacency powers and the special
//! structure of graphs of morphisms.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::corr::{Correspondence, Direction, EdgeLocal, Fiber};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq, RootField};
use crate::point::ProjectivePoint;
use crate::ratfunc::RationalFunction;
use crate::universe::Universe;

type Pt<F> = ProjectivePoint<<F as crate::field::Ring>::Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub max_ext: u32,
    pub max_size: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_ext: 6,
            max_size: 512,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub etale: bool,
    pub equiramified: bool,
    pub ram_increasing: bool,
    pub ram_decreasing: bool,
    pub consistently_ramified: bool,
    /// Positive weights `n_s` aligned with the vertex list, with
    /// `n_source * e1 = n_target * e2` on every edge.
    pub weights: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSetReport<E> {
    pub status: Status,
    pub reason: Option<String>,
    pub vertices: Vec<ProjectivePoint<E>>,
    pub edges: Vec<EdgeLocal<E>>,
    pub classification: Option<Classification>,
    pub budgets: Budgets,
}

impl<E> CompleteSetReport<E> {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }
}

/// Degree of a point over the base field.
pub fn point_degree<F: RootField>(field: &F, p: &Pt<F>) -> u32 {
    match p {
        ProjectivePoint::Finite(a) => field.element_degree(a),
        ProjectivePoint::Infinity => 1,
    }
}

struct Closure<P> {
    vertices: BTreeSet<P>,
    overflow: Option<String>,
}

/// Fiber computations with a cache, shared by every search on one
/// correspondence.
pub struct Explorer<'a, F: RootField> {
    c: &'a Correspondence<F>,
    cache: HashMap<(Direction, Pt<F>), Vec<Fiber<F::Elem>>>,
}

impl<'a, F: RootField> Explorer<'a, F> {
    pub fn new(c: &'a Correspondence<F>) -> Self {
        Explorer {
            c,
            cache: HashMap::new(),
        }
    }

    pub fn correspondence(&self) -> &Correspondence<F> {
        self.c
    }

    /// Per-component fibers.
    pub fn fibers(&mut self, dir: Direction, p: &Pt<F>) -> &[Fiber<F::Elem>] {
        let c = self.c;
        self.cache
            .entry((dir, p.clone()))
            .or_insert_with(|| c.component_fibers(dir, p))
    }

    fn closure(
        &mut self,
        seed: &Pt<F>,
        dirs: &[Direction],
        budgets: Budgets,
        stop_early: bool,
    ) -> Closure<Pt<F>> {
        let field = self.c.field().clone();
        let mut seen = BTreeSet::from([seed.clone()]);
        let mut queue = VecDeque::from([seed.clone()]);
        let mut overflow: Option<String> = None;
        if point_degree(&field, seed) > budgets.max_ext {
            return Closure {
                vertices: seen,
                overflow: Some(format!("seed {} exceeds max_ext", seed.format(&field))),
            };
        }
        while let Some(v) = queue.pop_front() {
            for &dir in dirs {
                let fibs = self.fibers(dir, &v).to_vec();
                for fib in fibs {
                    if !fib.residual.is_empty() && overflow.is_none() {
                        let degs: Vec<String> = fib
                            .residual
                            .iter()
                            .map(|(g, _)| g.degree().unwrap_or(0).to_string())
                            .collect();
                        overflow = Some(format!(
                            "{:?} fiber of {} has points of degree {} beyond {}",
                            dir,
                            v.format(&field),
                            degs.join(","),
                            field.spec_string()
                        ));
                    }
                    for (w, _) in fib.points {
                        let deg = point_degree(&field, &w);
                        if deg > budgets.max_ext {
                            if overflow.is_none() {
                                overflow = Some(format!(
                                    "{} has degree {deg} > max_ext {}",
                                    w.format(&field),
                                    budgets.max_ext
                                ));
                            }
                            continue;
                        }
                        if seen.insert(w.clone()) {
                            if seen.len() > budgets.max_size && overflow.is_none() {
                                overflow = Some(format!("size exceeds max_size {}", budgets.max_size));
                                if stop_early {
                                    return Closure {
                                        vertices: seen,
                                        overflow,
                                    };
                                }
                            }
                            queue.push_back(w);
                        }
                    }
                }
                if stop_early && overflow.is_some() {
                    return Closure {
                        vertices: seen,
                        overflow,
                    };
                }
            }
        }
        Closure {
            vertices: seen,
            overflow,
        }
    }

    /// Every edge with both ends in `set`, one per component through the
    /// plane point.
    pub fn edges_within(&mut self, set: &[Pt<F>]) -> Vec<EdgeLocal<F::Elem>> {
        let members: BTreeSet<&Pt<F>> = set.iter().collect();
        let mults: Vec<u32> = self.c.components().iter().map(|(_, m)| *m).collect();
        let mut edges = Vec::new();
        for x in set {
            let fwd = self.fibers(Direction::Forward, x).to_vec();
            for (i, fib) in fwd.iter().enumerate() {
                for (y, e1) in &fib.points {
                    if !members.contains(y) {
                        continue;
                    }
                    let e2 = self.fibers(Direction::Backward, y)[i].multiplicity_of(x);
                    edges.push(EdgeLocal {
                        source: x.clone(),
                        target: y.clone(),
                        e1: *e1,
                        e2,
                        mult: mults[i],
                    });
                }
            }
        }
        edges.sort();
        edges
    }

    fn report(&mut self, cl: Closure<Pt<F>>, budgets: Budgets) -> CompleteSetReport<F::Elem> {
        let vertices: Vec<Pt<F>> = cl.vertices.into_iter().collect();
        let edges = self.edges_within(&vertices);
        let status = if cl.overflow.is_none() {
            Status::Certified
        } else {
            Status::BudgetExceeded
        };
        let classification = match status {
            Status::Certified => classify_edges(self.c.field(), &vertices, &edges, false).ok(),
            Status::BudgetExceeded => None,
        };
        CompleteSetReport {
            status,
            reason: cl.overflow,
            vertices,
            edges,
            classification,
            budgets,
        }
    }
}

/// Classification flags and ramification weights of a vertex set with its
/// internal edges.
pub fn classify_edges<F: RootField>(
    field: &F,
    vertices: &[Pt<F>],
    edges: &[EdgeLocal<F::Elem>],
    strict: bool,
) -> Result<Classification> {
    if strict {
        if let Some(e) = edges.iter().find(|e| e.possibly_singular()) {
            return Err(Error::SingularEdge(
                e.source.format(field),
                e.target.format(field),
            ));
        }
    }
    let index: BTreeMap<&Pt<F>, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (k, e) in edges.iter().enumerate() {
        adj[index[&e.source]].push(k);
        adj[index[&e.target]].push(k);
    }
    // n_t = n_s * e1 / e2 along each edge.
    let mut w: Vec<Option<BigRational>> = vec![None; vertices.len()];
    let mut comp_of = vec![usize::MAX; vertices.len()];
    let mut consistent = true;
    let mut ncomp = 0;
    for start in 0..vertices.len() {
        if w[start].is_some() {
            continue;
        }
        w[start] = Some(BigRational::one());
        comp_of[start] = ncomp;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let wv = w[v].clone().unwrap();
            for &k in &adj[v] {
                let e = &edges[k];
                let (s, t) = (index[&e.source], index[&e.target]);
                let ratio = BigRational::new(BigInt::from(e.e1), BigInt::from(e.e2));
                let (other, val) = if s == v {
                    (t, &wv * &ratio)
                } else {
                    (s, &wv / &ratio)
                };
                match &w[other] {
                    None => {
                        w[other] = Some(val);
                        comp_of[other] = ncomp;
                        stack.push(other);
                    }
                    Some(old) => {
                        if *old != val {
                            consistent = false;
                        }
                    }
                }
            }
        }
        ncomp += 1;
    }
    let weights = consistent.then(|| {
        let mut out = vec![BigInt::zero(); vertices.len()];
        for c in 0..ncomp {
            let members: Vec<usize> = (0..vertices.len()).filter(|&i| comp_of[i] == c).collect();
            let l = members
                .iter()
                .fold(BigInt::one(), |a, &i| a.lcm(w[i].as_ref().unwrap().denom()));
            let ints: Vec<BigInt> = members
                .iter()
                .map(|&i| (w[i].as_ref().unwrap() * BigRational::from_integer(l.clone())).to_integer())
                .collect();
            let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
            for (&i, v) in members.iter().zip(ints) {
                out[i] = (v / &g).abs();
            }
        }
        out
    });
    Ok(Classification {
        etale: edges.iter().all(|e| e.is_etale()),
        equiramified: edges.iter().all(|e| e.is_equiramified()),
        ram_increasing: edges.iter().all(|e| e.is_ram_increasing()),
        ram_decreasing: edges.iter().all(|e| e.is_ram_decreasing()),
        consistently_ramified: consistent,
        weights,
    })
}

/// Closure of `seed` under forward and backward fibers. Certified when
/// every fiber of every vertex is rational over the field, of degree at
/// most `max_ext`, and the set stays within `max_size`.
pub fn complete_set_search<F: RootField>(
    c: &Correspondence<F>,
    seed: &Pt<F>,
    budgets: Budgets,
) -> CompleteSetReport<F::Elem> {
    let mut ex = Explorer::new(c);
    let cl = ex.closure(seed, &[Direction::Forward, Direction::Backward], budgets, true);
    ex.report(cl, budgets)
}

/// Classify an arbitrary finite vertex set by its internal edges.
pub fn classify_set<F: RootField>(
    c: &Correspondence<F>,
    set: &[Pt<F>],
    strict: bool,
) -> Result<Classification> {
    let mut vs = set.to_vec();
    vs.sort();
    vs.dedup();
    let edges = Explorer::new(c).edges_within(&vs);
    classify_edges(c.field(), &vs, &edges, strict)
}

/// Adjacency matrix with `a[y][x]` the number of edges `x -> y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix<E> {
    pub vertices: Vec<ProjectivePoint<E>>,
    pub entries: Vec<Vec<u64>>,
}

impl<E: Clone + Ord> AdjacencyMatrix<E> {
    pub fn index_of(&self, p: &ProjectivePoint<E>) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    /// `(A^n)[y][x]`.
    pub fn path_count_idx(&self, x: usize, y: usize, n: usize) -> u128 {
        let k = self.vertices.len();
        let mut v = vec![0u128; k];
        v[x] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; k];
            for (row, out) in self.entries.iter().zip(next.iter_mut()) {
                *out = row.iter().zip(&v).map(|(a, b)| *a as u128 * b).sum();
            }
            v = next;
        }
        v[y]
    }

    pub fn add(&self, o: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        AdjacencyMatrix {
            vertices: Vec::new(),
            entries,
        }
        .with_vertices(self)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.entries.len();
        let mut entries = vec![vec![0u64; k]; k];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = (0..k).map(|l| self.entries[i][l] * o.entries[l][j]).sum();
            }
        }
        AdjacencyMatrix {
            vertices: Vec::new(),
            entries,
        }
        .with_vertices(self)
    }

    fn with_vertices(mut self, like: &Self) -> Self {
        self.vertices = like.vertices.clone();
        self
    }
}

pub fn adjacency_matrix<F: RootField>(c: &Correspondence<F>, set: &[Pt<F>]) -> AdjacencyMatrix<F::Elem> {
    let mut vs = set.to_vec();
    vs.sort();
    vs.dedup();
    let edges = Explorer::new(c).edges_within(&vs);
    adjacency_from_edges(&vs, &edges)
}

pub fn adjacency_from_edges<E: Clone + Ord>(
    vertices: &[ProjectivePoint<E>],
    edges: &[EdgeLocal<E>],
) -> AdjacencyMatrix<E> {
    let k = vertices.len();
    let mut entries = vec![vec![0u64; k]; k];
    for e in edges {
        let x = vertices.binary_search(&e.source).expect("edge inside the set");
        let y = vertices.binary_search(&e.target).expect("edge inside the set");
        entries[y][x] += e.mult as u64;
    }
    AdjacencyMatrix {
        vertices: vertices.to_vec(),
        entries,
    }
}

/// Number of directed paths of length `n` from `x` to `y` inside `set`.
pub fn path_count<F: RootField>(
    c: &Correspondence<F>,
    set: &[Pt<F>],
    x: &Pt<F>,
    y: &Pt<F>,
    n: usize,
) -> Result<u128> {
    let a = adjacency_matrix(c, set);
    let field = c.field();
    let xi = a
        .index_of(x)
        .ok_or_else(|| Error::VertexNotInSet(x.format(field)))?;
    let yi = a
        .index_of(y)
        .ok_or_else(|| Error::VertexNotInSet(y.format(field)))?;
    Ok(a.path_count_idx(xi, yi, n))
}

/// Connected components of the graph on `points`, each certified or not.
pub fn enumerate_components<F: RootField>(
    c: &Correspondence<F>,
    points: &[Pt<F>],
    budgets: Budgets,
) -> Vec<CompleteSetReport<F::Elem>> {
    let mut ex = Explorer::new(c);
    let mut visited: BTreeSet<Pt<F>> = BTreeSet::new();
    let mut out = Vec::new();
    let explore = Budgets {
        max_size: usize::MAX,
        ..budgets
    };
    for p in points {
        if visited.contains(p) {
            continue;
        }
        let mut cl = ex.closure(p, &[Direction::Forward, Direction::Backward], explore, false);
        if cl.overflow.is_none() && cl.vertices.len() > budgets.max_size {
            cl.overflow = Some(format!("size exceeds max_size {}", budgets.max_size));
        }
        visited.extend(cl.vertices.iter().cloned());
        out.push(ex.report(cl, budgets));
    }
    out
}

/// Components of the graph on P^1 points of degree at most `k`.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub universe: Universe,
    pub corr: Correspondence<FiniteField>,
    pub reports: Vec<CompleteSetReport<Fq>>,
}

impl Enumeration {
    pub fn certified(&self) -> impl Iterator<Item = &CompleteSetReport<Fq>> {
        self.reports.iter().filter(|r| r.is_certified())
    }
}

pub fn enumerate_complete_sets(
    c: &Correspondence<FiniteField>,
    k: u32,
    max_size: usize,
) -> Result<Enumeration> {
    let universe = Universe::new(c.field(), k)?;
    let corr = universe.lift(c)?;
    let points = universe.points()?;
    let reports = enumerate_components(&corr, &points, Budgets { max_ext: k, max_size });
    Ok(Enumeration {
        universe,
        corr,
        reports,
    })
}

/// Level-by-level shape of the backward trees hanging off a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Volcano {
    pub cycle_length: usize,
    pub degree: u32,
    pub depth: usize,
    pub valid_depth: usize,
    pub level_sizes: Vec<usize>,
    pub tree_valence: u32,
}

impl Volcano {
    pub fn is_valid(&self) -> bool {
        self.valid_depth == self.depth
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismStructure<E> {
    /// The cycle reached forward from the seed, empty if none was found.
    pub cycle: Vec<ProjectivePoint<E>>,
    /// `e2 = deg f` along each cycle edge.
    pub totally_ramified: Vec<bool>,
    pub finite_complete_set: bool,
    pub etale: bool,
    pub volcano: Option<Volcano>,
}

fn morphism_map<F: RootField>(c: &Correspondence<F>) -> Result<RationalFunction<F::Elem>> {
    match c.morphism() {
        Some(m) if !m.transposed => Ok(m.map.clone()),
        _ => Err(Error::NotMorphismType),
    }
}

/// Cycle structure and volcano shape of `D_f` around `seed`.
pub fn morphism_graph_classify<F: RootField>(
    c: &Correspondence<F>,
    seed: &Pt<F>,
    depth: usize,
    max_steps: usize,
) -> Result<MorphismStructure<F::Elem>> {
    let f = morphism_map(c)?;
    let field = c.field();
    let d = f.degree() as u32;
    let mut orbit = vec![seed.clone()];
    let mut pos: HashMap<Pt<F>, usize> = HashMap::from([(seed.clone(), 0)]);
    let mut cycle = Vec::new();
    for _ in 0..max_steps {
        let next = f.eval_point(field, orbit.last().unwrap());
        if let Some(&i) = pos.get(&next) {
            cycle = orbit[i..].to_vec();
            break;
        }
        pos.insert(next.clone(), orbit.len());
        orbit.push(next);
    }
    let mut ex = Explorer::new(c);
    let mut totally_ramified = Vec::new();
    let mut etale = !cycle.is_empty();
    for v in &cycle {
        let fv = f.eval_point(field, v);
        let e2: u32 = ex
            .fibers(Direction::Backward, &fv)
            .iter()
            .map(|fib| fib.multiplicity_of(v))
            .sum();
        totally_ramified.push(e2 == d);
        etale &= e2 == 1;
    }
    let finite_complete_set = !cycle.is_empty() && totally_ramified.iter().all(|&t| t);
    let volcano = (!cycle.is_empty() && !finite_complete_set && depth > 0)
        .then(|| volcano_check(&mut ex, &cycle, d, depth));
    Ok(MorphismStructure {
        cycle,
        totally_ramified,
        finite_complete_set,
        etale,
        volcano,
    })
}

fn volcano_check<F: RootField>(
    ex: &mut Explorer<'_, F>,
    cycle: &[Pt<F>],
    d: u32,
    depth: usize,
) -> Volcano {
    let on_cycle: BTreeSet<Pt<F>> = cycle.iter().cloned().collect();
    let mut seen = on_cycle.clone();
    let mut level: Vec<Pt<F>> = cycle.to_vec();
    let mut level_sizes = vec![cycle.len()];
    let mut valid_depth = 0;
    'levels: for k in 0..depth {
        let mut next = Vec::new();
        for v in &level {
            let fibs = ex.fibers(Direction::Backward, v).to_vec();
            let mut pre = Vec::new();
            for fib in fibs {
                if !fib.residual.is_empty() {
                    break 'levels;
                }
                for (w, m) in fib.points {
                    if m != 1 {
                        break 'levels;
                    }
                    pre.push(w);
                }
            }
            if pre.len() != d as usize {
                break 'levels;
            }
            let back_on_cycle = pre.iter().filter(|w| on_cycle.contains(*w)).count();
            let expected = if k == 0 { 1 } else { 0 };
            if back_on_cycle != expected {
                break 'levels;
            }
            for w in pre {
                if on_cycle.contains(&w) {
                    continue;
                }
                if !seen.insert(w.clone()) {
                    break 'levels;
                }
                next.push(w);
            }
        }
        next.sort();
        level_sizes.push(next.len());
        level = next;
        valid_depth = k + 1;
    }
    Volcano {
        cycle_length: cycle.len(),
        degree: d,
        depth,
        valid_depth,
        level_sizes,
        tree_valence: d + 1,
    }
}

/// The union of all finite complete sets of `D_f` among rational points:
/// the totally ramified cycles of `f`.
pub fn exceptional_set_morphism<F: RootField>(
    field: &F,
    f: &RationalFunction<F::Elem>,
) -> Result<Vec<Pt<F>>> {
    let d = f.degree();
    if d == 0 {
        return Err(Error::NotMorphismType);
    }
    if d == 1 {
        return Err(Error::DegreeOne);
    }
    let c = Correspondence::from_map(field, f)?;
    let (n, den) = (f.num().clone(), f.den(field));
    let wronskian = n
        .derivative(field)
        .mul(field, &den)
        .sub(field, &n.mul(field, &den.derivative(field)));
    let mut candidates: Vec<Pt<F>> = field
        .split(&wronskian)
        .roots
        .into_iter()
        .map(|(r, _)| ProjectivePoint::Finite(r))
        .collect();
    candidates.push(ProjectivePoint::Infinity);
    let mut ex = Explorer::new(&c);
    let mut total: BTreeSet<Pt<F>> = BTreeSet::new();
    for x in candidates {
        let y = f.eval_point(field, &x);
        let e2: u32 = ex
            .fibers(Direction::Backward, &y)
            .iter()
            .map(|fib| fib.multiplicity_of(&x))
            .sum();
        if e2 as usize == d {
            total.insert(x);
        }
    }
    let mut out = BTreeSet::new();
    for t in &total {
        let mut cur = f.eval_point(field, t);
        let mut steps = 0;
        while total.contains(&cur) && cur != *t && steps <= total.len() {
            cur = f.eval_point(field, &cur);
            steps += 1;
        }
        if cur == *t {
            out.insert(t.clone());
        }
    }
    if out.len() > 2 {
        log::warn!("exceptional set has {} points", out.len());
    }
    Ok(out.into_iter().collect())
}

/// A certified finite backward-complete set and the outcome of the
/// forward-completeness check on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardSet<E> {
    pub vertices: Vec<ProjectivePoint<E>>,
    /// Internal edges all have `e1 >= e2` and `d1 <= d2`.
    pub hypothesis: bool,
    pub forward_complete: bool,
    pub equiramified: bool,
    pub balanced: bool,
}

impl<E> BackwardSet<E> {
    pub fn conclusion_holds(&self) -> bool {
        !self.hypothesis || (self.forward_complete && self.equiramified && self.balanced)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardKernel<E> {
    pub kernel: Vec<ProjectivePoint<E>>,
    pub sets: Vec<BackwardSet<E>>,
    pub budgets: Budgets,
}

/// Union of the certified finite backward closures of `candidates`.
pub fn backward_kernel_search<F: RootField>(
    c: &Correspondence<F>,
    candidates: &[Pt<F>],
    budgets: Budgets,
) -> BackwardKernel<F::Elem> {
    let mut ex = Explorer::new(c);
    let mut kernel: BTreeSet<Pt<F>> = BTreeSet::new();
    let mut sets = Vec::new();
    let (d1, d2) = c.bidegree();
    for p in candidates {
        if kernel.contains(p) {
            continue;
        }
        let cl = ex.closure(p, &[Direction::Backward], budgets, true);
        if cl.overflow.is_some() {
            continue;
        }
        let vertices: Vec<Pt<F>> = cl.vertices.into_iter().collect();
        let internal = ex.edges_within(&vertices);
        let hypothesis = d1 <= d2 && internal.iter().all(|e| e.is_ram_decreasing());
        let fwd = ex.closure(p, &[Direction::Forward, Direction::Backward], budgets, true);
        let forward_complete = fwd.overflow.is_none() && fwd.vertices.len() == vertices.len();
        sets.push(BackwardSet {
            hypothesis,
            forward_complete,
            equiramified: internal.iter().all(|e| e.is_equiramified()),
            balanced: d1 == d2,
            vertices: vertices.clone(),
        });
        kernel.extend(vertices);
    }
    BackwardKernel {
        kernel: kernel.into_iter().collect(),
        sets,
        budgets,
    }
}

pub fn edge_json<F: RootField>(field: &F, e: &EdgeLocal<F::Elem>) -> Value {
    json!({
        "source": e.source.format(field),
        "target": e.target.format(field),
        "e1": e.e1,
        "e2": e.e2,
        "mult": e.mult,
        "etale": e.is_etale(),
        "equiramified": e.is_equiramified(),
        "ram_increasing": e.is_ram_increasing(),
        "ram_decreasing": e.is_ram_decreasing(),
        "possibly_singular": e.possibly_singular(),
    })
}

pub fn classification_json(c: &Classification) -> Value {
    json!({
        "etale": c.etale,
        "equiramified": c.equiramified,
        "ram_increasing": c.ram_increasing,
        "ram_decreasing": c.ram_decreasing,
        "consistently_ramified": c.consistently_ramified,
        "weights": c.weights.as_ref().map(|w| w.iter().map(|n| n.to_string()).collect::<Vec<_>>()),
    })
}

impl<E> CompleteSetReport<E>
where
    E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync,
{
    pub fn to_json<F: RootField<Elem = E>>(&self, field: &F) -> Value {
        json!({
            "status": self.status,
            "reason": self.reason,
            "vertices": self.vertices.iter().map(|v| v.format(field)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| edge_json(field, e)).collect::<Vec<_>>(),
            "classification": self.classification.as_ref().map(classification_json),
            "budgets": self.budgets,
        })
    }

    /// Graphviz rendering; parallel edges for multiplicities.
    pub fn to_dot<F: RootField<Elem = E>>(&self, field: &F, name: &str) -> String {
        dot(field, name, &self.vertices, &self.edges)
    }
}

pub fn dot<F: RootField>(
    field: &F,
    name: &str,
    vertices: &[Pt<F>],
    edges: &[EdgeLocal<F::Elem>],
) -> String {
    let mut s = format!("digraph {name} {{\n");
    for (i, v) in vertices.iter().enumerate() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", v.format(field)));
    }
    for e in edges {
        let a = vertices.binary_search(&e.source).expect("edge inside the set");
        let b = vertices.binary_search(&e.target).expect("edge inside the set");
        for _ in 0..e.mult {
            s.push_str(&format!("  n{a} -> n{b} [label=\"{},{}\"];\n", e.e1, e.e2));
        }
    }
    s.push_str("}\n");
    s
}
