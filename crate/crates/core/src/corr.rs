//! Self-correspondences of P^1 in the divisor model.
//!
//! A correspondence is a multiset of squarefree components `F(x, y)` on
//! P^1 x P^1 with `pi1 = x` and `pi2 = y`. The bidegree is
//! `(d1, d2) = (sum m*deg_y, sum m*deg_x)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Fq, RootField};
use crate::point::ProjectivePoint;
use crate::poly::graphs::split_graph_factors;
use crate::poly::resultant::resultant_compose;
use crate::poly::roots::{roots_p1, split_form, ClosedPoint};
use crate::poly::squarefree::squarefree_bivariate;
use crate::poly::{BiPoly, BinaryForm, Poly};
use crate::ratfunc::RationalFunction;

/// Tag for `D_f = (P^1, Id, f)` or its transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<E> {
    pub map: RationalFunction<E>,
    pub transposed: bool,
}

#[derive(Clone, Debug)]
pub struct Correspondence<F: RootField> {
    field: F,
    components: Vec<(BiPoly<F::Elem>, u32)>,
    morphism: Option<Morphism<F::Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Points of a fiber that are rational over the working field, and the
/// factors of the fiber form that have no root there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber<E> {
    pub points: Vec<(ProjectivePoint<E>, u32)>,
    pub residual: Vec<(Poly<E>, u32)>,
}

impl<E> Fiber<E> {
    pub fn is_complete(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn multiplicity_of(&self, p: &ProjectivePoint<E>) -> u32
    where
        E: PartialEq,
    {
        self.points
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }
}

/// An edge of the graph with its ramification indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLocal<E> {
    pub source: ProjectivePoint<E>,
    pub target: ProjectivePoint<E>,
    pub e1: u32,
    pub e2: u32,
    /// Number of parallel edges (component multiplicities).
    pub mult: u32,
}

impl<E> EdgeLocal<E> {
    pub fn is_etale(&self) -> bool {
        self.e1 == 1 && self.e2 == 1
    }
    pub fn is_equiramified(&self) -> bool {
        self.e1 == self.e2
    }
    pub fn is_ram_increasing(&self) -> bool {
        self.e1 <= self.e2
    }
    pub fn is_ram_decreasing(&self) -> bool {
        self.e1 >= self.e2
    }
    pub fn possibly_singular(&self) -> bool {
        self.e1 > 1 && self.e2 > 1
    }
}

fn same_field<F: Field>(a: &F, b: &F) -> Result<()> {
    if a.spec_string() == b.spec_string() {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.spec_string(), b.spec_string()))
    }
}

/// The fiber form of one component at `pt`.
pub(crate) fn fiber_form<F: Field>(
    field: &F,
    comp: &BiPoly<F::Elem>,
    dir: Direction,
    pt: &ProjectivePoint<F::Elem>,
) -> BinaryForm<F::Elem> {
    // Backward fibers are forward fibers of the swapped component.
    let c = match dir {
        Direction::Forward => comp.clone(),
        Direction::Backward => comp.swap(),
    };
    let (dx, dy) = c.bidegree();
    let affine = match pt {
        ProjectivePoint::Finite(a) => c.eval_x(field, a),
        ProjectivePoint::Infinity => {
            Poly::new((0..=dy).map(|j| c.coeff(dx, j)).collect())
        }
    };
    BinaryForm::new(dy as usize, affine)
}

impl<F: RootField> Correspondence<F> {
    /// From a bivariate polynomial `F(x, y)`.
    pub fn from_poly(field: &F, f: &BiPoly<F::Elem>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.bidegree() == (0, 0) {
            return Err(Error::ConstantInput);
        }
        let sq = squarefree_bivariate(field, f)?;
        if !sq.x_content.is_constant() || !sq.y_content.is_constant() || sq.factors.is_empty() {
            let culprit = if !sq.x_content.is_constant() {
                sq.x_content.format(field, "x")
            } else if !sq.y_content.is_constant() {
                sq.y_content.format(field, "y")
            } else {
                f.format(field)
            };
            return Err(Error::DegenerateComponent(culprit));
        }
        Ok(Self::from_components(field, sq.factors, None))
    }

    /// `D_f`, the graph of a rational map: edges `x -> f(x)`.
    pub fn from_map(field: &F, f: &RationalFunction<F::Elem>) -> Result<Self> {
        if f.degree() == 0 {
            return Err(Error::ConstantInput);
        }
        let comp = BiPoly::from_x_poly(&f.den(field))
            .mul(field, &BiPoly::y(field))
            .sub(field, &BiPoly::from_x_poly(f.num()));
        let sq = squarefree_bivariate(field, &comp)?;
        debug_assert_eq!(sq.factors.len(), 1);
        Ok(Self::from_components(
            field,
            sq.factors,
            Some(Morphism {
                map: f.clone(),
                transposed: false,
            }),
        ))
    }

    pub fn parse_poly(field: &F, text: &str) -> Result<Self> {
        Self::from_poly(field, &crate::expr::parse_bivariate(field, text)?)
    }

    pub fn parse_map(field: &F, text: &str) -> Result<Self> {
        Self::from_map(field, &crate::expr::parse_rational(field, text)?)
    }

    fn from_components(
        field: &F,
        comps: impl IntoIterator<Item = (BiPoly<F::Elem>, u32)>,
        morphism: Option<Morphism<F::Elem>>,
    ) -> Self {
        let mut acc: BTreeMap<BiPoly<F::Elem>, u32> = BTreeMap::new();
        for (c, m) in comps {
            for part in split_graph_factors(field, &c) {
                *acc.entry(part.normalized(field)).or_default() += m;
            }
        }
        Correspondence {
            field: field.clone(),
            components: acc.into_iter().collect(),
            morphism,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Normalized components with multiplicities, sorted.
    pub fn components(&self) -> &[(BiPoly<F::Elem>, u32)] {
        &self.components
    }

    pub fn morphism(&self) -> Option<&Morphism<F::Elem>> {
        self.morphism.as_ref()
    }

    /// `(d1, d2) = (deg pi1, deg pi2)`.
    pub fn bidegree(&self) -> (u32, u32) {
        self.components.iter().fold((0, 0), |(a, b), (c, m)| {
            (a + m * c.deg_y(), b + m * c.deg_x())
        })
    }

    pub fn is_balanced(&self) -> bool {
        let (d1, d2) = self.bidegree();
        d1 == d2
    }

    /// The defining polynomial `prod F_i^m_i`.
    pub fn polynomial(&self) -> BiPoly<F::Elem> {
        let f = &self.field;
        self.components
            .iter()
            .fold(BiPoly::constant(f, f.one()), |acc, (c, m)| {
                acc.mul(f, &c.pow(f, *m))
            })
    }

    /// Components as `(F1)^2*(F2)` text.
    pub fn format(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(c, m)| {
                let s = c.format(&self.field);
                let s = if self.components.len() > 1 || *m > 1 {
                    format!("({s})")
                } else {
                    s
                };
                if *m > 1 {
                    format!("{s}^{m}")
                } else {
                    s
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn transpose(&self) -> Self {
        Self::from_components(
            &self.field,
            self.components.iter().map(|(c, m)| (c.swap(), *m)),
            self.morphism.as_ref().map(|t| Morphism {
                map: t.map.clone(),
                transposed: !t.transposed,
            }),
        )
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        same_field(&self.field, &other.field)?;
        Ok(Self::from_components(
            &self.field,
            self.components
                .iter()
                .chain(other.components.iter())
                .cloned(),
            None,
        ))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        same_field(&self.field, &inner.field)?;
        let field = &self.field;
        if let (Some(a), Some(b)) = (&self.morphism, &inner.morphism) {
            if !a.transposed && !b.transposed {
                return Self::from_map(field, &a.map.compose(field, &b.map));
            }
            if a.transposed && b.transposed {
                return Ok(Self::from_map(field, &b.map.compose(field, &a.map))?.transpose());
            }
        }
        let mut comps = Vec::new();
        for (f, m) in &inner.components {
            for (g, n) in &self.components {
                let r = resultant_compose(field, f, g);
                let sq = squarefree_bivariate(field, &r)?;
                if !sq.x_content.is_constant() || !sq.y_content.is_constant() {
                    log::warn!(
                        "dropping collapsed factors of Res({}, {})",
                        f.format(field),
                        g.format(field)
                    );
                }
                for (h, k) in sq.factors {
                    comps.push((h, m * n * k));
                }
            }
        }
        Ok(Self::from_components(field, comps, None))
    }

    /// Invariant under swapping x and y, as a multiset of components.
    pub fn is_symmetric(&self) -> bool {
        self.transpose().components == self.components
    }

    /// Fibers of the individual components, without multiplicities.
    pub fn component_fibers(
        &self,
        dir: Direction,
        pt: &ProjectivePoint<F::Elem>,
    ) -> Vec<Fiber<F::Elem>> {
        self.components
            .iter()
            .map(|(c, _)| {
                let form = fiber_form(&self.field, c, dir, pt);
                let r = split_form(&self.field, &form).expect("components have no vertical lines");
                Fiber {
                    points: r.roots,
                    residual: r.residual,
                }
            })
            .collect()
    }

    /// Points of the fiber over `pt` that are rational over the field.
    pub fn fiber(&self, dir: Direction, pt: &ProjectivePoint<F::Elem>) -> Fiber<F::Elem> {
        let mut points: BTreeMap<ProjectivePoint<F::Elem>, u32> = BTreeMap::new();
        let mut residual = Vec::new();
        for (fib, (_, m)) in self.component_fibers(dir, pt).into_iter().zip(&self.components) {
            for (p, k) in fib.points {
                *points.entry(p).or_default() += k * m;
            }
            residual.extend(fib.residual.into_iter().map(|(g, k)| (g, k * m)));
        }
        residual.sort();
        Fiber {
            points: points.into_iter().collect(),
            residual,
        }
    }

    /// Ramification data of the edge `x -> y`, summed over the components
    /// through the plane point.
    pub fn edge_local(
        &self,
        x: &ProjectivePoint<F::Elem>,
        y: &ProjectivePoint<F::Elem>,
    ) -> Result<EdgeLocal<F::Elem>> {
        let fwd = self.component_fibers(Direction::Forward, x);
        let bwd = self.component_fibers(Direction::Backward, y);
        let (mut e1, mut e2, mut mult) = (0, 0, 0);
        for ((f, b), (_, m)) in fwd.iter().zip(&bwd).zip(&self.components) {
            let k = f.multiplicity_of(y);
            if k > 0 {
                e1 += k * m;
                e2 += b.multiplicity_of(x) * m;
                mult += m;
            }
        }
        if e1 == 0 {
            return Err(Error::NotAnEdge(
                x.format(&self.field),
                y.format(&self.field),
            ));
        }
        Ok(EdgeLocal {
            source: x.clone(),
            target: y.clone(),
            e1,
            e2,
            mult,
        })
    }
}

impl Correspondence<FiniteField> {
    /// The same correspondence over a larger finite field.
    pub fn lift(&self, target: &FiniteField) -> Result<Self> {
        let emb = target.embedding_from(&self.field)?;
        let src = &self.field;
        let map_poly = |p: &Poly<Fq>| p.map(|c| emb.apply(src, *c));
        let morphism = self.morphism.as_ref().map(|t| {
            let num = map_poly(t.map.num());
            let den = map_poly(&t.map.den(src));
            Morphism {
                map: RationalFunction::new(target, num, den).expect("nonzero denominator"),
                transposed: t.transposed,
            }
        });
        Ok(Self::from_components(
            target,
            self.components
                .iter()
                .map(|(c, m)| (c.map(|a| emb.apply(src, *a)), *m)),
            morphism,
        ))
    }

    /// Fiber over a rational point as closed points of degree at most
    /// `ext_bound` over the field.
    pub fn fiber_closed(
        &self,
        dir: Direction,
        pt: &ProjectivePoint<Fq>,
        ext_bound: usize,
    ) -> Result<Vec<(ClosedPoint<Fq>, u32)>> {
        let mut acc: BTreeMap<ClosedPoint<Fq>, u32> = BTreeMap::new();
        for (c, m) in &self.components {
            let form = fiber_form(&self.field, c, dir, pt);
            for (p, k) in roots_p1(&self.field, &form, ext_bound)? {
                *acc.entry(p).or_default() += k * m;
            }
        }
        Ok(acc.into_iter().collect())
    }
}
