//! Finite search universes: the points of P^1 of degree at most K over a
//! finite field, all living inside one ambient extension.

use num_integer::Integer;

use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FiniteField, Fq, RootField};
use crate::point::ProjectivePoint;

/// Largest ambient order we pick on our own. Beyond it the ambient degree
/// falls back to K itself, which only loses points whose degree does not
/// divide K.
const AMBIENT_LIMIT: u128 = 1 << 32;

#[derive(Clone, Debug)]
pub struct Universe {
    base: FiniteField,
    ambient: FiniteField,
    max_degree: u32,
    embedding: Embedding,
}

impl Universe {
    pub fn new(base: &FiniteField, max_degree: u32) -> Result<Self> {
        let q = base.order() as u128;
        let lcm = (1..=max_degree.max(1)).fold(1u32, |a, b| a.lcm(&b));
        let fits = |l: u32| q.checked_pow(l).is_some_and(|o| o <= AMBIENT_LIMIT);
        let l = if fits(lcm) { lcm } else { max_degree.max(1) };
        let ambient = if l == 1 {
            base.clone()
        } else {
            base.ambient(l)?
        };
        let embedding = ambient.embedding_from(base)?;
        Ok(Universe {
            base: base.clone(),
            ambient,
            max_degree,
            embedding,
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ambient(&self) -> &FiniteField {
        &self.ambient
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Degree of the ambient field over the base.
    pub fn ambient_degree(&self) -> u32 {
        self.ambient.degree() / self.base.degree()
    }

    pub fn lift(&self, c: &Correspondence<FiniteField>) -> Result<Correspondence<FiniteField>> {
        if c.field() != &self.base {
            return Err(Error::FieldMismatch(
                c.field().spec_string(),
                self.base.spec_string(),
            ));
        }
        if self.ambient_degree() == 1 {
            return Ok(c.clone());
        }
        c.lift(&self.ambient)
    }

    pub fn lift_point(&self, p: &ProjectivePoint<Fq>) -> ProjectivePoint<Fq> {
        match p {
            ProjectivePoint::Finite(a) => {
                ProjectivePoint::Finite(self.embedding.apply(&self.base, *a))
            }
            ProjectivePoint::Infinity => ProjectivePoint::Infinity,
        }
    }

    /// Points of degree at most K that lie in the ambient field, sorted.
    pub fn points(&self) -> Result<Vec<ProjectivePoint<Fq>>> {
        if self.max_degree == 0 {
            return Ok(Vec::new());
        }
        let l = self.ambient_degree();
        let mut out: Vec<ProjectivePoint<Fq>> = Vec::new();
        for m in (1..=self.max_degree.min(l)).filter(|m| l % m == 0) {
            for a in self.ambient.subfield_elements(m)? {
                if self.ambient.element_degree(&a) == m {
                    out.push(ProjectivePoint::Finite(a));
                }
            }
        }
        out.push(ProjectivePoint::Infinity);
        out.sort();
        Ok(out)
    }
}
