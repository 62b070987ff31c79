use crate::error::{Error, Result};
use crate::field::{Field, RootField};

/// A point `[a : 1]` or `[1 : 0]` of the projective line. Finite points
/// sort before infinity, and among themselves by the field's element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectivePoint<E> {
    Finite(E),
    Infinity,
}

impl<E: Clone> ProjectivePoint<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&E> {
        match self {
            ProjectivePoint::Finite(a) => Some(a),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl<E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync>
    ProjectivePoint<E>
{
    /// Normalize homogeneous coordinates.
    pub fn from_homogeneous<F: Field<Elem = E>>(field: &F, a: &E, b: &E) -> Result<Self> {
        if field.is_zero(b) {
            if field.is_zero(a) {
                return Err(Error::InvalidParameter(
                    "point".into(),
                    "[0:0] is not a point".into(),
                ));
            }
            return Ok(ProjectivePoint::Infinity);
        }
        Ok(ProjectivePoint::Finite(field.div(a, b).expect("b nonzero")))
    }

    /// Homogeneous coordinates `(a, b)` in normalized form.
    pub fn coords<F: Field<Elem = E>>(&self, field: &F) -> (E, E) {
        match self {
            ProjectivePoint::Finite(a) => (a.clone(), field.one()),
            ProjectivePoint::Infinity => (field.one(), field.zero()),
        }
    }

    /// Canonical text `[a:b]`.
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        match self {
            ProjectivePoint::Finite(a) => format!("[{}:1]", field.format_elem(a)),
            ProjectivePoint::Infinity => "[1:0]".to_string(),
        }
    }

    /// Parse `[a:b]`, a bare element `a`, or `inf`.
    pub fn parse<F: RootField<Elem = E>>(field: &F, text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "inf" || t == "oo" || t == "∞" {
            return Ok(ProjectivePoint::Infinity);
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let (a, b) = inner.split_once(':').ok_or_else(|| Error::Syntax {
                offset: 0,
                message: format!("expected [a:b], got {t:?}"),
            })?;
            let a = field.parse_elem(a)?;
            let b = field.parse_elem(b)?;
            return Self::from_homogeneous(field, &a, &b);
        }
        Ok(ProjectivePoint::Finite(field.parse_elem(t)?))
    }
}

/// Parse a comma-separated list of points such as `[0:1],[1:0]`.
pub fn parse_point_list<F: RootField>(
    field: &F,
    text: &str,
) -> Result<Vec<ProjectivePoint<F::Elem>>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(ProjectivePoint::parse(field, &cur)?);
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(ProjectivePoint::parse(field, &cur)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}
