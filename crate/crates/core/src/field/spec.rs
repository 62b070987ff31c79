use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A parsed field spec string: `Q`, `Fp:<p>` or `Fp:<p>^<k>`.
/// Whitespace around tokens is ignored, so `Fp: 5` is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Finite { p: u64, k: u32 },
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let bad = || Error::BadFieldSpec(s.to_string());
        let rest = compact.strip_prefix("Fp:").ok_or_else(bad)?;
        let (p, k) = match rest.split_once('^') {
            Some((p, k)) => (p, k),
            None => (rest, "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let k: u32 = k.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        Ok(FieldSpec::Finite { p, k })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Finite { p, k: 1 } => write!(f, "Fp:{p}"),
            FieldSpec::Finite { p, k } => write!(f, "Fp:{p}^{k}"),
        }
    }
}

impl FieldSpec {
    /// Build the finite field, or `InfiniteField` for `Q`.
    pub fn finite(&self) -> Result<super::FiniteField> {
        match *self {
            FieldSpec::Rationals => Err(Error::InfiniteField),
            FieldSpec::Finite { p, k } => super::FiniteField::new(p, k),
        }
    }
}
