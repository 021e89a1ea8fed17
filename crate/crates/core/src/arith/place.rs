use std::fmt;
use std::str::FromStr;

use num::bigint::BigUint;

use super::factor::is_prime;
use crate::error::{Error, Result};

/// A place of the rationals: the archimedean one or a finite prime.
///
/// Ordered with the real place first, then primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(BigUint),
}

impl Place {
    /// Validated constructor for a finite place.
    pub fn prime(p: impl Into<BigUint>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    pub(crate) fn finite_unchecked(p: BigUint) -> Self {
        Place::Finite(p)
    }

    pub fn two() -> Self {
        Place::Finite(BigUint::from(2u32))
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real)
    }

    pub fn as_prime(&self) -> Option<&BigUint> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" || s.eq_ignore_ascii_case("real") {
            return Ok(Place::Real);
        }
        let p: BigUint = s
            .parse()
            .map_err(|_| Error::Parse(format!("invalid place {s:?}")))?;
        Place::prime(p)
    }
}

impl serde::Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
