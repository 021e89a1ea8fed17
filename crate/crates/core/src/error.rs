use std::fmt;

use crate::arith::Place;

/// Which of the two low-degree invariants rejected a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    E1,
    E2,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::E1 => f.write_str("e1"),
            Invariant::E2 => f.write_str("e2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no quadratic form has this profile: {0}")]
    NoSuchForm(String),
    #[error("Brauer class is not of the form (d, lambda): {0}")]
    NotRepresentable(String),
    #[error("crossed product construction failed: {0}")]
    Construction(String),
    #[error("candidate search exhausted: {0}")]
    SearchExhausted(String),
    #[error("expected dimension {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("form is not in I^3: {invariant} is nontrivial{}", .place.as_ref().map(|p| format!(" at {p}")).unwrap_or_default())]
    NotInI3 {
        invariant: Invariant,
        place: Option<Place>,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI and corpus runner.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Precondition(_) => "PreconditionError",
            Error::Parse(_) => "ParseError",
            Error::NoSuchForm(_) => "NoSuchFormError",
            Error::NotRepresentable(_) => "NotRepresentableError",
            Error::Construction(_) => "ConstructionError",
            Error::SearchExhausted(_) => "SearchExhaustedError",
            Error::Dimension { .. } => "DimensionError",
            Error::NotInI3 { .. } => "NotInI3Error",
            Error::Internal(_) => "InternalError",
        }
    }

    /// Internal errors signal a broken invariant of the library itself;
    /// everything else is a rejected input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_) | Error::Construction(_) | Error::SearchExhausted(_)
        )
    }

    pub fn place(&self) -> Option<&Place> {
        match self {
            Error::NotInI3 { place, .. } => place.as_ref(),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
