use thiserror::Error;

use crate::datum::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("Poincaré distances differ: {source_distance} vs {target_distance}")]
    DistanceMismatch {
        source_distance: f64,
        target_distance: f64,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("degenerate datum")]
    DegenerateDatum,

    #[error(
        "Schwarz-Pick obstruction: target distance {target_distance} exceeds source distance {source_distance}"
    )]
    Infeasible {
        source_distance: f64,
        target_distance: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("datum is not balanced (coordinate norms differ by {gap:e})")]
    NotBalanced { gap: f64 },

    #[error("pole encountered: |denominator| = {0:e}")]
    PoleEncountered(f64),

    #[error("no holomorphic left inverse found (grid residual {residual:e})")]
    LeftInverseNotFound { residual: f64 },

    #[error("path endpoints have the same dominant coordinate (f(0) = {f0:e}, f(1) = {f1:e})")]
    SameSignEndpoints { f0: f64, f1: f64 },

    #[error("interpolated datum at t = {t} is degenerate or leaves the bidisc")]
    PathDegenerates { t: f64 },

    #[error("member {index} has degenerate probe images; cannot determine a Möbius fit")]
    AmbiguousMatch { index: usize },

    #[error("expected a datum in {expected:?}, found {found:?}")]
    DomainMismatch { expected: Domain, found: Domain },

    #[error("expected a {expected} datum")]
    DatumKind { expected: &'static str },

    #[error("family member maps a sample point outside the unit disc: {0}")]
    FamilyEscapesDisc(String),

    #[error("parse error: {0}")]
    Parse(String),
}
