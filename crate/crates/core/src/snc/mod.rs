//! Builders for dual complexes: from declared strata of a simple normal
//! crossing divisor, from toric fans, and from the iterated blowup that
//! realizes a simplicial complex as a boundary complex.

mod fan;
mod realize;
mod strata;

use thiserror::Error;

use crate::complex::ComplexError;

pub use fan::{toric_link, Fan};
pub use realize::{realize_boundary, RealizationScript, RealizationStep, SimplicialInput};
pub use strata::{dual_complex, ComponentRecord, StrataDescription, StratumRecord};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SncError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("stratum {stratum}: {reason}")]
    ParentIncoherent { stratum: String, reason: String },
    #[error("stratum {stratum}: no parent given for index {index}")]
    MissingParent { stratum: String, index: usize },
    #[error("label {0} is used twice")]
    DuplicateLabel(String),
    #[error("stratum {stratum}: {reason}")]
    BadIndices { stratum: String, reason: String },
    #[error("levels must be given for all components or none")]
    PartialLevels,
    #[error("ray {0} is not a primitive integer vector")]
    NonPrimitiveRay(usize),
    #[error("cone {cone}: {reason}")]
    BadCone { cone: usize, reason: String },
    #[error("{0} is listed but its face {1} is not")]
    NotSubsetClosed(String, String),
    #[error("{0} is not a proper subset of the ground set")]
    NotProperSubset(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// Label `a.b.c` for an index set.
pub(crate) fn set_label(prefix: &str, set: &[usize]) -> String {
    let body: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{prefix}{}", body.join("."))
}
