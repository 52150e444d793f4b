//! Homotopy-preserving moves on dual complexes: stellar subdivision, the
//! three blowup cases, puckering, and the discrete Morse flow that undoes a
//! cone attachment.

mod cone;
mod morse;
mod script;
mod stellar;

use thiserror::Error;

use crate::complex::{Complex, ComplexBuilder, ComplexError, FaceId, FaceSpec, Level};

pub use cone::attach_cone;
pub use morse::{morse_flow_ve, MorseFlow};
pub use script::{run_blowup_script, BlowupScript, ScriptRun, StepLog};
pub use stellar::{stellar_subdivide, stellar_subdivide_with};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid descriptor: {0}")]
    DescriptorInvalid(String),
    #[error("face {0} has more than one partner under the flow")]
    PairingNotUnique(String),
    #[error("face {0} has no partner under the flow")]
    PairingIncomplete(String),
    #[error("the flow matching has a directed cycle")]
    MatchingNotAcyclic,
    #[error("contracting onto the pivot vertex fails at face {0}")]
    ContractionNotInjective(String),
    #[error("face {0} is not maximal")]
    NotMaximal(String),
    #[error("multiplicity {0} is below 1")]
    BadMultiplicity(usize),
    #[error("step {step}: homology changed{}", level.map_or(String::new(), |m| format!(" at level {m}")))]
    HomologyChanged { step: usize, level: Option<Level> },
    #[error("step {step}: {source}")]
    StepFailed {
        step: usize,
        source: Box<TransformError>,
    },
    #[error("malformed script: {0}")]
    Parse(String),
}

/// One blowup move, with faces named by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepanovDescriptor {
    /// The center meets no stratum properly: nothing changes.
    Trivial,
    /// The center is a stratum: stellar subdivision along its face.
    Stellar {
        face: String,
        level: Option<Level>,
        label: Option<String>,
    },
    /// The center lies inside the stratum of `base`: a new vertex coned over
    /// the closure of `attach`, flowing back onto `pivot`.
    Cone {
        base: String,
        attach: Vec<String>,
        pivot: String,
        level: Option<Level>,
        label: Option<String>,
    },
}

impl StepanovDescriptor {
    pub fn case(&self) -> u8 {
        match self {
            StepanovDescriptor::Trivial => 1,
            StepanovDescriptor::Stellar { .. } => 2,
            StepanovDescriptor::Cone { .. } => 3,
        }
    }
}

/// Applies a blowup move; the new vertex is labeled `"E"` unless the
/// descriptor names it.
pub fn stepanov_move(c: &Complex, d: &StepanovDescriptor) -> Result<Complex, TransformError> {
    apply(c, d, "E")
}

pub(crate) fn apply(
    c: &Complex,
    d: &StepanovDescriptor,
    default_label: &str,
) -> Result<Complex, TransformError> {
    match d {
        StepanovDescriptor::Trivial => Ok(c.clone()),
        StepanovDescriptor::Stellar { face, level, label } => {
            let sigma = c.find_label(face)?;
            let label = label.as_deref().unwrap_or(default_label);
            stellar_subdivide_with(c, sigma, label, *level)
        }
        StepanovDescriptor::Cone {
            base,
            attach,
            pivot,
            level,
            label,
        } => {
            let base = c.find_label(base)?;
            let attach = attach
                .iter()
                .map(|l| c.find_label(l))
                .collect::<Result<Vec<_>, _>>()?;
            let pivot = c.find_label(pivot)?;
            let label = label.as_deref().unwrap_or(default_label);
            attach_cone(c, base, &attach, pivot, *level, label)
        }
    }
}

/// Attaches `d - 1` further copies of the maximal face `sigma` along its
/// boundary, labeled `"{sigma}#2"` and up.
pub fn pucker(c: &Complex, sigma: FaceId, d: usize) -> Result<Complex, TransformError> {
    if sigma.0 >= c.len() {
        return Err(ComplexError::NoSuchFace(sigma.to_string()).into());
    }
    let face = c.face(sigma);
    if !c.is_maximal(sigma) {
        return Err(TransformError::NotMaximal(face.label().to_string()));
    }
    if d < 1 {
        return Err(TransformError::BadMultiplicity(d));
    }
    let mut builder = ComplexBuilder::new();
    for f in c.faces() {
        builder.add(spec_of(f));
    }
    for copy in 2..=d {
        let mut spec = spec_of(face);
        spec.label = format!("{}#{copy}", face.label());
        builder.add(spec);
    }
    Ok(builder.build()?)
}

/// Builder description of an existing face, with ids as builder indices.
pub(crate) fn spec_of(f: &crate::complex::Face) -> FaceSpec {
    FaceSpec {
        label: f.label().to_string(),
        dim: f.dim(),
        facets: f.facets().iter().map(|x| x.0).collect(),
        delta: if f.dim() > 0 {
            f.delta_facets().map(|d| d.iter().map(|x| x.0).collect())
        } else {
            None
        },
        level: f.level(),
    }
}
