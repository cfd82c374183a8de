//! Morse and Novikov chain complexes and incidence coefficients.

mod cyclic;
mod equivariant;
mod morse;
pub mod snf;

pub use cyclic::{
    acyclicity_certificate, assemble_novikov_complex, incidence_rational, incidence_series, rational_boundaries,
    AcyclicityCertificate, ChainComplexNov, CritPoint, CyclicMorseData, NovD2Witness, NovEntry,
};
pub use equivariant::{
    assemble_equivariant_complex, base_change, equivariant_incidence, shifted_lift_incidence, EquivariantMorseData,
};
pub use morse::{build_morse_complex, homology_z, ChainComplexZ, D2Witness, HomologyGroup, MorseData};

use crate::laurent::LaurentError;
use crate::semilinear::SemilinearError;
use crate::twisted::TwistedError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("unknown critical point {0}")]
    UnknownPoint(String),
    #[error("ind {x} must equal ind {y} + 1")]
    IndexMismatch { x: String, y: String },
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("d^2 != 0 in degree {}: entry ({}, {}) = {}", .0.degree, .0.row, .0.col, .0.value)]
    D2Violation(D2Witness),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
}
