//! Group rings and Novikov completions for `G = Z^m ⋊_Φ Z`.

mod algebra;
mod group;
mod matrix;
mod novikov;
mod typel;

pub use algebra::{conj_by_theta, l1_norm, ConjDir, GroupAlgebraElt};
pub use group::{GroupElt, TwistedGroup};
pub use matrix::{nov_from_level, nov_identity, nov_matmul, nov_sandwich, NovikovMatrix};
pub use novikov::{check_exponential_growth, NovikovElt, ZgElement};
pub use typel::{expand_type_l, growth_constants_for_type_l, GrowthCertificate, TypeLElement};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix entry is not of the form (ZH)·θ")]
    WrongLevel,
    #[error("monodromy is not invertible over Z")]
    NotInvertible,
    #[error("level {level} lies below the known truncation -{trunc}")]
    BelowTruncation { level: i64, trunc: i64 },
    #[error("exponent does not fit in 64 bits")]
    Overflow,
}
