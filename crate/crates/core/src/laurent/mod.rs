//! Exact arithmetic in `Z((t))` and its rational subring.

mod cramer;
mod growth;
mod matrix;
mod poly;
mod rational;
mod reconstruct;
mod series;

pub use cramer::{cramer_fraction, cramer_series, det_and_adjugate, det_one_minus_at, iterate_pairings, CramerFraction};
pub use growth::{coefficient_growth_check, exp_bracket, le_exp, log_between};
pub use matrix::{IntCovector, IntMatrix, IntVector};
pub use poly::Poly;
pub use rational::{expand_fraction, expand_rational, RationalFn};
pub use reconstruct::{berlekamp_massey, reconstruct_rational, Failure};
pub use series::LaurentSeries;

/// Default truncation order for expansions.
pub const DEFAULT_ORDER: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("denominator {0} does not have constant term 1")]
    DenominatorNotUnit(String),
}

/// `a op b` for `op ∈ {add, sub, mul}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

pub fn series_arith(a: &LaurentSeries, b: &LaurentSeries, op: SeriesOp) -> LaurentSeries {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
    }
}
