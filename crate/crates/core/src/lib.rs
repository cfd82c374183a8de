//! Novikov incidence coefficients of circle-valued Morse systems.
//!
//! [`laurent`] holds exact series arithmetic and the closed-form Cramer
//! engine.

pub mod battery;
pub mod complex;
pub mod flow;
pub mod io;
pub mod laurent;
pub mod par;
pub mod pipeline;
pub mod semilinear;
pub mod twisted;
