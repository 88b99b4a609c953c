//! Quantum-correlation toolkit for few-qubit pure states.
//!
//! The crate computes genuine multipartite entanglement (GGM), monogamy
//! scores with arbitrary exponent, and localizable quantum correlations, and
//! runs seeded Monte-Carlo surveys over Haar-random, W-class, Dicke and
//! generalized-GHZ ensembles.

pub mod ensembles;
pub mod error;
pub mod localize;
pub mod measures;
pub mod monogamy;
mod optim;
pub mod qstate;
pub mod survey;

pub use error::{QcError, Result};
pub use qstate::{Bipartition, DensityMatrix, MeasurementBasis, PureState};
