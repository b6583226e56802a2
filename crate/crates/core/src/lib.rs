//! Unified multicarrier waveform simulation.
//!
//! Every waveform is expressed as a pair of matrices acting on a vectorized
//! symbol frame: the transmitter produces core samples `s = A_tx x`, a prefix
//! rule guards the frame against the channel's delay spread, and the receiver
//! maps the prefix-stripped samples back with `A_rx`. Two-dimensional frames
//! are vectorized column-major with the delay index running fastest.
//!
//! The crate is organised bottom-up:
//!
//! * [`transforms`] builds the unitary matrices and permutations.
//! * [`channel`] models dispersive channels and their effective matrices.
//! * [`waveforms`] assembles per-scheme operator bundles.
//! * [`detection`] maps bits to constellations and equalizes.
//! * [`kpi`] computes BER, PAPR, ambiguity-function and overhead metrics.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod detection;
pub mod error;
pub mod kpi;
pub mod linalg;
pub mod seed;
pub mod transforms;
pub mod waveforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<Complex64>;
