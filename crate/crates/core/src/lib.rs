//! Symmetry-classified spectra of a few identical particles in one-dimensional traps.

pub mod error;
pub mod interactions;
pub mod io;
pub mod linalg;
pub mod spectra;
pub mod spinstats;
pub mod symgroup;
pub mod unitary;

pub use error::{Error, Result};
