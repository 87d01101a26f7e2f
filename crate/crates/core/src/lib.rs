//! Exact-arithmetic toolkit for sumsets of sets with distinct consecutive
//! differences: constructions, energies, instrumented pigeonhole arguments
//! and a search for sets with small `|A + A|`.

pub mod constructions;
pub mod energy;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod proofscope;
pub mod random;
pub mod record;
pub mod search;
pub mod setfile;
pub mod sets;

pub use error::{Error, Result};
pub use record::{Threshold, VerificationRecord};
pub use sets::{DiffProfile, GroundSet};
