//! Construction and exhaustive verification of quantum convolutional
//! stabilizer codes built from generalized Reed-Solomon and Reed-Muller
//! convolutional codes.

pub mod budget;
pub mod error;
pub mod galois;
pub mod grs;
pub mod linalg;
pub mod polymat;
pub mod report;
pub mod rm;
pub mod stabilizer;
pub mod weight;

pub use budget::{Budget, Meter};
pub use error::{Error, OrthogonalityWitness, Result};
pub use galois::{ExtensionPair, Field, FieldElement, FieldSpec};
