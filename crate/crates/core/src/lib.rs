//! Construction, classification and verification of [1,0]-twisted
//! generalized Reed-Solomon codes over finite fields.

pub mod constructions;
pub mod galois;
pub mod lincode;
pub mod matgf;
pub mod tgrs;
pub mod verify;

pub use galois::{Elem, Field, FieldError};
pub use lincode::{LinearCode, WeightDistribution};
pub use matgf::MatrixGF;
pub use tgrs::TgrsParams;
