//! Exact multilinear algebra for the projective second fundamental forms of
//! homogeneous varieties.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] exact rational and modular linear algebra, subspaces and flat
//!   limits of polynomial families of subspaces;
//! * [`symtensor`] symmetric tensors in the polynomial convention, tensor
//!   systems and normal-bundle valued forms;
//! * [`models`] the model quadric systems, octonion/Jordan arithmetic and
//!   polynomial charts with their fundamental forms;
//! * [`quadcalc`] prolongation, `Ann(v)`, `Singloc`, quotient systems;
//! * [`rigidity`] order-by-order obstruction spaces built from the frame
//!   structure equations;
//! * [`stability`] one-parameter degenerations and fingerprints.

pub mod error;
pub mod linalg;
pub mod models;
pub mod quadcalc;
pub mod rigidity;
pub mod stability;
pub mod symtensor;

pub use error::{Error, Result};
pub use linalg::{Mat, Mode, PolyScalar, Scalar, Subspace};
pub use models::ModelSpec;
pub use symtensor::{NValuedForm, QuadricSystem, SymTensor, TensorSystem};
