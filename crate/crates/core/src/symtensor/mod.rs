//! Symmetric tensors on `T*` in the polynomial convention.
//!
//! A degree-`d` symmetric tensor is stored as the coefficient vector of the
//! homogeneous polynomial it defines, indexed by exponent vectors. Polarized
//! (multilinear) values are recovered by dividing by multinomial
//! coefficients.

mod monomial;
mod nform;
mod system;
mod tensor;

pub use monomial::{binomial, multinomial, MonomialBasis};
pub use nform::NValuedForm;
pub use system::{QuadricSystem, TensorSystem};
pub use tensor::{symmetrize, FullTensor, SymTensor};
