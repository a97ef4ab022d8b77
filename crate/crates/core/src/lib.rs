//! Exact computations for isotropic subspaces of multilinear maps over
//! finite fields.

pub mod boxfree;
pub mod cli;
pub mod error;
pub mod field;
pub mod formulas;
pub mod grassmann;
pub mod interp;
pub mod isotropy;
pub mod linalg;
pub mod oracle;
pub mod rank;
pub mod rng;
pub mod selftest;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Elem, Embedding, Field, FieldSpec};
pub use grassmann::{Grassmannian, Subspace};
pub use rng::SplitMix64;
pub use tensor::{AltTensor, AnyTensor, Tensor, TensorFile, TensorKind};
