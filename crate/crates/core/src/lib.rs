//! Exact symbolic computation of equivariant quantizations of positive
//! nilradicals inside quantized enveloping algebras.

pub mod acceptance;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod quant;
pub mod rep;
pub mod rmx;
pub mod scalar;
pub mod uq;

pub use error::{Error, Result};
pub use scalar::QScalar;
