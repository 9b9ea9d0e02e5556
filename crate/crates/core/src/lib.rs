//! Exact computation with Jack polynomials and the Jack hypergeometric series `ₚF_q`, together
//! with the lowering, raising and eigen-operators that characterize those series.
//!
//! All arithmetic is over exact rationals. The Jack parameter `α` and the series parameters are
//! instantiated at rational points; identities in those parameters are certified by exact
//! agreement at several independent random points.

pub mod error;
pub mod jack;
pub mod operators;
pub mod partitions;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod solver;
pub mod sympoly;

pub use error::{Error, Result};
pub use jack::JackForm;
pub use partitions::{ParamSet, Partition};
pub use scalar::{rat, Rational, UniSeries};
pub use sympoly::{BiPoly, SymPoly};
pub use operators::{EigenOp, OpExpr};
pub use series::{DiagSeries, Family, JackSeries};
pub use solver::{Residual, SliceKey};
