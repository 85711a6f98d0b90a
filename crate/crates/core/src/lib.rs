//! Exact signature calculus for weighted Eulerian-orientation counting.
//!
//! Signatures are dense tables over ℚ(i, √2). On top of them the crate
//! provides gadget operations, unique prime factorization, recognizers and
//! fast evaluators for the affine and product-type classes, a classifier for
//! EO signatures with arrow reversal symmetry, and encodings between counting
//! CSP instances and Eulerian-orientation grids.

pub mod error;
pub mod evaluators;
pub mod factorization;
pub mod gadgets;
pub mod io;
pub mod recognizers;
pub mod scalar;
pub mod selftest;
pub mod signature;
pub mod transform;
pub mod appendix;
pub mod bridges;
pub mod classifier;
pub mod random;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use signature::{Signature, SupportSet};
