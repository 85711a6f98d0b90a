//! Membership tests for the affine and product-type classes, with witnesses,
//! and pairings of half-weight affine supports.

mod affine;
mod affine_space;
mod opposite;
mod product;

pub use affine::{check_affine, recognize_affine, AffineRejection, AffineRep};
pub use affine_space::{affine_support, is_triple_xor_closed, AffineSpace};
pub use opposite::{pairwise_opposite, OppositeChecks, OppositePairing};
pub use product::{check_product, recognize_product, ProductFactor, ProductRejection, ProductRep};
