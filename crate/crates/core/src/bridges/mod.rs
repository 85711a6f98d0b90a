//! Encodings between counting CSP instances, EO grids and bipartite Holant grids.

mod csp;
mod reductions;

pub use csp::{
    csp_eval_bruteforce, csp_to_eo, eo_to_csp, untilde, CspConstraint, CspEncoding, CspInstance, EdgeKind, CSP_VAR_CAP,
};
pub use reductions::{opposite_reduction, square_reduction, OppositeReduction, VariableClassMap};

use crate::error::Result;
use crate::gadgets::{contract, EdgeSemantics, SignatureGrid};
use crate::scalar::Scalar;

/// A closed grid whose value is `scale` times its contraction under `semantics`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledGrid {
    pub grid: SignatureGrid,
    pub scale: Scalar,
    pub semantics: EdgeSemantics,
}

impl ScaledGrid {
    /// Brute-force value, summing over at most `cap` edges.
    pub fn value(&self, cap: usize) -> Result<Scalar> {
        let sig = contract(&self.grid.as_gate(), self.semantics, cap)?;
        Ok(sig.value(0) * &self.scale)
    }
}
