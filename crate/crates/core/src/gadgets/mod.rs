//! Gadget calculus: merging, pinning, tensoring, mating, and grid evaluation.

mod diseq;
mod eval;
mod grid;
mod ops;

pub use diseq::{build_diseq, realize_diseq_chain};
pub use eval::{
    check_eo_labels, contract, eval_eo_grid, eval_eo_grid_capped, eval_gate, eval_holant_bipartite,
    eval_holant_bipartite_capped, eval_holant_diseq, two_stretch, EdgeSemantics, DEFAULT_EDGE_CAP,
};
pub use grid::{Edge, Gate, Port, SignatureGrid};
pub use ops::{full_mate, mate, merge, merge_pairs, merge_to_scalar, pin, tensor, MateMatrix};
pub(crate) use ops::remaining_vars;
