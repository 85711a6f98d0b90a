use crate::error::{Error, Result};
use crate::signature::Signature;

use super::grid::{Gate, Port};

/// The canonical disequality of the given even arity: 1 on `0^k1^k` and `1^k0^k`.
pub fn build_diseq(arity: usize) -> Result<Signature> {
    if arity == 0 || arity % 2 != 0 {
        return Err(Error::Precondition(format!("disequality arity must be even and positive, got {arity}")));
    }
    Signature::disequality(arity / 2)
}

/// A gate of `k` copies of the arity-4 disequality realizing the arity-`2k+2` one.
///
/// Copy `j` has ports `(a_j, b_j, c_j, d_j)`; `d_{j-1}` is joined to `a_j`.
/// Dangling order `a_1, b_1, …, b_k, c_1, …, c_k, d_k` makes the realized
/// signature exactly the canonical disequality.
pub fn realize_diseq_chain(k: usize) -> Result<Gate> {
    if k == 0 {
        return Err(Error::Precondition("chain length must be at least 1".into()));
    }
    if 2 * k + 2 > crate::signature::MAX_ARITY {
        return Err(Error::TooLarge(format!("a chain of {k} copies exceeds the arity limit")));
    }
    let mut gate = Gate::default();
    gate.signatures.insert("neq4".into(), Signature::disequality(2)?);
    gate.vertices = vec!["neq4".to_string(); k];
    for j in 1..k {
        gate.edges.push((Port::new(j - 1, 4), Port::new(j, 1)));
    }
    gate.dangling.push(Port::new(0, 1));
    gate.dangling.extend((0..k).map(|j| Port::new(j, 2)));
    gate.dangling.extend((0..k).map(|j| Port::new(j, 3)));
    gate.dangling.push(Port::new(k - 1, 4));
    Ok(gate)
}
