//! Brute-force contraction of grids and gates.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::Signature;

use super::grid::{Gate, Port, SignatureGrid};

/// Default cap on the number of summed Boolean variables.
pub const DEFAULT_EDGE_CAP: usize = 24;

/// How an edge relates the bits seen at its two endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSemantics {
    /// The endpoints take opposite bits (an orientation, or an implicit binary disequality).
    Disequality,
    /// The endpoints take the same bit (plain Holant edges).
    Equality,
}

struct Slot {
    vertex: usize,
    mask: usize,
    flip: bool,
}

struct Contraction<'a> {
    labels: Vec<&'a Signature>,
    /// Per variable in assignment order: the endpoints it drives.
    slots: Vec<Vec<Slot>>,
    /// Per variable in assignment order: vertices whose last variable it is.
    completes: Vec<Vec<usize>>,
    /// Output bit of each variable that is a dangling port.
    out_bit: Vec<Option<usize>>,
    partial: Vec<usize>,
    out: Vec<Scalar>,
}

impl Contraction<'_> {
    fn run(&mut self, level: usize, acc: Scalar, out_idx: usize) {
        if level == self.slots.len() {
            self.out[out_idx] += &acc;
            return;
        }
        for bit in 0..2usize {
            for s in &self.slots[level] {
                if bit ^ (s.flip as usize) == 1 {
                    self.partial[s.vertex] |= s.mask;
                }
            }
            let mut next = Some(acc.clone());
            for &v in &self.completes[level] {
                let w = self.labels[v].value(self.partial[v]);
                if w.is_zero() {
                    next = None;
                    break;
                }
                next = next.map(|a| a * w);
            }
            if let Some(a) = next {
                let idx = match self.out_bit[level] {
                    Some(b) if bit == 1 => out_idx | b,
                    _ => out_idx,
                };
                self.run(level + 1, a, idx);
            }
            for s in &self.slots[level] {
                self.partial[s.vertex] &= !s.mask;
            }
        }
    }
}

/// Sum the gate over all assignments of its internal edges, producing the
/// signature on its dangling ports (in declaration order).
///
/// No label checks are made; `cap` bounds internal edges plus dangling ports.
pub fn contract(gate: &Gate, semantics: EdgeSemantics, cap: usize) -> Result<Signature> {
    gate.validate()?;
    let nvars = gate.edges.len() + gate.dangling.len();
    if nvars > cap {
        return Err(Error::TooLarge(format!(
            "{} edges and {} dangling ports exceed the brute-force cap of {cap}",
            gate.edges.len(),
            gate.dangling.len()
        )));
    }
    if gate.dangling.len() > crate::signature::MAX_ARITY {
        return Err(Error::TooLarge("too many dangling ports".into()));
    }
    let labels: Vec<&Signature> = (0..gate.vertices.len()).map(|v| gate.label(v)).collect::<Result<_>>()?;
    let slot = |p: &Port, flip: bool| Slot {
        vertex: p.vertex,
        mask: 1usize << (labels[p.vertex].arity() - p.port),
        flip,
    };

    // Raw variables: dangling ports first, then edges.
    let d = gate.dangling.len();
    let mut raw: Vec<(Vec<Slot>, Option<usize>)> = Vec::with_capacity(nvars);
    for (k, p) in gate.dangling.iter().enumerate() {
        raw.push((vec![slot(p, false)], Some(1usize << (d - 1 - k))));
    }
    let flip = semantics == EdgeSemantics::Disequality;
    for (a, b) in &gate.edges {
        raw.push((vec![slot(a, false), slot(b, flip)], None));
    }

    // Assign variables vertex by vertex, always finishing next the vertex with
    // the fewest unassigned variables so that zero weights prune early.
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for (k, (slots, _)) in raw.iter().enumerate() {
        for s in slots {
            by_vertex[s.vertex].push(k);
        }
    }
    let mut order = Vec::with_capacity(nvars);
    let mut placed = vec![false; nvars];
    let mut finished = vec![false; labels.len()];
    while let Some(v) = (0..labels.len())
        .filter(|&v| !finished[v])
        .min_by_key(|&v| by_vertex[v].iter().filter(|&&k| !placed[k]).count())
    {
        finished[v] = true;
        for &k in &by_vertex[v] {
            if !placed[k] {
                placed[k] = true;
                order.push(k);
            }
        }
    }
    let mut position = vec![0usize; nvars];
    for (pos, &k) in order.iter().enumerate() {
        position[k] = pos;
    }
    let mut completes = vec![Vec::new(); nvars];
    let mut constant = Scalar::one();
    for (v, vars) in by_vertex.iter().enumerate() {
        match vars.iter().map(|&k| position[k]).max() {
            Some(last) => completes[last].push(v),
            None => constant *= labels[v].value(0),
        }
    }
    let mut raw: Vec<Option<(Vec<Slot>, Option<usize>)>> = raw.into_iter().map(Some).collect();
    let mut slots = Vec::with_capacity(nvars);
    let mut out_bit = Vec::with_capacity(nvars);
    for &k in &order {
        let (s, o) = raw[k].take().expect("each variable placed once");
        slots.push(s);
        out_bit.push(o);
    }

    let mut c = Contraction {
        labels,
        slots,
        completes,
        out_bit,
        partial: vec![0; gate.vertices.len()],
        out: vec![Scalar::zero(); 1 << d],
    };
    if !constant.is_zero() {
        c.run(0, constant, 0);
    }
    Ok(Signature::from_table(d, c.out))
}

fn closed_value(grid: &SignatureGrid, semantics: EdgeSemantics, cap: usize) -> Result<Scalar> {
    let sig = contract(&grid.as_gate(), semantics, cap)?;
    Ok(sig.value(0).clone())
}

/// Fail unless every label placed on a vertex is an EO signature.
pub fn check_eo_labels(grid: &SignatureGrid) -> Result<()> {
    for name in grid.used_labels() {
        let f = grid
            .signatures
            .get(name)
            .ok_or_else(|| Error::Format(format!("unknown signature {name:?}")))?;
        if !f.is_eo() {
            return Err(Error::Precondition(format!("signature {name:?} is not an EO signature")));
        }
    }
    Ok(())
}

/// Weighted count of Eulerian orientations: every edge is oriented, an
/// endpoint reads 0 when the edge points in, 1 when it points out.
pub fn eval_eo_grid(grid: &SignatureGrid) -> Result<Scalar> {
    eval_eo_grid_capped(grid, DEFAULT_EDGE_CAP)
}

pub fn eval_eo_grid_capped(grid: &SignatureGrid, cap: usize) -> Result<Scalar> {
    grid.validate()?;
    check_eo_labels(grid)?;
    closed_value(grid, EdgeSemantics::Disequality, cap)
}

/// Holant value with equality edges (each edge carries one bit seen by both ends).
pub fn eval_holant_bipartite(grid: &SignatureGrid) -> Result<Scalar> {
    eval_holant_bipartite_capped(grid, DEFAULT_EDGE_CAP)
}

pub fn eval_holant_bipartite_capped(grid: &SignatureGrid, cap: usize) -> Result<Scalar> {
    closed_value(grid, EdgeSemantics::Equality, cap)
}

/// Holant value with an implicit binary disequality on every edge, for arbitrary labels.
pub fn eval_holant_diseq(grid: &SignatureGrid) -> Result<Scalar> {
    closed_value(grid, EdgeSemantics::Disequality, DEFAULT_EDGE_CAP)
}

/// Signature realized by a gate whose internal edges carry binary disequalities.
pub fn eval_gate(gate: &Gate) -> Result<Signature> {
    contract(gate, EdgeSemantics::Disequality, DEFAULT_EDGE_CAP)
}

/// Subdivide every edge with a binary-disequality vertex. The result is a
/// bipartite grid whose equality-edge Holant value equals the EO value of `grid`.
pub fn two_stretch(grid: &SignatureGrid) -> SignatureGrid {
    let mut out = SignatureGrid {
        signatures: grid.signatures.clone(),
        vertices: grid.vertices.clone(),
        edges: Vec::with_capacity(2 * grid.edges.len()),
    };
    let name = match grid.signatures.iter().find(|(_, f)| **f == Signature::diseq2()) {
        Some((n, _)) => n.clone(),
        None => {
            let n = out.fresh_name("neq2");
            out.add_signature(n.clone(), Signature::diseq2());
            n
        }
    };
    for (a, b) in &grid.edges {
        let mid = out.add_vertex(name.clone());
        out.edges.push((*a, Port::new(mid, 1)));
        out.edges.push((Port::new(mid, 2), *b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::ops::{merge, tensor};

    fn one_vertex(f: Signature, pairs: &[(usize, usize)]) -> SignatureGrid {
        let mut g = SignatureGrid::new();
        g.add_signature("f", f);
        let v = g.add_vertex("f");
        for &(a, b) in pairs {
            g.connect((v, a), (v, b));
        }
        g
    }

    #[test]
    fn looped_diseq4_values() {
        let ne4 = Signature::disequality(2).unwrap();
        assert_eq!(eval_eo_grid(&one_vertex(ne4.clone(), &[(1, 3), (2, 4)])).unwrap(), Scalar::from_int(2));
        assert_eq!(eval_eo_grid(&one_vertex(ne4, &[(1, 2), (3, 4)])).unwrap(), Scalar::zero());
    }

    #[test]
    fn counts_balanced_orientations() {
        let f4 = Signature::from_fn(4, |i| Scalar::from_int((i.count_ones() == 2) as i64));
        let mut g = SignatureGrid::new();
        g.add_signature("f4", f4);
        let a = g.add_vertex("f4");
        let b = g.add_vertex("f4");
        for p in 1..=4 {
            g.connect((a, p), (b, p));
        }
        assert_eq!(eval_eo_grid(&g).unwrap(), Scalar::from_int(6));
        assert_eq!(eval_holant_bipartite(&two_stretch(&g)).unwrap(), Scalar::from_int(6));
    }

    #[test]
    fn eo_check_rejects_non_eo_labels() {
        let g = one_vertex(Signature::eq2(), &[(1, 2)]);
        assert!(matches!(eval_eo_grid(&g), Err(Error::Precondition(_))));
        assert_eq!(eval_holant_diseq(&g).unwrap(), Scalar::zero());
        assert_eq!(eval_holant_bipartite(&g).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn cap_is_enforced() {
        let g = one_vertex(Signature::disequality(2).unwrap(), &[(1, 3), (2, 4)]);
        assert!(matches!(eval_eo_grid_capped(&g, 1), Err(Error::TooLarge(_))));
    }

    #[test]
    fn gate_with_internal_loop_is_merge() {
        let ne4 = Signature::disequality(2).unwrap();
        let mut gate = one_vertex(ne4.clone(), &[(1, 2)]).as_gate();
        gate.dangling = vec![Port::new(0, 3), Port::new(0, 4)];
        assert_eq!(eval_gate(&gate).unwrap(), merge(&ne4, 1, 2).unwrap());
        assert!(eval_gate(&gate).unwrap().is_zero());
    }

    #[test]
    fn chain_of_two_diseq2() {
        // N · N · N = N.
        let mut g = SignatureGrid::new();
        g.add_signature("n", Signature::diseq2());
        let a = g.add_vertex("n");
        let b = g.add_vertex("n");
        g.connect((a, 2), (b, 1));
        let mut gate = g.as_gate();
        gate.dangling = vec![Port::new(a, 1), Port::new(b, 2)];
        assert_eq!(eval_gate(&gate).unwrap(), Signature::diseq2());
    }

    #[test]
    fn disconnected_gate_is_tensor() {
        let f = Signature::binary_i();
        let h = Signature::from_ints(2, &[0, 2, 3, 0]).unwrap();
        let mut gate = Gate::default();
        gate.signatures.insert("f".into(), f.clone());
        gate.signatures.insert("h".into(), h.clone());
        gate.vertices = vec!["f".into(), "h".into()];
        gate.dangling = vec![Port::new(0, 1), Port::new(0, 2), Port::new(1, 1), Port::new(1, 2)];
        assert_eq!(eval_gate(&gate).unwrap(), tensor(&f, &h).unwrap());
    }

    #[test]
    fn dangling_order_defines_variable_order() {
        let h = Signature::from_ints(2, &[0, 2, 3, 0]).unwrap();
        let mut gate = one_vertex(h, &[]).as_gate();
        gate.dangling = vec![Port::new(0, 2), Port::new(0, 1)];
        assert_eq!(eval_gate(&gate).unwrap(), Signature::from_ints(2, &[0, 3, 2, 0]).unwrap());
    }
}
