use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gadgets::{EdgeSemantics, Port, SignatureGrid};
use crate::scalar::Scalar;
use crate::signature::{full_mask, Signature};
use crate::transform::tilde;

use super::ScaledGrid;

/// Largest number of variables [`csp_eval_bruteforce`] enumerates.
pub const CSP_VAR_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspConstraint {
    pub sig: String,
    /// Variable indices, repetition allowed; length equals the signature's arity.
    pub vars: Vec<usize>,
}

/// A counting CSP instance: `Σ_x Π_c sig_c(x restricted to vars_c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CspInstance {
    pub num_vars: usize,
    pub signatures: BTreeMap<String, Signature>,
    pub constraints: Vec<CspConstraint>,
}

impl CspInstance {
    pub fn signature(&self, c: &CspConstraint) -> Result<&Signature> {
        self.signatures
            .get(&c.sig)
            .ok_or_else(|| Error::Format(format!("constraint uses unknown signature {:?}", c.sig)))
    }

    pub fn validate(&self) -> Result<()> {
        for (k, c) in self.constraints.iter().enumerate() {
            let f = self.signature(c)?;
            if f.arity() != c.vars.len() {
                return Err(Error::Format(format!(
                    "constraint {k} applies {:?} of arity {} to {} variables",
                    c.sig,
                    f.arity(),
                    c.vars.len()
                )));
            }
            if let Some(&v) = c.vars.iter().find(|&&v| v >= self.num_vars) {
                return Err(Error::OutOfRange(format!("constraint {k} uses variable {v} of {}", self.num_vars)));
            }
        }
        Ok(())
    }

    /// Occurrences `(constraint, position)` of each variable, in instance order.
    pub fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.num_vars];
        for (c, con) in self.constraints.iter().enumerate() {
            for (j, &v) in con.vars.iter().enumerate() {
                occ[v].push((c, j));
            }
        }
        occ
    }
}

/// Exact sum over all `2^num_vars` assignments.
pub fn csp_eval_bruteforce(inst: &CspInstance) -> Result<Scalar> {
    inst.validate()?;
    if inst.num_vars > CSP_VAR_CAP {
        return Err(Error::TooLarge(format!(
            "{} variables exceed the brute-force cap of {CSP_VAR_CAP}",
            inst.num_vars
        )));
    }
    let sigs: Vec<&Signature> = inst.constraints.iter().map(|c| inst.signature(c)).collect::<Result<_>>()?;
    let mut total = Scalar::zero();
    for x in 0..1usize << inst.num_vars {
        let mut acc = Scalar::one();
        for (c, f) in inst.constraints.iter().zip(&sigs) {
            let idx = c.vars.iter().fold(0usize, |i, &v| (i << 1) | ((x >> v) & 1));
            let w = f.value(idx);
            if w.is_zero() {
                acc = Scalar::zero();
                break;
            }
            acc *= w;
        }
        total += acc;
    }
    Ok(total)
}

/// Whether an edge of the encoding carries a variable occurrence or closes its circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Solid,
    Dashed,
}

/// An EO grid encoding a CSP instance, with the bookkeeping needed to check its shape.
#[derive(Clone, Debug)]
pub struct CspEncoding {
    pub scaled: ScaledGrid,
    /// Per grid edge.
    pub edge_kinds: Vec<EdgeKind>,
    /// Per CSP variable: its split vertices `u¹…uᵏ` in occurrence order.
    pub variable_vertices: Vec<Vec<usize>>,
    /// Per CSP constraint: its vertex.
    pub constraint_vertices: Vec<usize>,
    /// Per CSP variable: its circuit as edge indices `e¹, ē¹, e², ē², …`.
    pub circuits: Vec<Vec<usize>>,
}

/// `base`, or `base_k` for the first `k` that is not yet taken.
pub(crate) fn fresh(existing: impl Fn(&str) -> bool, base: &str) -> String {
    if !existing(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !existing(n))
        .expect("unbounded")
}

/// Encode a CSP instance as an EO grid over tilde images.
///
/// Each variable of degree `k` becomes `k` binary-disequality vertices `u^i`;
/// its `i`-th occurrence edge `e^i` joins `u^i` to the first-half port of the
/// constraint's tilde image, and `ē^i` joins `u^{i+1}` (cyclically) to the
/// paired second-half port. Degree-0 variables contribute a factor 2 each to
/// the scale.
pub fn csp_to_eo(inst: &CspInstance) -> Result<CspEncoding> {
    inst.validate()?;
    let mut grid = SignatureGrid::new();
    let mut tilde_names = BTreeMap::new();
    for (name, g) in &inst.signatures {
        let tname = format!("~{name}");
        grid.add_signature(tname.clone(), tilde(g)?);
        tilde_names.insert(name.clone(), tname);
    }
    let neq = fresh(|n| grid.signatures.contains_key(n), "neq2");
    grid.add_signature(neq.clone(), Signature::diseq2());

    let constraint_vertices: Vec<usize> = inst
        .constraints
        .iter()
        .map(|c| grid.add_vertex(tilde_names[&c.sig].clone()))
        .collect();
    let mut scale = Scalar::one();
    let mut edge_kinds = Vec::new();
    let mut variable_vertices = Vec::with_capacity(inst.num_vars);
    let mut circuits = Vec::with_capacity(inst.num_vars);
    for occ in inst.occurrences() {
        let k = occ.len();
        if k == 0 {
            scale *= Scalar::from_int(2);
            variable_vertices.push(Vec::new());
            circuits.push(Vec::new());
            continue;
        }
        let us: Vec<usize> = (0..k).map(|_| grid.add_vertex(neq.clone())).collect();
        let mut circuit = Vec::with_capacity(2 * k);
        for (i, &(c, j)) in occ.iter().enumerate() {
            let v = constraint_vertices[c];
            let n = inst.constraints[c].vars.len();
            grid.connect((us[i], 1), (v, j + 1));
            edge_kinds.push(EdgeKind::Solid);
            circuit.push(grid.edges.len() - 1);
            grid.connect((us[(i + 1) % k], 2), (v, n + j + 1));
            edge_kinds.push(EdgeKind::Dashed);
            circuit.push(grid.edges.len() - 1);
        }
        variable_vertices.push(us);
        circuits.push(circuit);
    }
    Ok(CspEncoding {
        scaled: ScaledGrid { grid, scale, semantics: EdgeSemantics::Disequality },
        edge_kinds,
        variable_vertices,
        constraint_vertices,
        circuits,
    })
}

/// `g` with `g̃ = f`, if `f` is a tilde image.
pub fn untilde(f: &Signature) -> Option<Signature> {
    if f.arity() % 2 != 0 {
        return None;
    }
    let n = f.arity() / 2;
    let m = full_mask(n);
    let g = Signature::from_fn(n, |x| f.value((x << n) | (x ^ m)).clone());
    (tilde(&g).ok()? == *f).then_some(g)
}

/// Decode an EO grid over tilde images into a CSP instance of the same value.
///
/// Following paired ports (`j` with `n + j`) splits the edges into circuits;
/// each circuit is one Boolean variable. A first-half port entered against
/// the circuit's direction reads the complement, which is expressed by a fresh
/// variable tied to the circuit variable through a binary disequality.
/// Vertices whose label is the binary disequality only carry circuits.
pub fn eo_to_csp(grid: &SignatureGrid) -> Result<CspInstance> {
    grid.validate()?;
    let mut bases: BTreeMap<&str, Signature> = BTreeMap::new();
    for name in grid.used_labels() {
        let f = &grid.signatures[name];
        let g = untilde(f)
            .ok_or_else(|| Error::Precondition(format!("signature {name:?} is not the tilde image of a function")))?;
        bases.insert(name, g);
    }
    let mut partner_edge: BTreeMap<Port, usize> = BTreeMap::new();
    for (e, (a, b)) in grid.edges.iter().enumerate() {
        partner_edge.insert(*a, e);
        partner_edge.insert(*b, e);
    }
    let arity = |v: usize| grid.signatures[&grid.vertices[v]].arity();
    let pair_of = |p: Port| {
        let n = arity(p.vertex) / 2;
        Port::new(p.vertex, if p.port <= n { p.port + n } else { p.port - n })
    };

    // first_half[v][j] = (circuit variable, complemented).
    let mut first_half: Vec<Vec<Option<(usize, bool)>>> =
        (0..grid.vertices.len()).map(|v| vec![None; arity(v) / 2]).collect();
    let mut visited = vec![false; grid.edges.len()];
    let mut num_vars = 0usize;
    for start in 0..grid.edges.len() {
        if visited[start] {
            continue;
        }
        let var = num_vars;
        num_vars += 1;
        let mut e = start;
        let mut enter = grid.edges[start].1;
        loop {
            visited[e] = true;
            let n = arity(enter.vertex) / 2;
            let (j, complemented) = if enter.port <= n { (enter.port, false) } else { (enter.port - n, true) };
            first_half[enter.vertex][j - 1] = Some((var, complemented));
            let leave = pair_of(enter);
            e = partner_edge[&leave];
            let (a, b) = grid.edges[e];
            enter = if a == leave { b } else { a };
            if e == start {
                break;
            }
        }
    }

    let mut inst = CspInstance { num_vars, signatures: BTreeMap::new(), constraints: Vec::new() };
    let neq = fresh(|n| bases.contains_key(n), "neq2");
    let mut flipped: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, name) in grid.vertices.iter().enumerate() {
        let g = &bases[name.as_str()];
        if g.arity() == 1 && g.value(0).is_one() && g.value(1).is_one() {
            continue;
        }
        let mut vars = Vec::with_capacity(g.arity());
        for slot in &first_half[v] {
            let (x, complemented) = slot.expect("every pair lies on a circuit");
            if complemented {
                let y = *flipped.entry(x).or_insert_with(|| {
                    inst.num_vars += 1;
                    inst.num_vars - 1
                });
                vars.push(y);
            } else {
                vars.push(x);
            }
        }
        inst.signatures.entry(name.clone()).or_insert_with(|| g.clone());
        inst.constraints.push(CspConstraint { sig: name.clone(), vars });
    }
    if !flipped.is_empty() {
        inst.signatures.insert(neq.clone(), Signature::diseq2());
        for (&x, &y) in &flipped {
            inst.constraints.push(CspConstraint { sig: neq.clone(), vars: vec![x, y] });
        }
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(sig: Signature, vars: Vec<usize>, num_vars: usize) -> CspInstance {
        let mut signatures = BTreeMap::new();
        signatures.insert("g".to_string(), sig);
        CspInstance { num_vars, signatures, constraints: vec![CspConstraint { sig: "g".into(), vars }] }
    }

    #[test]
    fn brute_force_examples() {
        let inst = single(Signature::unary(Scalar::one(), Scalar::from_int(2)), vec![0], 1);
        assert_eq!(csp_eval_bruteforce(&inst).unwrap(), Scalar::from_int(3));
        let mut eq = single(Signature::eq2(), vec![0, 1], 2);
        eq.constraints.push(eq.constraints[0].clone());
        assert_eq!(csp_eval_bruteforce(&eq).unwrap(), Scalar::from_int(2));
        let empty = CspInstance { num_vars: 3, ..Default::default() };
        assert_eq!(csp_eval_bruteforce(&empty).unwrap(), Scalar::from_int(8));
    }

    #[test]
    fn degree_one_encoding() {
        let inst = single(Signature::unary(Scalar::one(), Scalar::from_int(2)), vec![0], 1);
        let enc = csp_to_eo(&inst).unwrap();
        let g = &enc.scaled.grid;
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(enc.scaled.value(24).unwrap(), Scalar::from_int(3));
        let back = eo_to_csp(g).unwrap();
        assert_eq!(back.num_vars, 1);
        assert_eq!(back.constraints.len(), 1);
        assert_eq!(csp_eval_bruteforce(&back).unwrap(), Scalar::from_int(3));
    }

    #[test]
    fn empty_instance_scales() {
        let empty = CspInstance { num_vars: 2, ..Default::default() };
        let enc = csp_to_eo(&empty).unwrap();
        assert_eq!(enc.scaled.scale, Scalar::from_int(4));
        assert_eq!(enc.scaled.value(24).unwrap(), Scalar::from_int(4));
    }

    #[test]
    fn reversed_visit_emits_a_flip() {
        // A loop joining the two halves of a tilde pair in the opposite direction.
        let g = Signature::unary(Scalar::one(), Scalar::from_int(5));
        let mut grid = SignatureGrid::new();
        grid.add_signature("t", tilde(&g).unwrap());
        grid.add_signature("n", Signature::diseq2());
        let t = grid.add_vertex("t");
        let u = grid.add_vertex("n");
        grid.connect((u, 1), (t, 2));
        grid.connect((t, 1), (u, 2));
        let inst = eo_to_csp(&grid).unwrap();
        assert!(inst.constraints.iter().any(|c| c.sig == "neq2"));
        assert_eq!(
            csp_eval_bruteforce(&inst).unwrap(),
            crate::gadgets::eval_eo_grid(&grid).unwrap()
        );
    }

    #[test]
    fn non_tilde_label_is_rejected() {
        let mut grid = SignatureGrid::new();
        grid.add_signature("x", Signature::from_ints(2, &[0, 1, 1, 1]).unwrap());
        grid.add_vertex("x");
        grid.connect((0, 1), (0, 2));
        assert!(matches!(eo_to_csp(&grid), Err(Error::Precondition(_))));
    }
}
