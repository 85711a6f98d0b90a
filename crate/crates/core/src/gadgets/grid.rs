use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::signature::Signature;

/// One variable slot of one vertex. Vertices are 0-based, ports 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub vertex: usize,
    pub port: usize,
}

impl Port {
    pub fn new(vertex: usize, port: usize) -> Self {
        Port { vertex, port }
    }
}

/// An edge joining two ports; both may belong to the same vertex (a loop).
pub type Edge = (Port, Port);

/// A closed multigraph with signature-labeled vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignatureGrid {
    pub signatures: BTreeMap<String, Signature>,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

/// A grid with some ports left dangling; the dangling order defines the
/// variable order of the realized signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gate {
    pub signatures: BTreeMap<String, Signature>,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub dangling: Vec<Port>,
}

fn label<'a>(signatures: &'a BTreeMap<String, Signature>, vertices: &[String], v: usize) -> Result<&'a Signature> {
    let name = vertices
        .get(v)
        .ok_or_else(|| Error::OutOfRange(format!("vertex {v} does not exist")))?;
    signatures
        .get(name)
        .ok_or_else(|| Error::Format(format!("vertex {v} uses unknown signature {name:?}")))
}

/// Every port is covered exactly once by edge endpoints and dangling ports.
fn validate_parts(
    signatures: &BTreeMap<String, Signature>,
    vertices: &[String],
    edges: &[Edge],
    dangling: &[Port],
) -> Result<()> {
    let mut used: Vec<Vec<bool>> = Vec::with_capacity(vertices.len());
    for v in 0..vertices.len() {
        let f = label(signatures, vertices, v)?;
        if f.arity() == 0 {
            return Err(Error::Format(format!("vertex {v} has no ports")));
        }
        used.push(vec![false; f.arity() + 1]);
    }
    let endpoints = edges.iter().flat_map(|(a, b)| [a, b]).chain(dangling.iter());
    for p in endpoints {
        let slots = used
            .get_mut(p.vertex)
            .ok_or_else(|| Error::OutOfRange(format!("vertex {} does not exist", p.vertex)))?;
        if p.port == 0 || p.port >= slots.len() {
            return Err(Error::OutOfRange(format!(
                "port {} of vertex {} (arity {})",
                p.port,
                p.vertex,
                slots.len() - 1
            )));
        }
        if slots[p.port] {
            return Err(Error::Format(format!("port {} of vertex {} is used twice", p.port, p.vertex)));
        }
        slots[p.port] = true;
    }
    for (v, slots) in used.iter().enumerate() {
        if let Some(k) = (1..slots.len()).find(|&k| !slots[k]) {
            return Err(Error::Format(format!("port {k} of vertex {v} is not connected")));
        }
    }
    Ok(())
}

impl SignatureGrid {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a signature under `name` (replacing any previous one).
    pub fn add_signature(&mut self, name: impl Into<String>, f: Signature) {
        self.signatures.insert(name.into(), f);
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn connect(&mut self, a: (usize, usize), b: (usize, usize)) {
        self.edges.push((Port::new(a.0, a.1), Port::new(b.0, b.1)));
    }

    pub fn label(&self, v: usize) -> Result<&Signature> {
        label(&self.signatures, &self.vertices, v)
    }

    pub fn validate(&self) -> Result<()> {
        validate_parts(&self.signatures, &self.vertices, &self.edges, &[])
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// View as a gate with no dangling ports.
    pub fn as_gate(&self) -> Gate {
        Gate {
            signatures: self.signatures.clone(),
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            dangling: Vec::new(),
        }
    }

    /// Names of the signatures actually placed on vertices, without repeats.
    pub fn used_labels(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        names.sort_unstable();
        names.dedup();
        names
    }

    /// A signature name not yet present, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.signatures.contains_key(base) {
            return base.to_string();
        }
        (2..).map(|k| format!("{base}_{k}")).find(|n| !self.signatures.contains_key(n)).unwrap()
    }
}

impl Gate {
    pub fn validate(&self) -> Result<()> {
        validate_parts(&self.signatures, &self.vertices, &self.edges, &self.dangling)
    }

    pub fn label(&self, v: usize) -> Result<&Signature> {
        label(&self.signatures, &self.vertices, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn looped_diseq4(pairs: [(usize, usize); 2]) -> SignatureGrid {
        let mut g = SignatureGrid::new();
        g.add_signature("ne4", Signature::disequality(2).unwrap());
        let v = g.add_vertex("ne4");
        for (a, b) in pairs {
            g.connect((v, a), (v, b));
        }
        g
    }

    #[test]
    fn validation_catches_bad_ports() {
        assert!(looped_diseq4([(1, 3), (2, 4)]).validate().is_ok());
        let g = looped_diseq4([(1, 3), (2, 3)]);
        assert!(matches!(g.validate(), Err(Error::Format(_))));
        let g = looped_diseq4([(1, 3), (2, 5)]);
        assert!(matches!(g.validate(), Err(Error::OutOfRange(_))));
        let mut g = looped_diseq4([(1, 3), (2, 4)]);
        g.add_vertex("missing");
        assert!(g.validate().is_err());
    }

    #[test]
    fn unconnected_port_is_rejected() {
        let mut g = SignatureGrid::new();
        g.add_signature("ne4", Signature::disequality(2).unwrap());
        let v = g.add_vertex("ne4");
        g.connect((v, 1), (v, 2));
        assert!(g.validate().is_err());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut g = SignatureGrid::new();
        g.add_signature("neq2", Signature::diseq2());
        assert_eq!(g.fresh_name("neq2"), "neq2_2");
        assert_eq!(g.fresh_name("other"), "other");
    }
}
