use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::gadgets::{EdgeSemantics, SignatureGrid};
use crate::recognizers::{affine_support, pairwise_opposite};
use crate::scalar::Scalar;
use crate::signature::{Signature, MAX_ARITY};
use crate::transform::norm_square;

use super::csp::{fresh, CspInstance};
use super::ScaledGrid;

/// Builder for bipartite `(≠_{2k} | F)` grids: one disequality vertex per
/// variable, its first `k` ports reading the variable and the last `k` its
/// complement.
struct DiseqSide {
    /// Per variable: constraint ports reading `x`, then those reading `x̄`.
    plain: Vec<Vec<(usize, usize)>>,
    negated: Vec<Vec<(usize, usize)>>,
}

impl DiseqSide {
    fn new(n: usize) -> Self {
        DiseqSide { plain: vec![Vec::new(); n], negated: vec![Vec::new(); n] }
    }

    fn attach(&mut self, var: usize, negated: bool, port: (usize, usize)) {
        if negated {
            self.negated[var].push(port);
        } else {
            self.plain[var].push(port);
        }
    }

    /// Add the variable vertices to `grid`; unused variables multiply the scale by 2.
    fn finish(self, grid: &mut SignatureGrid, vars: impl Iterator<Item = usize>) -> Result<Scalar> {
        let mut scale = Scalar::one();
        let mut names: BTreeMap<usize, String> = BTreeMap::new();
        for x in vars {
            let k = self.plain[x].len();
            debug_assert_eq!(k, self.negated[x].len());
            if k == 0 {
                scale *= Scalar::from_int(2);
                continue;
            }
            if 2 * k > MAX_ARITY {
                return Err(Error::TooLarge(format!("variable {x} occurs {k} times; at most {} fit", MAX_ARITY / 2)));
            }
            let name = match names.get(&k) {
                Some(n) => n.clone(),
                None => {
                    let n = fresh(|s| grid.signatures.contains_key(s), &format!("neq{}", 2 * k));
                    grid.add_signature(n.clone(), Signature::disequality(k)?);
                    names.insert(k, n.clone());
                    n
                }
            };
            let u = grid.add_vertex(name);
            for (i, &p) in self.plain[x].iter().enumerate() {
                grid.connect((u, i + 1), p);
            }
            for (i, &p) in self.negated[x].iter().enumerate() {
                grid.connect((u, k + i + 1), p);
            }
        }
        Ok(scale)
    }
}

/// Express a CSP instance over norm squares `|f|²` as a bipartite Holant
/// grid `(≠_{2k} | F)`.
///
/// `base` maps each constraint name to an `f` with arrow reversal symmetry
/// and `|f|²` equal to the instance's table. Each constraint becomes two
/// `f` vertices, one reading the variables and one their complements, since
/// `|f|²(x) = f(x)·f(x̄)`.
pub fn square_reduction(inst: &CspInstance, base: &BTreeMap<String, Signature>) -> Result<ScaledGrid> {
    inst.validate()?;
    let mut grid = SignatureGrid::new();
    for name in inst.constraints.iter().map(|c| &c.sig) {
        if grid.signatures.contains_key(name) {
            continue;
        }
        let f = base
            .get(name)
            .ok_or_else(|| Error::Precondition(format!("no base signature for {name:?}")))?;
        if !f.is_ars() {
            return Err(Error::Precondition(format!("base signature {name:?} lacks arrow reversal symmetry")));
        }
        if norm_square(f) != inst.signatures[name] {
            return Err(Error::Precondition(format!("|f|² of base signature {name:?} differs from the instance table")));
        }
        grid.add_signature(name.clone(), f.clone());
    }
    let mut side = DiseqSide::new(inst.num_vars);
    for c in &inst.constraints {
        let plain = grid.add_vertex(c.sig.clone());
        let negated = grid.add_vertex(c.sig.clone());
        for (j, &x) in c.vars.iter().enumerate() {
            side.attach(x, false, (plain, j + 1));
            side.attach(x, true, (negated, j + 1));
        }
    }
    let scale = side.finish(&mut grid, 0..inst.num_vars)?;
    Ok(ScaledGrid { grid, scale, semantics: EdgeSemantics::Equality })
}

/// Representatives and parities of the opposite-pair graph on CSP variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableClassMap {
    /// Smallest variable of each variable's component.
    pub representative: Vec<usize>,
    /// Parity of the path from the representative (meaningful on bipartite components).
    pub parity: Vec<u8>,
    /// Component index of each variable.
    pub component: Vec<usize>,
    /// Per component: whether it is bipartite.
    pub bipartite: Vec<bool>,
}

impl VariableClassMap {
    /// Two-colour the graph with edges `pairs` on `n` vertices by breadth-first search.
    pub fn build(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in pairs {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut map = VariableClassMap {
            representative: vec![usize::MAX; n],
            parity: vec![0; n],
            component: vec![usize::MAX; n],
            bipartite: Vec::new(),
        };
        for r in 0..n {
            if map.component[r] != usize::MAX {
                continue;
            }
            let comp = map.bipartite.len();
            let mut ok = true;
            map.component[r] = comp;
            map.representative[r] = r;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if map.component[y] == usize::MAX {
                        map.component[y] = comp;
                        map.representative[y] = r;
                        map.parity[y] = map.parity[x] ^ 1;
                        queue.push_back(y);
                    } else if map.parity[y] == map.parity[x] {
                        ok = false;
                    }
                }
            }
            map.bipartite.push(ok);
        }
        map
    }

    pub fn all_bipartite(&self) -> bool {
        self.bipartite.iter().all(|&b| b)
    }
}

/// Result of [`opposite_reduction`].
#[derive(Clone, Debug)]
pub enum OppositeReduction {
    /// Some component forces `x = x̄`, so the instance sums to zero.
    Zero { classes: VariableClassMap },
    Grid { scaled: ScaledGrid, classes: VariableClassMap },
}

impl OppositeReduction {
    pub fn value(&self, cap: usize) -> Result<Scalar> {
        match self {
            OppositeReduction::Zero { .. } => Ok(Scalar::zero()),
            OppositeReduction::Grid { scaled, .. } => scaled.value(cap),
        }
    }
}

/// Express a CSP instance whose constraint supports are pairwise opposite as
/// a bipartite Holant grid `(≠_{2k} | F)` over representative variables.
///
/// Every opposite pair of every constraint links two CSP variables; on a
/// bipartite component each variable equals its representative or its
/// complement, and each constraint port is wired to the matching side of the
/// representative's disequality vertex.
pub fn opposite_reduction(inst: &CspInstance) -> Result<OppositeReduction> {
    inst.validate()?;
    let mut pairings: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for c in &inst.constraints {
        if pairings.contains_key(c.sig.as_str()) {
            continue;
        }
        let f = &inst.signatures[&c.sig];
        let space = affine_support(&f.support())
            .ok_or_else(|| Error::Precondition(format!("signature {:?} does not have affine support", c.sig)))?;
        let (pairing, _) = pairwise_opposite(&space)
            .map_err(|e| Error::Precondition(format!("signature {:?} is not pairwise opposite: {e}", c.sig)))?;
        pairings.insert(c.sig.as_str(), pairing.pairs);
    }
    let mut links = Vec::new();
    for c in &inst.constraints {
        for &(u, v) in &pairings[c.sig.as_str()] {
            links.push((c.vars[u - 1], c.vars[v - 1]));
        }
    }
    let classes = VariableClassMap::build(inst.num_vars, &links);
    if !classes.all_bipartite() {
        return Ok(OppositeReduction::Zero { classes });
    }

    let mut grid = SignatureGrid::new();
    let mut side = DiseqSide::new(inst.num_vars);
    for c in &inst.constraints {
        grid.signatures
            .entry(c.sig.clone())
            .or_insert_with(|| inst.signatures[&c.sig].clone());
        let v = grid.add_vertex(c.sig.clone());
        for &(a, b) in &pairings[c.sig.as_str()] {
            for port in [a, b] {
                let x = c.vars[port - 1];
                side.attach(classes.representative[x], classes.parity[x] == 1, (v, port));
            }
        }
    }
    let reps = (0..inst.num_vars).filter(|&x| classes.representative[x] == x);
    let scale = side.finish(&mut grid, reps)?;
    Ok(OppositeReduction::Grid { scaled: ScaledGrid { grid, scale, semantics: EdgeSemantics::Equality }, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridges::{csp_eval_bruteforce, CspConstraint};
    use crate::gadgets::DEFAULT_EDGE_CAP;

    fn instance(sigs: &[(&str, Signature)], cons: &[(&str, &[usize])], n: usize) -> CspInstance {
        CspInstance {
            num_vars: n,
            signatures: sigs.iter().map(|(k, f)| (k.to_string(), f.clone())).collect(),
            constraints: cons
                .iter()
                .map(|(s, v)| CspConstraint { sig: s.to_string(), vars: v.to_vec() })
                .collect(),
        }
    }

    #[test]
    fn square_of_binary_i() {
        let inst = instance(&[("b", Signature::diseq2())], &[("b", &[0, 1])], 2);
        let base: BTreeMap<String, Signature> = [("b".to_string(), Signature::binary_i())].into();
        let g = square_reduction(&inst, &base).unwrap();
        assert_eq!(g.value(DEFAULT_EDGE_CAP).unwrap(), Scalar::from_int(2));
        let bad: BTreeMap<String, Signature> = [("b".to_string(), Signature::eq2())].into();
        assert!(square_reduction(&inst, &bad).is_err());
        let empty = instance(&[], &[], 3);
        assert_eq!(square_reduction(&empty, &BTreeMap::new()).unwrap().value(24).unwrap(), Scalar::from_int(8));
    }

    #[test]
    fn opposite_chain_matches_brute_force() {
        let d4 = Signature::disequality(2).unwrap();
        let inst = instance(&[("d", d4)], &[("d", &[0, 1, 2, 3]), ("d", &[2, 3, 4, 5])], 6);
        let red = opposite_reduction(&inst).unwrap();
        assert!(matches!(red, OppositeReduction::Grid { .. }));
        assert_eq!(red.value(DEFAULT_EDGE_CAP).unwrap(), csp_eval_bruteforce(&inst).unwrap());
    }

    #[test]
    fn odd_opposite_cycle_is_zero() {
        let inst = instance(&[("n", Signature::diseq2())], &[("n", &[0, 1]), ("n", &[1, 2]), ("n", &[2, 0])], 3);
        let red = opposite_reduction(&inst).unwrap();
        assert!(matches!(red, OppositeReduction::Zero { .. }));
        assert!(csp_eval_bruteforce(&inst).unwrap().is_zero());
    }

    #[test]
    fn class_map_parities() {
        let m = VariableClassMap::build(4, &[(0, 1), (1, 2)]);
        assert_eq!(m.representative, vec![0, 0, 0, 3]);
        assert_eq!(m.parity, vec![0, 1, 0, 0]);
        assert!(m.all_bipartite());
        assert!(!VariableClassMap::build(1, &[(0, 0)]).all_bipartite());
    }
}
