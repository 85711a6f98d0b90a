use crate::scalar::Scalar;

/// Union-find over Boolean variables where each variable is tied to its
/// parent by a parity bit (`x = parent ⊕ parity`). Each class root carries a
/// weight pair `(w₀, w₁)`: the product of all unary weights on the class,
/// expressed in terms of the root's value.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    parity: Vec<u8>,
    weights: Vec<(Scalar, Scalar)>,
    contradiction: bool,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            parity: vec![0; n],
            weights: vec![(Scalar::one(), Scalar::one()); n],
            contradiction: false,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Walk back from the node nearest the root, accumulating parity.
        let mut acc = 0u8;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { 0 } else { self.parity[x] })
    }

    /// Impose `x ⊕ y = d`.
    pub fn union(&mut self, x: usize, y: usize, d: u8) {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        let delta = d ^ px ^ py;
        if rx == ry {
            if delta != 0 {
                self.contradiction = true;
            }
            return;
        }
        let (hi, lo) = if self.rank[rx] >= self.rank[ry] { (rx, ry) } else { (ry, rx) };
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.parent[lo] = hi;
        self.parity[lo] = delta;
        let (w0, w1) = std::mem::replace(&mut self.weights[lo], (Scalar::one(), Scalar::one()));
        let (w0, w1) = if delta == 0 { (w0, w1) } else { (w1, w0) };
        let slot = &mut self.weights[hi];
        slot.0 *= &w0;
        slot.1 *= &w1;
    }

    /// Multiply the unary weight `(w0, w1)` on variable `x` into its class.
    pub fn weigh(&mut self, x: usize, w0: &Scalar, w1: &Scalar) {
        let (r, p) = self.find(x);
        let slot = &mut self.weights[r];
        if p == 0 {
            slot.0 *= w0;
            slot.1 *= w1;
        } else {
            slot.0 *= w1;
            slot.1 *= w0;
        }
    }

    pub fn has_contradiction(&self) -> bool {
        self.contradiction
    }

    /// The root value forced by the class weights, when exactly one side is zero.
    pub fn pinned(&mut self, x: usize) -> Option<u8> {
        let (r, _) = self.find(x);
        match (self.weights[r].0.is_zero(), self.weights[r].1.is_zero()) {
            (false, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    }

    pub fn class_weight(&mut self, x: usize) -> (Scalar, Scalar) {
        let (r, _) = self.find(x);
        self.weights[r].clone()
    }

    /// `Σ` over consistent assignments of the product of all weights:
    /// zero on contradiction, else `Π_classes (w₀ + w₁)`.
    pub fn total(&self) -> Scalar {
        if self.contradiction {
            return Scalar::zero();
        }
        let mut acc = Scalar::one();
        for (x, &p) in self.parent.iter().enumerate() {
            if p == x {
                acc *= &(&self.weights[x].0 + &self.weights[x].1);
                if acc.is_zero() {
                    break;
                }
            }
        }
        acc
    }
}
