use fixedbitset::FixedBitSet;

use crate::scalar::Scalar;

/// `prefactor · Σ_{y ∈ Z₂^n, rows satisfied} i^{Q(y)}` with
/// `Q = c + Σ a_k y_k + Σ_{j<k} 2·B_jk y_j y_k` over ℤ₄.
#[derive(Clone, Debug)]
pub struct QuadraticSystem {
    nvars: usize,
    constant: u8,
    linear: Vec<u8>,
    /// Symmetric with empty diagonal; `cross[j][k]` set means a `2 y_j y_k` term.
    cross: Vec<FixedBitSet>,
    constraints: Vec<(FixedBitSet, bool)>,
    prefactor: Scalar,
}

impl QuadraticSystem {
    pub fn new(nvars: usize) -> Self {
        QuadraticSystem {
            nvars,
            constant: 0,
            linear: vec![0; nvars],
            cross: vec![FixedBitSet::with_capacity(nvars); nvars],
            constraints: Vec::new(),
            prefactor: Scalar::one(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn add_constant(&mut self, k: u8) {
        self.constant = (self.constant + k) % 4;
    }

    pub fn add_linear(&mut self, v: usize, k: u8) {
        self.linear[v] = (self.linear[v] + k) % 4;
    }

    /// Add `2·y_u·y_v`; for `u = v` this is `2·y_u`.
    pub fn add_cross(&mut self, u: usize, v: usize) {
        if u == v {
            self.add_linear(u, 2);
        } else {
            self.cross[u].toggle(v);
            self.cross[v].toggle(u);
        }
    }

    /// Require `⊕_{v ∈ vars} y_v = rhs`; repeated variables cancel.
    pub fn add_constraint(&mut self, vars: &[usize], rhs: bool) {
        let mut row = FixedBitSet::with_capacity(self.nvars);
        for &v in vars {
            row.toggle(v);
        }
        self.constraints.push((row, rhs));
    }

    pub fn scale(&mut self, s: &Scalar) {
        self.prefactor *= s;
    }

    /// `Q(y)` for a full assignment given as a bit per variable.
    pub fn phase(&self, y: &[bool]) -> u8 {
        let mut q = self.constant as u32;
        for v in 0..self.nvars {
            if y[v] {
                q += self.linear[v] as u32;
                q += 2 * self.cross[v].ones().filter(|&w| w > v && y[w]).count() as u32;
            }
        }
        (q % 4) as u8
    }

    pub fn satisfies(&self, y: &[bool]) -> bool {
        self.constraints
            .iter()
            .all(|(row, rhs)| (row.ones().filter(|&v| y[v]).count() % 2 == 1) == *rhs)
    }

    /// Direct enumeration over all `2^n` assignments.
    pub fn sum_by_enumeration(&self) -> Scalar {
        assert!(self.nvars < 26, "enumeration over {} variables", self.nvars);
        let mut counts = [0i64; 4];
        let mut y = vec![false; self.nvars];
        for bits in 0u64..1 << self.nvars {
            for (v, slot) in y.iter_mut().enumerate() {
                *slot = (bits >> v) & 1 == 1;
            }
            if self.satisfies(&y) {
                counts[self.phase(&y) as usize] += 1;
            }
        }
        let total = Scalar::gaussian(counts[0] - counts[2], counts[1] - counts[3]);
        total * &self.prefactor
    }

    /// Replace `y_p` everywhere by `c ⊕ ⊕_{l ∈ rest} y_l`.
    fn substitute(&mut self, p: usize, rest: &FixedBitSet, c: bool) {
        let a = self.linear[p];
        self.linear[p] = 0;
        let neighbours = std::mem::replace(&mut self.cross[p], FixedBitSet::with_capacity(self.nvars));
        for m in neighbours.ones() {
            self.cross[m].set(p, false);
        }

        // a·(c ⊕ L) = a·c + a(1 − 2c)·L, and L = Σ y_l − 2 Σ_{l<m} y_l y_m.
        if c {
            self.add_constant(a);
        }
        let a_eff = if c { (4 - a) % 4 } else { a };
        for l in rest.ones() {
            self.add_linear(l, a_eff);
        }
        if a_eff % 2 == 1 {
            self.flip_pairs_within(rest);
        }

        // 2·y_m·(c ⊕ L) ≡ 2c·y_m + Σ_{l ∈ rest} 2·y_m·y_l.
        for m in neighbours.ones() {
            if c {
                self.add_linear(m, 2);
            }
            if rest.contains(m) {
                self.add_linear(m, 2);
            }
        }
        for l in rest.ones() {
            self.cross[l].symmetric_difference_with(&neighbours);
        }
        for m in neighbours.ones() {
            self.cross[m].symmetric_difference_with(rest);
        }
        for l in rest.ones().chain(neighbours.ones()) {
            self.cross[l].set(l, false);
        }

        for (row, rhs) in &mut self.constraints {
            if row.contains(p) {
                row.set(p, false);
                row.symmetric_difference_with(rest);
                *rhs ^= c;
            }
        }
    }

    /// Add `2 y_l y_m` for every pair `l < m` of the set.
    fn flip_pairs_within(&mut self, set: &FixedBitSet) {
        for l in set.ones() {
            self.cross[l].symmetric_difference_with(set);
            self.cross[l].set(l, false);
        }
    }

    /// Evaluate exactly, in polynomial time.
    ///
    /// Linear constraints are solved first (an inconsistent system gives 0).
    /// Free variables are then summed out one at a time using
    /// `Σ_{y} i^{a·y + 2y·ℓ}`: for even `a` this is `2·[ℓ = a/2]`, for `a = 1`
    /// it is `(1 + i)·i^{3ℓ}`, for `a = 3` it is `(1 − i)·i^{ℓ}`, where `ℓ` is
    /// the parity of the neighbouring variables.
    pub fn sum(mut self) -> Scalar {
        if self.prefactor.is_zero() {
            return Scalar::zero();
        }
        let mut alive = FixedBitSet::with_capacity(self.nvars);
        alive.insert_range(..);

        while let Some((row, rhs)) = self.constraints.pop() {
            let Some(p) = row.ones().next() else {
                if rhs {
                    return Scalar::zero();
                }
                continue;
            };
            let mut rest = row;
            rest.set(p, false);
            self.substitute(p, &rest, rhs);
            alive.set(p, false);
        }

        let mut twos = 0u32;
        let mut plus = 0u32;
        let mut minus = 0u32;
        for j in 0..self.nvars {
            if !alive.contains(j) {
                continue;
            }
            alive.set(j, false);
            let a = self.linear[j];
            self.linear[j] = 0;
            let nb = std::mem::replace(&mut self.cross[j], FixedBitSet::with_capacity(self.nvars));
            for m in nb.ones() {
                self.cross[m].set(j, false);
            }
            match a {
                0 | 2 => {
                    twos += 1;
                    let want = a == 2;
                    match nb.ones().next() {
                        None if want => return Scalar::zero(),
                        None => {}
                        Some(p) => {
                            let mut rest = nb;
                            rest.set(p, false);
                            self.substitute(p, &rest, want);
                            alive.set(p, false);
                        }
                    }
                }
                1 => {
                    plus += 1;
                    for m in nb.ones() {
                        self.add_linear(m, 3);
                    }
                    self.flip_pairs_within(&nb);
                }
                _ => {
                    minus += 1;
                    for m in nb.ones() {
                        self.add_linear(m, 1);
                    }
                    self.flip_pairs_within(&nb);
                }
            }
        }

        // (1 + i)(1 − i) = 2.
        let pairs = plus.min(minus);
        twos += pairs;
        let (plus, minus) = (plus - pairs, minus - pairs);
        let mut value = Scalar::from_int(2).pow(twos) * Scalar::i_pow(self.constant as i64);
        value *= &Scalar::gaussian(1, 1).pow(plus);
        value *= &Scalar::gaussian(1, -1).pow(minus);
        value * &self.prefactor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_system(rng: &mut ChaCha8Rng, n: usize) -> QuadraticSystem {
        let mut s = QuadraticSystem::new(n);
        s.add_constant(rng.gen_range(0..4));
        for v in 0..n {
            s.add_linear(v, rng.gen_range(0..4));
            for w in v + 1..n {
                if rng.gen_bool(0.4) {
                    s.add_cross(v, w);
                }
            }
        }
        for _ in 0..rng.gen_range(0..=n) {
            let vars: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..n)).collect();
            s.add_constraint(&vars, rng.gen_bool(0.5));
        }
        s
    }

    #[test]
    fn single_variable_sums() {
        for (a, expect) in [(0, Scalar::from_int(2)), (1, Scalar::gaussian(1, 1)), (2, Scalar::zero()), (3, Scalar::gaussian(1, -1))] {
            let mut s = QuadraticSystem::new(1);
            s.add_linear(0, a);
            assert_eq!(s.clone().sum(), expect);
            assert_eq!(s.sum_by_enumeration(), expect);
        }
    }

    #[test]
    fn inconsistent_constraints_give_zero() {
        let mut s = QuadraticSystem::new(2);
        s.add_constraint(&[0, 1], true);
        s.add_constraint(&[0, 1], false);
        assert!(s.sum().is_zero());
        let mut t = QuadraticSystem::new(1);
        t.add_constraint(&[0, 0], true);
        assert!(t.sum().is_zero());
    }

    #[test]
    fn elimination_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..400 {
            let n = rng.gen_range(1..=9);
            let s = random_system(&mut rng, n);
            assert_eq!(s.clone().sum(), s.sum_by_enumeration(), "trial {trial}");
        }
    }
}
