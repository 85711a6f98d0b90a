use crate::error::{Error, Result};
use crate::signature::{var_mask, SupportSet, MAX_ARITY};

/// A coset `base ⊕ span(basis)` in `Z₂^arity`.
///
/// The basis is kept in reduced row-echelon form: each vector's highest set
/// bit (its pivot, i.e. its smallest variable) is set in no other vector, and
/// `base` is zero at every pivot, which makes it the smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSpace {
    arity: usize,
    base: usize,
    basis: Vec<usize>,
}

fn leading_bit(v: usize) -> usize {
    1usize << (usize::BITS - 1 - v.leading_zeros())
}

/// Insert `v` into a reduced basis; returns false when `v` is already in the span.
fn insert_reduced(basis: &mut Vec<usize>, mut v: usize) -> bool {
    for &b in basis.iter() {
        if v & leading_bit(b) != 0 {
            v ^= b;
        }
    }
    if v == 0 {
        return false;
    }
    let lead = leading_bit(v);
    for b in basis.iter_mut() {
        if *b & lead != 0 {
            *b ^= v;
        }
    }
    basis.push(v);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

impl AffineSpace {
    /// Build a space from any base point and spanning vectors (dependent ones are dropped).
    pub fn new(arity: usize, base: usize, generators: &[usize]) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {arity} exceeds the limit of {MAX_ARITY}")));
        }
        if (base | generators.iter().fold(0, |a, &g| a | g)) >> arity != 0 {
            return Err(Error::OutOfRange(format!("vectors do not fit in {arity} bits")));
        }
        let mut basis = Vec::new();
        for &g in generators {
            insert_reduced(&mut basis, g);
        }
        let base = basis.iter().fold(base, |acc, &b| if acc & leading_bit(b) != 0 { acc ^ b } else { acc });
        Ok(AffineSpace { arity, base, basis })
    }

    /// The whole space `Z₂^arity`.
    pub fn full(arity: usize) -> Self {
        let gens: Vec<usize> = (1..=arity).map(|k| var_mask(arity, k)).collect();
        AffineSpace::new(arity, 0, &gens).expect("arity checked by caller")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        1 << self.dim()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variables (1-based) at the pivots of the basis, in basis order.
    pub fn pivot_vars(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|&b| self.arity - leading_bit(b).trailing_zeros() as usize)
            .collect()
    }

    pub fn contains(&self, x: usize) -> bool {
        if x >> self.arity != 0 {
            return false;
        }
        let r = self.basis.iter().fold(x ^ self.base, |acc, &b| if acc & leading_bit(b) != 0 { acc ^ b } else { acc });
        r == 0
    }

    /// The point with parameters `t` (bit `k` of `t`, counted from the first basis vector as the
    /// most significant of `dim` bits, selects basis vector `k`).
    pub fn point(&self, t: usize) -> usize {
        let d = self.dim();
        self.basis
            .iter()
            .enumerate()
            .fold(self.base, |acc, (k, &b)| if (t >> (d - 1 - k)) & 1 == 1 { acc ^ b } else { acc })
    }

    /// Parameters of a point of the space (its bits at the pivots).
    pub fn params(&self, x: usize) -> usize {
        self.basis
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | ((x & leading_bit(b) != 0) as usize))
    }

    /// All points in increasing order.
    pub fn points(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = (0..self.len()).map(|t| self.point(t)).collect();
        pts.sort_unstable();
        pts
    }

    /// Constraint form: rows `(mask, rhs)` meaning `⊕_{k ∈ mask} x_k = rhs`, one per non-pivot variable.
    pub fn constraints(&self) -> Vec<(usize, u8)> {
        let pivots: usize = self.basis.iter().map(|&b| leading_bit(b)).fold(0, |a, b| a | b);
        (1..=self.arity)
            .map(|q| var_mask(self.arity, q))
            .filter(|&qm| pivots & qm == 0)
            .map(|qm| {
                let mut mask = qm;
                for &b in &self.basis {
                    if b & qm != 0 {
                        mask |= leading_bit(b);
                    }
                }
                (mask, (self.base & qm != 0) as u8)
            })
            .collect()
    }

    /// For each variable `1..=arity`: its constant bit and the set of basis
    /// indices (as a bitmask, basis vector 0 = bit 0) whose sum it tracks.
    pub fn variable_forms(&self) -> Vec<(u8, usize)> {
        (1..=self.arity)
            .map(|q| {
                let qm = var_mask(self.arity, q);
                let lam = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b & qm != 0)
                    .fold(0usize, |acc, (k, _)| acc | (1 << k));
                ((self.base & qm != 0) as u8, lam)
            })
            .collect()
    }
}

/// The affine space equal to a support set, if the set is one.
///
/// Spanning the differences from the first point gives the smallest coset
/// containing the set; the set is affine exactly when it fills that coset.
/// Empty sets return `None`.
pub fn affine_support(s: &SupportSet) -> Option<AffineSpace> {
    let &first = s.points().first()?;
    let mut basis = Vec::new();
    for &p in s.points() {
        insert_reduced(&mut basis, p ^ first);
        if basis.len() > 63 || (1usize << basis.len()) > s.len() {
            return None;
        }
    }
    if 1usize << basis.len() != s.len() {
        return None;
    }
    AffineSpace::new(s.arity(), first, &basis).ok()
}

/// Closure of a set under `α ⊕ β ⊕ γ`, used as an independent check in tests.
pub fn is_triple_xor_closed(points: &[usize]) -> bool {
    let set: std::collections::HashSet<usize> = points.iter().copied().collect();
    points.iter().all(|&a| {
        points
            .iter()
            .all(|&b| points.iter().all(|&c| set.contains(&(a ^ b ^ c))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::signature::Signature;

    #[test]
    fn support_examples() {
        let d4 = Signature::disequality(2).unwrap();
        let sp = affine_support(&d4.support()).unwrap();
        assert_eq!(sp.dim(), 1);
        assert_eq!(sp.base(), 0b0011);
        assert_eq!(sp.points(), vec![0b0011, 0b1100]);
        let ones = Signature::from_fn(4, |i| Scalar::from_int((i.count_ones() == 2) as i64));
        assert!(affine_support(&ones.support()).is_none());
        assert!(!is_triple_xor_closed(ones.support().points()));
        let single = SupportSet::new(6, vec![0]).unwrap();
        assert_eq!(affine_support(&single).unwrap().dim(), 0);
        assert!(affine_support(&SupportSet::new(3, vec![]).unwrap()).is_none());
    }

    #[test]
    fn base_is_smallest_point() {
        let sp = AffineSpace::new(5, 0b10111, &[0b11000, 0b01010, 0b10010]).unwrap();
        assert_eq!(sp.base(), *sp.points().first().unwrap());
        for &p in &sp.points() {
            assert!(sp.contains(p));
            assert_eq!(sp.point(sp.params(p)), p);
        }
    }

    #[test]
    fn constraint_form_matches_points() {
        let sp = AffineSpace::new(5, 0b00101, &[0b11000, 0b01011]).unwrap();
        let rows = sp.constraints();
        assert_eq!(rows.len(), 5 - sp.dim());
        for x in 0..32usize {
            let sat = rows.iter().all(|&(m, r)| ((x & m).count_ones() % 2) as u8 == r);
            assert_eq!(sat, sp.contains(x), "x = {x:05b}");
        }
    }

    #[test]
    fn variable_forms_rebuild_points() {
        let sp = AffineSpace::new(4, 0b0011, &[0b1111]).unwrap();
        let forms = sp.variable_forms();
        assert_eq!(forms, vec![(0, 1), (0, 1), (1, 1), (1, 1)]);
    }
}
