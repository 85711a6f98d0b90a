use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{full_mask, scatter_bits, var_mask, Signature, MAX_ARITY};

fn check_port(f: &Signature, i: usize) -> Result<()> {
    if i == 0 || i > f.arity() {
        return Err(Error::OutOfRange(format!("port {i} on a signature of arity {}", f.arity())));
    }
    Ok(())
}

fn check_pair(f: &Signature, i: usize, j: usize) -> Result<()> {
    check_port(f, i)?;
    check_port(f, j)?;
    if i == j {
        return Err(Error::Precondition(format!("cannot join port {i} to itself")));
    }
    Ok(())
}

/// Variables of `1..=n` other than those listed, in increasing order.
pub(crate) fn remaining_vars(n: usize, drop: &[usize]) -> Vec<usize> {
    (1..=n).filter(|k| !drop.contains(k)).collect()
}

/// Restriction of `f` with the listed variables fixed to the given bits.
pub(crate) fn restrict(f: &Signature, fixed: &[(usize, u8)]) -> Signature {
    let n = f.arity();
    let drop: Vec<usize> = fixed.iter().map(|&(k, _)| k).collect();
    let rest = remaining_vars(n, &drop);
    let base = fixed
        .iter()
        .filter(|&&(_, b)| b == 1)
        .fold(0usize, |acc, &(k, _)| acc | var_mask(n, k));
    Signature::from_fn(rest.len(), |sub| f.value(base | scatter_bits(sub, n, &rest)).clone())
}

/// Join ports `i` and `j` of `f` through a binary disequality: `f^{01}_{ij} + f^{10}_{ij}`.
///
/// Remaining variables keep their relative order. Arity-2 inputs must use
/// [`merge_to_scalar`] instead.
pub fn merge(f: &Signature, i: usize, j: usize) -> Result<Signature> {
    check_pair(f, i, j)?;
    if f.arity() < 3 {
        return Err(Error::Precondition(
            "merging an arity-2 signature yields a scalar; use merge_to_scalar".into(),
        ));
    }
    Ok(merge_unchecked(f, i, j))
}

fn merge_unchecked(f: &Signature, i: usize, j: usize) -> Signature {
    let n = f.arity();
    let rest = remaining_vars(n, &[i, j]);
    let (mi, mj) = (var_mask(n, i), var_mask(n, j));
    Signature::from_fn(n - 2, |sub| {
        let idx = scatter_bits(sub, n, &rest);
        f.value(idx | mj) + f.value(idx | mi)
    })
}

/// The value of joining the two ports of a binary signature: `f^{01} + f^{10}`.
pub fn merge_to_scalar(f: &Signature) -> Result<Scalar> {
    if f.arity() != 2 {
        return Err(Error::Precondition(format!("expected arity 2, got {}", f.arity())));
    }
    Ok(f.value(1) + f.value(2))
}

/// Merge a sequence of disjoint pairs, each given in the original variable labels.
///
/// The result is a signature on the unmerged variables in increasing order;
/// when every variable is merged the table has arity 0.
pub fn merge_pairs(f: &Signature, pairs: &[(usize, usize)]) -> Result<Signature> {
    let mut labels: Vec<usize> = (1..=f.arity()).collect();
    let mut cur = f.clone();
    for &(u, v) in pairs {
        let pu = labels.iter().position(|&l| l == u);
        let pv = labels.iter().position(|&l| l == v);
        let (Some(pu), Some(pv)) = (pu, pv) else {
            return Err(Error::Precondition(format!("pair ({u},{v}) uses an unavailable variable")));
        };
        check_pair(&cur, pu + 1, pv + 1)?;
        cur = merge_unchecked(&cur, pu + 1, pv + 1);
        labels.retain(|&l| l != u && l != v);
    }
    Ok(cur)
}

/// Fix port `i` of `f` to bit `b`.
pub fn pin(f: &Signature, i: usize, b: u8) -> Result<Signature> {
    check_port(f, i)?;
    if b > 1 {
        return Err(Error::Precondition(format!("pin value must be 0 or 1, got {b}")));
    }
    Ok(restrict(f, &[(i, b)]))
}

/// Tensor product: variables of `f` first, then variables of `g`.
pub fn tensor(f: &Signature, g: &Signature) -> Result<Signature> {
    let n = f.arity() + g.arity();
    if n > MAX_ARITY {
        return Err(Error::TooLarge(format!("tensor arity {n} exceeds the limit of {MAX_ARITY}")));
    }
    let m = g.arity();
    Ok(Signature::from_fn(n, |idx| f.value(idx >> m) * g.value(idx & full_mask(m))))
}

/// The 4×4 matrix of a mated signature; rows are `(x_i, x_j)` of one copy,
/// columns `(x_i, x_j)` of the other, both ordered 00, 01, 10, 11.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateMatrix {
    pub entries: [[Scalar; 4]; 4],
}

const PATTERN: [(usize, usize); 6] = [(0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 0)];

impl MateMatrix {
    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r][c]
    }

    /// `|f^{00}|²`
    pub fn norm00(&self) -> &Scalar {
        &self.entries[0][3]
    }
    /// `|f^{01}|²`
    pub fn norm01(&self) -> &Scalar {
        &self.entries[1][2]
    }
    /// `|f^{10}|²`
    pub fn norm10(&self) -> &Scalar {
        &self.entries[2][1]
    }
    /// `|f^{11}|²`
    pub fn norm11(&self) -> &Scalar {
        &self.entries[3][0]
    }
    /// `⟨f^{01}, f^{10}⟩`
    pub fn inner01(&self) -> &Scalar {
        &self.entries[1][1]
    }
    /// `⟨f^{10}, f^{01}⟩`
    pub fn inner10(&self) -> &Scalar {
        &self.entries[2][2]
    }

    /// The matrix as an arity-4 signature on `(x_i, x_j, x_i', x_j')`.
    pub fn to_signature(&self) -> Signature {
        Signature::from_fn(4, |idx| self.entries[idx >> 2][idx & 3].clone())
    }

    /// Nonzero entries only at the six mate positions, with real nonnegative norms there.
    pub fn matches_block_pattern(&self) -> bool {
        for r in 0..4 {
            for c in 0..4 {
                if !PATTERN.contains(&(r, c)) && !self.entries[r][c].is_zero() {
                    return false;
                }
            }
        }
        [self.norm00(), self.norm01(), self.norm10(), self.norm11()]
            .iter()
            .all(|v| matches!(v.real_signum(), Some(s) if s >= 0))
            && *self.inner10() == self.inner01().conj()
    }

    /// `|⟨f^{01}, f^{10}⟩|² ≤ |f^{01}|²·|f^{10}|²`, decided exactly.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        let lhs = self.inner01().norm_sq();
        let rhs = self.norm01() * self.norm10();
        matches!((rhs - lhs).real_signum(), Some(s) if s >= 0)
    }

    /// Returns `λ` when the matrix equals `λ N^{⊗2}` (anti-diagonal ones).
    pub fn as_scaled_n2(&self) -> Option<Scalar> {
        let lambda = self.norm00().clone();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r + c == 3 { &lambda } else { &Scalar::zero() };
                if self.entries[r][c] != *want {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }
}

/// Mate two copies of `f` on every variable except `i` and `j`.
///
/// Requires ARS, so that `N^{⊗(n−2)}` acting on a row of `f` is its conjugate reversal.
pub fn mate(f: &Signature, i: usize, j: usize) -> Result<(Signature, MateMatrix)> {
    check_pair(f, i, j)?;
    if f.arity() < 3 {
        return Err(Error::Precondition(format!("mating needs arity at least 3, got {}", f.arity())));
    }
    if !f.is_ars() {
        return Err(Error::Precondition("mating is only defined for signatures with ARS".into()));
    }
    let n = f.arity();
    let rest = remaining_vars(n, &[i, j]);
    let m = rest.len();
    let (mi, mj) = (var_mask(n, i), var_mask(n, j));
    let row_base = |r: usize| (if r & 2 != 0 { mi } else { 0 }) | (if r & 1 != 0 { mj } else { 0 });
    let mut entries: [[Scalar; 4]; 4] = Default::default();
    for (r, row) in entries.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for y in 0..1usize << m {
                let a = f.value(row_base(r) | scatter_bits(y, n, &rest));
                if a.is_zero() {
                    continue;
                }
                let b = f.value(row_base(c) | scatter_bits(y ^ full_mask(m), n, &rest));
                acc += &(a * b);
            }
            *cell = acc;
        }
    }
    let mm = MateMatrix { entries };
    Ok((mm.to_signature(), mm))
}

/// Join every variable of one copy of `f` to the same variable of another copy: `Σ_α f(α) f(ᾱ)`.
pub fn full_mate(f: &Signature) -> Scalar {
    let m = full_mask(f.arity());
    (0..f.values().len())
        .filter(|&a| !f.value(a).is_zero())
        .map(|a| f.value(a) * f.value(a ^ m))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ne4() -> Signature {
        Signature::disequality(2).unwrap()
    }

    #[test]
    fn merge_examples() {
        assert_eq!(merge(&ne4(), 1, 2).unwrap(), Signature::zero(2));
        assert_eq!(merge(&ne4(), 1, 3).unwrap(), Signature::diseq2());
        assert!(merge(&Signature::diseq2(), 1, 2).is_err());
        assert_eq!(merge_to_scalar(&Signature::binary_i()).unwrap(), Scalar::zero());
        assert!(matches!(merge(&ne4(), 1, 5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn merge_pairs_tracks_labels() {
        let f = Signature::from_fn(6, |i| Scalar::from_int(i as i64 * 3 - 7));
        let direct = merge(&merge(&f, 2, 5).unwrap(), 1, 3).unwrap();
        // After removing 2 and 5, original 1 and 4 sit at positions 1 and 3.
        assert_eq!(merge_pairs(&f, &[(2, 5), (1, 4)]).unwrap(), direct);
    }

    #[test]
    fn pin_examples() {
        assert_eq!(pin(&Signature::diseq2(), 1, 0).unwrap(), Signature::from_ints(1, &[0, 1]).unwrap());
        assert_eq!(
            pin(&Signature::binary_i(), 2, 1).unwrap(),
            Signature::from_gaussian(1, &[(0, 1), (0, 0)]).unwrap()
        );
    }

    #[test]
    fn tensor_order() {
        let u = Signature::from_ints(1, &[1, 2]).unwrap();
        let v = Signature::from_ints(1, &[3, 5]).unwrap();
        assert_eq!(tensor(&u, &v).unwrap(), Signature::from_ints(2, &[3, 5, 6, 10]).unwrap());
    }

    #[test]
    fn mate_of_diseq4() {
        let (_, m) = mate(&ne4(), 1, 2).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if (r, c) == (0, 3) || (r, c) == (3, 0) { 1 } else { 0 };
                assert_eq!(m.entry(r, c), &Scalar::from_int(want), "entry ({r},{c})");
            }
        }
        assert!(m.matches_block_pattern());
    }

    #[test]
    fn mate_of_reducible_product() {
        let f = tensor(&Signature::binary_i(), &Signature::diseq2()).unwrap();
        let (_, m) = mate(&f, 1, 2).unwrap();
        // Rows of f on (x1, x2): f^{01} = i·(0,1,1,0), f^{10} = −i·(0,1,1,0).
        // ⟨f^{01}, f^{10}⟩ = Σ i·conj(−i)·1 = −2; both norms are 2.
        assert_eq!(m.inner01(), &Scalar::from_int(-2));
        assert_eq!(m.norm01(), &Scalar::from_int(2));
        assert_eq!(m.norm10(), &Scalar::from_int(2));
        assert!(m.norm00().is_zero() && m.norm11().is_zero());
        assert!(m.cauchy_schwarz_holds());
    }

    #[test]
    fn mate_requires_ars() {
        let f = Signature::from_ints(3, &[0, 1, 1, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(mate(&f, 1, 2), Err(Error::Precondition(_))));
        let (_, m) = mate(&Signature::zero(4), 1, 2).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn full_mate_of_diseq4() {
        assert_eq!(full_mate(&ne4()), Scalar::from_int(2));
    }
}
