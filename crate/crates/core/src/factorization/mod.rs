//! Unique prime factorization of signature tables.

mod diagnostics;

pub use diagnostics::{
    delta_property, diagnose, in_b, int_b, int_b_nonzero, orthogonality, DeltaWitness, DiagnosticReport,
};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{full_mask, gather_bits, scatter_bits, Signature};

/// One tensor factor: a signature on the listed (sorted, 1-based) variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub vars: Vec<usize>,
    pub sig: Signature,
}

/// `scale · ⊗ factors`, with the factors' variable sets partitioning `1..=arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub arity: usize,
    pub scale: Scalar,
    pub factors: Vec<Factor>,
}

impl Factorization {
    /// Rebuild the full table.
    pub fn reconstruct(&self) -> Signature {
        let n = self.arity;
        Signature::from_fn(n, |idx| {
            let mut acc = self.scale.clone();
            for fac in &self.factors {
                if acc.is_zero() {
                    break;
                }
                acc *= fac.sig.value(gather_bits(idx, n, &fac.vars));
            }
            acc
        })
    }

    /// The variable sets of the factors, in factor order.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| f.vars.clone()).collect()
    }

    /// Every factor has arity 2.
    pub fn all_binary(&self) -> bool {
        self.factors.iter().all(|f| f.vars.len() == 2)
    }

    /// The factor living on exactly `vars` (sorted), if any.
    pub fn factor_on(&self, vars: &[usize]) -> Option<&Factor> {
        self.factors.iter().find(|f| f.vars == vars)
    }
}

/// Scale `f` so its first nonzero entry is 1; returns the normalized table and the removed factor.
pub(crate) fn normalize_first(f: &Signature) -> (Signature, Scalar) {
    match f.first_nonzero() {
        Some((_, v)) => {
            let c = v.clone();
            let inv = c.inv().expect("nonzero");
            (f.scaled(&inv), c)
        }
        None => (f.clone(), Scalar::zero()),
    }
}

/// Cached view of a table used by repeated split attempts.
struct SplitView<'a> {
    f: &'a Signature,
    support: Vec<usize>,
}

impl<'a> SplitView<'a> {
    fn new(f: &'a Signature) -> Self {
        SplitView { f, support: f.support().points().to_vec() }
    }

    /// Rank-1 test of the matrix with rows indexed by `s` and columns by the complement.
    fn split(&self, s: &[usize]) -> Option<(Signature, Signature, Scalar)> {
        let f = self.f;
        let n = f.arity();
        let t: Vec<usize> = (1..=n).filter(|k| !s.contains(k)).collect();
        let &pivot = self.support.first()?;
        let (r0, c0) = (gather_bits(pivot, n, s), gather_bits(pivot, n, &t));

        // Zero pattern first: the support must be (row support) × (column support).
        let rows = 1usize << s.len();
        let cols = 1usize << t.len();
        let mut row_nz = vec![false; rows];
        let mut col_nz = vec![false; cols];
        for &p in &self.support {
            row_nz[gather_bits(p, n, s)] = true;
            col_nz[gather_bits(p, n, &t)] = true;
        }
        let nr = row_nz.iter().filter(|&&b| b).count();
        let nc = col_nz.iter().filter(|&&b| b).count();
        if nr * nc != self.support.len() {
            return None;
        }

        let at = |r: usize, c: usize| f.value(scatter_bits(r, n, s) | scatter_bits(c, n, &t));
        let m00 = f.value(pivot);
        for &p in &self.support {
            let (r, c) = (gather_bits(p, n, s), gather_bits(p, n, &t));
            if r == r0 || c == c0 {
                continue;
            }
            if f.value(p) * m00 != at(r, c0) * at(r0, c) {
                return None;
            }
        }
        let g_raw = Signature::from_fn(s.len(), |r| at(r, c0).clone());
        let h_raw = Signature::from_fn(t.len(), |c| at(r0, c).clone());
        let (g, gs) = normalize_first(&g_raw);
        let (h, hs) = normalize_first(&h_raw);
        let scale = (gs * hs) / m00;
        Some((g, h, scale))
    }
}

/// Try to write `f = scale · g(x_S) ⊗ h(x_{S^c})`.
///
/// `s` lists 1-based variables; `g` and `h` have their variables in increasing
/// order and each has first nonzero entry 1.
pub fn try_split(f: &Signature, s: &[usize]) -> Result<Option<(Signature, Signature, Scalar)>> {
    let n = f.arity();
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.len() >= n {
        return Err(Error::Precondition("split set must be a nonempty proper subset".into()));
    }
    if s.iter().any(|&k| k == 0 || k > n) {
        return Err(Error::OutOfRange(format!("split set {s:?} for arity {n}")));
    }
    if f.is_zero() {
        return Err(Error::Precondition("cannot split the zero signature".into()));
    }
    Ok(SplitView::new(f).split(&s))
}

/// All `size`-subsets of `1..=n` containing variable 1, in lexicographic order.
fn subsets_with_first(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let k = size - 1;
    let pool: Vec<usize> = (2..=n).collect();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > pool.len();
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut out = vec![1];
        out.extend(idx.iter().map(|&i| pool[i]));
        // Advance to the next combination.
        let m = pool.len();
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Finest tensor decomposition of a nonzero signature.
///
/// Factors are ordered by smallest variable; each factor's first nonzero
/// entry is 1 and the leftover constant is in `scale`.
pub fn upf(f: &Signature) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Precondition("the zero signature has no prime factorization".into()));
    }
    let mut factors = Vec::new();
    let mut scale = Scalar::one();
    let mut labels: Vec<usize> = (1..=f.arity()).collect();
    let mut cur = f.clone();
    loop {
        let n = cur.arity();
        let found = if n > 1 {
            let view = SplitView::new(&cur);
            (1..n).find_map(|size| subsets_with_first(n, size).find_map(|s| view.split(&s).map(|r| (s, r))))
        } else {
            None
        };
        match found {
            Some((s, (g, h, c))) => {
                factors.push(Factor { vars: s.iter().map(|&k| labels[k - 1]).collect(), sig: g });
                scale *= &c;
                labels = (1..=n).filter(|k| !s.contains(k)).map(|k| labels[k - 1]).collect();
                cur = h;
            }
            None => {
                let (g, c) = normalize_first(&cur);
                scale *= &c;
                factors.push(Factor { vars: labels, sig: g });
                break;
            }
        }
    }
    Ok(Factorization { arity: f.arity(), scale, factors })
}

/// Rescale the factors of an EO signature with ARS so that each factor has ARS.
///
/// For a factor with `g(α) = a`, `g(ᾱ) = b`, let `c = b / conj(a)`; then
/// `λ = 1 + conj(c)` (1 when `c = 1`, `i` when `c = −1`) gives `conj(λa) = λb`. Every step
/// stays inside ℚ(i, √2). The final real constant is folded into the last
/// factor, so the returned scale is 1.
pub fn ars_normalize(fact: &Factorization) -> Result<Factorization> {
    let original = fact.reconstruct();
    if original.is_zero() || !original.is_eo() || !original.is_ars() {
        return Err(Error::Precondition("ars_normalize needs a nonzero EO signature with ARS".into()));
    }
    let mut scale = fact.scale.clone();
    let mut factors = Vec::with_capacity(fact.factors.len());
    for fac in &fact.factors {
        let g = &fac.sig;
        let (alpha, a) = g.first_nonzero().expect("factors of a nonzero signature are nonzero");
        let b = g.value(alpha ^ full_mask(g.arity()));
        if b.is_zero() {
            return Err(Error::Invariant(format!("factor on {:?} has no support at the complement", fac.vars)));
        }
        let c = b / &a.conj();
        let lambda = if c.is_one() {
            Scalar::one()
        } else if c == Scalar::from_int(-1) {
            Scalar::i()
        } else {
            Scalar::one() + c.conj()
        };
        let g2 = g.scaled(&lambda);
        if !g2.is_ars() {
            return Err(Error::Invariant(format!("factor on {:?} could not be made ARS", fac.vars)));
        }
        scale = scale / &lambda;
        factors.push(Factor { vars: fac.vars.clone(), sig: g2 });
    }
    if !scale.is_real() {
        return Err(Error::Invariant(format!("residual scale {scale} is not real")));
    }
    if let Some(last) = factors.last_mut() {
        last.sig = last.sig.scaled(&scale);
    }
    let out = Factorization { arity: fact.arity, scale: Scalar::one(), factors };
    debug_assert_eq!(out.reconstruct(), original);
    Ok(out)
}

/// Does the binary `b(x_u, x_v)` divide `f`? The zero signature is divisible by every nonzero `b`.
pub fn divides_binary(b: &Signature, u: usize, v: usize, f: &Signature) -> Result<bool> {
    if b.arity() != 2 || b.is_zero() {
        return Err(Error::Precondition("divisor must be a nonzero binary signature".into()));
    }
    let n = f.arity();
    if u == v || u == 0 || v == 0 || u > n || v > n {
        return Err(Error::OutOfRange(format!("pair ({u},{v}) for arity {n}")));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let fact = upf(f)?;
    let (lo, hi) = (u.min(v), u.max(v));
    let oriented = if u < v { b.clone() } else { b.permute(&[2, 1])? };
    Ok(fact
        .factor_on(&[lo, hi])
        .is_some_and(|fac| fac.sig.associate_ratio(&oriented).is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::tensor;

    fn u() -> Signature {
        Signature::from_ints(2, &[0, 1, -1, 0]).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<Vec<usize>> = subsets_with_first(4, 2).collect();
        assert_eq!(all, vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
        assert_eq!(subsets_with_first(4, 1).collect::<Vec<_>>(), vec![vec![1]]);
        assert_eq!(subsets_with_first(4, 3).count(), 3);
    }

    #[test]
    fn split_examples() {
        let nn = tensor(&Signature::diseq2(), &Signature::diseq2()).unwrap();
        let (g, h, c) = try_split(&nn, &[1, 2]).unwrap().unwrap();
        assert_eq!((g, h, c), (Signature::diseq2(), Signature::diseq2(), Scalar::one()));
        assert!(try_split(&Signature::disequality(2).unwrap(), &[1, 2]).unwrap().is_none());
        assert!(try_split(&Signature::zero(2), &[1]).is_err());
    }

    #[test]
    fn split_location_of_the_real_product() {
        // The matrix with rows (x1,x2) and columns (x3,x4) of u ⊗ u is rank 1.
        let f = tensor(&u(), &u()).unwrap();
        assert!(try_split(&f, &[1, 2]).unwrap().is_some());
        // Interleaved: u(x1,x3)·u(x2,x4) does not split on {1,2} but does on {1,3}.
        let g = f.permute(&[1, 3, 2, 4]).unwrap();
        assert!(try_split(&g, &[1, 2]).unwrap().is_none());
        let (a, b, c) = try_split(&g, &[1, 3]).unwrap().unwrap();
        assert_eq!(tensor(&a, &b).unwrap().scaled(&c).permute(&[1, 3, 2, 4]).unwrap(), g);
    }

    #[test]
    fn upf_of_three_binaries() {
        let three = Signature::from_ints(2, &[0, 3, 3, 0]).unwrap();
        let f = tensor(&tensor(&Signature::binary_i(), &Signature::diseq2()).unwrap(), &three).unwrap();
        let fact = upf(&f).unwrap();
        assert_eq!(fact.partition(), vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(fact.factors[0].sig, Signature::from_ints(2, &[0, 1, -1, 0]).unwrap());
        assert_eq!(fact.factors[1].sig, Signature::diseq2());
        assert_eq!(fact.factors[2].sig, Signature::diseq2());
        assert_eq!(fact.scale, Scalar::gaussian(0, 3));
        assert_eq!(fact.reconstruct(), f);
    }

    #[test]
    fn upf_irreducible() {
        let d = Signature::disequality(2).unwrap();
        let fact = upf(&d).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.reconstruct(), d);
        assert!(upf(&Signature::zero(2)).is_err());
    }

    #[test]
    fn upf_finds_interleaved_blocks() {
        let f = tensor(&Signature::disequality(2).unwrap(), &Signature::binary_i()).unwrap();
        let g = f.permute(&[5, 1, 2, 6, 3, 4]).unwrap();
        let fact = upf(&g).unwrap();
        assert_eq!(fact.partition(), vec![vec![1, 4], vec![2, 3, 5, 6]]);
        assert_eq!(fact.reconstruct(), g);
    }

    #[test]
    fn ars_normalize_real_product() {
        let f = tensor(&u(), &u()).unwrap();
        let fact = ars_normalize(&upf(&f).unwrap()).unwrap();
        assert_eq!(fact.factors[0].sig, Signature::binary_i());
        assert_eq!(fact.factors[1].sig, Signature::from_gaussian(2, &[(0, 0), (0, -1), (0, 1), (0, 0)]).unwrap());
        assert_eq!(fact.reconstruct(), f);
    }

    #[test]
    fn ars_normalize_keeps_ars_factors() {
        let f = tensor(&Signature::binary_i(), &Signature::diseq2()).unwrap();
        let fact = ars_normalize(&upf(&f).unwrap()).unwrap();
        for fac in &fact.factors {
            assert!(fac.sig.is_ars());
        }
        assert_eq!(fact.reconstruct(), f);
        assert!(ars_normalize(&upf(&Signature::eq2()).unwrap()).is_err());
    }

    #[test]
    fn binary_divisibility() {
        let f = tensor(&Signature::binary_i(), &Signature::diseq2()).unwrap();
        assert!(divides_binary(&Signature::binary_i(), 1, 2, &f).unwrap());
        assert!(!divides_binary(&Signature::diseq2(), 1, 2, &f).unwrap());
        assert!(divides_binary(&Signature::diseq2(), 4, 3, &f).unwrap());
        // Reversed orientation of b^i is −b^i, an associate.
        assert!(divides_binary(&Signature::binary_i(), 2, 1, &f).unwrap());
        let nb = Signature::from_ints(2, &[0, 1, 2, 0]).unwrap();
        assert!(!divides_binary(&nb, 2, 1, &tensor(&nb, &Signature::diseq2()).unwrap()).unwrap());
        assert!(!divides_binary(&Signature::diseq2(), 1, 2, &Signature::disequality(2).unwrap()).unwrap());
    }
}
