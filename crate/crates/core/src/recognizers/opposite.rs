use crate::error::{Error, Result};
use crate::signature::var_bit;

use super::affine_space::AffineSpace;

/// A perfect matching of the variables such that paired variables always
/// differ on the space it was built for. Pairs are 1-based, `(u, v)` with `u`
/// taking value 0 at the smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OppositePairing {
    pub pairs: Vec<(usize, usize)>,
}

impl OppositePairing {
    /// Check `x_u ≠ x_v` for every pair at every listed point of an arity-`n` space.
    pub fn holds_on(&self, n: usize, points: &[usize]) -> bool {
        let mut seen = vec![false; n + 1];
        for &(u, v) in &self.pairs {
            for k in [u, v] {
                if k == 0 || k > n || seen[k] {
                    return false;
                }
                seen[k] = true;
            }
        }
        seen[1..].iter().all(|&b| b)
            && points
                .iter()
                .all(|&p| self.pairs.iter().all(|&(u, v)| var_bit(p, n, u) != var_bit(p, n, v)))
    }
}

/// Counting identities verified while building a pairing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OppositeChecks {
    /// Number of index sets `I` at which every identity was confirmed.
    pub index_sets: usize,
}

fn popcount(x: usize) -> u32 {
    x.count_ones()
}

/// Build a pairing of a half-weight affine space.
///
/// Each variable is an affine form `c ⊕ ⊕_{j ∈ Λ} t_j` in the free parameters.
/// Variables with `c = 0` form `U`, those with `c = 1` form `V`. For every
/// index set `I` the function checks
/// `|U^odd(I)| = |V^odd(I)|`,
/// `|U^odd(I)| = Σ_{∅≠J⊆I} (−2)^{|J|−1} |U^⊆(J)|` (and the same for `V`),
/// `|U^⊆(I)| = |V^⊆(I)|`,
/// `|U^=(I)| = Σ_{J⊇I} (−1)^{|J|−|I|} |U^⊆(J)|`, and `|U^=(I)| = |V^=(I)|`,
/// then pairs the members of `U^=(I)` and `V^=(I)` in increasing order.
pub fn pairwise_opposite(space: &AffineSpace) -> Result<(OppositePairing, OppositeChecks)> {
    let n2 = space.arity();
    if n2 % 2 != 0 {
        return Err(Error::Precondition(format!("arity {n2} is odd")));
    }
    let half = (n2 / 2) as u32;
    if space.points().iter().any(|&p| popcount(p) != half) {
        return Err(Error::Precondition("space is not contained in the half-weight strings".into()));
    }
    let k = space.dim();
    let forms = space.variable_forms();
    let subsets = 1usize << k;
    let fail = |what: &str, i: usize| Err(Error::Invariant(format!("{what} fails at index set {i:#b}")));

    // side 0 = U, side 1 = V.
    let mut odd = [vec![0i64; subsets], vec![0i64; subsets]];
    let mut sup = [vec![0i64; subsets], vec![0i64; subsets]];
    let mut exact = [vec![0i64; subsets], vec![0i64; subsets]];
    for &(c, lam) in &forms {
        let side = c as usize;
        exact[side][lam] += 1;
        for i in 0..subsets {
            if popcount(lam & i) % 2 == 1 {
                odd[side][i] += 1;
            }
            if lam & i == i {
                sup[side][i] += 1;
            }
        }
    }

    for i in 0..subsets {
        if odd[0][i] != odd[1][i] {
            return fail("|U^odd| = |V^odd|", i);
        }
        for side in 0..2 {
            let mut claim = 0i64;
            let mut j = i;
            while j != 0 {
                claim += (-2i64).pow(popcount(j) - 1) * sup[side][j];
                j = (j - 1) & i;
            }
            if claim != odd[side][i] {
                return fail("odd-count expansion", i);
            }
            let mut mobius = 0i64;
            let rest = (subsets - 1) & !i;
            let mut extra = rest;
            loop {
                let jset = i | extra;
                let sign = if popcount(extra) % 2 == 0 { 1 } else { -1 };
                mobius += sign * sup[side][jset];
                if extra == 0 {
                    break;
                }
                extra = (extra - 1) & rest;
            }
            if mobius != exact[side][i] {
                return fail("Möbius inversion", i);
            }
        }
        if sup[0][i] != sup[1][i] {
            return fail("|U^⊆| = |V^⊆|", i);
        }
        if exact[0][i] != exact[1][i] {
            return fail("|U^=| = |V^=|", i);
        }
    }

    let mut pairs = Vec::with_capacity(n2 / 2);
    for i in 0..subsets {
        let us: Vec<usize> = (1..=n2).filter(|&x| forms[x - 1] == (0, i)).collect();
        let vs: Vec<usize> = (1..=n2).filter(|&x| forms[x - 1] == (1, i)).collect();
        pairs.extend(us.into_iter().zip(vs));
    }
    pairs.sort_unstable();
    let pairing = OppositePairing { pairs };
    if !pairing.holds_on(n2, &space.points()) {
        return Err(Error::Invariant("constructed pairing is not opposite on the space".into()));
    }
    Ok((pairing, OppositeChecks { index_sets: subsets }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognizers::affine_space::affine_support;
    use crate::signature::{parse_bits, Signature, SupportSet};

    #[test]
    fn diseq4_pairs_lexicographically() {
        let sp = affine_support(&Signature::disequality(2).unwrap().support()).unwrap();
        let (p, _) = pairwise_opposite(&sp).unwrap();
        assert_eq!(p.pairs, vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn single_point_matches_zeros_to_ones() {
        let x = parse_bits("100110").unwrap();
        let sp = AffineSpace::new(6, x, &[]).unwrap();
        let (p, _) = pairwise_opposite(&sp).unwrap();
        assert_eq!(p.pairs, vec![(2, 1), (3, 4), (6, 5)]);
        assert!(p.holds_on(6, &[x]));
    }

    #[test]
    fn rejects_off_half_weight() {
        let sp = affine_support(&SupportSet::new(2, vec![0, 3]).unwrap()).unwrap();
        assert!(matches!(pairwise_opposite(&sp), Err(Error::Precondition(_))));
    }
}
