//! Predicates on how merges of a signature factor.

use crate::error::{Error, Result};
use crate::gadgets::{mate, merge, remaining_vars};
use crate::scalar::Scalar;
use crate::signature::Signature;

use super::{normalize_first, upf};

/// Tensor product of binary EO signatures with ARS. The zero signature of
/// even arity counts as a member.
pub fn in_b(f: &Signature) -> bool {
    if f.arity() % 2 != 0 {
        return false;
    }
    if f.is_zero() {
        return true;
    }
    f.is_eo() && f.is_ars() && upf(f).map(|fact| fact.all_binary()).unwrap_or(false)
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Every merge `∂_(ij) f` lies in the binary-product class. Needs arity ≥ 4.
pub fn int_b(f: &Signature) -> bool {
    f.arity() >= 4 && all_pairs(f.arity()).all(|(i, j)| merge(f, i, j).map(|g| in_b(&g)).unwrap_or(false))
}

/// [`int_b`] with every merge also nonzero.
pub fn int_b_nonzero(f: &Signature) -> bool {
    f.arity() >= 4
        && all_pairs(f.arity()).all(|(i, j)| merge(f, i, j).map(|g| !g.is_zero() && in_b(&g)).unwrap_or(false))
}

/// A binary `b(x_u, x_v)` dividing the merges over all three sides of the triangle `{r, s, t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub u: usize,
    pub v: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// The common divisor on `(x_u, x_v)`, first nonzero entry 1.
    pub factor: Signature,
}

/// Binary factors of `∂_(ij) f` keyed by their pair in original labels; `None` for a zero merge.
fn merge_binaries(f: &Signature, i: usize, j: usize) -> Result<Option<Vec<((usize, usize), Signature)>>> {
    let g = merge(f, i, j)?;
    if g.is_zero() {
        return Ok(None);
    }
    let rest = remaining_vars(f.arity(), &[i, j]);
    let fact = upf(&g)?;
    Ok(Some(
        fact.factors
            .into_iter()
            .filter(|fac| fac.vars.len() == 2)
            .map(|fac| ((rest[fac.vars[0] - 1], rest[fac.vars[1] - 1]), fac.sig))
            .collect(),
    ))
}

/// Search for the Δ-property; the first witness in lexicographic order of
/// `(u, v, r, s, t)` is returned.
///
/// A zero merge is divisible by every nonzero binary signature; when all three
/// merges of a triangle vanish the reported factor is the binary disequality.
pub fn delta_property(f: &Signature) -> Result<Option<DeltaWitness>> {
    let n = f.arity();
    if n < 5 {
        return Ok(None);
    }
    let mut table = std::collections::HashMap::new();
    for (i, j) in all_pairs(n) {
        table.insert((i, j), merge_binaries(f, i, j)?);
    }
    let divisor = |pair: (usize, usize), u: usize, v: usize| -> Option<Option<&Signature>> {
        match &table[&pair] {
            None => Some(None),
            Some(list) => list.iter().find(|(p, _)| *p == (u, v)).map(|(_, s)| Some(s)),
        }
    };
    for (u, v) in all_pairs(n) {
        let others: Vec<usize> = (1..=n).filter(|&k| k != u && k != v).collect();
        for (a, &r) in others.iter().enumerate() {
            for (b, &s) in others.iter().enumerate().skip(a + 1) {
                for &t in others.iter().skip(b + 1) {
                    let sides = [(r, s), (s, t), (r, t)];
                    let found: Option<Vec<Option<&Signature>>> =
                        sides.iter().map(|&p| divisor(p, u, v)).collect();
                    let Some(found) = found else { continue };
                    let nonzero: Vec<&Signature> = found.into_iter().flatten().collect();
                    let common = match nonzero.split_first() {
                        None => Some(Signature::diseq2()),
                        Some((first, rest)) => rest
                            .iter()
                            .all(|g| g.associate_ratio(first).is_some())
                            .then(|| normalize_first(first).0),
                    };
                    if let Some(factor) = common {
                        return Ok(Some(DeltaWitness { u, v, r, s, t, factor }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// If `f` is irreducible, EO, with ARS, return `λ` when every mate matrix equals `λ N^{⊗2}`.
pub fn orthogonality(f: &Signature) -> Result<Option<Scalar>> {
    if !f.is_eo() || !f.is_ars() || f.is_zero() {
        return Err(Error::Precondition("orthogonality needs a nonzero EO signature with ARS".into()));
    }
    if f.arity() < 3 {
        return Err(Error::Precondition("orthogonality needs arity at least 3".into()));
    }
    if upf(f)?.factors.len() != 1 {
        return Err(Error::Precondition("orthogonality needs an irreducible signature".into()));
    }
    let mut lambda: Option<Scalar> = None;
    for (i, j) in all_pairs(f.arity()) {
        let (_, m) = mate(f, i, j)?;
        match (m.as_scaled_n2(), &lambda) {
            (None, _) => return Ok(None),
            (Some(l), _) if l.is_zero() => return Ok(None),
            (Some(l), None) => lambda = Some(l),
            (Some(l), Some(prev)) if l != *prev => return Ok(None),
            _ => {}
        }
    }
    Ok(lambda)
}

/// All factorization-based predicates for one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosticReport {
    pub in_b: bool,
    pub int_b: bool,
    pub int_b_nonzero: bool,
    pub delta_witness: Option<DeltaWitness>,
    /// Present only when `f` is irreducible, EO, ARS and orthogonal.
    pub orthogonality_lambda: Option<Scalar>,
}

pub fn diagnose(f: &Signature) -> Result<DiagnosticReport> {
    let orthogonality_lambda = orthogonality(f).ok().flatten();
    Ok(DiagnosticReport {
        in_b: in_b(f),
        int_b: int_b(f),
        int_b_nonzero: int_b_nonzero(f),
        delta_witness: delta_property(f)?,
        orthogonality_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::tensor;

    #[test]
    fn membership_in_binary_products() {
        assert!(in_b(&tensor(&Signature::diseq2(), &Signature::binary_i()).unwrap()));
        assert!(!in_b(&Signature::disequality(2).unwrap()));
        assert!(in_b(&Signature::zero(4)));
        assert!(!in_b(&Signature::eq2()));
    }

    #[test]
    fn six_vertex_ones_is_in_merge_class_only() {
        // Rows (x1,x2), columns (x3,x4): [[0,0,0,1],[0,1,1,0],[0,1,1,0],[1,0,0,0]].
        let f = Signature::from_fn(4, |i| Scalar::from_int((i.count_ones() == 2) as i64));
        assert!(int_b(&f));
        assert!(int_b_nonzero(&f));
        assert!(!in_b(&f));
    }

    #[test]
    fn small_arities_are_not_merge_class() {
        assert!(!int_b(&Signature::diseq2()));
    }

    #[test]
    fn delta_property_on_a_product() {
        // b(x5,x6) divides every merge on the first four variables.
        let f = tensor(&Signature::from_fn(4, |i| Scalar::from_int((i.count_ones() == 2) as i64)), &Signature::binary_i())
            .unwrap();
        let w = delta_property(&f).unwrap().unwrap();
        assert_eq!((w.u, w.v, w.r, w.s, w.t), (5, 6, 1, 2, 3));
        assert!(w.factor.associate_ratio(&Signature::binary_i()).is_some());
    }

    #[test]
    fn orthogonality_of_diseq4() {
        let d = Signature::disequality(2).unwrap();
        // Mating on (1,2) gives only the corner entries, so not orthogonal.
        assert_eq!(orthogonality(&d).unwrap(), None);
        assert!(orthogonality(&tensor(&Signature::diseq2(), &Signature::diseq2()).unwrap()).is_err());
    }

    #[test]
    fn norm_balanced_six_vertex_is_reducible() {
        // c = 0 and |a| = |b|: the support is x4 = ¬x1, x3 = ¬x2 and the table splits.
        let mut v = vec![Scalar::zero(); 16];
        v[0b0011] = Scalar::one();
        v[0b1100] = Scalar::one();
        v[0b0101] = Scalar::i();
        v[0b1010] = Scalar::gaussian(0, -1);
        let f = Signature::new(4, v).unwrap();
        assert!(orthogonality(&f).is_err());
        assert!(in_b(&f));
    }
}
