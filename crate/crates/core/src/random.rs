//! Seeded generators for signatures, grids and CSP instances used by the
//! property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bridges::{CspConstraint, CspInstance};
use crate::gadgets::SignatureGrid;
use crate::recognizers::{AffineRep, AffineSpace, ProductFactor, ProductRep};
use crate::scalar::Scalar;
use crate::signature::{full_mask, Signature};
use crate::transform::tilde;

/// A Gaussian integer with parts in `-3..=3`.
pub fn small_gaussian<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::gaussian(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

/// A scalar from `ℤ[i, √2]` with small coefficients, zero with probability about `zero_prob`.
pub fn small_scalar<R: Rng>(rng: &mut R, zero_prob: f64) -> Scalar {
    if rng.gen_bool(zero_prob) {
        return Scalar::zero();
    }
    let mut s = small_gaussian(rng);
    if rng.gen_bool(0.2) {
        s += Scalar::sqrt2() * small_gaussian(rng);
    }
    s
}

pub fn random_signature<R: Rng>(rng: &mut R, arity: usize, zero_prob: f64) -> Signature {
    Signature::from_fn(arity, |_| small_scalar(rng, zero_prob))
}

/// A random EO signature with ARS: half-weight inputs only, `f(ᾱ) = conj f(α)`.
pub fn random_eo_ars<R: Rng>(rng: &mut R, arity: usize, zero_prob: f64) -> Signature {
    assert!(arity % 2 == 0, "EO signatures have even arity");
    let m = full_mask(arity);
    let mut v = vec![Scalar::zero(); 1 << arity];
    for idx in 0..1usize << arity {
        if idx.count_ones() as usize * 2 != arity || idx > idx ^ m {
            continue;
        }
        let s = small_scalar(rng, zero_prob);
        v[idx ^ m] = s.conj();
        v[idx] = s;
    }
    Signature::new(arity, v).expect("table length matches")
}

/// A random signature with ARS (any support).
pub fn random_ars<R: Rng>(rng: &mut R, arity: usize, zero_prob: f64) -> Signature {
    let m = full_mask(arity);
    let mut v = vec![Scalar::zero(); 1 << arity];
    for idx in 0..1usize << arity {
        if idx > idx ^ m {
            continue;
        }
        let s = small_scalar(rng, zero_prob);
        v[idx ^ m] = s.conj();
        v[idx] = s;
    }
    Signature::new(arity, v).expect("table length matches")
}

/// A random EO signature without any symmetry requirement.
pub fn random_eo<R: Rng>(rng: &mut R, arity: usize, zero_prob: f64) -> Signature {
    Signature::from_fn(arity, |idx| {
        if idx.count_ones() as usize * 2 == arity {
            small_scalar(rng, zero_prob)
        } else {
            Scalar::zero()
        }
    })
}

/// A binary EO signature `(0, a, ā, 0)` with `a ≠ 0`.
pub fn random_binary_eo<R: Rng>(rng: &mut R) -> Signature {
    loop {
        let a = small_scalar(rng, 0.0);
        if !a.is_zero() {
            return Signature::binary_eo(a.clone(), a.conj());
        }
    }
}

/// A random affine space of the given arity.
pub fn random_affine_space<R: Rng>(rng: &mut R, arity: usize) -> AffineSpace {
    let base = rng.gen_range(0..1usize << arity);
    let gens: Vec<usize> = (0..rng.gen_range(0..=arity)).map(|_| rng.gen_range(0..1usize << arity)).collect();
    AffineSpace::new(arity, base, &gens).expect("vectors fit the arity")
}

/// A random nonzero affine signature.
pub fn random_affine<R: Rng>(rng: &mut R, arity: usize) -> Signature {
    let space = random_affine_space(rng, arity);
    let lambda = loop {
        let l = small_scalar(rng, 0.0);
        if !l.is_zero() {
            break l;
        }
    };
    let mut q_cross = Vec::new();
    for j in 1..=arity {
        for k in j + 1..=arity {
            if rng.gen_bool(0.3) {
                q_cross.push((j, k));
            }
        }
    }
    AffineRep {
        lambda,
        space,
        q_const: rng.gen_range(0..4),
        q_linear: (0..arity).map(|_| rng.gen_range(0..4)).collect(),
        q_cross,
    }
    .reconstruct()
}

/// A random nonzero product-type signature built from overlapping factors.
pub fn random_product<R: Rng>(rng: &mut R, arity: usize) -> Signature {
    loop {
        let mut factors = Vec::new();
        for _ in 0..rng.gen_range(0..=arity + 1) {
            let a = rng.gen_range(1..=arity);
            match rng.gen_range(0..3) {
                0 => factors.push(ProductFactor::Unary { port: a, w0: small_scalar(rng, 0.2), w1: small_scalar(rng, 0.2) }),
                kind => {
                    let b = rng.gen_range(1..=arity);
                    if a == b {
                        continue;
                    }
                    factors.push(if kind == 1 {
                        ProductFactor::Equality { a, b }
                    } else {
                        ProductFactor::Disequality { a, b }
                    });
                }
            }
        }
        let f = ProductRep { arity, factors }.reconstruct();
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random irreducible signature: redraw until the factorization is trivial.
pub fn random_irreducible<R: Rng>(rng: &mut R, arity: usize) -> Signature {
    loop {
        let f = if arity % 2 == 0 && rng.gen_bool(0.5) {
            random_eo_ars(rng, arity, 0.3)
        } else {
            random_signature(rng, arity, 0.3)
        };
        if f.is_zero() {
            continue;
        }
        if crate::factorization::upf(&f).map(|fact| fact.factors.len() == 1).unwrap_or(false) {
            return f;
        }
    }
}

/// Close a multiset of labels into a grid by pairing all ports uniformly at random.
///
/// Labels are drawn from `pool` until the port count is even and the edge
/// budget is used or a random stop fires.
pub fn random_grid<R: Rng>(rng: &mut R, pool: &[(String, Signature)], max_edges: usize) -> SignatureGrid {
    assert!(!pool.is_empty());
    loop {
        let mut chosen: Vec<usize> = Vec::new();
        let mut ports = 0usize;
        loop {
            let fits: Vec<usize> = (0..pool.len()).filter(|&k| ports + pool[k].1.arity() <= 2 * max_edges).collect();
            if fits.is_empty() {
                break;
            }
            let k = *fits.choose(rng).expect("nonempty");
            chosen.push(k);
            ports += pool[k].1.arity();
            if ports % 2 == 0 && rng.gen_bool(0.35) {
                break;
            }
        }
        if ports == 0 || ports % 2 != 0 {
            continue;
        }
        let mut g = SignatureGrid::new();
        let mut ends = Vec::with_capacity(ports);
        for &k in &chosen {
            let (name, f) = &pool[k];
            g.add_signature(name.clone(), f.clone());
            let v = g.add_vertex(name.clone());
            ends.extend((1..=f.arity()).map(|p| (v, p)));
        }
        ends.shuffle(rng);
        for pair in ends.chunks(2) {
            g.connect(pair[0], pair[1]);
        }
        return g;
    }
}

/// Name a list of signatures `f0, f1, …`.
pub fn named(fs: Vec<Signature>) -> Vec<(String, Signature)> {
    fs.into_iter().enumerate().map(|(k, f)| (format!("f{k}"), f)).collect()
}

/// A random CSP instance over freshly drawn signatures.
pub fn random_csp<R: Rng>(
    rng: &mut R,
    max_vars: usize,
    max_constraints: usize,
    max_arity: usize,
    zero_prob: f64,
) -> CspInstance {
    let num_vars = rng.gen_range(1..=max_vars);
    let mut signatures = BTreeMap::new();
    let mut constraints = Vec::new();
    for c in 0..rng.gen_range(0..=max_constraints) {
        let arity = rng.gen_range(1..=max_arity);
        let name = format!("g{c}");
        signatures.insert(name.clone(), random_signature(rng, arity, zero_prob));
        let vars = (0..arity).map(|_| rng.gen_range(0..num_vars)).collect();
        constraints.push(CspConstraint { sig: name, vars });
    }
    CspInstance { num_vars, signatures, constraints }
}

/// A random CSP instance whose constraints are tildes of functions with affine support.
pub fn random_opposite_csp<R: Rng>(rng: &mut R, max_vars: usize, max_constraints: usize, max_base_arity: usize) -> CspInstance {
    let num_vars = rng.gen_range(1..=max_vars);
    let mut signatures = BTreeMap::new();
    let mut constraints = Vec::new();
    for c in 0..rng.gen_range(0..=max_constraints) {
        let n = rng.gen_range(1..=max_base_arity);
        let space = random_affine_space(rng, n);
        let g = Signature::from_fn(n, |idx| {
            if space.contains(idx) {
                loop {
                    let s = small_scalar(rng, 0.0);
                    if !s.is_zero() {
                        break s;
                    }
                }
            } else {
                Scalar::zero()
            }
        });
        let name = format!("t{c}");
        signatures.insert(name.clone(), tilde(&g).expect("small arity"));
        let vars = (0..2 * n).map(|_| rng.gen_range(0..num_vars)).collect();
        constraints.push(CspConstraint { sig: name, vars });
    }
    CspInstance { num_vars, signatures, constraints }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let f = random_eo_ars(&mut rng, 4, 0.3);
            assert!(f.is_eo() && f.is_ars());
            assert!(crate::recognizers::recognize_affine(&random_affine(&mut rng, 3)).is_some());
            assert!(crate::recognizers::recognize_product(&random_product(&mut rng, 3)).is_some());
            let g = random_grid(&mut rng, &named(vec![Signature::diseq2(), Signature::disequality(2).unwrap()]), 6);
            g.validate().unwrap();
            assert!(g.num_edges() <= 6);
        }
    }
}
