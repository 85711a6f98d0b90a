//! Fixtures shared by the benchmarks.

use eohk_core::gadgets::{tensor, SignatureGrid};
use eohk_core::random::{random_affine, random_irreducible, random_product};
use eohk_core::Signature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Closed ring of `n` copies of `f` (arity 4): ports 3, 4 of each vertex feed ports 1, 2 of the next.
pub fn ring(f: &Signature, n: usize) -> SignatureGrid {
    assert_eq!(f.arity(), 4);
    let mut g = SignatureGrid::new();
    g.add_signature("f", f.clone());
    let vs: Vec<usize> = (0..n).map(|_| g.add_vertex("f")).collect();
    for k in 0..n {
        let next = vs[(k + 1) % n];
        g.connect((vs[k], 3), (next, 1));
        g.connect((vs[k], 4), (next, 2));
    }
    g
}

/// Random arity-4 affine signature with nonempty support.
pub fn affine_label(seed: u64) -> Signature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f = random_affine(&mut rng, 4);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random arity-4 product-type signature with nonempty support.
pub fn product_label(seed: u64) -> Signature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f = random_product(&mut rng, 4);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Tensor product of random prime signatures with the given arities.
pub fn factorable(seed: u64, arities: &[usize]) -> Signature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = arities.iter().map(|&n| random_irreducible(&mut rng, n));
    let first = parts.next().expect("at least one factor");
    parts.fold(first, |acc, g| tensor(&acc, &g).expect("arity within bounds"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use eohk_core::evaluators::{affine_reps, eval_affine_grid, eval_product_grid, product_reps};
    use eohk_core::factorization::upf;
    use eohk_core::gadgets::eval_holant_diseq;

    #[test]
    fn small_rings_match_brute_force() {
        for seed in 0..4 {
            let g = ring(&affine_label(seed), 3);
            assert_eq!(eval_affine_grid(&g, &affine_reps(&g).unwrap()).unwrap(), eval_holant_diseq(&g).unwrap());
            let g = ring(&product_label(seed), 3);
            assert_eq!(eval_product_grid(&g, &product_reps(&g).unwrap()).unwrap(), eval_holant_diseq(&g).unwrap());
        }
    }

    #[test]
    fn factorable_splits_into_its_parts() {
        for seed in 0..4 {
            let f = factorable(seed, &[2, 3, 2]);
            assert_eq!(upf(&f).unwrap().factors.len(), 3);
        }
    }
}
