use eohk_core::bridges::{csp_eval_bruteforce, csp_to_eo};
use eohk_core::classifier::{classify, Outcome};
use eohk_core::evaluators::{affine_reps, eval_affine_grid, eval_product_grid, product_reps};
use eohk_core::factorization::upf;
use eohk_core::gadgets::{eval_eo_grid, full_mate, mate, merge_pairs};
use eohk_core::io::{parse_json, signature_from_json, JsonStyle};
use eohk_core::random::{
    named, random_affine, random_csp, random_eo_ars, random_grid, random_product, random_signature, small_scalar,
};
use eohk_core::recognizers::{affine_support, check_affine, check_product};
use eohk_core::transform::{is_real, z_transform, Direction};
use eohk_core::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (small_scalar(&mut r, 0.1), small_scalar(&mut r, 0.1), small_scalar(&mut r, 0.1));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Scalar::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn ars_iff_z_image_real(seed in any::<u64>(), arity in 1usize..=5) {
        let mut r = rng(seed);
        let f = random_eo_or_any(&mut r, arity);
        prop_assert_eq!(f.is_ars(), is_real(&z_transform(&f, Direction::Forward)));
        let back = z_transform(&z_transform(&f, Direction::Forward), Direction::Inverse);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn witnesses_rebuild_and_product_implies_affine_support(seed in any::<u64>(), arity in 1usize..=5) {
        let mut r = rng(seed);
        let f = if r.gen_bool(0.5) { random_affine(&mut r, arity) } else { random_product(&mut r, arity) };
        if let Ok(rep) = check_affine(&f) {
            prop_assert_eq!(rep.reconstruct(), f.clone());
        }
        if let Ok(rep) = check_product(&f) {
            prop_assert_eq!(rep.reconstruct(), f.clone());
            prop_assert!(affine_support(&f.support()).is_some());
        }
    }

    #[test]
    fn generated_classes_are_recognized(seed in any::<u64>(), arity in 1usize..=5) {
        let mut r = rng(seed);
        prop_assert!(check_affine(&random_affine(&mut r, arity)).is_ok());
        prop_assert!(check_product(&random_product(&mut r, arity)).is_ok());
    }

    #[test]
    fn upf_rebuilds(seed in any::<u64>(), arity in 1usize..=6) {
        let mut r = rng(seed);
        let f = random_signature(&mut r, arity, 0.4);
        if f.is_zero() {
            prop_assert!(upf(&f).is_err());
            return Ok(());
        }
        let fact = upf(&f).unwrap();
        prop_assert_eq!(fact.reconstruct(), f);
        for g in &fact.factors {
            if fact.factors.len() > 1 {
                prop_assert_eq!(upf(&g.sig).unwrap().factors.len(), 1);
            }
        }
    }

    #[test]
    fn merges_commute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_signature(&mut r, 6, 0.3);
        let p = (1, 4);
        let q = (2, 6);
        prop_assert_eq!(merge_pairs(&f, &[p, q]).unwrap(), merge_pairs(&f, &[q, p]).unwrap());
    }

    #[test]
    fn mate_matrices_of_eo_ars_are_gram_like(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_eo_ars(&mut r, 4, 0.3);
        for (i, j) in [(1, 2), (1, 3), (2, 4)] {
            let (sig, m) = mate(&f, i, j).unwrap();
            prop_assert!(m.cauchy_schwarz_holds());
            prop_assert!(sig.is_eo() && sig.is_ars());
        }
        prop_assert!(full_mate(&f).is_real());
    }

    #[test]
    fn fast_evaluators_match_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pool = named(vec![random_affine(&mut r, 2), random_affine(&mut r, 3)]);
        let g = random_grid(&mut r, &pool, 8);
        let reps = affine_reps(&g).unwrap();
        prop_assert_eq!(eval_affine_grid(&g, &reps).unwrap(), eohk_core::gadgets::eval_holant_diseq(&g).unwrap());
        let pool = named(vec![random_product(&mut r, 2), random_product(&mut r, 4)]);
        let g = random_grid(&mut r, &pool, 8);
        let reps = product_reps(&g).unwrap();
        prop_assert_eq!(eval_product_grid(&g, &reps).unwrap(), eohk_core::gadgets::eval_holant_diseq(&g).unwrap());
    }

    #[test]
    fn eo_ars_grids_have_real_values(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pool = named(vec![random_eo_ars(&mut r, 2, 0.2), random_eo_ars(&mut r, 4, 0.3)]);
        let g = random_grid(&mut r, &pool, 8);
        prop_assert!(eval_eo_grid(&g).unwrap().is_real());
    }

    #[test]
    fn classifier_agrees_with_recognizers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let set = named((0..r.gen_range(1..=3)).map(|_| {
            let f = random_eo_ars(&mut r, 4, 0.5);
            if f.is_zero() { eohk_core::Signature::diseq2() } else { f }
        }).collect());
        let v = classify(&set).unwrap();
        let all_affine = set.iter().all(|(_, f)| check_affine(f).is_ok());
        let all_product = set.iter().all(|(_, f)| check_product(f).is_ok());
        prop_assert_eq!(v.outcome.is_tractable(), all_affine || all_product);
        prop_assert_eq!(v.outcome == Outcome::TractableAffine, all_affine);
        for (w, (_, f)) in v.witnesses.iter().zip(&set) {
            prop_assert_eq!(&w.rep.reconstruct(), f);
        }
    }

    #[test]
    fn csp_encoding_preserves_value(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_csp(&mut r, 4, 4, 3, 0.3);
        let enc = csp_to_eo(&inst).unwrap();
        prop_assert_eq!(enc.scaled.value(64).unwrap(), csp_eval_bruteforce(&inst).unwrap());
    }

    #[test]
    fn signature_json_round_trips(seed in any::<u64>(), arity in 1usize..=4) {
        let mut r = rng(seed);
        let f = random_signature(&mut r, arity, 0.3);
        let text = JsonStyle::default().signature(&f).to_string();
        prop_assert_eq!(signature_from_json(&parse_json(&text).unwrap(), "f").unwrap(), f);
    }
}

fn random_eo_or_any<R: Rng>(r: &mut R, arity: usize) -> eohk_core::Signature {
    if arity % 2 == 0 && r.gen_bool(0.5) {
        random_eo_ars(r, arity, 0.3)
    } else {
        random_signature(r, arity, 0.3)
    }
}
