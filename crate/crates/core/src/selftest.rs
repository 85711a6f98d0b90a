//! Seeded property suites over the whole library, one per acceptance
//! criterion, runnable at full or reduced sizes.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appendix::verify_f8;
use crate::bridges::{
    csp_eval_bruteforce, csp_to_eo, eo_to_csp, opposite_reduction, square_reduction, CspConstraint, CspInstance,
    OppositeReduction,
};
use crate::classifier::{classify, classify_single_arity4, diseq_realizing, Outcome};
use crate::error::{Error, Result};
use crate::evaluators::{affine_reps, eval_affine_grid_with, eval_product_grid_with, product_reps};
use crate::factorization::{ars_normalize, upf};
use crate::gadgets::{contract, eval_eo_grid_capped, eval_holant_bipartite_capped, mate, two_stretch, EdgeSemantics, SignatureGrid};
use crate::random::{
    named, random_affine, random_ars, random_csp, random_eo, random_eo_ars, random_grid, random_irreducible,
    random_opposite_csp, random_product, random_signature,
};
use crate::recognizers::{check_product, pairwise_opposite, AffineSpace};
use crate::scalar::Scalar;
use crate::signature::{gather_bits, Signature, MAX_ARITY};
use crate::transform::{is_real, norm_square, row_transform, tilde, z_transform, Direction};

/// Brute-force cap for grids whose zero weights prune most branches.
const PRUNED_CAP: usize = 64;

/// Case counts per suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sizes {
    pub oracle_grids: usize,
    pub stretch_grids: usize,
    pub upf_products: usize,
    pub ars_reducible: usize,
    /// Largest even arity for the exhaustive affine-subspace enumeration.
    pub opposite_max_arity: usize,
    pub ars_real: usize,
    pub csp_instances: usize,
    pub reduction_instances: usize,
    pub mate_signatures: usize,
}

impl Sizes {
    pub fn full() -> Self {
        Sizes {
            oracle_grids: 200,
            stretch_grids: 200,
            upf_products: 500,
            ars_reducible: 200,
            opposite_max_arity: 6,
            ars_real: 1000,
            csp_instances: 200,
            reduction_instances: 100,
            mate_signatures: 500,
        }
    }

    pub fn reduced() -> Self {
        Sizes {
            oracle_grids: 30,
            stretch_grids: 30,
            upf_products: 60,
            ars_reducible: 30,
            opposite_max_arity: 4,
            ars_real: 150,
            csp_instances: 30,
            reduction_instances: 20,
            mate_signatures: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub id: usize,
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub const SUITE_NAMES: [&str; 13] = [
    "evaluator oracle equivalence",
    "EO value equals two-stretched Holant value",
    "unique prime factorization",
    "ARS factor normalization",
    "opposite pairings of half-weight affine spaces",
    "simplex-code pairing",
    "ARS iff real after Z",
    "CSP to EO encoding",
    "square and opposite reductions",
    "mate matrix forms",
    "arity-4 product-type biconditional",
    "arity-8 merging-form signature",
    "classifier smoke suite",
];

type Check = std::result::Result<usize, String>;

fn rng_for(seed: u64, id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn lib<T>(r: Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn brute(grid: &SignatureGrid, semantics: EdgeSemantics) -> std::result::Result<Scalar, String> {
    let sig = lib(contract(&grid.as_gate(), semantics, PRUNED_CAP), "brute force")?;
    Ok(sig.value(0).clone())
}

fn pick_semantics<R: Rng>(rng: &mut R) -> EdgeSemantics {
    if rng.gen_bool(0.5) {
        EdgeSemantics::Disequality
    } else {
        EdgeSemantics::Equality
    }
}

fn evaluator_oracle(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    for case in 0..sizes.oracle_grids {
        let pool = named(
            (0..rng.gen_range(1..=3))
                .map(|_| {
                    let arity = rng.gen_range(1..=4);
                    random_affine(rng, arity)
                })
                .collect(),
        );
        let grid = random_grid(rng, &pool, 10);
        let sem = pick_semantics(rng);
        let reps = lib(affine_reps(&grid), "affine reps")?;
        let fast = lib(eval_affine_grid_with(&grid, &reps, sem), "affine evaluator")?;
        if fast != brute(&grid, sem)? {
            return Err(format!("affine grid {case}: evaluator {fast} differs from brute force"));
        }

        let pool = named(
            (0..rng.gen_range(1..=3))
                .map(|_| {
                    let arity = rng.gen_range(1..=4);
                    random_product(rng, arity)
                })
                .collect(),
        );
        let grid = random_grid(rng, &pool, 10);
        let sem = pick_semantics(rng);
        let reps = lib(product_reps(&grid), "product reps")?;
        let fast = lib(eval_product_grid_with(&grid, &reps, sem), "product evaluator")?;
        if fast != brute(&grid, sem)? {
            return Err(format!("product grid {case}: evaluator {fast} differs from brute force"));
        }
    }
    Ok(2 * sizes.oracle_grids)
}

fn eo_equals_stretched_holant(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    for case in 0..sizes.stretch_grids {
        let pool = named(
            (0..rng.gen_range(1..=3))
                .map(|_| {
                    let arity = 2 * rng.gen_range(1..=2);
                    if rng.gen_bool(0.5) {
                        random_eo_ars(rng, arity, 0.3)
                    } else {
                        random_eo(rng, arity, 0.3)
                    }
                })
                .collect(),
        );
        let grid = random_grid(rng, &pool, 8);
        let eo = lib(eval_eo_grid_capped(&grid, PRUNED_CAP), "EO value")?;
        let holant = lib(eval_holant_bipartite_capped(&two_stretch(&grid), PRUNED_CAP), "Holant value")?;
        if eo != holant {
            return Err(format!("grid {case}: EO value {eo} but stretched Holant value {holant}"));
        }
        if pool.iter().all(|(_, f)| f.is_ars()) && !eo.is_real() {
            return Err(format!("grid {case}: ARS labels gave the non-real value {eo}"));
        }
    }
    Ok(sizes.stretch_grids)
}

/// Tensor the factors onto random disjoint variable sets; returns the product
/// and the sorted variable set of each factor.
fn interleave<R: Rng>(rng: &mut R, factors: &[Signature]) -> (Signature, Vec<Vec<usize>>) {
    let n: usize = factors.iter().map(Signature::arity).sum();
    let mut positions: Vec<usize> = (1..=n).collect();
    positions.shuffle(rng);
    let mut blocks = Vec::with_capacity(factors.len());
    let mut rest = &positions[..];
    for g in factors {
        let (head, tail) = rest.split_at(g.arity());
        let mut vars = head.to_vec();
        vars.sort_unstable();
        blocks.push(vars);
        rest = tail;
    }
    let f = Signature::from_fn(n, |x| {
        factors
            .iter()
            .zip(&blocks)
            .map(|(g, vars)| g.value(gather_bits(x, n, vars)).clone())
            .product()
    });
    (f, blocks)
}

fn unique_factorization(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    for case in 0..sizes.upf_products {
        let count = rng.gen_range(2..=4);
        let mut budget = 10;
        let mut factors = Vec::new();
        for k in 0..count {
            let max = (budget - (count - k - 1)).min(4);
            let arity = rng.gen_range(1..=max);
            budget -= arity;
            factors.push(random_irreducible(rng, arity));
        }
        let (f, blocks) = interleave(rng, &factors);
        let fact = lib(upf(&f), "upf")?;
        if fact.reconstruct() != f {
            return Err(format!("product {case}: factorization does not rebuild the input"));
        }
        let found: BTreeSet<Vec<usize>> = fact.partition().into_iter().collect();
        let expected: BTreeSet<Vec<usize>> = blocks.iter().cloned().collect();
        if found != expected {
            return Err(format!("product {case}: partition {found:?}, expected {expected:?}"));
        }
        for (g, vars) in factors.iter().zip(&blocks) {
            let got = fact.factor_on(vars).expect("partition matched");
            if got.sig.associate_ratio(g).is_none() {
                return Err(format!("product {case}: factor on {vars:?} is not an associate of the original"));
            }
        }
    }
    Ok(sizes.upf_products)
}

fn ars_normalization(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    let u = Signature::from_ints(2, &[0, 1, -1, 0]).expect("arity 2");
    let f = crate::gadgets::tensor(&u, &u).expect("small");
    let fact = lib(ars_normalize(&lib(upf(&f), "upf")?), "ars_normalize")?;
    let expected = [
        Signature::from_gaussian(2, &[(0, 0), (0, 1), (0, -1), (0, 0)]).expect("arity 2"),
        Signature::from_gaussian(2, &[(0, 0), (0, -1), (0, 1), (0, 0)]).expect("arity 2"),
    ];
    let got: Vec<&Signature> = fact.factors.iter().map(|g| &g.sig).collect();
    if got != expected.iter().collect::<Vec<_>>() || fact.reconstruct() != f {
        return Err("(0,1,-1,0)⊗(0,1,-1,0) does not normalize to (0,i,-i,0)⊗(0,-i,i,0)".into());
    }
    for case in 0..sizes.ars_reducible {
        let count = rng.gen_range(2..=3);
        let parts: Vec<Signature> = (0..count)
            .map(|_| loop {
                let arity = 2 * rng.gen_range(1..=2);
                let g = random_eo_ars(rng, arity, 0.3);
                if !g.is_zero() {
                    break g;
                }
            })
            .collect();
        let (f, _) = interleave(rng, &parts);
        let fact = lib(upf(&f), "upf")?;
        if fact.factors.len() < 2 {
            return Err(format!("signature {case}: product of {count} factors was not split"));
        }
        let norm = lib(ars_normalize(&fact), "ars_normalize")?;
        if let Some(bad) = norm.factors.iter().find(|g| !g.sig.is_ars()) {
            return Err(format!("signature {case}: factor on {:?} lacks ARS after normalization", bad.vars));
        }
        if norm.reconstruct() != f {
            return Err(format!("signature {case}: normalized factors do not rebuild the input"));
        }
    }
    Ok(sizes.ars_reducible + 1)
}

/// Every affine subspace of the half-weight strings of the given arity.
pub fn half_weight_affine_spaces(arity: usize) -> Vec<Vec<usize>> {
    let half = arity as u32 / 2;
    let points: Vec<usize> = (0..1usize << arity).filter(|x| x.count_ones() == half).collect();
    let mut seen: BTreeSet<Vec<usize>> = points.iter().map(|&p| vec![p]).collect();
    let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(space) = frontier.pop() {
        for &q in &points {
            if space.binary_search(&q).is_ok() {
                continue;
            }
            let shift = q ^ space[0];
            let mut grown: Vec<usize> = space.iter().flat_map(|&p| [p, p ^ shift]).collect();
            grown.sort_unstable();
            if grown.iter().all(|x| x.count_ones() == half) && seen.insert(grown.clone()) {
                frontier.push(grown);
            }
        }
    }
    seen.into_iter().collect()
}

fn space_of(arity: usize, points: &[usize]) -> Result<AffineSpace> {
    let gens: Vec<usize> = points.iter().map(|&p| p ^ points[0]).collect();
    AffineSpace::new(arity, points[0], &gens)
}

fn opposite_exhaustive(_: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    let mut total = 0;
    for arity in (2..=sizes.opposite_max_arity).step_by(2) {
        for points in half_weight_affine_spaces(arity) {
            let space = lib(space_of(arity, &points), "affine space")?;
            if space.len() != points.len() {
                return Err(format!("arity {arity}: rebuilt space has {} points, expected {}", space.len(), points.len()));
            }
            let (pairing, checks) = pairwise_opposite(&space).map_err(|e| format!("arity {arity}, space {points:?}: {e}"))?;
            if !pairing.holds_on(arity, &points) || checks.index_sets != 1 << space.dim() {
                return Err(format!("arity {arity}, space {points:?}: pairing {:?} is not valid", pairing.pairs));
            }
            total += 1;
        }
    }
    Ok(total)
}

/// The 14-variable space `{α ∘ ᾱ}` over the [7,3] simplex code.
pub fn simplex_code_space() -> AffineSpace {
    let rows = [0b000_1111usize, 0b011_0011, 0b101_0101];
    let gens: Vec<usize> = rows.iter().map(|&r| (r << 7) | r).collect();
    AffineSpace::new(14, 0x7f, &gens).expect("fits 14 variables")
}

fn simplex_pairing(_: &mut ChaCha8Rng, _: &Sizes) -> Check {
    let space = simplex_code_space();
    if space.len() != 8 {
        return Err(format!("space has {} points, expected 8", space.len()));
    }
    let (pairing, _) = pairwise_opposite(&space).map_err(|e| e.to_string())?;
    if !pairing.holds_on(14, &space.points()) {
        return Err(format!("pairing {:?} is not valid", pairing.pairs));
    }
    let canonical = crate::recognizers::OppositePairing { pairs: (1..=7).map(|i| (i, i + 7)).collect() };
    if !canonical.holds_on(14, &space.points()) {
        return Err("(i, i+7) is not a valid pairing".into());
    }
    Ok(1)
}

fn ars_iff_real(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    if row_transform(&Signature::eq2(), Direction::Forward) != Signature::diseq2() {
        return Err("(=₂)Z^{⊗2} is not (≠₂)".into());
    }
    for case in 0..sizes.ars_real {
        let arity = rng.gen_range(1..=6);
        let f = match case % 3 {
            0 => random_ars(rng, arity, 0.3),
            1 => random_signature(rng, arity, 0.3),
            _ => {
                let real = Signature::from_fn(arity, |_| Scalar::from_int(rng.gen_range(-3..=3)));
                z_transform(&real, Direction::Inverse)
            }
        };
        if f.is_ars() != is_real(&z_transform(&f, Direction::Forward)) {
            return Err(format!("signature {case}: ARS is {} but Z f is not real-valued accordingly", f.is_ars()));
        }
        if case % 3 != 1 && !f.is_ars() {
            return Err(format!("signature {case}: constructed to have ARS but does not"));
        }
    }
    Ok(sizes.ars_real)
}

fn csp_encoding(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    for case in 0..sizes.csp_instances {
        let inst = random_csp(rng, 6, 6, 3, 0.3);
        let want = lib(csp_eval_bruteforce(&inst), "CSP brute force")?;
        let enc = lib(csp_to_eo(&inst), "csp_to_eo")?;
        let got = lib(enc.scaled.value(PRUNED_CAP), "EO value")?;
        if got != want {
            return Err(format!("instance {case}: CSP value {want}, EO value {got}"));
        }
        let back = lib(eo_to_csp(&enc.scaled.grid), "eo_to_csp")?;
        let round = lib(csp_eval_bruteforce(&back), "decoded brute force")? * &enc.scaled.scale;
        if round != want {
            return Err(format!("instance {case}: decoded instance has value {round}, expected {want}"));
        }
    }
    Ok(sizes.csp_instances)
}

fn reductions(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    for case in 0..sizes.reduction_instances {
        let (inst, base) = loop {
            let num_vars = rng.gen_range(1..=5);
            let mut base = BTreeMap::new();
            let mut inst = CspInstance { num_vars, ..Default::default() };
            for c in 0..rng.gen_range(0..=4) {
                let arity = rng.gen_range(1..=3);
                let f = random_ars(rng, arity, 0.3);
                let name = format!("s{c}");
                inst.signatures.insert(name.clone(), norm_square(&f));
                base.insert(name.clone(), f);
                let vars = (0..arity).map(|_| rng.gen_range(0..num_vars)).collect();
                inst.constraints.push(CspConstraint { sig: name, vars });
            }
            // Each variable becomes one disequality vertex of arity twice its occurrences.
            if inst.occurrences().iter().all(|o| 2 * o.len() <= MAX_ARITY) {
                break (inst, base);
            }
        };
        let want = lib(csp_eval_bruteforce(&inst), "CSP brute force")?;
        let got = lib(lib(square_reduction(&inst, &base), "square_reduction")?.value(PRUNED_CAP), "grid value")?;
        if got != want {
            return Err(format!("square instance {case}: CSP value {want}, grid value {got}"));
        }
    }

    for case in 0..sizes.reduction_instances {
        let (inst, red) = loop {
            let inst = random_opposite_csp(rng, 5, 3, 2);
            match opposite_reduction(&inst) {
                Err(Error::TooLarge(_)) => continue,
                red => break (inst, lib(red, "opposite_reduction")?),
            }
        };
        let want = lib(csp_eval_bruteforce(&inst), "CSP brute force")?;
        let got = lib(red.value(PRUNED_CAP), "grid value")?;
        if got != want {
            return Err(format!("opposite instance {case}: CSP value {want}, reduced value {got}"));
        }
    }

    // An odd cycle of opposite pairs has no consistent two-colouring.
    let cycle = CspInstance {
        num_vars: 3,
        signatures: [("t".to_string(), lib(tilde(&Signature::unary(Scalar::one(), Scalar::from_int(2))), "tilde")?)].into(),
        constraints: [[0, 1], [1, 2], [2, 0]].iter().map(|v| CspConstraint { sig: "t".into(), vars: v.to_vec() }).collect(),
    };
    let red = lib(opposite_reduction(&cycle), "opposite_reduction")?;
    if !matches!(red, OppositeReduction::Zero { .. }) || !lib(csp_eval_bruteforce(&cycle), "brute force")?.is_zero() {
        return Err("an odd opposite cycle did not reduce to zero".into());
    }
    Ok(2 * sizes.reduction_instances + 1)
}

fn mate_forms(rng: &mut ChaCha8Rng, sizes: &Sizes) -> Check {
    let mut count = 0;
    while count < sizes.mate_signatures {
        let zero_prob = rng.gen_range(0.0..0.7);
        let f = random_eo_ars(rng, 4, zero_prob);
        if f.is_zero() || lib(upf(&f), "upf")?.factors.len() != 1 {
            continue;
        }
        count += 1;
        for i in 1..=4 {
            for j in i + 1..=4 {
                let (_, m) = lib(mate(&f, i, j), "mate")?;
                if !m.cauchy_schwarz_holds() {
                    return Err(format!("{:?}: Cauchy–Schwarz fails for pair ({i},{j})", f.values()));
                }
                let diseq = diseq_realizing(&m, false).is_some() || diseq_realizing(&m, true).is_some();
                let orthogonal = m.as_scaled_n2().is_some_and(|l| !l.is_zero());
                let hard = lib(classify_single_arity4(&m.to_signature()), "classify4")?.outcome == Outcome::Hard;
                let matched = [diseq, orthogonal, hard].iter().filter(|&&b| b).count();
                if matched != 1 {
                    return Err(format!(
                        "signature {f:?}: mate ({i},{j}) matches {matched} forms (diseq {diseq}, orthogonal {orthogonal}, hard {hard})"
                    ));
                }
            }
        }
    }
    Ok(count)
}

fn product_biconditional(_: &mut ChaCha8Rng, _: &Sizes) -> Check {
    let values = [
        Scalar::from_int(1),
        Scalar::from_int(-1),
        Scalar::i(),
        Scalar::gaussian(0, -1),
        Scalar::from_int(2),
        Scalar::from_int(-2),
    ];
    let pairs = [0b0011usize, 0b0101, 0b0110];
    let mut total = 0;
    for (a, &alpha) in pairs.iter().enumerate() {
        for &beta in &pairs[a + 1..] {
            for x in &values {
                for y in &values {
                    let mut v = vec![Scalar::zero(); 16];
                    v[alpha] = x.clone();
                    v[alpha ^ 0xf] = x.conj();
                    v[beta] = y.clone();
                    v[beta ^ 0xf] = y.conj();
                    let f = Signature::new(4, v).expect("arity 4");
                    let accepted = check_product(&f).is_ok();
                    let balanced = x.norm_sq() == y.norm_sq();
                    if accepted != balanced {
                        return Err(format!("support {alpha:04b}/{beta:04b}, values {x}, {y}: product {accepted}"));
                    }
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

fn f8(_: &mut ChaCha8Rng, _: &Sizes) -> Check {
    let report = lib(verify_f8(), "verify_f8")?;
    if report.verified() {
        Ok(report.rows.len())
    } else {
        Err(format!(
            "support {}, EO {}, ARS {}, failing pairs {:?}, Δ absent {}, commutativity {}, in B {}, in ∫B {}",
            report.support_size,
            report.is_eo,
            report.is_ars,
            report.failing_pairs(),
            report.delta_property_absent,
            report.commutativity_checked,
            report.in_b,
            report.int_b
        ))
    }
}

/// The six-vertex signature with weights `a, b, c` on `0011, 0101, 0110` and conjugates on complements.
pub fn six_vertex(a: Scalar, b: Scalar, c: Scalar) -> Signature {
    let mut v = vec![Scalar::zero(); 16];
    for (idx, w) in [(0b0011, a), (0b0101, b), (0b0110, c)] {
        v[idx ^ 0xf] = w.conj();
        v[idx] = w;
    }
    Signature::new(4, v).expect("arity 4")
}

fn classifier_smoke(_: &mut ChaCha8Rng, _: &Sizes) -> Check {
    let one = Scalar::one;
    let cases = [
        (vec![("six_vertex_111", six_vertex(one(), one(), one()))], false),
        (
            vec![
                ("neq4", Signature::disequality(2).expect("arity 4")),
                ("binary_i", Signature::binary_i()),
            ],
            true,
        ),
        (vec![("six_vertex_120", six_vertex(one(), Scalar::from_int(2), Scalar::zero()))], false),
    ];
    for (set, tractable) in &cases {
        let named: Vec<(String, Signature)> = set.iter().map(|(n, f)| (n.to_string(), f.clone())).collect();
        let verdict = lib(classify(&named), "classify")?;
        if verdict.outcome.is_tractable() != *tractable {
            return Err(format!("{:?}: verdict {:?}", set[0].0, verdict.outcome));
        }
        for w in &verdict.witnesses {
            let f = &named.iter().find(|(n, _)| *n == w.name).expect("witness names an input").1;
            if w.rep.reconstruct() != *f {
                return Err(format!("witness for {} does not rebuild it", w.name));
            }
        }
        if *tractable && verdict.witnesses.len() != named.len() {
            return Err("tractable verdict lacks a witness per signature".into());
        }
    }
    let hard = lib(classify(&[("f".into(), six_vertex(one(), one(), one()))]), "classify")?;
    match hard.diagnostic {
        Some(d) if d.to_string() == "support not affine" => Ok(cases.len()),
        other => Err(format!("six-vertex (1,1,1) diagnostic {other:?}")),
    }
}

/// Run suite `id` (1-based).
pub fn run_suite(id: usize, seed: u64, sizes: &Sizes) -> SuiteReport {
    let suites: [fn(&mut ChaCha8Rng, &Sizes) -> Check; 13] = [
        evaluator_oracle,
        eo_equals_stretched_holant,
        unique_factorization,
        ars_normalization,
        opposite_exhaustive,
        simplex_pairing,
        ars_iff_real,
        csp_encoding,
        reductions,
        mate_forms,
        product_biconditional,
        f8,
        classifier_smoke,
    ];
    assert!((1..=suites.len()).contains(&id), "suite ids run from 1 to {}", suites.len());
    let mut rng = rng_for(seed, id);
    let (cases, failure) = match suites[id - 1](&mut rng, sizes) {
        Ok(n) => (n, None),
        Err(e) => (0, Some(e)),
    };
    SuiteReport { id, name: SUITE_NAMES[id - 1], cases, failure }
}

pub fn run_all(seed: u64, sizes: &Sizes) -> Vec<SuiteReport> {
    (1..=SUITE_NAMES.len()).map(|id| run_suite(id, seed, sizes)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_weight_space_counts() {
        // Arity 2: {01}, {10}, {01, 10}.
        assert_eq!(half_weight_affine_spaces(2).len(), 3);
        for s in half_weight_affine_spaces(4) {
            assert!(s.len().is_power_of_two());
        }
    }

    #[test]
    fn simplex_space_is_doubled_code() {
        let s = simplex_code_space();
        assert!(s.points().iter().all(|&p| (p >> 7) ^ (p & 0x7f) == 0x7f));
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn reduced_suites_pass() {
        let sizes = Sizes { opposite_max_arity: 4, ..Sizes::reduced() };
        for r in run_all(7, &sizes) {
            assert!(r.passed(), "{}: {}", r.name, r.failure.unwrap());
        }
    }
}
