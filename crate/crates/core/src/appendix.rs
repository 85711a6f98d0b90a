//! The arity-8 signature that satisfies every merging form without the
//! Δ-property, and a checker for each of its claimed properties.

use crate::error::Result;
use crate::factorization::{delta_property, in_b, int_b, upf};
use crate::gadgets::{merge, merge_pairs};
use crate::scalar::Scalar;
use crate::signature::{var_bit, Signature};

/// For each merged pair, the pairing of the remaining variables into binary disequalities.
pub const F8_MERGE_TABLE: [((usize, usize), [(usize, usize); 3]); 28] = [
    ((1, 2), [(3, 4), (5, 6), (7, 8)]),
    ((3, 4), [(1, 2), (5, 6), (7, 8)]),
    ((5, 6), [(1, 2), (3, 4), (7, 8)]),
    ((7, 8), [(1, 2), (3, 4), (5, 6)]),
    ((1, 3), [(2, 4), (5, 7), (6, 8)]),
    ((2, 4), [(1, 3), (5, 7), (6, 8)]),
    ((5, 7), [(1, 3), (2, 4), (6, 8)]),
    ((6, 8), [(1, 3), (2, 4), (5, 7)]),
    ((1, 4), [(2, 3), (5, 8), (6, 7)]),
    ((2, 3), [(1, 4), (5, 8), (6, 7)]),
    ((5, 8), [(1, 4), (2, 3), (6, 7)]),
    ((6, 7), [(1, 4), (2, 3), (5, 8)]),
    ((1, 5), [(2, 6), (3, 7), (4, 8)]),
    ((2, 6), [(1, 5), (3, 7), (4, 8)]),
    ((3, 7), [(1, 5), (2, 6), (4, 8)]),
    ((4, 8), [(1, 5), (2, 6), (3, 7)]),
    ((1, 6), [(2, 5), (3, 8), (4, 7)]),
    ((2, 5), [(1, 6), (3, 8), (4, 7)]),
    ((3, 8), [(1, 6), (2, 5), (4, 7)]),
    ((4, 7), [(1, 6), (2, 5), (3, 8)]),
    ((1, 7), [(2, 8), (3, 5), (4, 6)]),
    ((2, 8), [(1, 7), (3, 5), (4, 6)]),
    ((3, 5), [(1, 7), (2, 8), (4, 6)]),
    ((4, 6), [(1, 7), (2, 8), (3, 5)]),
    ((1, 8), [(2, 7), (3, 6), (4, 5)]),
    ((2, 7), [(1, 8), (3, 6), (4, 5)]),
    ((3, 6), [(2, 7), (1, 8), (4, 5)]),
    ((4, 5), [(2, 7), (3, 6), (1, 8)]),
];

/// Parity constraints on the support, as 1-based variable lists; weight 4 is imposed separately.
const F8_PARITY_CHECKS: [[usize; 4]; 4] = [[1, 2, 3, 4], [5, 6, 7, 8], [1, 2, 5, 6], [1, 3, 5, 7]];

/// The 0/1 indicator of weight-4 strings passing every parity check.
pub fn build_f8() -> Signature {
    Signature::from_fn(8, |x| {
        let even = F8_PARITY_CHECKS
            .iter()
            .all(|vars| vars.iter().map(|&k| var_bit(x, 8, k)).sum::<usize>() % 2 == 0);
        if even && x.count_ones() == 4 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// One row of the merge table as observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F8Row {
    pub pair: (usize, usize),
    /// Expected pairing of the six remaining variables, in original labels.
    pub expected: Vec<(usize, usize)>,
    /// Pairing found by factorizing the merge; empty when some factor is not binary.
    pub observed: Vec<(usize, usize)>,
    /// Overall scalar of the factorization.
    pub scale: Scalar,
    /// Per observed factor, `c` with factor `= c·≠₂`; `None` when not associate to `≠₂`.
    pub factor_scalars: Vec<Option<Scalar>>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F8Report {
    pub support_size: usize,
    pub is_eo: bool,
    pub is_ars: bool,
    pub rows: Vec<F8Row>,
    pub delta_property_absent: bool,
    /// Number of disjoint pair-of-pairs whose merges were compared in both orders.
    pub commutativity_pairs: usize,
    pub commutativity_checked: bool,
    pub in_b: bool,
    pub int_b: bool,
}

impl F8Report {
    /// Every claim holds.
    pub fn verified(&self) -> bool {
        self.support_size == 14
            && self.is_eo
            && self.is_ars
            && self.rows.len() == 28
            && self.rows.iter().all(|r| r.ok)
            && self.delta_property_absent
            && self.commutativity_checked
            && !self.in_b
            && self.int_b
    }

    pub fn failing_pairs(&self) -> Vec<(usize, usize)> {
        self.rows.iter().filter(|r| !r.ok).map(|r| r.pair).collect()
    }
}

fn sorted_pairing(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    v.sort_unstable();
    v
}

fn check_row(f: &Signature, pair: (usize, usize), expected: &[(usize, usize)]) -> Result<F8Row> {
    let (i, j) = pair;
    let rest: Vec<usize> = (1..=8).filter(|&k| k != i && k != j).collect();
    let fact = upf(&merge(f, i, j)?)?;
    let expected = sorted_pairing(expected);
    let mut row = F8Row { pair, expected, observed: Vec::new(), scale: fact.scale.clone(), factor_scalars: Vec::new(), ok: false };
    if !fact.all_binary() || fact.scale.is_zero() {
        return Ok(row);
    }
    let mut labelled: Vec<((usize, usize), Option<Scalar>)> = fact
        .factors
        .iter()
        .map(|fac| ((rest[fac.vars[0] - 1], rest[fac.vars[1] - 1]), fac.sig.associate_ratio(&Signature::diseq2())))
        .collect();
    labelled.sort_by_key(|(p, _)| *p);
    row.observed = labelled.iter().map(|(p, _)| *p).collect();
    row.factor_scalars = labelled.into_iter().map(|(_, c)| c).collect();
    row.ok = row.observed == row.expected && row.factor_scalars.iter().all(|c| c.as_ref().is_some_and(|c| !c.is_zero()));
    Ok(row)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Check the support size, EO and ARS, all 28 merge factorizations, the
/// absence of the Δ-property and merge commutativity.
pub fn verify_f8() -> Result<F8Report> {
    let f = build_f8();
    let rows = F8_MERGE_TABLE
        .iter()
        .map(|(pair, expected)| check_row(&f, *pair, expected))
        .collect::<Result<Vec<_>>>()?;
    let pairs = all_pairs(8);
    let mut commutativity_pairs = 0;
    let mut commutativity_checked = true;
    for (a, &p) in pairs.iter().enumerate() {
        for &q in &pairs[a + 1..] {
            if [p.0, p.1].iter().any(|k| *k == q.0 || *k == q.1) {
                continue;
            }
            commutativity_pairs += 1;
            if merge_pairs(&f, &[p, q])? != merge_pairs(&f, &[q, p])? {
                commutativity_checked = false;
            }
        }
    }
    Ok(F8Report {
        support_size: f.support_size(),
        is_eo: f.is_eo(),
        is_ars: f.is_ars(),
        rows,
        delta_property_absent: delta_property(&f)?.is_none(),
        commutativity_pairs,
        commutativity_checked,
        in_b: in_b(&f),
        int_b: int_b(&f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_has_fourteen_points() {
        let f = build_f8();
        assert_eq!(f.support_size(), 14);
        assert!(f.is_eo() && f.is_ars());
        assert!(f.values().iter().all(|v| v.is_zero() || *v == Scalar::one()));
        assert_eq!(*f.value(0b0000_1111), Scalar::one());
        assert_eq!(*f.value(0b1111_0000), Scalar::one());
        assert_eq!(*f.value(0b0001_0111), Scalar::zero());
        assert_eq!(*f.value(0b1100_1100), Scalar::one());
    }

    #[test]
    fn table_rows_cover_every_pair_once() {
        let mut seen: Vec<_> = F8_MERGE_TABLE.iter().map(|(p, _)| *p).collect();
        seen.sort_unstable();
        assert_eq!(seen, all_pairs(8));
        for (p, rest) in F8_MERGE_TABLE {
            let mut used: Vec<usize> = rest.iter().flat_map(|&(a, b)| [a, b]).chain([p.0, p.1]).collect();
            used.sort_unstable();
            assert_eq!(used, (1..=8).collect::<Vec<_>>());
        }
    }

    #[test]
    fn report_verifies() {
        let r = verify_f8().unwrap();
        assert_eq!(r.failing_pairs(), Vec::<(usize, usize)>::new());
        assert_eq!(r.commutativity_pairs, 210);
        let row13 = r.rows.iter().find(|row| row.pair == (1, 3)).unwrap();
        assert_eq!(row13.observed, vec![(2, 4), (5, 7), (6, 8)]);
        let row45 = r.rows.iter().find(|row| row.pair == (4, 5)).unwrap();
        assert_eq!(row45.observed, vec![(1, 8), (2, 7), (3, 6)]);
        assert!(r.delta_property_absent && !r.in_b && r.int_b);
        assert!(r.verified());
    }
}
