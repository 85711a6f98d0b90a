use std::fmt;

use crate::scalar::Scalar;
use crate::signature::{var_bit, Signature};

use super::affine_space::{affine_support, AffineSpace};

/// `f(x) = λ · [x ∈ space] · i^{Q(x)}` with `Q` a ℤ₄ quadratic whose cross terms are even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRep {
    pub lambda: Scalar,
    pub space: AffineSpace,
    /// Constant term of `Q` in ℤ₄.
    pub q_const: u8,
    /// Linear coefficient of each variable `x_1..x_n` in ℤ₄ (index 0 is `x_1`).
    pub q_linear: Vec<u8>,
    /// Pairs `(j, k)`, `j < k`, each contributing `2·x_j·x_k`.
    pub q_cross: Vec<(usize, usize)>,
}

impl AffineRep {
    pub fn arity(&self) -> usize {
        self.space.arity()
    }

    /// `Q(x) mod 4`.
    pub fn q(&self, idx: usize) -> u8 {
        let n = self.arity();
        let lin: u32 = (1..=n).map(|k| self.q_linear[k - 1] as u32 * var_bit(idx, n, k) as u32).sum();
        let cross: u32 = self
            .q_cross
            .iter()
            .map(|&(j, k)| 2 * (var_bit(idx, n, j) & var_bit(idx, n, k)) as u32)
            .sum();
        ((self.q_const as u32 + lin + cross) % 4) as u8
    }

    pub fn value(&self, idx: usize) -> Scalar {
        if self.lambda.is_zero() || !self.space.contains(idx) {
            return Scalar::zero();
        }
        &self.lambda * &Scalar::i_pow(self.q(idx) as i64)
    }

    pub fn reconstruct(&self) -> Signature {
        Signature::from_fn(self.arity(), |idx| self.value(idx))
    }
}

/// Why a signature is not affine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineRejection {
    SupportNotAffine,
    /// Two support values have different moduli.
    NormMismatch { at: usize },
    /// A support value divided by `λ` is not a power of `i`.
    PhaseNotFourthRoot { at: usize },
    /// The phases do not come from a quadratic with even cross terms.
    PhaseNotQuadratic,
}

impl fmt::Display for AffineRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineRejection::SupportNotAffine => write!(f, "support not affine"),
            AffineRejection::NormMismatch { at } => write!(f, "support values differ in modulus (input {at})"),
            AffineRejection::PhaseNotFourthRoot { at } => {
                write!(f, "support value is not a power of i times the leading value (input {at})")
            }
            AffineRejection::PhaseNotQuadratic => write!(f, "phases are not a quadratic with even cross terms"),
        }
    }
}

/// Decide affine membership with a reason on failure.
///
/// `λ` is the value at the smallest support point, so `Q` vanishes there.
/// `Q` is fitted on the pivot variables by finite differences and then
/// checked at every support point.
pub fn check_affine(f: &Signature) -> Result<AffineRep, AffineRejection> {
    let n = f.arity();
    if f.is_zero() {
        return Ok(AffineRep {
            lambda: Scalar::zero(),
            space: AffineSpace::full(n),
            q_const: 0,
            q_linear: vec![0; n],
            q_cross: Vec::new(),
        });
    }
    let space = affine_support(&f.support()).ok_or(AffineRejection::SupportNotAffine)?;
    let lambda = f.value(space.base()).clone();
    let lambda_inv = lambda.inv().expect("support value is nonzero");
    let norm = lambda.norm_sq();
    let d = space.dim();
    // Phase exponent at every parameter vector.
    let mut phase = vec![0u8; 1 << d];
    for (t, slot) in phase.iter_mut().enumerate() {
        let x = space.point(t);
        let v = f.value(x);
        if v.norm_sq() != norm {
            return Err(AffineRejection::NormMismatch { at: x });
        }
        *slot = (v * &lambda_inv)
            .fourth_root_exponent()
            .ok_or(AffineRejection::PhaseNotFourthRoot { at: x })?;
    }
    let pivots = space.pivot_vars();
    let e = |k: usize| 1usize << (d - 1 - k);
    let p = |t: usize| phase[t] as i32;
    let mut q_linear = vec![0u8; n];
    for k in 0..d {
        q_linear[pivots[k] - 1] = (p(e(k)) - p(0)).rem_euclid(4) as u8;
    }
    let mut q_cross = Vec::new();
    for k in 0..d {
        for l in k + 1..d {
            let c = (p(e(k) | e(l)) - p(e(k)) - p(e(l)) + p(0)).rem_euclid(4);
            match c {
                0 => {}
                2 => q_cross.push((pivots[k].min(pivots[l]), pivots[k].max(pivots[l]))),
                _ => return Err(AffineRejection::PhaseNotQuadratic),
            }
        }
    }
    let rep = AffineRep { lambda, space, q_const: 0, q_linear, q_cross };
    for t in 0..1usize << d {
        if rep.q(rep.space.point(t)) != phase[t] {
            return Err(AffineRejection::PhaseNotQuadratic);
        }
    }
    Ok(rep)
}

/// Affine witness for `f`, if it is affine.
pub fn recognize_affine(f: &Signature) -> Option<AffineRep> {
    check_affine(f).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::var_mask;

    #[test]
    fn diseq2_is_affine() {
        let rep = recognize_affine(&Signature::diseq2()).unwrap();
        assert_eq!(rep.lambda, Scalar::one());
        assert!(rep.q_linear.iter().all(|&a| a == 0) && rep.q_cross.is_empty());
        assert_eq!(rep.space.constraints(), vec![(0b11, 1)]);
        assert_eq!(rep.reconstruct(), Signature::diseq2());
    }

    #[test]
    fn binary_i_witnesses() {
        let f = Signature::binary_i();
        let rep = recognize_affine(&f).unwrap();
        assert_eq!(rep.reconstruct(), f);
        assert_eq!(rep.lambda, Scalar::i());
        // λ = 1 with Q = 3x₁ + x₂ on x₁ + x₂ = 1 is another valid witness.
        let other = AffineRep {
            lambda: Scalar::one(),
            space: rep.space.clone(),
            q_const: 0,
            q_linear: vec![3, 1],
            q_cross: vec![],
        };
        assert_eq!(other.reconstruct(), f);
    }

    #[test]
    fn norm_mismatch_rejected() {
        let f = Signature::from_ints(2, &[0, 1, 2, 0]).unwrap();
        assert!(matches!(check_affine(&f), Err(AffineRejection::NormMismatch { .. })));
        let ones = Signature::from_fn(4, |i| Scalar::from_int((i.count_ones() == 2) as i64));
        assert_eq!(check_affine(&ones), Err(AffineRejection::SupportNotAffine));
    }

    #[test]
    fn eighth_root_phase_rejected() {
        // (1 + i)/√2 has modulus 1 but is not a power of i.
        let w = &Scalar::gaussian(1, 1) * &Scalar::inv_sqrt2();
        let f = Signature::unary(Scalar::one(), w);
        assert!(matches!(check_affine(&f), Err(AffineRejection::PhaseNotFourthRoot { .. })));
    }

    #[test]
    fn odd_cross_term_rejected() {
        // i^{x₁x₂} needs an odd cross coefficient.
        let f = Signature::from_gaussian(2, &[(1, 0), (1, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(check_affine(&f), Err(AffineRejection::PhaseNotQuadratic));
        // (−1)^{x₁x₂} is fine.
        let g = Signature::from_ints(2, &[1, 1, 1, -1]).unwrap();
        let rep = recognize_affine(&g).unwrap();
        assert_eq!(rep.q_cross, vec![(1, 2)]);
        assert_eq!(rep.reconstruct(), g);
    }

    #[test]
    fn zero_is_affine() {
        let rep = recognize_affine(&Signature::zero(3)).unwrap();
        assert!(rep.lambda.is_zero());
        assert_eq!(rep.reconstruct(), Signature::zero(3));
    }

    #[test]
    fn quadratic_on_a_subspace() {
        // Support x₁ ⊕ x₂ ⊕ x₃ = 0 with phase i^{x₁ + 2x₁x₂}.
        let f = Signature::from_fn(3, |idx| {
            let b = |k| var_bit(idx, 3, k);
            if (b(1) ^ b(2) ^ b(3)) != 0 {
                return Scalar::zero();
            }
            Scalar::i_pow((b(1) + 2 * b(1) * b(2)) as i64) * Scalar::from_int(3)
        });
        let rep = recognize_affine(&f).unwrap();
        assert_eq!(rep.reconstruct(), f);
        assert_eq!(rep.space.dim(), 2);
        assert!(rep.space.contains(var_mask(3, 1) | var_mask(3, 3)));
    }
}
