use std::fmt;

use crate::scalar::Scalar;
use crate::signature::{var_bit, var_mask, Signature};

use super::affine_space::affine_support;

/// One factor of a product-type decomposition; ports are 1-based and may repeat across factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductFactor {
    Unary { port: usize, w0: Scalar, w1: Scalar },
    Equality { a: usize, b: usize },
    Disequality { a: usize, b: usize },
}

impl ProductFactor {
    pub fn value(&self, idx: usize, n: usize) -> Scalar {
        match self {
            ProductFactor::Unary { port, w0, w1 } => {
                if var_bit(idx, n, *port) == 0 {
                    w0.clone()
                } else {
                    w1.clone()
                }
            }
            ProductFactor::Equality { a, b } => Scalar::from_int((var_bit(idx, n, *a) == var_bit(idx, n, *b)) as i64),
            ProductFactor::Disequality { a, b } => {
                Scalar::from_int((var_bit(idx, n, *a) != var_bit(idx, n, *b)) as i64)
            }
        }
    }
}

/// `f = Π factors`, pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRep {
    pub arity: usize,
    pub factors: Vec<ProductFactor>,
}

impl ProductRep {
    pub fn value(&self, idx: usize) -> Scalar {
        let mut acc = Scalar::one();
        for fac in &self.factors {
            acc *= &fac.value(idx, self.arity);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn reconstruct(&self) -> Signature {
        Signature::from_fn(self.arity, |idx| self.value(idx))
    }
}

/// Why a signature is not of product type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductRejection {
    SupportNotAffine,
    /// The support ties variables together by more than pairwise equalities and disequalities.
    SupportNotPairwise,
    /// The table over class representatives does not split into unary factors.
    QuotientNotRankOne,
}

impl fmt::Display for ProductRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductRejection::SupportNotAffine => write!(f, "support not affine"),
            ProductRejection::SupportNotPairwise => {
                write!(f, "support is not cut out by pins, equalities and disequalities")
            }
            ProductRejection::QuotientNotRankOne => write!(f, "quotient over class representatives is not rank 1"),
        }
    }
}

enum Role {
    Constant(u8),
    Linked { rep: usize, flipped: bool },
    Representative,
}

/// Decide product-type membership with a reason on failure.
///
/// Every variable must be constant on the support, or equal / opposite to a
/// smaller representative variable; the support must contain every setting of
/// the representatives; the induced function on representatives must be a
/// product of unary functions.
pub fn check_product(f: &Signature) -> Result<ProductRep, ProductRejection> {
    let n = f.arity();
    if f.is_zero() {
        return Ok(ProductRep {
            arity: n,
            factors: vec![ProductFactor::Unary { port: 1, w0: Scalar::zero(), w1: Scalar::zero() }],
        });
    }
    let support = f.support();
    if affine_support(&support).is_none() {
        return Err(ProductRejection::SupportNotAffine);
    }
    let pts = support.points();
    let column = |k: usize| pts.iter().map(move |&p| var_bit(p, n, k) as u8);
    let mut roles: Vec<Role> = Vec::with_capacity(n);
    let mut reps: Vec<usize> = Vec::new();
    for k in 1..=n {
        let first = var_bit(pts[0], n, k) as u8;
        if column(k).all(|b| b == first) {
            roles.push(Role::Constant(first));
            continue;
        }
        let link = reps.iter().find_map(|&r| {
            let same = column(k).zip(column(r)).all(|(a, b)| a == b);
            let opp = column(k).zip(column(r)).all(|(a, b)| a != b);
            if same {
                Some(Role::Linked { rep: r, flipped: false })
            } else if opp {
                Some(Role::Linked { rep: r, flipped: true })
            } else {
                None
            }
        });
        match link {
            Some(role) => roles.push(role),
            None => {
                roles.push(Role::Representative);
                reps.push(k);
            }
        }
    }
    let m = reps.len();
    if pts.len() != 1usize << m {
        return Err(ProductRejection::SupportNotPairwise);
    }
    // Lift a setting of the representatives (first representative most significant) to an input.
    let lift = |t: usize| -> usize {
        let mut idx = 0usize;
        for (k, role) in roles.iter().enumerate() {
            let bit = match role {
                Role::Constant(b) => *b as usize,
                Role::Representative => {
                    let pos = reps.iter().position(|&r| r == k + 1).expect("listed");
                    (t >> (m - 1 - pos)) & 1
                }
                Role::Linked { rep, flipped } => {
                    let pos = reps.iter().position(|r| r == rep).expect("listed");
                    ((t >> (m - 1 - pos)) & 1) ^ (*flipped as usize)
                }
            };
            if bit == 1 {
                idx |= var_mask(n, k + 1);
            }
        }
        idx
    };
    let q = |t: usize| f.value(lift(t)).clone();
    let e = |k: usize| 1usize << (m - 1 - k);
    let q0 = q(0);
    let q0_inv = q0.inv().expect("support point");
    let mut unaries: Vec<(Scalar, Scalar)> = Vec::with_capacity(m);
    for k in 0..m {
        if k == 0 {
            unaries.push((q0.clone(), q(e(0))));
        } else {
            unaries.push((Scalar::one(), q(e(k)) * &q0_inv));
        }
    }
    if m > 0 {
        for t in 0..1usize << m {
            let prod: Scalar = (0..m)
                .map(|k| if t & e(k) != 0 { unaries[k].1.clone() } else { unaries[k].0.clone() })
                .product();
            if prod != q(t) {
                return Err(ProductRejection::QuotientNotRankOne);
            }
        }
    }

    let mut factors = Vec::new();
    for (k, role) in roles.iter().enumerate() {
        let port = k + 1;
        match role {
            Role::Constant(0) => factors.push(ProductFactor::Unary { port, w0: Scalar::one(), w1: Scalar::zero() }),
            Role::Constant(_) => factors.push(ProductFactor::Unary { port, w0: Scalar::zero(), w1: Scalar::one() }),
            Role::Linked { rep, flipped: false } => factors.push(ProductFactor::Equality { a: *rep, b: port }),
            Role::Linked { rep, flipped: true } => factors.push(ProductFactor::Disequality { a: *rep, b: port }),
            Role::Representative => {}
        }
    }
    if m == 0 {
        factors.push(ProductFactor::Unary { port: 1, w0: q0.clone(), w1: q0 });
    }
    for (k, (w0, w1)) in unaries.into_iter().enumerate() {
        factors.push(ProductFactor::Unary { port: reps[k], w0, w1 });
    }
    Ok(ProductRep { arity: n, factors })
}

/// Product-type witness for `f`, if it is of product type.
pub fn recognize_product(f: &Signature) -> Option<ProductRep> {
    check_product(f).ok()
}
