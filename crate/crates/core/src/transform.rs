//! Whole-signature transforms: the Z basis change, norm square and the tilde embedding.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{full_mask, Signature, MAX_ARITY};

/// Which way to apply the Z basis change.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A 2×2 matrix indexed `[row][col]`.
pub type Mat2 = [[Scalar; 2]; 2];

/// `Z = (1/√2)[[1, 1], [i, −i]]`.
pub fn z_matrix() -> Mat2 {
    let h = Scalar::inv_sqrt2();
    let hi = &h * &Scalar::i();
    [[h.clone(), h], [hi.clone(), -hi]]
}

/// `Z⁻¹ = (1/√2)[[1, −i], [1, i]]`.
pub fn z_inverse_matrix() -> Mat2 {
    let h = Scalar::inv_sqrt2();
    let hi = &h * &Scalar::i();
    [[h.clone(), -hi.clone()], [h, hi]]
}

fn matrix_for(direction: Direction) -> Mat2 {
    match direction {
        Direction::Forward => z_matrix(),
        Direction::Inverse => z_inverse_matrix(),
    }
}

fn transpose(m: &Mat2) -> Mat2 {
    [[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]]
}

/// Apply `m` to every variable of `f` viewed as a column vector:
/// `g(y) = Σ_x Π_k m[y_k][x_k] f(x)`.
pub fn apply_per_variable(f: &Signature, m: &Mat2) -> Signature {
    let n = f.arity();
    let mut cur: Vec<Scalar> = f.values().to_vec();
    for k in 1..=n {
        let bit = 1usize << (n - k);
        let mut next = vec![Scalar::zero(); cur.len()];
        for idx in 0..cur.len() {
            if idx & bit != 0 {
                continue;
            }
            let (a, b) = (&cur[idx], &cur[idx | bit]);
            next[idx] = &m[0][0] * a + &m[0][1] * b;
            next[idx | bit] = &m[1][0] * a + &m[1][1] * b;
        }
        cur = next;
    }
    Signature::from_table(n, cur)
}

/// Column transform: `Z^{⊗n} f` (forward) or `(Z⁻¹)^{⊗n} f` (inverse).
pub fn z_transform(f: &Signature, direction: Direction) -> Signature {
    apply_per_variable(f, &matrix_for(direction))
}

/// Row transform: `f Z^{⊗n}` (forward) or `f (Z⁻¹)^{⊗n}` (inverse).
pub fn row_transform(f: &Signature, direction: Direction) -> Signature {
    apply_per_variable(f, &transpose(&matrix_for(direction)))
}

/// True when every entry has zero imaginary part.
pub fn is_real(f: &Signature) -> bool {
    f.values().iter().all(Scalar::is_real)
}

/// Checks that `f` has ARS exactly when `Z f` is real-valued.
pub fn check_ars_real_equivalence(f: &Signature) -> bool {
    f.is_ars() == is_real(&z_transform(f, Direction::Forward))
}

/// Pointwise `|f|²`.
pub fn norm_square(f: &Signature) -> Signature {
    f.map(Scalar::norm_sq)
}

/// `g̃(x₁…x₂ₙ) = g(x₁…xₙ)` when `x_i ≠ x_{n+i}` for every `i`, else 0.
pub fn tilde(g: &Signature) -> Result<Signature> {
    let n = g.arity();
    if 2 * n > MAX_ARITY {
        return Err(Error::TooLarge(format!("tilde of arity {n} would exceed arity {MAX_ARITY}")));
    }
    let m = full_mask(n);
    Ok(Signature::from_fn(2 * n, |idx| {
        let hi = idx >> n;
        let lo = idx & m;
        if lo == hi ^ m {
            g.value(hi).clone()
        } else {
            Scalar::zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::pin;

    fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
        let e = |r: usize, c: usize| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    #[test]
    fn z_times_inverse_is_identity() {
        let p = mat_mul(&z_matrix(), &z_inverse_matrix());
        assert_eq!(p[0][0], Scalar::one());
        assert_eq!(p[1][1], Scalar::one());
        assert!(p[0][1].is_zero() && p[1][0].is_zero());
    }

    #[test]
    fn equality_row_transforms_to_disequality() {
        assert_eq!(row_transform(&Signature::eq2(), Direction::Forward), Signature::diseq2());
        assert_eq!(row_transform(&Signature::diseq2(), Direction::Inverse), Signature::eq2());
    }

    #[test]
    fn binary_i_goes_real() {
        // Entrywise against the explicit double sum; by hand the result is (0, 1, −1, 0).
        let zf = z_transform(&Signature::binary_i(), Direction::Forward);
        let z = z_matrix();
        let f = Signature::binary_i();
        for y in 0..4usize {
            let (y1, y2) = (y >> 1, y & 1);
            let mut acc = Scalar::zero();
            for x in 0..4usize {
                acc += &(&(&z[y1][x >> 1] * &z[y2][x & 1]) * f.value(x));
            }
            assert_eq!(zf.value(y), &acc);
        }
        assert!(is_real(&zf));
        assert_eq!(zf, Signature::from_ints(2, &[0, 1, -1, 0]).unwrap());
    }

    #[test]
    fn ars_real_examples() {
        assert!(check_ars_real_equivalence(&Signature::diseq2()));
        let pin_unary = Signature::from_ints(1, &[1, 0]).unwrap();
        assert!(!pin_unary.is_ars());
        let zf = z_transform(&pin_unary, Direction::Forward);
        assert_eq!(zf.value(0), &Scalar::inv_sqrt2());
        assert_eq!(zf.value(1), &(&Scalar::inv_sqrt2() * &Scalar::i()));
        assert!(!is_real(&zf));
        assert!(check_ars_real_equivalence(&pin_unary));
    }

    #[test]
    fn norm_square_examples() {
        assert_eq!(norm_square(&Signature::diseq2()), Signature::diseq2());
        assert_eq!(norm_square(&Signature::binary_i()), Signature::diseq2());
        let f = Signature::from_gaussian(2, &[(0, 0), (0, 2), (0, -2), (0, 0)]).unwrap();
        assert_eq!(norm_square(&f), Signature::from_ints(2, &[0, 4, 4, 0]).unwrap());
    }

    #[test]
    fn tilde_examples() {
        let g = Signature::from_ints(1, &[1, 2]).unwrap();
        assert_eq!(tilde(&g).unwrap(), Signature::from_ints(2, &[0, 1, 2, 0]).unwrap());
        let t = tilde(&Signature::eq2()).unwrap();
        assert_eq!(t.support().points(), &[0b0011, 0b1100]);
        assert_eq!(t, Signature::disequality(2).unwrap());
        assert!(t.is_eo());
    }

    #[test]
    fn tilde_pins_back_to_original() {
        let g = Signature::from_gaussian(2, &[(1, 0), (2, -1), (0, 3), (-1, 1)]).unwrap();
        let t = tilde(&g).unwrap();
        for a in 0..4usize {
            // Pin x3 = not x1 and x4 = not x2, from the highest port down.
            let x1 = a >> 1;
            let x2 = a & 1;
            let p = pin(&pin(&t, 4, (1 - x2) as u8).unwrap(), 3, (1 - x1) as u8).unwrap();
            assert_eq!(p.value(a), g.value(a));
        }
    }
}
