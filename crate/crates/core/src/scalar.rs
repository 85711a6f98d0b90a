//! Exact arithmetic in the field ℚ(i, √2).
//!
//! Every weight that shows up in the gadget calculus (±1, ±i, the 1/√2 of the
//! Z basis change, the 1 ± i factors of quadratic Gauss sums) lives in this
//! field, so nothing in the library ever rounds.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `p + q√2` of ℚ(√2).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    pub p: BigRational,
    pub q: BigRational,
}

impl Surd {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Surd { p, q }
    }

    pub fn rational(p: BigRational) -> Self {
        Surd { p, q: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn add_ref(&self, o: &Surd) -> Surd {
        Surd { p: &self.p + &o.p, q: &self.q + &o.q }
    }

    fn sub_ref(&self, o: &Surd) -> Surd {
        Surd { p: &self.p - &o.p, q: &self.q - &o.q }
    }

    fn mul_ref(&self, o: &Surd) -> Surd {
        if self.is_zero() || o.is_zero() {
            return Surd::default();
        }
        let two = BigRational::from_integer(BigInt::from(2));
        Surd {
            p: &self.p * &o.p + two * (&self.q * &o.q),
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }

    fn neg_ref(&self) -> Surd {
        Surd { p: -&self.p, q: -&self.q }
    }

    /// The Galois conjugate `p − q√2`.
    fn galois(&self) -> Surd {
        Surd { p: self.p.clone(), q: -&self.q }
    }

    /// `p² − 2q²`, the field norm down to ℚ.
    fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.p * &self.p - two * (&self.q * &self.q)
    }

    fn inv(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let g = self.galois();
        Some(Surd { p: g.p / &n, q: g.q / n })
    }

    /// Sign of `p + q√2`, decided exactly.
    pub fn signum(&self) -> i32 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sp == 0 {
            return sq;
        }
        if sq == 0 || sp == sq {
            return sp;
        }
        // Opposite signs: compare p² against 2q².
        let two = BigRational::from_integer(BigInt::from(2));
        let lhs = &self.p * &self.p;
        let rhs = two * (&self.q * &self.q);
        if lhs > rhs {
            sp
        } else if lhs < rhs {
            sq
        } else {
            0
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// An exact element `(re0 + re1·√2) + (im0 + im1·√2)·i` of ℚ(i, √2).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Surd,
    pub im: Surd,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { re: Surd::rational(r), im: Surd::default() }
    }

    pub fn from_parts(re0: BigRational, re1: BigRational, im0: BigRational, im1: BigRational) -> Self {
        Scalar { re: Surd::new(re0, re1), im: Surd::new(im0, im1) }
    }

    /// Gaussian integer `a + b·i`.
    pub fn gaussian(a: i64, b: i64) -> Self {
        Scalar {
            re: Surd::rational(BigRational::from_integer(BigInt::from(a))),
            im: Surd::rational(BigRational::from_integer(BigInt::from(b))),
        }
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn sqrt2() -> Self {
        Scalar {
            re: Surd::new(BigRational::zero(), BigRational::one()),
            im: Surd::default(),
        }
    }

    pub fn inv_sqrt2() -> Self {
        Scalar {
            re: Surd::new(BigRational::zero(), BigRational::new(BigInt::from(1), BigInt::from(2))),
            im: Surd::default(),
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => Scalar::from_int(-1),
            _ => Scalar::gaussian(0, -1),
        }
    }

    pub fn re0(&self) -> &BigRational {
        &self.re.p
    }
    pub fn re1(&self) -> &BigRational {
        &self.re.q
    }
    pub fn im0(&self) -> &BigRational {
        &self.im.p
    }
    pub fn im1(&self) -> &BigRational {
        &self.im.q
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the value is an ordinary rational (no √2, no i part).
    pub fn is_rational(&self) -> bool {
        self.im.is_zero() && self.re.q.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: self.im.neg_ref() }
    }

    /// `|s|² = s·conj(s)`, returned as a real scalar.
    pub fn norm_sq(&self) -> Scalar {
        Scalar {
            re: self.re.mul_ref(&self.re).add_ref(&self.im.mul_ref(&self.im)),
            im: Surd::default(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        let d = self.norm_sq().re.inv()?;
        let c = self.conj();
        Some(Scalar { re: c.re.mul_ref(&d), im: c.im.mul_ref(&d) })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        Some(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign of a real scalar; `None` when the imaginary part is nonzero.
    pub fn real_signum(&self) -> Option<i32> {
        if self.is_real() {
            Some(self.re.signum())
        } else {
            None
        }
    }

    /// If `self = i^k` for some `k ∈ {0,1,2,3}`, return `k`.
    pub fn fourth_root_exponent(&self) -> Option<u8> {
        (0..4u8).find(|&k| *self == Scalar::i_pow(k as i64))
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering with twelve digits after the point.
    pub fn to_float_string(&self) -> String {
        let (re, im) = self.to_complex_f64();
        if im == 0.0 {
            format!("{re:.12}")
        } else if im < 0.0 {
            format!("{re:.12}-{:.12}i", -im)
        } else {
            format!("{re:.12}+{im:.12}i")
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar { re: a.re.add_ref(&b.re), im: a.im.add_ref(&b.im) }
}

fn sub_impl(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar { re: a.re.sub_ref(&b.re), im: a.im.sub_ref(&b.im) }
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar { re: a.re.mul_ref(&b.re), im: Surd::default() };
    }
    Scalar {
        re: a.re.mul_ref(&b.re).sub_ref(&a.im.mul_ref(&b.im)),
        im: a.re.mul_ref(&b.im).add_ref(&a.im.mul_ref(&b.re)),
    }
}

fn div_impl(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_div(b).expect("division by zero scalar")
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: self.re.neg_ref(), im: self.im.neg_ref() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: self.re.neg_ref(), im: self.im.neg_ref() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        self.re = self.re.add_ref(&rhs.re);
        self.im = self.im.add_ref(&rhs.im);
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re = self.re.sub_ref(&rhs.re);
        self.im = self.im.sub_ref(&rhs.im);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl MulAssign<Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self *= &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_surd(s: &Surd) -> String {
    match (s.p.is_zero(), s.q.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => s.p.to_string(),
        (true, false) => format!("{}√2", s.q),
        (false, false) => {
            if s.q.is_negative() {
                format!("{}-{}√2", s.p, -&s.q)
            } else {
                format!("{}+{}√2", s.p, s.q)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_surd(&self.re));
        }
        let im = if self.im.q.is_zero() {
            if self.im.p.is_one() {
                String::new()
            } else if self.im.p == -BigRational::one() {
                "-".to_string()
            } else {
                self.im.p.to_string()
            }
        } else {
            format!("({})", fmt_surd(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if im.starts_with('-') {
            write!(f, "{}{im}i", fmt_surd(&self.re))
        } else {
            write!(f, "{}+{im}i", fmt_surd(&self.re))
        }
    }
}

/// Parse a rational written as `p`, `p/q`, or a finite decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Format(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let w = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = w.abs() * &scale + f;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    let n = BigInt::from_str(t).map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Canonical text for a rational: `p` or `p/q`.
pub fn rational_text(r: &BigRational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_identities() {
        let s = Scalar::sqrt2();
        assert_eq!(&s * &s, Scalar::from_int(2));
        assert_eq!(&Scalar::inv_sqrt2() * &Scalar::sqrt2(), Scalar::one());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        let x = Scalar::from_parts(
            BigRational::new(3.into(), 7.into()),
            BigRational::new((-2).into(), 5.into()),
            BigRational::from_integer(1.into()),
            BigRational::new(1.into(), 3.into()),
        );
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, Scalar::one());
        assert!(x.norm_sq().is_real());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn conj_only_flips_imaginary_part() {
        let x = Scalar::gaussian(2, -5) + Scalar::sqrt2();
        let c = x.conj();
        assert_eq!(c.re, x.re);
        assert_eq!(c.im, x.im.neg_ref());
        assert!((&x * &c).is_real());
    }

    #[test]
    fn signum_of_surds() {
        let a = Surd::new(BigRational::from_integer(3.into()), BigRational::from_integer((-2).into()));
        // 3 - 2√2 > 0
        assert_eq!(a.signum(), 1);
        let b = Surd::new(BigRational::from_integer(1.into()), BigRational::from_integer((-1).into()));
        assert_eq!(b.signum(), -1);
        assert_eq!(Surd::default().signum(), 0);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(Scalar::gaussian(0, -1).to_string(), "-i");
        assert_eq!(Scalar::gaussian(2, 3).to_string(), "2+3i");
        assert_eq!((Scalar::one() + Scalar::sqrt2()).to_string(), "1+1√2");
    }

    #[test]
    fn fourth_roots() {
        for k in 0..4 {
            assert_eq!(Scalar::i_pow(k).fourth_root_exponent(), Some(k as u8));
        }
        assert_eq!(Scalar::from_int(2).fourth_root_exponent(), None);
    }
}
