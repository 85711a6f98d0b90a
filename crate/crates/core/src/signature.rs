//! Dense signature tables.
//!
//! Inputs are indexed lexicographically with x₁ as the most significant bit:
//! variable `k` (1-based) of an arity-`n` signature is `(idx >> (n - k)) & 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest arity accepted for a dense table.
pub const MAX_ARITY: usize = 16;

/// Bit of variable `k` (1-based) in input `idx` of an arity-`n` table.
#[inline]
pub fn var_bit(idx: usize, n: usize, k: usize) -> usize {
    (idx >> (n - k)) & 1
}

/// Mask with the bit of variable `k` (1-based) set.
#[inline]
pub fn var_mask(n: usize, k: usize) -> usize {
    1 << (n - k)
}

/// Mask with every variable bit set.
#[inline]
pub fn full_mask(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (1usize << n) - 1
    }
}

/// Render `idx` as an `n`-character 0/1 string, x₁ first.
pub fn bits_string(idx: usize, n: usize) -> String {
    (1..=n).map(|k| if var_bit(idx, n, k) == 1 { '1' } else { '0' }).collect()
}

/// Parse a 0/1 string (x₁ first) into an index.
pub fn parse_bits(s: &str) -> Result<usize> {
    let mut idx = 0usize;
    for c in s.chars() {
        idx <<= 1;
        match c {
            '0' => {}
            '1' => idx |= 1,
            _ => return Err(Error::Format(format!("not a bit string: {s:?}"))),
        }
    }
    Ok(idx)
}

/// Gather the bits of `idx` at the listed variables into a compact index,
/// first listed variable most significant.
pub fn gather_bits(idx: usize, n: usize, vars: &[usize]) -> usize {
    vars.iter().fold(0, |acc, &k| (acc << 1) | var_bit(idx, n, k))
}

/// Inverse of [`gather_bits`]: place the bits of `sub` at the listed variables.
pub fn scatter_bits(sub: usize, n: usize, vars: &[usize]) -> usize {
    let m = vars.len();
    let mut idx = 0;
    for (pos, &k) in vars.iter().enumerate() {
        if (sub >> (m - 1 - pos)) & 1 == 1 {
            idx |= var_mask(n, k);
        }
    }
    idx
}

/// A function `{0,1}^arity → ℚ(i,√2)` stored as a dense table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    arity: usize,
    values: Vec<Scalar>,
    is_eo: bool,
    is_ars: bool,
}

impl Signature {
    /// Build a signature, validating the table length.
    pub fn new(arity: usize, values: Vec<Scalar>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Format("arity must be at least 1".into()));
        }
        Self::with_arity(arity, values)
    }

    /// Like [`Signature::new`] but also accepts arity 0 (a bare constant).
    pub(crate) fn with_arity(arity: usize, values: Vec<Scalar>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {arity} exceeds the limit of {MAX_ARITY}")));
        }
        if values.len() != 1usize << arity {
            return Err(Error::Format(format!(
                "arity {arity} needs {} values, got {}",
                1usize << arity,
                values.len()
            )));
        }
        let is_eo = compute_eo(arity, &values);
        let is_ars = compute_ars(arity, &values);
        Ok(Signature { arity, values, is_eo, is_ars })
    }

    /// Internal constructor for tables whose length is correct by construction.
    pub(crate) fn from_table(arity: usize, values: Vec<Scalar>) -> Self {
        debug_assert_eq!(values.len(), 1usize << arity);
        let is_eo = compute_eo(arity, &values);
        let is_ars = compute_ars(arity, &values);
        Signature { arity, values, is_eo, is_ars }
    }

    pub fn from_ints(arity: usize, values: &[i64]) -> Result<Self> {
        Self::new(arity, values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    /// Gaussian-integer table given as `(re, im)` pairs.
    pub fn from_gaussian(arity: usize, values: &[(i64, i64)]) -> Result<Self> {
        Self::new(arity, values.iter().map(|&(a, b)| Scalar::gaussian(a, b)).collect())
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_table(arity, vec![Scalar::zero(); 1 << arity])
    }

    /// Build a table by evaluating `f` on every input index.
    pub fn from_fn(arity: usize, f: impl FnMut(usize) -> Scalar) -> Self {
        Self::from_table(arity, (0..1usize << arity).map(f).collect())
    }

    /// Binary disequality `(0,1,1,0)`.
    pub fn diseq2() -> Self {
        Self::binary_eo(Scalar::one(), Scalar::one())
    }

    /// Binary equality `(1,0,0,1)`.
    pub fn eq2() -> Self {
        Self::from_table(2, vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()])
    }

    /// The binary EO signature `(0, a, b, 0)`.
    pub fn binary_eo(a: Scalar, b: Scalar) -> Self {
        Self::from_table(2, vec![Scalar::zero(), a, b, Scalar::zero()])
    }

    /// `(0, i, −i, 0)`.
    pub fn binary_i() -> Self {
        Self::binary_eo(Scalar::i(), Scalar::gaussian(0, -1))
    }

    /// The canonical disequality of arity `2k`: value 1 on `0^k1^k` and `1^k0^k`.
    pub fn disequality(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("disequality needs k >= 1".into()));
        }
        let n = 2 * k;
        if n > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {n} exceeds the limit of {MAX_ARITY}")));
        }
        let lo = (1usize << k) - 1;
        let hi = lo << k;
        Ok(Self::from_fn(n, |idx| if idx == lo || idx == hi { Scalar::one() } else { Scalar::zero() }))
    }

    /// Unary signature `(a, b)`.
    pub fn unary(a: Scalar, b: Scalar) -> Self {
        Self::from_table(1, vec![a, b])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    pub fn value(&self, idx: usize) -> &Scalar {
        &self.values[idx]
    }

    /// Value at an explicit bit assignment `(x₁, …, xₙ)`.
    pub fn at(&self, bits: &[u8]) -> &Scalar {
        debug_assert_eq!(bits.len(), self.arity);
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        &self.values[idx]
    }

    pub fn is_eo(&self) -> bool {
        self.is_eo
    }

    pub fn is_ars(&self) -> bool {
        self.is_ars
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> SupportSet {
        SupportSet {
            arity: self.arity,
            points: (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect(),
        }
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn scaled(&self, c: &Scalar) -> Signature {
        Self::from_table(self.arity, self.values.iter().map(|v| v * c).collect())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Signature {
        Self::from_table(self.arity, self.values.iter().map(f).collect())
    }

    /// Pointwise conjugate.
    pub fn conj(&self) -> Signature {
        self.map(Scalar::conj)
    }

    /// Reorder variables: variable `k` of the result is variable `order[k-1]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Signature> {
        let n = self.arity;
        let mut seen = vec![false; n + 1];
        if order.len() != n {
            return Err(Error::Precondition(format!("permutation has {} entries, arity is {n}", order.len())));
        }
        for &k in order {
            if k == 0 || k > n || seen[k] {
                return Err(Error::Precondition(format!("{order:?} is not a permutation of 1..={n}")));
            }
            seen[k] = true;
        }
        Ok(Self::from_fn(n, |idx| self.values[scatter_bits(idx, n, order)].clone()))
    }

    /// First nonzero entry in lexicographic order.
    pub fn first_nonzero(&self) -> Option<(usize, &Scalar)> {
        self.values.iter().enumerate().find(|(_, v)| !v.is_zero())
    }

    /// If `self = c · other` for a nonzero `c`, return `c`.
    pub fn associate_ratio(&self, other: &Signature) -> Option<Scalar> {
        if self.arity != other.arity {
            return None;
        }
        let (idx, v) = other.first_nonzero()?;
        let c = self.values[idx].checked_div(v)?;
        if c.is_zero() {
            return None;
        }
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| *a == b * &c)
            .then_some(c)
    }
}

fn compute_eo(arity: usize, values: &[Scalar]) -> bool {
    values.iter().enumerate().all(|(idx, v)| v.is_zero() || 2 * idx.count_ones() as usize == arity)
}

fn compute_ars(arity: usize, values: &[Scalar]) -> bool {
    let m = full_mask(arity);
    (0..values.len()).all(|idx| values[idx ^ m] == values[idx].conj())
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature[{}](", self.arity)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sorted, duplicate-free list of the inputs where a signature is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    arity: usize,
    points: Vec<usize>,
}

impl SupportSet {
    pub fn new(arity: usize, mut points: Vec<usize>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::TooLarge(format!("arity {arity} exceeds the limit of {MAX_ARITY}")));
        }
        points.sort_unstable();
        points.dedup();
        if let Some(&p) = points.last() {
            if p >> arity != 0 {
                return Err(Error::OutOfRange(format!("point {p} does not fit in {arity} bits")));
            }
        }
        Ok(SupportSet { arity, points })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}
