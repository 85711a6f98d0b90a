//! The affine / product-type dichotomy for EO signatures with arrow reversal
//! symmetry, with witnesses that are checked by reconstruction.

use std::fmt;

use crate::error::{Error, Result};
use crate::gadgets::{mate, MateMatrix};
use crate::recognizers::{check_affine, check_product, AffineRejection, AffineRep, ProductRejection, ProductRep};
use crate::scalar::Scalar;
use crate::signature::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    TractableAffine,
    TractableProduct,
    Hard,
}

impl Outcome {
    pub fn is_tractable(self) -> bool {
        self != Outcome::Hard
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessRep {
    Affine(AffineRep),
    Product(ProductRep),
}

impl WitnessRep {
    pub fn reconstruct(&self) -> Signature {
        match self {
            WitnessRep::Affine(r) => r.reconstruct(),
            WitnessRep::Product(r) => r.reconstruct(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub rep: WitnessRep,
}

/// Why a set is hard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    /// One signature is neither affine nor of product type.
    Both { signature: String, affine: AffineRejection, product: ProductRejection },
    /// Each signature lies in one class, but neither class holds all of them.
    Mixed { not_affine: String, affine: AffineRejection, not_product: String, product: ProductRejection },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Both { affine, product, .. } => {
                let (a, p) = (affine.to_string(), product.to_string());
                if a == p {
                    write!(f, "{a}")
                } else {
                    write!(f, "not affine: {a}; not product type: {p}")
                }
            }
            Diagnostic::Mixed { not_affine, affine, not_product, product } => write!(
                f,
                "mixed set: {not_affine:?} is not affine ({affine}) and {not_product:?} is not product type ({product})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Every signature lies in both classes (reported as affine).
    pub both_classes: bool,
    /// One witness per signature when tractable.
    pub witnesses: Vec<Witness>,
    pub diagnostic: Option<Diagnostic>,
}

fn check_hypothesis(name: &str, f: &Signature) -> Result<()> {
    if !f.is_eo() {
        return Err(Error::Precondition(format!("signature {name:?} is not an EO signature")));
    }
    if !f.is_ars() {
        return Err(Error::Precondition(format!("signature {name:?} lacks arrow reversal symmetry")));
    }
    Ok(())
}

fn verified(name: &str, f: &Signature, rep: WitnessRep) -> Result<Witness> {
    if rep.reconstruct() != *f {
        return Err(Error::Invariant(format!("witness for {name:?} does not rebuild it")));
    }
    Ok(Witness { name: name.to_string(), rep })
}

/// Tractable exactly when every signature is affine, or every signature is of
/// product type; ties go to affine with `both_classes` set.
pub fn classify(set: &[(String, Signature)]) -> Result<Verdict> {
    for (name, f) in set {
        check_hypothesis(name, f)?;
    }
    let affine: Vec<_> = set.iter().map(|(_, f)| check_affine(f)).collect();
    let product: Vec<_> = set.iter().map(|(_, f)| check_product(f)).collect();
    let all_affine = affine.iter().all(|r| r.is_ok());
    let all_product = product.iter().all(|r| r.is_ok());
    if all_affine {
        let witnesses = set
            .iter()
            .zip(affine)
            .map(|((name, f), r)| verified(name, f, WitnessRep::Affine(r.expect("checked"))))
            .collect::<Result<_>>()?;
        return Ok(Verdict { outcome: Outcome::TractableAffine, both_classes: all_product, witnesses, diagnostic: None });
    }
    if all_product {
        let witnesses = set
            .iter()
            .zip(product)
            .map(|((name, f), r)| verified(name, f, WitnessRep::Product(r.expect("checked"))))
            .collect::<Result<_>>()?;
        return Ok(Verdict { outcome: Outcome::TractableProduct, both_classes: false, witnesses, diagnostic: None });
    }
    let both = (0..set.len()).find(|&k| affine[k].is_err() && product[k].is_err());
    let diagnostic = match both {
        Some(k) => Diagnostic::Both {
            signature: set[k].0.clone(),
            affine: affine[k].clone().expect_err("fails"),
            product: product[k].clone().expect_err("fails"),
        },
        None => {
            let a = affine.iter().position(|r| r.is_err()).expect("not all affine");
            let p = product.iter().position(|r| r.is_err()).expect("not all product");
            Diagnostic::Mixed {
                not_affine: set[a].0.clone(),
                affine: affine[a].clone().expect_err("fails"),
                not_product: set[p].0.clone(),
                product: product[p].clone().expect_err("fails"),
            }
        }
    };
    Ok(Verdict { outcome: Outcome::Hard, both_classes: false, witnesses: Vec::new(), diagnostic: Some(diagnostic) })
}

/// The single-signature arity-4 case: hard exactly when `f` is not of product type.
///
/// For arity-4 EO signatures with ARS every affine signature is also of
/// product type; should that ever fail, the general rule decides.
pub fn classify_single_arity4(f: &Signature) -> Result<Verdict> {
    if f.arity() != 4 {
        return Err(Error::Precondition(format!("expected arity 4, got {}", f.arity())));
    }
    check_hypothesis("f", f)?;
    let set = [("f".to_string(), f.clone())];
    match check_product(f) {
        Ok(_) => classify(&set),
        Err(product) => match check_affine(f) {
            Ok(_) => classify(&set),
            Err(affine) => Ok(Verdict {
                outcome: Outcome::Hard,
                both_classes: false,
                witnesses: Vec::new(),
                diagnostic: Some(Diagnostic::Both { signature: "f".into(), affine, product }),
            }),
        },
    }
}

/// Shape of one mate matrix of an irreducible signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MateForm {
    /// `λ` at `(00,11)` and `(11,00)` only; realizes `≠₄`.
    DiseqOuter { lambda: Scalar },
    /// `λ` at `(01,10)` and `(10,01)` only; realizes `≠₄`.
    DiseqInner { lambda: Scalar },
    /// `λ N^{⊗2}` with `λ ≠ 0`.
    Orthogonal { lambda: Scalar },
    /// The mated arity-4 signature is not of product type.
    Hard,
    /// Tractable but none of the above; only possible for reducible inputs.
    Other,
}

/// `λ` when the matrix is `λ` on one anti-diagonal block pair and zero elsewhere; `inner` picks the pair.
pub fn diseq_realizing(m: &MateMatrix, inner: bool) -> Option<Scalar> {
    let cells = if inner { [(1, 2), (2, 1)] } else { [(0, 3), (3, 0)] };
    let lambda = m.entry(cells[0].0, cells[0].1).clone();
    if lambda.is_zero() || *m.entry(cells[1].0, cells[1].1) != lambda {
        return None;
    }
    let rest_zero = (0..4)
        .flat_map(|r| (0..4).map(move |c| (r, c)))
        .filter(|rc| !cells.contains(rc))
        .all(|(r, c)| m.entry(r, c).is_zero());
    rest_zero.then_some(lambda)
}

pub fn mate_form(m: &MateMatrix) -> Result<MateForm> {
    if let Some(lambda) = diseq_realizing(m, false) {
        return Ok(MateForm::DiseqOuter { lambda });
    }
    if let Some(lambda) = diseq_realizing(m, true) {
        return Ok(MateForm::DiseqInner { lambda });
    }
    if let Some(lambda) = m.as_scaled_n2().filter(|l| !l.is_zero()) {
        return Ok(MateForm::Orthogonal { lambda });
    }
    if classify_single_arity4(&m.to_signature())?.outcome == Outcome::Hard {
        return Ok(MateForm::Hard);
    }
    Ok(MateForm::Other)
}

/// The form of every mate matrix `𝔪_ij f`, `i < j`.
pub fn mate_forms(f: &Signature) -> Result<Vec<((usize, usize), MateForm)>> {
    let n = f.arity();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (_, m) = mate(f, i, j)?;
            out.push(((i, j), mate_form(&m)?));
        }
    }
    Ok(out)
}
