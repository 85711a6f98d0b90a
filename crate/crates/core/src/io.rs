//! JSON file formats.
//!
//! Scalars are `{"re": ["p/q", "p/q"], "im": ["p/q", "p/q"]}` for
//! `(re0 + re1√2) + (im0 + im1√2)i`; a plain string or integer is a rational.
//! Signatures are `{"arity": n, "values": [...]}` with `x₁` as the most
//! significant bit of the value index. Grids list `signatures`, `vertices`
//! (`{"sig": name}`, 0-based), `edges` (`[[v, p], [v, p]]`, ports 1-based),
//! optional `dangling`, `scale` and `semantics` (`"disequality"` or
//! `"equality"`).

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::appendix::F8Report;
use crate::bridges::{CspConstraint, CspEncoding, CspInstance, EdgeKind, OppositeReduction, ScaledGrid, VariableClassMap};
use crate::classifier::{Diagnostic, Outcome, Verdict, WitnessRep};
use crate::error::{Error, Result};
use crate::factorization::{Factorization, DiagnosticReport};
use crate::gadgets::{EdgeSemantics, Gate, MateMatrix, Port, SignatureGrid};
use crate::recognizers::{AffineRep, ProductFactor, ProductRep};
use crate::scalar::{parse_rational, rational_text, Scalar};
use crate::signature::{Signature, MAX_ARITY};

fn bad(path: &str, what: impl std::fmt::Display) -> Error {
    Error::Format(format!("{path}: {what}"))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("invalid JSON: {e}")))
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(path, format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(path, "expected an array"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(path, "expected a non-negative integer"))
}

fn rational(v: &Value, path: &str) -> Result<num_rational::BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| bad(path, e)),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()).map_err(|e| bad(path, e)),
        _ => Err(bad(path, "expected a rational as a string or integer")),
    }
}

fn surd_parts(v: Option<&Value>, path: &str) -> Result<(num_rational::BigRational, num_rational::BigRational)> {
    use num_traits::Zero;
    match v {
        None => Ok((Zero::zero(), Zero::zero())),
        Some(Value::Array(parts)) if parts.len() == 2 => {
            Ok((rational(&parts[0], &format!("{path}[0]"))?, rational(&parts[1], &format!("{path}[1]"))?))
        }
        Some(Value::Array(_)) => Err(bad(path, "expected two parts [rational, coefficient of √2]")),
        Some(other) => Ok((rational(other, path)?, Zero::zero())),
    }
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::Object(map) => {
            if let Some(k) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(bad(path, format!("unknown scalar field {k:?}")));
            }
            let (re0, re1) = surd_parts(map.get("re"), &format!("{path}.re"))?;
            let (im0, im1) = surd_parts(map.get("im"), &format!("{path}.im"))?;
            Ok(Scalar::from_parts(re0, re1, im0, im1))
        }
        _ => Ok(Scalar::from_rational(rational(v, path)?)),
    }
}

pub fn signature_from_json(v: &Value, path: &str) -> Result<Signature> {
    let arity = index(field(v, "arity", path)?, &format!("{path}.arity"))?;
    if arity > MAX_ARITY {
        return Err(Error::TooLarge(format!("{path}.arity: {arity} exceeds {MAX_ARITY}")));
    }
    let values = array(field(v, "values", path)?, &format!("{path}.values"))?;
    if values.len() != 1 << arity {
        return Err(bad(
            &format!("{path}.values"),
            format!("arity {arity} needs {} values, got {}", 1usize << arity, values.len()),
        ));
    }
    let values = values
        .iter()
        .enumerate()
        .map(|(k, x)| scalar_from_json(x, &format!("{path}.values[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Signature::new(arity, values)
}

fn signature_map(v: &Value, path: &str) -> Result<BTreeMap<String, Signature>> {
    object(v, path)?
        .iter()
        .map(|(name, s)| Ok((name.clone(), signature_from_json(s, &format!("{path}.{name}"))?)))
        .collect()
}

fn port(v: &Value, path: &str) -> Result<Port> {
    let pair = array(v, path)?;
    if pair.len() != 2 {
        return Err(bad(path, "expected [vertex, port]"));
    }
    Ok(Port::new(index(&pair[0], &format!("{path}[0]"))?, index(&pair[1], &format!("{path}[1]"))?))
}

fn semantics_from_json(v: &Value, path: &str) -> Result<EdgeSemantics> {
    match v.as_str() {
        Some("disequality") => Ok(EdgeSemantics::Disequality),
        Some("equality") => Ok(EdgeSemantics::Equality),
        _ => Err(bad(path, "expected \"disequality\" or \"equality\"")),
    }
}

fn semantics_name(s: EdgeSemantics) -> &'static str {
    match s {
        EdgeSemantics::Disequality => "disequality",
        EdgeSemantics::Equality => "equality",
    }
}

/// A parsed grid file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFile {
    pub gate: Gate,
    pub scale: Option<Scalar>,
    pub semantics: Option<EdgeSemantics>,
}

impl GridFile {
    /// The grid, which must have no dangling ports.
    pub fn closed(&self) -> Result<SignatureGrid> {
        if !self.gate.dangling.is_empty() {
            return Err(Error::Format(format!("dangling: expected none, got {}", self.gate.dangling.len())));
        }
        Ok(SignatureGrid {
            signatures: self.gate.signatures.clone(),
            vertices: self.gate.vertices.clone(),
            edges: self.gate.edges.clone(),
        })
    }
}

pub fn grid_from_json(v: &Value) -> Result<GridFile> {
    let signatures = signature_map(field(v, "signatures", "grid")?, "signatures")?;
    let vertices = array(field(v, "vertices", "grid")?, "vertices")?
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let path = format!("vertices[{k}]");
            field(x, "sig", &path)?
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| bad(&format!("{path}.sig"), "expected a signature name"))
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = array(field(v, "edges", "grid")?, "edges")?
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let path = format!("edges[{k}]");
            let ends = array(e, &path)?;
            if ends.len() != 2 {
                return Err(bad(&path, "expected [[v, p], [v, p]]"));
            }
            Ok((port(&ends[0], &format!("{path}[0]"))?, port(&ends[1], &format!("{path}[1]"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    let dangling = match v.get("dangling") {
        None => Vec::new(),
        Some(d) => array(d, "dangling")?
            .iter()
            .enumerate()
            .map(|(k, p)| port(p, &format!("dangling[{k}]")))
            .collect::<Result<Vec<_>>>()?,
    };
    let scale = v.get("scale").map(|s| scalar_from_json(s, "scale")).transpose()?;
    let semantics = v.get("semantics").map(|s| semantics_from_json(s, "semantics")).transpose()?;
    let gate = Gate { signatures, vertices, edges, dangling };
    gate.validate()?;
    Ok(GridFile { gate, scale, semantics })
}

/// A named signature set: a map of names to signatures, a list (named
/// `f0, f1, …`), a single signature (named `f`), or `{"signatures": …}`.
pub fn sigset_from_json(v: &Value) -> Result<Vec<(String, Signature)>> {
    match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(k, s)| Ok((format!("f{k}"), signature_from_json(s, &format!("[{k}]"))?)))
            .collect(),
        Value::Object(map) if map.contains_key("arity") => Ok(vec![("f".into(), signature_from_json(v, "signature")?)]),
        Value::Object(map) if map.len() == 1 && map.get("signatures").is_some_and(|s| s.is_object()) => {
            Ok(signature_map(&map["signatures"], "signatures")?.into_iter().collect())
        }
        Value::Object(_) => Ok(signature_map(v, "sigset")?.into_iter().collect()),
        _ => Err(bad("sigset", "expected an object or an array of signatures")),
    }
}

pub fn csp_from_json(v: &Value) -> Result<CspInstance> {
    let num_vars = index(field(v, "num_vars", "csp")?, "num_vars")?;
    let signatures = signature_map(field(v, "signatures", "csp")?, "signatures")?;
    let constraints = array(field(v, "constraints", "csp")?, "constraints")?
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let path = format!("constraints[{k}]");
            let sig = field(c, "sig", &path)?
                .as_str()
                .ok_or_else(|| bad(&format!("{path}.sig"), "expected a signature name"))?
                .to_string();
            let vars = array(field(c, "vars", &path)?, &format!("{path}.vars"))?
                .iter()
                .enumerate()
                .map(|(j, x)| index(x, &format!("{path}.vars[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(CspConstraint { sig, vars })
        })
        .collect::<Result<Vec<_>>>()?;
    let inst = CspInstance { num_vars, signatures, constraints };
    inst.validate()?;
    Ok(inst)
}

/// How scalars are written: exact ring elements, or 12-digit decimals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JsonStyle {
    pub float: bool,
}

impl JsonStyle {
    pub fn scalar(&self, s: &Scalar) -> Value {
        if self.float {
            return Value::String(s.to_float_string());
        }
        if s.is_rational() {
            return Value::String(rational_text(s.re0()));
        }
        json!({
            "re": [rational_text(s.re0()), rational_text(s.re1())],
            "im": [rational_text(s.im0()), rational_text(s.im1())],
        })
    }

    pub fn signature(&self, f: &Signature) -> Value {
        json!({
            "arity": f.arity(),
            "values": f.values().iter().map(|v| self.scalar(v)).collect::<Vec<_>>(),
        })
    }

    fn signature_map(&self, sigs: &BTreeMap<String, Signature>) -> Value {
        Value::Object(sigs.iter().map(|(k, f)| (k.clone(), self.signature(f))).collect())
    }

    pub fn grid(&self, grid: &SignatureGrid, scale: Option<&Scalar>, semantics: Option<EdgeSemantics>) -> Value {
        let mut out = json!({
            "signatures": self.signature_map(&grid.signatures),
            "vertices": grid.vertices.iter().map(|s| json!({ "sig": s })).collect::<Vec<_>>(),
            "edges": grid
                .edges
                .iter()
                .map(|(a, b)| json!([[a.vertex, a.port], [b.vertex, b.port]]))
                .collect::<Vec<_>>(),
        });
        if let Some(s) = scale {
            out["scale"] = self.scalar(s);
        }
        if let Some(s) = semantics {
            out["semantics"] = json!(semantics_name(s));
        }
        out
    }

    pub fn scaled_grid(&self, g: &ScaledGrid) -> Value {
        self.grid(&g.grid, Some(&g.scale), Some(g.semantics))
    }

    pub fn csp(&self, inst: &CspInstance) -> Value {
        json!({
            "num_vars": inst.num_vars,
            "signatures": self.signature_map(&inst.signatures),
            "constraints": inst
                .constraints
                .iter()
                .map(|c| json!({ "sig": c.sig, "vars": c.vars }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn encoding(&self, enc: &CspEncoding) -> Value {
        let mut out = self.scaled_grid(&enc.scaled);
        out["edge_kinds"] = enc
            .edge_kinds
            .iter()
            .map(|k| json!(if *k == EdgeKind::Solid { "solid" } else { "dashed" }))
            .collect();
        out["variable_vertices"] = json!(enc.variable_vertices);
        out["constraint_vertices"] = json!(enc.constraint_vertices);
        out["circuits"] = json!(enc.circuits);
        out
    }

    pub fn class_map(&self, m: &VariableClassMap) -> Value {
        json!({
            "representative": m.representative,
            "parity": m.parity,
            "component": m.component,
            "bipartite": m.bipartite,
        })
    }

    pub fn opposite_reduction(&self, r: &OppositeReduction) -> Value {
        match r {
            OppositeReduction::Zero { classes } => json!({ "value": self.scalar(&Scalar::zero()), "classes": self.class_map(classes) }),
            OppositeReduction::Grid { scaled, classes } => {
                let mut out = self.scaled_grid(scaled);
                out["classes"] = self.class_map(classes);
                out
            }
        }
    }

    pub fn factorization(&self, fact: &Factorization) -> Value {
        json!({
            "scale": self.scalar(&fact.scale),
            "factors": fact
                .factors
                .iter()
                .map(|f| json!({ "vars": f.vars, "sig": self.signature(&f.sig) }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn diagnostics(&self, d: &DiagnosticReport) -> Value {
        json!({
            "in_b": d.in_b,
            "int_b": d.int_b,
            "int_b_nonzero": d.int_b_nonzero,
            "delta_witness": d.delta_witness.as_ref().map(|w| json!({
                "u": w.u, "v": w.v, "r": w.r, "s": w.s, "t": w.t,
                "factor": self.signature(&w.factor),
            })),
            "orthogonality_lambda": d.orthogonality_lambda.as_ref().map(|l| self.scalar(l)),
        })
    }

    pub fn mate(&self, sig: &Signature, m: &MateMatrix) -> Value {
        let rows: Vec<Vec<Value>> = (0..4).map(|r| (0..4).map(|c| self.scalar(m.entry(r, c))).collect()).collect();
        json!({ "signature": self.signature(sig), "matrix": rows })
    }

    pub fn affine_rep(&self, r: &AffineRep) -> Value {
        json!({
            "lambda": self.scalar(&r.lambda),
            "support": {
                "arity": r.space.arity(),
                "base": r.space.base(),
                "basis": r.space.basis(),
            },
            "q_const": r.q_const,
            "q_linear": r.q_linear,
            "q_cross": r.q_cross,
        })
    }

    pub fn product_rep(&self, r: &ProductRep) -> Value {
        let factors: Vec<Value> = r
            .factors
            .iter()
            .map(|f| match f {
                ProductFactor::Unary { port, w0, w1 } => {
                    json!({ "unary": port, "weights": [self.scalar(w0), self.scalar(w1)] })
                }
                ProductFactor::Equality { a, b } => json!({ "equality": [a, b] }),
                ProductFactor::Disequality { a, b } => json!({ "disequality": [a, b] }),
            })
            .collect();
        json!({ "arity": r.arity, "factors": factors })
    }

    pub fn verdict(&self, v: &Verdict) -> Value {
        let outcome = match v.outcome {
            Outcome::TractableAffine => "tractable-affine",
            Outcome::TractableProduct => "tractable-product",
            Outcome::Hard => "hard",
        };
        let witnesses: Map<String, Value> = v
            .witnesses
            .iter()
            .map(|w| {
                let rep = match &w.rep {
                    WitnessRep::Affine(r) => json!({ "affine": self.affine_rep(r) }),
                    WitnessRep::Product(r) => json!({ "product": self.product_rep(r) }),
                };
                (w.name.clone(), rep)
            })
            .collect();
        let mut out = json!({ "verdict": outcome, "both_classes": v.both_classes, "witnesses": witnesses });
        if let Some(d) = &v.diagnostic {
            let signature = match d {
                Diagnostic::Both { signature, .. } => json!(signature),
                Diagnostic::Mixed { not_affine, not_product, .. } => json!([not_affine, not_product]),
            };
            out["diagnostic"] = json!({ "signature": signature, "reason": d.to_string() });
        }
        out
    }

    pub fn f8_report(&self, r: &F8Report) -> Value {
        let rows: Vec<Value> = r
            .rows
            .iter()
            .map(|row| {
                json!({
                    "pair": [row.pair.0, row.pair.1],
                    "expected": row.expected.iter().map(|p| [p.0, p.1]).collect::<Vec<_>>(),
                    "observed": row.observed.iter().map(|p| [p.0, p.1]).collect::<Vec<_>>(),
                    "scale": self.scalar(&row.scale),
                    "factor_scalars": row
                        .factor_scalars
                        .iter()
                        .map(|c| c.as_ref().map_or(Value::Null, |c| self.scalar(c)))
                        .collect::<Vec<_>>(),
                    "ok": row.ok,
                })
            })
            .collect();
        json!({
            "support_size": r.support_size,
            "is_eo": r.is_eo,
            "is_ars": r.is_ars,
            "rows": rows,
            "delta_property_absent": r.delta_property_absent,
            "commutativity_pairs": r.commutativity_pairs,
            "commutativity_checked": r.commutativity_checked,
            "in_b": r.in_b,
            "int_b": r.int_b,
            "verified": r.verified(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        let style = JsonStyle::default();
        for s in [
            Scalar::from_ratio(-3, 4),
            Scalar::gaussian(1, -1),
            Scalar::inv_sqrt2(),
            Scalar::gaussian(2, 5) * Scalar::sqrt2() + Scalar::from_ratio(1, 3),
        ] {
            assert_eq!(scalar_from_json(&style.scalar(&s), "x").unwrap(), s);
        }
        assert_eq!(scalar_from_json(&json!(7), "x").unwrap(), Scalar::from_int(7));
        assert_eq!(scalar_from_json(&json!({"im": "1"}), "x").unwrap(), Scalar::i());
        assert_eq!(style.scalar(&Scalar::from_int(2)), json!("2"));
    }

    #[test]
    fn errors_name_the_field() {
        let v = json!({"arity": 1, "values": ["1", "x"]});
        let err = signature_from_json(&v, "f").unwrap_err().to_string();
        assert!(err.contains("f.values[1]"), "{err}");
        let v = json!({"arity": 2, "values": ["1"]});
        assert!(signature_from_json(&v, "f").unwrap_err().to_string().contains("needs 4 values"));
        let v = json!({"signatures": {}, "vertices": [{"sig": "missing"}], "edges": []});
        assert!(grid_from_json(&v).is_err());
    }

    #[test]
    fn grid_round_trip() {
        let mut g = SignatureGrid::new();
        g.add_signature("d", Signature::disequality(2).unwrap());
        let v = g.add_vertex("d");
        g.connect((v, 1), (v, 3));
        g.connect((v, 2), (v, 4));
        let style = JsonStyle::default();
        let text = style.grid(&g, Some(&Scalar::from_int(2)), Some(EdgeSemantics::Equality)).to_string();
        let back = grid_from_json(&parse_json(&text).unwrap()).unwrap();
        assert_eq!(back.closed().unwrap(), g);
        assert_eq!(back.scale, Some(Scalar::from_int(2)));
        assert_eq!(back.semantics, Some(EdgeSemantics::Equality));
    }

    #[test]
    fn sigset_shapes() {
        let sig = json!({"arity": 2, "values": ["0", "1", "1", "0"]});
        assert_eq!(sigset_from_json(&sig).unwrap()[0].0, "f");
        assert_eq!(sigset_from_json(&json!([sig, sig])).unwrap()[1].0, "f1");
        assert_eq!(sigset_from_json(&json!({"neq": sig})).unwrap()[0].0, "neq");
        assert_eq!(sigset_from_json(&json!({"signatures": {"a": sig}})).unwrap()[0].0, "a");
    }

    #[test]
    fn csp_round_trip() {
        let inst = CspInstance {
            num_vars: 3,
            signatures: [("n".to_string(), Signature::diseq2())].into(),
            constraints: vec![CspConstraint { sig: "n".into(), vars: vec![0, 2] }],
        };
        let v = JsonStyle::default().csp(&inst);
        assert_eq!(csp_from_json(&v).unwrap(), inst);
    }
}
