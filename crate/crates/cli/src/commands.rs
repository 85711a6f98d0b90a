use std::path::Path;

use eohk_core::appendix::verify_f8;
use eohk_core::bridges::{csp_to_eo, eo_to_csp, opposite_reduction, square_reduction};
use eohk_core::classifier::{classify, classify_single_arity4, Outcome, Verdict};
use eohk_core::evaluators::{affine_reps, eval_affine_grid_with, eval_product_grid_with, product_reps};
use eohk_core::factorization::{ars_normalize, diagnose, upf};
use eohk_core::gadgets::{contract, mate, merge, merge_to_scalar, pin, EdgeSemantics, SignatureGrid, DEFAULT_EDGE_CAP};
use eohk_core::io::{csp_from_json, grid_from_json, parse_json, sigset_from_json, signature_from_json, GridFile, JsonStyle};
use eohk_core::recognizers::{affine_support, check_affine, check_product, pairwise_opposite};
use eohk_core::selftest::{run_all, Sizes};
use eohk_core::transform::{row_transform, tilde, z_transform, Direction};
use eohk_core::{Error, Scalar, Signature};
use serde_json::{json, Value};

use crate::{Cli, Command, Mode};

pub struct CommandOutcome {
    pub code: u8,
    pub stdout: Option<String>,
    pub notes: Vec<String>,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Run = Result<CommandOutcome, Failure>;

fn input(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_signature(path: &Path) -> Result<Signature, Failure> {
    signature_from_json(&read(path)?, "signature").map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_grid(path: &Path) -> Result<GridFile, Failure> {
    grid_from_json(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn edge_cap() -> Result<usize, Failure> {
    match std::env::var("EOHK_MAX_EDGES") {
        Err(_) => Ok(DEFAULT_EDGE_CAP),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| input(format!("EOHK_MAX_EDGES: expected a non-negative integer, got {s:?}"))),
    }
}

fn done(json: Value) -> Run {
    Ok(CommandOutcome { code: 0, stdout: Some(json.to_string()), notes: Vec::new() })
}

pub fn run(cli: &Cli) -> Run {
    let style = JsonStyle { float: cli.float };
    match &cli.command {
        Command::Eval { grid, mode } => eval(&style, grid, *mode),
        Command::Classify { sigset } => {
            let set = sigset_from_json(&read(sigset)?).map_err(|e| input(format!("{}: {e}", sigset.display())))?;
            verdict(&style, classify(&set)?)
        }
        Command::Classify4 { signature } => verdict(&style, classify_single_arity4(&read_signature(signature)?)?),
        Command::Factor { signature, ars, diagnose: diag } => {
            let f = read_signature(signature)?;
            let mut fact = upf(&f)?;
            if *ars {
                fact = ars_normalize(&fact)?;
            }
            if fact.reconstruct() != f {
                return Err(Failure { code: 4, message: "factorization does not rebuild the input".into() });
            }
            let mut out = style.factorization(&fact);
            if *diag {
                out["diagnostics"] = style.diagnostics(&diagnose(&f)?);
            }
            done(out)
        }
        Command::Merge { signature, i, j } => {
            let f = read_signature(signature)?;
            if f.arity() == 2 {
                if (*i, *j) != (1, 2) && (*i, *j) != (2, 1) {
                    return Err(input(format!("merge ports ({i}, {j}) of an arity-2 signature")));
                }
                return done(json!({ "value": style.scalar(&merge_to_scalar(&f)?) }));
            }
            done(style.signature(&merge(&f, *i, *j)?))
        }
        Command::Mate { signature, i, j } => {
            let (sig, m) = mate(&read_signature(signature)?, *i, *j)?;
            done(style.mate(&sig, &m))
        }
        Command::Pin { signature, i, b } => {
            if *b > 1 {
                return Err(input(format!("pin value must be 0 or 1, got {b}")));
            }
            done(style.signature(&pin(&read_signature(signature)?, *i, *b)?))
        }
        Command::TransformZ { signature, inverse, row } => {
            let f = read_signature(signature)?;
            let dir = if *inverse { Direction::Inverse } else { Direction::Forward };
            let g = if *row { row_transform(&f, dir) } else { z_transform(&f, dir) };
            done(style.signature(&g))
        }
        Command::Tilde { signature } => done(style.signature(&tilde(&read_signature(signature)?)?)),
        Command::Csp2eo { csp } => {
            let inst = csp_from_json(&read(csp)?).map_err(|e| input(format!("{}: {e}", csp.display())))?;
            done(style.encoding(&csp_to_eo(&inst)?))
        }
        Command::Eo2csp { grid } => {
            let file = read_grid(grid)?;
            let inst = eo_to_csp(&file.closed()?)?;
            let mut out = style.csp(&inst);
            if let Some(scale) = &file.scale {
                out["scale"] = style.scalar(scale);
            }
            done(out)
        }
        Command::ReduceSquare { csp, base } => {
            let inst = csp_from_json(&read(csp)?).map_err(|e| input(format!("{}: {e}", csp.display())))?;
            let base = sigset_from_json(&read(base)?).map_err(|e| input(format!("{}: {e}", base.display())))?;
            done(style.scaled_grid(&square_reduction(&inst, &base.into_iter().collect())?))
        }
        Command::ReduceOpposite { csp } => {
            let inst = csp_from_json(&read(csp)?).map_err(|e| input(format!("{}: {e}", csp.display())))?;
            done(style.opposite_reduction(&opposite_reduction(&inst)?))
        }
        Command::Pairing { signature } => {
            let f = read_signature(signature)?;
            let space = affine_support(&f.support())
                .ok_or_else(|| input("support is not an affine subspace".into()))?;
            let (pairing, checks) = pairwise_opposite(&space)?;
            let pairs: Vec<[usize; 2]> = pairing.pairs.iter().map(|&(u, v)| [u, v]).collect();
            done(json!({ "pairs": pairs, "index_sets_checked": checks.index_sets }))
        }
        Command::VerifyF8 { json: as_json } => {
            let report = verify_f8()?;
            let code = if report.verified() { 0 } else { 4 };
            if *as_json {
                return Ok(CommandOutcome { code, stdout: Some(style.f8_report(&report).to_string()), notes: Vec::new() });
            }
            let mut lines = Vec::new();
            lines.push(format!(
                "support size {}, EO {}, ARS {}",
                report.support_size, report.is_eo, report.is_ars
            ));
            for row in &report.rows {
                let pairs: Vec<String> = row.observed.iter().map(|(a, b)| format!("({a}{b})")).collect();
                let status = if row.ok { "ok" } else { "MISMATCH" };
                lines.push(format!("merge ({}{}) -> {}  scale {}  {status}", row.pair.0, row.pair.1, pairs.join(""), row.scale));
            }
            lines.push(format!("Δ-property absent: {}", report.delta_property_absent));
            lines.push(format!(
                "merge commutativity: {} on {} disjoint pairs",
                report.commutativity_checked, report.commutativity_pairs
            ));
            lines.push(format!("in B: {}, in ∫B: {}", report.in_b, report.int_b));
            lines.push(if report.verified() { "verified".into() } else { "NOT verified".into() });
            Ok(CommandOutcome { code, stdout: Some(lines.join("\n")), notes: Vec::new() })
        }
        Command::Selftest { seed, full } => {
            let sizes = if *full { Sizes::full() } else { Sizes::reduced() };
            let reports = run_all(*seed, &sizes);
            let lines: Vec<String> = reports
                .iter()
                .map(|r| match &r.failure {
                    None => format!("PASS {:>2} {} ({} cases)", r.id, r.name, r.cases),
                    Some(why) => format!("FAIL {:>2} {}: {why}", r.id, r.name),
                })
                .collect();
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 4 };
            Ok(CommandOutcome { code, stdout: Some(lines.join("\n")), notes: Vec::new() })
        }
    }
}

fn verdict(style: &JsonStyle, v: Verdict) -> Run {
    let mut notes = Vec::new();
    if let Some(d) = &v.diagnostic {
        notes.push(format!("hard: {d}"));
    }
    let code = if v.outcome == Outcome::Hard { 3 } else { 0 };
    Ok(CommandOutcome { code, stdout: Some(style.verdict(&v).to_string()), notes })
}

fn eval(style: &JsonStyle, path: &Path, mode: Mode) -> Run {
    let file = read_grid(path)?;
    let grid = file.closed()?;
    let semantics = file.semantics.unwrap_or(EdgeSemantics::Disequality);
    let scale = file.scale.clone().unwrap_or_else(Scalar::one);
    let all_labels = |check: &dyn Fn(&Signature) -> bool| {
        (0..grid.vertices.len()).all(|v| grid.label(v).map(check).unwrap_or(false))
    };
    let (value, method) = match mode {
        Mode::Brute => (brute(&grid, semantics)?, "brute"),
        Mode::Affine => (eval_affine_grid_with(&grid, &affine_reps(&grid)?, semantics)?, "affine"),
        Mode::Product => (eval_product_grid_with(&grid, &product_reps(&grid)?, semantics)?, "product"),
        Mode::Auto => {
            if all_labels(&|f| check_affine(f).is_ok()) {
                (eval_affine_grid_with(&grid, &affine_reps(&grid)?, semantics)?, "affine")
            } else if all_labels(&|f| check_product(f).is_ok()) {
                (eval_product_grid_with(&grid, &product_reps(&grid)?, semantics)?, "product")
            } else {
                (brute(&grid, semantics)?, "brute")
            }
        }
    };
    Ok(CommandOutcome {
        code: 0,
        stdout: Some(json!({ "value": style.scalar(&(value * &scale)) }).to_string()),
        notes: vec![format!("evaluated by the {method} method")],
    })
}

fn brute(grid: &SignatureGrid, semantics: EdgeSemantics) -> Result<Scalar, Failure> {
    let sig = contract(&grid.as_gate(), semantics, edge_cap()?)?;
    Ok(sig.value(0).clone())
}
