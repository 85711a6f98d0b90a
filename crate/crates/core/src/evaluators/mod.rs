//! Polynomial-time partition functions for grids whose labels are all affine
//! or all of product type.

mod quadratic;
mod union_find;

pub use quadratic::QuadraticSystem;
pub use union_find::ParityUnionFind;

use crate::error::{Error, Result};
use crate::gadgets::{EdgeSemantics, SignatureGrid};
use crate::recognizers::{check_affine, check_product, AffineRep, ProductFactor, ProductRep};
use crate::scalar::Scalar;
use crate::signature::Signature;

/// For each vertex and port (1-based, index 0 unused): the edge variable
/// feeding it and whether the port reads its complement.
fn port_variables(grid: &SignatureGrid, semantics: EdgeSemantics) -> Result<Vec<Vec<(usize, bool)>>> {
    grid.validate()?;
    let mut table: Vec<Vec<(usize, bool)>> = (0..grid.vertices.len())
        .map(|v| grid.label(v).map(|f| vec![(usize::MAX, false); f.arity() + 1]))
        .collect::<Result<_>>()?;
    let flip = semantics == EdgeSemantics::Disequality;
    for (e, (a, b)) in grid.edges.iter().enumerate() {
        table[a.vertex][a.port] = (e, false);
        table[b.vertex][b.port] = (e, flip);
    }
    Ok(table)
}

fn check_rep_count(grid: &SignatureGrid, reps: usize) -> Result<()> {
    if reps != grid.vertices.len() {
        return Err(Error::Precondition(format!(
            "{reps} representations for {} vertices",
            grid.vertices.len()
        )));
    }
    Ok(())
}

fn check_reconstruct(grid: &SignatureGrid, v: usize, rebuilt: Signature) -> Result<()> {
    if &rebuilt != grid.label(v)? {
        return Err(Error::Precondition(format!(
            "representation for vertex {v} does not rebuild its label {:?}",
            grid.vertices[v]
        )));
    }
    Ok(())
}

/// Affine representations of every vertex label, or the first label that is not affine.
pub fn affine_reps(grid: &SignatureGrid) -> Result<Vec<AffineRep>> {
    (0..grid.vertices.len())
        .map(|v| {
            check_affine(grid.label(v)?)
                .map_err(|why| Error::Precondition(format!("signature {:?} is not affine: {why}", grid.vertices[v])))
        })
        .collect()
}

/// Product-type representations of every vertex label, or the first label that is not of product type.
pub fn product_reps(grid: &SignatureGrid) -> Result<Vec<ProductRep>> {
    (0..grid.vertices.len())
        .map(|v| {
            check_product(grid.label(v)?).map_err(|why| {
                Error::Precondition(format!("signature {:?} is not of product type: {why}", grid.vertices[v]))
            })
        })
        .collect()
}

/// Value of a closed EO grid whose labels are all affine.
pub fn eval_affine_grid(grid: &SignatureGrid, reps: &[AffineRep]) -> Result<Scalar> {
    eval_affine_grid_with(grid, reps, EdgeSemantics::Disequality)
}

/// Gather every vertex's support constraints and phase into one quadratic
/// system over the edge variables and sum it by Gauss-sum elimination.
pub fn eval_affine_grid_with(grid: &SignatureGrid, reps: &[AffineRep], semantics: EdgeSemantics) -> Result<Scalar> {
    check_rep_count(grid, reps.len())?;
    let ports = port_variables(grid, semantics)?;
    for (v, rep) in reps.iter().enumerate() {
        check_reconstruct(grid, v, rep.reconstruct())?;
    }
    let mut sys = QuadraticSystem::new(grid.edges.len());
    for (v, rep) in reps.iter().enumerate() {
        if rep.lambda.is_zero() {
            return Ok(Scalar::zero());
        }
        sys.scale(&rep.lambda);
        let n = rep.arity();
        let pv = &ports[v];
        for (mask, rhs) in rep.space.constraints() {
            let mut vars = Vec::new();
            let mut target = rhs == 1;
            for (k, &(var, flip)) in pv.iter().enumerate().skip(1) {
                if mask & crate::signature::var_mask(n, k) != 0 {
                    vars.push(var);
                    target ^= flip;
                }
            }
            sys.add_constraint(&vars, target);
        }
        sys.add_constant(rep.q_const);
        for k in 1..=n {
            let a = rep.q_linear[k - 1];
            let (var, flip) = pv[k];
            // a·(1 − y) = a − a·y.
            if flip {
                sys.add_constant(a);
                sys.add_linear(var, (4 - a) % 4);
            } else {
                sys.add_linear(var, a);
            }
        }
        for &(j, k) in &rep.q_cross {
            let (u, fu) = pv[j];
            let (w, fw) = pv[k];
            // 2(y_u ⊕ f_u)(y_w ⊕ f_w) ≡ 2 y_u y_w + 2 f_w y_u + 2 f_u y_w + 2 f_u f_w.
            sys.add_cross(u, w);
            if fw {
                sys.add_linear(u, 2);
            }
            if fu {
                sys.add_linear(w, 2);
            }
            if fu && fw {
                sys.add_constant(2);
            }
        }
    }
    Ok(sys.sum())
}

/// Value of a closed EO grid whose labels are all of product type.
pub fn eval_product_grid(grid: &SignatureGrid, reps: &[ProductRep]) -> Result<Scalar> {
    eval_product_grid_with(grid, reps, EdgeSemantics::Disequality)
}

/// Propagate every equality and disequality factor through a parity
/// union-find over the edge variables, accumulating unary weights per class.
pub fn eval_product_grid_with(grid: &SignatureGrid, reps: &[ProductRep], semantics: EdgeSemantics) -> Result<Scalar> {
    check_rep_count(grid, reps.len())?;
    let ports = port_variables(grid, semantics)?;
    for (v, rep) in reps.iter().enumerate() {
        if rep.arity != grid.label(v)?.arity() {
            return Err(Error::Precondition(format!("representation for vertex {v} has the wrong arity")));
        }
        check_reconstruct(grid, v, rep.reconstruct())?;
    }
    let mut uf = ParityUnionFind::new(grid.edges.len());
    for (v, rep) in reps.iter().enumerate() {
        let pv = &ports[v];
        for fac in &rep.factors {
            match fac {
                ProductFactor::Unary { port, w0, w1 } => {
                    let (var, flip) = pv[*port];
                    if flip {
                        uf.weigh(var, w1, w0);
                    } else {
                        uf.weigh(var, w0, w1);
                    }
                }
                ProductFactor::Equality { a, b } | ProductFactor::Disequality { a, b } => {
                    let (x, fx) = pv[*a];
                    let (y, fy) = pv[*b];
                    let d = matches!(fac, ProductFactor::Disequality { .. }) as u8;
                    uf.union(x, y, d ^ fx as u8 ^ fy as u8);
                }
            }
        }
        if uf.has_contradiction() {
            return Ok(Scalar::zero());
        }
    }
    Ok(uf.total())
}
