use std::sync::Arc;

use crate::exactla::{Echelon, Matrix};
use crate::qalg::AlgebraMap;
use crate::rep::{hom_space, Module, RepError, Side};

use super::{BalancedTensor, BimodError, Bimodule, FactorAction};

/// An induced module `E ⊗_B N` (or `N ⊗_B E`) together with the
/// multiplication map onto `N` when `N` is an `E`-module restricted to `B`.
pub struct Induced {
    pub module: Module,
    pub tensor: BalancedTensor,
    /// Module coordinates to tensor coordinates.
    pub change: Matrix,
}

/// `E ⊗_B N` for a left `B`-module `N`, or `N ⊗_B E` for a right one, where
/// `emb: B → E`.
pub fn induce(emb: &AlgebraMap, n: &Module) -> Result<Induced, BimodError> {
    if !Arc::ptr_eq(n.algebra(), emb.src()) {
        return Err(BimodError::AlgebraMismatch);
    }
    let e = emb.dst().clone();
    let b = emb.src();
    let reg = Bimodule::regular(e.clone());
    let nv = e.num_vertices();
    let nbv = b.num_vertices();
    let nba = b.quiver().arrows().len();
    let arrows: Vec<(usize, usize)> = b.quiver().arrows().iter().map(|a| (a.source, a.target)).collect();
    let n_idem: Vec<Matrix> = (0..nbv).map(|w| n.vertex_projection(w)).collect();
    let (t, ops) = match n.side() {
        Side::Left => {
            let idem: Vec<Matrix> = (0..nbv).map(|w| reg.right_action(emb.vertex_image(w))).collect();
            let arr: Vec<Matrix> = (0..nba).map(|a| reg.right_action(emb.arrow_image(a))).collect();
            let t = BalancedTensor::new(
                e.field(),
                &FactorAction { dim: e.dim(), idempotents: &idem, arrows: &arr },
                &FactorAction { dim: n.dim(), idempotents: &n_idem, arrows: n.arrow_actions() },
                &arrows,
                &reg.left_generators()[..nv],
                &[],
            );
            let ops: Vec<Matrix> = reg.left_generators().iter().map(|op| t.induced(&t, Some(op), None)).collect();
            (t, ops)
        }
        Side::Right => {
            let idem: Vec<Matrix> = (0..nbv).map(|w| reg.left_action(emb.vertex_image(w))).collect();
            let arr: Vec<Matrix> = (0..nba).map(|a| reg.left_action(emb.arrow_image(a))).collect();
            let t = BalancedTensor::new(
                e.field(),
                &FactorAction { dim: n.dim(), idempotents: &n_idem, arrows: n.arrow_actions() },
                &FactorAction { dim: e.dim(), idempotents: &idem, arrows: &arr },
                &arrows,
                &[],
                &reg.right_generators()[..nv],
            );
            let ops: Vec<Matrix> = reg.right_generators().iter().map(|op| t.induced(&t, None, Some(op))).collect();
            (t, ops)
        }
    };
    let (module, change) = Module::from_operators(e, n.side(), t.dim(), &ops[..nv], &ops[nv..])?;
    Ok(Induced { module, tensor: t, change })
}

/// Whether `m` is a direct summand of `E ⊗_B m` (resp. `m ⊗_B E`), i.e.
/// relatively `B`-projective.
pub fn is_relatively_projective(emb: &AlgebraMap, m: &Module) -> Result<bool, BimodError> {
    if !Arc::ptr_eq(m.algebra(), emb.dst()) {
        return Err(BimodError::AlgebraMismatch);
    }
    let (res, basis) = m.pullback_with_basis(emb, true)?;
    let ind = induce(emb, &res)?;
    let f = m.field();
    let cols: Vec<Vec<u32>> = (0..ind.tensor.dim())
        .map(|k| {
            let (_, x, y) = ind.tensor.basis_pair(k);
            match m.side() {
                Side::Left => m.act(x, &basis.mul_vec(y)),
                Side::Right => m.act(y, &basis.mul_vec(x)),
            }
        })
        .collect();
    let mult = Matrix::from_columns(f, m.dim(), &cols).mul(&ind.change);
    if !crate::rep::is_module_hom(&ind.module, m, &mult) {
        return Err(BimodError::Rep(RepError::InvalidAction("multiplication is not a module map".into())));
    }
    if mult.rank() < m.dim() {
        return Ok(false);
    }
    // a section s with mult·s = id
    let homs = hom_space(m, &ind.module)?;
    let cols: Vec<Vec<u32>> = homs.iter().map(|h| flatten(&mult.mul(h))).collect();
    if cols.is_empty() {
        return Ok(m.dim() == 0);
    }
    let target = flatten(&Matrix::identity(f, m.dim()));
    Ok(Echelon::from_vectors(f, target.len(), &cols).contains(&target))
}

fn flatten(m: &Matrix) -> Vec<u32> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}
