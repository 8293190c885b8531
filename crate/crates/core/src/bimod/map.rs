use crate::exactla::{is_zero_vec, Matrix};
use crate::qalg::expr::TensorExpr;
use crate::qalg::{Expr, PathExpr};

use super::{join_terms, BimodError, Bimodule, Elements};

/// A map of bimodules, stored as a `dim(dst) × dim(src)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleHom {
    pub name: String,
    pub matrix: Matrix,
}

impl BimoduleHom {
    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BimoduleHom) -> Result<BimoduleHom, BimodError> {
        let m = self.matrix.try_mul(&inner.matrix).map_err(|_| {
            BimodError::Shape(format!("{} cannot follow {}", self.name, inner.name))
        })?;
        Ok(BimoduleHom { name: format!("{}*{}", self.name, inner.name), matrix: m })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Checks that the matrix commutes with both actions.
    pub fn is_bimodule_map(&self, src: &Bimodule, dst: &Bimodule) -> bool {
        self.matrix.rows() == dst.dim()
            && self.matrix.cols() == src.dim()
            && src.left.iter().zip(&dst.left).all(|(s, d)| d.mul(&self.matrix) == self.matrix.mul(s))
            && src.right.iter().zip(&dst.right).all(|(s, d)| d.mul(&self.matrix) == self.matrix.mul(s))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }
}

/// An element of a bimodule, written as coordinates, an algebra expression
/// or a sum of pure tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Vector(Vec<u32>),
    Algebra(Expr),
    Tensor(TensorExpr),
}

impl Bimodule {
    /// Evaluates an element description in this bimodule.
    pub fn element(&self, spec: &ElementSpec) -> Result<Vec<u32>, BimodError> {
        let alg = &self.alg;
        let f = self.field();
        match (spec, &self.elements) {
            (ElementSpec::Vector(v), _) if v.len() == self.dim => Ok(v.clone()),
            (ElementSpec::Vector(_), _) => Err(BimodError::Element("coordinate vector has the wrong length".into())),
            (ElementSpec::Algebra(e), Elements::Algebra) => Ok(alg.eval_expr(e)?),
            (ElementSpec::Tensor(t), Elements::Tensor(data)) => {
                let mut out = vec![0; self.dim];
                for term in &t.terms {
                    let x = alg.eval(&PathExpr::from_expr(alg.quiver(), f, &term.left)?);
                    let y = alg.eval(&PathExpr::from_expr(alg.quiver(), f, &term.right)?);
                    let v = data.pure(&x, &y);
                    f.axpy(&mut out, f.from_i64(term.coeff), &v);
                }
                Ok(out)
            }
            (ElementSpec::Algebra(e), _) => {
                Err(BimodError::Element(format!("'{e}' is not a tensor but {} is a tensor product", self.name)))
            }
            (ElementSpec::Tensor(t), _) => {
                Err(BimodError::Element(format!("'{t}' is a tensor but {} is not a tensor product", self.name)))
            }
        }
    }
}

/// Extends an assignment on generators to a bimodule map.
///
/// Each pair is split into its components `e_v·g·e_w`. The free bimodule on
/// those components maps onto `src`; the assignment descends exactly when it
/// kills the kernel of that presentation. On failure the error names a
/// violated relation among the generators.
pub fn make_bimodule_map(
    name: &str,
    src: &Bimodule,
    dst: &Bimodule,
    assignments: &[(Vec<u32>, Vec<u32>)],
) -> Result<BimoduleHom, BimodError> {
    if !std::sync::Arc::ptr_eq(&src.alg, &dst.alg) {
        return Err(BimodError::AlgebraMismatch);
    }
    let alg = &src.alg;
    let f = alg.field();
    let nv = alg.num_vertices();
    let mut gens: Vec<(usize, usize, Vec<u32>, Vec<u32>, usize)> = Vec::new();
    for (k, (g, v)) in assignments.iter().enumerate() {
        if g.len() != src.dim || v.len() != dst.dim {
            return Err(BimodError::Shape(format!("assignment {} has the wrong length", k + 1)));
        }
        for l in 0..nv {
            for r in 0..nv {
                let gl = src.left[l].mul_vec(&src.right[r].mul_vec(g));
                let vl = dst.left[l].mul_vec(&dst.right[r].mul_vec(v));
                if is_zero_vec(&gl) {
                    if !is_zero_vec(&vl) {
                        return Err(BimodError::NotWellDefined(format!(
                            "assignment {}: {}·g·{} vanishes in the source but not its image",
                            k + 1,
                            alg.quiver().idempotent_name(l),
                            alg.quiver().idempotent_name(r)
                        )));
                    }
                    continue;
                }
                gens.push((l, r, gl, vl, k));
            }
        }
    }
    // columns x·g·y for basis paths x ∈ E e_l and y ∈ e_r E
    let mut s_cols: Vec<Vec<u32>> = Vec::new();
    let mut t_cols: Vec<Vec<u32>> = Vec::new();
    let mut labels: Vec<(usize, usize, usize)> = Vec::new();
    let basis = alg.basis();
    for (gi, (l, r, g, v, _)) in gens.iter().enumerate() {
        let xs: Vec<usize> = (0..alg.dim()).filter(|&i| basis[i].source == *l).collect();
        let ys: Vec<usize> = (0..alg.dim()).filter(|&i| basis[i].target == *r).collect();
        for &yi in &ys {
            let gy = src.basis_ops(crate::rep::Side::Right)[yi].mul_vec(g);
            let vy = dst.basis_ops(crate::rep::Side::Right)[yi].mul_vec(v);
            for &xi in &xs {
                s_cols.push(src.basis_ops(crate::rep::Side::Left)[xi].mul_vec(&gy));
                t_cols.push(dst.basis_ops(crate::rep::Side::Left)[xi].mul_vec(&vy));
                labels.push((gi, xi, yi));
            }
        }
    }
    let s = Matrix::from_columns(f, src.dim, &s_cols);
    let t = Matrix::from_columns(f, dst.dim, &t_cols);
    let rr = s.rref();
    if rr.rank != src.dim {
        return Err(BimodError::NotGenerating);
    }
    let st = s.vstack(&t);
    if st.rank() != rr.rank {
        let kernel = s.nullspace();
        let bad = kernel.iter().find(|k| !is_zero_vec(&t.mul_vec(k))).expect("kernel vector not killed");
        let q = alg.quiver();
        let terms: Vec<(i64, String)> = bad
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let (gi, xi, yi) = labels[i];
                let (_, _, _, _, k) = gens[gi];
                (f.signed(c), format!("{}·g{}·{}", q.path_name(&basis[xi]), k + 1, q.path_name(&basis[yi])))
            })
            .collect();
        return Err(BimodError::NotWellDefined(format!("relation {} = 0 is not preserved", join_terms(&terms))));
    }
    let sel = s.select_columns(&rr.pivots);
    let inv = sel.inverse().expect("pivot columns form a basis");
    let matrix = t.select_columns(&rr.pivots).mul(&inv);
    let hom = BimoduleHom { name: name.to_string(), matrix };
    Ok(hom)
}
