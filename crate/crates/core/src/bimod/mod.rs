//! Bimodules over a single algebra, realized as one vector space with
//! commuting left and right actions of the generators.

mod complex;
mod induce;
mod map;
pub mod tensor;

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::exactla::{Field, LinAlgError, Matrix};
use crate::qalg::{Algebra, AlgebraMap, Elem, Path, QalgError};
use crate::rep::{Module, RepError, Side};

pub use complex::{BimoduleComplex, LinearComplex, ModuleComplex};
pub use induce::{induce, is_relatively_projective, Induced};
pub use map::{make_bimodule_map, BimoduleHom, ElementSpec};
pub use tensor::{tensor_dim_by_span, BalancedTensor, FactorAction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BimodError {
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid bimodule: {0}")]
    Invalid(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("generators do not generate the source bimodule")]
    NotGenerating,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a complex: {0}")]
    NotComplex(String),
    #[error("{0}")]
    Element(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Qalg(#[from] QalgError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// How elements of a bimodule are written down.
#[derive(Clone)]
pub enum Elements {
    /// The space is the algebra itself (possibly with twisted actions).
    Algebra,
    /// A balanced tensor of two factors whose spaces are the algebra.
    Tensor(Arc<TensorData>),
    /// Only coordinate vectors.
    Opaque,
}

/// The tensor engine behind a tensor bimodule, with the idempotent actions
/// needed to form pure tensors.
pub struct TensorData {
    pub tensor: BalancedTensor,
    pub x_idempotents: Vec<Matrix>,
    pub y_idempotents: Vec<Matrix>,
}

impl TensorData {
    /// Class of `x ⊗ y` for algebra elements `x`, `y`.
    pub fn pure(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.tensor.pure(x, y, &self.x_idempotents, &self.y_idempotents)
    }
}

#[derive(Clone)]
pub struct Bimodule {
    name: String,
    alg: Arc<Algebra>,
    dim: usize,
    /// Left and right actions of each vertex, then each arrow.
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    elements: Elements,
    left_basis: OnceLock<Vec<Matrix>>,
    right_basis: OnceLock<Vec<Matrix>>,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bimodule {} of dim {} over {}", self.name, self.dim, self.alg.name())
    }
}

fn generator_ops(alg: &Algebra, action: impl Fn(&Elem) -> Matrix) -> Vec<Matrix> {
    let nv = alg.num_vertices();
    let na = alg.quiver().arrows().len();
    (0..nv).map(|v| action(&alg.idempotent(v))).chain((0..na).map(|a| action(&alg.arrow(a)))).collect()
}

impl Bimodule {
    /// Validates relations on both sides, units and commutation.
    pub fn new(
        name: &str,
        alg: Arc<Algebra>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
        elements: Elements,
    ) -> Result<Bimodule, BimodError> {
        let nv = alg.num_vertices();
        let ngen = nv + alg.quiver().arrows().len();
        if left.len() != ngen || right.len() != ngen {
            return Err(BimodError::Invalid("wrong number of generator actions".into()));
        }
        if left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(BimodError::Invalid("action matrices have the wrong shape".into()));
        }
        for (l, lm) in left.iter().enumerate() {
            for (r, rm) in right.iter().enumerate() {
                if lm.mul(rm) != rm.mul(lm) {
                    return Err(BimodError::Invalid(format!(
                        "left action of {} does not commute with right action of {}",
                        gen_name(&alg, l),
                        gen_name(&alg, r)
                    )));
                }
            }
        }
        let b = Bimodule {
            name: name.to_string(),
            alg,
            dim,
            left,
            right,
            elements,
            left_basis: OnceLock::new(),
            right_basis: OnceLock::new(),
        };
        b.side_module(Side::Left)?;
        b.side_module(Side::Right)?;
        Ok(b)
    }

    /// `E` with actions twisted by optional automorphisms on each side:
    /// `x·u·y = σ(x) u τ(y)`.
    pub fn twisted_regular(
        alg: Arc<Algebra>,
        left_twist: Option<&AlgebraMap>,
        right_twist: Option<&AlgebraMap>,
    ) -> Result<Bimodule, BimodError> {
        for t in [left_twist, right_twist].into_iter().flatten() {
            if !Arc::ptr_eq(t.src(), &alg) || !Arc::ptr_eq(t.dst(), &alg) {
                return Err(BimodError::AlgebraMismatch);
            }
        }
        let tw = |t: Option<&AlgebraMap>, x: &Elem| t.map_or_else(|| x.clone(), |s| s.apply(x));
        let left = generator_ops(&alg, |x| alg.left_mul_matrix(&tw(left_twist, x)));
        let right = generator_ops(&alg, |x| alg.right_mul_matrix(&tw(right_twist, x)));
        let mut name = alg.name().to_string();
        if let Some(s) = left_twist {
            name = format!("{}{}", s.name(), name);
        }
        if let Some(s) = right_twist {
            name = format!("{}_{}", name, s.name());
        }
        Bimodule::new(&name, alg.clone(), alg.dim(), left, right, Elements::Algebra)
    }

    pub fn regular(alg: Arc<Algebra>) -> Bimodule {
        Self::twisted_regular(alg, None, None).expect("regular bimodule")
    }

    /// `X ⊗_B Y` for `B ⊆ E` given by `embedding`, balanced through an
    /// optional automorphism `twist` of `B`: `x·b ⊗ y = x ⊗ τ(b)·y`.
    pub fn tensor(
        x: &Bimodule,
        embedding: &AlgebraMap,
        y: &Bimodule,
        twist: Option<&AlgebraMap>,
    ) -> Result<Bimodule, BimodError> {
        let alg = x.alg.clone();
        if !Arc::ptr_eq(&y.alg, &alg) || !Arc::ptr_eq(embedding.dst(), &alg) {
            return Err(BimodError::AlgebraMismatch);
        }
        let b = embedding.src();
        if let Some(t) = twist {
            if !Arc::ptr_eq(t.src(), b) || !Arc::ptr_eq(t.dst(), b) {
                return Err(BimodError::AlgebraMismatch);
            }
        }
        let tw = |e: &Elem| -> Elem { embedding.apply(&twist.map_or_else(|| e.clone(), |t| t.apply(e))) };
        let nbv = b.num_vertices();
        let nba = b.quiver().arrows().len();
        let x_idem: Vec<Matrix> = (0..nbv).map(|w| x.right_action(embedding.vertex_image(w))).collect();
        let x_arr: Vec<Matrix> = (0..nba).map(|a| x.right_action(embedding.arrow_image(a))).collect();
        let y_idem: Vec<Matrix> = (0..nbv).map(|w| y.left_action(&tw(&b.idempotent(w)))).collect();
        let y_arr: Vec<Matrix> = (0..nba).map(|a| y.left_action(&tw(&b.arrow(a)))).collect();
        let arrows: Vec<(usize, usize)> = b.quiver().arrows().iter().map(|a| (a.source, a.target)).collect();
        let nv = alg.num_vertices();
        let t = BalancedTensor::new(
            alg.field(),
            &FactorAction { dim: x.dim, idempotents: &x_idem, arrows: &x_arr },
            &FactorAction { dim: y.dim, idempotents: &y_idem, arrows: &y_arr },
            &arrows,
            &x.left[..nv],
            &y.right[..nv],
        );
        let left: Vec<Matrix> = x.left.iter().map(|op| t.induced(&t, Some(op), None)).collect();
        let right: Vec<Matrix> = y.right.iter().map(|op| t.induced(&t, None, Some(op))).collect();
        let twist_name = twist.map_or(String::new(), |t| t.name().to_string());
        let name = format!("{} (x)_{}{} {}", x.name, twist_name, b.name(), y.name);
        let dim = t.dim();
        let elements = match (&x.elements, &y.elements) {
            (Elements::Algebra, Elements::Algebra) => {
                Elements::Tensor(Arc::new(TensorData { tensor: t, x_idempotents: x_idem, y_idempotents: y_idem }))
            }
            _ => Elements::Opaque,
        };
        Bimodule::new(&name, alg, dim, left, right, elements)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &Elements {
        &self.elements
    }

    /// Left actions of the vertices followed by the arrows.
    pub fn left_generators(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_generators(&self) -> &[Matrix] {
        &self.right
    }

    fn path_op(&self, p: &Path, side: Side) -> Matrix {
        let nv = self.alg.num_vertices();
        match side {
            Side::Left => {
                let mut m = self.left[p.source].clone();
                for &a in &p.arrows {
                    m = self.left[nv + a].mul(&m);
                }
                m
            }
            Side::Right => {
                let mut m = self.right[p.target].clone();
                for &a in p.arrows.iter().rev() {
                    m = self.right[nv + a].mul(&m);
                }
                m
            }
        }
    }

    fn basis_ops(&self, side: Side) -> &[Matrix] {
        let cell = match side {
            Side::Left => &self.left_basis,
            Side::Right => &self.right_basis,
        };
        cell.get_or_init(|| self.alg.basis().iter().map(|p| self.path_op(p, side)).collect())
    }

    fn action(&self, x: &[u32], side: Side) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.basis_ops(side)[i]);
            }
        }
        m
    }

    /// Operator `u ↦ x·u`.
    pub fn left_action(&self, x: &[u32]) -> Matrix {
        self.action(x, Side::Left)
    }

    /// Operator `u ↦ u·x`.
    pub fn right_action(&self, x: &[u32]) -> Matrix {
        self.action(x, Side::Right)
    }

    /// The one-sided module obtained by forgetting the other action, and the
    /// change of basis from the module basis to bimodule coordinates.
    pub fn side_module(&self, side: Side) -> Result<(Module, Matrix), BimodError> {
        let nv = self.alg.num_vertices();
        let ops = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        let (m, change) = Module::from_operators(self.alg.clone(), side, self.dim, &ops[..nv], &ops[nv..])?;
        if m.dim() != self.dim {
            return Err(BimodError::Invalid(format!("the identity does not act as the identity on the {side}")));
        }
        Ok((m, change))
    }

    /// Restriction of one side to a subalgebra.
    pub fn restrict(&self, side: Side, embedding: &AlgebraMap) -> Result<Module, BimodError> {
        let (m, _) = self.side_module(side)?;
        Ok(m.restrict(embedding)?)
    }

    /// `self ⊗_E M` for a left module `M`, with the change of basis from
    /// module coordinates to tensor coordinates.
    pub fn tensor_left_module(&self, m: &Module) -> Result<(Module, BalancedTensor, Matrix), BimodError> {
        if !Arc::ptr_eq(m.algebra(), &self.alg) {
            return Err(BimodError::AlgebraMismatch);
        }
        if m.side() != Side::Left {
            return Err(BimodError::Rep(RepError::SideMismatch(Side::Left)));
        }
        let nv = self.alg.num_vertices();
        let m_idem: Vec<Matrix> = (0..nv).map(|v| m.vertex_projection(v)).collect();
        let arrows: Vec<(usize, usize)> = self.alg.quiver().arrows().iter().map(|a| (a.source, a.target)).collect();
        let t = BalancedTensor::new(
            self.field(),
            &FactorAction { dim: self.dim, idempotents: &self.right[..nv], arrows: &self.right[nv..] },
            &FactorAction { dim: m.dim(), idempotents: &m_idem, arrows: m.arrow_actions() },
            &arrows,
            &self.left[..nv],
            &[],
        );
        let ops: Vec<Matrix> = self.left.iter().map(|op| t.induced(&t, Some(op), None)).collect();
        let (module, change) = Module::from_operators(self.alg.clone(), Side::Left, t.dim(), &ops[..nv], &ops[nv..])?;
        Ok((module, t, change))
    }

    /// `N ⊗_E self` for a right module `N`.
    pub fn tensor_right_module(&self, n: &Module) -> Result<(Module, BalancedTensor, Matrix), BimodError> {
        if !Arc::ptr_eq(n.algebra(), &self.alg) {
            return Err(BimodError::AlgebraMismatch);
        }
        if n.side() != Side::Right {
            return Err(BimodError::Rep(RepError::SideMismatch(Side::Right)));
        }
        let nv = self.alg.num_vertices();
        let n_idem: Vec<Matrix> = (0..nv).map(|v| n.vertex_projection(v)).collect();
        let arrows: Vec<(usize, usize)> = self.alg.quiver().arrows().iter().map(|a| (a.source, a.target)).collect();
        let t = BalancedTensor::new(
            self.field(),
            &FactorAction { dim: n.dim(), idempotents: &n_idem, arrows: n.arrow_actions() },
            &FactorAction { dim: self.dim, idempotents: &self.left[..nv], arrows: &self.left[nv..] },
            &arrows,
            &[],
            &self.right[..nv],
        );
        let ops: Vec<Matrix> = self.right.iter().map(|op| t.induced(&t, None, Some(op))).collect();
        let (module, change) = Module::from_operators(self.alg.clone(), Side::Right, t.dim(), &ops[..nv], &ops[nv..])?;
        Ok((module, t, change))
    }

    /// Dimension of `e_v · self · e_w` for every pair of vertices.
    pub fn component_dims(&self) -> Vec<Vec<usize>> {
        let nv = self.alg.num_vertices();
        (0..nv)
            .map(|v| (0..nv).map(|w| self.left[v].mul(&self.right[w]).rank()).collect())
            .collect()
    }

    /// Elements `z` with `x·z = z·x` for all generators `x`.
    pub fn central_elements(&self) -> Vec<Vec<u32>> {
        let mut stacked: Option<Matrix> = None;
        for (l, r) in self.left.iter().zip(&self.right) {
            let d = l.sub(r);
            stacked = Some(match stacked {
                None => d,
                Some(s) => s.vstack(&d),
            });
        }
        stacked.map_or_else(Vec::new, |s| s.nullspace())
    }

    /// Renders a coordinate vector, as a sum of pure tensors when possible.
    pub fn format_element(&self, v: &[u32]) -> String {
        let f = self.field();
        let alg = &self.alg;
        let mut terms: Vec<(i64, String)> = Vec::new();
        match &self.elements {
            Elements::Algebra => return alg.format_elem(v),
            Elements::Tensor(t) => {
                for (k, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (_, x, y) = t.tensor.basis_pair(k);
                    terms.push((f.signed(c), format!("({}) (x) ({})", alg.format_elem(x), alg.format_elem(y))));
                }
            }
            Elements::Opaque => {
                for (k, &c) in v.iter().enumerate() {
                    if c != 0 {
                        terms.push((f.signed(c), format!("b{k}")));
                    }
                }
            }
        }
        join_terms(&terms)
    }
}

pub(crate) fn join_terms(terms: &[(i64, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, t)) in terms.iter().enumerate() {
        let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
        if i == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag != 1 {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(t);
    }
    out
}

fn gen_name(alg: &Algebra, g: usize) -> String {
    let nv = alg.num_vertices();
    if g < nv {
        alg.quiver().idempotent_name(g)
    } else {
        alg.quiver().arrows()[g - nv].name.clone()
    }
}

#[cfg(test)]
mod tests;
