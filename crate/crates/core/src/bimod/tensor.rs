//! Balanced tensor products `X ⊗_B Y` of vector spaces carrying a right
//! action of `B` on `X` and a left action on `Y`.
//!
//! The space is `⊕_w X e_w ⊗ e_w Y` modulo `x·b ⊗ y - x ⊗ b·y` for the
//! arrows `b` of `B`; products of arrows follow from these. The quotient basis
//! is the set of non-pivot coordinates after row reduction of the relations.

use crate::exactla::{Echelon, Field, Matrix, SpanCoords};

/// Operators for the `B`-action on one factor: one matrix per vertex
/// idempotent of `B` and one per arrow, with the arrow endpoints.
pub struct FactorAction<'a> {
    pub dim: usize,
    pub idempotents: &'a [Matrix],
    pub arrows: &'a [Matrix],
}

struct Block {
    x_basis: Vec<Vec<u32>>,
    y_basis: Vec<Vec<u32>>,
    x_coords: SpanCoords,
    y_coords: SpanCoords,
    offset: usize,
}

pub struct BalancedTensor {
    field: Field,
    x_dim: usize,
    y_dim: usize,
    blocks: Vec<Block>,
    ambient: usize,
    /// `dim × ambient`: canonical representative of each ambient coordinate.
    normal: Matrix,
    /// Ambient coordinate of each quotient basis vector.
    free: Vec<usize>,
}

/// Basis of the image of `e`, refined along the given projections so each
/// vector lies in a single summand when the projections commute with `e`.
fn graded_image(field: Field, n: usize, e: &Matrix, grading: &[Matrix]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut ech = Echelon::new(field, n);
    let parts: Vec<Matrix> = if grading.is_empty() { vec![e.clone()] } else { grading.iter().map(|g| g.mul(e)).collect() };
    for p in &parts {
        for c in 0..n {
            let v = p.column(c);
            if ech.insert(&v) {
                out.push(v);
            }
        }
    }
    out
}

impl BalancedTensor {
    /// `b_arrows[k] = (source, target)` of the `k`-th arrow of `B`, so the
    /// arrow sends `e_source` components of `Y` to `e_target` components.
    /// `x_grading` and `y_grading` are optional projections (such as the
    /// outer idempotent actions) used to pick homogeneous bases.
    pub fn new(
        field: Field,
        x: &FactorAction,
        y: &FactorAction,
        b_arrows: &[(usize, usize)],
        x_grading: &[Matrix],
        y_grading: &[Matrix],
    ) -> BalancedTensor {
        let nw = x.idempotents.len();
        let mut blocks = Vec::with_capacity(nw);
        let mut ambient = 0;
        for w in 0..nw {
            let x_basis = graded_image(field, x.dim, &x.idempotents[w], x_grading);
            let y_basis = graded_image(field, y.dim, &y.idempotents[w], y_grading);
            let x_coords = SpanCoords::new(field, x.dim, &x_basis);
            let y_coords = SpanCoords::new(field, y.dim, &y_basis);
            let size = x_basis.len() * y_basis.len();
            blocks.push(Block { x_basis, y_basis, x_coords, y_coords, offset: ambient });
            ambient += size;
        }
        let mut t = BalancedTensor {
            field,
            x_dim: x.dim,
            y_dim: y.dim,
            blocks,
            ambient,
            normal: Matrix::zeros(field, 0, ambient),
            free: Vec::new(),
        };
        let mut rels: Vec<Vec<u32>> = Vec::new();
        for (k, &(s, tgt)) in b_arrows.iter().enumerate() {
            let (bx, by) = (&x.arrows[k], &y.arrows[k]);
            for xv in &t.blocks[tgt].x_basis {
                let xb = bx.mul_vec(xv);
                for yv in &t.blocks[s].y_basis {
                    let by_y = by.mul_vec(yv);
                    let mut r = t.ambient_pure_in(s, &xb, yv);
                    let other = t.ambient_pure_in(tgt, xv, &by_y);
                    field.axpy(&mut r, field.neg(1), &other);
                    if r.iter().any(|&c| c != 0) {
                        rels.push(r);
                    }
                }
            }
        }
        let (normal, free) = if rels.is_empty() {
            (Matrix::identity(field, ambient), (0..ambient).collect())
        } else {
            let rr = Matrix::from_rows(field, ambient, &rels).rref();
            let pivots = rr.pivots.clone();
            let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
            let mut normal = Matrix::zeros(field, free.len(), ambient);
            for (k, &c) in free.iter().enumerate() {
                normal.set(k, c, 1);
            }
            for (r, &pc) in pivots.iter().enumerate() {
                for (k, &c) in free.iter().enumerate() {
                    let v = rr.reduced.get(r, c);
                    if v != 0 {
                        normal.set(k, pc, field.neg(v));
                    }
                }
            }
            (normal, free)
        };
        t.normal = normal;
        t.free = free;
        t
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// `x ⊗ y` in block `w`, assuming `x ∈ X e_w` and `y ∈ e_w Y`.
    fn ambient_pure_in(&self, w: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let b = &self.blocks[w];
        let cx = b.x_coords.coords(x).expect("vector lies in X e_w");
        let cy = b.y_coords.coords(y).expect("vector lies in e_w Y");
        let ny = cy.len();
        let mut out = vec![0; self.ambient];
        for (i, &a) in cx.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &c) in cy.iter().enumerate() {
                if c != 0 {
                    out[b.offset + i * ny + j] = f.mul(a, c);
                }
            }
        }
        out
    }

    /// Class of `x ⊗ y` for arbitrary `x`, `y` given the idempotent actions.
    pub fn pure(&self, x: &[u32], y: &[u32], x_idem: &[Matrix], y_idem: &[Matrix]) -> Vec<u32> {
        let f = self.field;
        let mut amb = vec![0; self.ambient];
        for w in 0..self.blocks.len() {
            let xw = x_idem[w].mul_vec(x);
            let yw = y_idem[w].mul_vec(y);
            if xw.iter().all(|&c| c == 0) || yw.iter().all(|&c| c == 0) {
                continue;
            }
            let v = self.ambient_pure_in(w, &xw, &yw);
            f.axpy(&mut amb, 1, &v);
        }
        self.normal.mul_vec(&amb)
    }

    /// The pair `(w, x, y)` whose tensor is the `k`-th basis vector.
    pub fn basis_pair(&self, k: usize) -> (usize, &[u32], &[u32]) {
        let c = self.free[k];
        let w = self.blocks.iter().rposition(|b| b.offset <= c).expect("coordinate in a block");
        let b = &self.blocks[w];
        let ny = b.y_basis.len();
        let r = c - b.offset;
        (w, &b.x_basis[r / ny], &b.y_basis[r % ny])
    }

    /// Matrix of `F ⊗ G` into `target`, where `F: X → X'` and `G: Y → Y'`
    /// are compatible with the `B`-actions. `None` stands for the identity.
    pub fn induced(&self, target: &BalancedTensor, f_x: Option<&Matrix>, g_y: Option<&Matrix>) -> Matrix {
        let mut m = Matrix::zeros(self.field, target.dim(), self.dim());
        for k in 0..self.dim() {
            let (w, x, y) = self.basis_pair(k);
            let fx = f_x.map_or_else(|| x.to_vec(), |f| f.mul_vec(x));
            let gy = g_y.map_or_else(|| y.to_vec(), |g| g.mul_vec(y));
            let col = target.class_in_block(w, &fx, &gy);
            for (r, &c) in col.iter().enumerate() {
                m.set(r, k, c);
            }
        }
        m
    }

    /// Class of `x ⊗ y` with `x ∈ X e_w`, `y ∈ e_w Y`.
    pub fn class_in_block(&self, w: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
        if x.iter().all(|&c| c == 0) || y.iter().all(|&c| c == 0) {
            return vec![0; self.dim()];
        }
        self.normal.mul_vec(&self.ambient_pure_in(w, x, y))
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }

    pub fn y_dim(&self) -> usize {
        self.y_dim
    }
}

/// Span-based oracle: the dimension of `X ⊗_B Y` computed as the quotient
/// of the full `X ⊗_k Y` by all `x·b ⊗ y - x ⊗ b·y` for `b` in a spanning set.
pub fn tensor_dim_by_span(field: Field, x_ops: &[Matrix], y_ops: &[Matrix], x_dim: usize, y_dim: usize) -> usize {
    let n = x_dim * y_dim;
    let mut ech = Echelon::new(field, n);
    for (bx, by) in x_ops.iter().zip(y_ops) {
        for i in 0..x_dim {
            let xb = bx.column(i);
            for j in 0..y_dim {
                let byj = by.column(j);
                let mut v = vec![0u32; n];
                for (a, &c) in xb.iter().enumerate() {
                    if c != 0 {
                        v[a * y_dim + j] = field.add(v[a * y_dim + j], c);
                    }
                }
                for (b, &c) in byj.iter().enumerate() {
                    if c != 0 {
                        v[i * y_dim + b] = field.sub(v[i * y_dim + b], c);
                    }
                }
                ech.insert(&v);
            }
        }
    }
    n - ech.dim()
}
