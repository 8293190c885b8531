//! Finite-dimensional left and right modules over a bound quiver algebra.
//!
//! A module stores one matrix per arrow acting on the whole space; the basis
//! is ordered by vertex, so the component `e_v M` (or `M e_v`) is a
//! contiguous range. Left actions send the source component of an arrow to
//! its target component, right actions go the other way.

mod iso;
mod series;

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::exactla::{is_zero_vec, Echelon, Field, LinAlgError, Matrix, SpanCoords};
use crate::qalg::{Algebra, AlgebraMap, Elem, Path, QalgError};

pub use iso::{is_isomorphic, IsoVerdict};
pub use series::LoewyTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("expected a {0} module")]
    SideMismatch(Side),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("vectors do not span a submodule")]
    NotSubmodule,
    #[error("the identity of the subalgebra does not act as the identity")]
    NotUnital,
    #[error("{0}")]
    Presentation(String),
    #[error(transparent)]
    Qalg(#[from] QalgError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    side: Side,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    arrows: Vec<Matrix>,
    basis_actions: OnceLock<Vec<Matrix>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} module over {} with dims {:?}", self.side, self.alg.name(), self.dims)
    }
}

/// A module map, stored as a `dim(dst) × dim(src)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    pub matrix: Matrix,
}

impl ModuleHom {
    pub fn compose(&self, inner: &ModuleHom) -> ModuleHom {
        ModuleHom { matrix: self.matrix.mul(&inner.matrix) }
    }

    /// Block `dst_v × src_v` at vertex `v`.
    pub fn block(&self, src: &Module, dst: &Module, v: usize) -> Matrix {
        self.matrix.block(dst.offsets[v], dst.dims[v], src.offsets[v], src.dims[v])
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        o.push(acc);
        acc += d;
    }
    o
}

impl Module {
    /// Validates block shapes, relations and nilpotency.
    pub fn new(alg: Arc<Algebra>, side: Side, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Module, RepError> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || arrows.len() != q.arrows().len() {
            return Err(RepError::InvalidAction("wrong number of vertices or arrows".into()));
        }
        let offsets = offsets_of(&dims);
        let n: usize = dims.iter().sum();
        for (a, m) in arrows.iter().enumerate() {
            if m.rows() != n || m.cols() != n || m.field() != alg.field() {
                return Err(RepError::InvalidAction(format!("arrow {} has the wrong shape", q.arrows()[a].name)));
            }
            let ar = &q.arrows()[a];
            let (from, to) = match side {
                Side::Left => (ar.source, ar.target),
                Side::Right => (ar.target, ar.source),
            };
            for r in 0..n {
                for c in 0..n {
                    let inside = (offsets[to]..offsets[to] + dims[to]).contains(&r)
                        && (offsets[from]..offsets[from] + dims[from]).contains(&c);
                    if !inside && m.get(r, c) != 0 {
                        return Err(RepError::InvalidAction(format!(
                            "arrow {} acts outside its endpoint components",
                            ar.name
                        )));
                    }
                }
            }
        }
        let m = Module { alg, side, dims, offsets, arrows, basis_actions: OnceLock::new() };
        m.check_relations()?;
        Ok(m)
    }

    fn check_relations(&self) -> Result<(), RepError> {
        let alg = &self.alg;
        let f = alg.field();
        let n = self.dim();
        for (r, text) in alg.relations().iter().zip(&alg.spec().relations) {
            let mut acc = Matrix::zeros(f, n, n);
            for (p, &c) in &r.terms {
                acc.add_scaled(c, &self.path_action(p));
            }
            if !acc.is_zero() {
                return Err(RepError::InvalidAction(format!("relation {text} does not act as zero")));
            }
        }
        if let Some(len) = alg.spec().vanish_distinct {
            for ps in alg.quiver().paths_below(len + 1).values() {
                for p in ps.iter().filter(|p| p.len() == len && p.source != p.target) {
                    if !self.path_action(p).is_zero() {
                        return Err(RepError::InvalidAction(format!(
                            "path {} does not act as zero",
                            alg.quiver().path_name(p)
                        )));
                    }
                }
            }
        }
        let mut layer = Matrix::identity(f, n);
        for _ in 0..alg.bound() {
            let images: Vec<Matrix> = self.arrows.iter().map(|a| a.mul(&layer)).collect();
            let cols: Vec<Vec<u32>> = images.iter().flat_map(|m| m.columns()).collect();
            let span = Echelon::from_vectors(f, n, cols.iter());
            layer = Matrix::from_columns(f, n, span.basis());
            if span.dim() == 0 {
                return Ok(());
            }
        }
        Err(RepError::InvalidAction("paths of the nilpotency bound do not act as zero".into()))
    }

    pub fn zero(alg: Arc<Algebra>, side: Side) -> Module {
        let nv = alg.num_vertices();
        let na = alg.quiver().arrows().len();
        let f = alg.field();
        Module {
            alg,
            side,
            dims: vec![0; nv],
            offsets: vec![0; nv],
            arrows: vec![Matrix::zeros(f, 0, 0); na],
            basis_actions: OnceLock::new(),
        }
    }

    pub fn simple(alg: Arc<Algebra>, v: usize, side: Side) -> Module {
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let f = alg.field();
        let arrows = vec![Matrix::zeros(f, 1, 1); alg.quiver().arrows().len()];
        Module::new(alg, side, dims, arrows).expect("simple module is valid")
    }

    /// `A e_v` (left) or `e_v A` (right), with basis [`projective_basis_order`].
    pub fn projective(alg: Arc<Algebra>, v: usize, side: Side) -> Module {
        let order = projective_basis_order(&alg, v, side);
        Self::from_regular_subspace(alg, side, order)
    }

    /// The regular module, with basis paths grouped by vertex component.
    pub fn regular(alg: Arc<Algebra>, side: Side) -> Module {
        let mut order: Vec<usize> = (0..alg.dim()).collect();
        order.sort_by_key(|&i| (component_vertex(&alg, i, side), i));
        Self::from_regular_subspace(alg, side, order)
    }

    /// Submodule of the regular module spanned by basis paths, in the given
    /// order, which must group paths by vertex component.
    fn from_regular_subspace(alg: Arc<Algebra>, side: Side, order: Vec<usize>) -> Module {
        let f = alg.field();
        let nv = alg.num_vertices();
        let mut dims = vec![0; nv];
        for &i in &order {
            dims[component_vertex(&alg, i, side)] += 1;
        }
        let pos: std::collections::HashMap<usize, usize> = order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let n = order.len();
        let mut arrows = Vec::new();
        for a in 0..alg.quiver().arrows().len() {
            let x = alg.arrow(a);
            let mut m = Matrix::zeros(f, n, n);
            for (k, &i) in order.iter().enumerate() {
                let prod = match side {
                    Side::Left => alg.mul(&x, &alg.unit(i)),
                    Side::Right => alg.mul(&alg.unit(i), &x),
                };
                for (j, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        m.set(pos[&j], k, c);
                    }
                }
            }
            arrows.push(m);
        }
        Module::new(alg, side, dims, arrows).expect("ideal of the regular module is a module")
    }

    /// Builds a module from operators for every idempotent and arrow on a
    /// space of dimension `n`. The module lives on the image of `Σ e_v`;
    /// returns it with the matrix whose columns are its basis in old coordinates.
    pub fn from_operators(
        alg: Arc<Algebra>,
        side: Side,
        n: usize,
        idempotents: &[Matrix],
        arrows: &[Matrix],
    ) -> Result<(Module, Matrix), RepError> {
        let f = alg.field();
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut dims = Vec::new();
        for e in idempotents {
            let mut ech = Echelon::new(f, n);
            for c in 0..n {
                ech.insert(&e.column(c));
            }
            dims.push(ech.dim());
            basis.extend(ech.basis().iter().cloned());
        }
        let total = basis.len();
        let coords = SpanCoords::new(f, n, &basis);
        let mut mats = Vec::new();
        for op in arrows {
            let mut m = Matrix::zeros(f, total, total);
            for (j, b) in basis.iter().enumerate() {
                let img = op.mul_vec(b);
                let c = coords.coords(&img).ok_or(RepError::NotSubmodule)?;
                for (i, &x) in c.iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            mats.push(m);
        }
        let change = Matrix::from_columns(f, n, &basis);
        Ok((Module::new(alg, side, dims, mats)?, change))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn vertex_range(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v] + self.dims[v]
    }

    /// Vertex of basis vector `i`.
    pub fn vertex_of(&self, i: usize) -> usize {
        (0..self.dims.len()).find(|&v| self.vertex_range(v).contains(&i)).expect("index in range")
    }

    pub fn arrow_action(&self, a: usize) -> &Matrix {
        &self.arrows[a]
    }

    pub fn arrow_actions(&self) -> &[Matrix] {
        &self.arrows
    }

    pub fn vertex_projection(&self, v: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for i in self.vertex_range(v) {
            m.set(i, i, 1);
        }
        m
    }

    /// Action of a path, which may be longer than the bound.
    pub fn path_action(&self, p: &Path) -> Matrix {
        match self.side {
            Side::Left => {
                let mut m = self.vertex_projection(p.source);
                for &a in &p.arrows {
                    m = self.arrows[a].mul(&m);
                }
                m
            }
            Side::Right => {
                let mut m = self.vertex_projection(p.target);
                for &a in p.arrows.iter().rev() {
                    m = self.arrows[a].mul(&m);
                }
                m
            }
        }
    }

    fn basis_actions(&self) -> &[Matrix] {
        self.basis_actions.get_or_init(|| self.alg.basis().iter().map(|p| self.path_action(p)).collect())
    }

    /// Action of an algebra element.
    pub fn action(&self, x: &[u32]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.basis_actions()[i]);
            }
        }
        m
    }

    pub fn act(&self, x: &[u32], v: &[u32]) -> Vec<u32> {
        self.action(x).mul_vec(v)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
    }

    pub fn direct_sum(parts: &[&Module]) -> Result<Module, RepError> {
        let first = parts.first().ok_or_else(|| RepError::InvalidAction("empty direct sum".into()))?;
        let alg = first.alg.clone();
        let side = first.side;
        if parts.iter().any(|m| !Arc::ptr_eq(&m.alg, &alg)) {
            return Err(RepError::AlgebraMismatch);
        }
        if parts.iter().any(|m| m.side != side) {
            return Err(RepError::SideMismatch(side));
        }
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let offsets = offsets_of(&dims);
        let n: usize = dims.iter().sum();
        let f = alg.field();
        // position of part k's vertex-v block inside the sum
        let place = |k: usize, v: usize| offsets[v] + parts[..k].iter().map(|m| m.dims[v]).sum::<usize>();
        let mut arrows = Vec::new();
        for a in 0..alg.quiver().arrows().len() {
            let mut m = Matrix::zeros(f, n, n);
            for (k, part) in parts.iter().enumerate() {
                for v in 0..nv {
                    for w in 0..nv {
                        let blk = part.arrows[a].block(part.offsets[w], part.dims[w], part.offsets[v], part.dims[v]);
                        if !blk.is_zero() {
                            m.set_block(place(k, w), place(k, v), &blk);
                        }
                    }
                }
            }
            arrows.push(m);
        }
        Module::new(alg, side, dims, arrows)
    }

    /// Inclusions of the summands of [`Module::direct_sum`], as matrices.
    pub fn direct_sum_inclusions(parts: &[&Module]) -> Vec<Matrix> {
        let Some(first) = parts.first() else {
            return Vec::new();
        };
        let nv = first.dims.len();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let offsets = offsets_of(&dims);
        let n: usize = dims.iter().sum();
        let f = first.field();
        let mut out = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let mut m = Matrix::zeros(f, n, part.dim());
            for v in 0..nv {
                let base = offsets[v] + parts[..k].iter().map(|p| p.dims[v]).sum::<usize>();
                for i in 0..part.dims[v] {
                    m.set(base + i, part.offsets[v] + i, 1);
                }
            }
            out.push(m);
        }
        out
    }

    /// Splits vectors into vertex components and returns an echelon basis
    /// of the resulting graded subspace, grouped by vertex.
    pub fn graded_basis(&self, vectors: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
        let f = self.field();
        let n = self.dim();
        let mut out = Vec::new();
        for v in 0..self.dims.len() {
            let r = self.vertex_range(v);
            let mut ech = Echelon::new(f, n);
            for x in vectors {
                let mut y = vec![0; n];
                y[r.clone()].copy_from_slice(&x[r.clone()]);
                ech.insert(&y);
            }
            out.push(ech.basis().to_vec());
        }
        out
    }

    /// The submodule spanned by `vectors`, which must be closed under the
    /// action and under the vertex projections. Returns it with its inclusion.
    pub fn submodule(&self, vectors: &[Vec<u32>]) -> Result<(Module, Matrix), RepError> {
        let f = self.field();
        let n = self.dim();
        let graded = self.graded_basis(vectors);
        let dims: Vec<usize> = graded.iter().map(|b| b.len()).collect();
        let basis: Vec<Vec<u32>> = graded.into_iter().flatten().collect();
        let coords = SpanCoords::new(f, n, &basis);
        let k = basis.len();
        let mut arrows = Vec::new();
        for a in &self.arrows {
            let mut m = Matrix::zeros(f, k, k);
            for (j, b) in basis.iter().enumerate() {
                let c = coords.coords(&a.mul_vec(b)).ok_or(RepError::NotSubmodule)?;
                for (i, &x) in c.iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            arrows.push(m);
        }
        let incl = Matrix::from_columns(f, n, &basis);
        Ok((Module::new(self.alg.clone(), self.side, dims, arrows)?, incl))
    }

    /// The submodule generated by `vectors` (closure under the action).
    pub fn generated_submodule(&self, vectors: &[Vec<u32>]) -> Result<(Module, Matrix), RepError> {
        let f = self.field();
        let n = self.dim();
        let mut ech = Echelon::new(f, n);
        let mut queue: Vec<Vec<u32>> = self.graded_basis(vectors).into_iter().flatten().collect();
        while let Some(v) = queue.pop() {
            if ech.insert(&v) {
                for a in &self.arrows {
                    let w = a.mul_vec(&v);
                    if !is_zero_vec(&w) {
                        queue.push(w);
                    }
                }
            }
        }
        self.submodule(ech.basis())
    }

    /// `self / span(vectors)` with the projection.
    pub fn quotient(&self, vectors: &[Vec<u32>]) -> Result<(Module, Matrix), RepError> {
        let f = self.field();
        let n = self.dim();
        let graded = self.graded_basis(vectors);
        let sub: Vec<Vec<u32>> = graded.iter().flatten().cloned().collect();
        let sub_ech = Echelon::from_vectors(f, n, sub.iter());
        // complement spanned by unit vectors, vertex by vertex
        let mut dims = vec![0; self.dims.len()];
        let mut comp: Vec<usize> = Vec::new();
        let mut ech = sub_ech.clone();
        for v in 0..self.dims.len() {
            for i in self.vertex_range(v) {
                let mut u = vec![0; n];
                u[i] = 1;
                if ech.insert(&u) {
                    comp.push(i);
                    dims[v] += 1;
                }
            }
        }
        let mut full = sub.clone();
        for &i in &comp {
            let mut u = vec![0; n];
            u[i] = 1;
            full.push(u);
        }
        let coords = SpanCoords::new(f, n, &full);
        let s = sub.len();
        let k = comp.len();
        let proj_of = |x: &[u32]| -> Vec<u32> { coords.coords(x).expect("full basis")[s..].to_vec() };
        for b in &sub {
            for a in &self.arrows {
                if !sub_ech.contains(&a.mul_vec(b)) {
                    return Err(RepError::NotSubmodule);
                }
            }
        }
        let mut arrows = Vec::new();
        for a in &self.arrows {
            let cols: Vec<Vec<u32>> = comp
                .iter()
                .map(|&i| {
                    let mut u = vec![0; n];
                    u[i] = 1;
                    proj_of(&a.mul_vec(&u))
                })
                .collect();
            arrows.push(Matrix::from_columns(f, k, &cols));
        }
        let proj_cols: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut u = vec![0; n];
                u[i] = 1;
                proj_of(&u)
            })
            .collect();
        let proj = Matrix::from_columns(f, k, &proj_cols);
        Ok((Module::new(self.alg.clone(), self.side, dims, arrows)?, proj))
    }

    /// Sum of the images of all arrows.
    pub fn radical_vectors(&self) -> Vec<Vec<u32>> {
        let cols: Vec<Vec<u32>> = self.arrows.iter().flat_map(|a| a.columns()).collect();
        self.graded_basis(&cols).into_iter().flatten().collect()
    }

    /// Common kernel of all arrows.
    pub fn socle_vectors(&self) -> Vec<Vec<u32>> {
        let n = self.dim();
        if self.arrows.is_empty() {
            return (0..n).map(|i| unit(n, i)).collect();
        }
        let mut stacked = self.arrows[0].clone();
        for a in &self.arrows[1..] {
            stacked = stacked.vstack(a);
        }
        self.graded_basis(&stacked.nullspace()).into_iter().flatten().collect()
    }

    pub fn radical(&self) -> (Module, Matrix) {
        self.submodule(&self.radical_vectors()).expect("radical is a submodule")
    }

    pub fn socle(&self) -> (Module, Matrix) {
        self.submodule(&self.socle_vectors()).expect("socle is a submodule")
    }

    pub fn top(&self) -> (Module, Matrix) {
        self.quotient(&self.radical_vectors()).expect("radical is a submodule")
    }

    /// Multiplicity of each simple in the top.
    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.graded_basis(&self.radical_vectors());
        self.dims.iter().zip(&rad).map(|(d, r)| d - r.len()).collect()
    }

    pub fn kernel(&self, f: &Matrix) -> (Module, Matrix) {
        self.submodule(&f.nullspace()).expect("kernel of a module map is a submodule")
    }

    /// Minimal projective cover.
    pub fn projective_cover(&self) -> ProjectiveCover {
        let f = self.field();
        let n = self.dim();
        let rad = Echelon::from_vectors(f, n, self.radical_vectors().iter());
        let mut tops: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut ech = rad;
        for v in 0..self.dims.len() {
            for i in self.vertex_range(v) {
                let u = unit(n, i);
                if ech.insert(&u) {
                    tops.push((v, u));
                }
            }
        }
        self.cover_from_generators(&tops)
    }

    /// `⊕ P_v → self` sending the generator of each summand to the given vector.
    pub fn cover_from_generators(&self, gens: &[(usize, Vec<u32>)]) -> ProjectiveCover {
        let f = self.field();
        let parts: Vec<Module> = gens.iter().map(|(v, _)| Module::projective(self.alg.clone(), *v, self.side)).collect();
        let refs: Vec<&Module> = parts.iter().collect();
        let module = if refs.is_empty() {
            Module::zero(self.alg.clone(), self.side)
        } else {
            Module::direct_sum(&refs).expect("same algebra")
        };
        let incl = Module::direct_sum_inclusions(&refs);
        let mut map = Matrix::zeros(f, self.dim(), module.dim());
        for (k, (v, g)) in gens.iter().enumerate() {
            let cols: Vec<Vec<u32>> = projective_basis_order(&self.alg, *v, self.side)
                .into_iter()
                .map(|bi| self.act(&self.alg.unit(bi), g))
                .collect();
            let on_summand = Matrix::from_columns(f, self.dim(), &cols);
            map = map.add(&on_summand.mul(&incl[k].transpose()));
        }
        ProjectiveCover { module, summands: gens.iter().map(|(v, _)| *v).collect(), map }
    }

    /// Kernel of the minimal projective cover.
    pub fn omega1(&self) -> Module {
        let cover = self.projective_cover();
        cover.module.kernel(&cover.map).0
    }

    /// `Ω^n`, iterating minimal covers.
    pub fn omega(&self, n: usize) -> Module {
        let mut m = self.clone();
        for _ in 0..n {
            m = m.omega1();
        }
        m
    }

    /// `Ω` computed from the cover that uses every basis vector as a
    /// generator, with projective summands of the kernel split off.
    pub fn omega_via_full_cover(&self) -> Module {
        let gens: Vec<(usize, Vec<u32>)> = (0..self.dim()).map(|i| (self.vertex_of(i), unit(self.dim(), i))).collect();
        let cover = self.cover_from_generators(&gens);
        cover.module.kernel(&cover.map).0.strip_projective_summands().0
    }

    /// Splits off indecomposable projective summands one at a time. Returns
    /// the remaining module and the vertices of the removed summands.
    ///
    /// `P_i` is a summand exactly when some `h: K → P_i` and `x ∈ e_i K` have
    /// `h(x) ∉ rad P_i`; then `K ≅ P_i ⊕ ker h`.
    pub fn strip_projective_summands(&self) -> (Module, Vec<usize>) {
        let mut k = self.clone();
        let mut removed = Vec::new();
        'outer: loop {
            for v in 0..k.dims.len() {
                if k.dims[v] == 0 {
                    continue;
                }
                let p = Module::projective(k.alg.clone(), v, k.side);
                let top_row = p.offsets[v]
                    + projective_basis_order(&k.alg, v, k.side)
                        .iter()
                        .filter(|&&bi| component_vertex(&k.alg, bi, k.side) == v)
                        .position(|&bi| k.alg.basis()[bi].is_empty())
                        .expect("idempotent lies in its projective");
                let homs = hom_space(&k, &p).expect("same algebra and side");
                for h in &homs {
                    if k.vertex_range(v).any(|c| h.get(top_row, c) != 0) {
                        k = k.kernel(h).0;
                        removed.push(v);
                        continue 'outer;
                    }
                }
            }
            return (k, removed);
        }
    }

    pub fn is_projective(&self) -> bool {
        self.projective_cover().module.dim() == self.dim()
    }

    /// Restriction of scalars along `phi: B → A`; the new component at a
    /// vertex `w` of `B` is `φ(e_w)·M`. Non-unital maps give `φ(1)·M`.
    pub fn pullback(&self, phi: &AlgebraMap, require_unital: bool) -> Result<Module, RepError> {
        Ok(self.pullback_with_basis(phi, require_unital)?.0)
    }

    /// [`Module::pullback`] together with the new basis in old coordinates.
    pub fn pullback_with_basis(&self, phi: &AlgebraMap, require_unital: bool) -> Result<(Module, Matrix), RepError> {
        if !Arc::ptr_eq(phi.dst(), &self.alg) {
            return Err(RepError::AlgebraMismatch);
        }
        let src = phi.src().clone();
        let idem: Vec<Matrix> = (0..src.num_vertices()).map(|w| self.action(phi.vertex_image(w))).collect();
        if require_unital {
            let mut sum = Matrix::zeros(self.field(), self.dim(), self.dim());
            for e in &idem {
                sum = sum.add(e);
            }
            if sum != Matrix::identity(self.field(), self.dim()) {
                return Err(RepError::NotUnital);
            }
        }
        let arrows: Vec<Matrix> =
            (0..src.quiver().arrows().len()).map(|a| self.action(phi.arrow_image(a))).collect();
        Module::from_operators(src, self.side, self.dim(), &idem, &arrows)
    }

    /// `σM`: the same space with `x·m = σ(x)m`.
    pub fn twist(&self, sigma: &AlgebraMap) -> Result<Module, RepError> {
        if !Arc::ptr_eq(sigma.src(), &self.alg) {
            return Err(RepError::AlgebraMismatch);
        }
        self.pullback(sigma, true)
    }

    pub fn restrict(&self, embedding: &AlgebraMap) -> Result<Module, RepError> {
        self.pullback(embedding, true)
    }

    /// The k-dual on the opposite side, in the dual basis.
    pub fn dual(&self) -> Module {
        let arrows = self.arrows.iter().map(|a| a.transpose()).collect();
        Module::new(self.alg.clone(), self.side.opposite(), self.dims.clone(), arrows).expect("dual of a module")
    }

    pub fn loewy_series(&self) -> LoewyTable {
        series::loewy(self)
    }

    pub fn socle_series(&self) -> LoewyTable {
        series::socle(self)
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut u = vec![0; n];
    u[i] = 1;
    u
}

/// Vertex component containing basis path `i` in the regular module.
fn component_vertex(alg: &Algebra, i: usize, side: Side) -> usize {
    match side {
        Side::Left => alg.basis()[i].target,
        Side::Right => alg.basis()[i].source,
    }
}

/// Basis paths spanning `A e_v` (left) or `e_v A` (right), in the order used
/// by [`Module::projective`]: grouped by vertex component, then by index.
pub fn projective_basis_order(alg: &Algebra, v: usize, side: Side) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..alg.dim())
        .filter(|&i| match side {
            Side::Left => alg.basis()[i].source == v,
            Side::Right => alg.basis()[i].target == v,
        })
        .collect();
    idx.sort_by_key(|&i| (component_vertex(alg, i, side), i));
    idx
}

pub struct ProjectiveCover {
    pub module: Module,
    /// Vertex of each indecomposable summand, in order.
    pub summands: Vec<usize>,
    /// `dim(target) × dim(module)`.
    pub map: Matrix,
}

/// Basis of all module maps `m → n`, as matrices.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<Matrix>, RepError> {
    if !m.same_algebra(n) {
        return Err(RepError::AlgebraMismatch);
    }
    if m.side != n.side {
        return Err(RepError::SideMismatch(m.side));
    }
    let f = m.field();
    let nv = m.dims.len();
    // unknowns: the blocks F_v : m_v → n_v, row-major
    let mut var_off = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        var_off.push(total);
        total += m.dims[v] * n.dims[v];
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, r: usize, c: usize| var_off[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let q = m.alg.quiver();
    for (a, ar) in q.arrows().iter().enumerate() {
        let (s, t) = match m.side {
            Side::Left => (ar.source, ar.target),
            Side::Right => (ar.target, ar.source),
        };
        let na = n.arrows[a].block(n.offsets[t], n.dims[t], n.offsets[s], n.dims[s]);
        let ma = m.arrows[a].block(m.offsets[t], m.dims[t], m.offsets[s], m.dims[s]);
        // N_a F_s - F_t M_a = 0, entry (i, j) with i in n_t, j in m_s
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0u32; total];
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    if c != 0 {
                        let x = var(s, k, j);
                        row[x] = f.add(row[x], c);
                    }
                }
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let x = var(t, i, k);
                        row[x] = f.sub(row[x], c);
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        (0..total).map(|i| unit(total, i)).collect()
    } else {
        Matrix::from_rows(f, total, &rows).nullspace()
    };
    Ok(sols
        .into_iter()
        .map(|s| {
            let mut h = Matrix::zeros(f, n.dim(), m.dim());
            for v in 0..nv {
                for r in 0..n.dims[v] {
                    for c in 0..m.dims[v] {
                        h.set(n.offsets[v] + r, m.offsets[v] + c, s[var(v, r, c)]);
                    }
                }
            }
            h
        })
        .collect())
}

/// `true` when `h` intertwines the two actions.
pub fn is_module_hom(m: &Module, n: &Module, h: &Matrix) -> bool {
    if h.rows() != n.dim() || h.cols() != m.dim() {
        return false;
    }
    let blocks_ok = (0..m.dims.len()).all(|v| {
        (0..n.dim()).all(|r| {
            (0..m.dim()).all(|c| {
                let same = n.vertex_range(v).contains(&r) == m.vertex_range(v).contains(&c);
                same || h.get(r, c) == 0
            })
        })
    });
    blocks_ok && m.arrows.iter().zip(&n.arrows).all(|(ma, na)| na.mul(h) == h.mul(ma))
}

/// `Hom_A(A e, X) ≅ eX` as a left module over `E ≅ eAe`, where `phi`
/// presents `E` inside `A`. Checks that `phi` is onto `eAe`.
pub fn hom_module(phi: &AlgebraMap, x: &Module) -> Result<Module, RepError> {
    if x.side != Side::Left {
        return Err(RepError::SideMismatch(Side::Left));
    }
    check_corner_presentation(phi)?;
    x.pullback(phi, false)
}

/// `Hom_A(X, eA) ≅ Xe` as a right module over `E ≅ eAe`, for a right module `X`.
pub fn hom_module_right(phi: &AlgebraMap, x: &Module) -> Result<Module, RepError> {
    if x.side != Side::Right {
        return Err(RepError::SideMismatch(Side::Right));
    }
    check_corner_presentation(phi)?;
    x.pullback(phi, false)
}

/// `phi: E → A` must be injective with image `eAe`, `e = φ(1)`.
pub fn check_corner_presentation(phi: &AlgebraMap) -> Result<(), RepError> {
    let a = phi.dst();
    let e = phi.apply(&phi.src().one());
    let corner: Vec<Elem> = (0..a.dim()).map(|i| a.mul(&a.mul(&e, &a.unit(i)), &e)).collect();
    let corner_dim = Matrix::from_columns(a.field(), a.dim(), &corner).rank();
    let rank = phi.matrix().rank();
    if rank != phi.src().dim() || rank != corner_dim {
        return Err(RepError::Presentation(format!(
            "{} does not present the endomorphism ring: rank {rank}, dim E {}, dim eAe {corner_dim}",
            phi.name(),
            phi.src().dim()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
