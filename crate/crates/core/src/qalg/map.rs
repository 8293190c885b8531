use std::fmt;
use std::sync::Arc;

use crate::exactla::{is_zero_vec, Matrix};

use super::expr::Term;
use super::{Algebra, AlgebraSpec, Elem, Expr, Factor, Path, QalgError, Quiver};

/// A homomorphism of algebras, possibly non-unital, given on generators.
///
/// Used for automorphisms, subalgebra embeddings and for presenting an
/// endomorphism ring `eAe` inside `A`.
#[derive(Clone)]
pub struct AlgebraMap {
    name: String,
    src: Arc<Algebra>,
    dst: Arc<Algebra>,
    matrix: Matrix,
    vertex_images: Vec<Elem>,
    arrow_images: Vec<Elem>,
}

impl fmt::Debug for AlgebraMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraMap {}: {} -> {}", self.name, self.src.name(), self.dst.name())
    }
}

/// A vertex permutation plus arrow images; omitted entries map to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutomorphismSpec {
    pub name: String,
    pub vertices: Vec<(String, String)>,
    pub arrows: Vec<(String, Expr)>,
}

/// Generators of a subalgebra: named idempotents and named arrows between them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubalgebraSpec {
    pub name: String,
    pub vertices: Vec<(String, Expr)>,
    /// `(name, source, target, image)`
    pub arrows: Vec<(String, String, String, Expr)>,
}

impl AlgebraMap {
    /// Validates that the images extend to a multiplicative map `src -> dst`.
    pub fn from_images(
        name: &str,
        src: Arc<Algebra>,
        dst: Arc<Algebra>,
        vertex_images: Vec<Elem>,
        arrow_images: Vec<Elem>,
    ) -> Result<AlgebraMap, QalgError> {
        let q = src.quiver();
        let bad = |msg: String| Err(QalgError::InvalidMap(format!("{name}: {msg}")));
        if vertex_images.len() != q.num_vertices() || arrow_images.len() != q.arrows().len() {
            return bad("wrong number of generator images".into());
        }
        for (v, x) in vertex_images.iter().enumerate() {
            for (w, y) in vertex_images.iter().enumerate() {
                let xy = dst.mul(x, y);
                let want = if v == w { x.clone() } else { dst.zero() };
                if xy != want {
                    return bad(format!(
                        "images of {} and {} are not orthogonal idempotents",
                        q.idempotent_name(v),
                        q.idempotent_name(w)
                    ));
                }
            }
        }
        for (a, ar) in q.arrows().iter().enumerate() {
            let x = &arrow_images[a];
            let sandwiched = dst.mul(&dst.mul(&vertex_images[ar.target], x), &vertex_images[ar.source]);
            if &sandwiched != x {
                return bad(format!(
                    "image of arrow {} does not run from the image of {} to the image of {} (endpoint mismatch)",
                    ar.name,
                    q.idempotent_name(ar.source),
                    q.idempotent_name(ar.target)
                ));
            }
        }
        let path_image = |p: &Path| -> Elem {
            let mut img = vertex_images[p.source].clone();
            for &a in &p.arrows {
                img = dst.mul(&arrow_images[a], &img);
            }
            img
        };
        let f = src.field();
        for (r, text) in src.relations().iter().zip(&src.spec().relations) {
            let mut img = dst.zero();
            for (p, &c) in &r.terms {
                let pi = path_image(p);
                f.axpy(&mut img, c, &pi);
            }
            if !is_zero_vec(&img) {
                return bad(format!("relation {text} does not map to zero"));
            }
        }
        let cols: Vec<Elem> = src.basis().iter().map(path_image).collect();
        let matrix = Matrix::from_columns(f, dst.dim(), &cols);
        let map = AlgebraMap { name: name.to_string(), src, dst, matrix, vertex_images, arrow_images };
        let d = map.src.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = map.apply(&map.src.mul(&map.src.unit(i), &map.src.unit(j)));
                let rhs = map.dst.mul(&cols[i], &cols[j]);
                if lhs != rhs {
                    return bad(format!(
                        "not multiplicative on {} * {}",
                        map.src.basis_name(i),
                        map.src.basis_name(j)
                    ));
                }
            }
        }
        Ok(map)
    }

    /// Parses generator images written in `dst`'s names.
    pub fn from_exprs(
        name: &str,
        src: Arc<Algebra>,
        dst: Arc<Algebra>,
        vertices: &[(String, Expr)],
        arrows: &[(String, Expr)],
    ) -> Result<AlgebraMap, QalgError> {
        let q = src.quiver();
        let mut vi: Vec<Option<Elem>> = vec![None; q.num_vertices()];
        let mut ai: Vec<Option<Elem>> = vec![None; q.arrows().len()];
        for (v, e) in vertices {
            let idx = q.vertex_index(v).ok_or_else(|| QalgError::UnknownVertex(v.clone()))?;
            vi[idx] = Some(dst.eval_expr(e)?);
        }
        for (a, e) in arrows {
            let idx = q.arrow_index(a).ok_or_else(|| QalgError::UnknownName(a.clone()))?;
            ai[idx] = Some(dst.eval_expr(e)?);
        }
        let missing = |what: &str| QalgError::InvalidMap(format!("{name}: no image given for {what}"));
        let vi = vi
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| missing(&q.idempotent_name(v))))
            .collect::<Result<Vec<_>, _>>()?;
        let ai = ai
            .into_iter()
            .enumerate()
            .map(|(a, x)| x.ok_or_else(|| missing(&q.arrows()[a].name)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(name, src, dst, vi, ai)
    }

    pub fn identity(a: Arc<Algebra>) -> AlgebraMap {
        let vi = (0..a.num_vertices()).map(|v| a.idempotent(v)).collect();
        let ai = (0..a.quiver().arrows().len()).map(|x| a.arrow(x)).collect();
        Self::from_images("id", a.clone(), a, vi, ai).expect("identity map is valid")
    }

    /// Validates an automorphism of `a` and returns it.
    pub fn automorphism(a: Arc<Algebra>, spec: &AutomorphismSpec) -> Result<AlgebraMap, QalgError> {
        let q = a.quiver();
        let mut perm: Vec<usize> = (0..q.num_vertices()).collect();
        for (s, t) in &spec.vertices {
            let si = q.vertex_index(s).ok_or_else(|| QalgError::UnknownVertex(s.clone()))?;
            let ti = q.vertex_index(t).ok_or_else(|| QalgError::UnknownVertex(t.clone()))?;
            perm[si] = ti;
        }
        let vi: Vec<Elem> = perm.iter().map(|&w| a.idempotent(w)).collect();
        let mut ai: Vec<Elem> = (0..q.arrows().len()).map(|x| a.arrow(x)).collect();
        for (name, e) in &spec.arrows {
            let idx = q.arrow_index(name).ok_or_else(|| QalgError::UnknownName(name.clone()))?;
            ai[idx] = a.eval_expr(e)?;
        }
        let m = Self::from_images(&spec.name, a.clone(), a, vi, ai)?;
        if !m.matrix.is_invertible() {
            return Err(QalgError::NotBijective);
        }
        if m.vertex_permutation().is_none() {
            return Err(QalgError::InvalidMap(format!("{}: vertex images are not a permutation", spec.name)));
        }
        Ok(m)
    }

    /// The subalgebra generated by `spec` together with its embedding into `parent`.
    pub fn subalgebra(parent: Arc<Algebra>, spec: &SubalgebraSpec) -> Result<(Arc<Algebra>, AlgebraMap), QalgError> {
        let mut q = Quiver::new();
        let mut vi = Vec::new();
        for (v, e) in &spec.vertices {
            q.add_vertex(v)?;
            vi.push(parent.eval_expr(e)?);
        }
        let mut ai = Vec::new();
        for (a, s, t, e) in &spec.arrows {
            q.add_arrow(a, s, t)?;
            ai.push(parent.eval_expr(e)?);
        }
        let n = parent.bound();
        let f = parent.field();
        let image = |p: &Path| -> Elem {
            let mut img = vi[p.source].clone();
            for &a in &p.arrows {
                img = parent.mul(&ai[a], &img);
            }
            img
        };
        let mut relations = Vec::new();
        for ((_, _), ps) in q.paths_below(n + 1) {
            let (short, long): (Vec<&Path>, Vec<&Path>) = ps.iter().partition(|p| p.len() < n);
            if long.iter().any(|p| !is_zero_vec(&image(p))) {
                return Err(QalgError::InvalidMap(format!(
                    "{}: products of {n} generators do not vanish",
                    spec.name
                )));
            }
            let cols: Vec<Elem> = short.iter().map(|p| image(p)).collect();
            let m = Matrix::from_columns(f, parent.dim(), &cols);
            for k in m.nullspace() {
                let mut terms = Vec::new();
                for (c, p) in k.iter().zip(&short) {
                    if *c != 0 {
                        terms.push(Term { coeff: f.signed(*c), factors: path_factors(&q, p) });
                    }
                }
                relations.push(Expr { terms });
            }
        }
        let sub = Arc::new(Algebra::build(AlgebraSpec {
            name: spec.name.clone(),
            field: f,
            quiver: q,
            relations,
            vanish_distinct: None,
            bound: n,
        })?);
        let emb = Self::from_images(&format!("{}->{}", spec.name, parent.name()), sub.clone(), parent, vi, ai)?;
        if emb.matrix.rank() != sub.dim() {
            return Err(QalgError::InvalidMap(format!("{}: embedding is not injective", spec.name)));
        }
        Ok((sub, emb))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn src(&self) -> &Arc<Algebra> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Algebra> {
        &self.dst
    }

    /// `dst.dim × src.dim`.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn vertex_image(&self, v: usize) -> &Elem {
        &self.vertex_images[v]
    }

    pub fn arrow_image(&self, a: usize) -> &Elem {
        &self.arrow_images[a]
    }

    pub fn apply(&self, x: &[u32]) -> Elem {
        self.matrix.mul_vec(x)
    }

    pub fn is_unital(&self) -> bool {
        self.apply(&self.src.one()) == self.dst.one()
    }

    /// `π` with `φ(e_v) ≡ e_{π(v)}` modulo the radical, when every vertex
    /// image is primitive.
    pub fn vertex_permutation(&self) -> Option<Vec<usize>> {
        let n = self.dst.num_vertices();
        let mut perm = Vec::new();
        for x in &self.vertex_images {
            let hits: Vec<usize> =
                (0..n).filter(|&w| x[self.dst.idempotent_index(w)] != 0).collect();
            if hits.len() != 1 || x[self.dst.idempotent_index(hits[0])] != 1 {
                return None;
            }
            perm.push(hits[0]);
        }
        Some(perm)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap, QalgError> {
        if !Arc::ptr_eq(other.dst(), &self.src) {
            return Err(QalgError::InvalidMap("maps do not compose".into()));
        }
        let vi = other.vertex_images.iter().map(|x| self.apply(x)).collect();
        let ai = other.arrow_images.iter().map(|x| self.apply(x)).collect();
        Self::from_images(
            &format!("{}*{}", self.name, other.name),
            other.src.clone(),
            self.dst.clone(),
            vi,
            ai,
        )
    }

    pub fn inverse(&self) -> Result<AlgebraMap, QalgError> {
        if !Arc::ptr_eq(&self.src, &self.dst) {
            return Err(QalgError::InvalidMap("only automorphisms are inverted".into()));
        }
        let inv = self.matrix.inverse().ok_or(QalgError::NotBijective)?;
        let a = &self.src;
        let vi = (0..a.num_vertices()).map(|v| inv.mul_vec(&a.idempotent(v))).collect();
        let ai = (0..a.quiver().arrows().len()).map(|x| inv.mul_vec(&a.arrow(x))).collect();
        Self::from_images(&format!("{}^-1", self.name), a.clone(), a.clone(), vi, ai)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.src.field(), self.src.dim())
    }
}

fn path_factors(q: &Quiver, p: &Path) -> Vec<Factor> {
    if p.arrows.is_empty() {
        return vec![Factor::Atom(q.idempotent_name(p.source))];
    }
    p.arrows.iter().rev().map(|&a| Factor::Atom(q.arrows()[a].name.clone())).collect()
}
