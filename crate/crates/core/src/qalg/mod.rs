//! Bound quiver algebras over GF(p).
//!
//! Paths compose like functions: the product `a*b` of two arrows is the path
//! that runs along `b` and then along `a`, so a path from `i` to `j` lies in
//! `e_j A e_i`. Left modules send the component at an arrow's source to the
//! component at its target.

mod algebra;
pub mod expr;
mod map;
mod symmetric;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactla::{Field, LinAlgError};

pub use algebra::{Algebra, AlgebraSpec, Elem};
pub use expr::{Expr, Factor, ParseError, Term};
pub use map::{AlgebraMap, AutomorphismSpec, SubalgebraSpec};
pub use symmetric::{is_symmetrizing_form, pairing_matrix, trace_forms, verify_symmetric, SymmetricVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QalgError {
    #[error("duplicate vertex '{0}'")]
    DuplicateVertex(String),
    #[error("duplicate arrow '{0}'")]
    DuplicateArrow(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("arrows do not compose in '{0}'")]
    NotComposable(String),
    #[error("relation '{0}' mixes paths with different endpoints")]
    NotParallel(String),
    #[error("nilpotency bound must be at least 2, got {0}")]
    BadBound(usize),
    #[error("{0}")]
    InvalidMap(String),
    #[error("map is not bijective")]
    NotBijective,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize, QalgError> {
        if self.vertex_index(label).is_some() {
            return Err(QalgError::DuplicateVertex(label.to_string()));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize, QalgError> {
        if self.arrow_index(name).is_some() {
            return Err(QalgError::DuplicateArrow(name.to_string()));
        }
        let s = self.vertex_index(source).ok_or_else(|| QalgError::UnknownVertex(source.to_string()))?;
        let t = self.vertex_index(target).ok_or_else(|| QalgError::UnknownVertex(target.to_string()))?;
        self.arrows.push(Arrow { name: name.to_string(), source: s, target: t });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// All paths of length `< bound`, grouped by `(source, target)`.
    pub fn paths_below(&self, bound: usize) -> BTreeMap<(usize, usize), Vec<Path>> {
        let mut out: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        let mut layer: Vec<Path> = (0..self.num_vertices()).map(Path::vertex).collect();
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &layer {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
                out.entry((p.source, p.target)).or_default().push(p.clone());
            }
            layer = next;
        }
        out
    }

    /// Idempotent atom for a vertex, e.g. `e_3`.
    pub fn idempotent_name(&self, v: usize) -> String {
        format!("e_{}", self.vertices[v])
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.idempotent_name(p.source);
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A path in traversal order: `arrows[0]` leaves `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self * other`: traverse `other`, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = other.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }
}

/// A GF(p)-combination of paths in the free path algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathExpr {
    pub field: Field,
    pub terms: BTreeMap<Path, u32>,
}

impl PathExpr {
    pub fn zero(field: Field) -> Self {
        PathExpr { field, terms: BTreeMap::new() }
    }

    pub fn path(field: Field, p: Path) -> Self {
        let mut e = Self::zero(field);
        e.add_term(p, 1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: u32) {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn add(&mut self, other: &PathExpr, c: u32) {
        for (p, &x) in &other.terms {
            self.add_term(p.clone(), self.field.mul(c, x));
        }
    }

    pub fn mul(&self, other: &PathExpr) -> PathExpr {
        let f = self.field;
        let mut out = PathExpr::zero(f);
        for (p, &x) in &self.terms {
            for (q, &y) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, f.mul(x, y));
                }
            }
        }
        out
    }

    /// Common `(source, target)` of all terms, if they are parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let st = (first.source, first.target);
        it.all(|p| (p.source, p.target) == st).then_some(st)
    }

    /// Evaluates a parsed expression against `quiver`.
    ///
    /// A bare integer stands for that multiple of `1 = Σ e_v`. A product of
    /// atoms whose endpoints do not match is an error; products involving
    /// parenthesised sums may vanish silently.
    pub fn from_expr(quiver: &Quiver, field: Field, e: &Expr) -> Result<PathExpr, QalgError> {
        let mut out = PathExpr::zero(field);
        for t in &e.terms {
            let c = field.from_i64(t.coeff);
            if t.factors.is_empty() {
                for v in 0..quiver.num_vertices() {
                    out.add_term(Path::vertex(v), c);
                }
                continue;
            }
            let mut acc: Option<PathExpr> = None;
            let all_atoms = t.factors.iter().all(|f| matches!(f, Factor::Atom(_)));
            for fac in &t.factors {
                let x = match fac {
                    Factor::Atom(name) => PathExpr::path(field, resolve_atom(quiver, name)?),
                    Factor::Group(g) => PathExpr::from_expr(quiver, field, g)?,
                };
                acc = Some(match acc {
                    None => x,
                    Some(a) => {
                        let prod = a.mul(&x);
                        if all_atoms && prod.is_zero() {
                            let txt = Expr { terms: vec![Term { coeff: 1, factors: t.factors.clone() }] };
                            return Err(QalgError::NotComposable(txt.to_string()));
                        }
                        prod
                    }
                });
            }
            out.add(&acc.expect("nonempty product"), c);
        }
        Ok(out)
    }
}

fn resolve_atom(quiver: &Quiver, name: &str) -> Result<Path, QalgError> {
    if let Some(a) = quiver.arrow_index(name) {
        let ar = &quiver.arrows[a];
        return Ok(Path { source: ar.source, target: ar.target, arrows: vec![a] });
    }
    if let Some(label) = name.strip_prefix("e_") {
        if let Some(v) = quiver.vertex_index(label) {
            return Ok(Path::vertex(v));
        }
    }
    Err(QalgError::UnknownName(name.to_string()))
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{:?}", self.source, self.target, self.arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::expr::parse_expr;

    fn quiver() -> Quiver {
        let mut q = Quiver::new();
        for v in ["1", "2"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("b", "2", "1").unwrap();
        q
    }

    #[test]
    fn functional_composition() {
        let q = quiver();
        let f = Field::new(3).unwrap();
        let e = PathExpr::from_expr(&q, f, &parse_expr("b*a").unwrap()).unwrap();
        let (p, _) = e.terms.iter().next().unwrap();
        assert_eq!((p.source, p.target), (0, 0));
        assert_eq!(p.arrows, vec![0, 1]);
        assert_eq!(q.path_name(p), "b*a");
        assert!(matches!(
            PathExpr::from_expr(&q, f, &parse_expr("a*a").unwrap()),
            Err(QalgError::NotComposable(_))
        ));
        assert!(matches!(PathExpr::from_expr(&q, f, &parse_expr("c").unwrap()), Err(QalgError::UnknownName(_))));
        let e = PathExpr::from_expr(&q, f, &parse_expr("e_2*a - a*e_1").unwrap()).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn quiver_validation() {
        let mut q = quiver();
        assert!(matches!(q.add_vertex("1"), Err(QalgError::DuplicateVertex(_))));
        assert!(matches!(q.add_arrow("a", "1", "1"), Err(QalgError::DuplicateArrow(_))));
        assert!(matches!(q.add_arrow("c", "1", "3"), Err(QalgError::UnknownVertex(_))));
        let paths = q.paths_below(3);
        assert_eq!(paths[&(0, 0)].len(), 2);
        assert_eq!(paths[&(0, 1)].len(), 1);
    }
}
