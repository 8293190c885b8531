use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exactla::{Echelon, Field, Matrix};

use super::{Expr, Path, PathExpr, QalgError, Quiver};

/// Coordinates with respect to [`Algebra::basis`].
pub type Elem = Vec<u32>;

/// Everything needed to build an algebra; kept verbatim for serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Expr>,
    /// All paths of this length between distinct vertices are declared zero.
    pub vanish_distinct: Option<usize>,
    /// Paths of length `>= bound` are zero.
    pub bound: usize,
}

/// `kQ / I` with an explicit basis of residues of paths.
///
/// Each basis element is a path shorter than the bound; every other path of
/// that length range has a stored normal form in this basis.
pub struct Algebra {
    spec: AlgebraSpec,
    relations: Vec<PathExpr>,
    basis: Vec<Path>,
    normal: HashMap<Path, Vec<(usize, u32)>>,
    prod: Vec<Vec<(usize, u32)>>,
    idempotents: Vec<usize>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra {} (dim {} over GF({}))", self.spec.name, self.dim(), self.field().p())
    }
}

impl Algebra {
    pub fn build(spec: AlgebraSpec) -> Result<Algebra, QalgError> {
        let field = spec.field;
        let n = spec.bound;
        if n < 2 {
            return Err(QalgError::BadBound(n));
        }
        let q = &spec.quiver;
        let mut relations = Vec::new();
        for r in &spec.relations {
            let pe = PathExpr::from_expr(q, field, r)?;
            if !pe.is_zero() && pe.endpoints().is_none() {
                return Err(QalgError::NotParallel(r.to_string()));
            }
            relations.push(pe);
        }
        let paths = q.paths_below(n);
        let mut generators = relations.clone();
        if let Some(len) = spec.vanish_distinct {
            if len < n {
                for ps in paths.values() {
                    for p in ps.iter().filter(|p| p.len() == len && p.source != p.target) {
                        generators.push(PathExpr::path(field, p.clone()));
                    }
                }
            }
        }

        // paths ending at / starting from each vertex, for two-sided multiples
        let nv = q.num_vertices();
        let mut ending: Vec<Vec<&Path>> = vec![Vec::new(); nv];
        let mut starting: Vec<Vec<&Path>> = vec![Vec::new(); nv];
        for ps in paths.values() {
            for p in ps {
                ending[p.target].push(p);
                starting[p.source].push(p);
            }
        }

        // columns of each block: longest paths first so they become pivots
        let mut cols: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        let mut col_index: HashMap<Path, usize> = HashMap::new();
        for (&st, ps) in &paths {
            let mut v = ps.clone();
            v.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.arrows.cmp(&a.arrows)));
            for (i, p) in v.iter().enumerate() {
                col_index.insert(p.clone(), i);
            }
            cols.insert(st, v);
        }
        let mut spans: BTreeMap<(usize, usize), Echelon> =
            cols.iter().map(|(&st, v)| (st, Echelon::new(field, v.len()))).collect();

        for r in &generators {
            let Some((rs, rt)) = r.endpoints() else { continue };
            for qp in &ending[rs] {
                for pp in &starting[rt] {
                    let st = (qp.source, pp.target);
                    let width = cols[&st].len();
                    let mut v = vec![0u32; width];
                    let mut any = false;
                    for (path, &c) in &r.terms {
                        if qp.len() + path.len() + pp.len() >= n {
                            continue;
                        }
                        let full = pp.compose(&path.compose(qp).expect("endpoints")).expect("endpoints");
                        let i = col_index[&full];
                        v[i] = field.add(v[i], c);
                        any = true;
                    }
                    if any {
                        spans.get_mut(&st).expect("block").insert(&v);
                    }
                }
            }
        }

        let mut free: Vec<Path> = Vec::new();
        let mut reductions: Vec<(Path, Vec<(Path, u32)>)> = Vec::new();
        for (st, ech) in &spans {
            let cs = &cols[st];
            let mut is_pivot = vec![false; cs.len()];
            if ech.dim() > 0 {
                let m = Matrix::from_rows(field, cs.len(), ech.basis());
                let rr = m.rref();
                for (row, &pc) in rr.pivots.iter().enumerate() {
                    is_pivot[pc] = true;
                    let mut nf = Vec::new();
                    for c in 0..cs.len() {
                        let x = rr.reduced.get(row, c);
                        if c != pc && x != 0 {
                            nf.push((cs[c].clone(), field.neg(x)));
                        }
                    }
                    reductions.push((cs[pc].clone(), nf));
                }
            }
            for (c, p) in cs.iter().enumerate() {
                if !is_pivot[c] {
                    free.push(p.clone());
                }
            }
        }
        free.sort_by(|a, b| {
            (a.len(), a.source, a.target, &a.arrows).cmp(&(b.len(), b.source, b.target, &b.arrows))
        });
        let index: HashMap<Path, usize> = free.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut normal: HashMap<Path, Vec<(usize, u32)>> = HashMap::new();
        for (i, p) in free.iter().enumerate() {
            normal.insert(p.clone(), vec![(i, 1)]);
        }
        for (p, nf) in reductions {
            // free columns only appear in reduced rows, so this is already normal
            let v = nf.into_iter().map(|(fp, c)| (index[&fp], c)).collect();
            normal.insert(p, v);
        }
        let idempotents: Vec<usize> = (0..nv)
            .map(|v| {
                index.get(&Path::vertex(v)).copied().ok_or_else(|| {
                    QalgError::InvalidMap(format!("relations kill the idempotent at vertex {}", q.vertices()[v]))
                })
            })
            .collect::<Result<_, _>>()?;

        let dim = free.len();
        let mut prod = vec![Vec::new(); dim * dim];
        for (i, pi) in free.iter().enumerate() {
            for (j, pj) in free.iter().enumerate() {
                if let Some(c) = pi.compose(pj) {
                    if c.len() < n {
                        let mut v = normal[&c].clone();
                        v.sort();
                        prod[i * dim + j] = v;
                    }
                }
            }
        }
        Ok(Algebra { spec, relations, basis: free, normal, prod, idempotents })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn field(&self) -> Field {
        self.spec.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.spec.quiver
    }

    pub fn bound(&self) -> usize {
        self.spec.bound
    }

    pub fn relations(&self) -> &[PathExpr] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.spec.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> String {
        self.spec.quiver.path_name(&self.basis[i])
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.spec.quiver.vertices()[v]
    }

    /// Index of the basis element `e_v`.
    pub fn idempotent_index(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn unit(&self, i: usize) -> Elem {
        let mut x = self.zero();
        x[i] = 1;
        x
    }

    pub fn one(&self) -> Elem {
        let mut x = self.zero();
        for &i in &self.idempotents {
            x[i] = 1;
        }
        x
    }

    pub fn idempotent(&self, v: usize) -> Elem {
        self.unit(self.idempotents[v])
    }

    pub fn arrow(&self, a: usize) -> Elem {
        let ar = &self.spec.quiver.arrows()[a];
        self.reduce_path(&Path { source: ar.source, target: ar.target, arrows: vec![a] })
    }

    /// Indices of basis paths from `s` to `t`, i.e. a basis of `e_t A e_s`.
    pub fn block(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == s && self.basis[i].target == t).collect()
    }

    pub fn reduce_path(&self, p: &Path) -> Elem {
        let mut x = self.zero();
        if p.len() < self.bound() {
            for &(i, c) in &self.normal[p] {
                x[i] = c;
            }
        }
        x
    }

    pub fn eval(&self, e: &PathExpr) -> Elem {
        let f = self.field();
        let mut x = self.zero();
        for (p, &c) in &e.terms {
            if p.len() < self.bound() {
                for &(i, y) in &self.normal[p] {
                    x[i] = f.add(x[i], f.mul(c, y));
                }
            }
        }
        x
    }

    pub fn eval_expr(&self, e: &Expr) -> Result<Elem, QalgError> {
        Ok(self.eval(&PathExpr::from_expr(self.quiver(), self.field(), e)?))
    }

    /// Structure constants of `b_i * b_j`.
    pub fn basis_mul(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.prod[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Elem {
        let f = self.field();
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.basis_mul(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x*y`.
    pub fn left_mul_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim()).map(|j| self.mul(x, &self.unit(j))).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Matrix of `y ↦ y*x`.
    pub fn right_mul_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim()).map(|j| self.mul(&self.unit(j), x)).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` for every basis triple.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&self.unit(i), &self.unit(j));
                for k in 0..d {
                    let jk = self.mul(&self.unit(j), &self.unit(k));
                    if self.mul(&ij, &self.unit(k)) != self.mul(&self.unit(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Entry `(i, j)` is `dim e_j A e_i`, the multiplicity of `S_j` in `P_i = A e_i`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for p in &self.basis {
            c[p.source][p.target] += 1;
        }
        c
    }

    pub fn format_elem(&self, x: &[u32]) -> String {
        let f = self.field();
        let mut s = String::new();
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sc = f.signed(c);
            let mag = sc.abs();
            s.push_str(match (s.is_empty(), sc < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if mag != 1 {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&self.basis_name(i));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::expr::parse_expr;

    fn spec(vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str], bound: usize) -> AlgebraSpec {
        let mut q = Quiver::new();
        for v in vs {
            q.add_vertex(v).unwrap();
        }
        for (n, s, t) in arrows {
            q.add_arrow(n, s, t).unwrap();
        }
        AlgebraSpec {
            name: "T".into(),
            field: Field::new(3).unwrap(),
            quiver: q,
            relations: rels.iter().map(|r| parse_expr(r).unwrap()).collect(),
            vanish_distinct: None,
            bound,
        }
    }

    #[test]
    fn truncated_polynomial() {
        let a = Algebra::build(spec(&["1"], &[("x", "1", "1")], &["x*x*x"], 5)).unwrap();
        assert_eq!(a.dim(), 3);
        let names: Vec<String> = (0..3).map(|i| a.basis_name(i)).collect();
        assert_eq!(names, ["e_1", "x", "x*x"]);
        assert_eq!(a.cartan_matrix(), vec![vec![3]]);
        assert!(a.is_associative());
        let x = a.arrow(0);
        assert_eq!(a.mul(&a.mul(&x, &x), &x), a.zero());
    }

    #[test]
    fn brauer_star_two_edges() {
        let a = Algebra::build(spec(
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1")],
            &["a*b*a", "b*a*b"],
            5,
        ))
        .unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.cartan_matrix(), vec![vec![2, 1], vec![1, 2]]);
        assert!(a.is_associative());
    }

    #[test]
    fn relation_reduces_longer_path() {
        // a*b = c*d in a commutative square
        let a = Algebra::build(spec(
            &["1", "2", "3", "4"],
            &[("b", "1", "2"), ("a", "2", "4"), ("d", "1", "3"), ("c", "3", "4")],
            &["a*b - c*d"],
            3,
        ))
        .unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        let ab = a.eval_expr(&parse_expr("a*b").unwrap()).unwrap();
        let cd = a.eval_expr(&parse_expr("c*d").unwrap()).unwrap();
        assert_eq!(ab, cd);
        assert_eq!(a.block(0, 3).len(), 1);
    }

    #[test]
    fn build_errors() {
        let s = spec(&["1", "2"], &[("a", "1", "2")], &["a - e_1"], 3);
        assert!(matches!(Algebra::build(s), Err(QalgError::NotParallel(_))));
        let s = spec(&["1", "2"], &[("a", "1", "2")], &["a*a"], 3);
        assert!(matches!(Algebra::build(s), Err(QalgError::NotComposable(_))));
        let s = spec(&["1"], &[], &[], 1);
        assert!(matches!(Algebra::build(s), Err(QalgError::BadBound(1))));
    }
}
