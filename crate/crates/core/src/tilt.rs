//! Two-term (Okuyama–Rickard) tilting complexes at a set of simples, and
//! morphisms in the homotopy category of projectives.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{Echelon, Matrix};
use crate::qalg::Algebra;
use crate::rep::{hom_space, is_module_hom, Module, ProjectiveCover, RepError, Side};
use crate::report::{Assertion, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TiltError {
    #[error("vertex {0} out of range")]
    Vertex(usize),
    #[error("complex terms must be projective left modules over one algebra")]
    Terms,
    #[error("d∘d ≠ 0 at degree {0}")]
    NotComplex(i32),
    #[error("differential at degree {0} is not a module map")]
    NotHom(i32),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A bounded complex of projective left modules with homological grading:
/// `terms[k]` sits in degree `low + k` and `diffs[k]` maps `terms[k + 1]`
/// to `terms[k]`.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    pub low: i32,
    pub terms: Vec<Module>,
    pub diffs: Vec<Matrix>,
}

impl ProjComplex {
    pub fn new(low: i32, terms: Vec<Module>, diffs: Vec<Matrix>) -> Result<ProjComplex, TiltError> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(TiltError::Terms);
        }
        let alg = terms[0].algebra();
        if terms.iter().any(|t| !Arc::ptr_eq(t.algebra(), alg) || t.side() != Side::Left || !t.is_projective()) {
            return Err(TiltError::Terms);
        }
        for (k, d) in diffs.iter().enumerate() {
            if !is_module_hom(&terms[k + 1], &terms[k], d) {
                return Err(TiltError::NotHom(low + k as i32 + 1));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k]).is_zero() {
                return Err(TiltError::NotComplex(low + k as i32 + 1));
            }
        }
        Ok(ProjComplex { low, terms, diffs })
    }

    /// `P` in degree `degree`.
    pub fn stalk(p: Module, degree: i32) -> ProjComplex {
        ProjComplex { low: degree, terms: vec![p], diffs: Vec::new() }
    }

    pub fn high(&self) -> i32 {
        self.low + self.terms.len() as i32 - 1
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.terms[0].algebra()
    }

    pub fn term(&self, n: i32) -> Option<&Module> {
        if n < self.low || n > self.high() {
            return None;
        }
        Some(&self.terms[(n - self.low) as usize])
    }

    /// `d_n: X_n → X_{n-1}`.
    pub fn diff(&self, n: i32) -> Option<&Matrix> {
        if n <= self.low || n > self.high() {
            return None;
        }
        Some(&self.diffs[(n - self.low - 1) as usize])
    }

    /// `X[s]`, with `X[s]_n = X_{n-s}`.
    pub fn shifted(&self, s: i32) -> ProjComplex {
        ProjComplex { low: self.low + s, terms: self.terms.clone(), diffs: self.diffs.clone() }
    }

    pub fn direct_sum(parts: &[&ProjComplex]) -> Result<ProjComplex, TiltError> {
        let Some(first) = parts.first() else {
            return Err(TiltError::Terms);
        };
        let alg = first.algebra().clone();
        let low = parts.iter().map(|p| p.low).min().expect("nonempty");
        let high = parts.iter().map(|p| p.high()).max().expect("nonempty");
        let zero = Module::zero(alg.clone(), Side::Left);
        let f = alg.field();
        let mut terms = Vec::new();
        let mut incls = Vec::new();
        for n in low..=high {
            let ts: Vec<&Module> = parts.iter().map(|p| p.term(n).unwrap_or(&zero)).collect();
            terms.push(Module::direct_sum(&ts)?);
            incls.push(Module::direct_sum_inclusions(&ts));
        }
        let mut diffs = Vec::new();
        for n in low + 1..=high {
            let k = (n - low) as usize;
            let mut d = Matrix::zeros(f, terms[k - 1].dim(), terms[k].dim());
            for (i, p) in parts.iter().enumerate() {
                if let Some(dp) = p.diff(n) {
                    // incl_{n-1} · d · incl_n^T picks out the block
                    let block = incls[k - 1][i].mul(dp).mul(&incls[k][i].transpose());
                    d = d.add(&block);
                }
            }
            diffs.push(d);
        }
        ProjComplex::new(low, terms, diffs)
    }

    pub fn dims(&self) -> Vec<(i32, usize)> {
        (self.low..=self.high()).map(|n| (n, self.term(n).map_or(0, Module::dim))).collect()
    }
}

fn flatten_into(out: &mut [u32], m: &Matrix) {
    let c = m.cols();
    for r in 0..m.rows() {
        out[r * c..(r + 1) * c].copy_from_slice(m.row(r));
    }
}

/// `dim Hom_{K^b}(X, Y[shift])`: chain maps `f_n: X_n → Y_{n-shift}` modulo
/// null-homotopic ones.
pub fn homotopy_hom(x: &ProjComplex, y: &ProjComplex, shift: i32) -> Result<usize, TiltError> {
    if !Arc::ptr_eq(x.algebra(), y.algebra()) {
        return Err(RepError::AlgebraMismatch.into());
    }
    let f = x.algebra().field();
    // ambient coordinates: one block Mat(Y_{n-s}, X_n) per degree n
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for n in x.low..=x.high() {
        let size = match y.term(n - shift) {
            Some(t) => t.dim() * x.term(n).expect("in range").dim(),
            None => 0,
        };
        offsets.push(total);
        total += size;
    }
    let block_of = |n: i32| offsets[(n - x.low) as usize];

    let mut cons_cols: Vec<Vec<u32>> = Vec::new();
    // chain condition d^Y f_n = f_{n-1} d^X_n, collected per degree n
    let mut cons_offsets = Vec::new();
    let mut cons_total = 0usize;
    for n in x.low..=x.high() {
        cons_offsets.push(cons_total);
        if let Some(t) = y.term(n - shift - 1) {
            cons_total += t.dim() * x.term(n).expect("in range").dim();
        }
    }
    for n in x.low..=x.high() {
        let xn = x.term(n).expect("in range");
        let Some(yn) = y.term(n - shift) else { continue };
        for h in hom_space(xn, yn)? {
            let mut c = vec![0u32; cons_total];
            if let Some(dy) = y.diff(n - shift) {
                let o = cons_offsets[(n - x.low) as usize];
                let m = dy.mul(&h);
                flatten_into(&mut c[o..o + m.rows() * m.cols()], &m);
            }
            if let Some(dx) = x.diff(n + 1) {
                let o = cons_offsets[(n + 1 - x.low) as usize];
                let m = h.mul(dx).scaled(f.neg(1));
                flatten_into(&mut c[o..o + m.rows() * m.cols()], &m);
            }
            cons_cols.push(c);
        }
    }
    if cons_cols.is_empty() {
        return Ok(0);
    }
    let cycles = if cons_total == 0 {
        cons_cols.len()
    } else {
        Matrix::from_columns(f, cons_total, &cons_cols).nullspace().len()
    };

    // null-homotopic maps d^Y h_n + h_{n-1} d^X_n with h_n: X_n → Y_{n-s+1}
    let mut boundaries = Echelon::new(f, total);
    for n in x.low..=x.high() {
        let xn = x.term(n).expect("in range");
        let Some(yn) = y.term(n - shift + 1) else { continue };
        for h in hom_space(xn, yn)? {
            let mut amb = vec![0u32; total];
            if let Some(dy) = y.diff(n - shift + 1) {
                let m = dy.mul(&h);
                let o = block_of(n);
                flatten_into(&mut amb[o..o + m.rows() * m.cols()], &m);
            }
            if let Some(dx) = x.diff(n + 1) {
                let m = h.mul(dx);
                let o = block_of(n + 1);
                let mut cur = amb[o..o + m.rows() * m.cols()].to_vec();
                let mut add = vec![0u32; cur.len()];
                flatten_into(&mut add, &m);
                f.axpy(&mut cur, 1, &add);
                amb[o..o + m.rows() * m.cols()].copy_from_slice(&cur);
            }
            boundaries.insert(&amb);
        }
    }
    Ok(cycles - boundaries.dim())
}

/// `dim Ext¹(S_i, S_j)`, as the multiplicity of `S_j` in the top of `ΩS_i`.
pub fn ext1_dim(a: &Arc<Algebra>, i: usize, j: usize) -> Result<usize, TiltError> {
    let n = a.num_vertices();
    for v in [i, j] {
        if v >= n {
            return Err(TiltError::Vertex(v));
        }
    }
    let omega = Module::simple(a.clone(), i, Side::Left).omega1();
    Ok(hom_space(&omega, &Module::simple(a.clone(), j, Side::Left))?.len())
}

/// The largest quotient `M_J` of `P(M)` whose kernel onto `M` has all
/// composition factors in `J`.
pub struct SerreApprox {
    pub cover: ProjectiveCover,
    /// `K′ ⊆ ker(P(M) → M)` with its inclusion into `P(M)`.
    pub kernel: Module,
    pub inclusion: Matrix,
    pub module: Module,
    /// `P(M) → M_J`.
    pub map: Matrix,
    /// Dimensions along the reject chain, starting from `ker(P(M) → M)`.
    pub chain: Vec<usize>,
}

pub fn serre_approx(m: &Module, j: &BTreeSet<usize>) -> Result<SerreApprox, TiltError> {
    let a = m.algebra();
    if let Some(&v) = j.iter().find(|&&v| v >= a.num_vertices()) {
        return Err(TiltError::Vertex(v));
    }
    let cover = m.projective_cover();
    let (mut k, mut incl) = cover.module.kernel(&cover.map);
    let simples: Vec<Module> = j.iter().map(|&v| Module::simple(a.clone(), v, m.side())).collect();
    let mut chain = vec![k.dim()];
    loop {
        let mut stacked: Option<Matrix> = None;
        for s in &simples {
            for h in hom_space(&k, s)? {
                stacked = Some(match stacked {
                    Some(acc) => acc.vstack(&h),
                    None => h,
                });
            }
        }
        let Some(stacked) = stacked else { break };
        let (next, i2) = k.submodule(&stacked.nullspace())?;
        if next.dim() == k.dim() {
            break;
        }
        incl = incl.mul(&i2);
        k = next;
        chain.push(k.dim());
    }
    let (module, map) = cover.module.quotient(&incl.columns())?;
    Ok(SerreApprox { cover, kernel: k, inclusion: incl, module, map, chain })
}

/// One summand of a combinatorial tilting complex: `Q → P_j` in degrees 1
/// and 0 for `j ∈ J`, or `P_i` alone in degree 1.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub vertex: usize,
    pub in_j: bool,
    pub degree1: Module,
    /// Vertices of the indecomposable summands of the degree-1 term.
    pub degree1_summands: Vec<usize>,
    pub degree0: Module,
    pub diff: Matrix,
}

impl TwoTermComplex {
    pub fn complex(&self) -> ProjComplex {
        if self.in_j {
            ProjComplex {
                low: 0,
                terms: vec![self.degree0.clone(), self.degree1.clone()],
                diffs: vec![self.diff.clone()],
            }
        } else {
            ProjComplex::stalk(self.degree1.clone(), 1)
        }
    }

    pub fn describe(&self, labels: &[String]) -> String {
        let sum = |vs: &[usize]| -> String {
            if vs.is_empty() {
                "0".into()
            } else {
                vs.iter().map(|&v| format!("P{}", labels[v])).collect::<Vec<_>>().join(" ⊕ ")
            }
        };
        if self.in_j {
            format!("T{} = {} → P{} (degrees 1, 0)", labels[self.vertex], sum(&self.degree1_summands), labels[self.vertex])
        } else {
            format!("T{} = P{}[1]", labels[self.vertex], labels[self.vertex])
        }
    }
}

/// The basic combinatorial tilting complex at `J`, one summand per vertex.
pub fn combinatorial_tilting_complex(a: &Arc<Algebra>, j: &BTreeSet<usize>) -> Result<Vec<TwoTermComplex>, TiltError> {
    let n = a.num_vertices();
    if let Some(&v) = j.iter().find(|&&v| v >= n) {
        return Err(TiltError::Vertex(v));
    }
    let mut out = Vec::new();
    for v in 0..n {
        let pv = Module::projective(a.clone(), v, Side::Left);
        if !j.contains(&v) {
            out.push(TwoTermComplex {
                vertex: v,
                in_j: false,
                degree1_summands: vec![v],
                degree0: Module::zero(a.clone(), Side::Left),
                diff: Matrix::zeros(a.field(), 0, pv.dim()),
                degree1: pv,
            });
            continue;
        }
        let approx = serre_approx(&Module::simple(a.clone(), v, Side::Left), j)?;
        let q = approx.kernel.projective_cover();
        let diff = approx.inclusion.mul(&q.map);
        out.push(TwoTermComplex {
            vertex: v,
            in_j: true,
            degree1: q.module,
            degree1_summands: q.summands,
            degree0: approx.cover.module,
            diff,
        });
    }
    Ok(out)
}

/// Whether `Ext¹(S_i, S_j) = 0` for all `i, j ∈ J`.
pub fn ext1_vanishes_on(a: &Arc<Algebra>, j: &BTreeSet<usize>) -> Result<bool, TiltError> {
    for &x in j {
        for &y in j {
            if ext1_dim(a, x, y)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn set_label(j: &BTreeSet<usize>, labels: &[String]) -> String {
    if j.is_empty() {
        return "∅".into();
    }
    format!("{{{}}}", j.iter().map(|&v| labels[v].as_str()).collect::<Vec<_>>().join(","))
}

/// `∅ ⊂_0 J ⊂_{-1} I`.
pub fn perversity_data(j: &BTreeSet<usize>, labels: &[String]) -> String {
    let all: BTreeSet<usize> = (0..labels.len()).collect();
    format!("∅ ⊂_0 {} ⊂_{{-1}} {}", set_label(j, labels), set_label(&all, labels))
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    pub j: String,
    pub summands: Vec<String>,
    /// `(i, dim Hom(T, T[i]))` over the checked window.
    pub shift_dims: Vec<(i32, usize)>,
    pub end_dim: usize,
    pub perversity: String,
    /// Set when `Ext¹` vanishes on `J`: every `T_j` is `P(rad P_j) → P_j`.
    pub simplified_form: Option<bool>,
    pub indecomposable_summands: usize,
}

impl TiltingReport {
    pub fn passed(&self, num_vertices: usize) -> bool {
        self.shift_dims.iter().all(|&(i, d)| i == 0 || d == 0)
            && self.indecomposable_summands == num_vertices
            && self.simplified_form != Some(false)
    }

    pub fn to_report(&self, title: &str, num_vertices: usize) -> Report {
        let mut r = Report::new(title);
        for &(i, d) in &self.shift_dims {
            if i != 0 {
                r.push(Assertion::new(format!("Hom(T, T[{i}]) = 0"), d == 0).ledger(vec![d]));
            }
        }
        r.push(
            Assertion::new(format!("{} indecomposable summands", num_vertices), self.indecomposable_summands == num_vertices)
                .ledger(vec![self.indecomposable_summands])
                .detail(self.summands.join("\n")),
        );
        if let Some(ok) = self.simplified_form {
            r.push(Assertion::new("T_j = P(rad P_j) → P_j for j ∈ J", ok));
        }
        r.push(Assertion::new(format!("dim End(T) = {}", self.end_dim), true).ledger(vec![self.end_dim]));
        r.push(Assertion::new(format!("perversity {}", self.perversity), true));
        r
    }
}

/// Builds the basic tilting complex at `J` and checks self-orthogonality at
/// shifts `±1, ±2`, the summand count and, where it applies, the simplified
/// form of each `T_j`.
pub fn verify_tilting(a: &Arc<Algebra>, j: &BTreeSet<usize>) -> Result<TiltingReport, TiltError> {
    let labels = a.quiver().vertices().to_vec();
    let pieces = combinatorial_tilting_complex(a, j)?;
    let complexes: Vec<ProjComplex> = pieces.iter().map(TwoTermComplex::complex).collect();
    let t = ProjComplex::direct_sum(&complexes.iter().collect::<Vec<_>>())?;
    let mut shift_dims = Vec::new();
    for s in -2..=2 {
        shift_dims.push((s, homotopy_hom(&t, &t, s)?));
    }
    let end_dim = shift_dims.iter().find(|&&(s, _)| s == 0).map(|&(_, d)| d).unwrap_or(0);

    let indecomposable = pieces.iter().enumerate().filter(|&(k, p)| is_indecomposable(p) && pieces[..k].iter().all(|o| o.vertex != p.vertex)).count();

    let simplified_form = if !j.is_empty() && ext1_vanishes_on(a, j)? {
        let mut ok = true;
        for p in pieces.iter().filter(|p| p.in_j) {
            let rad_dim = p.degree0.radical_vectors().len();
            let cover = p.degree0.radical().0.projective_cover();
            let mut expected = cover.summands.clone();
            let mut got = p.degree1_summands.clone();
            expected.sort_unstable();
            got.sort_unstable();
            let image = p.diff.rank();
            ok &= expected == got && image == rad_dim;
        }
        Some(ok)
    } else {
        None
    };

    Ok(TiltingReport {
        j: set_label(j, &labels),
        summands: pieces.iter().map(|p| p.describe(&labels)).collect(),
        shift_dims,
        end_dim,
        perversity: perversity_data(j, &labels),
        simplified_form,
        indecomposable_summands: indecomposable,
    })
}

/// A piece with indecomposable degree-0 term is indecomposable in `K^b`
/// when no summand of its degree-1 term is killed by the differential,
/// i.e. `ker d ⊆ rad Q`.
fn is_indecomposable(p: &TwoTermComplex) -> bool {
    if !p.in_j {
        return p.degree1_summands.len() == 1;
    }
    if p.degree0.top_dims().iter().sum::<usize>() != 1 {
        return false;
    }
    let q = &p.degree1;
    let rad = Echelon::from_vectors(q.field(), q.dim(), q.radical_vectors().iter());
    p.diff.nullspace().iter().all(|v| rad.contains(v))
}
