//! Built-in example bundles and a loader that turns a text document into
//! validated algebras, maps, modules, bimodules, bimodule maps and witnesses.

mod golden;
mod verify;

use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::bimod::{induce, make_bimodule_map, BimodError, Bimodule, BimoduleComplex, BimoduleHom, ElementSpec};
use crate::exactla::{Field, Matrix};
use crate::periodicity::{PeriodicityError, PeriodicityWitness};
use crate::qalg::expr::ParseError;
use crate::qalg::{Algebra, AlgebraMap, AlgebraSpec, AutomorphismSpec, QalgError, Quiver, SubalgebraSpec};
use crate::rep::{hom_module, hom_module_right, Module, RepError, Side};
use crate::text::{parse_document, BimapValue, Call, Document, ExplicitBody, Item};

pub use golden::{cycle_notation, golden_check, golden_tables, GoldenTables, LoewyGolden, TensorGolden};
pub use verify::{periodic_claims, verify_example, PeriodicClaims};

pub const EXAMPLES: [&str; 3] = ["s6", "s8", "toys"];

const S6: &str = include_str!("../../corpus/s6.pt");
const S8: &str = include_str!("../../corpus/s8.pt");
const TOYS: &str = include_str!("../../corpus/toys.pt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown example '{0}' (known: s6, s8, toys)")]
    UnknownExample(String),
    #[error("parse error at {}:{}: {}", .0.line, .0.col, .0.msg)]
    Parse(ParseError),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("{item}: {msg}")]
    Invalid { item: String, msg: String },
}

impl From<ParseError> for CorpusError {
    fn from(e: ParseError) -> Self {
        CorpusError::Parse(e)
    }
}

fn invalid(item: &str, msg: impl ToString) -> CorpusError {
    CorpusError::Invalid { item: item.to_string(), msg: msg.to_string() }
}

/// A bimodule map with the names of its source and target.
#[derive(Clone, Debug)]
pub struct NamedBimap {
    pub hom: BimoduleHom,
    pub src: String,
    pub dst: String,
}

/// Everything defined by one document, in definition order.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub source: String,
    pub document: Document,
    pub field: Field,
    pub algebras: IndexMap<String, Arc<Algebra>>,
    /// Algebra maps, automorphisms and subalgebra embeddings (under the
    /// subalgebra's name).
    pub maps: IndexMap<String, AlgebraMap>,
    pub modules: IndexMap<String, Module>,
    pub bimodules: IndexMap<String, Arc<Bimodule>>,
    pub bimaps: IndexMap<String, NamedBimap>,
    pub witnesses: IndexMap<String, PeriodicityWitness>,
}

pub fn example_source(name: &str) -> Result<&'static str, CorpusError> {
    match name {
        "s6" => Ok(S6),
        "s8" => Ok(S8),
        "toys" => Ok(TOYS),
        _ => Err(CorpusError::UnknownExample(name.to_string())),
    }
}

/// Loads and validates a built-in bundle.
pub fn load_example(name: &str) -> Result<Bundle, CorpusError> {
    load_bundle(name, example_source(name)?)
}

/// Parses a document and builds every object in it.
pub fn load_bundle(name: &str, src: &str) -> Result<Bundle, CorpusError> {
    let document = parse_document(src)?;
    let mut b = Bundle {
        name: name.to_string(),
        source: src.to_string(),
        document: document.clone(),
        field: Field::new(3).expect("prime"),
        algebras: IndexMap::new(),
        maps: IndexMap::new(),
        modules: IndexMap::new(),
        bimodules: IndexMap::new(),
        bimaps: IndexMap::new(),
        witnesses: IndexMap::new(),
    };
    for item in &document.items {
        b.add(item)?;
    }
    Ok(b)
}

fn call_name(c: &Call) -> Option<String> {
    match c {
        Call::Name(s) => Some(s.clone()),
        Call::Int(n) => Some(n.to_string()),
        Call::Apply(..) => None,
    }
}

fn side_arg(item: &str, args: &[Call], k: usize) -> Result<Side, CorpusError> {
    match args.get(k).and_then(call_name).as_deref() {
        None | Some("left") => Ok(Side::Left),
        Some("right") => Ok(Side::Right),
        Some(other) => Err(invalid(item, format!("expected 'left' or 'right', found '{other}'"))),
    }
}

impl Bundle {
    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra>, CorpusError> {
        self.algebras.get(name).ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&AlgebraMap, CorpusError> {
        self.maps.get(name).ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    pub fn module(&self, name: &str) -> Result<&Module, CorpusError> {
        self.modules.get(name).ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    pub fn bimodule(&self, name: &str) -> Result<&Arc<Bimodule>, CorpusError> {
        self.bimodules.get(name).ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    pub fn bimap(&self, name: &str) -> Result<&NamedBimap, CorpusError> {
        self.bimaps.get(name).ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    pub fn witness(&self, name: &str) -> Result<&PeriodicityWitness, CorpusError> {
        self.witnesses.get(name).ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    /// The algebra named `E`, or else the last one defined.
    pub fn main_algebra(&self) -> Option<&Arc<Algebra>> {
        self.algebras.get("E").or_else(|| self.algebras.values().last())
    }

    fn vertex(&self, item: &str, alg: &Algebra, c: &Call) -> Result<usize, CorpusError> {
        let label = call_name(c).ok_or_else(|| invalid(item, "expected a vertex label"))?;
        alg.quiver()
            .vertex_index(&label)
            .ok_or_else(|| invalid(item, format!("no vertex '{label}' in {}", alg.name())))
    }

    /// A named automorphism of `alg`, or `id`.
    fn twist_arg(&self, item: &str, alg: &Arc<Algebra>, c: &Call) -> Result<Option<AlgebraMap>, CorpusError> {
        let name = call_name(c).ok_or_else(|| invalid(item, "expected an automorphism name"))?;
        if name == "id" {
            return Ok(None);
        }
        let m = self.map(&name)?;
        if !Arc::ptr_eq(m.src(), alg) || !Arc::ptr_eq(m.dst(), alg) {
            return Err(invalid(item, format!("{name} is not an automorphism of {}", alg.name())));
        }
        Ok(Some(m.clone()))
    }

    fn add(&mut self, item: &Item) -> Result<(), CorpusError> {
        match item {
            Item::Field(p) => {
                self.field = Field::new(*p).map_err(|e| invalid("field", e))?;
            }
            Item::Algebra(d) => {
                let mut q = Quiver::new();
                for v in &d.vertices {
                    q.add_vertex(v).map_err(|e| invalid(&d.name, e))?;
                }
                for (n, s, t) in &d.arrows {
                    q.add_arrow(n, s, t).map_err(|e| invalid(&d.name, e))?;
                }
                let spec = AlgebraSpec {
                    name: d.name.clone(),
                    field: self.field,
                    quiver: q,
                    relations: d.relations.clone(),
                    vanish_distinct: d.vanish_distinct,
                    bound: d.bound,
                };
                let a = Algebra::build(spec).map_err(|e| invalid(&d.name, e))?;
                self.algebras.insert(d.name.clone(), Arc::new(a));
            }
            Item::Map(d) => {
                let src = self.algebra(&d.src)?.clone();
                let dst = self.algebra(&d.dst)?.clone();
                let m = AlgebraMap::from_exprs(&d.name, src, dst, &d.vertices, &d.arrows).map_err(|e| invalid(&d.name, e))?;
                self.maps.insert(d.name.clone(), m);
            }
            Item::Automorphism(d) => {
                let a = self.algebra(&d.algebra)?.clone();
                let spec = AutomorphismSpec { name: d.name.clone(), vertices: d.vertices.clone(), arrows: d.arrows.clone() };
                let m = AlgebraMap::automorphism(a, &spec).map_err(|e| invalid(&d.name, e))?;
                self.maps.insert(d.name.clone(), m);
            }
            Item::Subalgebra(d) => {
                let parent = self.algebra(&d.parent)?.clone();
                let spec = SubalgebraSpec { name: d.name.clone(), vertices: d.vertices.clone(), arrows: d.arrows.clone() };
                let (sub, emb) = AlgebraMap::subalgebra(parent, &spec).map_err(|e| invalid(&d.name, e))?;
                self.algebras.insert(d.name.clone(), sub);
                self.maps.insert(d.name.clone(), emb);
            }
            Item::Module(d) => {
                let m = match &d.body {
                    Some(body) => self.explicit_module(&d.name, &d.expr, body)?,
                    None => self.module_expr(&d.name, &d.expr)?,
                };
                self.modules.insert(d.name.clone(), m);
            }
            Item::Bimodule(d) => {
                let mut b = self.bimodule_expr(&d.name, &d.expr)?;
                b.set_name(&d.name);
                self.bimodules.insert(d.name.clone(), Arc::new(b));
            }
            Item::Bimap(d) => {
                let src = self.bimodule(&d.src)?.clone();
                let dst = self.bimodule(&d.dst)?.clone();
                let spec = |v: &BimapValue| match v {
                    BimapValue::Element(e) => ElementSpec::Algebra(e.clone()),
                    BimapValue::Tensor(t) => ElementSpec::Tensor(t.clone()),
                };
                let mut pairs = Vec::new();
                for (k, (l, r)) in d.assignments.iter().enumerate() {
                    let g = src.element(&spec(l)).map_err(|e| invalid(&d.name, format!("generator {}: {e}", k + 1)))?;
                    let v = dst.element(&spec(r)).map_err(|e| invalid(&d.name, format!("value {}: {e}", k + 1)))?;
                    pairs.push((g, v));
                }
                let hom = make_bimodule_map(&d.name, &src, &dst, &pairs).map_err(|e| invalid(&d.name, e))?;
                self.bimaps.insert(d.name.clone(), NamedBimap { hom, src: d.src.clone(), dst: d.dst.clone() });
            }
            Item::Witness(d) => {
                let w = self.witness_from_maps(&d.name, &d.algebra, &d.twist, &d.maps)?;
                self.witnesses.insert(d.name.clone(), w);
            }
        }
        Ok(())
    }

    /// Assembles and verifies `0 → σE → … → E → 0` from named maps.
    pub fn witness_from_maps(
        &self,
        name: &str,
        algebra: &str,
        twist: &str,
        maps: &[String],
    ) -> Result<PeriodicityWitness, CorpusError> {
        let alg = self.algebra(algebra)?.clone();
        let sigma = match self.twist_arg(name, &alg, &Call::Name(twist.to_string()))? {
            Some(s) => s,
            None => AlgebraMap::identity(alg.clone()),
        };
        let complex = self.complex_from_maps(name, maps)?;
        PeriodicityWitness::new(name, sigma, complex).map_err(|e| invalid(name, e))
    }

    /// The sequence of named bimodule maps, listed in arrow order.
    pub fn complex_from_maps(&self, name: &str, maps: &[String]) -> Result<BimoduleComplex, CorpusError> {
        let mut terms = Vec::new();
        let mut homs = Vec::new();
        for (k, m) in maps.iter().enumerate() {
            let nb = self.bimap(m)?;
            if k == 0 {
                terms.push(self.bimodule(&nb.src)?.clone());
            } else if self.bimap(&maps[k - 1])?.dst != nb.src {
                return Err(invalid(name, format!("{} does not start where {} ends", m, maps[k - 1])));
            }
            terms.push(self.bimodule(&nb.dst)?.clone());
            homs.push(nb.hom.clone());
        }
        BimoduleComplex::new(terms, homs).map_err(|e| invalid(name, e))
    }

    fn explicit_module(&self, item: &str, expr: &Call, body: &ExplicitBody) -> Result<Module, CorpusError> {
        let Call::Apply(f, args) = expr else {
            return Err(invalid(item, "an explicit body needs explicit(algebra, side)"));
        };
        if f != "explicit" || args.is_empty() {
            return Err(invalid(item, "an explicit body needs explicit(algebra, side)"));
        }
        let alg = self.algebra(&call_name(&args[0]).unwrap_or_default())?.clone();
        let side = side_arg(item, args, 1)?;
        let q = alg.quiver();
        if body.dims.len() != q.num_vertices() {
            return Err(invalid(item, format!("expected {} dims", q.num_vertices())));
        }
        let mut arrows: Vec<Matrix> = q
            .arrows()
            .iter()
            .map(|a| {
                let (from, to) = match side {
                    Side::Left => (a.source, a.target),
                    Side::Right => (a.target, a.source),
                };
                Matrix::zeros(alg.field(), body.dims[to], body.dims[from])
            })
            .collect();
        for (name, rows) in &body.arrows {
            let k = q.arrow_index(name).ok_or_else(|| invalid(item, format!("unknown arrow '{name}'")))?;
            let m = Matrix::from_i64_rows(alg.field(), rows).map_err(|e| invalid(item, e))?;
            if m.rows() != arrows[k].rows() || m.cols() != arrows[k].cols() {
                return Err(invalid(
                    item,
                    format!("arrow {name} needs a {}×{} matrix", arrows[k].rows(), arrows[k].cols()),
                ));
            }
            arrows[k] = m;
        }
        Module::new(alg, side, body.dims.clone(), arrows).map_err(|e| invalid(item, e))
    }

    /// Evaluates a module expression such as `omega(twist(M, sigma), 2)`.
    pub fn module_expr(&self, item: &str, c: &Call) -> Result<Module, CorpusError> {
        let rep = |e: RepError| invalid(item, e);
        let (f, args) = match c {
            Call::Name(n) => return self.module(n).cloned(),
            Call::Int(_) => return Err(invalid(item, "expected a module")),
            Call::Apply(f, args) => (f.as_str(), args.as_slice()),
        };
        let arity = |n: usize| {
            if args.len() < n {
                Err(invalid(item, format!("{f} needs {n} arguments")))
            } else {
                Ok(())
            }
        };
        let alg_arg = |k: usize| -> Result<Arc<Algebra>, CorpusError> {
            Ok(self.algebra(&call_name(&args[k]).unwrap_or_default())?.clone())
        };
        let int_arg = |k: usize| -> Result<usize, CorpusError> {
            match &args[k] {
                Call::Int(n) if *n >= 0 => Ok(*n as usize),
                _ => Err(invalid(item, format!("{f}: argument {} must be a non-negative integer", k + 1))),
            }
        };
        match f {
            "simple" | "projective" => {
                arity(2)?;
                let a = alg_arg(0)?;
                let v = self.vertex(item, &a, &args[1])?;
                let side = side_arg(item, args, 2)?;
                Ok(if f == "simple" { Module::simple(a, v, side) } else { Module::projective(a, v, side) })
            }
            "regular" | "zero" => {
                arity(1)?;
                let a = alg_arg(0)?;
                let side = side_arg(item, args, 1)?;
                Ok(if f == "regular" { Module::regular(a, side) } else { Module::zero(a, side) })
            }
            "hom" | "hom_right" => {
                arity(2)?;
                let phi = self.map(&call_name(&args[0]).unwrap_or_default())?;
                let x = self.module_expr(item, &args[1])?;
                if f == "hom" { hom_module(phi, &x) } else { hom_module_right(phi, &x) }.map_err(rep)
            }
            "twist" => {
                arity(2)?;
                let x = self.module_expr(item, &args[0])?;
                match self.twist_arg(item, x.algebra(), &args[1])? {
                    Some(s) => x.twist(&s).map_err(rep),
                    None => Ok(x),
                }
            }
            "restrict" => {
                arity(2)?;
                let x = self.module_expr(item, &args[0])?;
                let emb = self.map(&call_name(&args[1]).unwrap_or_default())?;
                x.restrict(emb).map_err(rep)
            }
            "induce" => {
                arity(2)?;
                let emb = self.map(&call_name(&args[0]).unwrap_or_default())?;
                let x = self.module_expr(item, &args[1])?;
                Ok(induce(emb, &x).map_err(|e| invalid(item, e))?.module)
            }
            "dual" => {
                arity(1)?;
                Ok(self.module_expr(item, &args[0])?.dual())
            }
            "omega" => {
                arity(1)?;
                let x = self.module_expr(item, &args[0])?;
                let n = if args.len() > 1 { int_arg(1)? } else { 1 };
                Ok(x.omega(n))
            }
            "radical" => {
                arity(1)?;
                Ok(self.module_expr(item, &args[0])?.radical().0)
            }
            "socle" => {
                arity(1)?;
                Ok(self.module_expr(item, &args[0])?.socle().0)
            }
            "top" => {
                arity(1)?;
                Ok(self.module_expr(item, &args[0])?.top().0)
            }
            "sum" => {
                arity(1)?;
                let parts = args.iter().map(|a| self.module_expr(item, a)).collect::<Result<Vec<_>, _>>()?;
                Module::direct_sum(&parts.iter().collect::<Vec<_>>()).map_err(rep)
            }
            "tensor" => {
                arity(2)?;
                let y = self.bimodule_arg(item, &args[0])?;
                let x = self.module_expr(item, &args[1])?;
                let res = match x.side() {
                    Side::Left => y.tensor_left_module(&x),
                    Side::Right => y.tensor_right_module(&x),
                };
                Ok(res.map_err(|e| invalid(item, e))?.0)
            }
            _ => Err(invalid(item, format!("unknown module constructor '{f}'"))),
        }
    }

    fn bimodule_arg(&self, item: &str, c: &Call) -> Result<Arc<Bimodule>, CorpusError> {
        if let Some(n) = call_name(c) {
            if let Some(b) = self.bimodules.get(&n) {
                return Ok(b.clone());
            }
            if let Some(a) = self.algebras.get(&n) {
                return Ok(Arc::new(Bimodule::regular(a.clone())));
            }
            return Err(CorpusError::UnknownName(n));
        }
        Ok(Arc::new(self.bimodule_expr(item, c)?))
    }

    /// Evaluates `regular(E)`, `twisted(E, s, t)` or `tensor(X, B, Y[, tau])`.
    pub fn bimodule_expr(&self, item: &str, c: &Call) -> Result<Bimodule, CorpusError> {
        let bim = |e: BimodError| invalid(item, e);
        let Call::Apply(f, args) = c else {
            return Ok((*self.bimodule_arg(item, c)?).clone());
        };
        match f.as_str() {
            "regular" if args.len() == 1 => {
                let a = self.algebra(&call_name(&args[0]).unwrap_or_default())?;
                Ok(Bimodule::regular(a.clone()))
            }
            "twisted" if args.len() == 3 => {
                let a = self.algebra(&call_name(&args[0]).unwrap_or_default())?.clone();
                let l = self.twist_arg(item, &a, &args[1])?;
                let r = self.twist_arg(item, &a, &args[2])?;
                Bimodule::twisted_regular(a, l.as_ref(), r.as_ref()).map_err(bim)
            }
            "tensor" if args.len() == 3 || args.len() == 4 => {
                let x = self.bimodule_arg(item, &args[0])?;
                let emb = self.map(&call_name(&args[1]).unwrap_or_default())?;
                let y = self.bimodule_arg(item, &args[2])?;
                let tw = match args.get(3) {
                    Some(t) => self.twist_arg(item, emb.src(), t)?,
                    None => None,
                };
                Bimodule::tensor(&x, emb, &y, tw.as_ref()).map_err(bim)
            }
            _ => Err(invalid(item, format!("unknown bimodule constructor '{c}'"))),
        }
    }
}

impl From<QalgError> for CorpusError {
    fn from(e: QalgError) -> Self {
        invalid("algebra", e)
    }
}

impl From<PeriodicityError> for CorpusError {
    fn from(e: PeriodicityError) -> Self {
        invalid("witness", e)
    }
}

#[cfg(test)]
mod tests;
