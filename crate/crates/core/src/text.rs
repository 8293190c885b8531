//! The line-oriented text format for algebras, maps, modules, bimodules,
//! bimodule maps and periodicity witnesses.
//!
//! ```text
//! field 3
//!
//! algebra E {
//!   vertices 1 2
//!   arrow a: 1 -> 2
//!   arrow b: 2 -> 1
//!   relation a*b*a
//!   relation b*a*b
//!   bound 5
//! }
//!
//! automorphism s of E {
//!   vertex 1 -> 2
//!   vertex 2 -> 1
//!   arrow a -> b
//!   arrow b -> a
//! }
//!
//! module S = simple(E, 1)
//! bimodule sE = twisted(E, s, id)
//! ```
//!
//! `a*b` is the product of `a` and `b`: the path through `b` and then `a`.
//! Statements inside a block end at the line break; a line that starts with
//! `+` or `-` continues the previous statement. `#` starts a comment. Inside
//! tensor expressions `(x)` (or `⊗`) is always the tensor sign.

use std::fmt;

use crate::qalg::expr::{is_ident_char, parse_expr_at, parse_tensor_expr_at, ParseError, TensorExpr};
use crate::qalg::Expr;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Field(u32),
    Algebra(AlgebraDecl),
    Map(MapDecl),
    Automorphism(AutomorphismDecl),
    Subalgebra(SubalgebraDecl),
    Module(ModuleDecl),
    Bimodule(BimoduleDecl),
    Bimap(BimapDecl),
    Witness(WitnessDecl),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Expr>,
    pub vanish_distinct: Option<usize>,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MapDecl {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub vertices: Vec<(String, Expr)>,
    pub arrows: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AutomorphismDecl {
    pub name: String,
    pub algebra: String,
    pub vertices: Vec<(String, String)>,
    pub arrows: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubalgebraDecl {
    pub name: String,
    pub parent: String,
    pub vertices: Vec<(String, Expr)>,
    pub arrows: Vec<(String, String, String, Expr)>,
}

/// `name(arg, ...)`, a bare name or an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Call {
    Int(i64),
    Name(String),
    Apply(String, Vec<Call>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitBody {
    pub dims: Vec<usize>,
    /// Row-major matrices, `dim(target) × dim(source)`.
    pub arrows: Vec<(String, Vec<Vec<i64>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub expr: Call,
    pub body: Option<ExplicitBody>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleDecl {
    pub name: String,
    pub expr: Call,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimapValue {
    Element(Expr),
    Tensor(TensorExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimapDecl {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub assignments: Vec<(BimapValue, BimapValue)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDecl {
    pub name: String,
    pub algebra: String,
    pub twist: String,
    /// Differentials from the left end of the sequence to the augmentation.
    pub maps: Vec<String>,
}

struct Line {
    no: usize,
    /// Column of the first character of `text`.
    col: usize,
    text: String,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, col, msg)
}

fn logical_lines(src: &str) -> Vec<Line> {
    let mut out: Vec<Line> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let no = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col = body.len() - trimmed.len() + 1;
        let text = trimmed.trim_end().to_string();
        if (text.starts_with('+') || text.starts_with('-')) && !out.is_empty() {
            let prev = out.last_mut().expect("nonempty");
            prev.text.push('\n');
            prev.text.push_str(&" ".repeat(col - 1));
            prev.text.push_str(&text);
            continue;
        }
        out.push(Line { no, col, text });
    }
    out
}

/// Cursor over one logical line, tracking the column for error messages.
struct Cur<'a> {
    line: &'a Line,
    pos: usize,
}

impl<'a> Cur<'a> {
    fn new(line: &'a Line) -> Self {
        Cur { line, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.line.text[self.pos..]
    }

    fn loc(&self) -> (usize, usize) {
        let before = &self.line.text[..self.pos];
        let extra_lines = before.matches('\n').count();
        let col = match before.rfind('\n') {
            Some(k) => before[k + 1..].chars().count() + 1,
            None => self.line.col + before.chars().count(),
        };
        (self.line.no + extra_lines, col)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.loc();
        err(l, c, msg)
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let r = self.rest();
        let n: usize = r.chars().take_while(|&c| is_ident_char(c) || c == '.').map(char::len_utf8).sum();
        if n == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += n;
        Ok(r[..n].to_string())
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let r = self.rest();
        let ok = r.starts_with(kw) && !r[kw.len()..].chars().next().is_some_and(is_ident_char);
        if !ok {
            return Err(self.error(format!("expected '{kw}'")));
        }
        self.pos += kw.len();
        Ok(())
    }

    fn symbol(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if !self.rest().starts_with(s) {
            return Err(self.error(format!("expected '{s}'")));
        }
        self.pos += s.len();
        Ok(())
    }

    fn try_symbol(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let r = self.rest();
        let neg = r.starts_with('-');
        let digits: usize = r[neg as usize..].chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let n = neg as usize + digits;
        let v = r[..n].parse().map_err(|_| self.error("integer out of range"))?;
        self.pos += n;
        Ok(v)
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if !self.at_end() {
            return Err(self.error(format!("unexpected '{}'", self.rest())));
        }
        Ok(())
    }

    /// Parses the rest of the line (up to `stop`, if given) as an expression.
    fn expr_until(&mut self, stop: Option<&str>) -> Result<Expr, ParseError> {
        self.skip_ws();
        let (l, c) = self.loc();
        let r = self.rest();
        let end = stop.and_then(|s| r.find(s)).unwrap_or(r.len());
        let e = parse_expr_at(&r[..end], l, c)?;
        self.pos += end;
        Ok(e)
    }

    fn value_until(&mut self, stop: Option<&str>) -> Result<BimapValue, ParseError> {
        self.skip_ws();
        let (l, c) = self.loc();
        let r = self.rest();
        let end = stop.and_then(|s| r.find(s)).unwrap_or(r.len());
        let piece = &r[..end];
        let v = if piece.contains("(x)") || piece.contains('⊗') {
            BimapValue::Tensor(parse_tensor_expr_at(piece, l, c)?)
        } else {
            BimapValue::Element(parse_expr_at(piece, l, c)?)
        };
        self.pos += end;
        Ok(v)
    }

    fn call(&mut self) -> Result<Call, ParseError> {
        self.skip_ws();
        if self.rest().starts_with(|c: char| c.is_ascii_digit() || c == '-') {
            return Ok(Call::Int(self.integer()?));
        }
        let name = self.ident()?;
        if !self.try_symbol("(") {
            return Ok(Call::Name(name));
        }
        let mut args = Vec::new();
        if !self.try_symbol(")") {
            loop {
                args.push(self.call()?);
                if self.try_symbol(")") {
                    break;
                }
                self.symbol(",")?;
            }
        }
        Ok(Call::Apply(name, args))
    }
}

/// Indices of the lines of a `{ ... }` block; the opening brace ends the header line.
fn block(lines: &[Line], i: &mut usize, header: &Line) -> Result<Vec<usize>, ParseError> {
    let mut body = Vec::new();
    loop {
        let Some(l) = lines.get(*i) else {
            return Err(err(header.no, header.col, "unterminated block"));
        };
        *i += 1;
        if l.text == "}" {
            return Ok(body);
        }
        body.push(*i - 1);
    }
}

pub fn parse_document(src: &str) -> Result<Document, ParseError> {
    let lines = logical_lines(src);
    let mut i = 0;
    let mut items = Vec::new();
    while i < lines.len() {
        let line = &lines[i];
        i += 1;
        let mut c = Cur::new(line);
        let kw = c.ident()?;
        let item = match kw.as_str() {
            "field" => {
                let v = c.integer()?;
                c.expect_end()?;
                if v < 2 {
                    return Err(err(line.no, line.col, "field characteristic must be at least 2"));
                }
                Item::Field(v as u32)
            }
            "algebra" => {
                let name = c.ident()?;
                c.symbol("{")?;
                c.expect_end()?;
                let body = block(&lines, &mut i, line)?;
                Item::Algebra(parse_algebra_body(name, &lines, &body, line)?)
            }
            "map" => {
                let name = c.ident()?;
                c.symbol(":")?;
                let src = c.ident()?;
                c.symbol("->")?;
                let dst = c.ident()?;
                c.symbol("{")?;
                c.expect_end()?;
                let body = block(&lines, &mut i, line)?;
                let mut d = MapDecl { name, src, dst, ..Default::default() };
                for &bi in &body {
                    let bl = &lines[bi];
                    let mut bc = Cur::new(bl);
                    match bc.ident()?.as_str() {
                        "vertex" => {
                            let v = bc.ident()?;
                            bc.symbol("->")?;
                            d.vertices.push((v, bc.expr_until(None)?));
                        }
                        "arrow" => {
                            let a = bc.ident()?;
                            bc.symbol("->")?;
                            d.arrows.push((a, bc.expr_until(None)?));
                        }
                        other => return Err(err(bl.no, bl.col, format!("unknown map statement '{other}'"))),
                    }
                }
                Item::Map(d)
            }
            "automorphism" => {
                let name = c.ident()?;
                c.keyword("of")?;
                let algebra = c.ident()?;
                c.symbol("{")?;
                c.expect_end()?;
                let body = block(&lines, &mut i, line)?;
                let mut d = AutomorphismDecl { name, algebra, ..Default::default() };
                for &bi in &body {
                    let bl = &lines[bi];
                    let mut bc = Cur::new(bl);
                    match bc.ident()?.as_str() {
                        "vertex" => {
                            let v = bc.ident()?;
                            bc.symbol("->")?;
                            let w = bc.ident()?;
                            bc.expect_end()?;
                            d.vertices.push((v, w));
                        }
                        "arrow" => {
                            let a = bc.ident()?;
                            bc.symbol("->")?;
                            d.arrows.push((a, bc.expr_until(None)?));
                        }
                        other => {
                            return Err(err(bl.no, bl.col, format!("unknown automorphism statement '{other}'")))
                        }
                    }
                }
                Item::Automorphism(d)
            }
            "subalgebra" => {
                let name = c.ident()?;
                c.keyword("of")?;
                let parent = c.ident()?;
                c.symbol("{")?;
                c.expect_end()?;
                let body = block(&lines, &mut i, line)?;
                let mut d = SubalgebraDecl { name, parent, ..Default::default() };
                for &bi in &body {
                    let bl = &lines[bi];
                    let mut bc = Cur::new(bl);
                    match bc.ident()?.as_str() {
                        "vertex" => {
                            let v = bc.ident()?;
                            bc.symbol("=")?;
                            d.vertices.push((v, bc.expr_until(None)?));
                        }
                        "arrow" => {
                            let a = bc.ident()?;
                            bc.symbol(":")?;
                            let s = bc.ident()?;
                            bc.symbol("->")?;
                            let t = bc.ident()?;
                            bc.symbol("=")?;
                            d.arrows.push((a, s, t, bc.expr_until(None)?));
                        }
                        other => {
                            return Err(err(bl.no, bl.col, format!("unknown subalgebra statement '{other}'")))
                        }
                    }
                }
                Item::Subalgebra(d)
            }
            "module" => {
                let name = c.ident()?;
                c.symbol("=")?;
                let expr = c.call()?;
                let body = if c.try_symbol("{") {
                    c.expect_end()?;
                    let rows = block(&lines, &mut i, line)?;
                    Some(parse_explicit_body(&lines, &rows)?)
                } else {
                    c.expect_end()?;
                    None
                };
                Item::Module(ModuleDecl { name, expr, body })
            }
            "bimodule" => {
                let name = c.ident()?;
                c.symbol("=")?;
                let expr = c.call()?;
                c.expect_end()?;
                Item::Bimodule(BimoduleDecl { name, expr })
            }
            "bimap" => {
                let name = c.ident()?;
                c.symbol(":")?;
                let src = c.ident()?;
                c.symbol("->")?;
                let dst = c.ident()?;
                c.symbol("{")?;
                c.expect_end()?;
                let body = block(&lines, &mut i, line)?;
                let mut assignments = Vec::new();
                for &bi in &body {
                    let bl = &lines[bi];
                    let mut bc = Cur::new(bl);
                    let lhs = bc.value_until(Some("|->"))?;
                    bc.symbol("|->")?;
                    let rhs = bc.value_until(None)?;
                    assignments.push((lhs, rhs));
                }
                Item::Bimap(BimapDecl { name, src, dst, assignments })
            }
            "witness" => {
                let name = c.ident()?;
                c.keyword("of")?;
                let algebra = c.ident()?;
                c.keyword("twist")?;
                let twist = c.ident()?;
                c.symbol("=")?;
                let mut maps = vec![c.ident()?];
                while c.try_symbol(",") {
                    maps.push(c.ident()?);
                }
                c.expect_end()?;
                Item::Witness(WitnessDecl { name, algebra, twist, maps })
            }
            other => return Err(err(line.no, line.col, format!("unknown statement '{other}'"))),
        };
        items.push(item);
    }
    Ok(Document { items })
}

fn parse_algebra_body(name: String, lines: &[Line], body: &[usize], header: &Line) -> Result<AlgebraDecl, ParseError> {
    let mut d = AlgebraDecl { name, ..Default::default() };
    let mut bound = None;
    for &bi in body {
        let bl = &lines[bi];
        let mut bc = Cur::new(bl);
        match bc.ident()?.as_str() {
            "vertices" => {
                while !bc.at_end() {
                    d.vertices.push(bc.ident()?);
                }
            }
            "arrow" => {
                let a = bc.ident()?;
                bc.symbol(":")?;
                let s = bc.ident()?;
                bc.symbol("->")?;
                let t = bc.ident()?;
                bc.expect_end()?;
                d.arrows.push((a, s, t));
            }
            "relation" => d.relations.push(bc.expr_until(None)?),
            "vanish" => {
                bc.keyword("distinct")?;
                let n = bc.integer()?;
                bc.expect_end()?;
                d.vanish_distinct = Some(n.max(0) as usize);
            }
            "bound" => {
                let n = bc.integer()?;
                bc.expect_end()?;
                bound = Some(n.max(0) as usize);
            }
            other => return Err(err(bl.no, bl.col, format!("unknown algebra statement '{other}'"))),
        }
    }
    d.bound = bound.ok_or_else(|| err(header.no, header.col, format!("algebra {} has no bound", d.name)))?;
    Ok(d)
}

fn parse_explicit_body(lines: &[Line], body: &[usize]) -> Result<ExplicitBody, ParseError> {
    let mut dims = None;
    let mut arrows = Vec::new();
    for &bi in body {
        let bl = &lines[bi];
        let mut bc = Cur::new(bl);
        match bc.ident()?.as_str() {
            "dims" => {
                let mut v = Vec::new();
                while !bc.at_end() {
                    v.push(bc.integer()?.max(0) as usize);
                }
                dims = Some(v);
            }
            "arrow" => {
                let a = bc.ident()?;
                bc.symbol("=")?;
                bc.symbol("[")?;
                let mut rows: Vec<Vec<i64>> = Vec::new();
                let mut row = Vec::new();
                loop {
                    if bc.try_symbol("]") {
                        break;
                    }
                    if bc.try_symbol(";") {
                        rows.push(std::mem::take(&mut row));
                        continue;
                    }
                    row.push(bc.integer()?);
                }
                if !row.is_empty() || !rows.is_empty() {
                    rows.push(row);
                }
                bc.expect_end()?;
                arrows.push((a, rows));
            }
            other => return Err(err(bl.no, bl.col, format!("unknown module statement '{other}'"))),
        }
    }
    let dims = dims.ok_or_else(|| {
        let l = body.first().map_or((0, 0), |&b| (lines[b].no, lines[b].col));
        err(l.0, l.1, "explicit module without dims")
    })?;
    Ok(ExplicitBody { dims, arrows })
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Call::Int(n) => write!(f, "{n}"),
            Call::Name(s) => write!(f, "{s}"),
            Call::Apply(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for BimapValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimapValue::Element(e) => write!(f, "{e}"),
            BimapValue::Tensor(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for Document {
    /// Canonical form: one statement per line, two-space indentation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match item {
                Item::Field(p) => writeln!(f, "field {p}")?,
                Item::Algebra(a) => {
                    writeln!(f, "algebra {} {{", a.name)?;
                    writeln!(f, "  vertices {}", a.vertices.join(" "))?;
                    for (n, s, t) in &a.arrows {
                        writeln!(f, "  arrow {n}: {s} -> {t}")?;
                    }
                    for r in &a.relations {
                        writeln!(f, "  relation {r}")?;
                    }
                    if let Some(l) = a.vanish_distinct {
                        writeln!(f, "  vanish distinct {l}")?;
                    }
                    writeln!(f, "  bound {}", a.bound)?;
                    writeln!(f, "}}")?;
                }
                Item::Map(m) => {
                    writeln!(f, "map {}: {} -> {} {{", m.name, m.src, m.dst)?;
                    for (v, e) in &m.vertices {
                        writeln!(f, "  vertex {v} -> {e}")?;
                    }
                    for (a, e) in &m.arrows {
                        writeln!(f, "  arrow {a} -> {e}")?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Automorphism(m) => {
                    writeln!(f, "automorphism {} of {} {{", m.name, m.algebra)?;
                    for (v, w) in &m.vertices {
                        writeln!(f, "  vertex {v} -> {w}")?;
                    }
                    for (a, e) in &m.arrows {
                        writeln!(f, "  arrow {a} -> {e}")?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Subalgebra(s) => {
                    writeln!(f, "subalgebra {} of {} {{", s.name, s.parent)?;
                    for (v, e) in &s.vertices {
                        writeln!(f, "  vertex {v} = {e}")?;
                    }
                    for (a, src, dst, e) in &s.arrows {
                        writeln!(f, "  arrow {a}: {src} -> {dst} = {e}")?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Module(m) => match &m.body {
                    None => writeln!(f, "module {} = {}", m.name, m.expr)?,
                    Some(b) => {
                        writeln!(f, "module {} = {} {{", m.name, m.expr)?;
                        let dims: Vec<String> = b.dims.iter().map(|d| d.to_string()).collect();
                        writeln!(f, "  dims {}", dims.join(" "))?;
                        for (a, rows) in &b.arrows {
                            let rs: Vec<String> = rows
                                .iter()
                                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                                .collect();
                            writeln!(f, "  arrow {a} = [{}]", rs.join("; "))?;
                        }
                        writeln!(f, "}}")?;
                    }
                },
                Item::Bimodule(b) => writeln!(f, "bimodule {} = {}", b.name, b.expr)?,
                Item::Bimap(m) => {
                    writeln!(f, "bimap {}: {} -> {} {{", m.name, m.src, m.dst)?;
                    for (l, r) in &m.assignments {
                        writeln!(f, "  {l} |-> {r}")?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Witness(w) => {
                    writeln!(f, "witness {} of {} twist {} = {}", w.name, w.algebra, w.twist, w.maps.join(", "))?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
field 3
algebra K {
  vertices 1
  arrow x: 1 -> 1
  relation x*x*x   # truncated
  bound 5
}
automorphism neg of K {
  arrow x -> -x
}
module P = projective(K, 1)
module X = explicit(K, left) {
  dims 2
  arrow x = [0 0; 1 0]
}
bimodule R = twisted(K, neg, id)
bimap d: R -> R {
  1 |-> e_1
    + x*x
}
witness W of K twist neg = d
";

    #[test]
    fn parses_and_round_trips() {
        let doc = parse_document(SAMPLE).unwrap();
        assert_eq!(doc.items.len(), 8);
        let Item::Bimap(b) = &doc.items[6] else { panic!() };
        assert_eq!(b.assignments[0].1.to_string(), "e_1 + x*x");
        let Item::Module(m) = &doc.items[4] else { panic!() };
        assert_eq!(m.body.as_ref().unwrap().arrows[0].1, vec![vec![0, 0], vec![1, 0]]);
        let again = parse_document(&doc.to_string()).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn error_positions() {
        let e = parse_document("field 3\nalgebra K {\n  vertices 1\n  relation x * * x\n  bound 3\n}\n").unwrap_err();
        assert_eq!((e.line, e.col), (4, 16));
        let e = parse_document("field 3\nalgebra K {\n  vertices 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_document("frobnicate\n").unwrap_err();
        assert!(e.msg.contains("unknown statement"));
    }
}
