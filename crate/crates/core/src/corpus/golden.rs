//! Expected values for the built-in bundles: Loewy tables, dimensions,
//! permutations, resolution shapes and the terms of the sequences obtained by
//! tensoring a witness with each simple module.

use super::Bundle;
use crate::bimod::is_relatively_projective;
use crate::rep::{check_corner_presentation, is_isomorphic, LoewyTable, Module, Side};
use crate::report::{Assertion, Report};

type Rows = &'static [&'static [&'static str]];

pub struct LoewyGolden {
    pub module: &'static str,
    pub rows: Rows,
    /// Socle series coincides with the Loewy series.
    pub coinciding: bool,
    pub reference: &'static str,
}

pub struct TensorGolden {
    pub witness: &'static str,
    /// Vertex label of the simple module.
    pub simple: &'static str,
    /// Named modules, left end first.
    pub terms: &'static [&'static str],
}

pub struct GoldenTables {
    pub loewy: Vec<LoewyGolden>,
    pub algebra_dims: Vec<(&'static str, usize)>,
    pub module_dims: Vec<(&'static str, usize)>,
    /// Automorphism name and its action on vertex labels in cycle notation.
    pub permutations: Vec<(&'static str, &'static str)>,
    /// Module and the top of each successive syzygy.
    pub resolution: Option<(&'static str, Rows)>,
    pub tensor: Vec<TensorGolden>,
    /// Subalgebra name and modules that are relatively projective over it.
    pub relative: Vec<(&'static str, &'static [&'static str])>,
    /// Subalgebra name and modules whose restriction to it is projective.
    pub restricted_projective: Vec<(&'static str, &'static [&'static str])>,
    /// Maps presenting an algebra as a corner `eAe`.
    pub corners: Vec<&'static str>,
}

fn lg(module: &'static str, rows: Rows, coinciding: bool, reference: &'static str) -> LoewyGolden {
    LoewyGolden { module, rows, coinciding, reference }
}

fn tg(witness: &'static str, simple: &'static str, terms: &'static [&'static str]) -> TensorGolden {
    TensorGolden { witness, simple, terms }
}

pub fn golden_tables(name: &str) -> Option<GoldenTables> {
    match name {
        "s6" => Some(s6()),
        "s8" => Some(s8()),
        "toys" => Some(toys()),
        _ => None,
    }
}

fn s6() -> GoldenTables {
    let e = "projective E-module display";
    GoldenTables {
        loewy: vec![
            lg("P1", &[&["1"], &["2", "5"], &["1", "4", "1"], &["5", "2"], &["1"]], true, e),
            lg("P2", &[&["2"], &["1", "4"], &["2", "5", "2"], &["4", "1"], &["2"]], true, e),
            lg("P4", &[&["4"], &["2", "5"], &["4", "1", "4"], &["5", "2"], &["4"]], true, e),
            lg("P5", &[&["5"], &["1", "4"], &["5", "2", "5"], &["4", "1"], &["5"]], true, e),
            lg("M", &[&["2", "5"], &["1", "4"], &["2", "5"]], true, "M display"),
            lg("Q1", &[&["1"], &["5"], &["1"]], true, "projective B-module display"),
            lg("Q2", &[&["2"], &["4"], &["2"]], true, "projective B-module display"),
            lg("Q4", &[&["4"], &["2"], &["4"]], true, "projective B-module display"),
            lg("Q5", &[&["5"], &["1"], &["5"]], true, "projective B-module display"),
            lg("U1", &[&["1"], &["2"], &["1"]], true, "U display"),
            lg("U2", &[&["2"], &["1"], &["2"]], true, "U display"),
            lg("U4", &[&["4"], &["5"], &["4"]], true, "U display"),
            lg("U5", &[&["5"], &["4"], &["5"]], true, "U display"),
        ],
        algebra_dims: vec![("E", 36), ("B", 12)],
        module_dims: vec![("M", 6), ("P1", 9), ("P2", 9), ("P4", 9), ("P5", 9), ("Q1", 3), ("Q2", 3), ("Q4", 3), ("Q5", 3)],
        permutations: vec![("sigma", "(1,2)(4,5)")],
        resolution: Some(("M", &[&["2", "5"], &["1", "4"]])),
        tensor: vec![
            tg("W", "1", &["S2", "U2", "U1", "S1"]),
            tg("W", "2", &["S1", "U1", "U2", "S2"]),
            tg("W", "4", &["S5", "U5", "U4", "S4"]),
            tg("W", "5", &["S4", "U4", "U5", "S5"]),
        ],
        relative: vec![("B", &["U1", "U2", "U4", "U5"])],
        restricted_projective: vec![("B", &["M"])],
        corners: vec!["phi"],
    }
}

fn s8() -> GoldenTables {
    let e = "projective E-module display";
    GoldenTables {
        loewy: vec![
            lg("P2", &[&["2"], &["3"], &["2", "4"], &["3"], &["2"]], true, e),
            lg("P3", &[&["3"], &["2", "4"], &["3", "5", "3"], &["4", "2"], &["3"]], true, e),
            lg("P4", &[&["4"], &["3", "5"], &["4", "2", "4"], &["5", "3"], &["4"]], true, e),
            lg("P5", &[&["5"], &["4"], &["3", "5"], &["4"], &["5"]], true, e),
            lg("M", &[&["3", "5"], &["2", "4"], &["3", "5"]], true, "M display"),
            lg("U24", &[&["2", "4"], &["3"], &["2", "4"]], false, "U display"),
            lg("U35", &[&["3", "5"], &["4"], &["3", "5"]], false, "U display"),
            lg("V3", &[&["3"], &["2"], &["3"]], false, "V display"),
            lg("V4", &[&["4"], &["5"], &["4"]], false, "V display"),
        ],
        algebra_dims: vec![("E", 30)],
        module_dims: vec![("M", 6), ("P2", 6), ("P3", 9), ("P4", 9), ("P5", 6), ("U24", 5), ("U35", 5), ("V3", 3), ("V4", 3)],
        permutations: vec![("sigma", "(2,5)(3,4)"), ("tau", "(2,4)(3,5)")],
        resolution: Some(("M", &[&["3", "5"], &["4", "3"], &["2", "4"]])),
        tensor: vec![
            tg("W", "2", &["S5", "P5", "P4", "U24", "S2"]),
            tg("W", "3", &["S4", "V4", "P5", "U35", "S3"]),
            tg("W", "4", &["S3", "V3", "P2", "U24", "S4"]),
            tg("W", "5", &["S2", "P2", "P3", "U35", "S5"]),
        ],
        relative: vec![("B", &["U24", "U35"]), ("C", &["P2", "P5", "V3", "V4"])],
        restricted_projective: vec![("B", &["M"]), ("C", &["M"])],
        corners: vec!["phi"],
    }
}

fn toys() -> GoldenTables {
    GoldenTables {
        loewy: vec![
            lg("P1", &[&["1"], &["2"], &["1"]], true, "Brauer star projective"),
            lg("P2", &[&["2"], &["1"], &["2"]], true, "Brauer star projective"),
        ],
        algebra_dims: vec![("K", 3), ("A21", 6), ("A2", 3)],
        module_dims: vec![("SK", 1), ("P1", 3), ("P2", 3)],
        permutations: vec![("swap", "(1,2)")],
        resolution: Some(("S1", &[&["1"], &["2"], &["2"]])),
        tensor: vec![tg("W", "1", &["SK", "PK", "PK", "SK"])],
        relative: vec![],
        restricted_projective: vec![],
        corners: vec![],
    }
}

/// Cycle notation of a vertex permutation, fixed points omitted.
pub fn cycle_notation(perm: &[usize], labels: &[&str]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(labels[v]);
            v = perm[v];
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn labels(m: &Module) -> Vec<String> {
    m.algebra().quiver().vertices().to_vec()
}

fn missing(label: String, what: &str) -> Assertion {
    Assertion::new(label, false).detail(format!("{what} is not defined in the bundle"))
}

/// Compares a bundle against its embedded expected values. Mismatches are
/// failed assertions naming the display they contradict.
pub fn golden_check(b: &Bundle) -> Report {
    let mut r = Report::new(format!("golden values for {}", b.name));
    let Some(g) = golden_tables(&b.name) else {
        r.push(Assertion::new("golden tables", false).detail(format!("no golden tables for '{}'", b.name)));
        return r;
    };
    for l in &g.loewy {
        let label = format!("Loewy series of {}", l.module);
        let Ok(m) = b.module(l.module) else {
            r.push(missing(label, l.module));
            continue;
        };
        let want = LoewyTable::from_rows(&labels(m), l.rows);
        let got = m.loewy_series();
        let ok = want.as_ref() == Some(&got);
        r.push(
            Assertion::new(label, ok)
                .reference(l.reference)
                .ledger(got.layers.iter().map(|x| x.iter().sum()).collect())
                .detail(if ok { String::new() } else { format!("computed\n{got}") }),
        );
        if l.coinciding {
            let soc = m.socle_series();
            let ok = soc == got;
            r.push(
                Assertion::new(format!("socle series of {} coincides", l.module), ok)
                    .reference(l.reference)
                    .detail(if ok { String::new() } else { format!("socle series\n{soc}") }),
            );
        }
    }
    for &(name, dim) in &g.algebra_dims {
        let label = format!("dim {name} = {dim}");
        match b.algebra(name) {
            Ok(a) => r.push(Assertion::new(label, a.dim() == dim).ledger(vec![a.dim()])),
            Err(_) => r.push(missing(label, name)),
        }
    }
    for &(name, dim) in &g.module_dims {
        let label = format!("dim {name} = {dim}");
        match b.module(name) {
            Ok(m) => r.push(Assertion::new(label, m.dim() == dim).ledger(vec![m.dim()])),
            Err(_) => r.push(missing(label, name)),
        }
    }
    for &(name, want) in &g.permutations {
        let label = format!("{name} permutes vertices as {want}");
        let Ok(s) = b.map(name) else {
            r.push(missing(label, name));
            continue;
        };
        let got = match s.vertex_permutation() {
            Some(p) => {
                let vs: Vec<&str> = s.src().quiver().vertices().iter().map(String::as_str).collect();
                cycle_notation(&p, &vs)
            }
            None => "not a vertex permutation".into(),
        };
        r.push(Assertion::new(label, got == want).detail(if got == want { String::new() } else { format!("computed {got}") }));
    }
    if let Some((name, tops)) = g.resolution {
        let label = format!("projective resolution shape of {name}");
        match b.module(name) {
            Ok(m) => {
                let lab = labels(m);
                let mut cur = m.clone();
                let mut ok = true;
                let mut dims = Vec::new();
                let mut got = Vec::new();
                for row in tops {
                    let want = LoewyTable::from_rows(&lab, &[row]).map(|t| t.layers[0].clone());
                    let top = cur.top_dims();
                    ok &= want.as_ref() == Some(&top);
                    got.push(LoewyTable { labels: lab.clone(), layers: vec![top] }.rows()[0].join(" "));
                    dims.push(cur.dim());
                    cur = cur.omega1();
                }
                r.push(
                    Assertion::new(label, ok)
                        .reference("truncated projective resolution display")
                        .ledger(dims)
                        .detail(if ok { String::new() } else { format!("cover tops {}", got.join(" <- ")) }),
                );
            }
            Err(_) => r.push(missing(label, name)),
        }
    }
    for t in &g.tensor {
        check_tensor_sequence(b, t, &mut r);
    }
    for &(sub, mods) in &g.relative {
        let Ok(emb) = b.map(sub) else {
            r.push(missing(format!("relatively {sub}-projective"), sub));
            continue;
        };
        for &name in mods {
            let label = format!("{name} relatively {sub}-projective");
            match b.module(name) {
                Ok(m) => {
                    let ok = is_relatively_projective(emb, m);
                    r.push(match ok {
                        Ok(ok) => Assertion::new(label, ok),
                        Err(e) => Assertion::new(label, false).detail(e.to_string()),
                    });
                }
                Err(_) => r.push(missing(label, name)),
            }
        }
    }
    for &(sub, mods) in &g.restricted_projective {
        let Ok(emb) = b.map(sub) else {
            r.push(missing(format!("projective over {sub}"), sub));
            continue;
        };
        for &name in mods {
            let label = format!("{name} projective over {sub}");
            match b.module(name) {
                Ok(m) => r.push(match m.restrict(emb) {
                    Ok(res) => Assertion::new(label, res.is_projective()).ledger(vec![res.dim()]),
                    Err(e) => Assertion::new(label, false).detail(e.to_string()),
                }),
                Err(_) => r.push(missing(label, name)),
            }
        }
    }
    for &name in &g.corners {
        let label = format!("{name} presents the endomorphism ring");
        match b.map(name) {
            Ok(phi) => {
                let res = check_corner_presentation(phi);
                r.push(Assertion::new(label, res.is_ok()).ledger(vec![phi.src().dim(), phi.dst().dim()]).detail(
                    match res {
                        Ok(()) => String::new(),
                        Err(e) => e.to_string(),
                    },
                ));
            }
            Err(_) => r.push(missing(label, name)),
        }
    }
    r
}

fn check_tensor_sequence(b: &Bundle, t: &TensorGolden, r: &mut Report) {
    let label = format!("{} ⊗ S{} = {}", t.witness, t.simple, t.terms.join(" → "));
    let Ok(w) = b.witness(t.witness) else {
        r.push(missing(label, t.witness));
        return;
    };
    let alg = w.algebra();
    let Some(v) = alg.quiver().vertex_index(t.simple) else {
        r.push(missing(label, t.simple));
        return;
    };
    let s = Module::simple(alg.clone(), v, Side::Left);
    let c = match w.complex.tensor_left_module(&s) {
        Ok(c) => c,
        Err(e) => {
            r.push(Assertion::new(label, false).detail(e.to_string()));
            return;
        }
    };
    let dims: Vec<usize> = c.terms.iter().map(|m| m.dim()).collect();
    if c.terms.len() != t.terms.len() {
        r.push(Assertion::new(label, false).ledger(dims).detail("wrong number of terms"));
        return;
    }
    let mut bad = Vec::new();
    for (k, (term, &name)) in c.terms.iter().zip(t.terms).enumerate() {
        let ok = match b.module(name) {
            Ok(m) => is_isomorphic(term, m, 0).map(|v| v.is_isomorphic()).unwrap_or(false),
            Err(_) => false,
        };
        if !ok {
            bad.push(format!("term {k} is not {name}"));
        }
    }
    let exact = c.homology_dims().map(|h| h.iter().all(|&d| d == 0)).unwrap_or(false);
    if !exact {
        bad.push("not exact".into());
    }
    r.push(
        Assertion::new(label, bad.is_empty())
            .reference("sequences from tensoring with simple modules")
            .ledger(dims)
            .detail(bad.join("; ")),
    );
}
