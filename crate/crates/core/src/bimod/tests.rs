use std::sync::Arc;

use super::*;
use crate::exactla::Field;
use crate::qalg::expr::{parse_expr, parse_tensor_expr};
use crate::qalg::{AlgebraSpec, Quiver, SubalgebraSpec};

fn build(vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str], bound: usize) -> Arc<Algebra> {
    let mut q = Quiver::new();
    for v in vs {
        q.add_vertex(v).unwrap();
    }
    for (n, s, t) in arrows {
        q.add_arrow(n, s, t).unwrap();
    }
    let spec = AlgebraSpec {
        name: "E".into(),
        field: Field::new(3).unwrap(),
        quiver: q,
        relations: rels.iter().map(|r| parse_expr(r).unwrap()).collect(),
        vanish_distinct: None,
        bound,
    };
    Arc::new(Algebra::build(spec).unwrap())
}

fn star() -> Arc<Algebra> {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a*b*a", "b*a*b"], 5)
}

fn kx3() -> Arc<Algebra> {
    build(&["1"], &[("x", "1", "1")], &["x*x*x"], 5)
}

fn idempotent_subalgebra(a: &Arc<Algebra>) -> AlgebraMap {
    let spec = SubalgebraSpec {
        name: "D".into(),
        vertices: a
            .quiver()
            .vertices()
            .iter()
            .map(|v| (v.clone(), parse_expr(&format!("e_{v}")).unwrap()))
            .collect(),
        arrows: Vec::new(),
    };
    AlgebraMap::subalgebra(a.clone(), &spec).unwrap().1
}

fn t(b: &Bimodule, s: &str) -> Vec<u32> {
    b.element(&ElementSpec::Tensor(parse_tensor_expr(s).unwrap())).unwrap()
}

fn e(b: &Bimodule, s: &str) -> Vec<u32> {
    b.element(&ElementSpec::Algebra(parse_expr(s).unwrap())).unwrap()
}

#[test]
fn tensor_over_the_whole_algebra() {
    let a = star();
    let reg = Bimodule::regular(a.clone());
    let id = AlgebraMap::identity(a.clone());
    let tt = Bimodule::tensor(&reg, &id, &reg, None).unwrap();
    assert_eq!(tt.dim(), a.dim());
    let mult = make_bimodule_map("m", &tt, &reg, &[(t(&tt, "1 (x) 1"), e(&reg, "1"))]).unwrap();
    assert!(mult.is_bimodule_map(&tt, &reg));
    assert!(mult.matrix.is_invertible());
}

#[test]
fn tensor_over_idempotents_matches_span_oracle() {
    let a = star();
    let reg = Bimodule::regular(a.clone());
    let d = idempotent_subalgebra(&a);
    let tt = Bimodule::tensor(&reg, &d, &reg, None).unwrap();
    // Σ_w dim(E e_w) dim(e_w E)
    assert_eq!(tt.dim(), 3 * 3 + 3 * 3);
    let x_ops: Vec<Matrix> = (0..2).map(|w| reg.right_action(&a.idempotent(w))).collect();
    let y_ops: Vec<Matrix> = (0..2).map(|w| reg.left_action(&a.idempotent(w))).collect();
    assert_eq!(tensor_dim_by_span(a.field(), &x_ops, &y_ops, 6, 6), tt.dim());
    assert_eq!(tt.component_dims(), vec![vec![5, 4], vec![4, 5]]);
}

#[test]
fn twisted_regular_components() {
    let a = star();
    let spec = crate::qalg::AutomorphismSpec {
        name: "s".into(),
        vertices: vec![("1".into(), "2".into()), ("2".into(), "1".into())],
        arrows: vec![("a".into(), parse_expr("b").unwrap()), ("b".into(), parse_expr("a").unwrap())],
    };
    let s = AlgebraMap::automorphism(a.clone(), &spec).unwrap();
    let se = Bimodule::twisted_regular(a.clone(), Some(&s), None).unwrap();
    let (left, _) = se.side_module(Side::Left).unwrap();
    assert_eq!(left.dims(), &[3, 3]);
    // e_1 acts on sE as e_2 does on E
    assert_eq!(se.component_dims()[0], vec![1, 2]);
    let si = s.inverse().unwrap();
    let es = Bimodule::twisted_regular(a.clone(), None, Some(&si)).unwrap();
    // sE ≅ E_{s^-1} via u ↦ s^-1(u)
    let iso = BimoduleHom { name: "i".into(), matrix: si.matrix().clone() };
    assert!(iso.is_bimodule_map(&se, &es));
}

#[test]
fn ill_defined_maps_are_rejected() {
    let a = star();
    let reg = Bimodule::regular(a.clone());
    let id = AlgebraMap::identity(a.clone());
    let tt = Bimodule::tensor(&reg, &id, &reg, None).unwrap();
    assert!(matches!(
        make_bimodule_map("m", &tt, &reg, &[(t(&tt, "1 (x) 1"), e(&reg, "a"))]),
        Err(BimodError::NotWellDefined(_))
    ));
    // e_1 is not central, and the error names a relation
    let err = make_bimodule_map("m", &tt, &reg, &[(t(&tt, "1 (x) 1"), e(&reg, "e_1"))]).unwrap_err();
    assert!(err.to_string().contains("relation"), "{err}");
}

#[test]
fn periodic_resolution_of_truncated_polynomials() {
    let a = kx3();
    let reg = Arc::new(Bimodule::regular(a.clone()));
    let k = {
        let spec = SubalgebraSpec {
            name: "k".into(),
            vertices: vec![("1".into(), parse_expr("e_1").unwrap())],
            arrows: Vec::new(),
        };
        AlgebraMap::subalgebra(a.clone(), &spec).unwrap().1
    };
    let ee = Arc::new(Bimodule::tensor(&reg, &k, &reg, None).unwrap());
    assert_eq!(ee.dim(), 9);
    let d0 = make_bimodule_map("d0", &ee, &reg, &[(t(&ee, "1 (x) 1"), e(&reg, "1"))]).unwrap();
    let d1 = make_bimodule_map("d1", &ee, &ee, &[(t(&ee, "1 (x) 1"), t(&ee, "x (x) 1 - 1 (x) x"))]).unwrap();
    let d2 = make_bimodule_map(
        "d2",
        &reg,
        &ee,
        &[(e(&reg, "1"), t(&ee, "1 (x) x*x + x (x) x + x*x (x) 1"))],
    )
    .unwrap();
    let c = BimoduleComplex::new(vec![reg.clone(), ee.clone(), ee.clone(), reg.clone()], vec![d2, d1, d0]).unwrap();
    assert_eq!(c.homology_dims().unwrap(), vec![0, 0, 0, 0]);
    assert!(c.composites().iter().all(|(_, _, z)| *z));
    let s = Module::simple(a.clone(), 0, Side::Left);
    let cs = c.tensor_left_module(&s).unwrap();
    assert_eq!(cs.linear().unwrap().dims, vec![1, 3, 3, 1]);
    assert_eq!(cs.homology_dims().unwrap(), vec![0, 0, 0, 0]);
    let r = Module::simple(a.clone(), 0, Side::Right);
    let cr = c.tensor_right_module(&r).unwrap();
    assert_eq!(cr.homology_dims().unwrap(), vec![0, 0, 0, 0]);
    let zero = Module::zero(a.clone(), Side::Left);
    assert_eq!(c.tensor_left_module(&zero).unwrap().linear().unwrap().dims, vec![0, 0, 0, 0]);
}

#[test]
fn broken_differential_is_not_a_complex() {
    let a = kx3();
    let reg = Arc::new(Bimodule::regular(a.clone()));
    let k = idempotent_subalgebra(&a);
    let ee = Arc::new(Bimodule::tensor(&reg, &k, &reg, None).unwrap());
    let d0 = make_bimodule_map("d0", &ee, &reg, &[(t(&ee, "1 (x) 1"), e(&reg, "1"))]).unwrap();
    let d1 = make_bimodule_map("d1", &ee, &ee, &[(t(&ee, "1 (x) 1"), t(&ee, "x (x) 1 + 1 (x) x"))]).unwrap();
    let c = BimoduleComplex::new(vec![ee.clone(), ee.clone(), reg.clone()], vec![d1, d0]).unwrap();
    assert!(c.homology_dims().is_err());
    assert!(!c.composites()[0].2);
}

#[test]
fn module_tensor_recovers_the_module() {
    let a = star();
    let reg = Bimodule::regular(a.clone());
    let p = Module::projective(a.clone(), 0, Side::Left);
    let (m, _, _) = reg.tensor_left_module(&p).unwrap();
    assert!(crate::rep::is_isomorphic(&m, &p, 0).unwrap().is_isomorphic());
    let r = Module::simple(a.clone(), 1, Side::Right);
    let (n, _, _) = reg.tensor_right_module(&r).unwrap();
    assert!(crate::rep::is_isomorphic(&n, &r, 0).unwrap().is_isomorphic());
}
