use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::exactla::Field;
use crate::qalg::expr::parse_expr;
use crate::qalg::{AlgebraSpec, AutomorphismSpec, Quiver};

fn build(vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str], bound: usize) -> Arc<Algebra> {
    let mut q = Quiver::new();
    for v in vs {
        q.add_vertex(v).unwrap();
    }
    for (n, s, t) in arrows {
        q.add_arrow(n, s, t).unwrap();
    }
    let spec = AlgebraSpec {
        name: "T".into(),
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

fn swap(a: &Arc<Algebra>) -> AlgebraMap {
    let spec = AutomorphismSpec {
        name: "s".into(),
        vertices: vec![("1".into(), "2".into()), ("2".into(), "1".into())],
        arrows: vec![("a".into(), parse_expr("b").unwrap()), ("b".into(), parse_expr("a").unwrap())],
    };
    AlgebraMap::automorphism(a.clone(), &spec).unwrap()
}

fn iso(m: &Module, n: &Module) -> bool {
    match is_isomorphic(m, n, 0).unwrap() {
        IsoVerdict::Isomorphic(w) => {
            assert!(is_module_hom(m, n, &w));
            true
        }
        IsoVerdict::NotIsomorphic(_) => false,
        IsoVerdict::Undecided => panic!("undecided"),
    }
}

#[test]
fn projectives_of_the_star() {
    let a = star();
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    assert_eq!(p1.dims(), &[2, 1]);
    assert_eq!(p1.loewy_series().to_string(), "1 / 2 / 1");
    assert_eq!(p1.socle_series(), p1.loewy_series());
    let r1 = Module::projective(a.clone(), 0, Side::Right);
    assert_eq!(r1.dims(), &[2, 1]);
    assert_eq!(r1.loewy_series().to_string(), "1 / 2 / 1");
    let reg = Module::regular(a.clone(), Side::Left);
    assert_eq!(reg.dim(), 6);
    assert!(reg.is_projective());
    assert!(iso(&reg, &Module::direct_sum(&[&p1, &Module::projective(a.clone(), 1, Side::Left)]).unwrap()));
}

#[test]
fn radical_socle_top() {
    let a = star();
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    let s1 = Module::simple(a.clone(), 0, Side::Left);
    assert!(iso(&p1.top().0, &s1));
    assert!(iso(&p1.socle().0, &s1));
    assert_eq!(p1.radical().0.dim(), 2);
    assert_eq!(s1.radical().0.dim(), 0);
    assert_eq!(p1.top_dims(), vec![1, 0]);
}

#[test]
fn hom_dimensions() {
    let a = star();
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    let s1 = Module::simple(a.clone(), 0, Side::Left);
    let s2 = Module::simple(a.clone(), 1, Side::Left);
    assert_eq!(hom_space(&p1, &s1).unwrap().len(), 1);
    assert_eq!(hom_space(&s1, &s2).unwrap().len(), 0);
    assert_eq!(hom_space(&p1, &p1).unwrap().len(), 2);
    for h in hom_space(&p1, &p1).unwrap() {
        assert!(is_module_hom(&p1, &p1, &h));
    }
}

#[test]
fn syzygies_of_the_star_have_period_four() {
    let a = star();
    let s1 = Module::simple(a.clone(), 0, Side::Left);
    let o1 = s1.omega(1);
    assert_eq!(o1.loewy_series().to_string(), "2 / 1");
    assert_eq!(s1.omega(2).loewy_series().to_string(), "2");
    assert!(iso(&s1.omega(4), &s1));
    assert!(!iso(&s1.omega(2), &s1));
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    assert!(p1.omega(1).is_zero());
    assert!(Module::zero(a.clone(), Side::Left).is_projective());
    assert!(!s1.is_projective());
}

#[test]
fn truncated_polynomial_syzygies() {
    let a = kx3();
    let p = Module::projective(a.clone(), 0, Side::Left);
    let (m, _) = p.quotient(&p.socle_vectors()).unwrap();
    assert_eq!(m.dim(), 2);
    assert_eq!(m.omega(1).dim(), 1);
    assert!(iso(&m.omega(2), &m));
}

#[test]
fn twisting_by_the_swap() {
    let a = star();
    let s = swap(&a);
    let s1 = Module::simple(a.clone(), 0, Side::Left);
    let s2 = Module::simple(a.clone(), 1, Side::Left);
    assert!(iso(&s1.twist(&s).unwrap(), &s2));
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    let t = p1.twist(&s).unwrap();
    assert_eq!(t.dims(), &[1, 2]);
    assert!(iso(&t.twist(&s.inverse().unwrap()).unwrap(), &p1));
    assert!(iso(&p1.twist(&AlgebraMap::identity(a.clone())).unwrap(), &p1));
}

#[test]
fn duals() {
    let a = star();
    let s1 = Module::simple(a.clone(), 0, Side::Left);
    let d = s1.dual();
    assert_eq!(d.side(), Side::Right);
    assert!(iso(&d, &Module::simple(a.clone(), 0, Side::Right)));
    let p = Module::projective(a.clone(), 0, Side::Left);
    assert!(iso(&p.dual().dual(), &p));
    // the algebra is symmetric, so (A e_1)* is e_1 A
    assert!(iso(&p.dual(), &Module::projective(a.clone(), 0, Side::Right)));
}

#[test]
fn explicit_modules_are_validated() {
    let a = kx3();
    let f = a.field();
    let x = Matrix::from_i64_rows(f, &[vec![0, 0], vec![1, 0]]).unwrap();
    assert!(Module::new(a.clone(), Side::Left, vec![2], vec![x]).is_ok());
    let bad = Matrix::identity(f, 2);
    assert!(matches!(Module::new(a.clone(), Side::Left, vec![2], vec![bad]), Err(RepError::InvalidAction(_))));
    let b = star();
    let z = Matrix::zeros(f, 2, 2);
    let wrong = Matrix::from_i64_rows(f, &[vec![1, 0], vec![0, 0]]).unwrap();
    assert!(Module::new(b.clone(), Side::Left, vec![1, 1], vec![wrong, z]).is_err());
}

#[test]
fn path_algebra_modules() {
    let a = build(&["1", "2"], &[("a", "1", "2")], &[], 2);
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    assert_eq!(p1.loewy_series().to_string(), "1 / 2");
    let p2 = Module::projective(a.clone(), 1, Side::Left);
    assert!(iso(&p1.radical().0, &p2));
    let s1 = Module::simple(a.clone(), 0, Side::Left);
    assert!(s1.omega(1).is_projective());
    assert!(s1.omega(2).is_zero());
    let r = Module::projective(a.clone(), 1, Side::Right);
    assert_eq!(r.dims(), &[1, 1]);
}

#[test]
fn stripping_projective_summands() {
    let a = star();
    let p1 = Module::projective(a.clone(), 0, Side::Left);
    let s2 = Module::simple(a.clone(), 1, Side::Left);
    let sum = Module::direct_sum(&[&s2, &p1, &p1]).unwrap();
    let (rest, removed) = sum.strip_projective_summands();
    assert_eq!(removed, vec![0, 0]);
    assert!(iso(&rest, &s2));
}

fn random_submodule(a: &Arc<Algebra>, v: usize, side: Side, picks: &[Vec<u32>]) -> Module {
    let p = Module::projective(a.clone(), v, side);
    let vecs: Vec<Vec<u32>> = picks.iter().map(|x| x.iter().take(p.dim()).map(|c| c % 3).collect()).collect();
    p.generated_submodule(&vecs).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn omega_oracle_matches(v in 0usize..2, left in any::<bool>(), picks in prop::collection::vec(prop::collection::vec(0u32..3, 6), 1..3)) {
        let a = star();
        let side = if left { Side::Left } else { Side::Right };
        let m = random_submodule(&a, v, side, &picks);
        prop_assert!(iso(&m.omega1(), &m.omega_via_full_cover()));
    }

    #[test]
    fn series_account_for_dimension(v in 0usize..2, picks in prop::collection::vec(prop::collection::vec(0u32..3, 6), 1..3)) {
        let a = star();
        let m = random_submodule(&a, v, Side::Left, &picks);
        prop_assert_eq!(m.loewy_series().total_dim(), m.dim());
        prop_assert_eq!(m.socle_series().total_dim(), m.dim());
        prop_assert_eq!(m.top().0.dim() + m.radical().0.dim(), m.dim());
        let o = m.omega1();
        prop_assert!(o.strip_projective_summands().1.is_empty());
    }

    #[test]
    fn isomorphism_is_an_equivalence(picks in prop::collection::vec(prop::collection::vec(0u32..3, 6), 1..3)) {
        let a = star();
        let m = random_submodule(&a, 0, Side::Left, &picks);
        let t = m.twist(&swap(&a)).unwrap().twist(&swap(&a)).unwrap();
        prop_assert!(iso(&m, &m));
        prop_assert!(iso(&m, &t));
        prop_assert!(iso(&t, &m));
    }
}
