use periodic_twist::corpus::{golden_check, load_example, Bundle};
use periodic_twist::periodicity::{
    check_involution, check_periodic, check_strong_periodic_left, check_strong_periodic_right, relative_witness_prereqs,
};

fn assert_report(r: &periodic_twist::report::Report) {
    assert!(r.passed(), "{}", r.render_text());
}

fn strong_both_sides(b: &Bundle) {
    let w = b.witness("W").unwrap();
    let m = b.module("M").unwrap();
    assert_report(&check_strong_periodic_left(m, w, 0).unwrap());
    assert_report(&check_strong_periodic_right(&m.dual(), w, 0).unwrap());
    assert_report(&check_periodic(m, &w.sigma, w.period(), 0).unwrap());
}

#[test]
fn s6_golden_tables() {
    assert_report(&golden_check(&load_example("s6").unwrap()));
}

#[test]
fn s6_is_strongly_periodic_of_period_two() {
    let b = load_example("s6").unwrap();
    assert_eq!(b.witness("W").unwrap().period(), 2);
    assert!(check_involution(b.map("sigma").unwrap()).passed);
    strong_both_sides(&b);
    let r = relative_witness_prereqs(b.map("phi").unwrap(), &[2], &[b.map("B").unwrap()], 0).unwrap();
    assert_report(&r);
}

#[test]
fn s8_golden_tables() {
    assert_report(&golden_check(&load_example("s8").unwrap()));
}

#[test]
fn s8_is_strongly_periodic_of_period_three() {
    let b = load_example("s8").unwrap();
    assert_eq!(b.witness("W").unwrap().period(), 3);
    assert!(check_involution(b.map("sigma").unwrap()).passed);
    strong_both_sides(&b);
    let subs = ["B", "C", "D"].map(|s| b.map(s).unwrap());
    let r = relative_witness_prereqs(b.map("phi").unwrap(), &[0], &subs, 0).unwrap();
    assert_report(&r);
}

#[test]
fn s6_module_m_has_the_displayed_syzygy() {
    let b = load_example("s6").unwrap();
    let m = b.module("M").unwrap();
    assert_eq!(m.omega1().dim(), 12);
}
