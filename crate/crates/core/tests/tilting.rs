use std::collections::BTreeSet;

use periodic_twist::corpus::load_example;
use periodic_twist::rep::hom_space;
use periodic_twist::tilt::{combinatorial_tilting_complex, verify_tilting, ProjComplex, TwoTermComplex};

/// `Σ (-1)^{n-m} dim Hom(T_n, T_m)`, which equals `dim End(T)` once the
/// nonzero shifts vanish.
fn euler_form(t: &ProjComplex) -> i64 {
    let mut total = 0i64;
    for (n, x) in t.terms.iter().enumerate() {
        for (m, y) in t.terms.iter().enumerate() {
            let d = hom_space(x, y).unwrap().len() as i64;
            total += if (n + m) % 2 == 0 { d } else { -d };
        }
    }
    total
}

fn check(example: &str, j: usize, simplified: &str) {
    let b = load_example(example).unwrap();
    let a = b.algebra("A").unwrap();
    let js: BTreeSet<usize> = [j].into_iter().collect();
    let r = verify_tilting(a, &js).unwrap();
    assert!(r.passed(5), "{r:?}");
    for s in [-2, -1, 1, 2] {
        assert!(r.shift_dims.contains(&(s, 0)));
    }
    assert_eq!(r.indecomposable_summands, 5);
    let labels = a.quiver().vertices();
    assert_eq!(r.perversity, format!("∅ ⊂_0 {{{}}} ⊂_{{-1}} {{1,2,3,4,5}}", labels[j]));
    assert_eq!(r.simplified_form, Some(true));
    assert!(r.summands.iter().any(|s| s == simplified), "{:?}", r.summands);

    let pieces = combinatorial_tilting_complex(a, &js).unwrap();
    let cs: Vec<ProjComplex> = pieces.iter().map(TwoTermComplex::complex).collect();
    let t = ProjComplex::direct_sum(&cs.iter().collect::<Vec<_>>()).unwrap();
    assert_eq!(r.end_dim as i64, euler_form(&t));
}

#[test]
fn s6_tilt_at_3() {
    check("s6", 2, "T3 = P2 ⊕ P5 → P3 (degrees 1, 0)");
}

#[test]
fn s8_tilt_at_1() {
    check("s8", 0, "T1 = P3 ⊕ P5 → P1 (degrees 1, 0)");
}

#[test]
fn degenerate_sets_on_the_block_algebras() {
    for ex in ["s6", "s8"] {
        let b = load_example(ex).unwrap();
        let a = b.algebra("A").unwrap();
        let none = verify_tilting(a, &BTreeSet::new()).unwrap();
        assert!(none.passed(5));
        assert!(none.summands.iter().all(|s| s.ends_with("[1]")));
        assert_eq!(none.end_dim, a.dim());
        let all = verify_tilting(a, &(0..5).collect()).unwrap();
        assert!(all.passed(5));
        assert!(all.summands.iter().all(|s| s.contains("= 0 → P")), "{:?}", all.summands);
        assert_eq!(all.end_dim, a.dim());
    }
}
