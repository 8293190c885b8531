use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use periodic_twist::corpus::{load_example, Bundle};
use periodic_twist::rep::{hom_space, is_isomorphic, Module, Side};
use periodic_twist::tilt::{serre_approx, verify_tilting};
use proptest::prelude::*;

fn bundle(name: &str) -> &'static Bundle {
    static S6: OnceLock<Bundle> = OnceLock::new();
    static S8: OnceLock<Bundle> = OnceLock::new();
    match name {
        "s6" => S6.get_or_init(|| load_example("s6").unwrap()),
        _ => S8.get_or_init(|| load_example("s8").unwrap()),
    }
}

fn submodule(b: &Bundle, alg: &str, v: usize, picks: &[Vec<u32>]) -> Module {
    let a = b.algebra(alg).unwrap();
    let p = Module::projective(a.clone(), v % a.num_vertices(), Side::Left);
    let vecs: Vec<Vec<u32>> = picks.iter().map(|x| (0..p.dim()).map(|i| x[i % x.len()]).collect()).collect();
    p.generated_submodule(&vecs).unwrap().0
}

fn iso(a: &Module, b: &Module) -> bool {
    is_isomorphic(a, b, 0).unwrap().is_isomorphic()
}

fn picks() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..3, 1..40), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn minimal_syzygy_matches_stripped_full_cover(ex in prop::sample::select(vec!["s6", "s8"]), v in 0usize..5, p in picks()) {
        let m = submodule(bundle(ex), "E", v, &p);
        prop_assert!(iso(&m.omega1(), &m.omega_via_full_cover()));
    }

    #[test]
    fn syzygy_commutes_with_the_twist(ex in prop::sample::select(vec!["s6", "s8"]), v in 0usize..5, p in picks()) {
        let b = bundle(ex);
        let sigma = b.map("sigma").unwrap();
        let m = submodule(b, "E", v, &p);
        prop_assert!(iso(&m.twist(sigma).unwrap().omega1(), &m.omega1().twist(sigma).unwrap()));
    }

    #[test]
    fn reject_chain_leaves_only_factors_in_j(ex in prop::sample::select(vec!["s6", "s8"]), v in 0usize..5, mask in 0u8..32) {
        let a: &Arc<_> = bundle(ex).algebra("A").unwrap();
        let j: BTreeSet<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
        let s = Module::simple(a.clone(), v, Side::Left);
        let r = serre_approx(&s, &j).unwrap();
        // M_J → S has kernel K/K′, whose factors lie in J
        let kernel_dims: Vec<usize> = r.module.dims().iter().zip(s.dims()).map(|(x, y)| x - y).collect();
        for (w, &d) in kernel_dims.iter().enumerate() {
            prop_assert!(d == 0 || j.contains(&w));
        }
        // and K′ has no quotient in J
        for &w in &j {
            prop_assert!(hom_space(&r.kernel, &Module::simple(a.clone(), w, Side::Left)).unwrap().is_empty());
        }
        prop_assert!(r.chain.windows(2).all(|c| c[1] < c[0]));
    }

    #[test]
    fn every_subset_gives_a_tilting_complex(ex in prop::sample::select(vec!["s6", "s8"]), mask in 0u8..32) {
        let a = bundle(ex).algebra("A").unwrap();
        let j: BTreeSet<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
        let r = verify_tilting(a, &j).unwrap();
        prop_assert!(r.passed(5), "{:?}", r);
    }
}
