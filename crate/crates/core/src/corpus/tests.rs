use super::*;
use crate::text::parse_document;

#[test]
fn unknown_example_is_an_error() {
    assert!(matches!(load_example("s7"), Err(CorpusError::UnknownExample(_))));
}

#[test]
fn every_example_round_trips_through_the_printer() {
    for name in EXAMPLES {
        let doc = parse_document(example_source(name).unwrap()).unwrap();
        let printed = doc.to_string();
        let again = parse_document(&printed).unwrap();
        assert_eq!(doc, again, "{name}");
        assert_eq!(again.to_string(), printed, "{name}");
    }
}

#[test]
fn toys_golden_values() {
    let b = load_example("toys").unwrap();
    let r = golden_check(&b);
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(b.algebra("K").unwrap().dim(), 3);
    assert_eq!(b.algebra("A21").unwrap().dim(), 6);
}

#[test]
fn cycle_notation_skips_fixed_points() {
    assert_eq!(golden::cycle_notation(&[1, 0, 2, 4, 3], &["1", "2", "3", "4", "5"]), "(1,2)(4,5)");
    assert_eq!(golden::cycle_notation(&[0, 1], &["a", "b"]), "()");
    assert_eq!(golden::cycle_notation(&[1, 2, 0], &["a", "b", "c"]), "(a,b,c)");
}

#[test]
fn bad_definitions_name_the_item() {
    let src = "field 3\nalgebra K {\n  vertices 1\n  arrow x: 1 -> 1\n  relation x*x\n  bound 3\n}\nmodule P = projective(K, 2)\n";
    let err = load_bundle("bad", src).unwrap_err();
    assert!(matches!(&err, CorpusError::Invalid { item, .. } if item == "P"), "{err}");
    let err = load_bundle("bad", "field 3\nmodule P = projective(Z, 1)\n").unwrap_err();
    assert!(err.to_string().contains('Z'), "{err}");
}

#[test]
fn toys_verify_cleanly() {
    let b = load_example("toys").unwrap();
    let r = verify_example(&b, 0).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert!(r.get("Ω²(SK) ≅ SK").is_some(), "{}", r.render_text());
}
