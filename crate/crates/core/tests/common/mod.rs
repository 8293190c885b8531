//! Sign fixtures for the S₈ resolution: the differentials as printed and the
//! corrected ones shipped in the corpus.
#![allow(dead_code)]

use periodic_twist::corpus::{example_source, load_bundle, Bundle, CorpusError};

pub type Terms = &'static [(i8, &'static str)];

pub const D2_G2: Terms = &[(1, "alpha (x) e_2"), (-1, "e_5 (x) gamma2")];
pub const D2_G5: Terms = &[(1, "delta2 (x) e_5"), (-1, "e_2 (x) beta")];

pub const D2_G3: Terms = &[
    (1, "delta4*gamma4 (x) delta2"),
    (-1, "beta (x) gamma4*delta4"),
    (1, "delta4 (x) alpha*delta4"),
    (-1, "delta4*gamma2 (x) delta4"),
    (1, "beta*alpha*beta (x) e_3"),
    (-1, "e_4 (x) delta2*gamma2*delta2"),
];
pub const D2_G4: Terms = &[
    (1, "gamma4*delta4 (x) alpha"),
    (-1, "gamma2 (x) delta4*gamma4"),
    (1, "gamma4 (x) delta2*gamma4"),
    (-1, "gamma4*beta (x) gamma4"),
    (1, "gamma2*delta2*gamma2 (x) e_4"),
    (-1, "e_3 (x) alpha*beta*alpha"),
];

pub const PRINTED_G3: Terms = &[
    (1, "delta4*gamma4 (x) delta2"),
    (1, "beta (x) gamma4*delta4"),
    (1, "delta4 (x) alpha*delta4"),
    (1, "delta4*gamma2 (x) delta4"),
    (-1, "beta*alpha*beta (x) e_3"),
    (-1, "e_4 (x) delta2*gamma2*delta2"),
];
pub const PRINTED_G4: Terms = &[
    (1, "gamma4*delta4 (x) alpha"),
    (1, "gamma2 (x) delta4*gamma4"),
    (1, "gamma4 (x) delta2*gamma4"),
    (1, "gamma4*beta (x) gamma4"),
    (-1, "gamma2*delta2*gamma2 (x) e_4"),
    (-1, "e_3 (x) alpha*beta*alpha"),
];

pub const Y2: Terms = &[
    (1, "e_2 (x) delta2*gamma2*delta2*gamma2"),
    (1, "delta2*gamma2 (x) delta2*gamma2"),
    (1, "delta2*gamma2*delta2*gamma2 (x) e_2"),
    (1, "gamma2*delta2*gamma2 (x) delta2"),
    (1, "gamma2 (x) delta2*gamma2*delta2"),
    (-1, "delta4*gamma2 (x) delta2*gamma4"),
];
pub const Y34_PRINTED: Terms = &[
    (1, "delta2 (x) gamma2"),
    (-1, "alpha (x) beta"),
    (1, "gamma2*delta2 (x) e_3"),
    (-1, "beta*alpha (x) e_4"),
    (1, "e_3 (x) gamma2*delta2"),
    (-1, "e_4 (x) beta*alpha"),
    (-1, "gamma4 (x) delta4"),
    (1, "delta4 (x) gamma4"),
];
pub const Y5: Terms = &[
    (1, "e_5 (x) alpha*beta*alpha*beta"),
    (1, "alpha*beta (x) alpha*beta"),
    (1, "alpha*beta*alpha*beta (x) e_5"),
    (1, "beta*alpha*beta (x) alpha"),
    (1, "beta (x) alpha*beta*alpha"),
    (-1, "gamma4*beta (x) alpha*delta4"),
];

pub fn render(terms: &[(i8, &str)], scale: i8) -> String {
    let mut out = String::new();
    for (i, &(s, t)) in terms.iter().enumerate() {
        let neg = s * scale < 0;
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(t);
    }
    out
}

pub fn flip_pair(terms: Terms) -> Vec<(i8, &'static str)> {
    terms.iter().map(|&(s, t)| if t.starts_with("gamma4 (x)") || t.starts_with("delta4 (x)") { (-s, t) } else { (s, t) }).collect()
}

/// The S₈ corpus with `d2` and `d3` replaced and the witness dropped. An
/// empty `y` leaves `d3` out.
pub fn with_differentials(d2: [&[(i8, &str)]; 4], y: &[(&[(i8, &str)], i8)]) -> Result<Bundle, CorpusError> {
    let src = example_source("s8").unwrap();
    let head = &src[..src.find("# d2 and d3").expect("d2 block")];
    let gens = ["e_2 (x) e_2", "e_3 (x) e_3", "e_4 (x) e_4", "e_5 (x) e_5"];
    let mut text = head.to_string();
    text.push_str("bimap d2: sECE -> EtDE {\n");
    for (g, terms) in gens.iter().zip(d2) {
        text.push_str(&format!("  {g} |-> {}\n", render(terms, 1)));
    }
    text.push_str("}\n");
    if !y.is_empty() {
        let parts: Vec<String> = y.iter().map(|&(t, s)| render(t, s)).collect();
        text.push_str("\nbimap d3: sE -> sECE {\n  1 |-> ");
        text.push_str(&parts.join(" + ").replace("+ -", "- "));
        text.push_str("\n}\n");
    }
    load_bundle("s8-variant", &text)
}

pub fn composite_vanishes(b: &Bundle, later: &str, earlier: &str) -> bool {
    let l = &b.bimap(later).unwrap().hom;
    let e = &b.bimap(earlier).unwrap().hom;
    l.compose(e).unwrap().is_zero()
}

pub const CORRECT_D2: [Terms; 4] = [D2_G2, D2_G3, D2_G4, D2_G5];

pub fn corrected_y34() -> Vec<(i8, &'static str)> {
    flip_pair(Y34_PRINTED)
}


/// Flips each sign of the corrected `d2` in turn and returns the positions
/// `(generator, term)` where the broken map still loads and forms a complex.
pub fn undetected_d2_mutations() -> Vec<(usize, usize)> {
    let y34 = corrected_y34();
    let y = [(Y2, 1), (&y34[..], 1), (Y5, -1)];
    let mut missed = Vec::new();
    for g in 0..4 {
        for t in 0..CORRECT_D2[g].len() {
            let mut mutated: Vec<Vec<(i8, &str)>> = CORRECT_D2.iter().map(|ts| ts.to_vec()).collect();
            mutated[g][t].0 = -mutated[g][t].0;
            let d2 = [&mutated[0][..], &mutated[1][..], &mutated[2][..], &mutated[3][..]];
            let broken = match with_differentials(d2, &y) {
                Err(_) => true,
                Ok(b) => !composite_vanishes(&b, "d1", "d2") || !composite_vanishes(&b, "d2", "d3"),
            };
            if !broken {
                missed.push((g, t));
            }
        }
    }
    missed
}

pub fn d2_term_count() -> usize {
    CORRECT_D2.iter().map(|t| t.len()).sum()
}
