use crate::periodicity::{
    check_involution, check_periodic_named, check_strong_periodic_left, check_strong_periodic_right, relative_witness_prereqs,
};
use crate::report::{Assertion, Report};

use super::{golden_check, Bundle, CorpusError};

/// The periodicity claims made about a corpus example.
pub struct PeriodicClaims {
    pub module: &'static str,
    pub witness: &'static str,
    pub period: usize,
    /// `phi: E → A` and the vertices of `A` making up `Q`.
    pub corner: Option<(&'static str, &'static [usize])>,
    pub subalgebras: &'static [&'static str],
}

pub fn periodic_claims(name: &str) -> Option<PeriodicClaims> {
    match name {
        "s6" => Some(PeriodicClaims { module: "M", witness: "W", period: 2, corner: Some(("phi", &[2])), subalgebras: &["B"] }),
        "s8" => Some(PeriodicClaims {
            module: "M",
            witness: "W",
            period: 3,
            corner: Some(("phi", &[0])),
            subalgebras: &["B", "C", "D"],
        }),
        "toys" => Some(PeriodicClaims { module: "SK", witness: "W", period: 2, corner: None, subalgebras: &[] }),
        _ => None,
    }
}

fn subscript(s: &str) -> String {
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) => char::from_u32(0x2080 + d).unwrap_or(c),
            None => c,
        })
        .collect()
}

fn failed(label: impl Into<String>, e: impl ToString) -> Assertion {
    Assertion::new(label, false).detail(e.to_string())
}

/// Every golden value and periodicity claim of a corpus example.
pub fn verify_example(b: &Bundle, seed: u64) -> Result<Report, CorpusError> {
    let claims = periodic_claims(&b.name).ok_or_else(|| CorpusError::UnknownExample(b.name.clone()))?;
    let mut r = Report::new(format!("verification of {}", b.name));
    r.extend(golden_check(b));

    let w = b.witness(claims.witness)?;
    let m = b.module(claims.module)?;
    let h = w.complex.homology_dims();
    r.push(match &h {
        Ok(h) => Assertion::new("exactness", h.iter().all(|&d| d == 0))
            .reference(format!("witness {}", w.name))
            .ledger(w.complex.terms.iter().map(|t| t.dim()).collect()),
        Err(e) => failed("exactness", e),
    });
    for (later, earlier, zero) in w.complex.composites() {
        r.push(Assertion::new(format!("{}∘{} = 0", subscript(&later), subscript(&earlier)), zero));
    }
    r.push(Assertion::new(format!("period {}", claims.period), w.period() == claims.period).ledger(vec![w.period()]));
    if !w.sigma.is_identity() {
        r.push(check_involution(&w.sigma));
    }
    match check_periodic_named(m, claims.module, &w.sigma, claims.period, seed) {
        Ok(p) => r.extend(p),
        Err(e) => r.push(failed("periodicity", e)),
    }
    match check_strong_periodic_left(m, w, seed) {
        Ok(p) => r.extend(p),
        Err(e) => r.push(failed("strong periodicity of M", e)),
    }
    match check_strong_periodic_right(&m.dual(), w, seed) {
        Ok(p) => r.extend(p),
        Err(e) => r.push(failed("strong periodicity of the dual", e)),
    }
    if let Some((phi, q)) = claims.corner {
        let subs = claims.subalgebras.iter().map(|s| b.map(s)).collect::<Result<Vec<_>, _>>()?;
        match relative_witness_prereqs(b.map(phi)?, q, &subs, seed) {
            Ok(p) => r.extend(p),
            Err(e) => r.push(failed("relative periodicity prerequisites", e)),
        }
    }
    Ok(r)
}
