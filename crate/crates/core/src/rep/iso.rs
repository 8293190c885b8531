use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::Matrix;

use super::{hom_space, is_module_hom, Module, RepError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// An invertible module map `m → n`, re-verified.
    Isomorphic(Matrix),
    NotIsomorphic(String),
    /// No isomorphism was found and the hom space was too large to sweep.
    Undecided,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            IsoVerdict::Isomorphic(w) => Some(w),
            _ => None,
        }
    }
}

const SAMPLES: usize = 64;
const SWEEP_LIMIT: u64 = 531_441; // 3^12

/// Decides whether `m ≅ n`.
///
/// Cheap invariants are compared first. Then seeded random elements of
/// `Hom(m, n)` are tried, followed by a full sweep of the hom space when it
/// has at most `3^12` elements. Since any isomorphism over an extension field
/// forces one over GF(p), a failed sweep is a definite answer.
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64) -> Result<IsoVerdict, RepError> {
    if !m.same_algebra(n) {
        return Err(RepError::AlgebraMismatch);
    }
    if m.side() != n.side() {
        return Err(RepError::SideMismatch(m.side()));
    }
    let f = m.field();
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "dimension vectors differ: {:?} vs {:?}",
            m.dims(),
            n.dims()
        )));
    }
    if m.dim() == 0 {
        return Ok(IsoVerdict::Isomorphic(Matrix::zeros(f, 0, 0)));
    }
    let (lm, ln) = (m.loewy_series(), n.loewy_series());
    if lm != ln {
        return Ok(IsoVerdict::NotIsomorphic(format!("Loewy series differ: {lm} vs {ln}")));
    }
    let (sm, sn) = (m.socle_series(), n.socle_series());
    if sm != sn {
        return Ok(IsoVerdict::NotIsomorphic(format!("socle series differ: {sm} vs {sn}")));
    }
    let h = hom_space(m, n)?;
    let dims = [h.len(), hom_space(n, m)?.len(), hom_space(m, m)?.len(), hom_space(n, n)?.len()];
    if dims.iter().any(|&d| d != dims[0]) {
        return Ok(IsoVerdict::NotIsomorphic(format!("hom dimensions differ: {dims:?}")));
    }
    let combine = |c: &[u32]| {
        let mut acc = Matrix::zeros(f, n.dim(), m.dim());
        for (x, b) in c.iter().zip(&h) {
            if *x != 0 {
                acc.add_scaled(*x, b);
            }
        }
        acc
    };
    let accept = |w: Matrix| -> Option<IsoVerdict> {
        (is_invertible_graded(m, n, &w) && is_module_hom(m, n, &w)).then_some(IsoVerdict::Isomorphic(w))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        let c: Vec<u32> = (0..h.len()).map(|_| rng.gen_range(0..f.p())).collect();
        if let Some(v) = accept(combine(&c)) {
            return Ok(v);
        }
    }
    let p = f.p() as u64;
    let total = (0..h.len()).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= SWEEP_LIMIT));
    let Some(total) = total else {
        return Ok(IsoVerdict::Undecided);
    };
    for code in 0..total {
        let mut c = vec![0u32; h.len()];
        let mut r = code;
        for x in c.iter_mut() {
            *x = (r % p) as u32;
            r /= p;
        }
        if let Some(v) = accept(combine(&c)) {
            return Ok(v);
        }
    }
    Ok(IsoVerdict::NotIsomorphic(format!("no invertible map among all {total} elements of Hom")))
}

/// Module maps are block diagonal, so invertibility is checked blockwise.
fn is_invertible_graded(m: &Module, n: &Module, w: &Matrix) -> bool {
    (0..m.dims().len()).all(|v| {
        let d = m.dims()[v];
        d == 0 || w.block(n.offset(v), d, m.offset(v), d).is_invertible()
    })
}
