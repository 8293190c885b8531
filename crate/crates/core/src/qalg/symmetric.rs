use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::Matrix;

use super::{Algebra, Elem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricVerdict {
    /// A trace form `λ` (as values on the basis) whose pairing `λ(xy)` is nondegenerate.
    Symmetric(Elem),
    /// Every trace form was tested and all are degenerate.
    NotSymmetric,
    /// Sampling found no nondegenerate form; the space was too large to sweep.
    NotFound,
}

const SWEEP_LIMIT: u64 = 6561; // 3^8
const SAMPLES: usize = 200;

/// Linear forms vanishing on all commutators `xy - yx`.
pub fn trace_forms(a: &Algebra) -> Vec<Elem> {
    let d = a.dim();
    let f = a.field();
    let mut rows = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let mut c = a.mul(&a.unit(i), &a.unit(j));
            let ji = a.mul(&a.unit(j), &a.unit(i));
            f.axpy(&mut c, f.neg(1), &ji);
            if c.iter().any(|&x| x != 0) {
                rows.push(c);
            }
        }
    }
    if rows.is_empty() {
        return (0..d).map(|i| a.unit(i)).collect();
    }
    Matrix::from_rows(f, d, &rows).nullspace()
}

/// Gram matrix of `(x, y) ↦ λ(xy)` on the basis.
pub fn pairing_matrix(a: &Algebra, lambda: &[u32]) -> Matrix {
    let d = a.dim();
    let f = a.field();
    let mut m = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = 0;
            for &(k, c) in a.basis_mul(i, j) {
                s = f.add(s, f.mul(c, lambda[k]));
            }
            m.set(i, j, s);
        }
    }
    m
}

/// Searches for a symmetrizing form: exhaustively when the space of trace
/// forms is small, otherwise by seeded sampling.
pub fn verify_symmetric(a: &Algebra, seed: u64) -> SymmetricVerdict {
    let f = a.field();
    let forms = trace_forms(a);
    let t = forms.len();
    let combine = |coeffs: &[u32]| -> Elem {
        let mut l = a.zero();
        for (c, v) in coeffs.iter().zip(&forms) {
            f.axpy(&mut l, *c, v);
        }
        l
    };
    let good = |l: &Elem| pairing_matrix(a, l).is_invertible();
    let p = f.p() as u64;
    let total = (0..t).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= SWEEP_LIMIT));
    if let Some(total) = total {
        for code in 0..total {
            let mut c = vec![0u32; t];
            let mut r = code;
            for x in c.iter_mut() {
                *x = (r % p) as u32;
                r /= p;
            }
            let l = combine(&c);
            if good(&l) {
                return SymmetricVerdict::Symmetric(l);
            }
        }
        return SymmetricVerdict::NotSymmetric;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        let c: Vec<u32> = (0..t).map(|_| rng.gen_range(0..f.p())).collect();
        let l = combine(&c);
        if good(&l) {
            return SymmetricVerdict::Symmetric(l);
        }
    }
    SymmetricVerdict::NotFound
}

/// Re-checks a claimed symmetrizing form.
pub fn is_symmetrizing_form(a: &Algebra, lambda: &[u32]) -> bool {
    let d = a.dim();
    let m = pairing_matrix(a, lambda);
    (0..d).all(|i| (0..d).all(|j| m.get(i, j) == m.get(j, i))) && m.is_invertible()
}
