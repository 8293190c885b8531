//! Periodicity of modules under syzygies, and strong periodicity through an
//! exact sequence of bimodules `0 → σE → Y_{n-1} → … → Y_0 → E → 0`.

use std::sync::Arc;

use thiserror::Error;

use crate::bimod::{BimodError, Bimodule, BimoduleComplex, ModuleComplex};
use crate::qalg::{Algebra, AlgebraMap};
use crate::report::{Assertion, Report};
use crate::rep::{hom_module, hom_module_right, is_isomorphic, IsoVerdict, Module, RepError, Side};

pub type PeriodicityReport = Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicityError {
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid witness: {0}")]
    Witness(String),
    #[error("{0}")]
    Generator(String),
    #[error(transparent)]
    Bimod(#[from] BimodError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A verified exact sequence of bimodules from `σE` to `E`.
#[derive(Clone, Debug)]
pub struct PeriodicityWitness {
    pub name: String,
    pub sigma: AlgebraMap,
    pub complex: BimoduleComplex,
}

fn same_actions(a: &Bimodule, b: &Bimodule) -> bool {
    a.dim() == b.dim() && a.left_generators() == b.left_generators() && a.right_generators() == b.right_generators()
}

impl PeriodicityWitness {
    /// Checks the end terms and exactness.
    pub fn new(name: &str, sigma: AlgebraMap, complex: BimoduleComplex) -> Result<Self, PeriodicityError> {
        let n = complex.terms.len();
        if n < 3 {
            return Err(PeriodicityError::Witness("needs at least one middle term".into()));
        }
        let alg = complex.terms[0].algebra().clone();
        if !Arc::ptr_eq(sigma.src(), &alg) || !Arc::ptr_eq(sigma.dst(), &alg) {
            return Err(PeriodicityError::AlgebraMismatch);
        }
        let se = Bimodule::twisted_regular(alg.clone(), Some(&sigma), None)?;
        if !same_actions(&complex.terms[0], &se) {
            return Err(PeriodicityError::Witness(format!("first term {} is not the twisted regular bimodule", complex.terms[0].name())));
        }
        if !same_actions(&complex.terms[n - 1], &Bimodule::regular(alg)) {
            return Err(PeriodicityError::Witness(format!("last term {} is not the regular bimodule", complex.terms[n - 1].name())));
        }
        let h = complex.homology_dims()?;
        if h.iter().any(|&d| d != 0) {
            return Err(PeriodicityError::Witness(format!("sequence is not exact, homology dims {h:?}")));
        }
        Ok(PeriodicityWitness { name: name.to_string(), sigma, complex })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.complex.terms[0].algebra()
    }

    /// The `n` with `α ∈ Ext^n(E, σE)`.
    pub fn period(&self) -> usize {
        self.complex.terms.len() - 2
    }
}

fn verdict_assertion(label: String, v: &IsoVerdict) -> Assertion {
    let detail = match v {
        IsoVerdict::Isomorphic(_) => String::new(),
        IsoVerdict::NotIsomorphic(why) => why.clone(),
        IsoVerdict::Undecided => "no isomorphism found and hom space too large to sweep".into(),
    };
    Assertion::new(label, v.is_isomorphic()).detail(detail).witness(v.witness())
}

/// Display form of a map name: `sigma` and `tau` become `σ` and `τ`.
pub fn greek(name: &str) -> String {
    match name {
        "sigma" => "σ".into(),
        "tau" => "τ".into(),
        _ => name.to_string(),
    }
}

fn omega_label(n: usize, m: &str, sigma: &str) -> String {
    let sup = match n {
        1 => String::new(),
        2 => "²".into(),
        3 => "³".into(),
        _ => format!("^{n}"),
    };
    format!("Ω{sup}({m}) ≅ {sigma}{m}")
}

/// `Ω^n(M) ≅ σM`, with `Ω` computed by minimal projective covers.
pub fn check_periodic(m: &Module, sigma: &AlgebraMap, n: usize, seed: u64) -> Result<PeriodicityReport, PeriodicityError> {
    check_periodic_named(m, "M", sigma, n, seed)
}

pub fn check_periodic_named(
    m: &Module,
    name: &str,
    sigma: &AlgebraMap,
    n: usize,
    seed: u64,
) -> Result<PeriodicityReport, PeriodicityError> {
    let mut report = Report::new(format!("periodicity of {name}"));
    let mut ledger = vec![m.dim()];
    let mut cur = m.clone();
    for _ in 0..n {
        cur = cur.omega1();
        ledger.push(cur.dim());
    }
    let tw = m.twist(sigma)?;
    let sname = if sigma.is_identity() { String::new() } else { greek(sigma.name()) };
    let v = is_isomorphic(&cur, &tw, seed)?;
    report.push(verdict_assertion(omega_label(n, name, &sname), &v).ledger(ledger));
    Ok(report)
}

/// Smallest `n ≤ n_max` with `Ω^n(M) ≅ σM`.
pub fn sweep_period(m: &Module, sigma: &AlgebraMap, n_max: usize, seed: u64) -> Result<Option<usize>, PeriodicityError> {
    let tw = m.twist(sigma)?;
    let mut cur = m.clone();
    for n in 1..=n_max {
        cur = cur.omega1();
        if is_isomorphic(&cur, &tw, seed)?.is_isomorphic() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn check_tensored(
    report: &mut Report,
    c: &ModuleComplex,
    m: &Module,
    twisted: &Module,
    side_label: &str,
    seed: u64,
) -> Result<(), PeriodicityError> {
    let n = c.terms.len();
    let dims: Vec<usize> = c.terms.iter().map(|t| t.dim()).collect();
    let middle_projective = c.terms[1..n - 1].iter().all(|t| t.is_projective());
    let bad: Vec<usize> = (1..n - 1).filter(|&i| !c.terms[i].is_projective()).collect();
    report.push(
        Assertion::new(format!("{side_label}: middle terms projective"), middle_projective)
            .ledger(dims[1..n - 1].to_vec())
            .detail(if bad.is_empty() { String::new() } else { format!("terms {bad:?} are not projective") }),
    );
    let exact = match c.homology_dims() {
        Ok(h) => {
            let ok = h.iter().all(|&d| d == 0);
            Assertion::new(format!("{side_label}: tensored sequence exact"), ok)
                .ledger(dims.clone())
                .detail(if ok { String::new() } else { format!("homology dims {h:?}") })
        }
        Err(e) => Assertion::new(format!("{side_label}: tensored sequence exact"), false).ledger(dims.clone()).detail(e.to_string()),
    };
    report.push(exact);
    let alt: i64 = dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
    report.push(
        Assertion::new(format!("{side_label}: Euler characteristic zero"), alt == 0)
            .ledger(dims.clone())
            .detail(if alt == 0 { String::new() } else { format!("alternating sum {alt}") }),
    );
    let last = is_isomorphic(&c.terms[n - 1], m, seed)?;
    report.push(verdict_assertion(format!("{side_label}: E-term ≅ module"), &last));
    // kernel of the first middle map, which by exactness is the image of the left end
    let (ker, _) = c.terms[1].kernel(&c.maps[1]);
    let v = is_isomorphic(&ker, twisted, seed)?;
    report.push(verdict_assertion(format!("{side_label}: kernel at the left end ≅ twisted module"), &v).ledger(vec![ker.dim()]));
    Ok(())
}

/// Strong σ-periodicity of a left module: every `Y_i ⊗_E M` is projective
/// and the tensored sequence is exact.
pub fn check_strong_periodic_left(m: &Module, w: &PeriodicityWitness, seed: u64) -> Result<PeriodicityReport, PeriodicityError> {
    if !Arc::ptr_eq(m.algebra(), w.algebra()) {
        return Err(PeriodicityError::AlgebraMismatch);
    }
    if m.side() != Side::Left {
        return Err(RepError::SideMismatch(Side::Left).into());
    }
    let mut report = Report::new(format!("strong periodicity of a left module via {}", w.name));
    let c = w.complex.tensor_left_module(m)?;
    let tw = m.twist(&w.sigma)?;
    check_tensored(&mut report, &c, m, &tw, "left", seed)?;
    Ok(report)
}

/// Strong σ⁻¹-periodicity of a right module, through `N ⊗_E (−)`.
pub fn check_strong_periodic_right(n: &Module, w: &PeriodicityWitness, seed: u64) -> Result<PeriodicityReport, PeriodicityError> {
    if !Arc::ptr_eq(n.algebra(), w.algebra()) {
        return Err(PeriodicityError::AlgebraMismatch);
    }
    if n.side() != Side::Right {
        return Err(RepError::SideMismatch(Side::Right).into());
    }
    let mut report = Report::new(format!("strong periodicity of a right module via {}", w.name));
    let c = w.complex.tensor_right_module(n)?;
    let sinv = w.sigma.inverse().map_err(BimodError::from)?;
    let tw = n.twist(&sinv)?;
    check_tensored(&mut report, &c, n, &tw, "right", seed)?;
    Ok(report)
}

/// `σ∘σ = id`, so that `σ⁻¹ = σ`.
pub fn check_involution(sigma: &AlgebraMap) -> Assertion {
    let ok = sigma.compose(sigma).map(|s| s.is_identity()).unwrap_or(false);
    Assertion::new(format!("{0}∘{0} = id", greek(sigma.name())), ok)
}

/// Hypotheses of the relative route to strong periodicity: with `P` the
/// projective cut out by `phi: E → A` and `Q` the sum of the projectives at
/// `q_vertices`, `P^∨ ≅ E ⊕ M` and `P ≅ E ⊕ M^∨` as one-sided `E`-modules,
/// and `E`, `M`, `M^∨` are projective over each listed subalgebra.
pub fn relative_witness_prereqs(
    phi: &AlgebraMap,
    q_vertices: &[usize],
    subalgebras: &[&AlgebraMap],
    seed: u64,
) -> Result<PeriodicityReport, PeriodicityError> {
    let e = phi.src().clone();
    let a = phi.dst().clone();
    let nva = a.num_vertices();
    let mut covered = vec![0usize; nva];
    for w in 0..e.num_vertices() {
        let img = phi.vertex_image(w);
        match (0..nva).find(|&v| img == &a.idempotent(v)) {
            Some(v) => covered[v] += 1,
            None => return Err(PeriodicityError::Generator("P is not a sum of indecomposable projectives".into())),
        }
    }
    for &q in q_vertices {
        if q >= nva {
            return Err(PeriodicityError::Generator(format!("vertex {q} out of range")));
        }
        covered[q] += 1;
    }
    if covered.iter().any(|&c| c != 1) {
        return Err(PeriodicityError::Generator("P ⊕ Q is not a basic projective generator".into()));
    }
    let mut report = Report::new("relative periodicity prerequisites");
    let q_parts: Vec<Module> = q_vertices.iter().map(|&q| Module::projective(a.clone(), q, Side::Left)).collect();
    let q_mod = Module::direct_sum(&q_parts.iter().collect::<Vec<_>>())?;
    let m = hom_module(phi, &q_mod)?;
    let md = m.dual();
    let e_left = Module::regular(e.clone(), Side::Left);
    let e_right = Module::regular(e.clone(), Side::Right);

    let pv = hom_module(phi, &Module::regular(a.clone(), Side::Left))?;
    let v = is_isomorphic(&pv, &Module::direct_sum(&[&e_left, &m])?, seed)?;
    report.push(verdict_assertion("P^∨ ≅ E ⊕ M".into(), &v).ledger(vec![pv.dim(), e.dim(), m.dim()]));
    let p = hom_module_right(phi, &Module::regular(a.clone(), Side::Right))?;
    let v = is_isomorphic(&p, &Module::direct_sum(&[&e_right, &md])?, seed)?;
    report.push(verdict_assertion("P ≅ E ⊕ M^∨".into(), &v).ledger(vec![p.dim(), e.dim(), md.dim()]));

    for emb in subalgebras {
        let b = emb.src().name().to_string();
        for (what, module) in [("E", &e_left), ("E", &e_right), ("M", &m), ("M^∨", &md)] {
            let res = module.restrict(emb)?;
            report.push(
                Assertion::new(format!("{what} projective as a {} {b}-module", module.side()), res.is_projective())
                    .ledger(vec![res.dim()]),
            );
        }
    }
    Ok(report)
}
