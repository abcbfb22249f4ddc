//! Dehn function classifiers, one per base group, each returning a class with
//! a provenance identifier and a snapshot of the normal form it used.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::autos::Automorphism;
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::growth::{growth_class, Exactness, GrowthClass, GrowthKind, GrowthOptions};
use crate::intmat::{classify_matrix, IntMatrix, MatrixVerdict};
use crate::normalize::{decompose_fkxfl, normalize_f2xz, normalize_z2astz, F2xZCase, Z2Case};
use crate::words::{conjugacy_match, gen_of, FreeWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DehnKind {
    Linear,
    Quadratic,
    Cubic,
    /// `n^d` with `d >= 4`; use [`DehnKind::poly`] to build.
    Polynomial(u32),
    Exponential,
    Bracket(Box<DehnKind>, Box<DehnKind>),
}

impl DehnKind {
    /// `n^d`, folding degrees 1 to 3 into the named kinds.
    pub fn poly(d: u32) -> DehnKind {
        match d {
            0 | 1 => DehnKind::Linear,
            2 => DehnKind::Quadratic,
            3 => DehnKind::Cubic,
            d => DehnKind::Polynomial(d),
        }
    }

    /// Polynomial degree; `None` for exponential and brackets.
    pub fn degree(&self) -> Option<u32> {
        match self {
            DehnKind::Linear => Some(1),
            DehnKind::Quadratic => Some(2),
            DehnKind::Cubic => Some(3),
            DehnKind::Polynomial(d) => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for DehnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DehnKind::Linear => f.write_str("Linear"),
            DehnKind::Quadratic => f.write_str("Quadratic"),
            DehnKind::Cubic => f.write_str("Cubic"),
            DehnKind::Polynomial(d) => write!(f, "n^{d}"),
            DehnKind::Exponential => f.write_str("Exponential"),
            DehnKind::Bracket(lo, hi) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DehnClass {
    pub kind: DehnKind,
    /// Case identifier such as `f2xz/unit-parabolic/kb-nonzero`.
    pub provenance: String,
    /// One-line reason for the verdict.
    pub note: String,
    /// Set iff an empirical growth estimate fed the decision.
    pub heuristic: bool,
    pub normal_form: Value,
}

impl DehnClass {
    fn new(kind: DehnKind, provenance: &str, note: impl Into<String>, normal_form: Value) -> Self {
        DehnClass {
            kind,
            provenance: provenance.to_string(),
            note: note.into(),
            heuristic: false,
            normal_form,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub growth: GrowthOptions,
    /// Candidate `w` with `Phi(w) = w c^k`, `k != 0`, for `F_k x Z`.
    pub witness: Option<FreeWord>,
}

/// Free abelian base: exponential iff some eigenvalue is off the unit circle,
/// otherwise `n^{c+1}` for the largest Jordan block size `c`.
pub fn classify_zk(a: &IntMatrix) -> Result<DehnClass> {
    let class = classify_matrix(a)?;
    let snap = json!({ "matrix": a, "class": class });
    Ok(match class.verdict {
        MatrixVerdict::NonUnitEigenvalue => {
            DehnClass::new(DehnKind::Exponential, "zk/non-unit-eigenvalue", "eigenvalue off the unit circle", snap)
        }
        MatrixVerdict::FiniteOrder(n) => DehnClass::new(
            DehnKind::Quadratic,
            "zk/jordan-block",
            format!("finite order {n}, largest Jordan block 1"),
            snap,
        ),
        MatrixVerdict::UnitParabolic(c) => DehnClass::new(
            DehnKind::poly(c as u32 + 1),
            "zk/jordan-block",
            format!("largest Jordan block {c}"),
            snap,
        ),
    })
}

/// Rank 2 free base: the commutator class is always periodic, so the mapping
/// torus is never hyperbolic, and its Dehn function is quadratic.
pub fn classify_f2(phi: &Automorphism) -> Result<DehnClass> {
    if phi.kind() != GroupKind::Free(2) {
        return Err(Error::KindMismatch("F2".into(), phi.kind().name()));
    }
    let k = GroupKind::Free(2);
    let comm = k.commutator(&FreeWord::gen(0), &FreeWord::gen(1));
    let h = conjugacy_match(&phi.power(2).apply(&comm), &comm)
        .ok_or_else(|| Error::Internal("square does not fix the commutator class".into()))?;
    let snap = json!({ "commutator_conjugator": k.alphabet().format(h.letters()) });
    Ok(DehnClass::new(
        DehnKind::Quadratic,
        "f2/periodic-commutator",
        "phi^2([a,b]) is conjugate to [a,b]; no automorphism of F2 is atoroidal",
        snap,
    ))
}

pub fn classify_f2xz(psi: &Automorphism) -> Result<DehnClass> {
    let nf = normalize_f2xz(psi)?;
    let snap = serde_json::to_value(&nf).map_err(|e| Error::Internal(e.to_string()))?;
    let (kind, prov, note) = match nf.case {
        F2xZCase::NonUnit => (DehnKind::Quadratic, "f2xz/non-unit", "base has a non-unit eigenvalue".to_string()),
        F2xZCase::UnitParabolic if nf.k_b != 0 => (
            DehnKind::Cubic,
            "f2xz/unit-parabolic/kb-nonzero",
            format!("beta = {}, k_b = {}", nf.beta, nf.k_b),
        ),
        F2xZCase::UnitParabolic => (
            DehnKind::Quadratic,
            "f2xz/unit-parabolic/kb-zero",
            format!("beta = {}, k_b = 0", nf.beta),
        ),
        F2xZCase::FiniteOrderBase if (nf.k_a, nf.k_b) != (0, 0) => (
            DehnKind::Cubic,
            "f2xz/finite-order/k-nonzero",
            format!("(k_a, k_b) = ({}, {})", nf.k_a, nf.k_b),
        ),
        F2xZCase::FiniteOrderBase => (
            DehnKind::Quadratic,
            "f2xz/finite-order/k-zero",
            "(k_a, k_b) = (0, 0)".to_string(),
        ),
    };
    Ok(DehnClass::new(kind, prov, note, snap))
}

pub fn classify_z2astz(psi: &Automorphism) -> Result<DehnClass> {
    let nf = normalize_z2astz(psi)?;
    let snap = serde_json::to_value(&nf).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(match nf.case {
        Z2Case::FiniteOrder => DehnClass::new(DehnKind::Quadratic, "z2astz/finite-order", "xi has finite order", snap),
        Z2Case::NonUnit => {
            DehnClass::new(DehnKind::Exponential, "z2astz/non-unit", "xi has an eigenvalue off the unit circle", snap)
        }
        Z2Case::UnitParabolic => {
            let (k, l, m) = nf.klm.unwrap_or_default();
            DehnClass::new(DehnKind::Cubic, "z2astz/unit-parabolic", format!("(k, l, m) = ({k}, {l}, {m})"), snap)
        }
    })
}

fn growth_rank(g: &GrowthClass) -> Option<u32> {
    match g.kind {
        GrowthKind::Periodic => Some(0),
        GrowthKind::Polynomial(d) => Some(d),
        GrowthKind::Exponential => None,
    }
}

/// Product of two free groups: quadratic if a factor is periodic, exponential
/// if both grow exponentially, otherwise `n^{d+2}` for the smaller cyclic degree.
pub fn classify_fkxfl(psi: &Automorphism, opts: &GrowthOptions) -> Result<DehnClass> {
    let GroupKind::FkxFl(k, l) = psi.kind() else {
        return Err(Error::KindMismatch("FkxFl".into(), psi.kind().name()));
    };
    if k < 2 || l < 2 {
        return Err(Error::Precondition("both factors need rank at least 2".into()));
    }
    let dec = decompose_fkxfl(psi)?;
    let g1 = growth_class(&dec.phi1, opts)?;
    let g2 = growth_class(&dec.phi2, opts)?;
    let heuristic = g1.exactness == Exactness::Heuristic || g2.exactness == Exactness::Heuristic;
    let snap = json!({ "decomposition": dec, "growth": [g1, g2] });
    let (kind, prov, note) = match (growth_rank(&g1), growth_rank(&g2)) {
        (Some(0), _) | (_, Some(0)) => (DehnKind::Quadratic, "fkxfl/periodic-factor", "a factor map is periodic".to_string()),
        (None, None) => (DehnKind::Exponential, "fkxfl/exponential", "both factor maps grow exponentially".to_string()),
        (d1, d2) => {
            let d = d1.unwrap_or(u32::MAX).min(d2.unwrap_or(u32::MAX));
            (
                DehnKind::poly(d + 2),
                "fkxfl/polynomial",
                format!("cyclic degrees {:?} and {:?}; smaller is {d}", g1.kind, g2.kind),
            )
        }
    };
    let mut class = DehnClass::new(kind, prov, note, snap);
    class.heuristic = heuristic;
    Ok(class)
}

/// Relabels `F_2 x Z` written as `F2xZ` kind.
fn as_f2xz(psi: &Automorphism) -> Result<Automorphism> {
    Automorphism::validate(crate::autos::AutomorphismSpec {
        kind: GroupKind::F2xZ,
        images: psi.images().to_vec(),
        inverse_images: psi.inverse_images().to_vec(),
    })
}

/// `F_k x Z`: bracketed between quadratic and cubic unless a witness `w` with
/// `Phi(w)` conjugate to `w c^k`, `k != 0`, shows the cubic lower bound. Here
/// `Phi` is `Psi` or `Psi^2`, whichever fixes `c`.
pub fn classify_fkxz(psi: &Automorphism, witness: Option<&FreeWord>) -> Result<DehnClass> {
    let GroupKind::FkxZ(k) = psi.kind() else {
        return Err(Error::KindMismatch("FkxZ".into(), psi.kind().name()));
    };
    if k == 2 && witness.is_none() {
        let mut class = classify_f2xz(&as_f2xz(psi)?)?;
        class.note = format!("rank 2 free part; {}", class.note);
        return Ok(class);
    }
    let maps = psi.induced_maps()?;
    let phi = if maps.c_sign == 1 { psi.clone() } else { psi.power(2) };
    let bracket = DehnKind::Bracket(Box::new(DehnKind::Quadratic), Box::new(DehnKind::Cubic));
    let Some(w) = witness else {
        return Ok(DehnClass::new(bracket, "fkxz/bracket", "no witness supplied", Value::Null));
    };
    let alpha = psi.kind().alphabet();
    let c = k;
    if w.is_empty() || w.letters().iter().any(|&x| gen_of(x) == c) {
        return Err(Error::WitnessRejected("witness must be a nontrivial word in the free factor".into()));
    }
    let image = phi.apply(w);
    let shift = image.exponent_sum(c);
    let free = crate::words::reduce(
        &image.letters().iter().copied().filter(|&x| gen_of(x) != c).collect::<Vec<_>>(),
    );
    let Some(h) = conjugacy_match(&free, w) else {
        return Err(Error::WitnessRejected(format!(
            "Phi({}) = {} is not conjugate to the witness times a central power",
            alpha.format(w.letters()),
            alpha.format(image.letters())
        )));
    };
    if shift == 0 {
        return Err(Error::WitnessRejected(format!(
            "Phi({}) has central exponent 0",
            alpha.format(w.letters())
        )));
    }
    let snap = json!({
        "witness": alpha.format(w.letters()),
        "image": alpha.format(image.letters()),
        "central_exponent": shift,
        "conjugator": alpha.format(h.letters()),
    });
    Ok(DehnClass::new(
        DehnKind::Cubic,
        "fkxz/witness-cubic",
        format!("Phi(w) = w c^{shift} up to conjugacy"),
        snap,
    ))
}

/// Dispatches on the group kind.
pub fn classify(psi: &Automorphism, opts: &ClassifyOptions) -> Result<DehnClass> {
    match psi.kind() {
        GroupKind::Zk(_) => classify_zk(&psi.abelianization()?),
        GroupKind::Free(2) => classify_f2(psi),
        GroupKind::Free(k) => Err(Error::Precondition(format!(
            "free groups of rank {k} are outside the supported classification"
        ))),
        GroupKind::F2xZ => classify_f2xz(psi),
        GroupKind::Z2astZ => classify_z2astz(psi),
        GroupKind::FkxFl(..) => classify_fkxfl(psi, &opts.growth),
        GroupKind::FkxZ(_) => classify_fkxz(psi, opts.witness.as_ref()),
    }
}
