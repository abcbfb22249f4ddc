//! Normalization pipelines for `F_2 x Z`, `Z^2 * Z` and `F_k x F_l`. Each
//! returns a normal form together with an `OuterWitness` that is checked
//! generator by generator before it is returned.
//!
//! Where the normal form needs a change of basis `F` (the parabolic cases),
//! the witness is stated against `F^-1 . Psi . F` and `F` is stored alongside.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::autos::{Automorphism, OuterWitness};
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::intmat::{classify_matrix, matrix_to_aut_f2, parabolic_normalize, IntMatrix, MatrixVerdict};
use crate::words::{alternating_normal_form, conjugacy_match, gen_of, FreeWord, Letter, ZA, ZB, ZC};

/// `inner(h) . base^k`, tracked symbolically against a fixed `base`.
#[derive(Clone, Debug)]
struct Twisted {
    h: FreeWord,
    k: i64,
}

impl Twisted {
    fn of(base_power: i64) -> Self {
        Twisted {
            h: FreeWord::empty(),
            k: base_power,
        }
    }

    /// `inner(v) . self`.
    fn pre(&self, kind: GroupKind, v: &FreeWord) -> Self {
        Twisted {
            h: kind.mul(&self.h, v),
            k: self.k,
        }
    }

    /// `self^n` using `(inner(h) P)^n = inner(H_n) P^n`, `H_n = P(H_{n-1}) h`.
    fn pow(&self, base: &Automorphism, n: u64) -> Self {
        let kind = base.kind();
        let p = base.power(self.k);
        let mut acc = FreeWord::empty();
        for _ in 0..n {
            acc = kind.mul(&p.apply(&acc), &self.h);
        }
        Twisted {
            h: acc,
            k: self.k * n as i64,
        }
    }

    fn witness(&self) -> OuterWitness {
        OuterWitness {
            h: self.h.clone(),
            k: self.k,
        }
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Matrix(format!("entry {x} does not fit in 64 bits")))
}

fn check_witness(target: &Automorphism, base: &Automorphism, w: &OuterWitness) -> Result<()> {
    if target.outer_equal(base, w) {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "witness (h = {}, k = {}) failed to verify",
            base.kind().alphabet().format(w.h.letters()),
            w.k
        )))
    }
}

/// `g` with `rho = inner(g)` on a free group, or `None` if `rho` is not inner.
/// Candidates are `x0^i h0` where `h0` conjugates `x0` to `rho(x0)`.
pub fn find_inner(rho: &Automorphism) -> Option<FreeWord> {
    let kind = rho.kind();
    let rank = kind.rank();
    let x0 = FreeWord::gen(0);
    let h0 = conjugacy_match(rho.image(0), &x0)?;
    let bound = (rho.images().iter().map(FreeWord::len).sum::<usize>() + h0.len() + 2) as i64;
    let fits = |g: &FreeWord| (0..rank).all(|i| FreeWord::gen(i).conjugate_by(g) == *rho.image(i));
    for m in 0..=bound {
        for i in if m == 0 { vec![0] } else { vec![-m, m] } {
            let g = x0.pow(i).mul(&h0);
            if fits(&g) {
                return Some(g);
            }
        }
    }
    None
}

/// Free part of an automorphism of `F_2 x Z`, as an automorphism of `F_2`.
fn free_part(psi: &Automorphism) -> Result<Automorphism> {
    Ok(psi.induced_maps()?.psi)
}

/// Extends `f` on `F_2` to `F_2 x Z` by `c -> c`.
fn extend_f2(f: &Automorphism) -> Result<Automorphism> {
    let c = FreeWord::gen(2);
    let ext = |ws: &[FreeWord]| ws.iter().cloned().chain(std::iter::once(c.clone())).collect();
    Automorphism::validate(crate::autos::AutomorphismSpec {
        kind: GroupKind::F2xZ,
        images: ext(f.images()),
        inverse_images: ext(f.inverse_images()),
    })
}

/// `R` with `R^-1 [[1, alpha], [0, 1]] R = [[1, 0], [-alpha, 1]]`.
fn swap_rotation() -> IntMatrix {
    IntMatrix::from_rows(&[[0, 1], [-1, 0]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum F2xZCase {
    NonUnit,
    UnitParabolic,
    FiniteOrderBase,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormF2xZ {
    pub case: F2xZCase,
    /// Shear of the normal map `a -> a b^beta c^k_a`; zero outside the parabolic case.
    pub beta: i64,
    pub k_a: i64,
    pub k_b: i64,
    /// Free part `phi` of the commutator-fixing representative.
    pub base: Automorphism,
    /// Abelianization of `base`.
    pub base_matrix: IntMatrix,
    /// Final normalized map: `a -> a b^beta c^k_a, b -> b c^k_b, c -> c` in the
    /// parabolic and finite-order cases, the commutator-fixing map otherwise.
    pub normal_map: Automorphism,
    /// Basis change `F`; the witness is relative to `F^-1 . Psi . F`.
    pub basis_change: Option<Automorphism>,
    /// `normal_map = inner(h) . (F^-1 Psi F)^k`.
    pub witness: OuterWitness,
}

/// Brings `Psi` on `F_2 x Z` to the form used by the cubic/quadratic case split.
pub fn normalize_f2xz(psi: &Automorphism) -> Result<NormalFormF2xZ> {
    let kind = GroupKind::F2xZ;
    if psi.kind() != kind {
        return Err(Error::KindMismatch(kind.name(), psi.kind().name()));
    }
    let maps = psi.induced_maps()?;
    let e1 = if maps.c_sign == 1 { 1 } else { 2 };
    let (a, b) = (FreeWord::gen(0), FreeWord::gen(1));
    let comm = GroupKind::Free(2).commutator(&a, &b);

    // Fix the commutator: it goes to a conjugate of itself after at most two steps.
    let theta = maps.psi.power(e1);
    let mut step = Twisted::of(e1);
    let j = if conjugacy_match(&theta.apply(&comm), &comm).is_some() { 1 } else { 2 };
    let h = conjugacy_match(&theta.power(j).apply(&comm), &comm)
        .ok_or_else(|| Error::Internal("commutator not conjugate to itself".into()))?;
    step = step.pow(psi, j as u64).pre(kind, &h.inverse());
    let phi_full = psi.power(step.k).twist(&step.h);
    let phi = free_part(&phi_full)?;
    if phi.apply(&comm) != comm {
        return Err(Error::Internal("commutator-fixing step failed".into()));
    }
    let m = phi.abelianization()?;
    let class = classify_matrix(&m)?;

    let (case, normal, basis_change, tw, beta) = match class.verdict {
        MatrixVerdict::NonUnitEigenvalue => (F2xZCase::NonUnit, phi_full.clone(), None, step, 0),
        MatrixVerdict::FiniteOrder(n) => {
            let tw = step.pow(psi, n);
            let xi0 = psi.power(tw.k).twist(&tw.h);
            let g = find_inner(&free_part(&xi0)?)
                .ok_or_else(|| Error::Internal("finite-order power is not inner".into()))?;
            let tw = tw.pre(kind, &g.inverse());
            (F2xZCase::FiniteOrderBase, psi.power(tw.k).twist(&tw.h), None, tw, 0)
        }
        MatrixVerdict::UnitParabolic(_) => {
            let form = parabolic_normalize(&m)?;
            let bp = form.b.mul(&swap_rotation());
            let beta = -to_i64(&form.alpha)?;
            let f = extend_f2(&matrix_to_aut_f2(&bp)?)?;
            let conj = psi.conjugate_by_aut(&f);
            let tw = step.pow(psi, form.k);
            let tw = Twisted {
                h: f.apply_inverse(&tw.h),
                k: tw.k,
            };
            let xi0 = conj.power(tw.k).twist(&tw.h);
            let tau = Automorphism::parse(GroupKind::Free(2), &[&format!("a b^{beta}"), "b"], &[
                &format!("a b^{}", -beta),
                "b",
            ])?;
            let rho = free_part(&xi0)?.compose(&tau.inverse())?;
            let g = find_inner(&rho)
                .ok_or_else(|| Error::Internal("parabolic power is not a twisted transvection".into()))?;
            let tw = tw.pre(kind, &g.inverse());
            (F2xZCase::UnitParabolic, conj.power(tw.k).twist(&tw.h), Some(f), tw, beta)
        }
    };
    let witness = tw.witness();
    let reference = match &basis_change {
        Some(f) => psi.conjugate_by_aut(f),
        None => psi.clone(),
    };
    check_witness(&normal, &reference, &witness)?;
    let ex = normal.induced_maps()?;
    if case != F2xZCase::NonUnit {
        let expect_a = FreeWord::gen(0).mul(&FreeWord::gen_pow(1, beta));
        if ex.psi.image(0) != &expect_a || ex.psi.image(1) != &FreeWord::gen(1) || ex.c_sign != 1 {
            return Err(Error::Internal(format!("normal map is not in normal form: {}", normal.format())));
        }
    }
    Ok(NormalFormF2xZ {
        case,
        beta,
        k_a: ex.p[0],
        k_b: ex.p[1],
        base: phi,
        base_matrix: m,
        normal_map: normal,
        basis_change,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Z2Case {
    FiniteOrder,
    NonUnit,
    UnitParabolic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormZ2astZ {
    pub case: Z2Case,
    /// Restriction of the normal map to `Z^2` (columns are images).
    pub xi: IntMatrix,
    /// `normal_map(c) = c a^z.0 b^z.1`.
    pub z: (i64, i64),
    /// `(k, l, m)` for `a -> a b^k, b -> b, c -> c a^l b^m`; absent when `xi`
    /// has a non-unit eigenvalue.
    pub klm: Option<(i64, i64, i64)>,
    pub normal_map: Automorphism,
    pub basis_change: Option<Automorphism>,
    pub witness: OuterWitness,
}

fn z2_word(p: i64, q: i64) -> FreeWord {
    FreeWord::gen_pow(ZA, p).mul(&FreeWord::gen_pow(ZB, q))
}

/// The automorphism of `Z^2 * Z` acting by `b` on `Z^2` and fixing `c`.
pub fn gl2_aut_z2(b: &IntMatrix) -> Result<Automorphism> {
    let inv = b
        .inverse_2x2()
        .ok_or_else(|| Error::Matrix(format!("{b} is not in GL(2,Z)")))?;
    let imgs = |m: &IntMatrix| -> Result<Vec<FreeWord>> {
        Ok(vec![
            z2_word(to_i64(m.get(0, 0))?, to_i64(m.get(1, 0))?),
            z2_word(to_i64(m.get(0, 1))?, to_i64(m.get(1, 1))?),
            FreeWord::gen(ZC),
        ])
    };
    Automorphism::validate(crate::autos::AutomorphismSpec {
        kind: GroupKind::Z2astZ,
        images: imgs(b)?,
        inverse_images: imgs(&inv)?,
    })
}

fn z2_restriction(f: &Automorphism) -> IntMatrix {
    IntMatrix::from_fn(2, |i, j| f.image(j).exponent_sum(i).into())
}

/// `Some((p, q))` when `w` is `a^p b^q`.
fn as_z2(w: &FreeWord) -> Option<(i64, i64)> {
    let alt = alternating_normal_form(w.letters());
    (alt.c_exponents.is_empty()).then(|| alt.syllables[0])
}

/// `c a^p b^q` -> `(p, q)`.
fn c_times_z(w: &FreeWord) -> Option<(i64, i64)> {
    let alt = alternating_normal_form(w.letters());
    (alt.c_exponents == [1] && alt.syllables[0] == (0, 0)).then(|| alt.syllables[1])
}

/// Brings `Psi` on `Z^2 * Z` to `c -> c z` with `Z^2` preserved.
pub fn normalize_z2astz(psi: &Automorphism) -> Result<NormalFormZ2astZ> {
    let kind = GroupKind::Z2astZ;
    if psi.kind() != kind {
        return Err(Error::KindMismatch(kind.name(), psi.kind().name()));
    }
    // Psi(a) = g^-1 u_{m+1} g; read g off the right half of the alternating form.
    let alt = alternating_normal_form(psi.image(ZA).letters());
    let n = alt.c_exponents.len();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "image of a has odd alternation length {n}, so it is not conjugate into <a, b>"
        )));
    }
    let m = n / 2;
    let mut g_raw: Vec<Letter> = Vec::new();
    for i in m..n {
        g_raw.extend(FreeWord::gen_pow(ZC, alt.c_exponents[i]).letters());
        let (p, q) = alt.syllables[i + 1];
        g_raw.extend(z2_word(p, q).letters());
    }
    let g = kind.normalize(&g_raw);
    let step = Twisted::of(1).pre(kind, &kind.inv(&g));
    let phi = psi.twist(&step.h);
    if as_z2(phi.image(ZA)).is_none() || as_z2(phi.image(ZB)).is_none() {
        return Err(Error::Precondition("images of a and b are not conjugate into <a, b>".into()));
    }
    let c_alt = alternating_normal_form(phi.image(ZC).letters());
    if c_alt.c_exponents.len() != 1 || c_alt.c_exponents[0].abs() != 1 {
        return Err(Error::Precondition(format!(
            "image of c is not of the form w c^(+-1) x: {}",
            kind.alphabet().format(phi.image(ZC).letters())
        )));
    }
    let w = z2_word(c_alt.syllables[0].0, c_alt.syllables[0].1);
    let x = z2_word(c_alt.syllables[1].0, c_alt.syllables[1].1);
    let tw = if c_alt.c_exponents[0] == 1 {
        step.pre(kind, &w)
    } else {
        let v = kind.mul(&phi.apply(&w), &kind.inv(&x));
        step.pow(psi, 2).pre(kind, &v)
    };
    let xi_map = psi.power(tw.k).twist(&tw.h);
    let xi = z2_restriction(&xi_map);
    let class = classify_matrix(&xi)?;
    let z_of = |f: &Automorphism| {
        c_times_z(f.image(ZC)).ok_or_else(|| {
            Error::Internal(format!("groomed map does not send c to c z: {}", f.format()))
        })
    };

    let (case, normal, basis_change, tw, klm) = match class.verdict {
        MatrixVerdict::NonUnitEigenvalue => (Z2Case::NonUnit, xi_map, None, tw, None),
        MatrixVerdict::FiniteOrder(n) => {
            let tw = tw.pow(psi, n);
            let f = psi.power(tw.k).twist(&tw.h);
            let z = z_of(&f)?;
            (Z2Case::FiniteOrder, f, None, tw, Some((0, z.0, z.1)))
        }
        MatrixVerdict::UnitParabolic(_) => {
            let form = parabolic_normalize(&xi)?;
            let bp = form.b.mul(&swap_rotation());
            let k = -to_i64(&form.alpha)?;
            let f = gl2_aut_z2(&bp)?;
            let tw = tw.pow(psi, form.k);
            let tw = Twisted {
                h: f.apply_inverse(&tw.h),
                k: tw.k,
            };
            let normal = psi.conjugate_by_aut(&f).power(tw.k).twist(&tw.h);
            let z = z_of(&normal)?;
            (Z2Case::UnitParabolic, normal, Some(f), tw, Some((k, z.0, z.1)))
        }
    };
    let witness = tw.witness();
    let reference = match &basis_change {
        Some(f) => psi.conjugate_by_aut(f),
        None => psi.clone(),
    };
    check_witness(&normal, &reference, &witness)?;
    let z = z_of(&normal)?;
    if let Some((k, _, _)) = klm {
        if normal.image(ZA) != &z2_word(1, k) || normal.image(ZB) != &FreeWord::gen(ZB) {
            return Err(Error::Internal(format!("normal map is not in normal form: {}", normal.format())));
        }
    }
    Ok(NormalFormZ2astZ {
        case,
        xi: z2_restriction(&normal),
        z,
        klm,
        normal_map: normal,
        basis_change,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorDecomposition {
    pub phi1: Automorphism,
    pub phi2: Automorphism,
    /// Whether `Psi` itself exchanges the two factors.
    pub swapped: bool,
    /// `phi1 x phi2 = inner(h) . Psi^2`.
    pub witness: OuterWitness,
}

/// Splits `Psi^2` on `F_k x F_l` into maps of the two factors.
pub fn decompose_fkxfl(psi: &Automorphism) -> Result<FactorDecomposition> {
    let GroupKind::FkxFl(k, l) = psi.kind() else {
        return Err(Error::KindMismatch("FkxFl".into(), psi.kind().name()));
    };
    let in_first = |w: &FreeWord| w.letters().iter().all(|&x| gen_of(x) < k);
    let in_second = |w: &FreeWord| w.letters().iter().all(|&x| gen_of(x) >= k);
    let swapped = !in_first(psi.image(0));
    let sq = psi.power(2);
    let split_ok = (0..k).all(|i| in_first(sq.image(i)) && in_first(&sq.inverse_images()[i]))
        && (k..k + l).all(|i| in_second(sq.image(i)) && in_second(&sq.inverse_images()[i]));
    if !split_ok {
        return Err(Error::Precondition(
            "square does not preserve the factors; not an automorphism of the product".into(),
        ));
    }
    let shift = |w: &FreeWord| -> FreeWord {
        let raw: Vec<Letter> = w
            .letters()
            .iter()
            .map(|&x| if x > 0 { x - k as Letter } else { x + k as Letter })
            .collect();
        crate::words::reduce(&raw)
    };
    let phi1 = Automorphism::validate(crate::autos::AutomorphismSpec {
        kind: GroupKind::Free(k),
        images: sq.images()[..k].to_vec(),
        inverse_images: sq.inverse_images()[..k].to_vec(),
    })?;
    let phi2 = Automorphism::validate(crate::autos::AutomorphismSpec {
        kind: GroupKind::Free(l),
        images: sq.images()[k..].iter().map(shift).collect(),
        inverse_images: sq.inverse_images()[k..].iter().map(shift).collect(),
    })?;
    let witness = OuterWitness {
        h: FreeWord::empty(),
        k: 2,
    };
    check_witness(&sq, psi, &witness)?;
    Ok(FactorDecomposition {
        phi1,
        phi2,
        swapped,
        witness,
    })
}
