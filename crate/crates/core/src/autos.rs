//! Automorphisms given by generator images together with inverse images.
//!
//! Composition is `(f.compose(g))(x) = f(g(x))`. Inner automorphisms follow
//! the crate-wide convention `inner(h)(x) = h^-1 x h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::intmat::IntMatrix;
use crate::words::{gen_of, FreeWord, Letter};

/// Unvalidated input: images and inverse images per generator, in canonical
/// form for the group kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSpec {
    pub kind: GroupKind,
    pub images: Vec<FreeWord>,
    pub inverse_images: Vec<FreeWord>,
}

impl AutomorphismSpec {
    /// Builds a spec from word literals in the kind's alphabet.
    pub fn parse(kind: GroupKind, images: &[&str], inverse_images: &[&str]) -> Result<Self> {
        let alpha = kind.alphabet();
        let conv = |ws: &[&str]| -> Result<Vec<FreeWord>> {
            ws.iter()
                .map(|s| Ok(kind.normalize(alpha.parse_word(s)?.letters())))
                .collect()
        };
        Ok(AutomorphismSpec {
            kind,
            images: conv(images)?,
            inverse_images: conv(inverse_images)?,
        })
    }
}

/// A validated automorphism. Both compositions with the inverse are the
/// identity and every defining relation is preserved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    kind: GroupKind,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

/// Conjugation witness: `target = inner(h) . base^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterWitness {
    pub h: FreeWord,
    pub k: i64,
}

/// The map induced on the free factor of `F_k x Z`, plus the central
/// exponents `p(x)` of each image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMaps {
    pub psi: Automorphism,
    pub p: Vec<i64>,
    /// Sign `s` with `Psi(c) = c^s`.
    pub c_sign: i64,
}

fn substitute(kind: GroupKind, images: &[FreeWord], raw: &[Letter]) -> FreeWord {
    let mut out: Vec<Letter> = Vec::new();
    for &l in raw {
        let img = &images[gen_of(l)];
        if l > 0 {
            out.extend_from_slice(img.letters());
        } else {
            out.extend(img.letters().iter().rev().map(|&x| -x));
        }
    }
    kind.normalize(&out)
}

fn check_relations(kind: GroupKind, images: &[FreeWord], which: &str) -> Result<()> {
    let alpha = kind.alphabet();
    for (i, j) in kind.commuting_pairs() {
        if !kind.commutator(&images[i], &images[j]).is_empty() {
            return Err(Error::Relation(format!(
                "{which} images of {} and {} do not commute",
                alpha.name(i),
                alpha.name(j)
            )));
        }
    }
    Ok(())
}

impl Automorphism {
    pub fn validate(spec: AutomorphismSpec) -> Result<Self> {
        let AutomorphismSpec {
            kind,
            images,
            inverse_images,
        } = spec;
        let n = kind.rank();
        if images.len() != n || inverse_images.len() != n {
            return Err(Error::Malformed(format!(
                "{kind} needs {n} images and {n} inverse images, got {} and {}",
                images.len(),
                inverse_images.len()
            )));
        }
        for w in images.iter().chain(&inverse_images) {
            if w.letters().iter().any(|&l| gen_of(l) >= n) {
                return Err(Error::Malformed(format!("image uses a letter outside {kind}")));
            }
        }
        let images: Vec<FreeWord> = images.iter().map(|w| kind.normalize(w.letters())).collect();
        let inverse_images: Vec<FreeWord> = inverse_images
            .iter()
            .map(|w| kind.normalize(w.letters()))
            .collect();
        check_relations(kind, &images, "forward")?;
        check_relations(kind, &inverse_images, "inverse")?;
        let alpha = kind.alphabet();
        for g in 0..n {
            let x = FreeWord::gen(g);
            let there = substitute(kind, &inverse_images, images[g].letters());
            if there != x {
                return Err(Error::NotInverse {
                    generator: alpha.name(g).to_string(),
                    detail: format!("inverse(image) = {}", alpha.format(there.letters())),
                });
            }
            let back = substitute(kind, &images, inverse_images[g].letters());
            if back != x {
                return Err(Error::NotInverse {
                    generator: alpha.name(g).to_string(),
                    detail: format!("image(inverse) = {}", alpha.format(back.letters())),
                });
            }
        }
        Ok(Automorphism {
            kind,
            images,
            inverse_images,
        })
    }

    /// Parses and validates in one step.
    pub fn parse(kind: GroupKind, images: &[&str], inverse_images: &[&str]) -> Result<Self> {
        Self::validate(AutomorphismSpec::parse(kind, images, inverse_images)?)
    }

    pub(crate) fn new_unchecked(
        kind: GroupKind,
        images: Vec<FreeWord>,
        inverse_images: Vec<FreeWord>,
    ) -> Self {
        Automorphism {
            kind,
            images,
            inverse_images,
        }
    }

    pub fn identity(kind: GroupKind) -> Self {
        let images: Vec<FreeWord> = (0..kind.rank()).map(FreeWord::gen).collect();
        Automorphism {
            kind,
            inverse_images: images.clone(),
            images,
        }
    }

    /// `x -> h^-1 x h`.
    pub fn inner(kind: GroupKind, h: &FreeWord) -> Self {
        let h = kind.normalize(h.letters());
        let hi = kind.inv(&h);
        let conj = |by: &FreeWord| -> Vec<FreeWord> {
            (0..kind.rank())
                .map(|g| kind.conjugate(&FreeWord::gen(g), by))
                .collect()
        };
        Automorphism {
            kind,
            images: conj(&h),
            inverse_images: conj(&hi),
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord] {
        &self.inverse_images
    }

    pub fn image(&self, g: usize) -> &FreeWord {
        &self.images[g]
    }

    pub fn to_spec(&self) -> AutomorphismSpec {
        AutomorphismSpec {
            kind: self.kind,
            images: self.images.clone(),
            inverse_images: self.inverse_images.clone(),
        }
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        substitute(self.kind, &self.images, w.letters())
    }

    pub fn apply_letters(&self, raw: &[Letter]) -> FreeWord {
        substitute(self.kind, &self.images, raw)
    }

    pub fn apply_inverse(&self, w: &FreeWord) -> FreeWord {
        substitute(self.kind, &self.inverse_images, w.letters())
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            kind: self.kind,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    fn compose_unchecked(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            kind: self.kind,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| other.apply_inverse(w))
                .collect(),
        }
    }

    /// `self . other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind.name(), other.kind.name()));
        }
        Automorphism::validate(self.compose_unchecked(other).to_spec())
    }

    /// `self^n`; negative powers use the inverse images.
    pub fn power(&self, n: i64) -> Automorphism {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Automorphism::identity(self.kind);
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose_unchecked(&sq);
            }
        }
        acc
    }

    /// `inner(h) . self`.
    pub fn twist(&self, h: &FreeWord) -> Automorphism {
        Automorphism::inner(self.kind, h).compose_unchecked(self)
    }

    /// `f^-1 . self . f` for an automorphism `f` of the same group.
    pub fn conjugate_by_aut(&self, f: &Automorphism) -> Automorphism {
        f.inverse().compose_unchecked(self).compose_unchecked(f)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(g, w)| *w == FreeWord::gen(g))
    }

    /// `max |f^{+-1}(x)|` over generators.
    pub fn lipschitz_constant(&self) -> usize {
        self.images
            .iter()
            .chain(&self.inverse_images)
            .map(FreeWord::len)
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// Exponent-sum matrix with column `j` the image of generator `j`. For
    /// `F_2 x Z` and `F_k x Z` only the free generators are used.
    pub fn abelianization(&self) -> Result<IntMatrix> {
        let n = match self.kind {
            GroupKind::F2xZ | GroupKind::FkxZ(_) => self.kind.free_rank(),
            _ => self.kind.rank(),
        };
        let m = IntMatrix::from_fn(n, |i, j| self.images[j].exponent_sum(i).into());
        let d = m.det();
        if d != 1.into() && d != (-1).into() {
            return Err(Error::Internal(format!(
                "abelianization has determinant {d}"
            )));
        }
        Ok(m)
    }

    /// Kills the centre of `F_2 x Z` or `F_k x Z`.
    pub fn induced_maps(&self) -> Result<InducedMaps> {
        let c = self.kind.central().ok_or_else(|| {
            Error::Precondition(format!("induced maps need a central factor, got {}", self.kind))
        })?;
        let k = self.kind.free_rank();
        let c_image = &self.images[c];
        let c_sign = c_image.exponent_sum(c);
        if c_image.len() != 1 || c_sign.abs() != 1 {
            return Err(Error::Relation("centre not mapped to c^{+-1}".into()));
        }
        let strip = |w: &FreeWord| -> FreeWord {
            let raw: Vec<Letter> = w.letters().iter().copied().filter(|&l| gen_of(l) != c).collect();
            crate::words::reduce(&raw)
        };
        let psi = Automorphism::new_unchecked(
            GroupKind::Free(k),
            self.images[..k].iter().map(strip).collect(),
            self.inverse_images[..k].iter().map(strip).collect(),
        );
        let p = self.images[..k].iter().map(|w| w.exponent_sum(c)).collect();
        Ok(InducedMaps { psi, p, c_sign })
    }

    /// Checks `self = inner(w.h) . base^{w.k}` on every generator.
    pub fn outer_equal(&self, base: &Automorphism, w: &OuterWitness) -> bool {
        self.kind == base.kind && *self == base.power(w.k).twist(&w.h)
    }

    pub fn format(&self) -> String {
        let alpha = self.kind.alphabet();
        (0..self.kind.rank())
            .map(|g| format!("{} -> {}", alpha.name(g), alpha.format(self.images[g].letters())))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(im: &[&str], inv: &[&str]) -> Result<Automorphism> {
        Automorphism::parse(GroupKind::Free(2), im, inv)
    }

    #[test]
    fn validation() {
        assert!(f2(&["a b", "b"], &["a b^-1", "b"]).is_ok());
        match f2(&["a b", "b"], &["a b", "b"]) {
            Err(Error::NotInverse { generator, .. }) => assert_eq!(generator, "a"),
            other => panic!("unexpected {other:?}"),
        }
        let psi_a = Automorphism::parse(GroupKind::Z2astZ, &["a", "b", "c a"], &["a", "b", "c a^-1"]);
        assert!(psi_a.is_ok());
        let bad = Automorphism::parse(GroupKind::Z2astZ, &["a c", "b", "c"], &["a c^-1", "b", "c"]);
        assert!(matches!(bad, Err(Error::Relation(_))));
    }

    #[test]
    fn apply_power_compose() {
        let phi = f2(&["a b", "b"], &["a b^-1", "b"]).unwrap();
        let alpha = GroupKind::Free(2).alphabet();
        let w = |s: &str| alpha.parse_word(s).unwrap();
        assert_eq!(phi.apply(&w("a b")), w("a b b"));
        assert_eq!(phi.power(3).apply(&w("a")), w("a b^3"));
        assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
        assert_eq!(phi.power(-2).apply(&w("a")), w("a b^-2"));
    }

    #[test]
    fn composition_order_is_pinned() {
        // f: a -> ab, g: a <-> b. f(g(a)) = f(b) = b; g(f(a)) = g(ab) = ba.
        let f = f2(&["a b", "b"], &["a b^-1", "b"]).unwrap();
        let g = f2(&["b", "a"], &["b", "a"]).unwrap();
        let alpha = GroupKind::Free(2).alphabet();
        assert_eq!(alpha.format(f.compose(&g).unwrap().image(0).letters()), "b");
        assert_eq!(alpha.format(g.compose(&f).unwrap().image(0).letters()), "b a");
        // Abelianization is a homomorphism in this order.
        let fg = f.compose(&g).unwrap().abelianization().unwrap();
        assert_eq!(fg, f.abelianization().unwrap().mul(&g.abelianization().unwrap()));
    }

    #[test]
    fn abelianization_examples() {
        let t = f2(&["a b", "b"], &["a b^-1", "b"]).unwrap();
        assert_eq!(t.abelianization().unwrap(), IntMatrix::from_rows(&[[1, 0], [1, 1]]));
        let id = Automorphism::identity(GroupKind::Free(2));
        assert_eq!(id.abelianization().unwrap(), IntMatrix::identity(2));
        let fib = f2(&["a b", "a"], &["b", "b^-1 a"]).unwrap();
        assert_eq!(fib.abelianization().unwrap(), IntMatrix::from_rows(&[[1, 1], [1, 0]]));
    }

    #[test]
    fn induced_maps_examples() {
        let k = GroupKind::F2xZ;
        let psi = Automorphism::parse(k, &["a b c^2", "b", "c"], &["a b^-1 c^-2", "b", "c"]).unwrap();
        let ind = psi.induced_maps().unwrap();
        let alpha = GroupKind::Free(2).alphabet();
        assert_eq!(alpha.format(ind.psi.image(0).letters()), "a b");
        assert_eq!(ind.p, vec![2, 0]);
        let id = Automorphism::identity(k).induced_maps().unwrap();
        assert!(id.psi.is_identity() && id.p == vec![0, 0]);
        let psi = Automorphism::parse(k, &["a", "b c^-1", "c"], &["a", "b c", "c"]).unwrap();
        assert_eq!(psi.induced_maps().unwrap().p, vec![0, -1]);
    }

    #[test]
    fn inner_and_outer_equal() {
        let k = GroupKind::Free(2);
        let alpha = k.alphabet();
        let ia = Automorphism::inner(k, &alpha.parse_word("a").unwrap());
        assert_eq!(alpha.format(ia.image(1).letters()), "a^-1 b a");
        let phi = f2(&["a b", "b"], &["a b^-1", "b"]).unwrap();
        assert!(phi.outer_equal(&phi, &OuterWitness { h: FreeWord::empty(), k: 1 }));

        let z = GroupKind::Z2astZ;
        let c = z.alphabet().parse_word("c").unwrap();
        let psi_a = Automorphism::parse(z, &["a", "b", "c a"], &["a", "b", "c a^-1"]).unwrap();
        let twisted = Automorphism::inner(z, &c).compose(&psi_a).unwrap();
        assert!(twisted.outer_equal(&psi_a, &OuterWitness { h: c, k: 1 }));
    }
}
