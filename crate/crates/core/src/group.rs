//! The supported base groups and their canonical forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::words::{
    alternating_normal_form, gen_of, reduce, Alphabet, FactorTag, FreeWord, Generator, Letter,
    ProductWord,
};

/// Base group `G` of a mapping torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    /// Free abelian group of rank k.
    Zk(usize),
    /// Free group of rank k; `Free(2)` is `F_2`.
    Free(usize),
    /// `F_2 x Z` on `a, b` and central `c`.
    F2xZ,
    /// `Z^2 * Z` on commuting `a, b` and free `c`.
    Z2astZ,
    /// `F_k x F_l`.
    FkxFl(usize, usize),
    /// `F_k x Z` on `x1..xk` and central `c`.
    FkxZ(usize),
}

const FIRST_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
const SECOND_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

fn gen(index: usize, tag: FactorTag) -> Generator {
    Generator { index, tag }
}

fn free_names(prefix: &str, short: &[&str], k: usize) -> Vec<String> {
    if k <= short.len() {
        short[..k].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }
}

impl GroupKind {
    /// Total number of generators.
    pub fn rank(&self) -> usize {
        match *self {
            GroupKind::Zk(k) | GroupKind::Free(k) => k,
            GroupKind::F2xZ | GroupKind::Z2astZ => 3,
            GroupKind::FkxFl(k, l) => k + l,
            GroupKind::FkxZ(k) => k + 1,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        use FactorTag::*;
        let entries: Vec<(String, Generator)> = match *self {
            GroupKind::Zk(k) | GroupKind::Free(k) => free_names("x", &FIRST_NAMES, k)
                .into_iter()
                .enumerate()
                .map(|(i, n)| (n, gen(i, FirstFree)))
                .collect(),
            GroupKind::F2xZ => vec![
                ("a".into(), gen(0, FirstFree)),
                ("b".into(), gen(1, FirstFree)),
                ("c".into(), gen(0, Central)),
            ],
            GroupKind::Z2astZ => vec![
                ("a".into(), gen(0, FirstFree)),
                ("b".into(), gen(1, FirstFree)),
                ("c".into(), gen(0, SecondFree)),
            ],
            GroupKind::FkxFl(k, l) => {
                let first = free_names("x", &FIRST_NAMES, k);
                let second = free_names("y", &SECOND_NAMES, l);
                first
                    .into_iter()
                    .enumerate()
                    .map(|(i, n)| (n, gen(i, FirstFree)))
                    .chain(
                        second
                            .into_iter()
                            .enumerate()
                            .map(|(i, n)| (n, gen(i, SecondFree))),
                    )
                    .collect()
            }
            GroupKind::FkxZ(k) => (1..=k)
                .map(|i| (format!("x{i}"), gen(i - 1, FirstFree)))
                .chain(std::iter::once(("c".to_string(), gen(0, Central))))
                .collect(),
        };
        Alphabet::new(entries)
    }

    /// Index of the central generator, if any.
    pub fn central(&self) -> Option<usize> {
        match *self {
            GroupKind::F2xZ => Some(2),
            GroupKind::FkxZ(k) => Some(k),
            _ => None,
        }
    }

    /// Rank of the free (non-central) part for `F_2 x Z` and `F_k x Z`.
    pub fn free_rank(&self) -> usize {
        match *self {
            GroupKind::F2xZ => 2,
            GroupKind::FkxZ(k) => k,
            GroupKind::FkxFl(k, _) => k,
            _ => self.rank(),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, GroupKind::Free(_))
    }

    /// Whether generators `i` and `j` commute by a defining relation.
    pub fn commute(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        match *self {
            GroupKind::Zk(_) => true,
            GroupKind::Free(_) => false,
            GroupKind::F2xZ | GroupKind::FkxZ(_) => {
                let c = self.central().unwrap();
                i == c || j == c
            }
            GroupKind::Z2astZ => (i.min(j), i.max(j)) == (0, 1),
            GroupKind::FkxFl(k, _) => (i < k) != (j < k),
        }
    }

    /// Pairs `(i, j)`, `i < j`, of generators commuting by definition.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.commute(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Canonical form: equal group elements give identical words.
    ///
    /// Free groups: free reduction. Products: first-factor part followed by
    /// second-factor (or central) part. `Z^k`: `x1^e1 ... xk^ek`.
    /// `Z^2 * Z`: alternating normal form with syllables `a^i b^j`.
    pub fn normalize(&self, raw: &[Letter]) -> FreeWord {
        match *self {
            GroupKind::Free(_) => reduce(raw),
            GroupKind::Zk(k) => {
                let mut e = vec![0i64; k];
                for &l in raw {
                    e[gen_of(l)] += l.signum() as i64;
                }
                let mut out = FreeWord::empty();
                for (g, &x) in e.iter().enumerate() {
                    out = out.mul(&FreeWord::gen_pow(g, x));
                }
                out
            }
            GroupKind::F2xZ | GroupKind::FkxZ(_) => {
                let c = self.central().unwrap();
                ProductWord::split(raw, |g| g != c).to_word()
            }
            GroupKind::FkxFl(k, _) => ProductWord::split(raw, |g| g < k).to_word(),
            GroupKind::Z2astZ => alternating_normal_form(raw).to_word(),
        }
    }

    pub fn mul(&self, x: &FreeWord, y: &FreeWord) -> FreeWord {
        let mut raw = x.letters().to_vec();
        raw.extend_from_slice(y.letters());
        self.normalize(&raw)
    }

    pub fn inv(&self, x: &FreeWord) -> FreeWord {
        self.normalize(x.inverse().letters())
    }

    /// `h^-1 x h` in canonical form.
    pub fn conjugate(&self, x: &FreeWord, h: &FreeWord) -> FreeWord {
        let mut raw = h.inverse().into_letters();
        raw.extend_from_slice(x.letters());
        raw.extend_from_slice(h.letters());
        self.normalize(&raw)
    }

    /// Canonical form of `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: &FreeWord, y: &FreeWord) -> FreeWord {
        let mut raw = x.inverse().into_letters();
        raw.extend_from_slice(y.inverse().letters());
        raw.extend_from_slice(x.letters());
        raw.extend_from_slice(y.letters());
        self.normalize(&raw)
    }

    /// Defining relators (commutators of commuting generator pairs).
    pub fn relators(&self) -> Vec<FreeWord> {
        self.commuting_pairs()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (FreeWord::gen(i), FreeWord::gen(j));
                reduce(
                    &[a.inverse(), b.inverse(), a, b]
                        .iter()
                        .flat_map(|w| w.letters().to_vec())
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    /// Short name used in reports and spec files.
    pub fn name(&self) -> String {
        match *self {
            GroupKind::Zk(k) => format!("Z{k}"),
            GroupKind::Free(k) => format!("F{k}"),
            GroupKind::F2xZ => "F2xZ".into(),
            GroupKind::Z2astZ => "Z2*Z".into(),
            GroupKind::FkxFl(k, l) => format!("F{k}xF{l}"),
            GroupKind::FkxZ(k) => format!("F{k}xZ"),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
