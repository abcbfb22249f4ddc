use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::autos::Automorphism;
use crate::corridors::ser_big;
use crate::error::{Error, Result};
use crate::words::{gen_of, reduce, FreeWord, Letter};

/// One stage: the `t^{+-1}` at `position` crosses the base segment after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerLine {
    pub position: usize,
    pub relator: &'static str,
    pub before: usize,
    pub after: usize,
}

impl fmt::Display for LedgerLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.position, self.relator, self.before, self.after)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShuffleCertificate {
    pub input: FreeWord,
    /// `u` in the final word `u t^s`.
    pub base: FreeWord,
    pub s: i64,
    /// Relator applications: one per base letter a stable letter crosses.
    pub applications: u64,
    pub stages: Vec<LedgerLine>,
    /// `C = max |Phi^{+-1}(x)|`.
    pub growth_constant: usize,
    /// `|w| max(C, 2)^|w|`.
    #[serde(serialize_with = "ser_big")]
    pub crude_bound: BigUint,
    /// `s = 0` and `u` is trivial in the base group.
    pub identity: bool,
}

const CONJ: &str = "t^-1 x t = Phi(x)";
const CONJ_INV: &str = "t x t^-1 = Phi^-1(x)";

fn substitute(images: &[FreeWord], raw: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &l in raw {
        let img = images[gen_of(l)].letters();
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|&x| -x));
        }
    }
    out
}

/// Moves every stable letter to the right end of `w` (letters `0..rank` are
/// the base, letter `rank` is `t`), using `t^-1 u = Phi(u) t^-1` and
/// `t u = Phi^-1(u) t`. At each stage the rightmost stable letter that still
/// has base letters after it crosses that segment, first put in the base
/// group's normal form. The count covers the conjugation relators only; the
/// normal forms cost base-group relators, which are not counted.
pub fn t_shuffle(phi: &Automorphism, w: &FreeWord, budget: usize) -> Result<ShuffleCertificate> {
    let rank = phi.kind().rank();
    let t = rank;
    if let Some(&bad) = w.letters().iter().find(|&&l| gen_of(l) > t) {
        return Err(Error::Malformed(format!("letter {bad} outside the mapping-torus alphabet")));
    }
    let kind = phi.kind();
    let c = phi.lipschitz_constant();
    // With C = 1 the count can still be quadratic, so the base is at least 2.
    let crude_bound = BigUint::from(w.len()) * BigUint::from(c.max(2)).pow(w.len() as u32);
    let mut cur = w.letters().to_vec();
    let mut applications = 0u64;
    let mut stages = Vec::new();
    loop {
        let Some(q) = cur.iter().rposition(|&l| gen_of(l) != t) else {
            break;
        };
        let Some(p) = cur[..q].iter().rposition(|&l| gen_of(l) == t) else {
            break;
        };
        let seg = kind.normalize(&cur[p + 1..=q]).into_letters();
        let (images, relator) = if cur[p] < 0 {
            (phi.images(), CONJ)
        } else {
            (phi.inverse_images(), CONJ_INV)
        };
        let image = kind.normalize(&substitute(images, &seg)).into_letters();
        applications += seg.len() as u64;
        stages.push(LedgerLine {
            position: p,
            relator,
            before: seg.len(),
            after: image.len(),
        });
        let mut next = cur[..p].to_vec();
        next.extend_from_slice(&image);
        next.push(cur[p]);
        next.extend_from_slice(&cur[q + 1..]);
        cur = reduce(&next).into_letters();
        if cur.len() > budget {
            return Err(Error::ShuffleBudget {
                budget,
                applications,
                ledger: stages.iter().map(|l| l.to_string()).collect(),
            });
        }
    }
    let split = cur.iter().position(|&l| gen_of(l) == t).unwrap_or(cur.len());
    let base = reduce(&cur[..split]);
    let s: i64 = cur[split..].iter().map(|&l| l.signum() as i64).sum();
    let identity = s == 0 && kind.normalize(base.letters()).is_empty();
    Ok(ShuffleCertificate {
        input: w.clone(),
        base,
        s,
        applications,
        stages,
        growth_constant: c,
        crude_bound,
        identity,
    })
}

/// Smallest `K` with `count <= K |w|^(d+2)` over the samples `(|w|, count)`.
pub fn fit_shuffle_constant(samples: &[(usize, u64)], d: u32) -> f64 {
    samples
        .iter()
        .filter(|(len, _)| *len > 0)
        .map(|&(len, count)| count as f64 / (len as f64).powi(d as i32 + 2))
        .fold(0.0, f64::max)
}
