use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::autos::Automorphism;
use crate::corridors::ser_big;
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::growth::default_probes;
use crate::words::{cyclic_reduce, gen_of, letter, FreeWord, Letter};

use super::ser_big_vec;

fn is_positive(w: &FreeWord) -> bool {
    w.letters().iter().all(|&l| l > 0)
}

/// `||phi^i(w)||` for `i = 0..=n_hi`. Positive maps on positive words are
/// counted through the letter-count matrix (positive words are cyclically
/// reduced); otherwise words are iterated and `budget` caps their length.
pub fn cyclic_length_series(phi: &Automorphism, w: &FreeWord, n_hi: usize, budget: usize) -> Result<Vec<BigUint>> {
    let rank = phi.kind().rank();
    if is_positive(w) && phi.images().iter().all(is_positive) {
        let mut v: Vec<BigUint> = (0..rank).map(|g| BigUint::from(w.exponent_sum(g) as u64)).collect();
        let counts: Vec<Vec<u64>> = phi
            .images()
            .iter()
            .map(|img| (0..rank).map(|g| img.exponent_sum(g) as u64).collect())
            .collect();
        let mut out = Vec::with_capacity(n_hi + 1);
        for _ in 0..=n_hi {
            out.push(v.iter().sum());
            let mut next = vec![BigUint::zero(); rank];
            for (j, vj) in v.iter().enumerate() {
                for (g, &c) in counts[j].iter().enumerate() {
                    if c > 0 {
                        next[g] += vj * c;
                    }
                }
            }
            v = next;
        }
        return Ok(out);
    }
    let mut cur = w.clone();
    let mut out = Vec::with_capacity(n_hi + 1);
    for i in 0..=n_hi {
        if i > 0 {
            cur = phi.apply(&cur);
        }
        if cur.len() > budget {
            return Err(Error::Budget {
                n: i as i64,
                length: cur.len(),
                budget,
            });
        }
        out.push(BigUint::from(cur.cyclic_len()));
    }
    Ok(out)
}

/// The default probe (generator or commutator of generators) with the largest
/// `||phi^{n}(w)||` at `n = 16`, as a cyclically reduced word.
pub fn select_probe(phi: &Automorphism, budget: usize) -> FreeWord {
    let probes = default_probes(phi.kind().rank());
    let score = |w: &FreeWord| match cyclic_length_series(phi, w, 16, budget) {
        Ok(s) => s[16].clone(),
        Err(_) => BigUint::from(budget as u64 + 1),
    };
    let mut best = probes[0].clone();
    let mut best_score = score(&best);
    for p in &probes[1..] {
        let s = score(p);
        if s > best_score {
            best = p.clone();
            best_score = s;
        }
    }
    cyclic_reduce(&best).core
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessFamily {
    pub n: u64,
    /// `t^-4n y^n t^4n x^n t^-4n y^-n t^4n x^-n` over `F_k x F_l` plus `t`.
    pub word: FreeWord,
    pub x: FreeWord,
    pub y: FreeWord,
    /// `n min(||phi1^-i(x)||, ||phi2^i(y)||)` for `i = n..2n-1`.
    #[serde(serialize_with = "ser_big_vec")]
    pub terms: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
}

impl WitnessFamily {
    /// `16n + 2n|x| + 2n|y|`.
    pub fn expected_length(&self) -> u64 {
        self.n * (16 + 2 * self.x.len() as u64 + 2 * self.y.len() as u64)
    }
}

/// Area lower bound for the commutator-of-powers family in the mapping torus
/// of `phi1 x phi2` on `F_k x F_l`: each corridor `C_i`, `n <= i < 2n`, is
/// at least `n min(||phi1^-i(x)||, ||phi2^i(y)||)` long.
pub fn witness_lower_bound(
    phi1: &Automorphism,
    phi2: &Automorphism,
    n: u64,
    x: &FreeWord,
    y: &FreeWord,
    budget: usize,
) -> Result<WitnessFamily> {
    let (GroupKind::Free(k), GroupKind::Free(l)) = (phi1.kind(), phi2.kind()) else {
        return Err(Error::Precondition("witness bounds need automorphisms of free groups".into()));
    };
    for (name, p, rank) in [("x", x, k), ("y", y, l)] {
        if p.is_empty() {
            return Err(Error::Precondition(format!("probe {name} is trivial")));
        }
        if p.cyclic_len() != p.len() || p.letters().iter().any(|&c| gen_of(c) >= rank) {
            return Err(Error::Precondition(format!("probe {name} is not a cyclically reduced word of F{rank}")));
        }
    }
    let nu = n as usize;
    let hi = (2 * nu).saturating_sub(1);
    let (sx, sy) = if n == 0 {
        (Vec::new(), Vec::new())
    } else {
        (
            cyclic_length_series(&phi1.inverse(), x, hi, budget)?,
            cyclic_length_series(phi2, y, hi, budget)?,
        )
    };
    let terms: Vec<BigUint> = (nu..2 * nu)
        .map(|i| BigUint::from(n) * sx[i].clone().min(sy[i].clone()))
        .collect();
    let total = terms.iter().sum();

    let t = (k + l) as i64;
    let tp = |e: i64| FreeWord::gen_pow(t as usize, e);
    let shifted: Vec<Letter> = y
        .letters()
        .iter()
        .map(|&c| letter(gen_of(c) + k, c.signum()))
        .collect();
    let yy = crate::words::reduce(&shifted);
    let m = 4 * n as i64;
    let word = tp(-m)
        .mul(&yy.pow(n as i64))
        .mul(&tp(m))
        .mul(&x.pow(n as i64))
        .mul(&tp(-m))
        .mul(&yy.pow(-(n as i64)))
        .mul(&tp(m))
        .mul(&x.pow(-(n as i64)));
    Ok(WitnessFamily {
        n,
        word,
        x: x.clone(),
        y: y.clone(),
        terms,
        total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BgBound {
    pub n: u64,
    /// `max |Phi^{+-n}(k_i)|`.
    pub max_length: usize,
    pub bound: u128,
}

/// `n^2 max_i |Phi^{+-n}(k_i)|` for a `Phi`-invariant subgroup generated by
/// the letters `k_gens` (an abelian subgroup in the intended use). Fails
/// once an iterate outgrows `budget`.
pub fn bg_lower_bound(phi: &Automorphism, k_gens: &[usize], n: u64, budget: usize) -> Result<BgBound> {
    let inside = |w: &FreeWord| w.letters().iter().all(|&c| k_gens.contains(&gen_of(c)));
    for &g in k_gens {
        if g >= phi.kind().rank() {
            return Err(Error::Precondition(format!("generator index {g} out of range")));
        }
        if !inside(phi.image(g)) || !inside(&phi.inverse_images()[g]) {
            let alpha = phi.kind().alphabet();
            return Err(Error::Precondition(format!(
                "subgroup is not invariant: {} -> {}",
                alpha.name(g),
                alpha.format(phi.image(g).letters())
            )));
        }
    }
    let mut max_length = if k_gens.is_empty() { 0 } else { 1 };
    for f in [phi.clone(), phi.inverse()] {
        for &g in k_gens {
            let mut w = FreeWord::gen(g);
            for i in 0..n {
                w = f.apply(&w);
                if w.len() > budget {
                    return Err(Error::Budget {
                        n: i as i64 + 1,
                        length: w.len(),
                        budget,
                    });
                }
            }
            max_length = max_length.max(w.len());
        }
    }
    Ok(BgBound {
        n,
        max_length,
        bound: (n as u128) * (n as u128) * max_length as u128,
    })
}
