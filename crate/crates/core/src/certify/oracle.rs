//! Exact areas of short words by best-first search.
//!
//! States are freely reduced words of length at most `L_max`; a move inserts a
//! cyclic conjugate of a relator or its inverse anywhere and freely reduces.
//! The minimal number of moves to reach the empty word is the area among
//! diagrams whose intermediate boundaries fit under the cap.
//!
//! The search is A* with an admissible, consistent lower bound: every move
//! changes the length by at most the longest relator, and changes the
//! algebraic area `oint x dy` in any generator pair on which all relators are
//! balanced by at most the largest relator area. That bound holds for all
//! diagrams, not just capped ones, so a result meeting it is exact outright.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::Serialize;

use crate::autos::Automorphism;
use crate::group::GroupKind;
use crate::words::{cyclic_reduce, gen_of, letter, reduce, Alphabet, FreeWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub name: String,
    #[serde(skip)]
    pub alphabet: Alphabet,
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(name: &str, alphabet: Alphabet, relators: Vec<FreeWord>) -> Self {
        Presentation {
            name: name.to_string(),
            alphabet,
            relators,
        }
    }

    /// Defining relators of the base group.
    pub fn base(kind: GroupKind) -> Self {
        Presentation::new(&kind.name(), kind.alphabet(), kind.relators())
    }

    /// Base relators plus `t^-1 x t Phi(x)^-1` for every generator `x`.
    pub fn mapping_torus(phi: &Automorphism) -> Self {
        let kind = phi.kind();
        let t = kind.rank();
        let mut relators = kind.relators();
        for g in 0..t {
            let raw: Vec<Letter> = [letter(t, -1), letter(g, 1), letter(t, 1)]
                .into_iter()
                .chain(phi.image(g).inverse().into_letters())
                .collect();
            relators.push(reduce(&raw));
        }
        Presentation::new(&format!("M({})", kind.name()), kind.alphabet().with_stable("t"), relators)
    }

    /// `<a, t | [a, t]>`.
    pub fn commuting_pair() -> Self {
        let mut p = Presentation::mapping_torus(&Automorphism::identity(GroupKind::Free(1)));
        p.name = "Z2".into();
        p
    }

    /// `<a, c, t | a^t = a, c^t = c a^l>`.
    pub fn n_l(l: i64) -> Self {
        let k = GroupKind::Free(2);
        let phi = Automorphism::validate(crate::autos::AutomorphismSpec {
            kind: k,
            images: vec![FreeWord::gen(0), FreeWord::gen(1).mul(&FreeWord::gen_pow(0, l))],
            inverse_images: vec![FreeWord::gen(0), FreeWord::gen(1).mul(&FreeWord::gen_pow(0, -l))],
        })
        .expect("c -> c a^l is an automorphism");
        let alpha = crate::corridors::corridor_alphabet(false);
        Presentation::new(&format!("N_{l}"), alpha, Presentation::mapping_torus(&phi).relators)
    }

    /// `<a, b, c, t | [a, b], a^t = a b^k, b^t = b, c^t = c a^l b^m>`.
    pub fn m_klm(k: i64, l: i64, m: i64) -> Self {
        let z = GroupKind::Z2astZ;
        let w = |p: i64, q: i64| FreeWord::gen_pow(0, p).mul(&FreeWord::gen_pow(1, q));
        let c = FreeWord::gen(2);
        let phi = Automorphism::validate(crate::autos::AutomorphismSpec {
            kind: z,
            images: vec![w(1, k), w(0, 1), c.mul(&w(l, m))],
            inverse_images: vec![w(1, -k), w(0, 1), c.mul(&w(-l, k * l - m))],
        })
        .expect("M_klm map is an automorphism");
        let mut p = Presentation::mapping_torus(&phi);
        p.name = format!("M_{k},{l},{m}");
        p
    }

    fn generators(&self) -> usize {
        self.alphabet.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOptions {
    /// Cap on intermediate word length; `None` means `|w| + 6`.
    pub l_max: Option<usize>,
    /// Maximum number of distinct states generated.
    pub budget: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            l_max: None,
            budget: 5_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleStatus {
    /// The area found meets the uncapped lower bound.
    Exact,
    /// Minimal among diagrams whose boundaries stay under the cap.
    CapExact,
    /// Budget ran out; `lower <= area <= upper` (upper may be absent).
    Bracket,
    /// An exponent-sum or algebraic-area invariant rules out `w = 1`.
    NotIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub word: FreeWord,
    pub status: OracleStatus,
    /// Best area found, an upper bound on the true area.
    pub upper: Option<u64>,
    /// Lower bound valid for all diagrams.
    pub lower: u64,
    pub explored: usize,
    pub l_max: usize,
    pub budget: usize,
}

impl OracleResult {
    /// The area when it is certified exact.
    pub fn exact(&self) -> Option<u64> {
        (self.status == OracleStatus::Exact).then_some(self.upper).flatten()
    }
}

/// `oint x dy` along `w` in the `(x, y)` exponent plane.
fn algebraic_area(w: &[Letter], x: usize, y: usize) -> i64 {
    let (mut px, mut area) = (0i64, 0i64);
    for &l in w {
        let g = gen_of(l);
        if g == x {
            px += l.signum() as i64;
        } else if g == y {
            area += px * l.signum() as i64;
        }
    }
    area
}

// A word length term like `|w| / R_max` is not admissible here: a conjugated
// relator can cancel more than its own length, e.g. `a^-1 [t,a] a`.
struct Bound {
    /// `(x, y, max |area(r)|)` for pairs on which every relator is balanced.
    pairs: Vec<(usize, usize, i64)>,
}

impl Bound {
    fn new(p: &Presentation) -> Self {
        let n = p.generators();
        let balanced = |g: usize| p.relators.iter().all(|r| r.exponent_sum(g) == 0);
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if balanced(x) && balanced(y) {
                    let m = p
                        .relators
                        .iter()
                        .map(|r| algebraic_area(r.letters(), x, y).abs())
                        .max()
                        .unwrap_or(0);
                    pairs.push((x, y, m));
                }
            }
        }
        Bound { pairs }
    }

    /// `None` when the invariants show the word is not trivial.
    fn eval(&self, w: &[Letter]) -> Option<u64> {
        let mut h = u64::from(!w.is_empty());
        for &(x, y, m) in &self.pairs {
            let a = algebraic_area(w, x, y).abs();
            if a == 0 {
                continue;
            }
            if m == 0 {
                return None;
            }
            h = h.max(((a + m - 1) / m) as u64);
        }
        Some(h)
    }
}

fn moves(p: &Presentation) -> Vec<Vec<Letter>> {
    let mut set = HashSet::new();
    for r in &p.relators {
        for w in [r.clone(), r.inverse()] {
            let core = cyclic_reduce(&w).core.into_letters();
            for i in 0..core.len() {
                let mut rot = core[i..].to_vec();
                rot.extend_from_slice(&core[..i]);
                set.insert(rot);
            }
        }
    }
    let mut out: Vec<Vec<Letter>> = set.into_iter().collect();
    out.sort();
    out
}

/// Area of `w` over presentation `p`, by A* under the length cap.
pub fn area_oracle(w: &FreeWord, p: &Presentation, opts: &OracleOptions) -> OracleResult {
    let start = reduce(w.letters()).into_letters();
    let l_max = opts.l_max.unwrap_or(start.len() + 6).max(start.len());
    let bound = Bound::new(p);
    let mut result = OracleResult {
        word: w.clone(),
        status: OracleStatus::NotIdentity,
        upper: None,
        lower: 0,
        explored: 0,
        l_max,
        budget: opts.budget,
    };
    let n = p.generators();
    let unbalanced = (0..n)
        .any(|g| p.relators.iter().all(|r| r.exponent_sum(g) == 0) && reduce(&start).exponent_sum(g) != 0);
    let Some(h0) = bound.eval(&start).filter(|_| !unbalanced) else {
        return result;
    };
    result.lower = h0;
    let inserts = moves(p);
    let mut best: HashMap<Vec<Letter>, u64> = HashMap::new();
    // Ordered by (f, larger g first, word) so ties break deterministically.
    let mut heap = BinaryHeap::new();
    best.insert(start.clone(), 0);
    heap.push(Reverse((h0, Reverse(0u64), start)));
    let mut closed_under_cap = true;
    while let Some(Reverse((_, Reverse(g), cur))) = heap.pop() {
        if best.get(&cur).is_some_and(|&b| b < g) {
            continue;
        }
        if cur.is_empty() {
            result.upper = Some(g);
            result.status = if g == h0 { OracleStatus::Exact } else { OracleStatus::CapExact };
            result.explored = best.len();
            return result;
        }
        for pos in 0..=cur.len() {
            for ins in &inserts {
                if cur.len() + ins.len() > l_max + 2 * ins.len().min(cur.len()) {
                    continue;
                }
                let mut raw = Vec::with_capacity(cur.len() + ins.len());
                raw.extend_from_slice(&cur[..pos]);
                raw.extend_from_slice(ins);
                raw.extend_from_slice(&cur[pos..]);
                let next = reduce(&raw).into_letters();
                if next.len() > l_max {
                    continue;
                }
                let ng = g + 1;
                if best.get(&next).is_some_and(|&b| b <= ng) {
                    continue;
                }
                let Some(h) = bound.eval(&next) else { continue };
                if best.len() >= opts.budget {
                    closed_under_cap = false;
                    break;
                }
                best.insert(next.clone(), ng);
                heap.push(Reverse((ng + h, Reverse(ng), next)));
            }
        }
        if !closed_under_cap {
            break;
        }
    }
    result.explored = best.len();
    result.status = OracleStatus::Bracket;
    if closed_under_cap {
        // Search space under the cap exhausted without reaching 1; larger
        // caps may still succeed.
        result.upper = None;
    }
    result
}
