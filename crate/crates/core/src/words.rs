//! Word arithmetic: free reduction, cyclic reduction, conjugacy in free
//! groups, and the alternating normal form of `Z^2 * Z`.
//!
//! A letter is a nonzero `i32`: `g + 1` for generator `g`, `-(g + 1)` for its
//! inverse. Conjugation follows `x^h = h^-1 x h` everywhere in the crate.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = i32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorTag {
    FirstFree,
    SecondFree,
    Central,
    Stable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    /// Index within its own factor.
    pub index: usize,
    pub tag: FactorTag,
}

#[inline]
pub fn letter(g: usize, sign: i32) -> Letter {
    let l = (g + 1) as Letter;
    if sign < 0 {
        -l
    } else {
        l
    }
}

#[inline]
pub fn gen_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Sort key giving `a < a^-1 < b < b^-1 < ...`.
#[inline]
fn letter_key(l: Letter) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

/// Shortlex order: shorter first, then lexicographic by `letter_key`.
pub fn shortlex_cmp(x: &[Letter], y: &[Letter]) -> Ordering {
    x.len().cmp(&y.len()).then_with(|| {
        x.iter()
            .map(|&l| letter_key(l))
            .cmp(y.iter().map(|&l| letter_key(l)))
    })
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

/// Stack-based free reduction.
pub fn reduce(raw: &[Letter]) -> FreeWord {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    push_reduced(&mut out, raw);
    FreeWord { letters: out }
}

/// Like [`reduce`], rejecting letters outside an alphabet of `size` generators.
pub fn reduce_checked(raw: &[Letter], size: usize) -> Result<FreeWord> {
    if let Some(&bad) = raw.iter().find(|&&l| l == 0 || gen_of(l) >= size) {
        return Err(Error::Malformed(format!(
            "letter {bad} outside alphabet of size {size}"
        )));
    }
    Ok(reduce(raw))
}

fn push_reduced(out: &mut Vec<Letter>, raw: &[Letter]) {
    for &l in raw {
        debug_assert!(l != 0);
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn gen(g: usize) -> Self {
        FreeWord {
            letters: vec![letter(g, 1)],
        }
    }

    /// `g^n` as a reduced word.
    pub fn gen_pow(g: usize, n: i64) -> Self {
        let l = letter(g, if n < 0 { -1 } else { 1 });
        FreeWord {
            letters: vec![l; n.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.letters.clone();
        push_reduced(&mut out, &other.letters);
        FreeWord { letters: out }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `h^-1 self h`.
    pub fn conjugate_by(&self, h: &FreeWord) -> FreeWord {
        h.inverse().mul(self).mul(h)
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters
            .iter()
            .filter(|&&l| gen_of(l) == g)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    pub fn uses_only(&self, gens: &[usize]) -> bool {
        self.letters.iter().all(|&l| gens.contains(&gen_of(l)))
    }

    /// Length of the cyclically reduced core.
    pub fn cyclic_len(&self) -> usize {
        let w = &self.letters;
        let (mut i, mut j) = (0usize, w.len());
        while j >= i + 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        j - i
    }

    pub fn shortlex_cmp(&self, other: &FreeWord) -> Ordering {
        shortlex_cmp(&self.letters, &other.letters)
    }
}

/// A word split as `conjugator^-1 * core * conjugator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicWord {
    pub core: FreeWord,
    pub conjugator: FreeWord,
}

impl CyclicWord {
    pub fn reassemble(&self) -> FreeWord {
        self.core.conjugate_by(&self.conjugator)
    }
}

pub fn cyclic_reduce(w: &FreeWord) -> CyclicWord {
    let letters = w.letters();
    let (mut i, mut j) = (0usize, letters.len());
    while j >= i + 2 && letters[i] == -letters[j - 1] {
        i += 1;
        j -= 1;
    }
    let peeled = FreeWord {
        letters: letters[..i].to_vec(),
    };
    CyclicWord {
        core: FreeWord {
            letters: letters[i..j].to_vec(),
        },
        conjugator: peeled.inverse(),
    }
}

/// Finds `h` with `reduce(h^-1 v h) == w`, trying every rotation of the cyclic
/// cores and returning the shortlex-least candidate. `None` when the cores are
/// not rotations of each other.
pub fn conjugacy_match(w: &FreeWord, v: &FreeWord) -> Option<FreeWord> {
    let cw = cyclic_reduce(w);
    let cv = cyclic_reduce(v);
    let (wc, vc) = (cw.core.letters(), cv.core.letters());
    if wc.len() != vc.len() {
        return None;
    }
    let m = vc.len();
    if m == 0 {
        return Some(FreeWord::empty());
    }
    let mut best: Option<FreeWord> = None;
    for r in 0..m {
        let rotated = vc[r..].iter().chain(vc[..r].iter());
        if !rotated.eq(wc.iter()) {
            continue;
        }
        let p = FreeWord {
            letters: vc[..r].to_vec(),
        };
        let h = cv.conjugator.inverse().mul(&p).mul(&cw.conjugator);
        debug_assert_eq!(v.conjugate_by(&h), *w);
        if best.as_ref().is_none_or(|b| h.shortlex_cmp(b) == Ordering::Less) {
            best = Some(h);
        }
    }
    best
}

/// Element of `F_X x F_Y` (or `F_2 x Z`), optionally with a stable-letter
/// exponent in mapping-torus contexts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWord {
    pub first: FreeWord,
    pub second: FreeWord,
    pub t_exponent: i64,
}

impl ProductWord {
    /// Splits raw letters by factor; letters with `in_first(g)` go to `first`.
    pub fn split(raw: &[Letter], in_first: impl Fn(usize) -> bool) -> ProductWord {
        let (a, b): (Vec<Letter>, Vec<Letter>) = raw.iter().partition(|&&l| in_first(gen_of(l)));
        ProductWord {
            first: reduce(&a),
            second: reduce(&b),
            t_exponent: 0,
        }
    }

    pub fn to_word(&self) -> FreeWord {
        self.first.mul(&self.second)
    }
}

/// `u_1 c^e_1 u_2 ... c^e_n u_{n+1}` with each `u_i` an exponent pair `(i, j)`
/// standing for `a^i b^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlternatingWord {
    pub syllables: Vec<(i64, i64)>,
    pub c_exponents: Vec<i64>,
}

impl Default for AlternatingWord {
    fn default() -> Self {
        AlternatingWord {
            syllables: vec![(0, 0)],
            c_exponents: Vec::new(),
        }
    }
}

/// Letter indices of `a`, `b`, `c` in the `Z^2 * Z` alphabet.
pub const ZA: usize = 0;
pub const ZB: usize = 1;
pub const ZC: usize = 2;

pub fn alternating_normal_form(raw: &[Letter]) -> AlternatingWord {
    let mut out = AlternatingWord::default();
    for &l in raw {
        let s = if l > 0 { 1 } else { -1 };
        match gen_of(l) {
            ZA => out.syllables.last_mut().unwrap().0 += s,
            ZB => out.syllables.last_mut().unwrap().1 += s,
            _ => out.push_c(s),
        }
    }
    out
}

impl AlternatingWord {
    fn push_c(&mut self, e: i64) {
        let n = self.c_exponents.len();
        if n > 0 && *self.syllables.last().unwrap() == (0, 0) {
            self.syllables.pop();
            let last = self.c_exponents.last_mut().unwrap();
            *last += e;
            if *last == 0 {
                self.c_exponents.pop();
            } else {
                self.syllables.push((0, 0));
            }
        } else {
            self.c_exponents.push(e);
            self.syllables.push((0, 0));
        }
    }

    pub fn c_syllables(&self) -> usize {
        self.c_exponents.len()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.c_exponents.len();
        self.syllables.len() == n + 1
            && self.c_exponents.iter().all(|&e| e != 0)
            && (n < 2 || self.syllables[1..n].iter().all(|&u| u != (0, 0)))
    }

    pub fn to_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        let push = |out: &mut Vec<Letter>, g: usize, e: i64| {
            let l = letter(g, if e < 0 { -1 } else { 1 });
            out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        };
        for (i, &(x, y)) in self.syllables.iter().enumerate() {
            push(&mut out, ZA, x);
            push(&mut out, ZB, y);
            if let Some(&e) = self.c_exponents.get(i) {
                push(&mut out, ZC, e);
            }
        }
        out
    }

    pub fn to_word(&self) -> FreeWord {
        FreeWord {
            letters: self.to_letters(),
        }
    }
}

/// Names and factor tags for a group's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(entries: Vec<(String, Generator)>) -> Self {
        let (names, gens) = entries.into_iter().unzip();
        Alphabet { names, gens }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn generator(&self, g: usize) -> Generator {
        self.gens[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same alphabet plus a stable letter `t`.
    pub fn with_stable(&self, name: &str) -> Alphabet {
        let mut a = self.clone();
        a.names.push(name.to_string());
        a.gens.push(Generator {
            index: 0,
            tag: FactorTag::Stable,
        });
        a
    }

    /// Parses a word literal such as `a b^-1 a^3` (or `ab^-1a^3` when every
    /// name is one character). `1` is the empty word. Errors carry the
    /// 1-based column of the offending character.
    pub fn parse(&self, text: &str) -> std::result::Result<Vec<Letter>, (usize, String)> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_whitespace() {
                i += 1;
                continue;
            }
            let rest: String = chars[i..].iter().collect();
            if chars[i] == '1' && chars.get(i + 1).is_none_or(|c| c.is_whitespace()) {
                i += 1;
                continue;
            }
            let best = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.chars().count());
            let Some((g, name)) = best else {
                return Err((i + 1, format!("unknown generator at '{}'", chars[i])));
            };
            i += name.chars().count();
            let mut exp: i64 = 1;
            if chars.get(i) == Some(&'^') {
                let start = i + 1;
                let mut j = start;
                if chars.get(j) == Some(&'-') {
                    j += 1;
                }
                while chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                let digits: String = chars[start..j].iter().collect();
                exp = digits
                    .parse()
                    .map_err(|_| (start, format!("bad exponent '{digits}'")))?;
                i = j;
            }
            let l = letter(g, if exp < 0 { -1 } else { 1 });
            out.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(out)
    }

    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        let raw = self
            .parse(text)
            .map_err(|(col, msg)| Error::Malformed(format!("column {col}: {msg}")))?;
        Ok(reduce(&raw))
    }

    /// Formats letters with runs collapsed into powers; `1` for empty.
    pub fn format(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let n = (j - i) as i64 * if l < 0 { -1 } else { 1 };
            let name = &self.names[gen_of(l)];
            parts.push(if n == 1 {
                name.clone()
            } else {
                format!("{name}^{n}")
            });
            i = j;
        }
        parts.join(" ")
    }

    pub fn display<'a>(&'a self, w: &'a FreeWord) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Alphabet, &'a FreeWord);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1.letters()))
            }
        }
        D(self, w)
    }
}
