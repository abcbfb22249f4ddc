//! Corridor arithmetic on boundary words of `N_l = <a, c, t | a^t = a, c^t = c a^l>`
//! (optionally with a second base letter `b`), the `t -> tau^l` transfer, and
//! the regular bipartite graphs used to pair partial corridors.
//!
//! Diagrams are never built; everything here is computed from boundary words
//! and chord data.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{gen_of, reduce, Alphabet, FactorTag, Generator, Letter};

/// Generator indices of `c` and `t` in a boundary alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorridorLetters {
    pub c: usize,
    pub t: usize,
}

impl CorridorLetters {
    /// `a, c, t`.
    pub const ACT: CorridorLetters = CorridorLetters { c: 1, t: 2 };
    /// `a, b, c, t`.
    pub const ABCT: CorridorLetters = CorridorLetters { c: 2, t: 3 };

    fn t_sum(&self, w: &[Letter]) -> i64 {
        w.iter().filter(|&&x| gen_of(x) == self.t).map(|&x| x.signum() as i64).sum()
    }

    fn is_c(&self, x: Letter) -> bool {
        gen_of(x) == self.c
    }
}

/// Alphabet `a, c, t` (or `a, b, c, t` with `with_b`).
pub fn corridor_alphabet(with_b: bool) -> Alphabet {
    let g = |index, tag| Generator { index, tag };
    let mut entries = vec![("a".to_string(), g(0, FactorTag::FirstFree))];
    if with_b {
        entries.push(("b".into(), g(1, FactorTag::FirstFree)));
    }
    entries.push(("c".into(), g(0, FactorTag::SecondFree)));
    entries.push(("t".into(), g(0, FactorTag::Stable)));
    Alphabet::new(entries)
}

/// Chords joining each `c` of a boundary word to a `c^-1`, as `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CPairing {
    pub pairs: Vec<(usize, usize)>,
}

impl CPairing {
    /// Necessary conditions for realizability: a perfect, sign-opposed,
    /// non-crossing matching of the `c`-letters.
    pub fn validate(&self, w: &[Letter], letters: CorridorLetters) -> Result<()> {
        let mut seen = vec![false; w.len()];
        for &(i, j) in &self.pairs {
            if i >= j || j >= w.len() {
                return Err(Error::Precondition(format!("pair ({i}, {j}) is out of range")));
            }
            for p in [i, j] {
                if !letters.is_c(w[p]) {
                    return Err(Error::Precondition(format!("position {p} is not a c-letter")));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::Precondition(format!("position {p} is paired twice")));
                }
            }
            if w[i] != -w[j] {
                return Err(Error::Precondition(format!("pair ({i}, {j}) has equal signs")));
            }
        }
        if let Some(p) = (0..w.len()).find(|&p| letters.is_c(w[p]) && !seen[p]) {
            return Err(Error::Precondition(format!("c-letter at {p} is unpaired")));
        }
        for (x, &(i, j)) in self.pairs.iter().enumerate() {
            for &(k, l) in &self.pairs[x + 1..] {
                let inside = |p: usize| i < p && p < j;
                if inside(k) != inside(l) {
                    return Err(Error::Precondition(format!("pairs ({i}, {j}) and ({k}, {l}) cross")));
                }
            }
        }
        Ok(())
    }

    /// Pairs in the coordinates of the word after rotating `r` letters to the
    /// front, i.e. `w[r..] w[..r]`.
    pub fn rotate(&self, len: usize, r: usize) -> CPairing {
        let m = |p: usize| (p + len - r) % len;
        CPairing {
            pairs: self
                .pairs
                .iter()
                .map(|&(i, j)| (m(i).min(m(j)), m(i).max(m(j))))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorridorRecord {
    pub pair: (usize, usize),
    /// `|t-index sum|` of either arc.
    pub length: u64,
    /// Letters strictly between the paired `c`'s.
    pub inner_arc: Vec<Letter>,
    /// The rest of the word, read from just after `j` round to just before `i`.
    pub outer_arc: Vec<Letter>,
}

/// A complementary region of the chord diagram with its boundary word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionRecord {
    /// Enclosing pair, or `None` for the region touching the base point.
    pub parent: Option<(usize, usize)>,
    pub boundary: Vec<Letter>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorridorReport {
    pub corridors: Vec<CorridorRecord>,
    pub regions: Vec<RegionRecord>,
}

impl CorridorReport {
    pub fn total_length(&self) -> u64 {
        self.corridors.iter().map(|c| c.length).sum()
    }
}

/// Corridor lengths as arc index sums, plus the boundary of each region
/// between corridors: region letters with each child corridor collapsed to
/// its `t`-side `t^s`, closed by `t^-S` along the enclosing corridor.
pub fn corridor_lengths(w: &[Letter], p: &CPairing, letters: CorridorLetters) -> Result<CorridorReport> {
    p.validate(w, letters)?;
    if letters.t_sum(w) != 0 {
        return Err(Error::Precondition("boundary word has nonzero t-index sum".into()));
    }
    let mut corridors = Vec::with_capacity(p.pairs.len());
    for &(i, j) in &p.pairs {
        let inner = w[i + 1..j].to_vec();
        let outer: Vec<Letter> = w[j + 1..].iter().chain(&w[..i]).copied().collect();
        let (si, so) = (letters.t_sum(&inner), letters.t_sum(&outer));
        if si.abs() != so.abs() {
            return Err(Error::Internal(format!("arcs of ({i}, {j}) disagree: {si} vs {so}")));
        }
        corridors.push(CorridorRecord {
            pair: (i, j),
            length: si.unsigned_abs(),
            inner_arc: inner,
            outer_arc: outer,
        });
    }

    let close: BTreeMap<usize, usize> = p.pairs.iter().copied().collect();
    let t = letters.t;
    let t_pow = |s: i64| -> Vec<Letter> {
        let l = crate::words::letter(t, if s < 0 { -1 } else { 1 });
        vec![l; s.unsigned_abs() as usize]
    };
    // Walk the span (lo, hi): keep its own letters, collapse direct children.
    let region = |lo: usize, hi: usize| -> Vec<Letter> {
        let mut out = Vec::new();
        let mut q = lo;
        while q < hi {
            if let Some(&end) = close.get(&q) {
                out.extend(t_pow(letters.t_sum(&w[q + 1..end])));
                q = end + 1;
            } else {
                out.push(w[q]);
                q += 1;
            }
        }
        out
    };
    let mut regions = Vec::with_capacity(p.pairs.len() + 1);
    let mut push = |parent: Option<(usize, usize)>, mut raw: Vec<Letter>| {
        let s = letters.t_sum(&raw);
        raw.extend(t_pow(-s));
        let boundary = reduce(&raw).into_letters();
        regions.push(RegionRecord {
            parent,
            within_bound: boundary.len() <= w.len(),
            boundary,
        });
    };
    push(None, region(0, w.len()));
    for &(i, j) in &p.pairs {
        push(Some((i, j)), region(i + 1, j));
    }
    Ok(CorridorReport { corridors, regions })
}

/// `u(a, c, tau^l)`: each `t^{+-1}` becomes `tau^{+-l}`, with `tau` written in
/// the `t` slot.
pub fn ql_to_q1(u: &[Letter], l: usize, letters: CorridorLetters) -> Vec<Letter> {
    let mut out = Vec::with_capacity(u.len());
    for &x in u {
        if gen_of(x) == letters.t {
            out.extend(std::iter::repeat_n(x, l));
        } else {
            out.push(x);
        }
    }
    out
}

/// Position of letter `i` of `u` after [`ql_to_q1`].
pub fn ql_index(u: &[Letter], i: usize, l: usize, letters: CorridorLetters) -> usize {
    let ts = u[..i].iter().filter(|&&x| gen_of(x) == letters.t).count();
    i + (l - 1) * ts
}

/// Carries a pairing of `u` across [`ql_to_q1`].
pub fn transfer_pairing(u: &[Letter], p: &CPairing, l: usize, letters: CorridorLetters) -> CPairing {
    CPairing {
        pairs: p
            .pairs
            .iter()
            .map(|&(i, j)| (ql_index(u, i, l, letters), ql_index(u, j, l, letters)))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipleCheck {
    pub ok: bool,
    /// `length mod l` per corridor.
    pub residues: Vec<u64>,
}

pub fn multiple_of_l_check(records: &[CorridorRecord], l: u64) -> MultipleCheck {
    let residues: Vec<u64> = records.iter().map(|r| r.length % l).collect();
    MultipleCheck {
        ok: residues.iter().all(|&x| x == 0),
        residues,
    }
}

// ---- matchings ----

/// Bipartite multigraph; edges are `(left, right)` and may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteMultigraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut dl = vec![0; self.left];
        let mut dr = vec![0; self.right];
        for &(u, v) in &self.edges {
            dl[u] += 1;
            dr[v] += 1;
        }
        (dl, dr)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        let (dl, dr) = self.degrees();
        dl.iter().chain(&dr).all(|&x| x == d)
    }

    /// Edge-list text: `L R d` on the first line, then `u v` per edge.
    pub fn parse(text: &str) -> Result<(BipartiteMultigraph, usize)> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let nums = |line: usize, l: &str, want: usize| -> Result<Vec<usize>> {
            let v: std::result::Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
            match v {
                Ok(v) if v.len() == want => Ok(v),
                _ => Err(Error::Parse {
                    line: line + 1,
                    column: 1,
                    message: format!("expected {want} nonnegative integers"),
                }),
            }
        };
        let (ln, head) = lines.next().ok_or_else(|| Error::Malformed("empty graph file".into()))?;
        let h = nums(ln, head, 3)?;
        let mut g = BipartiteMultigraph {
            left: h[0],
            right: h[1],
            edges: Vec::new(),
        };
        for (ln, l) in lines {
            let e = nums(ln, l, 2)?;
            if e[0] >= g.left || e[1] >= g.right {
                return Err(Error::Parse {
                    line: ln + 1,
                    column: 1,
                    message: "vertex out of range".into(),
                });
            }
            g.edges.push((e[0], e[1]));
        }
        Ok((g, h[2]))
    }

    pub fn to_text(&self, d: usize) -> String {
        let mut s = format!("{} {} {d}\n", self.left, self.right);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Whether `sel` (edge indices) meets every vertex exactly once.
    pub fn is_perfect_matching(&self, sel: &[usize]) -> bool {
        if self.left != self.right {
            return false;
        }
        let mut hl = vec![0; self.left];
        let mut hr = vec![0; self.right];
        for &e in sel {
            let Some(&(u, v)) = self.edges.get(e) else {
                return false;
            };
            hl[u] += 1;
            hr[v] += 1;
        }
        hl.iter().chain(&hr).all(|&x| x == 1)
    }
}

/// A perfect matching of a `d`-regular bipartite multigraph, as edge indices
/// sorted by left vertex. Augmenting paths; the result is checked before it
/// is returned.
pub fn one_factor(g: &BipartiteMultigraph, d: usize) -> Result<Vec<usize>> {
    if d == 0 || !g.is_regular(d) {
        return Err(Error::Precondition(format!("graph is not {d}-regular with d >= 1")));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.left];
    for (e, &(u, _)) in g.edges.iter().enumerate() {
        adj[u].push(e);
    }
    // match_r[v] = edge currently matching right vertex v.
    let mut match_r: Vec<Option<usize>> = vec![None; g.right];
    fn augment(
        u: usize,
        g: &BipartiteMultigraph,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_r: &mut [Option<usize>],
    ) -> bool {
        for &e in &adj[u] {
            let v = g.edges[e].1;
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match match_r[v] {
                None => true,
                Some(f) => augment(g.edges[f].0, g, adj, seen, match_r),
            };
            if free {
                match_r[v] = Some(e);
                return true;
            }
        }
        false
    }
    for u in 0..g.left {
        let mut seen = vec![false; g.right];
        if !augment(u, g, &adj, &mut seen, &mut match_r) {
            return Err(Error::Internal(format!("no augmenting path from left vertex {u}")));
        }
    }
    let mut sel: Vec<usize> = match_r.into_iter().flatten().collect();
    sel.sort_by_key(|&e| g.edges[e].0);
    if !g.is_perfect_matching(&sel) {
        return Err(Error::Internal("matching failed structural check".into()));
    }
    Ok(sel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Node {
    Black(usize),
    White(usize),
}

/// Capping faces (black) joined by partial corridors; white vertices are
/// corridor ends on the boundary. `clockwise[v]` orients black vertex `v`;
/// every edge must join opposite orientations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CappingGraph {
    pub clockwise: Vec<bool>,
    pub whites: usize,
    pub edges: Vec<(Node, Node)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HatNode {
    Black { v: usize, copy: usize },
    White(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularized {
    pub graph: BipartiteMultigraph,
    pub degree: usize,
    pub left_nodes: Vec<HatNode>,
    pub right_nodes: Vec<HatNode>,
    /// Edge of `Gamma` each edge of the output copies.
    pub edge_origin: Vec<usize>,
}

/// `|beta|` copies of `Gamma` glued along the white vertices.
pub fn regularize(gamma: &CappingGraph, beta: i64) -> Result<Regularized> {
    let d = beta.unsigned_abs() as usize;
    if d == 0 {
        return Err(Error::Precondition("beta must be nonzero".into()));
    }
    let nb = gamma.clockwise.len();
    let mut deg_b = vec![0usize; nb];
    let mut deg_w = vec![0usize; gamma.whites];
    let mut white_side: Vec<Option<bool>> = vec![None; gamma.whites];
    for &(x, y) in &gamma.edges {
        for n in [x, y] {
            match n {
                Node::Black(v) if v < nb => deg_b[v] += 1,
                Node::White(v) if v < gamma.whites => deg_w[v] += 1,
                _ => return Err(Error::Precondition(format!("edge endpoint {n:?} out of range"))),
            }
        }
        match (x, y) {
            (Node::Black(u), Node::Black(v)) if gamma.clockwise[u] == gamma.clockwise[v] => {
                return Err(Error::Precondition(format!("edge {u}-{v} joins equal orientations")));
            }
            (Node::Black(u), Node::White(v)) | (Node::White(v), Node::Black(u)) => {
                white_side[v] = Some(!gamma.clockwise[u]);
            }
            (Node::White(_), Node::White(_)) => {
                return Err(Error::Precondition("white vertices cannot be adjacent".into()));
            }
            _ => {}
        }
    }
    if let Some(v) = (0..nb).find(|&v| deg_b[v] != d) {
        return Err(Error::Precondition(format!("black vertex {v} has degree {} not {d}", deg_b[v])));
    }
    if let Some(v) = (0..gamma.whites).find(|&v| deg_w[v] != 1) {
        return Err(Error::Precondition(format!("white vertex {v} has degree {}", deg_w[v])));
    }

    let mut left_nodes = Vec::new();
    let mut right_nodes = Vec::new();
    let mut place: BTreeMap<HatNodeKey, (bool, usize)> = BTreeMap::new();
    let mut add = |n: HatNode, left: bool| {
        let list = if left { &mut left_nodes } else { &mut right_nodes };
        place.insert(HatNodeKey::of(n), (left, list.len()));
        list.push(n);
    };
    for copy in 0..d {
        for v in 0..nb {
            add(HatNode::Black { v, copy }, gamma.clockwise[v]);
        }
    }
    for (v, side) in white_side.iter().enumerate() {
        add(HatNode::White(v), side.unwrap_or(true));
    }
    let hat = |n: Node, copy: usize| match n {
        Node::Black(v) => HatNode::Black { v, copy },
        Node::White(v) => HatNode::White(v),
    };
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for copy in 0..d {
        for (e, &(x, y)) in gamma.edges.iter().enumerate() {
            let (px, py) = (place[&HatNodeKey::of(hat(x, copy))], place[&HatNodeKey::of(hat(y, copy))]);
            let (l, r) = if px.0 { (px.1, py.1) } else { (py.1, px.1) };
            edges.push((l, r));
            edge_origin.push(e);
        }
    }
    let graph = BipartiteMultigraph {
        left: left_nodes.len(),
        right: right_nodes.len(),
        edges,
    };
    if !graph.is_regular(d) {
        return Err(Error::Internal("regularized graph failed the degree audit".into()));
    }
    Ok(Regularized {
        graph,
        degree: d,
        left_nodes,
        right_nodes,
        edge_origin,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct HatNodeKey(u8, usize, usize);

impl HatNodeKey {
    fn of(n: HatNode) -> Self {
        match n {
            HatNode::Black { v, copy } => HatNodeKey(0, v, copy),
            HatNode::White(v) => HatNodeKey(1, v, 0),
        }
    }
}

impl Regularized {
    /// Partner in `Gamma` of each black vertex of copy 0 under a 1-factor,
    /// with the `Gamma` edge realizing it.
    pub fn copy_one_partners(&self, matching: &[usize]) -> Result<Vec<(usize, Node, usize)>> {
        let mut out = Vec::new();
        for &e in matching {
            let (l, r) = self.graph.edges[e];
            let (x, y) = (self.left_nodes[l], self.right_nodes[r]);
            for (me, other) in [(x, y), (y, x)] {
                if let HatNode::Black { v, copy: 0 } = me {
                    let partner = match other {
                        HatNode::Black { v: u, copy: 0 } => Node::Black(u),
                        HatNode::White(u) => Node::White(u),
                        HatNode::Black { .. } => {
                            return Err(Error::Internal("copy 0 matched into another copy".into()))
                        }
                    };
                    out.push((v, partner, self.edge_origin[e]));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Area bound `C f (g + 1) + n^2` from a charged diagram of area `f` and
/// diameter `g` with boundary length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElectroBound {
    pub f: u64,
    pub g: u64,
    pub n: u64,
    pub charge: u64,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
}

pub(crate) fn ser_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn electro_bound(f: u64, g: u64, n: u64, charge: u64) -> ElectroBound {
    let bound = BigUint::from(charge) * BigUint::from(f) * (BigUint::from(g) + 1u32) + BigUint::from(n).pow(2);
    ElectroBound {
        f,
        g,
        n,
        charge,
        bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<Letter> {
        corridor_alphabet(false).parse(s).unwrap()
    }

    #[test]
    fn corridor_examples() {
        let w = word("c^-1 t^-1 c t a^-1");
        let r = corridor_lengths(&w, &CPairing { pairs: vec![(0, 2)] }, CorridorLetters::ACT).unwrap();
        assert_eq!(r.corridors[0].length, 1);

        let w = word("a c c^-1 a^-1");
        let r = corridor_lengths(&w, &CPairing { pairs: vec![(1, 2)] }, CorridorLetters::ACT).unwrap();
        assert_eq!(r.corridors[0].length, 0);

        let w = word("c t c t c^-1 t^-1 c^-1 t^-1");
        let p = CPairing { pairs: vec![(0, 6), (2, 4)] };
        let r = corridor_lengths(&w, &p, CorridorLetters::ACT).unwrap();
        // Inside the outer chord: t (c t c^-1) t^-1, index sum 1.
        assert_eq!(r.corridors.iter().map(|c| c.length).collect::<Vec<_>>(), vec![1, 1]);
        assert!(r.regions.iter().all(|g| g.within_bound));
    }

    #[test]
    fn pairing_rejections() {
        let w = word("c c c^-1 c^-1");
        let l = CorridorLetters::ACT;
        assert!(CPairing { pairs: vec![(0, 2), (1, 3)] }.validate(&w, l).is_err());
        assert!(CPairing { pairs: vec![(0, 1), (2, 3)] }.validate(&w, l).is_err());
        assert!(CPairing { pairs: vec![(0, 3)] }.validate(&w, l).is_err());
        assert!(CPairing { pairs: vec![(0, 3), (1, 2)] }.validate(&w, l).is_ok());
    }

    #[test]
    fn transfer() {
        let l = CorridorLetters::ACT;
        let u = word("t a t^-1");
        assert_eq!(ql_to_q1(&u, 3, l), word("t^3 a t^-3"));
        let u = word("c t c^-1 t^-1");
        assert_eq!(ql_to_q1(&u, 1, l), u);
        let p = CPairing { pairs: vec![(0, 2)] };
        let v = ql_to_q1(&u, 4, l);
        let q = transfer_pairing(&u, &p, 4, l);
        let r = corridor_lengths(&v, &q, l).unwrap();
        assert_eq!(r.corridors[0].length, 4);
        assert!(multiple_of_l_check(&r.corridors, 4).ok);
        let bad = CorridorRecord {
            pair: (0, 1),
            length: 2,
            inner_arc: vec![],
            outer_arc: vec![],
        };
        assert_eq!(multiple_of_l_check(&[bad], 4).residues, vec![2]);
    }

    #[test]
    fn matching_examples() {
        let g = BipartiteMultigraph {
            left: 2,
            right: 2,
            edges: vec![(0, 0), (0, 0), (0, 1), (1, 1), (1, 1), (1, 0)],
        };
        let m = one_factor(&g, 3).unwrap();
        assert!(g.is_perfect_matching(&m));
        let k22 = BipartiteMultigraph {
            left: 2,
            right: 2,
            edges: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        };
        assert_eq!(one_factor(&k22, 2).unwrap().len(), 2);
        assert!(one_factor(&k22, 3).is_err());
        let (parsed, d) = BipartiteMultigraph::parse(&g.to_text(3)).unwrap();
        assert_eq!((parsed, d), (g, 3));
    }

    #[test]
    fn regularize_examples() {
        let one = CappingGraph {
            clockwise: vec![true],
            whites: 1,
            edges: vec![(Node::Black(0), Node::White(0))],
        };
        let r = regularize(&one, 1).unwrap();
        assert_eq!(r.graph.edges.len(), 1);

        let two = CappingGraph {
            clockwise: vec![true],
            whites: 2,
            edges: vec![(Node::Black(0), Node::White(0)), (Node::Black(0), Node::White(1))],
        };
        let r = regularize(&two, 2).unwrap();
        assert_eq!((r.graph.left, r.graph.right), (2, 2));
        let m = one_factor(&r.graph, 2).unwrap();
        let partners = r.copy_one_partners(&m).unwrap();
        assert_eq!(partners.len(), 1);
        assert!(matches!(partners[0].1, Node::White(_)));
    }

    #[test]
    fn electro_arithmetic() {
        assert_eq!(electro_bound(0, 0, 0, 1).bound, BigUint::from(0u32));
        assert_eq!(electro_bound(100, 10, 10, 1).bound, BigUint::from(1200u32));
    }
}
