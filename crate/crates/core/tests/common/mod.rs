//! Fixture construction shared by the integration tests.
//!
//! Every fixture is built as a product of elementary automorphisms, so its
//! inverse comes for free, and its expected class is fixed by construction.
//! The `expect_*` functions recompute that class from exponent-sum matrices
//! alone, independently of the normal-form pipeline.
#![allow(dead_code)]

use mtdehn::{Automorphism, DehnKind, FreeWord, GroupKind};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub psi: Automorphism,
    pub expected: DehnKind,
}

impl Fixture {
    pub fn new(name: impl Into<String>, psi: Automorphism, expected: DehnKind) -> Self {
        Fixture {
            name: name.into(),
            psi,
            expected,
        }
    }
}

pub fn aut(kind: GroupKind, images: &[&str], inverse: &[&str]) -> Automorphism {
    Automorphism::parse(kind, images, inverse)
        .unwrap_or_else(|e| panic!("bad fixture {images:?} on {kind}: {e}"))
}

pub fn compose_all(kind: GroupKind, parts: &[Automorphism]) -> Automorphism {
    parts
        .iter()
        .fold(Automorphism::identity(kind), |acc, f| acc.compose(f).unwrap())
}

/// `F^-1 . psi . F`.
pub fn conj(psi: &Automorphism, f: &Automorphism) -> Automorphism {
    f.inverse().compose(psi).unwrap().compose(f).unwrap()
}

pub fn random_word(rng: &mut TestRng, gens: usize, len: usize) -> FreeWord {
    let raw: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(0..gens) as i32 + 1;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    mtdehn::words::reduce(&raw)
}

// ---- elementary generators ----

/// Nielsen moves of `F_2` written on the letters `p, q` of `kind`, with the
/// remaining letters (given as `rest`) fixed.
fn nielsen(kind: GroupKind, p: &str, q: &str, rest: &[&str]) -> Vec<Automorphism> {
    let mk = |ip: String, iq: String, jp: String, jq: String| {
        let mut im = vec![ip, iq];
        let mut inv = vec![jp, jq];
        im.extend(rest.iter().map(|s| s.to_string()));
        inv.extend(rest.iter().map(|s| s.to_string()));
        let im: Vec<&str> = im.iter().map(String::as_str).collect();
        let inv: Vec<&str> = inv.iter().map(String::as_str).collect();
        aut(kind, &im, &inv)
    };
    let s = |x: &str| x.to_string();
    vec![
        mk(format!("{p} {q}"), s(q), format!("{p} {q}^-1"), s(q)),
        mk(format!("{p} {q}^-1"), s(q), format!("{p} {q}"), s(q)),
        mk(format!("{q} {p}"), s(q), format!("{q}^-1 {p}"), s(q)),
        mk(s(p), format!("{q} {p}"), s(p), format!("{q} {p}^-1")),
        mk(s(p), format!("{p} {q}"), s(p), format!("{p}^-1 {q}")),
        mk(s(q), s(p), s(q), s(p)),
        mk(format!("{p}^-1"), s(q), format!("{p}^-1"), s(q)),
    ]
}

fn random_product(rng: &mut TestRng, kind: GroupKind, gens: &[Automorphism], steps: usize) -> Automorphism {
    let parts: Vec<Automorphism> = (0..steps).map(|_| gens.choose(rng).unwrap().clone()).collect();
    compose_all(kind, &parts)
}

pub fn random_f2(rng: &mut TestRng, steps: usize) -> Automorphism {
    let k = GroupKind::Free(2);
    random_product(rng, k, &nielsen(k, "a", "b", &[]), steps)
}

/// Automorphisms of `F_2 x Z`: Nielsen moves with `c` fixed, central
/// transvections and the inversion of `c`.
pub fn f2xz_generators() -> Vec<Automorphism> {
    let k = GroupKind::F2xZ;
    let mut g = nielsen(k, "a", "b", &["c"]);
    g.push(aut(k, &["a c", "b", "c"], &["a c^-1", "b", "c"]));
    g.push(aut(k, &["a", "b c^-1", "c"], &["a", "b c", "c"]));
    g.push(aut(k, &["a", "b", "c^-1"], &["a", "b", "c^-1"]));
    g
}

pub fn random_f2xz(rng: &mut TestRng, steps: usize) -> Automorphism {
    random_product(rng, GroupKind::F2xZ, &f2xz_generators(), steps)
}

/// Automorphisms of `Z^2 * Z`: `GL(2,Z)` moves on `a, b`, partial
/// conjugations and transvections of `c`, inversion of `c`.
pub fn z2astz_generators() -> Vec<Automorphism> {
    let k = GroupKind::Z2astZ;
    let mut g = nielsen(k, "a", "b", &["c"]);
    g.push(aut(k, &["a", "b", "a c"], &["a", "b", "a^-1 c"]));
    g.push(aut(k, &["a", "b", "c b^-1"], &["a", "b", "c b"]));
    g.push(aut(k, &["a", "b", "c^-1"], &["a", "b", "c^-1"]));
    g.push(aut(k, &["c^-1 a c", "c^-1 b c", "c"], &["c a c^-1", "c b c^-1", "c"]));
    g
}

pub fn random_z2astz(rng: &mut TestRng, steps: usize) -> Automorphism {
    random_product(rng, GroupKind::Z2astZ, &z2astz_generators(), steps)
}

/// Factor-preserving automorphisms of `F_2 x F_2` on `a, b | x, y`.
pub fn f2xf2_generators() -> Vec<Automorphism> {
    let k = GroupKind::FkxFl(2, 2);
    let mut g = nielsen(k, "a", "b", &["x", "y"]);
    // Same moves on the second factor: images listed in generator order.
    for f in nielsen(GroupKind::Free(2), "a", "b", &[]) {
        g.push(product(&Automorphism::identity(GroupKind::Free(2)), &f));
    }
    g
}

pub fn random_f2xf2(rng: &mut TestRng, steps: usize) -> Automorphism {
    random_product(rng, GroupKind::FkxFl(2, 2), &f2xf2_generators(), steps)
}

fn shift(w: &FreeWord, by: usize) -> FreeWord {
    mtdehn::words::reduce(
        &w.letters()
            .iter()
            .map(|&l| l.signum() * (l.abs() + by as i32))
            .collect::<Vec<_>>(),
    )
}

/// `phi1 x phi2` on `F_k x F_l`.
pub fn product(phi1: &Automorphism, phi2: &Automorphism) -> Automorphism {
    let (GroupKind::Free(k), GroupKind::Free(l)) = (phi1.kind(), phi2.kind()) else {
        panic!("product needs free factors");
    };
    let images = phi1
        .images()
        .iter()
        .cloned()
        .chain(phi2.images().iter().map(|w| shift(w, k)))
        .collect();
    let inverse_images = phi1
        .inverse_images()
        .iter()
        .cloned()
        .chain(phi2.inverse_images().iter().map(|w| shift(w, k)))
        .collect();
    Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: GroupKind::FkxFl(k, l),
        images,
        inverse_images,
    })
    .unwrap()
}

/// `a <-> x, b <-> y` on `F_2 x F_2`.
pub fn factor_swap() -> Automorphism {
    let k = GroupKind::FkxFl(2, 2);
    aut(k, &["x", "y", "a", "b"], &["x", "y", "a", "b"])
}

/// Extends `phi` on `F_2` to `F_2 x Z` with `c -> c^sign` and the given
/// central shifts on `a`, `b`.
pub fn extend_f2xz(phi: &Automorphism, ka: i64, kb: i64, sign: i64) -> Automorphism {
    let k = GroupKind::F2xZ;
    let lift = Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: k,
        images: vec![phi.image(0).clone(), phi.image(1).clone(), FreeWord::gen(2)],
        inverse_images: vec![
            phi.inverse_images()[0].clone(),
            phi.inverse_images()[1].clone(),
            FreeWord::gen(2),
        ],
    })
    .unwrap();
    let c = |p: i64| FreeWord::gen_pow(2, p);
    let shifts = Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: k,
        images: vec![FreeWord::gen(0).mul(&c(ka)), FreeWord::gen(1).mul(&c(kb)), c(sign)],
        inverse_images: vec![
            FreeWord::gen(0).mul(&c(-ka * sign)),
            FreeWord::gen(1).mul(&c(-kb * sign)),
            c(sign),
        ],
    })
    .unwrap();
    shifts.compose(&lift).unwrap()
}

// ---- named base maps ----

pub fn f2(images: &[&str], inverse: &[&str]) -> Automorphism {
    aut(GroupKind::Free(2), images, inverse)
}

pub fn transvection(beta: i64) -> Automorphism {
    let b = |e: i64| FreeWord::gen(0).mul(&FreeWord::gen_pow(1, e));
    Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: GroupKind::Free(2),
        images: vec![b(beta), FreeWord::gen(1)],
        inverse_images: vec![b(-beta), FreeWord::gen(1)],
    })
    .unwrap()
}

pub fn fib() -> Automorphism {
    f2(&["a b", "a"], &["b", "b^-1 a"])
}

/// Finite-order automorphisms of `F_2` with abelianization of order 1..6.
pub fn finite_order_f2() -> Vec<Automorphism> {
    vec![
        f2(&["a", "b"], &["a", "b"]),
        f2(&["a^-1", "b^-1"], &["a^-1", "b^-1"]),
        f2(&["b", "a^-1"], &["b^-1", "a"]),
        f2(&["b", "b^-1 a^-1"], &["b^-1 a^-1", "a"]),
        f2(&["a b", "a^-1"], &["b^-1", "b a"]),
        f2(&["b", "a"], &["b", "a"]),
    ]
}

/// A random hyperbolic (trace above 2 in absolute value) automorphism of `F_2`.
pub fn random_hyperbolic_f2(rng: &mut TestRng, steps: usize) -> Automorphism {
    loop {
        let phi = compose_all(GroupKind::Free(2), &[random_f2(rng, steps), fib()]);
        let m = abel(&phi, 2);
        if (m[0][0] + m[1][1]).abs() > 2 && (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() == 1 {
            return phi;
        }
    }
}

// ---- independent expectations ----

/// Exponent-sum matrix over the first `n` generators, column `j` the image of
/// generator `j`.
pub fn abel(phi: &Automorphism, n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| phi.image(j).exponent_sum(i)).collect())
        .collect()
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Growth type of an automorphism of `F_2` read from its abelianization:
/// 0 periodic, 1 linear, `None` exponential. The kernel of
/// `Aut(F_2) -> GL(2,Z)` is inner, so this is exact.
pub fn f2_growth(phi: &Automorphism) -> Option<u32> {
    let m = abel(phi, 2);
    let (tr, det) = (m[0][0] + m[1][1], m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    if det == -1 {
        return if tr == 0 { Some(0) } else { None };
    }
    match tr.abs() {
        0 | 1 => Some(0),
        2 => {
            let s = tr.signum();
            let is_scalar = m[0][1] == 0 && m[1][0] == 0 && m[0][0] == s;
            Some(if is_scalar { 0 } else { 1 })
        }
        _ => None,
    }
}

/// Existence of `g`, `m` with `psi_ab^m(g) = g`, `Psi^m(c) = c` and nonzero
/// central exponent of `Psi^m(g)`, over `m <= 12`.
pub fn expect_f2xz(psi: &Automorphism) -> DehnKind {
    let full = abel(psi, 3);
    let (tr, det) = (full[0][0] + full[1][1], full[0][0] * full[1][1] - full[0][1] * full[1][0]);
    if (det == 1 && tr.abs() > 2) || (det == -1 && tr != 0) {
        // No power of a hyperbolic block fixes a nonzero vector.
        return DehnKind::Quadratic;
    }
    let mut p = full.clone();
    for _ in 0..12 {
        let (n00, n01, n10, n11) = (p[0][0] - 1, p[0][1], p[1][0], p[1][1] - 1);
        let kernel: Vec<[i64; 2]> = if (n00, n01, n10, n11) == (0, 0, 0, 0) {
            vec![[1, 0], [0, 1]]
        } else if n00 * n11 - n01 * n10 == 0 {
            if (n00, n01) != (0, 0) {
                vec![[-n01, n00]]
            } else {
                vec![[-n11, n10]]
            }
        } else {
            Vec::new()
        };
        // Only powers fixing `c` count: an inverted centre undoes the shift.
        if p[2][2] == 1 && kernel.iter().any(|g| p[2][0] * g[0] + p[2][1] * g[1] != 0) {
            return DehnKind::Cubic;
        }
        p = matmul(&p, &full);
    }
    DehnKind::Quadratic
}

/// Class of the action on `Z^2` (the `a, b` block of the exponent-sum matrix).
pub fn expect_z2astz(psi: &Automorphism) -> DehnKind {
    let m = abel(psi, 3);
    assert_eq!((m[2][0], m[2][1]), (0, 0), "Z^2 factor not preserved up to conjugacy");
    let (tr, det) = (m[0][0] + m[1][1], m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    let finite = if det == -1 {
        tr == 0
    } else {
        tr.abs() <= 1 || (tr.abs() == 2 && m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1])
    };
    if finite {
        DehnKind::Quadratic
    } else if (det == 1 && tr.abs() > 2) || (det == -1 && tr != 0) {
        DehnKind::Exponential
    } else {
        DehnKind::Cubic
    }
}

/// Periodic factor: quadratic; both exponential: exponential; otherwise
/// cubic (a linear factor on `F_2`).
pub fn expect_f2xf2(g1: Option<u32>, g2: Option<u32>) -> DehnKind {
    match (g1, g2) {
        (Some(0), _) | (_, Some(0)) => DehnKind::Quadratic,
        (None, None) => DehnKind::Exponential,
        _ => DehnKind::Cubic,
    }
}

// ---- batteries ----

fn kind_of(g: Option<u32>) -> &'static str {
    match g {
        Some(0) => "periodic",
        Some(_) => "linear",
        None => "exponential",
    }
}

pub fn f2xz_battery(rng: &mut TestRng) -> Vec<Fixture> {
    let k = GroupKind::F2xZ;
    let mut out = vec![
        Fixture::new("abc-bc", aut(k, &["a b c", "b c", "c"], &["a b^-1", "b c^-1", "c"]), DehnKind::Cubic),
        Fixture::new("ac-b", aut(k, &["a c", "b", "c"], &["a c^-1", "b", "c"]), DehnKind::Cubic),
        Fixture::new("abc5-b", aut(k, &["a b c^5", "b", "c"], &["a b^-1 c^-5", "b", "c"]), DehnKind::Quadratic),
        Fixture::new("fib", aut(k, &["a b", "a", "c"], &["b", "b^-1 a", "c"]), DehnKind::Quadratic),
    ];
    for i in 0..5 {
        let f = random_f2xz(rng, 5);
        let base = extend_f2xz(&random_hyperbolic_f2(rng, 6), rng.gen_range(-3..=3), rng.gen_range(-3..=3), 1);
        out.push(Fixture::new(format!("non-unit-{i}"), conj(&base, &f), DehnKind::Quadratic));
    }
    for i in 0..5 {
        let f = random_f2xz(rng, 5);
        let beta = [1, -1, 2, 3][i % 4];
        let kb = [1, -2, 3, 1, -1][i];
        let base = extend_f2xz(&transvection(beta), rng.gen_range(-3..=3), kb, 1);
        out.push(Fixture::new(format!("parabolic-kb{kb}-{i}"), conj(&base, &f), DehnKind::Cubic));
    }
    for i in 0..5 {
        let f = random_f2xz(rng, 5);
        let beta = [1, -1, 2, 3, -2][i];
        // With c inverted the square has k_b = 0.
        let (kb, sign) = if i < 3 { (0, 1) } else { (rng.gen_range(1..=3), -1) };
        let base = extend_f2xz(&transvection(beta), rng.gen_range(-3..=3), kb, sign);
        out.push(Fixture::new(format!("parabolic-kb0-{i}"), conj(&base, &f), DehnKind::Quadratic));
    }
    let finite = finite_order_f2();
    for i in 0..5 {
        let f = random_f2xz(rng, 5);
        // Identity or the reflection `b -> b^-1` fix a direction with a shift.
        let (base, ka, kb) = match i {
            0 => (finite[0].clone(), 1, 0),
            1 => (finite[0].clone(), 2, -1),
            2 => (f2(&["a", "b^-1"], &["a", "b^-1"]), 1, 3),
            3 => (finite[0].clone(), 0, 4),
            _ => (f2(&["a", "b^-1"], &["a", "b^-1"]), -2, 0),
        };
        let psi = extend_f2xz(&base, ka, kb, 1);
        out.push(Fixture::new(format!("finite-shifted-{i}"), conj(&psi, &f), DehnKind::Cubic));
    }
    for i in 0..6 {
        let f = random_f2xz(rng, 5);
        let base = finite[i].clone();
        // Nontrivial orders without eigenvalue 1 absorb any shift; the
        // identity and the swap take no effective shift.
        let (ka, kb) = match i {
            0 => (0, 0),
            5 => (1, -1),
            _ => (rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
        };
        let psi = extend_f2xz(&base, ka, kb, 1);
        out.push(Fixture::new(format!("finite-{i}"), conj(&psi, &f), DehnKind::Quadratic));
    }
    out
}

/// `Z^2 * Z` fixture with `a, b -> Xi`, `c -> c a^l b^m`, disguised by a random
/// conjugation.
fn z2_fixture(rng: &mut TestRng, xi: &Automorphism) -> Automorphism {
    let k = GroupKind::Z2astZ;
    let lift = Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: k,
        images: vec![xi.image(0).clone(), xi.image(1).clone(), FreeWord::gen(2)],
        inverse_images: vec![xi.inverse_images()[0].clone(), xi.inverse_images()[1].clone(), FreeWord::gen(2)],
    })
    .unwrap();
    let (l, m) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    let z = FreeWord::gen_pow(0, l).mul(&FreeWord::gen_pow(1, m));
    let tc = Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: k,
        images: vec![FreeWord::gen(0), FreeWord::gen(1), FreeWord::gen(2).mul(&z)],
        inverse_images: vec![FreeWord::gen(0), FreeWord::gen(1), FreeWord::gen(2).mul(&z.inverse())],
    })
    .unwrap();
    let f = random_z2astz(rng, 5);
    conj(&tc.compose(&lift).unwrap(), &f)
}

pub fn z2astz_battery(rng: &mut TestRng) -> Vec<Fixture> {
    let k = GroupKind::Z2astZ;
    let mut out = vec![
        Fixture::new("psi_a", aut(k, &["a", "b", "c a"], &["a", "b", "c a^-1"]), DehnKind::Quadratic),
        Fixture::new("a2b-ab", aut(k, &["a^2 b", "a b", "c"], &["a b^-1", "a^-1 b^2", "c"]), DehnKind::Exponential),
        Fixture::new("ab-b", aut(k, &["a b", "b", "c"], &["a b^-1", "b", "c"]), DehnKind::Cubic),
    ];
    let finite = finite_order_f2();
    for i in 0..7 {
        out.push(Fixture::new(format!("finite-{i}"), z2_fixture(rng, &finite[i % finite.len()]), DehnKind::Quadratic));
    }
    for i in 0..7 {
        let t = conj(&transvection([1, -1, 2, 3, -2, 1, 4][i]), &random_f2(rng, 4));
        let xi = if i % 3 == 2 { compose_all(GroupKind::Free(2), &[t, finite[1].clone()]) } else { t };
        out.push(Fixture::new(format!("parabolic-{i}"), z2_fixture(rng, &xi), DehnKind::Cubic));
    }
    for i in 0..6 {
        let h = random_hyperbolic_f2(rng, 6);
        out.push(Fixture::new(format!("hyperbolic-{i}"), z2_fixture(rng, &h), DehnKind::Exponential));
    }
    out
}

pub fn f2xf2_battery(rng: &mut TestRng) -> Vec<Fixture> {
    let t = transvection(1);
    let mut out = vec![
        Fixture::new("identity", product(&finite_order_f2()[0], &finite_order_f2()[0]), DehnKind::Quadratic),
        Fixture::new("transvections", product(&t, &t), DehnKind::Cubic),
        Fixture::new("fib-fib", product(&fib(), &fib()), DehnKind::Exponential),
    ];
    let pick = |rng: &mut TestRng, class: usize| -> Automorphism {
        // Kept short: swapped exponential fixtures are squared twice.
        let g = random_f2(rng, 2);
        let base = match class {
            0 => finite_order_f2()[rng.gen_range(0..6)].clone(),
            1 => transvection([1, -1, 2][rng.gen_range(0..3)]),
            _ => random_hyperbolic_f2(rng, 2),
        };
        conj(&base, &g)
    };
    for i in 0..18 {
        let (c1, c2) = (i % 3, (i / 3) % 3);
        let (p1, p2) = (pick(rng, c1), pick(rng, c2));
        let expected = expect_f2xf2(f2_growth(&p1), f2_growth(&p2));
        let psi = conj(&product(&p1, &p2), &random_f2xf2(rng, 4));
        let name = format!("{}x{}-{i}", kind_of(f2_growth(&p1)), kind_of(f2_growth(&p2)));
        let psi = if i >= 12 {
            // Swapped factors: the square splits as conjugates of p2 p1.
            let sq = compose_all(GroupKind::Free(2), &[p2.clone(), p1.clone()]);
            let g = f2_growth(&sq);
            out.push(Fixture::new(
                format!("swapped-{}-{i}", kind_of(g)),
                factor_swap().compose(&product(&p1, &p2)).unwrap(),
                expect_f2xf2(g, g),
            ));
            continue;
        } else {
            psi
        };
        out.push(Fixture::new(name, psi, expected));
    }
    out
}

/// Integer matrices `P J P^-1` with `J` block diagonal, as automorphisms of
/// `Z^k`, with the expected class read off the blocks.
pub fn zk_battery(rng: &mut TestRng) -> Vec<Fixture> {
    (0..24).map(|i| zk_fixture(rng, format!("zk-{i}"))).collect()
}

pub fn zk_fixture(rng: &mut TestRng, name: String) -> Fixture {
    type Block = (Vec<Vec<i64>>, Option<u32>);
    let jordan = |s: usize, e: i64| -> Block {
        let m = (0..s)
            .map(|i| (0..s).map(|j| if i == j { e } else if j == i + 1 { 1 } else { 0 }).collect())
            .collect();
        (m, Some(s as u32))
    };
    let blocks: Vec<Block> = vec![
        jordan(1, 1),
        jordan(1, -1),
        jordan(2, 1),
        jordan(2, -1),
        jordan(3, 1),
        jordan(4, 1),
        (vec![vec![0, -1], vec![1, 0]], Some(1)),
        (vec![vec![0, -1], vec![1, 1]], Some(1)),
        (vec![vec![2, 1], vec![1, 1]], None),
        (vec![vec![1, 1], vec![1, 0]], None),
        (vec![vec![0, 0, 1], vec![1, 0, -1], vec![0, 1, 3]], None),
    ];
    {
        let mut diag: Vec<&Block> = Vec::new();
        let mut dim = 0;
        let target = rng.gen_range(1..=4);
        while dim < target {
            let b = blocks.choose(rng).unwrap();
            if dim + b.0.len() <= 4 {
                dim += b.0.len();
                diag.push(b);
            }
            if diag.len() > 6 {
                break;
            }
        }
        let mut j = vec![vec![0i64; dim]; dim];
        let mut off = 0;
        for (m, _) in &diag {
            for (r, row) in m.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    j[off + r][off + c] = v;
                }
            }
            off += m.len();
        }
        let expected = if diag.iter().any(|b| b.1.is_none()) {
            DehnKind::Exponential
        } else {
            DehnKind::poly(diag.iter().map(|b| b.1.unwrap()).max().unwrap() + 1)
        };
        let jaut = zk_from_matrix(&j);
        let p = random_zk(rng, dim, 6);
        Fixture::new(name, conj(&jaut, &p), expected)
    }
}

/// Elementary moves of `Z^k`.
pub fn random_zk(rng: &mut TestRng, k: usize, steps: usize) -> Automorphism {
    let kind = GroupKind::Zk(k);
    let mut gens = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let mut im: Vec<FreeWord> = (0..k).map(FreeWord::gen).collect();
                let mut inv = im.clone();
                im[i] = FreeWord::gen(i).mul(&FreeWord::gen(j));
                inv[i] = FreeWord::gen(i).mul(&FreeWord::gen_pow(j, -1));
                gens.push(Automorphism::validate(mtdehn::AutomorphismSpec { kind, images: im, inverse_images: inv }).unwrap());
            }
        }
        let mut im: Vec<FreeWord> = (0..k).map(FreeWord::gen).collect();
        im[i] = FreeWord::gen_pow(i, -1);
        gens.push(Automorphism::validate(mtdehn::AutomorphismSpec { kind, images: im.clone(), inverse_images: im }).unwrap());
    }
    random_product(rng, kind, &gens, steps)
}

/// Automorphism of `Z^k` with the given matrix (column `j` the image of
/// generator `j`); the inverse comes from a float inverse, rounded and then
/// checked by validation.
pub fn zk_from_matrix(m: &[Vec<i64>]) -> Automorphism {
    let k = m.len();
    let f = nalgebra::DMatrix::from_fn(k, k, |i, j| m[i][j] as f64);
    let inv = f.try_inverse().expect("unimodular");
    let col = |mat: &dyn Fn(usize, usize) -> i64, j: usize| {
        let raw: Vec<i32> = (0..k)
            .flat_map(|i| {
                let e = mat(i, j);
                std::iter::repeat_n(if e >= 0 { i as i32 + 1 } else { -(i as i32 + 1) }, e.unsigned_abs() as usize)
            })
            .collect();
        mtdehn::words::reduce(&raw)
    };
    let fwd = |i: usize, j: usize| m[i][j];
    let bwd = |i: usize, j: usize| inv[(i, j)].round() as i64;
    Automorphism::validate(mtdehn::AutomorphismSpec {
        kind: GroupKind::Zk(k),
        images: (0..k).map(|j| col(&fwd, j)).collect(),
        inverse_images: (0..k).map(|j| col(&bwd, j)).collect(),
    })
    .unwrap()
}
