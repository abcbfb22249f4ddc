//! Exact integer matrices: finite order / unit parabolic / non-unit
//! eigenvalue classification, parabolic normal form, and lifting `GL(2,Z)`
//! to `Aut(F_2)`.
//!
//! The unit-eigenvalue test is exact: strip cyclotomic factors from the
//! characteristic polynomial. A monic integer polynomial with constant term
//! `+-1` and no cyclotomic factor has a root off the unit circle (Kronecker),
//! so any leftover factor certifies a non-unit eigenvalue.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::autos::Automorphism;
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::words::FreeWord;

/// Square matrix with arbitrary-precision entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    e: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            e: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        IntMatrix { n, e }
    }

    /// Panics unless the rows form a square matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.as_ref().len() == n), "matrix must be square");
        Self::from_fn(n, |i, j| rows[i].as_ref()[j].into())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.e[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(BigInt::zero(), |acc, k| acc + self.get(i, k) * o.get(k, j))
        })
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        Self::from_fn(self.n, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &IntMatrix) -> IntMatrix {
        Self::from_fn(self.n, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        Self::from_fn(self.n, |i, j| self.get(i, j) * s)
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut acc = Self::identity(self.n);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.e.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        sign * &m[n * n - 1]
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low to high.
    /// Faddeev-LeVerrier; the divisions are exact over the integers.
    pub fn charpoly(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            m = self.mul(&m).add(&Self::identity(n).scale(&c[n - k + 1]));
            let t = self.mul(&m).trace();
            c[n - k] = -t / BigInt::from(k);
        }
        c
    }

    /// Inverse of a 2x2 matrix with determinant `+-1`.
    pub fn inverse_2x2(&self) -> Option<IntMatrix> {
        if self.n != 2 {
            return None;
        }
        let d = self.det();
        if d.abs() != BigInt::one() {
            return None;
        }
        let (a, b, c, e) = (self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1));
        Some(Self::from_fn(2, |i, j| {
            let v = match (i, j) {
                (0, 0) => e.clone(),
                (0, 1) => -b,
                (1, 0) => -c,
                _ => a.clone(),
            };
            v * &d
        }))
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn big_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            let row: Vec<serde_json::Value> = (0..self.n).map(|j| big_json(self.get(i, j))).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

fn ser_poly<S: Serializer>(p: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<serde_json::Value> = p.iter().map(big_json).collect();
    v.serialize(s)
}

fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    big_json(x).serialize(s)
}

// ---- polynomials (coefficients low to high) ----

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

/// Division by a monic polynomial; returns `(quotient, remainder)`.
fn divrem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = a.to_vec();
    let db = degree(b);
    if degree(a) < db {
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); degree(a) - db + 1];
    for i in (0..q.len()).rev() {
        let coef = r[i + db].clone();
        if coef.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &coef * bj;
        }
        q[i] = coef;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn euler_phi(n: u64) -> u64 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// n-th cyclotomic polynomial, by dividing `x^n - 1` by the smaller ones.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = divrem_monic(&p, &cyclotomic(d)).0;
        }
    }
    p
}

// ---- classification ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "value")]
pub enum MatrixVerdict {
    /// Minimal `n` with `A^n = I`.
    FiniteOrder(u64),
    /// Largest Jordan block size `c >= 2` (nilpotency degree of `A^N - I`).
    UnitParabolic(usize),
    NonUnitEigenvalue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixClass {
    pub verdict: MatrixVerdict,
    #[serde(serialize_with = "ser_poly")]
    pub charpoly: Vec<BigInt>,
    /// `(n, multiplicity)` for each cyclotomic factor `Phi_n`.
    pub cyclotomic_factors: Vec<(u64, usize)>,
    /// Characteristic polynomial with cyclotomic factors removed; degree > 0
    /// exactly for `NonUnitEigenvalue`.
    #[serde(serialize_with = "ser_poly")]
    pub residual: Vec<BigInt>,
    /// Power `N` (lcm of cyclotomic orders) at which `A^N - I` is nilpotent.
    pub certified_power: u64,
}

pub fn classify_matrix(a: &IntMatrix) -> Result<MatrixClass> {
    let d = a.det();
    if d.abs() != BigInt::one() {
        return Err(Error::Matrix(format!("determinant {d} is not +-1")));
    }
    let k = a.dim() as u64;
    let charpoly = a.charpoly();
    let mut residual = charpoly.clone();
    let mut factors = Vec::new();
    for n in 1..=(2 * k * k + 2) {
        let phi = euler_phi(n);
        if phi > k {
            continue;
        }
        let cyc = cyclotomic(n);
        let mut mult = 0;
        while degree(&residual) >= phi as usize {
            let (q, r) = divrem_monic(&residual, &cyc);
            if !(r.len() == 1 && r[0].is_zero()) {
                break;
            }
            residual = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    if degree(&residual) > 0 {
        return Ok(MatrixClass {
            verdict: MatrixVerdict::NonUnitEigenvalue,
            charpoly,
            cyclotomic_factors: factors,
            residual,
            certified_power: 0,
        });
    }
    let big_n = factors.iter().fold(1u64, |acc, &(n, _)| acc.lcm(&n));
    let id = IntMatrix::identity(a.dim());
    let nil = a.pow(big_n).sub(&id);
    let verdict = if nil.is_zero() {
        let order = (1..=big_n)
            .filter(|d| big_n % d == 0)
            .find(|&d| a.pow(d).is_identity())
            .unwrap_or(big_n);
        MatrixVerdict::FiniteOrder(order)
    } else {
        let mut c = 1;
        let mut p = nil.clone();
        while !p.is_zero() {
            p = p.mul(&nil);
            c += 1;
            if c > a.dim() {
                return Err(Error::Internal("A^N - I is not nilpotent".into()));
            }
        }
        MatrixVerdict::UnitParabolic(c)
    };
    Ok(MatrixClass {
        verdict,
        charpoly,
        cyclotomic_factors: factors,
        residual,
        certified_power: big_n,
    })
}

/// `B^-1 A^k B = [[1, alpha], [0, 1]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicForm {
    pub k: u64,
    #[serde(serialize_with = "ser_big")]
    pub alpha: BigInt,
    pub b: IntMatrix,
}

impl ParabolicForm {
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Some(bi) = self.b.inverse_2x2() else {
            return false;
        };
        let target = IntMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => self.alpha.clone(),
            (0, 0) | (1, 1) => BigInt::one(),
            _ => BigInt::zero(),
        });
        self.b.det() == BigInt::one() && bi.mul(&a.pow(self.k)).mul(&self.b) == target
    }
}

/// `(g, x, y)` with `a x + b y = g >= 0`.
fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Conjugates a power of a parabolic `SL(2,Z)` matrix to `[[1, alpha], [0, 1]]`:
/// take the kernel of `N = A^k - I`, make it primitive, and complete it to a
/// basis with Bezout coefficients.
pub fn parabolic_normalize(a: &IntMatrix) -> Result<ParabolicForm> {
    if a.dim() != 2 {
        return Err(Error::Precondition("parabolic normal form needs a 2x2 matrix".into()));
    }
    if a.det() != BigInt::one() {
        // det -1 with unit eigenvalues means eigenvalues 1 and -1: finite order.
        return Err(Error::Precondition("parabolic normal form needs determinant 1".into()));
    }
    let class = classify_matrix(a)?;
    if !matches!(class.verdict, MatrixVerdict::UnitParabolic(_)) {
        return Err(Error::Precondition(format!(
            "matrix {a} is not unit parabolic ({:?})",
            class.verdict
        )));
    }
    let big_n = class.certified_power;
    let k = (1..=big_n)
        .filter(|d| big_n % d == 0)
        .find(|&d| {
            let n = a.pow(d).sub(&IntMatrix::identity(2));
            !n.is_zero() && n.mul(&n).is_zero()
        })
        .ok_or_else(|| Error::Internal("no nilpotent power found".into()))?;
    let n = a.pow(k).sub(&IntMatrix::identity(2));
    let (r0, r1) = ((n.get(0, 0), n.get(0, 1)), (n.get(1, 0), n.get(1, 1)));
    let (mut p, mut q) = if !r0.0.is_zero() || !r0.1.is_zero() {
        (-r0.1, r0.0.clone())
    } else {
        (-r1.1, r1.0.clone())
    };
    let g = p.gcd(&q);
    p /= &g;
    q /= &g;
    if p.is_negative() || (p.is_zero() && q.is_negative()) {
        p = -p;
        q = -q;
    }
    let (g, x, y) = egcd(&p, &q);
    debug_assert!(g.is_one());
    let (s, r) = (x, -y);
    let b = IntMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => p.clone(),
        (0, 1) => r.clone(),
        (1, 0) => q.clone(),
        _ => s.clone(),
    });
    let t = b.inverse_2x2().unwrap().mul(&a.pow(k)).mul(&b);
    let form = ParabolicForm {
        k,
        alpha: t.get(0, 1).clone(),
        b,
    };
    if !form.verify(a) {
        return Err(Error::Internal(format!("parabolic normal form failed for {a}")));
    }
    Ok(form)
}

fn f2_aut(images: [&[(usize, i64)]; 2], inverse: [&[(usize, i64)]; 2]) -> Automorphism {
    let word = |parts: &[(usize, i64)]| {
        parts
            .iter()
            .fold(FreeWord::empty(), |w, &(g, e)| w.mul(&FreeWord::gen_pow(g, e)))
    };
    Automorphism::new_unchecked(
        GroupKind::Free(2),
        images.iter().map(|p| word(p)).collect(),
        inverse.iter().map(|p| word(p)).collect(),
    )
}

/// `a -> a b^q`.
fn transvection_ab(q: i64) -> Automorphism {
    f2_aut([&[(0, 1), (1, q)], &[(1, 1)]], [&[(0, 1), (1, -q)], &[(1, 1)]])
}

/// `b -> b a^q`.
fn transvection_ba(q: i64) -> Automorphism {
    f2_aut([&[(0, 1)], &[(1, 1), (0, q)]], [&[(0, 1)], &[(1, 1), (0, -q)]])
}

/// Lifts `B` in `GL(2,Z)` to an automorphism of `F_2` with abelianization `B`
/// by Euclidean row reduction into transvections and a diagonal sign matrix.
pub fn matrix_to_aut_f2(b: &IntMatrix) -> Result<Automorphism> {
    if b.dim() != 2 || b.det().abs() != BigInt::one() {
        return Err(Error::Matrix(format!("{b} is not in GL(2,Z)")));
    }
    let rows = b
        .to_i64_rows()
        .ok_or_else(|| Error::Matrix("entries too large to lift".into()))?;
    let mut m = [[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]];
    // Each recorded step is the inverse of the row operation applied.
    let mut steps: Vec<Automorphism> = Vec::new();
    let sub_row0 = |m: &mut [[i64; 2]; 2], q: i64, steps: &mut Vec<Automorphism>| {
        for j in 0..2 {
            m[0][j] -= q * m[1][j];
        }
        steps.push(transvection_ba(q));
    };
    let sub_row1 = |m: &mut [[i64; 2]; 2], q: i64, steps: &mut Vec<Automorphism>| {
        for j in 0..2 {
            m[1][j] -= q * m[0][j];
        }
        steps.push(transvection_ab(q));
    };
    while m[0][0] != 0 && m[1][0] != 0 {
        if m[0][0].abs() >= m[1][0].abs() {
            let q = m[0][0] / m[1][0];
            sub_row0(&mut m, q, &mut steps);
        } else {
            let q = m[1][0] / m[0][0];
            sub_row1(&mut m, q, &mut steps);
        }
    }
    if m[0][0] == 0 {
        sub_row0(&mut m, -1, &mut steps);
    }
    if m[1][0] != 0 {
        let q = m[1][0] * m[0][0];
        sub_row1(&mut m, q, &mut steps);
    }
    if m[0][1] != 0 {
        let q = m[0][1] * m[1][1];
        sub_row0(&mut m, q, &mut steps);
    }
    let (d0, d1) = (m[0][0], m[1][1]);
    if d0.abs() != 1 || d1.abs() != 1 || m[0][1] != 0 || m[1][0] != 0 {
        return Err(Error::Internal(format!("row reduction of {b} stalled")));
    }
    let diag = f2_aut([&[(0, d0)], &[(1, d1)]], [&[(0, d0)], &[(1, d1)]]);
    let mut f = Automorphism::identity(GroupKind::Free(2));
    for s in &steps {
        f = f.compose(s)?;
    }
    let f = f.compose(&diag)?;
    if f.abelianization()? != *b {
        return Err(Error::Internal(format!("lift of {b} has the wrong abelianization")));
    }
    Ok(f)
}
