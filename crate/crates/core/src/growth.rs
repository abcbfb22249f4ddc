//! Growth of free-group automorphisms: `g(n) = max_x |phi^n(x)|` over
//! generators, and cyclic growth via cyclically reduced lengths of probe
//! words. Exact in rank 2 through the abelianization; an empirical log-log fit
//! otherwise.

use serde::Serialize;

use crate::autos::Automorphism;
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::intmat::{classify_matrix, MatrixVerdict};
use crate::words::FreeWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `max_x |phi^n(x)|` over generators.
    pub basis: usize,
    /// `max_x |phi^-n(x)|` over generators.
    pub basis_inverse: usize,
    /// `||phi^n(w)||` per probe.
    pub cyclic: Vec<usize>,
    /// `||phi^-n(w)||` per probe.
    pub cyclic_inverse: Vec<usize>,
    /// `|phi^n(w)|` per probe.
    pub probe_lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub n_max: usize,
    pub probes: Vec<FreeWord>,
    pub probe_names: Vec<String>,
    pub rows: Vec<GrowthRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GrowthKind {
    Periodic,
    Polynomial(u32),
    Exponential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exactness {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthClass {
    /// Cyclic growth, the quantity the classification theorems use.
    pub kind: GrowthKind,
    pub exactness: Exactness,
    /// Growth of generator images when it was measured.
    pub basis: Option<GrowthKind>,
    /// Fitted log-log slope of the cyclic column, when a fit was made.
    pub slope: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthOptions {
    pub n_max: usize,
    /// Largest word length any table entry may reach.
    pub budget: usize,
    /// Allowed distance of the fitted slope from an integer.
    pub tolerance: f64,
    /// Minimum step ratio for an exponential verdict.
    pub ratio_min: f64,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            n_max: 64,
            budget: 1_000_000,
            tolerance: 0.25,
            ratio_min: 1.05,
        }
    }
}

/// Generators plus the commutators `[x_i, x_j]`, `i < j`.
pub fn default_probes(rank: usize) -> Vec<FreeWord> {
    let mut out: Vec<FreeWord> = (0..rank).map(FreeWord::gen).collect();
    for i in 0..rank {
        for j in i + 1..rank {
            let (x, y) = (FreeWord::gen(i), FreeWord::gen(j));
            out.push(x.inverse().mul(&y.inverse()).mul(&x).mul(&y));
        }
    }
    out
}

fn check_free(phi: &Automorphism) -> Result<usize> {
    match phi.kind() {
        GroupKind::Free(k) => Ok(k),
        other => Err(Error::Precondition(format!("growth needs a free group, got {other}"))),
    }
}

/// Table over `n = 0..=n_max`, or the prefix computed before some word
/// exceeded `budget` together with the offending `n`.
fn build_table(
    phi: &Automorphism,
    n_max: usize,
    extra: &[FreeWord],
    budget: usize,
) -> Result<(GrowthTable, Option<(usize, usize)>)> {
    let k = check_free(phi)?;
    let alpha = phi.kind().alphabet();
    let mut probes = default_probes(k);
    for w in extra {
        if !probes.contains(w) && !w.is_empty() {
            probes.push(w.clone());
        }
    }
    let inv = phi.inverse();
    let gens: Vec<FreeWord> = (0..k).map(FreeWord::gen).collect();
    let (mut gf, mut gb) = (gens.clone(), gens);
    let (mut pf, mut pb) = (probes.clone(), probes.clone());
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut overflow = None;
    for n in 0..=n_max {
        if n > 0 {
            let step = |ws: &mut Vec<FreeWord>, f: &Automorphism| {
                for w in ws.iter_mut() {
                    *w = f.apply(w);
                }
            };
            step(&mut gf, phi);
            step(&mut gb, &inv);
            step(&mut pf, phi);
            step(&mut pb, &inv);
        }
        let longest = gf.iter().chain(&gb).chain(&pf).chain(&pb).map(FreeWord::len).max().unwrap_or(0);
        if longest > budget {
            overflow = Some((n, longest));
            break;
        }
        rows.push(GrowthRow {
            n,
            basis: gf.iter().map(FreeWord::len).max().unwrap_or(0),
            basis_inverse: gb.iter().map(FreeWord::len).max().unwrap_or(0),
            cyclic: pf.iter().map(FreeWord::cyclic_len).collect(),
            cyclic_inverse: pb.iter().map(FreeWord::cyclic_len).collect(),
            probe_lengths: pf.iter().map(FreeWord::len).collect(),
        });
    }
    let probe_names = probes.iter().map(|w| alpha.format(w.letters())).collect();
    Ok((
        GrowthTable {
            n_max,
            probes,
            probe_names,
            rows,
        },
        overflow,
    ))
}

/// Exact lengths of `phi^{+-n}` images for `n <= n_max`; fails with a budget
/// error naming the first `n` whose words outgrow `budget`.
pub fn growth_table(
    phi: &Automorphism,
    n_max: usize,
    extra_probes: &[FreeWord],
    budget: usize,
) -> Result<GrowthTable> {
    let (table, overflow) = build_table(phi, n_max, extra_probes, budget)?;
    match overflow {
        Some((n, length)) => Err(Error::Budget {
            n: n as i64,
            length,
            budget,
        }),
        None => Ok(table),
    }
}

impl GrowthTable {
    /// `max_w ||phi^n(w)||` per row.
    pub fn cyclic_max(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.cyclic.iter().copied().max().unwrap_or(0))
            .collect()
    }

    pub fn basis_column(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.basis).collect()
    }

    /// Columns: `n, basis, basis_inverse`, then one cyclic column per probe.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,basis,basis_inverse");
        for name in &self.probe_names {
            out.push_str(&format!(",\"cyclic {name}\""));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{}", r.n, r.basis, r.basis_inverse));
            for c in &r.cyclic {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Verdict for one length column; `stopped` means the budget cut the table.
fn fit_series(
    series: &[usize],
    stopped: bool,
    max_degree: u32,
    opts: &GrowthOptions,
) -> std::result::Result<(GrowthKind, Option<f64>), String> {
    let end = series.len().saturating_sub(1);
    if stopped && end < 9 {
        return Ok((GrowthKind::Exponential, None));
    }
    if end < 4 {
        return Err(format!("table too short ({} rows)", series.len()));
    }
    let lo = end / 2;
    let window = &series[lo..=end];
    let early_max = series[..=lo].iter().copied().max().unwrap_or(0);
    if window.iter().copied().max().unwrap_or(0) <= early_max {
        return Ok((GrowthKind::Periodic, None));
    }
    let pts: Vec<(f64, f64)> = (lo.max(1)..=end).map(|n| (n as f64, series[n] as f64)).collect();
    let slope = loglog_slope(&pts);
    let tail = &series[end.saturating_sub(8)..=end];
    let ratios_ok = tail.windows(2).all(|w| w[1] as f64 >= opts.ratio_min * w[0] as f64);
    if ratios_ok && (stopped || slope > max_degree as f64 + opts.tolerance) {
        return Ok((GrowthKind::Exponential, Some(slope)));
    }
    let d = slope.round();
    if (slope - d).abs() > opts.tolerance || d < 1.0 {
        return Err(format!("slope {slope:.3} is not within {} of an integer degree", opts.tolerance));
    }
    Ok((GrowthKind::Polynomial(d as u32), Some(slope)))
}

/// Empirical growth class; always `Heuristic`. Polynomial degrees are capped
/// at `rank - 1`, so a steeper fit with growing step ratios is exponential.
pub fn estimate_growth(phi: &Automorphism, opts: &GrowthOptions) -> Result<GrowthClass> {
    let k = check_free(phi)?;
    let (table, overflow) = build_table(phi, opts.n_max, &[], opts.budget)?;
    let stopped = overflow.is_some();
    let max_degree = (k as u32).saturating_sub(1).max(1);
    let (kind, slope) = fit_series(&table.cyclic_max(), stopped, max_degree, opts)
        .map_err(|e| Error::Inconclusive(format!("cyclic growth: {e}")))?;
    let basis = fit_series(&table.basis_column(), stopped, max_degree + 1, opts)
        .ok()
        .map(|(b, _)| b);
    Ok(GrowthClass {
        kind,
        exactness: Exactness::Heuristic,
        basis,
        slope,
    })
}

/// Exact cyclic growth in rank 2 via `Out(F_2) = GL(2,Z)`.
pub fn classify_growth_f2(phi: &Automorphism) -> Result<GrowthClass> {
    if phi.kind() != GroupKind::Free(2) {
        return Err(Error::Precondition("exact growth needs rank 2".into()));
    }
    let class = classify_matrix(&phi.abelianization()?)?;
    let kind = match class.verdict {
        MatrixVerdict::FiniteOrder(_) => GrowthKind::Periodic,
        MatrixVerdict::UnitParabolic(_) => GrowthKind::Polynomial(1),
        MatrixVerdict::NonUnitEigenvalue => GrowthKind::Exponential,
    };
    Ok(GrowthClass {
        kind,
        exactness: Exactness::Exact,
        basis: None,
        slope: None,
    })
}

/// Exact in rank 2, heuristic otherwise.
pub fn growth_class(phi: &Automorphism, opts: &GrowthOptions) -> Result<GrowthClass> {
    if phi.kind() == GroupKind::Free(2) {
        classify_growth_f2(phi)
    } else {
        estimate_growth(phi, opts)
    }
}
