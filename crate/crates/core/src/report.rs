//! Runs classification and certification for every automorphism of a spec
//! file and assembles the JSON, text and CSV outputs.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::autos::Automorphism;
use crate::certify::{
    area_oracle, bg_lower_bound, select_probe, t_shuffle, witness_lower_bound, BgBound, OracleOptions,
    OracleResult, Presentation, ShuffleCertificate,
};
use crate::classify::{classify, ClassifyOptions, DehnClass, DehnKind};
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::growth::{growth_table, loglog_slope, GrowthOptions};
use crate::normalize::decompose_fkxfl;
use crate::specfile::{AutBlock, SpecFile};
use crate::words::{gen_of, letter, reduce, Alphabet, FreeWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    Off,
    Tiny,
    Full,
}

impl OracleMode {
    /// Longest sampled word handed to the oracle, and its state budget.
    fn limits(self) -> Option<(usize, usize)> {
        match self {
            OracleMode::Off => None,
            OracleMode::Tiny => Some((10, 200_000)),
            OracleMode::Full => Some((16, OracleOptions::default().budget)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReportOptions {
    /// Largest power in growth tables.
    pub n_max: usize,
    /// Word length budget for growth tables, witness series and shuffles.
    pub budget: usize,
    pub oracle: OracleMode,
    /// Witness table rows `n = n_lo, 2 n_lo, ...` up to `n_hi`.
    pub n_lo: usize,
    pub n_hi: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            n_max: 64,
            budget: 1_000_000,
            oracle: OracleMode::Tiny,
            n_lo: 8,
            n_hi: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRow {
    pub n: u64,
    pub word_length: u64,
    /// Decimal string; totals outgrow `u64` for exponential factors.
    pub total: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessTable {
    pub x: String,
    pub y: String,
    /// `"spec"` when given in the input, `"growth"` when chosen by probe growth.
    pub probe_source: &'static str,
    pub rows: Vec<WitnessRow>,
    /// Empirical log-log slope of the totals; absent with fewer than two rows.
    pub slope: Option<f64>,
    /// `total(2n) / total(n)` for consecutive rows.
    pub ratios: Vec<f64>,
    /// Set when the length budget cut the table short.
    pub truncated: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShuffleEntry {
    pub word: String,
    pub base: String,
    pub ledger: Vec<String>,
    pub certificate: ShuffleCertificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleEntry {
    pub word: String,
    pub result: OracleResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AutReport {
    pub name: String,
    pub group: String,
    pub input: String,
    pub normal_form: Value,
    pub class: String,
    pub degree: Option<u32>,
    pub provenance: String,
    pub heuristic: bool,
    /// The verdict is a bracket between two classes.
    pub bracket: bool,
    pub note: String,
    pub witnesses: Option<WitnessTable>,
    pub bg_bounds: Vec<BgBound>,
    pub shuffles: Vec<ShuffleEntry>,
    pub oracle: Vec<OracleEntry>,
    /// CSV file names written for this automorphism.
    pub tables: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportBundle {
    pub json: Value,
    pub text: String,
    /// `(file name, contents)`.
    pub csv: Vec<(String, String)>,
    /// 0 certified, 2 heuristic or inconclusive, 1 errors.
    pub exit_code: i32,
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn n_values(opts: &ReportOptions) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = opts.n_lo.max(1) as u64;
    while n <= opts.n_hi as u64 {
        out.push(n);
        n *= 2;
    }
    out
}

/// Commutator-of-powers table for `F_k x F_l`.
fn witness_table(
    psi: &Automorphism,
    block: &AutBlock,
    opts: &ReportOptions,
) -> Result<WitnessTable> {
    let GroupKind::FkxFl(k, _) = psi.kind() else {
        return Err(Error::Internal("witness table needs FkxFl".into()));
    };
    let dec = decompose_fkxfl(psi)?;
    let given_x = block.witnesses.iter().find(|w| w.letters().iter().all(|&c| gen_of(c) < k));
    let given_y = block.witnesses.iter().find(|w| w.letters().iter().all(|&c| gen_of(c) >= k));
    let from_spec = given_x.is_some() || given_y.is_some();
    let x = given_x.cloned().unwrap_or_else(|| select_probe(&dec.phi1.inverse(), opts.budget));
    let y = match given_y {
        Some(w) => reduce(&w.letters().iter().map(|&c| letter(gen_of(c) - k, c.signum())).collect::<Vec<_>>()),
        None => select_probe(&dec.phi2, opts.budget),
    };
    let fa = dec.phi1.kind().alphabet();
    let fb = dec.phi2.kind().alphabet();
    let mut rows = Vec::new();
    let mut totals = Vec::new();
    let mut truncated = None;
    for n in n_values(opts) {
        match witness_lower_bound(&dec.phi1, &dec.phi2, n, &x, &y, opts.budget) {
            Ok(fam) => {
                rows.push(WitnessRow {
                    n,
                    word_length: fam.expected_length(),
                    total: fam.total.to_string(),
                });
                totals.push((n as f64, big_to_f64(&fam.total)));
            }
            Err(e) => {
                truncated = Some(format!("n = {n}: {e}"));
                break;
            }
        }
    }
    let fit: Vec<(f64, f64)> = totals.iter().copied().filter(|&(_, t)| t > 0.0).collect();
    let slope = (fit.len() >= 2).then(|| loglog_slope(&fit));
    let ratios = totals.windows(2).map(|w| w[1].1 / w[0].1).collect();
    Ok(WitnessTable {
        x: fa.format(x.letters()),
        y: fb.format(y.letters()),
        probe_source: if from_spec { "spec" } else { "growth" },
        rows,
        slope,
        ratios,
        truncated,
    })
}

/// Generators spanning the abelian subgroup used for the quadratic bound.
fn abelian_gens(kind: GroupKind) -> Vec<usize> {
    match kind {
        GroupKind::Zk(k) => (0..k).collect(),
        GroupKind::Z2astZ => vec![0, 1],
        GroupKind::F2xZ => vec![2],
        GroupKind::FkxZ(k) => vec![k],
        GroupKind::Free(_) | GroupKind::FkxFl(..) => Vec::new(),
    }
}

/// Sampled identity words `t^-m x t^m Phi^m(x)^-1` (after shuffling
/// `t^-m x t^m` to `u t^s`) for each generator `x` and `m = 1, 2, 3`.
fn shuffle_samples(psi: &Automorphism, budget: usize, torus: &Alphabet) -> (Vec<ShuffleEntry>, Vec<String>) {
    let kind = psi.kind();
    let t = kind.rank();
    let mut out = Vec::new();
    let mut warnings = Vec::new();
    for g in 0..t {
        for m in 1..=3i64 {
            let w1 = FreeWord::gen_pow(t, -m).mul(&FreeWord::gen(g)).mul(&FreeWord::gen_pow(t, m));
            let step = t_shuffle(psi, &w1, budget).and_then(|c| {
                let w = w1.mul(&FreeWord::gen_pow(t, -c.s)).mul(&c.base.inverse());
                t_shuffle(psi, &w, budget)
            });
            match step {
                Ok(cert) => out.push(ShuffleEntry {
                    word: torus.format(cert.input.letters()),
                    base: torus.format(cert.base.letters()),
                    ledger: cert.stages.iter().map(ToString::to_string).collect(),
                    certificate: cert,
                }),
                Err(e) => warnings.push(format!("shuffle of {}: {e}", torus.format(w1.letters()))),
            }
        }
    }
    (out, warnings)
}

fn report_one(kind: GroupKind, block: &AutBlock, opts: &ReportOptions) -> Result<(AutReport, Vec<(String, String)>)> {
    let psi = Automorphism::validate(block.spec.clone())?;
    let growth = GrowthOptions {
        n_max: opts.n_max,
        budget: opts.budget,
        ..GrowthOptions::default()
    };
    let copts = ClassifyOptions {
        growth,
        witness: block.witnesses.first().cloned().filter(|_| matches!(kind, GroupKind::FkxZ(_))),
    };
    let class: DehnClass = classify(&psi, &copts)?;
    let torus = kind.alphabet().with_stable("t");
    let mut warnings = Vec::new();
    let mut csv = Vec::new();

    let witnesses = match kind {
        GroupKind::FkxFl(..) => match witness_table(&psi, block, opts) {
            Ok(t) => Some(t),
            Err(e) => {
                warnings.push(format!("witness table: {e}"));
                None
            }
        },
        _ => None,
    };
    if let Some(t) = &witnesses {
        let mut s = String::from("n,word_length,total\n");
        for r in &t.rows {
            let _ = writeln!(s, "{},{},{}", r.n, r.word_length, r.total);
        }
        csv.push((format!("{}_witness.csv", block.name), s));
    }

    // Only reported alongside a polynomial verdict.
    let gens = if class.kind == DehnKind::Exponential { Vec::new() } else { abelian_gens(kind) };
    let mut bg_bounds = Vec::new();
    if !gens.is_empty() {
        for n in n_values(opts) {
            match bg_lower_bound(&psi, &gens, n, opts.budget) {
                Ok(b) => bg_bounds.push(b),
                Err(Error::Precondition(_)) => break,
                Err(e) => {
                    warnings.push(format!("abelian bound: {e}"));
                    break;
                }
            }
        }
    }

    let mut tables: Vec<(String, Automorphism)> = Vec::new();
    match kind {
        GroupKind::Free(_) => tables.push((format!("{}_growth.csv", block.name), psi.clone())),
        GroupKind::FkxFl(..) => {
            if let Ok(dec) = decompose_fkxfl(&psi) {
                tables.push((format!("{}_factor1_growth.csv", block.name), dec.phi1));
                tables.push((format!("{}_factor2_growth.csv", block.name), dec.phi2));
            }
        }
        _ => {}
    }
    for (file, phi) in tables {
        match growth_table(&phi, opts.n_max, &[], opts.budget) {
            Ok(t) => csv.push((file, t.to_csv())),
            Err(e) => warnings.push(format!("{file}: {e}")),
        }
    }

    let (shuffles, sw) = shuffle_samples(&psi, opts.budget, &torus);
    warnings.extend(sw);

    let mut oracle = Vec::new();
    if let Some((max_len, budget)) = opts.oracle.limits() {
        let pres = Presentation::mapping_torus(&psi);
        let o = OracleOptions { l_max: None, budget };
        for s in shuffles.iter().filter(|s| s.certificate.input.len() <= max_len) {
            let w = &s.certificate.input;
            oracle.push(OracleEntry {
                word: torus.format(w.letters()),
                result: area_oracle(w, &pres, &o),
            });
        }
    }

    let report = AutReport {
        name: block.name.clone(),
        group: kind.name(),
        input: psi.format(),
        normal_form: class.normal_form.clone(),
        class: class.kind.to_string(),
        degree: class.kind.degree(),
        provenance: class.provenance.clone(),
        heuristic: class.heuristic,
        bracket: matches!(class.kind, DehnKind::Bracket(..)),
        note: class.note.clone(),
        witnesses,
        bg_bounds,
        shuffles,
        oracle,
        tables: csv.iter().map(|(f, _)| f.clone()).collect(),
        warnings,
    };
    Ok((report, csv))
}

fn text_block(r: &AutReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "[{}] {}: {}", r.name, r.group, r.input);
    let flag = if r.heuristic { " (heuristic)" } else { "" };
    let _ = writeln!(s, "  class: {}{flag}  [{}]", r.class, r.provenance);
    let _ = writeln!(s, "  note: {}", r.note);
    if let Some(t) = &r.witnesses {
        let _ = writeln!(s, "  witness x = {}, y = {} ({})", t.x, t.y, t.probe_source);
        for row in &t.rows {
            let _ = writeln!(s, "    n = {:>3}  |w| = {:>6}  bound = {}", row.n, row.word_length, row.total);
        }
        if let Some(slope) = t.slope {
            let _ = writeln!(s, "    fitted slope {slope:.3} (empirical)");
        }
        if let Some(cut) = &t.truncated {
            let _ = writeln!(s, "    truncated at {cut}");
        }
    }
    for b in &r.bg_bounds {
        let _ = writeln!(s, "  abelian bound n = {}: {}", b.n, b.bound);
    }
    for e in &r.shuffles {
        let c = &e.certificate;
        let _ = writeln!(
            s,
            "  shuffle {}: {} applications, identity = {}",
            e.word, c.applications, c.identity
        );
    }
    for o in &r.oracle {
        let res = &o.result;
        let area = match res.upper {
            Some(u) => u.to_string(),
            None => "?".into(),
        };
        let _ = writeln!(s, "  oracle {}: area {area} ({:?}, lower {})", o.word, res.status, res.lower);
    }
    for w in &r.warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
    s
}

pub fn run_report(spec: &SpecFile, opts: &ReportOptions) -> ReportBundle {
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    let mut csv = Vec::new();
    let mut text = String::new();
    for block in &spec.automorphisms {
        let mut o = *opts;
        if let Some(run) = spec.runs.first() {
            o.n_lo = run.n_lo;
            o.n_hi = run.n_hi;
            o.budget = run.budget;
        }
        match report_one(spec.kind, block, &o) {
            Ok((r, c)) => {
                text.push_str(&text_block(&r));
                reports.push(r);
                csv.extend(c);
            }
            Err(e) => {
                let msg = format!("automorphism '{}': {e}", block.name);
                let _ = writeln!(text, "[{}] error: {e}", block.name);
                errors.push(msg);
            }
        }
    }
    let inconclusive = reports
        .iter()
        .any(|r| r.heuristic || r.bracket);
    let exit_code = if !errors.is_empty() {
        1
    } else if inconclusive {
        2
    } else {
        0
    };
    let json = json!({
        "group": spec.kind.name(),
        "automorphisms": reports,
        "errors": errors,
        "exit_code": exit_code,
    });
    ReportBundle {
        json,
        text,
        csv,
        exit_code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfile::parse_spec;

    #[test]
    fn quadratic_z2astz() {
        let spec = parse_spec("group Z2astZ ranks 2 1\naut psi\n c -> c a\ninv psi\n c -> c a^-1\n").unwrap();
        let b = run_report(&spec, &ReportOptions::default());
        assert_eq!(b.exit_code, 0, "{}", b.text);
        let a = &b.json["automorphisms"][0];
        assert_eq!(a["class"], "Quadratic");
        assert!(a["provenance"].as_str().unwrap().starts_with("z2astz/"));
        assert!(!a["shuffles"].as_array().unwrap().is_empty());
        let exact = a["oracle"].as_array().unwrap().iter().any(|o| o["result"]["status"] == "Exact");
        assert!(exact);
    }

    #[test]
    fn cubic_product_with_slope() {
        let spec = parse_spec(
            "group FkxFl ranks 2 2\naut psi\n a -> a b\n x -> x y\ninv psi\n a -> a b^-1\n x -> x y^-1\n",
        )
        .unwrap();
        let b = run_report(&spec, &ReportOptions { oracle: OracleMode::Off, ..Default::default() });
        let a = &b.json["automorphisms"][0];
        assert_eq!(a["class"], "Cubic");
        let slope = a["witnesses"]["slope"].as_f64().unwrap();
        assert!((slope - 3.0).abs() < 0.1, "{slope}");
        assert!(b.csv.iter().any(|(f, _)| f == "psi_witness.csv"));
    }

    #[test]
    fn invalid_automorphism_is_error() {
        let spec = parse_spec("group F ranks 2\naut f\n a -> a b\ninv f\n a -> a b\n").unwrap();
        let b = run_report(&spec, &ReportOptions::default());
        assert_eq!(b.exit_code, 1);
        assert_eq!(b.json["errors"].as_array().unwrap().len(), 1);
    }
}
