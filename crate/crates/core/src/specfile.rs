//! Line-oriented input files.
//!
//! ```text
//! # comment
//! group F2xZ ranks 2
//! aut psi
//!   a -> a b c
//!   b -> b c
//! inv psi
//!   a -> a b^-1
//!   b -> b c^-1
//! witness psi a
//! run n 8..64 budget 1000000
//! ```
//!
//! Generators missing from an `aut` or `inv` block map to themselves.

use std::fmt::Write as _;

use crate::autos::AutomorphismSpec;
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::words::{reduce, Alphabet, FreeWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutBlock {
    pub name: String,
    pub spec: AutomorphismSpec,
    pub witnesses: Vec<FreeWord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunDirective {
    pub n_lo: usize,
    pub n_hi: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub kind: GroupKind,
    pub automorphisms: Vec<AutBlock>,
    pub runs: Vec<RunDirective>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, (byte, ch)) in text.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((i, byte)),
            (true, Some((col, b))) => {
                out.push((col + 1, &text[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b)) = start {
        out.push((col + 1, &text[b..]));
    }
    out
}

fn parse_usize(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, col, format!("expected a non-negative integer, found '{tok}'")))
}

fn parse_kind(line: usize, toks: &[(usize, &str)]) -> Result<GroupKind> {
    let Some(&(kcol, kind)) = toks.get(1) else {
        return Err(perr(line, 6, "expected a group kind"));
    };
    let ranks: Vec<usize> = match toks.get(2) {
        None => Vec::new(),
        Some(&(c, "ranks")) => {
            if toks.len() < 4 {
                return Err(perr(line, c, "'ranks' needs at least one value"));
            }
            toks[3..].iter().map(|&t| parse_usize(line, t)).collect::<Result<_>>()?
        }
        Some(&(c, t)) => return Err(perr(line, c, format!("expected 'ranks', found '{t}'"))),
    };
    let want = |n: usize| -> Result<()> {
        if ranks.len() == n {
            Ok(())
        } else {
            Err(perr(line, kcol, format!("{kind} takes {n} rank value(s), got {}", ranks.len())))
        }
    };
    let fixed = |expect: &[usize]| -> Result<()> {
        if ranks.is_empty() || ranks == expect {
            Ok(())
        } else {
            Err(perr(line, kcol, format!("{kind} has ranks {expect:?}")))
        }
    };
    let k = match kind {
        "Zk" | "Z" => {
            want(1)?;
            GroupKind::Zk(ranks[0])
        }
        "F" | "Fk" | "Free" => {
            want(1)?;
            GroupKind::Free(ranks[0])
        }
        "F2xZ" => {
            fixed(&[2])?;
            GroupKind::F2xZ
        }
        "Z2astZ" | "Z2*Z" => {
            fixed(&[2, 1])?;
            GroupKind::Z2astZ
        }
        "FkxFl" => {
            want(2)?;
            GroupKind::FkxFl(ranks[0], ranks[1])
        }
        "FkxZ" => {
            want(1)?;
            GroupKind::FkxZ(ranks[0])
        }
        other => return Err(perr(line, kcol, format!("unknown group kind '{other}'"))),
    };
    if k.rank() == 0 {
        return Err(perr(line, kcol, "rank must be positive"));
    }
    Ok(k)
}

fn parse_word_at(alpha: &Alphabet, line: usize, col: usize, text: &str) -> Result<FreeWord> {
    alpha
        .parse(text)
        .map(|raw| reduce(&raw))
        .map_err(|(c, msg)| {
            let msg = if msg.starts_with("unknown generator") {
                format!("undeclared generator: {msg}")
            } else {
                msg
            };
            perr(line, col + c - 1, msg)
        })
}

enum Block {
    None,
    Images(usize),
    Inverse(usize),
}

struct Pending {
    name: String,
    images: Vec<Option<FreeWord>>,
    inverse: Option<Vec<Option<FreeWord>>>,
    witnesses: Vec<FreeWord>,
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut kind: Option<GroupKind> = None;
    let mut auts: Vec<Pending> = Vec::new();
    let mut runs = Vec::new();
    let mut block = Block::None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col0, head)) = toks.first() else { continue };
        let find = |auts: &[Pending], name: &str, col: usize| {
            auts.iter()
                .position(|a| a.name == name)
                .ok_or_else(|| perr(line, col, format!("undeclared automorphism '{name}'")))
        };
        match head {
            "group" => {
                if kind.is_some() {
                    return Err(perr(line, col0, "group declared twice"));
                }
                kind = Some(parse_kind(line, &toks)?);
                block = Block::None;
            }
            "aut" | "inv" | "witness" | "run" if kind.is_none() => {
                return Err(perr(line, col0, "group declaration must come first"));
            }
            "aut" => {
                let [_, (c, name)] = toks[..] else {
                    return Err(perr(line, col0, "expected 'aut <name>'"));
                };
                if auts.iter().any(|a| a.name == name) {
                    return Err(perr(line, c, format!("automorphism '{name}' declared twice")));
                }
                let n = kind.expect("checked").rank();
                auts.push(Pending {
                    name: name.to_string(),
                    images: vec![None; n],
                    inverse: None,
                    witnesses: Vec::new(),
                });
                block = Block::Images(auts.len() - 1);
            }
            "inv" => {
                let [_, (c, name)] = toks[..] else {
                    return Err(perr(line, col0, "expected 'inv <name>'"));
                };
                let i = find(&auts, name, c)?;
                if auts[i].inverse.is_some() {
                    return Err(perr(line, c, format!("inverse of '{name}' given twice")));
                }
                auts[i].inverse = Some(vec![None; kind.expect("checked").rank()]);
                block = Block::Inverse(i);
            }
            "witness" => {
                let Some(&(c, name)) = toks.get(1) else {
                    return Err(perr(line, col0, "expected 'witness <name> <word>'"));
                };
                let Some(&(wcol, _)) = toks.get(2) else {
                    return Err(perr(line, c, "witness word missing"));
                };
                let i = find(&auts, name, c)?;
                let rest = &content[content.char_indices().nth(wcol - 1).map_or(content.len(), |(b, _)| b)..];
                let w = parse_word_at(&kind.expect("checked").alphabet(), line, wcol, rest)?;
                auts[i].witnesses.push(w);
                block = Block::None;
            }
            "run" => {
                let [_, (_, "n"), (rc, range), (_, "budget"), btok] = toks[..] else {
                    return Err(perr(line, col0, "expected 'run n <lo>..<hi> budget <N>'"));
                };
                let Some((lo, hi)) = range.split_once("..") else {
                    return Err(perr(line, rc, format!("expected a range '<lo>..<hi>', found '{range}'")));
                };
                let n_lo = parse_usize(line, (rc, lo))?;
                let n_hi = parse_usize(line, (rc + lo.len() + 2, hi))?;
                if n_lo > n_hi {
                    return Err(perr(line, rc, "empty range"));
                }
                let budget = parse_usize(line, btok)?;
                runs.push(RunDirective { n_lo, n_hi, budget });
                block = Block::None;
            }
            _ => {
                let (slot, inverse) = match block {
                    Block::Images(i) => (i, false),
                    Block::Inverse(i) => (i, true),
                    Block::None => return Err(perr(line, col0, format!("unexpected '{head}'"))),
                };
                let alpha = kind.expect("checked").alphabet();
                let Some((lhs, rhs)) = content.split_once("->") else {
                    return Err(perr(line, col0, "expected '<generator> -> <word>'"));
                };
                let g_name = lhs.trim();
                let Some(g) = alpha.index_of(g_name) else {
                    return Err(perr(line, col0, format!("undeclared generator '{g_name}'")));
                };
                let rhs_col = lhs.chars().count() + 3;
                let w = parse_word_at(&alpha, line, rhs_col, rhs)?;
                let target = if inverse {
                    auts[slot].inverse.as_mut().expect("inverse block open")
                } else {
                    &mut auts[slot].images
                };
                if target[g].is_some() {
                    return Err(perr(line, col0, format!("generator '{g_name}' assigned twice")));
                }
                target[g] = Some(w);
            }
        }
    }
    let Some(kind) = kind else {
        return Err(perr(1, 1, "empty spec: expected 'group <kind> ranks <k> [<l>]'"));
    };
    if auts.is_empty() {
        return Err(perr(text.lines().count().max(1), 1, "no automorphism declared"));
    }
    let fill = |v: Vec<Option<FreeWord>>| -> Vec<FreeWord> {
        v.into_iter()
            .enumerate()
            .map(|(g, w)| kind.normalize(w.unwrap_or_else(|| FreeWord::gen(g)).letters()))
            .collect()
    };
    let automorphisms = auts
        .into_iter()
        .map(|p| {
            let inverse = p.inverse.ok_or_else(|| Error::MissingInverse(p.name.clone()))?;
            Ok(AutBlock {
                name: p.name,
                spec: AutomorphismSpec {
                    kind,
                    images: fill(p.images),
                    inverse_images: fill(inverse),
                },
                witnesses: p.witnesses,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SpecFile {
        kind,
        automorphisms,
        runs,
    })
}

fn kind_line(kind: GroupKind) -> String {
    match kind {
        GroupKind::Zk(k) => format!("group Zk ranks {k}"),
        GroupKind::Free(k) => format!("group F ranks {k}"),
        GroupKind::F2xZ => "group F2xZ ranks 2".into(),
        GroupKind::Z2astZ => "group Z2astZ ranks 2 1".into(),
        GroupKind::FkxFl(k, l) => format!("group FkxFl ranks {k} {l}"),
        GroupKind::FkxZ(k) => format!("group FkxZ ranks {k}"),
    }
}

/// Canonical text; `parse_spec(&print_spec(s)) == Ok(s)`.
pub fn print_spec(spec: &SpecFile) -> String {
    let alpha = spec.kind.alphabet();
    let mut out = kind_line(spec.kind);
    out.push('\n');
    for a in &spec.automorphisms {
        for (head, words) in [("aut", &a.spec.images), ("inv", &a.spec.inverse_images)] {
            let _ = writeln!(out, "{head} {}", a.name);
            for (g, w) in words.iter().enumerate() {
                let _ = writeln!(out, "  {} -> {}", alpha.name(g), alpha.format(w.letters()));
            }
        }
        for w in &a.witnesses {
            let _ = writeln!(out, "witness {} {}", a.name, alpha.format(w.letters()));
        }
    }
    for r in &spec.runs {
        let _ = writeln!(out, "run n {}..{} budget {}", r.n_lo, r.n_hi, r.budget);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBIC: &str = "\
# transvection with central shifts
group F2xZ ranks 2
aut psi
  a -> a b c
  b -> b c
inv psi
  a -> a b^-1
  b -> b c^-1
run n 8..64 budget 100000
";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_spec(CUBIC).unwrap();
        assert_eq!(s.kind, GroupKind::F2xZ);
        let alpha = s.kind.alphabet();
        assert_eq!(alpha.format(s.automorphisms[0].spec.images[2].letters()), "c");
        assert_eq!(s.runs, vec![RunDirective { n_lo: 8, n_hi: 64, budget: 100_000 }]);
        let printed = print_spec(&s);
        assert_eq!(parse_spec(&printed).unwrap(), s);
        assert_eq!(print_spec(&parse_spec(&printed).unwrap()), printed);
    }

    #[test]
    fn missing_inverse() {
        let text = "group F2xZ ranks 2\naut psi\n  a -> a b\n";
        assert_eq!(parse_spec(text), Err(Error::MissingInverse("psi".into())));
    }

    #[test]
    fn positioned_errors() {
        match parse_spec("group F2xZ ranks 2\naut psi\n  a -> a q\n") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (3, 10));
                assert!(message.contains("undeclared generator"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_spec("group F2xZ ranks 3\n") {
            Err(Error::Parse { line: 1, column: 7, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_spec(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_spec("aut psi\n"), Err(Error::Parse { line: 1, column: 1, .. })));
    }

    #[test]
    fn exponent_expansion() {
        let s = parse_spec("group F ranks 2\naut f\n a -> a b^-2\ninv f\n a -> a b^2\nwitness f a^-2\n").unwrap();
        assert_eq!(s.automorphisms[0].witnesses[0].letters(), &[-1, -1]);
        assert_eq!(s.automorphisms[0].spec.images[0].letters(), &[1, -2, -2]);
    }
}
