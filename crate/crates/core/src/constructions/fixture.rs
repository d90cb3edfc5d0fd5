//! The published tables of the explicit multiplication system (k = 3,
//! `u_x < 0`, `u_y > 0`, `u_z < 0`) and their comparison with the generated
//! ones.

use std::collections::BTreeMap;

use super::arith::{nf_group_system, nf_prune};
use super::sign_case::{SignCase, Sgn, Variant};
use crate::error::{Error, Result};
use crate::lsystem::{enumerate_dfs, Bounds, Et0lSystem};
use crate::oracle::{diff_sets, oracle_mult_triples, DiffReport};

/// The published tables, one per line, as printed.
pub const PUBLISHED: &str = include_str!("published_tables.txt");

/// Table id to (letter to image), with images as space-separated symbols.
pub type Tables = BTreeMap<String, BTreeMap<String, String>>;

fn symbol(short: &str) -> String {
    match short {
        "Xt" => "X\u{303}".into(),
        "Yt" => "Y\u{303}".into(),
        "Zt" => "Z\u{303}".into(),
        "Xb" => "X_b".into(),
        "Yb" => "Y_b".into(),
        "Zb" => "Z_b".into(),
        "Z1" => "Z_1".into(),
        "AX" => "𝖠_X".into(),
        "aY" => "𝖺_Y".into(),
        "AZ" => "𝖠_Z".into(),
        "AZ1" => "𝖠_Z1".into(),
        s => s.into(),
    }
}

fn image(text: &str) -> Result<String> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "e" {
            continue;
        }
        let (name, n) = match tok.split_once('^') {
            Some((name, n)) => (name, n.parse::<usize>().map_err(|_| Error::Parse { what: "fixture power", input: tok.into() })?),
            None => (tok, 1),
        };
        out.extend(std::iter::repeat_n(symbol(name), n));
    }
    Ok(out.join(" "))
}

/// The published tables, parsed.
pub fn published_tables() -> Result<Tables> {
    let mut out = Tables::new();
    for line in PUBLISHED.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let bad = || Error::Parse { what: "fixture line", input: line.to_string() };
        let (id, rules) = line.split_once(':').ok_or_else(bad)?;
        let table = out.entry(id.trim().to_string()).or_default();
        for rule in rules.split(';') {
            let (lhs, rhs) = rule.split_once("->").ok_or_else(bad)?;
            let img = image(rhs)?;
            for letter in lhs.split(',') {
                table.insert(symbol(letter.trim()), img.clone());
            }
        }
    }
    Ok(out)
}

/// The cases the explicit system covers: every sign of `r_x` and `r_y`.
pub fn explicit_cases() -> Vec<SignCase> {
    SignCase::all(Variant::Mult)
        .into_iter()
        .filter(|c| (c.ux, c.uy, c.uz) == (Sgn::Neg, Sgn::Pos, Sgn::Neg))
        .collect()
}

/// The generated counterpart of the explicit system.
pub fn explicit_system() -> Result<Et0lSystem> {
    nf_group_system(3, &explicit_cases())
}

/// The tables of a system in the same shape as [`published_tables`].
pub fn system_tables(sys: &Et0lSystem) -> Tables {
    sys.tables
        .iter()
        .map(|t| {
            let rules = t.rules.iter().map(|(x, imgs)| (sys.symbols[*x as usize].clone(), sys.word_text(&imgs[0]))).collect();
            (t.id.clone(), rules)
        })
        .collect()
}

/// One letter on which the two versions of a table disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowDiff {
    pub letter: String,
    pub published: Option<String>,
    pub generated: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDiff {
    pub id: String,
    pub rows: Vec<RowDiff>,
}

#[derive(Clone, Debug, Default)]
pub struct FixtureReport {
    pub matched: Vec<String>,
    pub differing: Vec<TableDiff>,
    /// Published tables the generator does not produce.
    pub not_generated: Vec<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.differing.is_empty() && self.not_generated.is_empty()
    }
}

/// Compare every published table with the generated table of the same name.
/// Generated tables with no published counterpart are not reported.
pub fn compare(published: &Tables, generated: &Tables) -> FixtureReport {
    let mut report = FixtureReport::default();
    for (id, want) in published {
        let Some(got) = generated.get(id) else {
            report.not_generated.push(id.clone());
            continue;
        };
        let mut rows = Vec::new();
        for letter in want.keys().chain(got.keys().filter(|l| !want.contains_key(*l))) {
            let (p, g) = (want.get(letter), got.get(letter));
            if p != g {
                rows.push(RowDiff { letter: letter.clone(), published: p.cloned(), generated: g.cloned() });
            }
        }
        if rows.is_empty() {
            report.matched.push(id.clone());
        } else {
            report.differing.push(TableDiff { id: id.clone(), rows });
        }
    }
    report
}

/// Compare the published tables with the generated ones.
pub fn fixture_check() -> Result<FixtureReport> {
    Ok(compare(&published_tables()?, &system_tables(&explicit_system()?)))
}

/// The explicit system with one table replaced by its published version.
pub fn with_published_table(id: &str) -> Result<Et0lSystem> {
    let mut sys = explicit_system()?;
    let published = published_tables()?;
    let rules = published.get(id).ok_or_else(|| Error::InvalidParameter(format!("no published table {id}")))?;
    let t = sys.table_index(id).ok_or_else(|| Error::InvalidParameter(format!("no generated table {id}")))?;
    let mut fresh = sys.clone();
    let pairs: Vec<(&str, &str)> = rules.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    fresh.tables.clear();
    fresh.add_dtable(id, &pairs)?;
    sys.tables[t].rules = fresh.tables.remove(0).rules;
    Ok(sys)
}

/// Enumerate a version of the explicit system against the oracle, with
/// each factor of length at most `max_len`.
pub fn adjudicate(sys: &Et0lSystem, max_len: usize) -> Result<DiffReport> {
    let mut want = std::collections::BTreeSet::new();
    for c in explicit_cases() {
        want.extend(oracle_mult_triples(3, max_len, Some(&c))?);
    }
    let prune = nf_prune(sys, 3, max_len);
    let found = enumerate_dfs(sys, Bounds::new(3 * max_len + 2, 400, 8), Some(&prune))?;
    Ok(diff_sets(&found.word_set(), found.exhaustive_up_to_len, &want, format!("factor length ≤ {max_len}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_shape() {
        let t = published_tables().unwrap();
        assert_eq!(t.len(), 42);
        assert_eq!(t["β00"]["X\u{303}"], "𝖠_X 𝖠_X 𝖠_X");
        assert_eq!(t["τ"].len(), 12);
        assert_eq!(t["τ"]["𝖺_Y"], "");
    }

    #[test]
    fn three_published_tables_differ() {
        let r = fixture_check().unwrap();
        assert!(r.not_generated.is_empty());
        let ids: Vec<&str> = r.differing.iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["α12", "β00", "β12"]);
        assert_eq!(r.matched.len(), 39);
        let a12 = &r.differing[0].rows;
        assert_eq!(a12.len(), 1);
        assert_eq!(a12[0].published.as_deref(), Some("B Z_1"));
        assert_eq!(a12[0].generated.as_deref(), Some("A B Z_1"));
    }

    #[test]
    fn generated_tables_agree_with_oracle_and_published_variants_do_not() {
        assert!(adjudicate(&explicit_system().unwrap(), 8).unwrap().is_equal());
        for id in ["α12", "β00", "β12"] {
            let report = adjudicate(&with_published_table(id).unwrap(), 8).unwrap();
            assert!(!report.is_equal(), "{id}");
        }
    }
}
