//! ET0L and EDT0L systems with rational control.
//!
//! Letters are dense indices into a symbol-name table. A table rewrites every
//! letter of a sentential form at once; letters it does not mention stay put.

mod closure;
mod enumerate;
mod json;

use std::collections::{BTreeMap, HashMap};

pub use closure::{cfg_to_et0l, concat_sys, hom_image, regular_to_edt0l, union_sys, Grammar};
pub use enumerate::{enumerate, enumerate_dfs, enumerate_with, membership, Bounds, EnumerationResult, Flow, Membership, Prune, Search};

use crate::automaton::{Dfa, Nfa};
use crate::control::ControlExpr;
use crate::error::{Error, Result};

pub type Sym = u16;
pub type Word = Vec<Sym>;

/// A finite set of simultaneous rewriting rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub id: String,
    pub rules: BTreeMap<Sym, Vec<Word>>,
}

impl Table {
    pub fn new(id: impl Into<String>) -> Self {
        Table { id: id.into(), rules: BTreeMap::new() }
    }

    pub fn is_deterministic(&self) -> bool {
        self.rules.values().all(|v| v.len() == 1)
    }

    /// All words obtained by rewriting every letter of `w` simultaneously.
    pub fn apply(&self, w: &[Sym]) -> Vec<Word> {
        let mut out: Vec<Word> = vec![Vec::with_capacity(w.len())];
        for x in w {
            match self.rules.get(x) {
                None => out.iter_mut().for_each(|v| v.push(*x)),
                Some(images) if images.len() == 1 => out.iter_mut().for_each(|v| v.extend_from_slice(&images[0])),
                Some(images) => {
                    out = out
                        .iter()
                        .flat_map(|v| {
                            images.iter().map(move |img| {
                                let mut v = v.clone();
                                v.extend_from_slice(img);
                                v
                            })
                        })
                        .collect();
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Rational control, either as an expression or as an automaton over table indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Control {
    Expr(ControlExpr),
    Automaton(Nfa),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Et0lSystem {
    pub k: Option<u32>,
    pub symbols: Vec<String>,
    pub terminal: Vec<bool>,
    pub tables: Vec<Table>,
    pub control: Control,
    pub axiom: Word,
}

/// Outcome of [`Et0lSystem::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub deterministic: bool,
    pub terminal_non_decreasing: bool,
    /// Every table maps each terminal letter to a word containing that letter,
    /// so the count of each terminal letter never drops.
    pub letterwise_monotone: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

impl Et0lSystem {
    /// An empty system with the given symbols; `terminals` marks the terminal ones.
    pub fn new(k: Option<u32>, symbols: &[(&str, bool)]) -> Self {
        Et0lSystem {
            k,
            symbols: symbols.iter().map(|(s, _)| s.to_string()).collect(),
            terminal: symbols.iter().map(|(_, t)| *t).collect(),
            tables: Vec::new(),
            control: Control::Expr(ControlExpr::Epsilon),
            axiom: Vec::new(),
        }
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.symbols.iter().position(|s| s == name).map(|i| i as Sym)
    }

    /// Add a symbol (or return the existing index).
    pub fn add_symbol(&mut self, name: &str, terminal: bool) -> Sym {
        if let Some(s) = self.sym(name) {
            return s;
        }
        self.symbols.push(name.to_string());
        self.terminal.push(terminal);
        (self.symbols.len() - 1) as Sym
    }

    /// Parse a word. Tokens are separated by whitespace; a token that is not a
    /// symbol name is read letter by letter.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let names: HashMap<&str, Sym> = self.symbols.iter().enumerate().map(|(i, s)| (s.as_str(), i as Sym)).collect();
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(&s) = names.get(tok) {
                out.push(s);
                continue;
            }
            let mut buf = [0u8; 4];
            for ch in tok.chars() {
                let s = names
                    .get(&*ch.encode_utf8(&mut buf))
                    .ok_or_else(|| Error::InvalidSystem(format!("undeclared letter {ch:?} in {text:?}")))?;
                out.push(*s);
            }
        }
        Ok(out)
    }

    /// Space-separated rendering that [`Et0lSystem::parse_word`] reads back.
    pub fn word_text(&self, w: &[Sym]) -> String {
        w.iter().map(|&s| self.symbols[s as usize].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Plain concatenation, used for terminal output words.
    pub fn render(&self, w: &[Sym]) -> String {
        w.iter().map(|&s| self.symbols[s as usize].as_str()).collect()
    }

    pub fn set_axiom(&mut self, text: &str) -> Result<()> {
        self.axiom = self.parse_word(text)?;
        Ok(())
    }

    /// Add a table given as `(letter, [images])` pairs in textual form.
    pub fn add_table(&mut self, id: &str, rules: &[(&str, &[&str])]) -> Result<()> {
        let mut t = Table::new(id);
        for (letter, images) in rules {
            let x = self.sym(letter).ok_or_else(|| Error::InvalidSystem(format!("undeclared letter {letter:?}")))?;
            let imgs = images.iter().map(|i| self.parse_word(i)).collect::<Result<Vec<_>>>()?;
            t.rules.insert(x, imgs);
        }
        self.tables.push(t);
        Ok(())
    }

    /// Add a deterministic table given as `(letter, image)` pairs.
    pub fn add_dtable(&mut self, id: &str, rules: &[(&str, &str)]) -> Result<()> {
        let rules: Vec<(&str, [&str; 1])> = rules.iter().map(|(l, i)| (*l, [*i])).collect();
        let rules: Vec<(&str, &[&str])> = rules.iter().map(|(l, i)| (*l, &i[..])).collect();
        self.add_table(id, &rules)
    }

    pub fn set_control(&mut self, src: &str) -> Result<()> {
        self.control = Control::Expr(ControlExpr::parse(src)?);
        Ok(())
    }

    pub fn table_index(&self, id: &str) -> Option<usize> {
        self.tables.iter().position(|t| t.id == id)
    }

    pub fn table_ids(&self) -> HashMap<String, u32> {
        self.tables.iter().enumerate().map(|(i, t)| (t.id.clone(), i as u32)).collect()
    }

    pub fn is_terminal_word(&self, w: &[Sym]) -> bool {
        w.iter().all(|&s| self.terminal[s as usize])
    }

    pub fn control_nfa(&self) -> Result<Nfa> {
        match &self.control {
            Control::Expr(e) => e.compile(&self.table_ids()),
            Control::Automaton(n) => Ok(n.clone()),
        }
    }

    /// Determinized control with dead states removed.
    pub fn control_dfa(&self) -> Result<Dfa> {
        Ok(self.control_nfa()?.determinize().trim())
    }

    /// Parse a whitespace-separated control word into table indices.
    pub fn parse_control_word(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace()
            .map(|id| self.table_index(id).ok_or_else(|| Error::InvalidSystem(format!("unknown table {id:?}"))))
            .collect()
    }

    /// Every word reachable from the axiom by applying `tables` in order.
    pub fn replay(&self, tables: &[usize]) -> Vec<Word> {
        let mut cur = vec![self.axiom.clone()];
        for &t in tables {
            let mut next: Vec<Word> = cur.iter().flat_map(|w| self.tables[t].apply(w)).collect();
            next.sort();
            next.dedup();
            cur = next;
        }
        cur
    }

    /// The largest set of letters that every table maps to words containing
    /// at least one letter of the set. Their count never drops, and it bounds
    /// the length of every terminal word derived later.
    pub fn persistent_letters(&self) -> Vec<bool> {
        let mut keep = vec![true; self.symbols.len()];
        loop {
            let mut changed = false;
            for t in &self.tables {
                for (x, imgs) in &t.rules {
                    let x = *x as usize;
                    if keep[x] && imgs.iter().any(|w| !w.iter().any(|&s| keep[s as usize])) {
                        keep[x] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return keep;
            }
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.symbols.len();
        let mut errors = Vec::new();
        if self.terminal.len() != n {
            errors.push("terminal flags do not match the alphabet".to_string());
        }
        let mut seen = HashMap::new();
        for (i, name) in self.symbols.iter().enumerate() {
            if seen.insert(name, i).is_some() {
                errors.push(format!("duplicate symbol {name:?}"));
            }
        }
        let in_range = |w: &Word| w.iter().all(|&s| (s as usize) < n);
        if !in_range(&self.axiom) {
            errors.push("axiom uses an undeclared letter".into());
        }
        let mut ids = HashMap::new();
        for t in &self.tables {
            if ids.insert(&t.id, ()).is_some() {
                errors.push(format!("duplicate table id {:?}", t.id));
            }
            for (x, imgs) in &t.rules {
                if (*x as usize) >= n || !imgs.iter().all(in_range) {
                    errors.push(format!("table {:?} references an undeclared letter", t.id));
                }
                if imgs.is_empty() {
                    errors.push(format!("table {:?} has a rule with no images", t.id));
                }
            }
        }
        match &self.control {
            Control::Expr(e) => {
                for s in e.symbols() {
                    if self.table_index(&s).is_none() {
                        errors.push(format!("control names unknown table {s:?}"));
                    }
                }
            }
            Control::Automaton(a) => {
                let bad = a.trans.iter().flatten().any(|(s, q)| s.is_some_and(|x| x as usize >= self.tables.len()) || *q >= a.num_states());
                if bad || a.start >= a.num_states() {
                    errors.push("control automaton is malformed".into());
                }
            }
        }
        let terminal = |s: Sym| self.terminal.get(s as usize).copied().unwrap_or(false);
        let mut non_decreasing = true;
        let mut letterwise = true;
        for t in &self.tables {
            for (x, imgs) in &t.rules {
                if !terminal(*x) {
                    continue;
                }
                for img in imgs {
                    if img.iter().filter(|&&s| terminal(s)).count() < 1 {
                        non_decreasing = false;
                    }
                    if !img.contains(x) {
                        letterwise = false;
                    }
                }
            }
        }
        ValidationReport {
            errors,
            deterministic: self.tables.iter().all(Table::is_deterministic),
            terminal_non_decreasing: non_decreasing,
            letterwise_monotone: letterwise,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lemma_phi() -> Et0lSystem {
        let mut s = Et0lSystem::new(Some(3), &[("S", false), ("a", true), ("b", true)]);
        s.add_dtable("phi", &[("S", "b S a"), ("a", "aaa")]).unwrap();
        s
    }

    #[test]
    fn apply_examples() {
        let s = lemma_phi();
        let w = s.parse_word("bSaa").unwrap();
        let out = s.tables[0].apply(&w);
        assert_eq!(out.len(), 1);
        assert_eq!(s.render(&out[0]), "bbSaaaaaaa");
        let ab = s.parse_word("ab").unwrap();
        assert_eq!(Table::new("id").apply(&ab), vec![ab.clone()]);
    }

    #[test]
    fn nondeterministic_product() {
        let mut s = Et0lSystem::new(None, &[("v", false), ("x", true), ("y", true)]);
        s.add_table("t", &[("v", &["x", "y"])]).unwrap();
        let out: Vec<String> = s.tables[0].apply(&s.parse_word("vv").unwrap()).iter().map(|w| s.render(w)).collect();
        assert_eq!(out, ["xx", "xy", "yx", "yy"]);
    }

    #[test]
    fn validation() {
        let mut s = lemma_phi();
        s.set_control("phi*").unwrap();
        let r = s.validate();
        assert!(r.is_valid() && r.deterministic && r.terminal_non_decreasing && r.letterwise_monotone);
        assert!(s.add_dtable("bad", &[("q", "a")]).is_err());
        s.tables[0].rules.insert(9, vec![vec![]]);
        assert!(!s.validate().is_valid());
        s.set_control("nope").unwrap();
        assert!(s.validate().errors.iter().any(|e| e.contains("nope")));
    }
}
