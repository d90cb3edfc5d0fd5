//! Regular expressions over table identifiers.
//!
//! Grammar, loosest binding first: `|` union, `\` difference, juxtaposition,
//! postfix `*` and `+`. Identifiers are runs of `[A-Za-z0-9_']`; `ε` is the
//! empty word and `∅` the empty language.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::Nfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ControlExpr {
    Empty,
    Epsilon,
    Sym(String),
    Concat(Vec<ControlExpr>),
    Union(Vec<ControlExpr>),
    Star(Box<ControlExpr>),
    Plus(Box<ControlExpr>),
    Diff(Box<ControlExpr>, Box<ControlExpr>),
}

impl ControlExpr {
    pub fn sym(id: impl Into<String>) -> Self {
        ControlExpr::Sym(id.into())
    }

    pub fn seq(parts: Vec<ControlExpr>) -> Self {
        match parts.len() {
            0 => ControlExpr::Epsilon,
            1 => parts.into_iter().next().unwrap(),
            _ => ControlExpr::Concat(parts),
        }
    }

    pub fn alt(parts: Vec<ControlExpr>) -> Self {
        match parts.len() {
            0 => ControlExpr::Empty,
            1 => parts.into_iter().next().unwrap(),
            _ => ControlExpr::Union(parts),
        }
    }

    pub fn star(self) -> Self {
        ControlExpr::Star(Box::new(self))
    }

    pub fn plus(self) -> Self {
        ControlExpr::Plus(Box::new(self))
    }

    pub fn minus(self, other: ControlExpr) -> Self {
        ControlExpr::Diff(Box::new(self), Box::new(other))
    }

    /// `self` repeated `n` times.
    pub fn power(self, n: usize) -> Self {
        ControlExpr::seq(vec![self; n])
    }

    /// Every identifier mentioned, in first-occurrence order.
    pub fn symbols(&self) -> Vec<String> {
        fn go(e: &ControlExpr, out: &mut Vec<String>) {
            match e {
                ControlExpr::Sym(s) => {
                    if !out.contains(s) {
                        out.push(s.clone())
                    }
                }
                ControlExpr::Concat(v) | ControlExpr::Union(v) => v.iter().for_each(|x| go(x, out)),
                ControlExpr::Star(x) | ControlExpr::Plus(x) => go(x, out),
                ControlExpr::Diff(a, b) => {
                    go(a, out);
                    go(b, out)
                }
                ControlExpr::Empty | ControlExpr::Epsilon => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Compile to an NFA whose symbols are indices given by `ids`.
    pub fn compile(&self, ids: &HashMap<String, u32>) -> Result<Nfa> {
        let n = ids.len();
        Ok(match self {
            ControlExpr::Empty => Nfa::empty(n),
            ControlExpr::Epsilon => Nfa::epsilon(n),
            ControlExpr::Sym(s) => {
                let x = ids.get(s).ok_or_else(|| Error::InvalidSystem(format!("control names unknown table {s:?}")))?;
                Nfa::symbol(n, *x)
            }
            ControlExpr::Concat(v) => {
                let mut acc = Nfa::epsilon(n);
                for e in v {
                    acc = acc.concat(&e.compile(ids)?);
                }
                acc
            }
            ControlExpr::Union(v) => {
                let mut acc = Nfa::empty(n);
                for e in v {
                    acc = acc.union(&e.compile(ids)?);
                }
                acc
            }
            ControlExpr::Star(e) => e.compile(ids)?.star(),
            ControlExpr::Plus(e) => e.compile(ids)?.plus(),
            ControlExpr::Diff(a, b) => {
                let da = a.compile(ids)?.determinize();
                let db = b.compile(ids)?.determinize();
                da.difference(&db).trim().to_nfa()
            }
        })
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser { toks: tokenize(src)?, pos: 0 };
        let e = p.union()?;
        match p.toks.get(p.pos) {
            None => Ok(e),
            Some((at, _)) => Err(Error::Control { pos: *at, reason: "unexpected token".into() }),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            ControlExpr::Union(_) => 0,
            ControlExpr::Diff(..) => 1,
            ControlExpr::Concat(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for ControlExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &ControlExpr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            ControlExpr::Empty => f.write_str("∅"),
            ControlExpr::Epsilon => f.write_str("ε"),
            ControlExpr::Sym(s) => f.write_str(s),
            ControlExpr::Concat(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    wrap(f, e, 3)?;
                }
                Ok(())
            }
            ControlExpr::Union(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    wrap(f, e, 1)?;
                }
                Ok(())
            }
            ControlExpr::Star(e) => {
                wrap(f, e, 3)?;
                f.write_str("*")
            }
            ControlExpr::Plus(e) => {
                wrap(f, e, 3)?;
                f.write_str("+")
            }
            ControlExpr::Diff(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" \\ ")?;
                wrap(f, b, 2)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    Eps,
    Nothing,
    Bar,
    Back,
    Star,
    Plus,
    Open,
    Close,
}

fn is_id_char(c: char) -> bool {
    (c.is_alphanumeric() && c != 'ε') || c == '_' || c == '\''
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '|' => Tok::Bar,
            '\\' => Tok::Back,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '(' => Tok::Open,
            ')' => Tok::Close,
            'ε' => Tok::Eps,
            '∅' => Tok::Nothing,
            c if is_id_char(c) => {
                let mut s = String::new();
                while i < chars.len() && is_id_char(chars[i].1) {
                    s.push(chars[i].1);
                    i += 1;
                }
                out.push((at, Tok::Id(s)));
                continue;
            }
            _ => return Err(Error::Control { pos: at, reason: format!("unexpected character {c:?}") }),
        };
        out.push((at, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(p, _)| *p)
    }

    fn union(&mut self) -> Result<ControlExpr> {
        let mut parts = vec![self.diff()?];
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            parts.push(self.diff()?);
        }
        Ok(ControlExpr::alt(parts))
    }

    fn diff(&mut self) -> Result<ControlExpr> {
        let mut e = self.concat()?;
        while self.peek() == Some(&Tok::Back) {
            self.pos += 1;
            e = e.minus(self.concat()?);
        }
        Ok(e)
    }

    fn concat(&mut self) -> Result<ControlExpr> {
        let mut parts = Vec::new();
        while matches!(self.peek(), Some(Tok::Id(_) | Tok::Eps | Tok::Nothing | Tok::Open)) {
            parts.push(self.postfix()?);
        }
        if parts.is_empty() {
            return Err(Error::Control { pos: self.here(), reason: "expected an expression".into() });
        }
        Ok(ControlExpr::seq(parts))
    }

    fn postfix(&mut self) -> Result<ControlExpr> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => e = e.star(),
                Some(Tok::Plus) => e = e.plus(),
                _ => return Ok(e),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<ControlExpr> {
        let at = self.here();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Id(s)) => Ok(ControlExpr::Sym(s)),
            Some(Tok::Eps) => Ok(ControlExpr::Epsilon),
            Some(Tok::Nothing) => Ok(ControlExpr::Empty),
            Some(Tok::Open) => {
                if self.peek() == Some(&Tok::Close) {
                    self.pos += 1;
                    return Ok(ControlExpr::Epsilon);
                }
                let e = self.union()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Control { pos: self.here(), reason: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(Error::Control { pos: at, reason: "expected an expression".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> HashMap<String, u32> {
        names.iter().enumerate().map(|(i, s)| (s.to_string(), i as u32)).collect()
    }

    #[test]
    fn parse_and_print() {
        let e = ControlExpr::parse("theta theta (psi0 | psi1)* \\ (psi0 | psi1)* psi0 mu* nu").unwrap();
        let again = ControlExpr::parse(&e.to_string()).unwrap();
        assert_eq!(e, again);
        assert!(ControlExpr::parse("a | ").is_err());
        assert!(ControlExpr::parse("a ) b").is_err());
        assert!(ControlExpr::parse("a # b").is_err());
        assert_eq!(ControlExpr::parse("()").unwrap(), ControlExpr::Epsilon);
    }

    #[test]
    fn difference_compiles_exactly() {
        let e = ControlExpr::parse("(p0 | p1)* \\ (p0 | p1)* p0").unwrap();
        let n = e.compile(&ids(&["p0", "p1"])).unwrap();
        assert!(n.accepts(&[]));
        assert!(n.accepts(&[0, 1]));
        assert!(!n.accepts(&[1, 0]));
    }

    #[test]
    fn unknown_table_is_an_error() {
        let e = ControlExpr::parse("x y").unwrap();
        assert!(e.compile(&ids(&["x"])).is_err());
    }
}
