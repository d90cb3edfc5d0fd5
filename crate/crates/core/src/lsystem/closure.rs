//! Closure constructions: union, concatenation, homomorphic image, regular
//! languages and context-free grammars as ET0L systems.

use std::collections::{BTreeMap, BTreeSet};

use super::{Control, Et0lSystem, Sym, Table, Word};
use crate::automaton::Nfa;
use crate::control::ControlExpr;
use crate::error::{Error, Result};

/// Copy of `n` with symbols renamed by `f`, over a new alphabet size.
fn relabel(n: &Nfa, alphabet: usize, f: impl Fn(u32) -> u32) -> Nfa {
    let mut out = n.clone();
    out.alphabet = alphabet;
    for edges in out.trans.iter_mut() {
        for (s, _) in edges.iter_mut() {
            *s = s.map(&f);
        }
    }
    out
}

/// A name not yet used in `sys`, built from `base`.
fn fresh_name(sys: &Et0lSystem, base: &str) -> String {
    let mut name = base.to_string();
    while sys.sym(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Builder state while merging systems into one.
struct Merge {
    out: Et0lSystem,
}

impl Merge {
    fn new(k: Option<u32>) -> Self {
        Merge { out: Et0lSystem::new(k, &[]) }
    }

    /// Map each symbol of `s` into the output. Terminals keep their names
    /// unless `copy_terminals`; everything else gets a `@tag` suffix.
    fn import(&mut self, s: &Et0lSystem, tag: &str, copy_terminals: bool) -> Vec<Sym> {
        s.symbols
            .iter()
            .zip(&s.terminal)
            .map(|(name, &t)| {
                if t && !copy_terminals {
                    self.out.add_symbol(name, true)
                } else {
                    self.out.add_symbol(&format!("{name}@{tag}"), false)
                }
            })
            .collect()
    }

    /// Re-add `s`'s tables under the symbol map; returns the index offset.
    fn import_tables(&mut self, s: &Et0lSystem, map: &[Sym], tag: &str) -> u32 {
        let off = self.out.tables.len() as u32;
        let mapw = |w: &Word| -> Word { w.iter().map(|&x| map[x as usize]).collect() };
        for t in &s.tables {
            let rules = t.rules.iter().map(|(x, imgs)| (map[*x as usize], imgs.iter().map(mapw).collect())).collect();
            self.out.tables.push(Table { id: format!("{}@{tag}", t.id), rules });
        }
        off
    }

    fn push_table(&mut self, id: &str, rules: BTreeMap<Sym, Vec<Word>>) -> u32 {
        self.out.tables.push(Table { id: id.to_string(), rules });
        (self.out.tables.len() - 1) as u32
    }
}

fn same_k(a: &Et0lSystem, b: &Et0lSystem) -> Option<u32> {
    if a.k == b.k {
        a.k
    } else {
        None
    }
}

/// A system for `L(s1) ∪ L(s2)`.
pub fn union_sys(s1: &Et0lSystem, s2: &Et0lSystem) -> Result<Et0lSystem> {
    let (c1, c2) = (s1.control_nfa()?, s2.control_nfa()?);
    let mut m = Merge::new(same_k(s1, s2));
    let map1 = m.import(s1, "1", false);
    let map2 = m.import(s2, "2", false);
    let z = m.out.add_symbol(&fresh_name(&m.out, "Z"), false);
    let o1 = m.import_tables(s1, &map1, "1");
    let o2 = m.import_tables(s2, &map2, "2");
    let ax = |s: &Et0lSystem, map: &[Sym]| -> Word { s.axiom.iter().map(|&x| map[x as usize]).collect() };
    let sel1 = m.push_table("sel@1", BTreeMap::from([(z, vec![ax(s1, &map1)])]));
    let sel2 = m.push_table("sel@2", BTreeMap::from([(z, vec![ax(s2, &map2)])]));
    let n = m.out.tables.len();
    let b1 = Nfa::symbol(n, sel1).concat(&relabel(&c1, n, |x| x + o1));
    let b2 = Nfa::symbol(n, sel2).concat(&relabel(&c2, n, |x| x + o2));
    m.out.axiom = vec![z];
    m.out.control = Control::Automaton(b1.union(&b2));
    Ok(m.out)
}

/// A system for `L(s1) · L(s2)`.
///
/// Both halves run on private copies of their letters, one after the other,
/// and a final table turns the copies into the real terminals.
pub fn concat_sys(s1: &Et0lSystem, s2: &Et0lSystem) -> Result<Et0lSystem> {
    let (c1, c2) = (s1.control_nfa()?, s2.control_nfa()?);
    let mut m = Merge::new(same_k(s1, s2));
    let map1 = m.import(s1, "1", true);
    let map2 = m.import(s2, "2", true);
    let mut fin = BTreeMap::new();
    for (s, map) in [(s1, &map1), (s2, &map2)] {
        for (i, name) in s.symbols.iter().enumerate() {
            if s.terminal[i] {
                let t = m.out.add_symbol(name, true);
                fin.insert(map[i], vec![vec![t]]);
            }
        }
    }
    let z = m.out.add_symbol(&fresh_name(&m.out, "Z"), false);
    let o1 = m.import_tables(s1, &map1, "1");
    let o2 = m.import_tables(s2, &map2, "2");
    let axiom: Word = s1.axiom.iter().map(|&x| map1[x as usize]).chain(s2.axiom.iter().map(|&x| map2[x as usize])).collect();
    let sel = m.push_table("sel", BTreeMap::from([(z, vec![axiom])]));
    let fin = m.push_table("fin", fin);
    let n = m.out.tables.len();
    let ctl = Nfa::symbol(n, sel)
        .concat(&relabel(&c1, n, |x| x + o1))
        .concat(&relabel(&c2, n, |x| x + o2))
        .concat(&Nfa::symbol(n, fin));
    m.out.axiom = vec![z];
    m.out.control = Control::Automaton(ctl);
    Ok(m.out)
}

/// A system for `φ(L(s))`, where `phi` maps terminal names to lists of
/// terminal names. Terminals missing from `phi` map to themselves.
pub fn hom_image(s: &Et0lSystem, phi: &BTreeMap<String, Vec<String>>) -> Result<Et0lSystem> {
    let c = s.control_nfa()?;
    let mut m = Merge::new(s.k);
    let map = m.import(s, "1", true);
    let mut fin = BTreeMap::new();
    for (i, name) in s.symbols.iter().enumerate() {
        if !s.terminal[i] {
            continue;
        }
        let image: Vec<String> = phi.get(name).cloned().unwrap_or_else(|| vec![name.clone()]);
        let w: Word = image.iter().map(|x| m.out.add_symbol(x, true)).collect();
        fin.insert(map[i], vec![w]);
    }
    for name in phi.keys() {
        if !s.symbols.iter().zip(&s.terminal).any(|(x, &t)| t && x == name) {
            return Err(Error::InvalidParameter(format!("homomorphism maps non-terminal {name:?}")));
        }
    }
    let o = m.import_tables(s, &map, "1");
    let fin = m.push_table("hom", fin);
    let n = m.out.tables.len();
    m.out.axiom = s.axiom.iter().map(|&x| map[x as usize]).collect();
    m.out.control = Control::Automaton(relabel(&c, n, |x| x + o).concat(&Nfa::symbol(n, fin)));
    Ok(m.out)
}

/// An EDT0L system for the language of `nfa`, whose symbol `i` is the
/// terminal `letters[i]`.
///
/// Table `t_ℓ` maps `S ↦ Sℓ`, which writes the word right to left, so the
/// control runs the automaton backwards.
pub fn regular_to_edt0l(nfa: &Nfa, letters: &[&str]) -> Result<Et0lSystem> {
    if nfa.alphabet > letters.len() {
        return Err(Error::InvalidParameter("automaton alphabet exceeds the letter list".into()));
    }
    let mut sys = Et0lSystem::new(None, &[]);
    let s = sys.add_symbol("S", false);
    for l in letters {
        if *l == "S" {
            return Err(Error::InvalidParameter("letter S is reserved".into()));
        }
        let x = sys.add_symbol(l, true);
        let mut t = Table::new(format!("t_{l}"));
        t.rules.insert(s, vec![vec![s, x]]);
        sys.tables.push(t);
    }
    let mut del = Table::new("del");
    del.rules.insert(s, vec![vec![]]);
    sys.tables.push(del);
    let n = sys.tables.len();
    let ctl = relabel(&nfa.reverse(), n, |x| x).concat(&Nfa::symbol(n, (n - 1) as u32));
    sys.axiom = vec![s];
    sys.control = Control::Automaton(ctl);
    Ok(sys)
}

/// A context-free grammar. Symbols are names; every name that heads a
/// production is a variable and every other name is a terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub start: Vec<String>,
    pub productions: Vec<(String, Vec<String>)>,
}

impl Grammar {
    /// Parse lines such as `S -> a S b | ε`, one character per symbol. The
    /// first line's head is the start symbol.
    pub fn parse(text: &str) -> Result<Self> {
        let mut productions = Vec::new();
        let mut start = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (head, body) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse { what: "production", input: line.to_string() })?;
            let head = head.trim().to_string();
            start.get_or_insert_with(|| vec![head.clone()]);
            for alt in body.split('|') {
                let rhs = alt.chars().filter(|c| !c.is_whitespace() && *c != 'ε').map(String::from).collect();
                productions.push((head.clone(), rhs));
            }
        }
        let start = start.ok_or_else(|| Error::Parse { what: "grammar", input: text.to_string() })?;
        Ok(Grammar { start, productions })
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.productions.iter().map(|(h, _)| h.clone()).collect()
    }

    pub fn terminals(&self) -> BTreeSet<String> {
        let vars = self.variables();
        self.productions
            .iter()
            .flat_map(|(_, r)| r.iter())
            .chain(self.start.iter())
            .filter(|s| !vars.contains(*s))
            .cloned()
            .collect()
    }
}

/// One table per variable `v`, rewriting `v` to any right-hand side or to
/// itself, under control `(r_v1 | … | r_vn)*`.
pub fn cfg_to_et0l(g: &Grammar) -> Result<Et0lSystem> {
    let mut sys = Et0lSystem::new(None, &[]);
    for v in g.variables() {
        sys.add_symbol(&v, false);
    }
    for t in g.terminals() {
        sys.add_symbol(&t, true);
    }
    let id = |sys: &Et0lSystem, n: &String| sys.sym(n).expect("declared above");
    let mut ids = Vec::new();
    for v in g.variables() {
        let x = id(&sys, &v);
        let mut imgs: Vec<Word> = vec![vec![x]];
        for (h, rhs) in &g.productions {
            if *h == v {
                imgs.push(rhs.iter().map(|n| id(&sys, n)).collect());
            }
        }
        imgs.sort();
        imgs.dedup();
        let mut t = Table::new(format!("r_{v}"));
        t.rules.insert(x, imgs);
        sys.tables.push(t);
        ids.push(ControlExpr::sym(format!("r_{v}")));
    }
    sys.axiom = g.start.iter().map(|n| id(&sys, n)).collect();
    sys.control = Control::Expr(ControlExpr::alt(ids).star());
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{enumerate, Bounds};

    fn words(s: &Et0lSystem, len: usize) -> Vec<String> {
        let r = enumerate(s, Bounds::new(len, 64, 4)).unwrap();
        assert!(r.exhaustive_up_to_len);
        r.words.keys().cloned().collect()
    }

    fn single(letter: &str) -> Et0lSystem {
        let mut s = Et0lSystem::new(None, &[(letter, true)]);
        s.set_axiom(letter).unwrap();
        s
    }

    fn power_sys(letter: &str) -> Et0lSystem {
        let mut s = Et0lSystem::new(None, &[("S", false), (letter, true)]);
        s.add_dtable("g", &[("S", &format!("S {letter}"))]).unwrap();
        s.add_dtable("h", &[("S", "")]).unwrap();
        s.set_axiom("S").unwrap();
        s.set_control("g* h").unwrap();
        s
    }

    #[test]
    fn concat_of_letters() {
        assert_eq!(words(&concat_sys(&single("a"), &single("b")).unwrap(), 4), ["ab"]);
    }

    #[test]
    fn union_of_powers() {
        let u = union_sys(&power_sys("a"), &power_sys("b")).unwrap();
        assert_eq!(words(&u, 2), ["", "a", "aa", "b", "bb"]);
    }

    #[test]
    fn hom_doubles() {
        let phi = BTreeMap::from([("a".to_string(), vec!["a".to_string(), "a".to_string()])]);
        let h = hom_image(&power_sys("a"), &phi).unwrap();
        assert_eq!(words(&h, 6), ["", "aa", "aaaa", "aaaaaa"]);
    }

    #[test]
    fn regular_and_cfg() {
        let a = Nfa::symbol(2, 0).star();
        let ab = a.concat(&Nfa::symbol(2, 1).star());
        let s = regular_to_edt0l(&ab, &["a", "b"]).unwrap();
        assert_eq!(words(&s, 2), ["", "a", "aa", "ab", "b", "bb"]);
        assert!(words(&regular_to_edt0l(&Nfa::empty(2), &["a", "b"]).unwrap(), 3).is_empty());
        assert_eq!(words(&regular_to_edt0l(&Nfa::epsilon(2), &["a", "b"]).unwrap(), 3), [""]);
        let g = Grammar::parse("S -> a S b | ε").unwrap();
        assert_eq!(words(&cfg_to_et0l(&g).unwrap(), 6), ["", "aaabbb", "aabb", "ab"]);
        let g = Grammar { start: vec!["x".into(), "y".into()], productions: vec![] };
        assert_eq!(words(&cfg_to_et0l(&g).unwrap(), 4), ["xy"]);
    }
}
