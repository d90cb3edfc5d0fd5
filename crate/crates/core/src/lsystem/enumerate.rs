//! Bounded search over (control state, sentential form) pairs.

use std::collections::{BTreeMap, HashMap};

use super::{Et0lSystem, Sym, Word};
use crate::automaton::Dfa;
use crate::error::Result;

/// Search limits. Forms with more than `max_word_len` persistent letters (see
/// [`Et0lSystem::persistent_letters`]), or longer than
/// `slack * max_word_len + slack`, are cut. Only the second cut can hide words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_word_len: usize,
    pub max_control_depth: usize,
    pub slack: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_word_len: 12, max_control_depth: 64, slack: 4 }
    }
}

impl Bounds {
    pub fn new(max_word_len: usize, max_control_depth: usize, slack: usize) -> Self {
        Bounds { max_word_len, max_control_depth, slack }
    }

    fn max_form_len(&self) -> usize {
        self.slack * self.max_word_len + self.slack
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Each generated word with one control word (table indices) producing it.
    pub words: BTreeMap<String, Vec<u32>>,
    pub bounds: Bounds,
    pub exhaustive_up_to_len: bool,
}

impl EnumerationResult {
    pub fn word_set(&self) -> std::collections::BTreeSet<String> {
        self.words.keys().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Vec<String>),
    NoUpToDepth { exhaustive: bool },
}

/// Whether a search keeps going after a word is reported.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flow {
    Continue,
    Stop,
}

/// A caller-supplied cut. It must be monotone: once it holds for a form it
/// holds for everything derived from it, so cutting never loses words.
pub type Prune<'a> = &'a (dyn Fn(&[Sym]) -> bool + Sync);

pub struct Search<'a> {
    sys: &'a Et0lSystem,
    dfa: Dfa,
    bounds: Bounds,
    prune: Option<Prune<'a>>,
    persistent: Vec<bool>,
    /// Defined transitions of each control state.
    moves: Vec<Vec<(u32, usize)>>,
    /// Per deterministic table, the image of each letter (`None` = fixed).
    dense: Vec<Option<Vec<Option<Word>>>>,
    /// Cleared when a cut or the depth limit might have hidden a word.
    pub exhaustive: bool,
}

impl<'a> Search<'a> {
    pub fn new(sys: &'a Et0lSystem, bounds: Bounds, prune: Option<Prune<'a>>) -> Result<Self> {
        let dfa = sys.control_dfa()?;
        let moves = dfa.trans.iter().map(|row| row.iter().enumerate().filter_map(|(t, p)| p.map(|p| (t as u32, p))).collect()).collect();
        let dense = sys
            .tables
            .iter()
            .map(|t| {
                t.is_deterministic().then(|| (0..sys.symbols.len()).map(|x| t.rules.get(&(x as Sym)).map(|v| v[0].clone())).collect())
            })
            .collect();
        Ok(Search {
            sys,
            dfa,
            moves,
            dense,
            bounds,
            prune,
            persistent: sys.persistent_letters(),
            exhaustive: true,
        })
    }

    /// Whether `w` should be dropped; records when dropping is not harmless.
    fn cut(&mut self, w: &[Sym]) -> bool {
        let weight = w.iter().filter(|&&s| self.persistent[s as usize]).count();
        if weight > self.bounds.max_word_len {
            return true;
        }
        if w.len() > self.bounds.max_form_len() {
            self.exhaustive = false;
            return true;
        }
        self.prune.is_some_and(|p| p(w))
    }

    fn successors(&self, q: usize, w: &[Sym]) -> Vec<(u32, usize, Word)> {
        let mut out = Vec::new();
        for &(t, p) in &self.moves[q] {
            match &self.dense[t as usize] {
                Some(dense) => {
                    let mut img = Vec::with_capacity(w.len() + 8);
                    for &x in w {
                        match &dense[x as usize] {
                            Some(v) => img.extend_from_slice(v),
                            None => img.push(x),
                        }
                    }
                    out.push((t, p, img));
                }
                None => {
                    for img in self.sys.tables[t as usize].apply(w) {
                        out.push((t, p, img));
                    }
                }
            }
        }
        out
    }

    fn has_moves(&self, q: usize) -> bool {
        !self.moves[q].is_empty()
    }

    /// Breadth-first search with deduplication of (state, form) pairs. `sink`
    /// gets each accepted terminal word together with its control word.
    pub fn bfs(&mut self, sink: &mut dyn FnMut(&[Sym], &[u32]) -> Flow) {
        if self.dfa.is_empty() {
            return;
        }
        let start = self.dfa.start;
        let axiom = self.sys.axiom.clone();
        if self.cut(&axiom) {
            return;
        }
        let mut seen: HashMap<(usize, Word), u32> = HashMap::new();
        let mut nodes: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX)];
        seen.insert((start, axiom.clone()), 0);
        let mut level = vec![(0u32, start, axiom)];
        for depth in 0..=self.bounds.max_control_depth {
            let mut next = Vec::new();
            for (id, q, w) in &level {
                if self.dfa.accepting[*q] && self.sys.is_terminal_word(w) {
                    let witness = trace(&nodes, *id);
                    if sink(w, &witness) == Flow::Stop {
                        return;
                    }
                }
                if depth == self.bounds.max_control_depth {
                    if self.has_moves(*q) {
                        self.exhaustive = false;
                    }
                    continue;
                }
                for (t, p, img) in self.successors(*q, w) {
                    if self.cut(&img) {
                        continue;
                    }
                    let key = (p, img);
                    if seen.contains_key(&key) {
                        continue;
                    }
                    let nid = nodes.len() as u32;
                    nodes.push((*id, t));
                    seen.insert(key.clone(), nid);
                    next.push((nid, key.0, key.1));
                }
            }
            if next.is_empty() {
                return;
            }
            level = next;
        }
    }

    /// Depth-first search without deduplication. Memory stays proportional to
    /// the depth, at the price of revisiting forms reachable in several ways.
    pub fn dfs(&mut self, sink: &mut dyn FnMut(&[Sym], &[u32]) -> Flow) {
        if self.dfa.is_empty() {
            return;
        }
        let axiom = self.sys.axiom.clone();
        if self.cut(&axiom) {
            return;
        }
        let mut path = Vec::new();
        self.dfs_from(self.dfa.start, &axiom, &mut path, sink);
    }

    fn dfs_from(&mut self, q: usize, w: &[Sym], path: &mut Vec<u32>, sink: &mut dyn FnMut(&[Sym], &[u32]) -> Flow) -> Flow {
        if self.dfa.accepting[q] && self.sys.is_terminal_word(w) && sink(w, path) == Flow::Stop {
            return Flow::Stop;
        }
        if path.len() == self.bounds.max_control_depth {
            if self.has_moves(q) {
                self.exhaustive = false;
            }
            return Flow::Continue;
        }
        for (t, p, img) in self.successors(q, w) {
            if self.cut(&img) {
                continue;
            }
            path.push(t);
            let flow = self.dfs_from(p, &img, path, sink);
            path.pop();
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

fn trace(nodes: &[(u32, u32)], mut id: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while nodes[id as usize].0 != u32::MAX {
        out.push(nodes[id as usize].1);
        id = nodes[id as usize].0;
    }
    out.reverse();
    out
}

/// The words of `sys` within `bounds`.
pub fn enumerate(sys: &Et0lSystem, bounds: Bounds) -> Result<EnumerationResult> {
    enumerate_with(sys, bounds, None)
}

/// [`enumerate`] with an extra monotone cut.
pub fn enumerate_with(sys: &Et0lSystem, bounds: Bounds, prune: Option<Prune<'_>>) -> Result<EnumerationResult> {
    let mut search = Search::new(sys, bounds, prune)?;
    let mut words = BTreeMap::new();
    search.bfs(&mut |w, witness| {
        words.entry(sys.render(w)).or_insert_with(|| witness.to_vec());
        Flow::Continue
    });
    Ok(EnumerationResult { words, bounds, exhaustive_up_to_len: search.exhaustive })
}

/// Like [`enumerate_with`], but depth first and without deduplication. Suits
/// systems whose derivations are unique, where the search tree stays small.
pub fn enumerate_dfs(sys: &Et0lSystem, bounds: Bounds, prune: Option<Prune<'_>>) -> Result<EnumerationResult> {
    let mut search = Search::new(sys, bounds, prune)?;
    let mut words = BTreeMap::new();
    search.dfs(&mut |w, witness| {
        words.entry(sys.render(w)).or_insert_with(|| witness.to_vec());
        Flow::Continue
    });
    Ok(EnumerationResult { words, bounds, exhaustive_up_to_len: search.exhaustive })
}

/// Whether `word` (a terminal word) is generated within `max_control_depth` steps.
pub fn membership(sys: &Et0lSystem, word: &str, max_control_depth: usize, slack: usize) -> Result<Membership> {
    let target = sys.parse_word(word)?;
    let mut want = vec![0usize; sys.symbols.len()];
    for &s in &target {
        want[s as usize] += 1;
    }
    let report = sys.validate();
    // When no table lowers the count of any terminal letter, a form holding
    // more of some letter than the target can never reach it.
    let letter_cut = move |w: &[Sym]| {
        let mut have = vec![0usize; want.len()];
        w.iter().any(|&s| {
            have[s as usize] += 1;
            sys.terminal[s as usize] && have[s as usize] > want[s as usize]
        })
    };
    let prune: Option<Prune<'_>> = if report.letterwise_monotone { Some(&letter_cut) } else { None };
    let bounds = Bounds::new(target.len(), max_control_depth, slack);
    let mut search = Search::new(sys, bounds, prune)?;
    let mut found = None;
    search.bfs(&mut |w, witness| {
        if w == target.as_slice() {
            found = Some(witness.iter().map(|&t| sys.tables[t as usize].id.clone()).collect());
            Flow::Stop
        } else {
            Flow::Continue
        }
    });
    Ok(match found {
        Some(w) => Membership::Yes(w),
        None => Membership::NoUpToDepth { exhaustive: search.exhaustive },
    })
}
