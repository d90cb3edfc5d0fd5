//! Finite automata over a dense symbol alphabet `0..alphabet`.

use std::collections::{BTreeSet, HashMap, VecDeque};

/// An NFA with epsilon moves and a single start state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: usize,
    pub start: usize,
    pub accepting: BTreeSet<usize>,
    /// Per state: `(None, q)` is an epsilon move, `(Some(x), q)` reads `x`.
    pub trans: Vec<Vec<(Option<u32>, usize)>>,
}

impl Nfa {
    pub fn new(alphabet: usize) -> Self {
        Nfa { alphabet, start: 0, accepting: BTreeSet::new(), trans: vec![Vec::new()] }
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn add_state(&mut self) -> usize {
        self.trans.push(Vec::new());
        self.trans.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, sym: Option<u32>, to: usize) {
        self.trans[from].push((sym, to));
    }

    /// Accepts nothing.
    pub fn empty(alphabet: usize) -> Self {
        Nfa::new(alphabet)
    }

    /// Accepts only the empty word.
    pub fn epsilon(alphabet: usize) -> Self {
        let mut n = Nfa::new(alphabet);
        n.accepting.insert(0);
        n
    }

    pub fn symbol(alphabet: usize, x: u32) -> Self {
        let mut n = Nfa::new(alphabet);
        let q = n.add_state();
        n.add_edge(0, Some(x), q);
        n.accepting.insert(q);
        n
    }

    /// Accepts exactly `word`.
    pub fn word(alphabet: usize, word: &[u32]) -> Self {
        let mut n = Nfa::epsilon(alphabet);
        for &x in word {
            n = n.concat(&Nfa::symbol(alphabet, x));
        }
        n
    }

    /// Copy `other`'s states into `self`, returning the offset.
    fn embed(&mut self, other: &Nfa) -> usize {
        let off = self.trans.len();
        for edges in &other.trans {
            self.trans.push(edges.iter().map(|&(s, q)| (s, q + off)).collect());
        }
        off
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        n.accepting.clear();
        let off = n.embed(other);
        for &q in &self.accepting {
            n.add_edge(q, None, other.start + off);
        }
        n.accepting = other.accepting.iter().map(|q| q + off).collect();
        n
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut n = Nfa::new(self.alphabet.max(other.alphabet));
        let a = n.embed(self);
        let b = n.embed(other);
        n.add_edge(0, None, self.start + a);
        n.add_edge(0, None, other.start + b);
        n.accepting = self.accepting.iter().map(|q| q + a).chain(other.accepting.iter().map(|q| q + b)).collect();
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = Nfa::epsilon(self.alphabet);
        let off = n.embed(self);
        n.add_edge(0, None, self.start + off);
        for &q in &self.accepting {
            n.add_edge(q + off, None, 0);
        }
        n
    }

    pub fn plus(&self) -> Nfa {
        self.concat(&self.star())
    }

    /// Accepts the reversals of the accepted words.
    pub fn reverse(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet);
        n.trans = vec![Vec::new(); self.num_states() + 1];
        for (q, edges) in self.trans.iter().enumerate() {
            for &(s, p) in edges {
                n.add_edge(p + 1, s, q + 1);
            }
        }
        for &q in &self.accepting {
            n.add_edge(0, None, q + 1);
        }
        n.accepting.insert(self.start + 1);
        n
    }

    pub fn eps_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(s, p) in &self.trans[q] {
                if s.is_none() && out.insert(p) {
                    stack.push(p);
                }
            }
        }
        out
    }

    pub fn step(&self, set: &BTreeSet<usize>, x: u32) -> BTreeSet<usize> {
        let moved = set
            .iter()
            .flat_map(|&q| self.trans[q].iter().filter(move |(s, _)| *s == Some(x)).map(|&(_, p)| p))
            .collect();
        self.eps_closure(&moved)
    }

    pub fn accepts(&self, word: &[u32]) -> bool {
        let mut cur = self.eps_closure(&BTreeSet::from([self.start]));
        for &x in word {
            cur = self.step(&cur, x);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|q| self.accepting.contains(q))
    }

    /// Subset construction. Only reachable, non-empty subsets become states.
    pub fn determinize(&self) -> Dfa {
        let start = self.eps_closure(&BTreeSet::from([self.start]));
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = vec![None; self.alphabet];
            for (x, slot) in row.iter_mut().enumerate() {
                let next = self.step(&sets[i], x as u32);
                if next.is_empty() {
                    continue;
                }
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                });
                *slot = Some(id);
            }
            trans.push(row);
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.iter().any(|q| self.accepting.contains(q))).collect();
        Dfa { alphabet: self.alphabet, start: 0, accepting, trans }
    }
}

/// A DFA with a partial transition function (missing edges reject).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: usize,
    pub start: usize,
    pub accepting: Vec<bool>,
    pub trans: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn next(&self, q: usize, x: u32) -> Option<usize> {
        self.trans[q].get(x as usize).copied().flatten()
    }

    pub fn accepts(&self, word: &[u32]) -> bool {
        let mut q = self.start;
        for &x in word {
            match self.next(q, x) {
                Some(p) => q = p,
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// Add a sink so every state has every transition.
    pub fn complete(&self) -> Dfa {
        let mut d = self.clone();
        let sink = d.trans.len();
        d.trans.push(vec![Some(sink); d.alphabet]);
        d.accepting.push(false);
        for row in d.trans.iter_mut() {
            row.resize(self.alphabet, None);
            for slot in row.iter_mut() {
                slot.get_or_insert(sink);
            }
        }
        d
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.complete();
        for a in d.accepting.iter_mut() {
            *a = !*a;
        }
        d
    }

    /// Product automaton; `both` chooses intersection (true) or union (false).
    pub fn product(&self, other: &Dfa, both: bool) -> Dfa {
        let (l, r) = if both { (self.clone(), other.clone()) } else { (self.complete(), other.complete()) };
        let alphabet = l.alphabet.max(r.alphabet);
        let mut index = HashMap::from([((l.start, r.start), 0usize)]);
        let mut pairs = vec![(l.start, r.start)];
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = vec![None; alphabet];
            for (x, slot) in row.iter_mut().enumerate() {
                if let (Some(p2), Some(q2)) = (l.next(p, x as u32), r.next(q, x as u32)) {
                    let id = *index.entry((p2, q2)).or_insert_with(|| {
                        pairs.push((p2, q2));
                        pairs.len() - 1
                    });
                    *slot = Some(id);
                }
            }
            trans.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| if both { l.accepting[p] && r.accepting[q] } else { l.accepting[p] || r.accepting[q] })
            .collect();
        Dfa { alphabet, start: 0, accepting, trans }
    }

    pub fn difference(&self, other: &Dfa) -> Dfa {
        self.product(&other.complement(), true)
    }

    /// States from which an accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, row) in self.trans.iter().enumerate() {
            for p in row.iter().flatten() {
                rev[*p].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(p) = queue.pop_front() {
            for &q in &rev[p] {
                if !live[q] {
                    live[q] = true;
                    queue.push_back(q);
                }
            }
        }
        live
    }

    /// Drop transitions into dead states, so search never enters them.
    pub fn trim(&self) -> Dfa {
        let live = self.live_states();
        let mut d = self.clone();
        for row in d.trans.iter_mut() {
            for slot in row.iter_mut() {
                if slot.is_some_and(|p| !live[p]) {
                    *slot = None;
                }
            }
        }
        d
    }

    pub fn is_empty(&self) -> bool {
        !self.live_states()[self.start]
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet);
        n.trans = self
            .trans
            .iter()
            .map(|row| row.iter().enumerate().filter_map(|(x, p)| p.map(|p| (Some(x as u32), p))).collect())
            .collect();
        n.start = self.start;
        n.accepting = (0..self.num_states()).filter(|&q| self.accepting[q]).collect();
        n
    }

    /// Shortest accepted word, if any.
    pub fn shortest_word(&self) -> Option<Vec<u32>> {
        let mut prev: Vec<Option<(usize, u32)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, x)) = prev[cur] {
                    w.push(x);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for (x, p) in self.trans[q].iter().enumerate() {
                if let Some(p) = *p {
                    if !seen[p] {
                        seen[p] = true;
                        prev[p] = Some((q, x as u32));
                        queue.push_back(p);
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Nfa::symbol(2, 0);
        let b = Nfa::symbol(2, 1);
        let ab_star = a.concat(&b).star();
        assert!(ab_star.accepts(&[]));
        assert!(ab_star.accepts(&[0, 1, 0, 1]));
        assert!(!ab_star.accepts(&[0, 1, 0]));
        let d = ab_star.determinize();
        for w in [vec![], vec![0, 1], vec![1], vec![0, 1, 1]] {
            assert_eq!(d.accepts(&w), ab_star.accepts(&w));
        }
        assert!(a.union(&b).accepts(&[1]));
        assert!(a.plus().accepts(&[0, 0]) && !a.plus().accepts(&[]));
        let r = a.concat(&b).reverse();
        assert!(r.accepts(&[1, 0]) && !r.accepts(&[0, 1]));
    }

    #[test]
    fn difference_of_star_and_suffix() {
        // (x|y)* minus (x|y)* y : words not ending in y
        let any = Nfa::symbol(2, 0).union(&Nfa::symbol(2, 1)).star();
        let ends_y = any.concat(&Nfa::symbol(2, 1));
        let d = any.determinize().difference(&ends_y.determinize());
        assert!(d.accepts(&[]));
        assert!(d.accepts(&[1, 0]));
        assert!(!d.accepts(&[0, 1]));
        assert!(d.to_nfa().accepts(&[0, 0]));
        assert_eq!(d.shortest_word(), Some(vec![]));
    }

    #[test]
    fn trim_and_empty() {
        let e = Nfa::empty(3).determinize();
        assert!(e.is_empty());
        let w = Nfa::word(3, &[2, 1]).determinize().trim();
        assert!(!w.is_empty());
        assert_eq!(w.shortest_word(), Some(vec![2, 1]));
    }
}
