//! The digit-by-digit machine behind the multiplication and inversion systems.
//!
//! Column `p` holds the digits of weight `k^p` in `ū = k^{r_y} u_x + u_y`,
//! processed from low to high. Three thresholds mark where radix points and
//! prefix ends fall in that frame: `T0 = 0`, `Ty = r_y`, `Tz = r_x + r_y`.
//! The control only knows which thresholds are behind it, so the automaton
//! below is finite and each triple has exactly one path.

use std::collections::HashMap;

use super::sign_case::{Relation, SignCase, Sgn, Variant};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const NAMES: [&str; 3] = ["X", "Y", "Z"];

const T0: usize = 0;
const TY: usize = 1;
const TZ: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Frac,
    Int,
}

/// What the finished number must look like, fixed by the first step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Need {
    Any,
    Nonzero,
    Zero,
}

/// The written sign of each number and what it demands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signs {
    pub sign: [Sgn; 3],
    pub need: [Need; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
struct Num {
    /// Has written a fractional digit.
    wrote: bool,
    finished: bool,
    /// Last integral digit was zero.
    pending: bool,
    nonzero: bool,
    /// Holds a source for a `b` prefix (normal forms only).
    has_b: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State {
    signs: Signs,
    passed: [bool; 3],
    num: [Num; 3],
    carry: bool,
}

/// One column of digits and the prefix letters that go with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    /// Absolute digits of x, y and z; zero when a number writes nothing.
    pub digits: [u32; 3],
    pub region: [Region; 3],
    pub carry_in: bool,
    /// Fractional-form prefix letter per number: `Some(true)` for `b`.
    pub frac_prefix: [Option<bool>; 3],
    /// Normal forms that get a `b`.
    pub nf_b: [bool; 3],
    /// Normal forms that get a `B`.
    pub nf_big_b: [bool; 3],
    /// Normal forms holding a `b` source after the column.
    pub has_b: [bool; 3],
}

/// Everything between two column boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Normal forms that need a `b` source on entering their integral part.
    pub enter: [bool; 3],
    pub finish: [bool; 3],
    /// `None` ends the derivation.
    pub column: Option<Column>,
}

/// The reachable part of the machine for one sign case.
pub struct Machine {
    pub k: u32,
    pub case: SignCase,
    pub relation: Relation,
    /// Start states, one per choice of written signs.
    pub starts: Vec<usize>,
    pub states: Vec<State>,
    /// `(from, step, to)`; `to` is `None` for the final step.
    pub edges: Vec<(usize, Step, Option<usize>)>,
}

impl State {
    pub fn signs(&self) -> Signs {
        self.signs
    }
}

fn point(variant: Variant, n: usize) -> usize {
    match (n, variant) {
        (X, _) => TY,
        (Y, _) => T0,
        (_, Variant::Mult) => T0,
        (_, Variant::Inv) => TZ,
    }
}

fn marker(variant: Variant, n: usize) -> usize {
    match (n, variant) {
        (X, _) => TZ,
        (Y, _) => TY,
        (_, Variant::Mult) => TZ,
        (_, Variant::Inv) => T0,
    }
}

/// `(a, b, strict)`: `T_a ≤ T_b`, or `T_a < T_b` when strict.
fn order(case: &SignCase) -> Vec<(usize, usize, bool)> {
    let mut out = vec![
        if case.ry == Sgn::Pos { (T0, TY, false) } else { (TY, T0, true) },
        if case.rx == Sgn::Pos { (TY, TZ, false) } else { (TZ, TY, true) },
    ];
    match case.rxy {
        Some(Sgn::Pos) => out.push((T0, TZ, false)),
        Some(Sgn::Neg) => out.push((TZ, T0, true)),
        None => {}
    }
    out
}

/// The written signs allowed by a case.
pub fn sign_options(case: &SignCase) -> Vec<Signs> {
    let need = |s: Sgn| if s == Sgn::Neg { Need::Nonzero } else { Need::Any };
    let (sx, sy) = (case.ux, case.uy);
    let base = |sz: Sgn, nz: Need| Signs { sign: [sx, sy, sz], need: [need(sx), need(sy), nz] };
    match (case.variant, case.uz) {
        (Variant::Mult, s) => vec![base(s, need(s))],
        (Variant::Inv, Sgn::Neg) => vec![base(Sgn::Pos, Need::Nonzero)],
        (Variant::Inv, Sgn::Pos) => vec![base(Sgn::Neg, Need::Nonzero), base(Sgn::Pos, Need::Zero)],
    }
}

/// The z digit and outgoing carry for digits `i`, `j` and an incoming carry.
pub fn digit_rule(rel: Relation, k: u32, i: u32, j: u32, c: bool) -> (u32, bool) {
    let (k, i, j, c) = (k as i64, i as i64, j as i64, c as i64);
    let v = match rel {
        Relation::ZSum => i + j + c,
        Relation::XSum => i - j - c,
        Relation::YSum => j - i - c,
    };
    (v.rem_euclid(k) as u32, !(0..k).contains(&v))
}

impl Machine {
    pub fn new(k: u32, case: SignCase) -> Machine {
        let mut m = Machine { k, case, relation: case.relation(), starts: Vec::new(), states: Vec::new(), edges: Vec::new() };
        let mut index: HashMap<State, usize> = HashMap::new();
        let mut todo = Vec::new();
        for signs in sign_options(&case) {
            let s = State { signs, passed: [false; 3], num: [Num::default(); 3], carry: false };
            let id = m.intern(&mut index, &mut todo, s);
            m.starts.push(id);
        }
        while let Some(id) = todo.pop() {
            let s = m.states[id];
            for (step, next) in m.successors(&s) {
                let to = next.map(|n| m.intern(&mut index, &mut todo, n));
                m.edges.push((id, step, to));
            }
        }
        m
    }

    fn intern(&mut self, index: &mut HashMap<State, usize>, todo: &mut Vec<usize>, s: State) -> usize {
        *index.entry(s).or_insert_with(|| {
            self.states.push(s);
            todo.push(self.states.len() - 1);
            self.states.len() - 1
        })
    }

    fn pass_sets(&self, s: &State) -> Vec<[bool; 3]> {
        let rel = order(&self.case);
        let mut out = Vec::new();
        for mask in 0u8..8 {
            let set = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
            if (0..3).any(|t| set[t] && s.passed[t]) {
                continue;
            }
            let ok = rel.iter().all(|&(a, b, strict)| {
                if !set[b] {
                    return true;
                }
                s.passed[a] || (!strict && set[a])
            });
            if ok {
                out.push(set);
            }
        }
        out
    }

    fn successors(&self, s: &State) -> Vec<(Step, Option<State>)> {
        let v = self.case.variant;
        let mut out = Vec::new();
        for set in self.pass_sets(s) {
            let mut s1 = *s;
            for (p, x) in s1.passed.iter_mut().zip(set) {
                *p |= x;
            }
            let can_end = s1.passed.iter().all(|&p| p)
                && !s1.carry
                && (0..3).all(|n| {
                    let q = &s1.num[n];
                    !q.pending
                        && match s1.signs.need[n] {
                            Need::Any => true,
                            Need::Nonzero => q.nonzero,
                            Need::Zero => !q.nonzero,
                        }
                });
            if can_end {
                out.push((Step { enter: [false; 3], finish: [false; 3], column: None }, None));
            }
            let mut enter = [false; 3];
            for n in 0..3 {
                if set[point(v, n)] && !s1.num[n].wrote && !s1.passed[marker(v, n)] {
                    enter[n] = true;
                    s1.num[n].has_b = true;
                }
            }
            let finishable: Vec<usize> =
                (0..3).filter(|&n| s1.passed[point(v, n)] && !s1.num[n].pending && !s1.num[n].finished).collect();
            for fmask in 0..1u8 << finishable.len() {
                let mut s2 = s1;
                let mut finish = [false; 3];
                for (b, &n) in finishable.iter().enumerate() {
                    if fmask & (1 << b) != 0 {
                        finish[n] = true;
                        s2.num[n].finished = true;
                    }
                }
                for i in 0..self.k {
                    for j in 0..self.k {
                        if let Some((col, s3)) = self.column(&s2, i, j) {
                            out.push((Step { enter, finish, column: Some(col) }, Some(s3)));
                        }
                    }
                }
            }
        }
        out
    }

    fn column(&self, s: &State, i: u32, j: u32) -> Option<(Column, State)> {
        let v = self.case.variant;
        let (dz, carry) = digit_rule(self.relation, self.k, i, j, s.carry);
        let digits = [i, j, dz];
        let mut next = *s;
        next.carry = carry;
        let mut region = [Region::Frac; 3];
        let mut any_write = false;
        for n in 0..3 {
            let d = digits[n];
            let q = &mut next.num[n];
            if s.signs.need[n] == Need::Zero && d != 0 {
                return None;
            }
            region[n] = if s.passed[point(v, n)] { Region::Int } else { Region::Frac };
            let writes = if q.finished {
                if d != 0 {
                    return None;
                }
                false
            } else if region[n] == Region::Int {
                q.pending = d == 0;
                true
            } else if q.wrote {
                true
            } else if d != 0 {
                q.wrote = true;
                q.has_b = true;
                true
            } else {
                false
            };
            q.nonzero |= d != 0;
            any_write |= writes;
        }
        let mut frac_prefix = [None; 3];
        let mut nf_b = [false; 3];
        let mut nf_big_b = [false; 3];
        for n in 0..3 {
            let (p, m) = (s.passed[point(v, n)], s.passed[marker(v, n)]);
            if p != m {
                frac_prefix[n] = Some(p);
            }
            let started = next.num[n].wrote || p;
            nf_b[n] = started && !m;
            nf_big_b[n] = !started && m;
        }
        if !any_write && frac_prefix.iter().all(Option::is_none) {
            return None;
        }
        let has_b = [next.num[X].has_b, next.num[Y].has_b, next.num[Z].has_b];
        Some((Column { digits, region, carry_in: s.carry, frac_prefix, nf_b, nf_big_b, has_b }, next))
    }
}
