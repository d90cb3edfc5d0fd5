//! Centralizers and conjugator sets, fitted from actual powers of the
//! centralizer generator and checked on further powers.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use super::exp_seq::{exp_sequence_system, RecurrenceFit};
use super::fixed_r::nf_fixed_r_system;
use crate::automaton::Nfa;
use crate::control::ControlExpr;
use crate::error::{Error, Result};
use crate::group::{centralizer_generator, solve_conjugacy, Centralizer, GroupElement};
use crate::lsystem::{regular_to_edt0l, union_sys, Control, Et0lSystem};
use crate::normal_form::{nf_of, nf_recognizer, Decomposition};
use crate::zk::kpow;

const LETTERS: [&str; 4] = ["a", "A", "b", "B"];
/// Extra terms a fit must predict beyond the ones it was read from.
const VERIFY: u64 = 10;
/// Powers scanned for the start of a pattern.
const MAX_START: u64 = 40;
const MAX_PERIOD: u64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `g^n` for `n ≥ 0`.
    Pos,
    /// `g^{-n}` for `n ≥ 1`.
    Neg,
}

/// Words `head · body^j · tail` for `j ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub head: String,
    pub body: String,
    pub tail: String,
}

/// The normal forms of one direction of powers, times a fixed element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerFit {
    /// Exponents growing by `s ↦ k^r s + λ`, after finitely many words.
    Recurrence { finite: Vec<String>, fit: RecurrenceFit },
    /// An eventually periodic family, after finitely many words.
    Regular { finite: Vec<String>, loops: Vec<Loop> },
}

fn letters(w: &str) -> Vec<u32> {
    w.chars().map(|c| "aAbB".find(c).expect("normal-form letter") as u32).collect()
}

fn finite_nfa(words: &[String]) -> Nfa {
    words.iter().fold(Nfa::empty(4), |acc, w| acc.union(&Nfa::word(4, &letters(w))))
}

/// A system with the empty language.
pub fn empty_system(k: u32) -> Et0lSystem {
    let mut sys = Et0lSystem::new(Some(k), &[("a", true), ("A", true), ("b", true), ("B", true)]);
    sys.control = Control::Expr(ControlExpr::Empty);
    sys
}

impl PowerFit {
    pub fn to_system(&self, k: u32) -> Result<Et0lSystem> {
        match self {
            PowerFit::Recurrence { finite, fit } => {
                let tail = exp_sequence_system(fit, k)?;
                if finite.is_empty() {
                    Ok(tail)
                } else {
                    union_sys(&regular_to_edt0l(&finite_nfa(finite), &LETTERS)?, &tail)
                }
            }
            PowerFit::Regular { finite, loops } => {
                let mut nfa = finite_nfa(finite);
                for l in loops {
                    let part = Nfa::word(4, &letters(&l.head)).concat(&Nfa::word(4, &letters(&l.body)).star()).concat(&Nfa::word(4, &letters(&l.tail)));
                    nfa = nfa.union(&part);
                }
                regular_to_edt0l(&nfa, &LETTERS)
            }
        }
    }

    /// The word this fit predicts at offset `i` from its first term.
    pub fn predict(&self, k: u32, i: u64) -> Result<String> {
        match self {
            PowerFit::Recurrence { finite, fit } => match finite.get(i as usize) {
                Some(w) => Ok(w.clone()),
                None => fit.word(k, fit.n_start + i - finite.len() as u64),
            },
            PowerFit::Regular { finite, loops } => match finite.get(i as usize) {
                Some(w) => Ok(w.clone()),
                None => {
                    let j = i as usize - finite.len();
                    let l = &loops[j % loops.len()];
                    Ok(format!("{}{}{}", l.head, l.body.repeat(j / loops.len()), l.tail))
                }
            },
        }
    }
}

/// Fits `{NF(h^{n} x) : n ≥ start}` where `h` has nonzero b-exponent.
fn fit_family(h: &GroupElement, start: u64, x: &GroupElement) -> Result<PowerFit> {
    let term = |n: u64| h.pow(n as i64).mul(x);
    if h.r > 0 {
        fit_recurrence(h.k(), h.r as u32, start, &term)
    } else if h.r < 0 {
        fit_loops(start, &term)
    } else {
        Err(Error::FittingFailure("element lies in N".into()))
    }
}

fn fit_recurrence(k: u32, r: u32, start: u64, term: &dyn Fn(u64) -> GroupElement) -> Result<PowerFit> {
    let kr = kpow(k, r);
    let dec = |n: u64| Decomposition::of(&term(n));
    let s_of = |d: &Decomposition| BigInt::from(d.s.clone());
    'start: for n0 in start..start + MAX_START {
        let d0 = dec(n0);
        let d1 = dec(n0 + 1);
        let lambda = s_of(&d1) - &kr * s_of(&d0);
        let s0 = s_of(&d0);
        if (lambda.is_negative() && s0 <= lambda.abs()) || d0.t < 0 {
            continue;
        }
        let mut prev = d0.clone();
        for n in n0 + 1..=n0 + VERIFY {
            let d = dec(n);
            let ok = d.components == d0.components
                && d.alpha_sign == d0.alpha_sign
                && d.t == prev.t + r as i64
                && s_of(&d) == &kr * s_of(&prev) + &lambda
                && d.s > prev.s;
            if !ok {
                continue 'start;
            }
            prev = d;
        }
        let central: String = Decomposition { t: 0, s: BigUint::from(0u32), ..d0.clone() }.word();
        let fit = RecurrenceFit {
            r,
            c: d0.t - r as i64 * n0 as i64,
            n_start: n0,
            lambda,
            central_word: central,
            s_start: s0,
            alpha_sign: d0.alpha_sign,
        };
        let finite = (start..n0).map(|n| nf_of(&term(n))).collect();
        return Ok(PowerFit::Recurrence { finite, fit });
    }
    Err(Error::FittingFailure("no recurrence found".into()))
}

/// `A`, `D`, `B` with `xs[j] = A D^j B` for every `j`.
fn fit_loop(xs: &[String]) -> Option<Loop> {
    let (x0, x1) = (&xs[0], &xs[1]);
    let d = x1.len().checked_sub(x0.len())?;
    for cut in (0..=x0.len()).rev() {
        let (head, tail) = x0.split_at(cut);
        if !x1.starts_with(head) || !x1.ends_with(tail) {
            continue;
        }
        let body = &x1[cut..cut + d];
        if xs.iter().enumerate().all(|(j, x)| *x == format!("{head}{}{tail}", body.repeat(j))) {
            return Some(Loop { head: head.into(), body: body.into(), tail: tail.into() });
        }
    }
    None
}

fn fit_loops(start: u64, term: &dyn Fn(u64) -> GroupElement) -> Result<PowerFit> {
    let reps = 3 + 3;
    let limit = start + MAX_START + MAX_PERIOD * reps;
    let words: Vec<String> = (start..limit).map(|n| nf_of(&term(n))).collect();
    for n0 in 0..MAX_START as usize {
        'period: for p in 1..=MAX_PERIOD as usize {
            let mut loops = Vec::new();
            for i in 0..p {
                let xs: Vec<String> = (0..reps as usize).map(|j| words[n0 + i + j * p].clone()).collect();
                match fit_loop(&xs) {
                    Some(l) => loops.push(l),
                    None => continue 'period,
                }
            }
            return Ok(PowerFit::Regular { finite: words[..n0].to_vec(), loops });
        }
    }
    Err(Error::FittingFailure("no eventually periodic pattern found".into()))
}

/// Fits one direction of the powers of `g_prime`, which must lie outside `N`.
pub fn fit_power_recurrence(g_prime: &GroupElement, direction: Direction) -> Result<PowerFit> {
    fit_coset_direction(g_prime, direction, &GroupElement::identity(g_prime.k()))
}

fn fit_coset_direction(g: &GroupElement, direction: Direction, x: &GroupElement) -> Result<PowerFit> {
    if g.r == 0 {
        return Err(Error::FittingFailure("element lies in N".into()));
    }
    let (h, start) = match direction {
        Direction::Pos => (g.clone(), 0),
        Direction::Neg => (g.inv(), 1),
    };
    let fit = fit_family(&h, start, x)?;
    let extra = match &fit {
        PowerFit::Recurrence { finite, .. } | PowerFit::Regular { finite, .. } => finite.len() as u64 + 2 * VERIFY,
    };
    for i in 0..extra {
        let want = h.pow((start + i) as i64).mul(x);
        if nf_len_small(&want).is_none() {
            break;
        }
        if fit.predict(g.k(), i)? != nf_of(&want) {
            return Err(Error::FittingFailure(format!("prediction fails at offset {i}")));
        }
    }
    Ok(fit)
}

fn nf_len_small(g: &GroupElement) -> Option<usize> {
    crate::normal_form::nf_len(g).to_usize().filter(|&l| l <= 1 << 16)
}

/// The fitted parts of `C(g)`: nothing for the whole group or `N`, two
/// directions of powers of the generator otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerPlan {
    pub kind: Centralizer,
    pub parts: Vec<PowerFit>,
}

pub fn centralizer_plan(g: &GroupElement) -> Result<CentralizerPlan> {
    coset_plan(g, &GroupElement::identity(g.k()))
}

fn coset_plan(g: &GroupElement, x: &GroupElement) -> Result<CentralizerPlan> {
    let kind = centralizer_generator(g);
    let parts = match &kind {
        Centralizer::Cyclic(gp) => vec![fit_coset_direction(gp, Direction::Pos, x)?, fit_coset_direction(gp, Direction::Neg, x)?],
        _ => Vec::new(),
    };
    Ok(CentralizerPlan { kind, parts })
}

fn plan_system(k: u32, plan: &CentralizerPlan, x: &GroupElement) -> Result<Et0lSystem> {
    match plan.kind {
        Centralizer::Whole if x.is_identity() => regular_to_edt0l(&nf_recognizer(k), &LETTERS),
        Centralizer::Whole => Ok(empty_system(k)),
        Centralizer::SubgroupN => nf_fixed_r_system(k, x.r),
        Centralizer::Cyclic(_) => {
            let a = plan.parts[0].to_system(k)?;
            let b = plan.parts[1].to_system(k)?;
            union_sys(&a, &b)
        }
    }
}

/// `{w ∈ NF : wg = gw}`.
pub fn centralizer_system(k: u32, g: &GroupElement) -> Result<Et0lSystem> {
    plan_system(k, &centralizer_plan(g)?, &GroupElement::identity(k))
}

/// `{w ∈ NF : wh = gw}`, which is empty or the coset `C(g)·x₀`.
pub fn conjugator_system(k: u32, g: &GroupElement, h: &GroupElement) -> Result<Et0lSystem> {
    if g.is_identity() {
        return if h.is_identity() { regular_to_edt0l(&nf_recognizer(k), &LETTERS) } else { Ok(empty_system(k)) };
    }
    match solve_conjugacy(g, h) {
        None => Ok(empty_system(k)),
        Some(x0) => plan_system(k, &coset_plan(g, &x0)?, &x0),
    }
}
