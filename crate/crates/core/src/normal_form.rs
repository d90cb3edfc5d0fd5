//! The two normal forms of BS(1,k).
//!
//! The word normal form is `b^t α^{i_m} B … α^{i_1} B α^s` with a single
//! `α ∈ {a, A}`; when `t < 0` the prefix is `B^{|t|}` instead. The fractional
//! form is `β^{|r|} ± i_m…i_1 . s_0…s_p`, the base-k digits of `u` written
//! backwards around a radix point.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::zk::{digits_le, DigitSign, Split, ZkRational};

/// Left, central and right subwords of a normal-form word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub t: i64,
    /// `i_m, …, i_1` in word order.
    pub components: Vec<u32>,
    pub s: BigUint,
    pub alpha_sign: DigitSign,
}

impl Decomposition {
    pub fn of(g: &GroupElement) -> Self {
        let Split { frac_digits, int_part, sign } = g.u.split();
        Decomposition { t: g.t(), components: frac_digits, s: int_part, alpha_sign: sign }
    }

    pub fn element(&self, k: u32) -> GroupElement {
        let split = Split {
            frac_digits: self.components.clone(),
            int_part: self.s.clone(),
            sign: self.alpha_sign,
        };
        let u = ZkRational::from_split(k, &split);
        GroupElement::new(self.t - self.components.len() as i64, u)
    }

    pub fn word(&self) -> String {
        let alpha = if self.alpha_sign == DigitSign::Neg { 'A' } else { 'a' };
        let beta = if self.t >= 0 { 'b' } else { 'B' };
        let s = self.s.to_usize().expect("right subword too long to materialise");
        let mut w = String::new();
        w.extend(std::iter::repeat_n(beta, self.t.unsigned_abs() as usize));
        for &i in &self.components {
            w.extend(std::iter::repeat_n(alpha, i as usize));
            w.push('B');
        }
        w.extend(std::iter::repeat_n(alpha, s));
        w
    }

    /// Length of [`Decomposition::word`] without building it.
    pub fn word_len(&self) -> BigUint {
        let central: u64 = self.components.iter().map(|&i| i as u64 + 1).sum();
        BigUint::from(self.t.unsigned_abs() + central) + &self.s
    }
}

/// The normal-form word of `g`.
pub fn nf_of(g: &GroupElement) -> String {
    Decomposition::of(g).word()
}

/// Length of the normal form of `g`.
pub fn nf_len(g: &GroupElement) -> BigUint {
    Decomposition::of(g).word_len()
}

fn nf_err(pos: usize, reason: &str) -> Error {
    Error::MalformedNf { pos, reason: reason.to_string() }
}

/// Split a word into its subwords, rejecting anything outside the normal-form shape.
pub fn decompose(k: u32, w: &str) -> Result<Decomposition> {
    let letters: Vec<char> = w.chars().collect();
    for (pos, &ch) in letters.iter().enumerate() {
        if !matches!(ch, 'a' | 'A' | 'b' | 'B') {
            return Err(Error::InvalidLetter { pos, ch });
        }
    }
    let mut pos = 0;
    let lead = letters.first().copied();
    while pos < letters.len() && Some(letters[pos]) == lead && matches!(lead, Some('b' | 'B')) {
        pos += 1;
    }
    let t = match lead {
        Some('b') => pos as i64,
        Some('B') => -(pos as i64),
        _ => 0,
    };
    let mut alpha: Option<char> = None;
    let mut components = Vec::new();
    let mut run = 0u64;
    let mut run_start = pos;
    for (off, &ch) in letters[pos..].iter().enumerate() {
        let at = pos + off;
        match ch {
            'a' | 'A' => {
                if alpha.is_some_and(|x| x != ch) {
                    return Err(nf_err(at, "mixed a and A"));
                }
                alpha = Some(ch);
                run += 1;
            }
            'B' => {
                if components.is_empty() && run == 0 {
                    return Err(nf_err(at, "first component is empty (i_m = 0)"));
                }
                if run >= k as u64 {
                    return Err(nf_err(run_start, "component exponent is not below k"));
                }
                components.push(run as u32);
                run = 0;
                run_start = at + 1;
            }
            _ => return Err(nf_err(at, "b may only occur in the left subword")),
        }
    }
    let alpha_sign = if alpha == Some('A') { DigitSign::Neg } else { DigitSign::Pos };
    Ok(Decomposition { t, components, s: BigUint::from(run), alpha_sign })
}

/// Parse a normal-form word.
pub fn parse_nf(k: u32, w: &str) -> Result<GroupElement> {
    decompose(k, w).map(|d| d.element(k))
}

pub fn is_nf(k: u32, w: &str) -> bool {
    decompose(k, w).is_ok()
}

/// Letter order used by [`nf_recognizer`].
pub const NF_LETTERS: [&str; 4] = ["a", "A", "b", "B"];

/// An automaton over `a A b B` (symbols 0..4) accepting exactly the
/// normal-form words.
pub fn nf_recognizer(k: u32) -> Nfa {
    let k = k as usize;
    let (a, b, bb) = (0u32, 2u32, 3u32);
    // 0 start, 1 in b^t, 2 in B^|t|, then per α: first run (counts 1..k-1,
    // then "k or more"), later runs (counts 0..k-1, then "k or more").
    let mut d = Dfa { alphabet: 4, start: 0, accepting: vec![true; 3], trans: vec![vec![None; 4]; 3] };
    let block = k + 1 + k + 1;
    d.trans.resize(3 + 2 * block, vec![None; 4]);
    d.accepting.resize(3 + 2 * block, true);
    d.trans[0][b as usize] = Some(1);
    d.trans[0][bb as usize] = Some(2);
    d.trans[1][b as usize] = Some(1);
    d.trans[2][bb as usize] = Some(2);
    for sign in 0..2usize {
        let base = 3 + sign * block;
        let first = |c: usize| base + c.min(k) - 1;
        let later = |c: usize| base + k + c.min(k);
        let x = a as usize + sign;
        for q in 0..3 {
            d.trans[q][x] = Some(first(1));
        }
        for c in 1..=k {
            d.trans[first(c)][x] = Some(first(c + 1));
            if c < k {
                d.trans[first(c)][bb as usize] = Some(later(0));
            }
        }
        for c in 0..=k {
            d.trans[later(c)][x] = Some(later(c + 1));
            if c < k {
                d.trans[later(c)][bb as usize] = Some(later(0));
            }
        }
    }
    d.to_nfa()
}

/// One symbol of a fractional-form word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FracSym {
    B,
    BInv,
    Plus,
    Minus,
    Point,
    Digit(u32),
}

/// A fractional-form word, kept symbolically so any base is representable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FracWord(pub Vec<FracSym>);

impl FracWord {
    /// ASCII rendering; digits above 9 have no ASCII form.
    pub fn to_ascii(&self) -> Result<String> {
        self.0
            .iter()
            .map(|s| match *s {
                FracSym::B => Ok('b'),
                FracSym::BInv => Ok('B'),
                FracSym::Plus => Ok('+'),
                FracSym::Minus => Ok('-'),
                FracSym::Point => Ok('.'),
                FracSym::Digit(d) => char::from_digit(d, 10)
                    .ok_or_else(|| Error::InvalidParameter(format!("digit {d} has no ASCII form"))),
            })
            .collect()
    }
}

impl fmt::Display for FracWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_ascii() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{:?}", self.0),
        }
    }
}

/// The fractional form of `g`.
pub fn frac_word(g: &GroupElement) -> FracWord {
    let Split { frac_digits, int_part, sign } = g.u.split();
    let beta = if g.r >= 0 { FracSym::B } else { FracSym::BInv };
    let mut v = vec![beta; g.r.unsigned_abs() as usize];
    v.push(if sign == DigitSign::Neg { FracSym::Minus } else { FracSym::Plus });
    v.extend(frac_digits.iter().map(|&d| FracSym::Digit(d)));
    v.push(FracSym::Point);
    v.extend(digits_le(g.k(), &int_part).into_iter().map(FracSym::Digit));
    FracWord(v)
}

/// ASCII fractional form of `g` (requires `k <= 10`).
pub fn frac_of(g: &GroupElement) -> String {
    frac_word(g).to_ascii().expect("ASCII fractional form needs k <= 10")
}

fn frac_err(pos: usize, reason: &str) -> Error {
    Error::MalformedFrac { pos, reason: reason.to_string() }
}

/// Parse an ASCII fractional-form word.
pub fn parse_frac(k: u32, w: &str) -> Result<GroupElement> {
    let chars: Vec<char> = w.chars().collect();
    let mut syms = Vec::with_capacity(chars.len());
    for (pos, &ch) in chars.iter().enumerate() {
        syms.push(match ch {
            'b' => FracSym::B,
            'B' => FracSym::BInv,
            '+' => FracSym::Plus,
            '-' => FracSym::Minus,
            '.' => FracSym::Point,
            c if c.is_ascii_digit() => {
                let d = c.to_digit(10).unwrap();
                if d >= k {
                    return Err(frac_err(pos, "digit out of range for k"));
                }
                FracSym::Digit(d)
            }
            _ => return Err(Error::InvalidLetter { pos, ch }),
        });
    }
    parse_frac_word(k, &FracWord(syms))
}

/// Parse a symbolic fractional-form word.
pub fn parse_frac_word(k: u32, w: &FracWord) -> Result<GroupElement> {
    let s = &w.0;
    let mut pos = 0;
    let beta = s.first().copied().filter(|x| matches!(x, FracSym::B | FracSym::BInv));
    while pos < s.len() && Some(s[pos]) == beta {
        pos += 1;
    }
    let r = if beta == Some(FracSym::BInv) { -(pos as i64) } else { pos as i64 };
    let sign = match s.get(pos) {
        Some(FracSym::Plus) => DigitSign::Pos,
        Some(FracSym::Minus) => DigitSign::Neg,
        _ => return Err(frac_err(pos, "expected sign")),
    };
    pos += 1;
    let mut frac_digits = Vec::new();
    while let Some(FracSym::Digit(d)) = s.get(pos) {
        if *d >= k {
            return Err(frac_err(pos, "digit out of range for k"));
        }
        if frac_digits.is_empty() && *d == 0 {
            return Err(frac_err(pos, "leading fractional digit is zero"));
        }
        frac_digits.push(*d);
        pos += 1;
    }
    if s.get(pos) != Some(&FracSym::Point) {
        return Err(frac_err(pos, "expected radix point"));
    }
    pos += 1;
    let start = pos;
    let mut int_part = BigUint::zero();
    let mut place = BigUint::from(1u32);
    while let Some(FracSym::Digit(d)) = s.get(pos) {
        if *d >= k {
            return Err(frac_err(pos, "digit out of range for k"));
        }
        int_part += &place * *d;
        place *= k;
        pos += 1;
    }
    if pos < s.len() {
        return Err(frac_err(pos, "unexpected symbol after integral digits"));
    }
    if pos > start && s[pos - 1] == FracSym::Digit(0) {
        return Err(frac_err(pos - 1, "trailing integral digit is zero"));
    }
    if sign == DigitSign::Neg && frac_digits.is_empty() && int_part.is_zero() {
        return Err(frac_err(0, "zero must carry '+'"));
    }
    let u = ZkRational::from_split(k, &Split { frac_digits, int_part, sign });
    Ok(GroupElement::new(r, u))
}

pub fn is_frac(k: u32, w: &str) -> bool {
    parse_frac(k, w).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::eval_word;

    fn el(k: u32, s: &str) -> GroupElement {
        GroupElement::parse(k, s).unwrap()
    }

    #[test]
    fn nf_examples() {
        assert_eq!(nf_of(&el(3, "(-1,49/9)")), "baBaBaaaaa");
        assert_eq!(nf_of(&GroupElement::identity(3)), "");
        assert_eq!(nf_of(&el(3, "(0,377/27)")), "bbbaaBaaBaaBaaaaaaaaaaaaa");
        assert_eq!(parse_nf(3, "baBaBaaaaa").unwrap(), el(3, "(-1,49/9)"));
        assert!(parse_nf(3, "").unwrap().is_identity());
        assert!(matches!(parse_nf(3, "ab"), Err(Error::MalformedNf { pos: 1, .. })));
    }

    #[test]
    fn frac_examples() {
        assert_eq!(frac_of(&el(3, "(-1,49/9)")), "B+11.21");
        assert_eq!(frac_of(&el(3, "(4,0)")), "bbbb+.");
        assert_eq!(frac_of(&el(3, "(0,-64/27)")), "-101.2");
        assert_eq!(parse_frac(3, "B+200.01").unwrap(), el(3, "(-1,83/27)"));
        assert!(parse_frac(3, "+.").unwrap().is_identity());
        assert!(matches!(parse_frac(3, "+1.3"), Err(Error::MalformedFrac { .. })));
        assert!(parse_frac(3, "+1.20").is_err());
        assert!(parse_frac(3, "+01.2").is_err());
        assert!(parse_frac(3, "-.").is_err());
        assert!(parse_frac(3, "bB+.").is_err());
    }

    #[test]
    fn recognizer_examples() {
        assert!(is_nf(3, "baB"));
        assert!(!is_nf(3, "bB"));
        assert!(is_nf(3, "Ba"));
        assert!(!is_nf(3, "aaaB"));
        assert!(!is_nf(3, "aBAB"));
    }

    #[test]
    fn recognizer_agrees_with_parser() {
        for k in [2, 3] {
            let rec = nf_recognizer(k);
            let mut words = vec![String::new()];
            for _ in 0..7 {
                words = words.iter().flat_map(|w| NF_LETTERS.iter().map(move |l| format!("{w}{l}"))).collect();
                for w in &words {
                    let syms: Vec<u32> = w.chars().map(|c| "aAbB".find(c).unwrap() as u32).collect();
                    let canonical = nf_of(&eval_word(k, w).unwrap()) == *w;
                    assert_eq!(rec.accepts(&syms), canonical, "k={k} w={w}");
                    assert_eq!(is_nf(k, w), canonical, "k={k} w={w}");
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(3, "bbaaBBBaaa").unwrap();
        assert_eq!((d.t, d.components.clone(), d.s.clone()), (2, vec![2, 0, 0], BigUint::from(3u32)));
        assert_eq!(d.alpha_sign, DigitSign::Pos);
        let d = decompose(3, "bbbb").unwrap();
        assert_eq!((d.t, d.components.len(), d.s.is_zero()), (4, 0, true));
        let d = decompose(3, "AABAABAAA").unwrap();
        assert_eq!((d.t, d.components.clone(), d.alpha_sign), (0, vec![2, 2], DigitSign::Neg));
        assert_eq!(d.element(3), el(3, "(-2,-35/9)"));
        assert_eq!(eval_word(3, "AABAABAAA").unwrap(), el(3, "(-2,-35/9)"));
    }

    #[test]
    fn nf_evaluates_to_element() {
        for s in ["(-1,49/9)", "(0,-64/27)", "(-3,5/27)", "(2,-1/9)", "(-2,0)"] {
            let g = el(3, s);
            assert_eq!(eval_word(3, &nf_of(&g)).unwrap(), g);
            assert_eq!(nf_len(&g), BigUint::from(nf_of(&g).len()));
        }
    }
}
