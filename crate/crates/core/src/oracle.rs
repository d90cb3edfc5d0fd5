//! Ground truth computed from group arithmetic alone. Nothing here touches
//! the rewriting engine, so agreement with an enumerated system is evidence
//! about the system.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::constructions::{SignCase, Sgn, Variant};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::lsystem::{EnumerationResult, Grammar};
use crate::normal_form::{frac_of, nf_len, nf_of, Decomposition};
use crate::zk::{check_base, DigitSign, Split, ZkRational};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "BS_EDT0L_CACHE_DIR";
const CACHE_VERSION: u32 = 1;

/// Orders words by length, then lexicographically.
pub fn shortlex(a: &str, b: &str) -> std::cmp::Ordering {
    a.chars().count().cmp(&b.chars().count()).then_with(|| a.cmp(b))
}

/// Every normal-form word of length at most `max_len` with its element,
/// built from the shape `b^t α^{i_m}B…α^{i_1}B α^s` rather than by filtering.
pub fn enum_nf_words(k: u32, max_len: usize) -> Result<Vec<(String, GroupElement)>> {
    check_base(k)?;
    let mut out = Vec::new();
    let mut comps = Vec::new();
    let l = max_len as i64;
    for t in -l..=l {
        let budget = max_len - t.unsigned_abs() as usize;
        for sign in [DigitSign::Pos, DigitSign::Neg] {
            nf_shapes(k, t, sign, &mut comps, budget, &mut out);
        }
    }
    out.sort_by(|a, b| shortlex(&a.0, &b.0));
    Ok(out)
}

fn nf_shapes(k: u32, t: i64, sign: DigitSign, comps: &mut Vec<u32>, budget: usize, out: &mut Vec<(String, GroupElement)>) {
    for s in 0..=budget {
        if sign == DigitSign::Neg && comps.is_empty() && s == 0 {
            continue;
        }
        let d = Decomposition { t, components: comps.clone(), s: BigUint::from(s), alpha_sign: sign };
        out.push((d.word(), d.element(k)));
    }
    let lo = if comps.is_empty() { 1 } else { 0 };
    for i in lo..k {
        let cost = i as usize + 1;
        if cost <= budget {
            comps.push(i);
            nf_shapes(k, t, sign, comps, budget - cost, out);
            comps.pop();
        }
    }
}

fn filter_nf(k: u32, max_len: usize, keep: impl Fn(&GroupElement) -> bool) -> Result<BTreeSet<String>> {
    Ok(enum_nf_words(k, max_len)?.into_iter().filter(|(_, g)| keep(g)).map(|(w, _)| w).collect())
}

/// Normal forms with b-exponent `r`.
pub fn oracle_nf_fixed_r(k: u32, r: i64, max_len: usize) -> Result<BTreeSet<String>> {
    filter_nf(k, max_len, |g| g.r == r)
}

/// Normal forms of the elements commuting with `g`.
pub fn oracle_centralizer(g: &GroupElement, max_len: usize) -> Result<BTreeSet<String>> {
    filter_nf(g.k(), max_len, |w| w.mul(g) == g.mul(w))
}

/// Normal forms of the `w` with `wh = gw`.
pub fn oracle_conjugators(g: &GroupElement, h: &GroupElement, max_len: usize) -> Result<BTreeSet<String>> {
    filter_nf(g.k(), max_len, |w| w.mul(h) == g.mul(w))
}

/// Words `a#u#v` with `u = b^t α^s` (`t, s ≥ 0`), `v = NF(au)`, of total
/// length at most `max_len`.
pub fn oracle_left_mult_a(k: u32, max_len: usize) -> Result<BTreeSet<String>> {
    check_base(k)?;
    let mut out = BTreeSet::new();
    if max_len < 3 {
        return Ok(out);
    }
    let room = max_len - 3;
    let a = GroupElement::a(k);
    for t in 0..=room {
        for s in 0..=room - t {
            for alpha in ['a', 'A'] {
                if alpha == 'A' && s == 0 {
                    continue;
                }
                let n = if alpha == 'A' { -(s as i64) } else { s as i64 };
                let u = GroupElement::new(t as i64, ZkRational::from_int(k, n));
                let v = a.mul(&u);
                if nf_len(&v) > BigUint::from(room - t - s) {
                    continue;
                }
                out.insert(format!("a#{}#{}", nf_of(&u), nf_of(&v)));
            }
        }
    }
    Ok(out)
}

fn nf_triples(k: u32, max_len: usize, variant: Variant, case: Option<&SignCase>) -> Result<BTreeSet<String>> {
    let words = enum_nf_words(k, max_len)?;
    let index: HashMap<&GroupElement, &str> = words.iter().map(|(w, g)| (g, w.as_str())).collect();
    let mut out = BTreeSet::new();
    for (xw, x) in &words {
        for (yw, y) in &words {
            if case.is_some_and(|c| SignCase::classify(variant, x, y) != *c) {
                continue;
            }
            let p = x.mul(y);
            let z = if variant == Variant::Inv { p.inv() } else { p };
            if let Some(zw) = index.get(&z) {
                out.insert(format!("{xw}#{yw}#{zw}"));
            }
        }
    }
    Ok(out)
}

/// Words `x#y#z` of normal forms with `xy = z`, each factor of length at
/// most `max_len`, optionally restricted to one sign case.
pub fn oracle_mult_triples(k: u32, max_len: usize, case: Option<&SignCase>) -> Result<BTreeSet<String>> {
    nf_triples(k, max_len, Variant::Mult, case)
}

/// As [`oracle_mult_triples`] for `xy = z⁻¹`.
pub fn oracle_inv_triples(k: u32, max_len: usize, case: Option<&SignCase>) -> Result<BTreeSet<String>> {
    nf_triples(k, max_len, Variant::Inv, case)
}

/// Elements with `|r| ≤ max_abs_r` whose fractional form has at most
/// `max_digits` digits.
pub fn enum_frac_elements(k: u32, max_abs_r: i64, max_digits: usize) -> Result<Vec<GroupElement>> {
    check_base(k)?;
    let mut us = Vec::new();
    for nf in 0..=max_digits {
        let mut fracs = Vec::new();
        digit_strings(k, nf, |d| d.first().is_none_or(|&x| x != 0), &mut fracs);
        for ni in 0..=max_digits - nf {
            let mut ints = Vec::new();
            digit_strings(k, ni, |d| d.last().is_none_or(|&x| x != 0), &mut ints);
            for f in &fracs {
                for i in &ints {
                    let int_part = i.iter().rev().fold(BigUint::from(0u32), |acc, &d| acc * k + d);
                    for sign in [DigitSign::Pos, DigitSign::Neg] {
                        if sign == DigitSign::Neg && nf + ni == 0 {
                            continue;
                        }
                        let split = Split { frac_digits: f.clone(), int_part: int_part.clone(), sign };
                        us.push(ZkRational::from_split(k, &split));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for r in -max_abs_r..=max_abs_r {
        out.extend(us.iter().map(|u| GroupElement::new(r, u.clone())));
    }
    Ok(out)
}

fn digit_strings(k: u32, n: usize, keep: impl Fn(&[u32]) -> bool, out: &mut Vec<Vec<u32>>) {
    let mut cur = vec![0u32; n];
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// The bounded element set behind the fractional-form triple oracles, with
/// each element scaled to an integer numerator for fast arithmetic.
pub struct FracUniverse {
    k: u32,
    elems: Vec<(i64, i128)>,
    words: Vec<String>,
    index: HashMap<(i64, i128), u32>,
}

impl FracUniverse {
    pub fn new(k: u32, max_abs_r: i64, max_digits: usize) -> Result<Self> {
        let els = enum_frac_elements(k, max_abs_r, max_digits)?;
        let scale = (max_digits as u32) + 2 * max_abs_r as u32 + 1;
        let kk = (k as i128).pow(scale);
        let mut elems = Vec::with_capacity(els.len());
        let mut words = Vec::with_capacity(els.len());
        let mut index = HashMap::new();
        for g in &els {
            let num = g.u.num().to_i128().ok_or_else(|| Error::InvalidParameter("frac bound too large".into()))?;
            let n = num * kk / (k as i128).pow(g.u.exp());
            index.insert((g.r, n), elems.len() as u32);
            elems.push((g.r, n));
            words.push(frac_of(g));
        }
        Ok(FracUniverse { k, elems, words, index })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `n · k^e` when it stays an integer at this scale.
    fn shift(&self, n: i128, e: i64) -> Option<i128> {
        let k = self.k as i128;
        if e >= 0 {
            Some(n * k.pow(e as u32))
        } else {
            let d = k.pow((-e) as u32);
            (n % d == 0).then(|| n / d)
        }
    }

    /// Call `f(x, y, z)` with the indices of every triple of the variant
    /// inside the universe, optionally for one case.
    fn each_triple(&self, variant: Variant, case: Option<&SignCase>, mut f: impl FnMut(usize, usize, usize)) {
        let sg = |n: i128| if n < 0 { Sgn::Neg } else { Sgn::Pos };
        let sr = Sgn::of_int;
        for (xi, &(rx, nx)) in self.elems.iter().enumerate() {
            if case.is_some_and(|c| c.rx != sr(rx) || c.ux != sg(nx)) {
                continue;
            }
            for (yi, &(ry, ny)) in self.elems.iter().enumerate() {
                if case.is_some_and(|c| c.ry != sr(ry) || c.uy != sg(ny)) {
                    continue;
                }
                let Some(sx) = self.shift(nx, ry) else { continue };
                let np = sx + ny;
                let rp = rx + ry;
                if let Some(c) = case {
                    let rxy = (variant == Variant::Inv && sr(rx) != sr(ry)).then(|| sr(rp));
                    if c.uz != sg(np) || c.rxy != rxy {
                        continue;
                    }
                }
                let key = match variant {
                    Variant::Mult => Some((rp, np)),
                    Variant::Inv => self.shift(-np, -rp).map(|n| (-rp, n)),
                };
                if let Some(&zi) = key.and_then(|k| self.index.get(&k)) {
                    f(xi, yi, zi as usize);
                }
            }
        }
    }

    /// Words `x̂#ŷ#ẑ` of the variant inside the universe, optionally for one case.
    pub fn triples(&self, variant: Variant, case: Option<&SignCase>) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.each_triple(variant, case, |x, y, z| {
            out.insert(format!("{}#{}#{}", self.words[x], self.words[y], self.words[z]));
        });
        out
    }

    /// How many triples [`FracUniverse::triples`] would return.
    pub fn count(&self, variant: Variant, case: Option<&SignCase>) -> usize {
        let mut n = 0;
        self.each_triple(variant, case, |_, _, _| n += 1);
        n
    }
}

/// Fractional-form triples with every factor inside the bounds.
pub fn oracle_frac_triples(k: u32, variant: Variant, max_abs_r: i64, max_digits: usize, case: Option<&SignCase>) -> Result<BTreeSet<String>> {
    Ok(FracUniverse::new(k, max_abs_r, max_digits)?.triples(variant, case))
}

/// `b^r a # NF((b^r a)^n)` for `0 ≤ r ≤ r_max`, `0 ≤ n ≤ n_max`, written
/// from the closed form `b^{rn} a^{(k^{rn}-1)/(k^r-1)}`; at `r = 0` the
/// exponent is read as `n`.
pub fn conjecture_set(k: u32, r_max: u32, n_max: u32) -> Result<BTreeSet<String>> {
    check_base(k)?;
    let mut out = BTreeSet::new();
    for r in 0..=r_max {
        for n in 0..=n_max {
            let e = if r == 0 {
                BigUint::from(n)
            } else {
                (BigUint::from(k).pow(r * n) - 1u32) / (BigUint::from(k).pow(r) - 1u32)
            };
            let e = e.to_usize().ok_or_else(|| Error::InvalidParameter("power too large".into()))?;
            let mut w = "b".repeat(r as usize);
            w.push_str("a#");
            w.push_str(&"b".repeat((r * n) as usize));
            w.push_str(&"a".repeat(e));
            out.insert(w);
        }
    }
    Ok(out)
}

/// Roots `h` with `h^m = g` for `2 ≤ m ≤ max_m`.
pub fn proper_roots(g: &GroupElement, max_m: i64) -> Vec<(i64, GroupElement)> {
    let k = g.k();
    let mut out = Vec::new();
    for m in 2..=max_m {
        if g.r % m != 0 {
            continue;
        }
        let r = g.r / m;
        // h^m = (rm, u_h · (k^{rm} - 1)/(k^r - 1)), or (0, m u_h) when r = 0.
        let factor = if r == 0 {
            ZkRational::from_int(k, m)
        } else {
            let one = ZkRational::from_int(k, 1);
            let num = one.shift(r * m).sub(&one);
            let den = one.shift(r).sub(&one);
            match zk_quotient(&num, &den) {
                Some(f) => f,
                None => continue,
            }
        };
        if let Some(u) = zk_quotient(&g.u, &factor) {
            let h = GroupElement::new(r, u);
            if h.pow(m) == *g {
                out.push((m, h));
            }
        }
    }
    out
}

fn zk_quotient(x: &ZkRational, y: &ZkRational) -> Option<ZkRational> {
    if y.is_zero() {
        return None;
    }
    let k = x.k();
    let num = x.num() * crate::zk::kpow(k, y.exp());
    let den = y.num() * crate::zk::kpow(k, x.exp());
    ZkRational::from_ratio(k, num, den)
}

/// Words of length at most `max_len` derivable in `g`, computed as a least
/// fixpoint of bounded word sets per variable.
pub fn cfg_words(g: &Grammar, max_len: usize) -> BTreeSet<String> {
    let vars = g.variables();
    let mut sets: HashMap<String, BTreeSet<String>> = vars.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
    let expand = |rhs: &[String], sets: &HashMap<String, BTreeSet<String>>| -> BTreeSet<String> {
        let mut acc: BTreeSet<String> = [String::new()].into();
        for sym in rhs {
            let opts: BTreeSet<String> = match sets.get(sym) {
                Some(s) => s.clone(),
                None => [sym.clone()].into(),
            };
            acc = acc
                .iter()
                .flat_map(|a| opts.iter().map(move |o| format!("{a}{o}")))
                .filter(|w| w.chars().count() <= max_len)
                .collect();
        }
        acc
    };
    loop {
        let mut changed = false;
        for (head, rhs) in &g.productions {
            let new = expand(rhs, &sets);
            let set = sets.get_mut(head).expect("head is a variable");
            for w in new {
                changed |= set.insert(w);
            }
        }
        if !changed {
            break;
        }
    }
    expand(&g.start, &sets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Mismatch,
    /// Words are missing but the enumeration was cut, so nothing is proved.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    pub bounds: String,
    pub exhaustive: bool,
    pub verdict: Verdict,
}

impl DiffReport {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    pub fn summary(&self) -> String {
        let v = match self.verdict {
            Verdict::Equal => "equal",
            Verdict::Mismatch => "mismatch",
            Verdict::Inconclusive => "inconclusive",
        };
        let mut s = format!("{v}: {} missing, {} extra ({}, exhaustive={})", self.missing.len(), self.extra.len(), self.bounds, self.exhaustive);
        for w in self.missing.iter().take(5) {
            s.push_str(&format!("\n  missing {w}"));
        }
        for w in self.extra.iter().take(5) {
            s.push_str(&format!("\n  extra   {w}"));
        }
        s
    }
}

/// Compare an enumeration with an oracle set over the same bounds.
pub fn diff(found: &EnumerationResult, oracle: &BTreeSet<String>) -> DiffReport {
    let b = found.bounds;
    let bounds = format!("max_word_len={} depth={} slack={}", b.max_word_len, b.max_control_depth, b.slack);
    diff_sets(&found.word_set(), found.exhaustive_up_to_len, oracle, bounds)
}

/// [`diff`] for a word set obtained some other way.
pub fn diff_sets(found: &BTreeSet<String>, exhaustive: bool, oracle: &BTreeSet<String>, bounds: String) -> DiffReport {
    let mut missing: Vec<String> = oracle.difference(found).cloned().collect();
    let mut extra: Vec<String> = found.difference(oracle).cloned().collect();
    missing.sort_by(|a, b| shortlex(a, b));
    extra.sort_by(|a, b| shortlex(a, b));
    let verdict = if !extra.is_empty() {
        Verdict::Mismatch
    } else if missing.is_empty() {
        Verdict::Equal
    } else if exhaustive {
        Verdict::Mismatch
    } else {
        Verdict::Inconclusive
    };
    DiffReport { missing, extra, bounds, exhaustive, verdict }
}

/// Oracle sets stored one word per line under a header naming `k`, the
/// language and the bounds.
pub struct OracleCache {
    dir: PathBuf,
}

impl OracleCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        OracleCache { dir: dir.into() }
    }

    /// The directory named by [`CACHE_ENV`], else `default`.
    pub fn from_env(default: impl Into<PathBuf>) -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) => OracleCache::new(d),
            None => OracleCache::new(default),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn header(k: u32, id: &str, bounds: &str) -> String {
        format!("# bs-edt0l oracle v{CACHE_VERSION} k={k} language={id} bounds={bounds}")
    }

    fn path(&self, k: u32, id: &str, bounds: &str) -> PathBuf {
        let key: String = format!("k{k}-{id}-{bounds}")
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
            .collect();
        self.dir.join(format!("{key}.txt"))
    }

    pub fn load(&self, k: u32, id: &str, bounds: &str) -> Option<BTreeSet<String>> {
        let text = fs::read_to_string(self.path(k, id, bounds)).ok()?;
        let mut lines = text.lines();
        if lines.next()? != Self::header(k, id, bounds) {
            return None;
        }
        Some(lines.map(String::from).collect())
    }

    pub fn store(&self, k: u32, id: &str, bounds: &str, words: &BTreeSet<String>) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut f = fs::File::create(self.path(k, id, bounds))?;
        writeln!(f, "{}", Self::header(k, id, bounds))?;
        for w in words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }

    pub fn get_or_compute(&self, k: u32, id: &str, bounds: &str, compute: impl FnOnce() -> Result<BTreeSet<String>>) -> Result<BTreeSet<String>> {
        if let Some(s) = self.load(k, id, bounds) {
            return Ok(s);
        }
        let s = compute()?;
        self.store(k, id, bounds, &s)?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::{is_nf, parse_frac, parse_nf};

    fn el(k: u32, r: i64, n: i64) -> GroupElement {
        GroupElement::new(r, ZkRational::from_int(k, n))
    }

    #[test]
    fn small_nf_enumeration() {
        let w = enum_nf_words(2, 2).unwrap();
        let names: Vec<&str> = w.iter().map(|(s, _)| s.as_str()).collect();
        for must in ["", "a", "b", "Ba"] {
            assert!(names.contains(&must), "{must}");
        }
        assert!(!names.contains(&"bB"));
        assert_eq!(enum_nf_words(2, 0).unwrap(), vec![(String::new(), GroupElement::identity(2))]);
        for (s, g) in &w {
            assert_eq!(&parse_nf(2, s).unwrap(), g);
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for k in [2, 3] {
            let mut brute = BTreeSet::new();
            let mut frontier = vec![String::new()];
            for _ in 0..=6 {
                let mut next = Vec::new();
                for w in frontier {
                    if is_nf(k, &w) {
                        brute.insert(w.clone());
                    }
                    for c in ['a', 'A', 'b', 'B'] {
                        next.push(format!("{w}{c}"));
                    }
                }
                frontier = next;
            }
            let ours: BTreeSet<String> = enum_nf_words(k, 6).unwrap().into_iter().map(|(w, _)| w).collect();
            assert_eq!(ours, brute);
            let counts: Vec<usize> = (0..6).map(|l| enum_nf_words(k, l).unwrap().len()).collect();
            assert!(counts.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn element_oracles() {
        let k = 3;
        let all = filter_nf(k, 6, |_| true).unwrap();
        assert_eq!(oracle_centralizer(&GroupElement::identity(k), 6).unwrap(), all);
        assert!(oracle_conjugators(&el(k, 1, 1), &el(k, 0, 1), 8).unwrap().is_empty());
        let fixed = oracle_nf_fixed_r(k, 1, 6).unwrap();
        assert!(fixed.contains("baaaaa") && fixed.contains("bbaBa") && !fixed.contains("bb"));
        assert!(oracle_nf_fixed_r(2, 0, 3).unwrap().contains("baB"));
    }

    #[test]
    fn left_mult_a_samples() {
        let s = oracle_left_mult_a(3, 10).unwrap();
        assert!(s.contains("a#bAA#ba"));
        assert!(s.contains("a#a#aa"));
        assert!(s.contains("a##a"));
        for w in &s {
            let parts: Vec<&str> = w.split('#').collect();
            let u = parse_nf(3, parts[1]).unwrap();
            assert_eq!(GroupElement::a(3).mul(&u), parse_nf(3, parts[2]).unwrap());
        }
    }

    #[test]
    fn mult_triple_from_worked_example() {
        let s = oracle_mult_triples(3, 10, None).unwrap();
        assert!(s.contains("baBaBaaaaa#bbbABBABAA#bbaaBBBaaa"));
    }

    #[test]
    fn frac_triples_are_products() {
        let u = FracUniverse::new(3, 1, 2).unwrap();
        for v in [Variant::Mult, Variant::Inv] {
            let all = u.triples(v, None);
            assert!(!all.is_empty());
            let mut by_case = 0;
            for c in SignCase::all(v) {
                by_case += u.triples(v, Some(&c)).len();
            }
            assert_eq!(by_case, all.len());
            assert_eq!(u.count(v, None), all.len());
            for w in all.iter().take(2000) {
                let p: Vec<GroupElement> = w.split('#').map(|f| parse_frac(3, f).unwrap()).collect();
                let xy = p[0].mul(&p[1]);
                let want = if v == Variant::Mult { xy } else { xy.inv() };
                assert_eq!(p[2], want, "{w}");
            }
        }
        assert!(u.triples(Variant::Mult, None).contains("+.#+.#+."));
    }

    #[test]
    fn conjecture_words() {
        let s = conjecture_set(3, 1, 2).unwrap();
        assert!(s.contains("ba#bbaaaa"));
        assert!(s.contains("ba#ba"));
        assert!(s.contains("a#aa"));
        for w in &s {
            let (g, p) = w.split_once('#').unwrap();
            let g = parse_nf(3, g).unwrap();
            let n = (p.chars().filter(|&c| c == 'b').count() as i64).checked_div(g.r).unwrap_or(p.len() as i64);
            assert_eq!(g.pow(n), parse_nf(3, p).unwrap());
        }
    }

    #[test]
    fn roots() {
        assert!(proper_roots(&el(3, 1, 1), 6).is_empty());
        assert_eq!(proper_roots(&el(3, 2, 4), 4), vec![(2, el(3, 1, 1))]);
        let a_roots = proper_roots(&el(3, 0, 1), 9);
        assert_eq!(a_roots.iter().map(|(m, _)| *m).collect::<Vec<_>>(), [3, 9]);
    }

    #[test]
    fn cfg_fixpoint() {
        let g = Grammar::parse("S -> a S b | ε").unwrap();
        let w = cfg_words(&g, 6);
        assert_eq!(w.into_iter().collect::<Vec<_>>(), ["", "aaabbb", "aabb", "ab"]);
    }

    #[test]
    fn diff_verdicts() {
        let o: BTreeSet<String> = ["a", "b"].map(String::from).into();
        let mut more = o.clone();
        more.insert("c".into());
        assert!(diff_sets(&o, true, &o, String::new()).is_equal());
        let d = diff_sets(&o, true, &more, String::new());
        assert_eq!((d.missing.clone(), d.verdict), (vec!["c".to_string()], Verdict::Mismatch));
        assert_eq!(diff_sets(&o, false, &more, String::new()).verdict, Verdict::Inconclusive);
        assert_eq!(diff_sets(&more, false, &o, String::new()).verdict, Verdict::Mismatch);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("bs-edt0l-cache-{}", std::process::id()));
        let c = OracleCache::new(&dir);
        let words: BTreeSet<String> = ["", "ab", "a#b"].map(String::from).into();
        let got = c.get_or_compute(3, "test", "L=2", || Ok(words.clone())).unwrap();
        assert_eq!(got, words);
        assert_eq!(c.load(3, "test", "L=2"), Some(words));
        assert_eq!(c.load(3, "test", "L=3"), None);
        fs::remove_dir_all(dir).unwrap();
    }
}
