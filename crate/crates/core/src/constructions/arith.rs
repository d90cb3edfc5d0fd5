//! Multiplication and inversion systems, in fractional form and in normal
//! form, built on the column machine.

use std::collections::HashMap;

use super::column::{digit_rule, Column, Machine, Region, Signs, Step, NAMES, X, Y, Z};
use super::sign_case::{Relation, SignCase, Sgn, Variant};
use crate::automaton::Nfa;
use crate::error::{Error, Result};
use crate::lsystem::{union_sys, Control, Et0lSystem, Sym};
use crate::zk::check_base;

/// An output word for one number: which letters it writes with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Frac,
    Nf,
}

struct Builder {
    sys: Et0lSystem,
    ids: HashMap<String, u32>,
}

impl Builder {
    fn table(&mut self, id: &str, rules: &[(String, String)]) -> Result<u32> {
        if let Some(&t) = self.ids.get(id) {
            return Ok(t);
        }
        let rules: Vec<(&str, &str)> = rules.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        self.sys.add_dtable(id, &rules)?;
        let t = (self.sys.tables.len() - 1) as u32;
        self.ids.insert(id.to_string(), t);
        Ok(t)
    }
}

fn tilde(n: &str) -> String {
    format!("{n}\u{303}")
}

fn rep(x: &str, n: u32) -> String {
    vec![x; n as usize].join(" ")
}

fn kind_name(variant: Variant, region: &[Region; 3]) -> String {
    let greek = match (region[X], region[Y]) {
        (Region::Frac, Region::Frac) => "α",
        (Region::Int, Region::Frac) => "β",
        (Region::Frac, Region::Int) => "γ",
        (Region::Int, Region::Int) => "δ",
    };
    match variant {
        Variant::Mult => greek.to_string(),
        Variant::Inv => format!("{greek}{}", if region[Z] == Region::Frac { "f" } else { "i" }),
    }
}

fn digit_pair(k: u32, i: u32, j: u32) -> String {
    if k <= 10 {
        format!("{i}{j}")
    } else {
        format!("{i}_{j}")
    }
}

/// Lays the machines out side by side as one control automaton. `sign`
/// gives the table for the first step (or none) and `step` the tables for
/// one step.
fn assemble(
    machines: &[Machine],
    b: &mut Builder,
    sign: &mut dyn FnMut(&mut Builder, &Signs) -> Result<Option<u32>>,
    step: &mut dyn FnMut(&mut Builder, &Step) -> Result<Vec<u32>>,
) -> Result<()> {
    let mut paths: Vec<(usize, Vec<u32>, usize)> = Vec::new();
    let accept = 1;
    let mut base = 2;
    for m in machines {
        for &s in &m.starts {
            let t = sign(b, &m.states[s].signs())?;
            paths.push((0, t.into_iter().collect(), base + s));
        }
        for (from, st, to) in &m.edges {
            paths.push((base + from, step(b, st)?, to.map_or(accept, |t| base + t)));
        }
        base += m.states.len();
    }
    let mut nfa = Nfa::new(b.sys.tables.len());
    while nfa.num_states() < base {
        nfa.add_state();
    }
    nfa.start = 0;
    nfa.accepting.insert(accept);
    for (from, word, to) in paths {
        let mut q = from;
        for (n, &t) in word.iter().enumerate() {
            let p = if n + 1 == word.len() { to } else { nfa.add_state() };
            nfa.add_edge(q, Some(t), p);
            q = p;
        }
        if word.is_empty() {
            nfa.add_edge(from, None, to);
        }
    }
    b.sys.control = Control::Automaton(nfa);
    Ok(())
}

/// Machines for cases that share one set of tables: same variant and signs
/// of `u`, any signs of `r`.
fn machines(k: u32, cases: &[SignCase]) -> Result<Vec<Machine>> {
    let first = cases.first().ok_or_else(|| Error::InvalidParameter("no sign cases given".into()))?;
    if cases.iter().any(|c| (c.variant, c.ux, c.uy, c.uz) != (first.variant, first.ux, first.uy, first.uz)) {
        return Err(Error::InvalidParameter("sign cases must agree on the variant and the signs of u".into()));
    }
    Ok(cases.iter().map(|c| Machine::new(k, *c)).collect())
}

fn sign_char(s: Sgn) -> &'static str {
    match s {
        Sgn::Pos => "+",
        Sgn::Neg => "-",
    }
}

/// `{x̂ # ŷ # ẑ}` in fractional form for one sign case, where `z = xy` or
/// `z = (xy)^{-1}`.
pub fn frac_case_system(k: u32, case: &SignCase) -> Result<Et0lSystem> {
    frac_group_system(k, std::slice::from_ref(case))
}

/// As [`frac_case_system`] for several cases with the same signs of `u`.
pub fn frac_group_system(k: u32, cases: &[SignCase]) -> Result<Et0lSystem> {
    check_base(k)?;
    if k > 10 {
        return Err(Error::InvalidParameter("fractional forms need k ≤ 10".into()));
    }
    let ms = machines(k, cases)?;
    let case = &cases[0];
    let mut syms: Vec<(String, bool)> = ["b", "B", "+", "-", ".", "#"].iter().map(|s| (s.to_string(), true)).collect();
    syms.extend((0..k).map(|d| (d.to_string(), true)));
    for n in NAMES {
        for v in ["P", "F̃", "F", "I"] {
            syms.push((format!("{v}_{n}"), false));
        }
    }
    let syms: Vec<(&str, bool)> = syms.iter().map(|(s, t)| (s.as_str(), *t)).collect();
    let mut b = Builder { sys: Et0lSystem::new(Some(k), &syms), ids: HashMap::new() };
    b.sys.set_axiom("P_X F̃_X . I_X # P_Y F̃_Y . I_Y # P_Z F̃_Z . I_Z")?;
    let variant = case.variant;
    let rel = case.relation();
    let tau: Vec<(String, String)> =
        NAMES.iter().flat_map(|n| ["P", "F̃", "F", "I"].map(|v| (format!("{v}_{n}"), String::new()))).collect();
    let tau = b.table("τ", &tau)?;
    let mut sign = |b: &mut Builder, s: &Signs| -> Result<Option<u32>> {
        let id = format!("sign{}{}{}", sign_char(s.sign[X]), sign_char(s.sign[Y]), sign_char(s.sign[Z]))
            .replace('+', "p")
            .replace('-', "m");
        let rules: Vec<(String, String)> =
            (0..3).map(|n| (format!("P_{}", NAMES[n]), format!("P_{} {}", NAMES[n], sign_char(s.sign[n])))).collect();
        b.table(&id, &rules).map(Some)
    };
    let mut step = |b: &mut Builder, st: &Step| -> Result<Vec<u32>> {
        let Some(col) = &st.column else { return Ok(vec![tau]) };
        let mut out = Vec::new();
        for n in (0..3).filter(|&n| st.finish[n]) {
            out.push(b.table(&format!("ω{}", NAMES[n]), &[(format!("I_{}", NAMES[n]), String::new())])?);
        }
        out.push(frac_column(b, k, variant, rel, col)?);
        for (name, prefix) in NAMES.iter().zip(col.frac_prefix) {
            if let Some(small) = prefix {
                let letter = if small { "b" } else { "B" };
                let p = format!("P_{name}");
                out.push(b.table(&format!("{letter}{name}"), &[(p.clone(), format!("{letter} {p}"))])?);
            }
        }
        Ok(out)
    };
    assemble(&ms, &mut b, &mut sign, &mut step)?;
    Ok(b.sys)
}

fn frac_column(b: &mut Builder, k: u32, variant: Variant, rel: Relation, col: &Column) -> Result<u32> {
    let [i, j, _] = col.digits;
    let (dz, _) = digit_rule(rel, k, i, j, col.carry_in);
    let id = format!("{}{}{}", kind_name(variant, &col.region), digit_pair(k, i, j), if col.carry_in { "'" } else { "" });
    let mut rules = Vec::new();
    for (n, d) in [i, j, dz].into_iter().enumerate() {
        let name = NAMES[n];
        match col.region[n] {
            Region::Frac => {
                if d != 0 {
                    rules.push((format!("F̃_{name}"), format!("{d} F_{name}")));
                }
                rules.push((format!("F_{name}"), format!("{d} F_{name}")));
            }
            Region::Int => rules.push((format!("I_{name}"), format!("{d} I_{name}"))),
        }
    }
    b.table(&id, &rules)
}

/// Letters of the normal-form systems for one case.
struct NfNames {
    alpha: [&'static str; 3],
    dummy: [String; 3],
    dummy1: String,
    /// Whether z can be unstarted while carrying.
    carry_tilde: bool,
}

impl NfNames {
    fn new(case: &SignCase) -> NfNames {
        let z_sign = match case.variant {
            Variant::Mult => case.uz,
            Variant::Inv => match case.uz {
                Sgn::Pos => Sgn::Neg,
                Sgn::Neg => Sgn::Pos,
            },
        };
        let signs = [case.ux, case.uy, z_sign];
        let alpha = signs.map(|s| if s == Sgn::Pos { "a" } else { "A" });
        let dummy = [0, 1, 2].map(|n| format!("{}_{}", if signs[n] == Sgn::Pos { "𝖺" } else { "𝖠" }, NAMES[n]));
        let dummy1 = format!("{}1", dummy[Z]);
        NfNames { alpha, dummy, dummy1, carry_tilde: case.relation() == Relation::ZSum }
    }

    /// Sources of z for an incoming carry: unstarted, started, dummy.
    fn z_sources(&self, c: bool) -> [String; 3] {
        if c {
            ["Z̃_1".into(), "Z_1".into(), self.dummy1.clone()]
        } else {
            ["Z̃".into(), "Z".into(), self.dummy[Z].clone()]
        }
    }
}

/// The `ρ` tables in order of preference; each adds `b` at the sources listed.
const RHO: [(&str, [bool; 3]); 7] = [
    ("ρX", [true, false, false]),
    ("ρY", [false, true, false]),
    ("μ", [true, false, true]),
    ("ρXY", [true, true, true]),
    ("ρZ", [false, false, true]),
    ("ρYZ", [false, true, true]),
    ("ρXY'", [true, true, false]),
];

/// The first `ρ` table that, on the `b` sources present, adds exactly `want`.
pub fn rho_choice(want: [bool; 3], has_b: [bool; 3]) -> Option<&'static str> {
    RHO.iter().find(|(_, set)| (0..3).all(|n| (set[n] && has_b[n]) == want[n])).map(|(id, _)| *id)
}

/// `{x # y # z}` in normal form for one sign case, where `z = xy` or
/// `z = (xy)^{-1}`.
pub fn nf_case_system(k: u32, case: &SignCase) -> Result<Et0lSystem> {
    nf_group_system(k, std::slice::from_ref(case))
}

/// As [`nf_case_system`] for several cases with the same signs of `u`.
pub fn nf_group_system(k: u32, cases: &[SignCase]) -> Result<Et0lSystem> {
    check_base(k)?;
    let ms = machines(k, cases)?;
    let case = &cases[0];
    let names = NfNames::new(case);
    let mut syms: Vec<(String, bool)> = ["a", "A", "b", "B", "#"].iter().map(|s| (s.to_string(), true)).collect();
    for n in NAMES {
        for v in [tilde(n), n.to_string(), format!("{n}_b")] {
            syms.push((v, false));
        }
    }
    syms.extend(names.dummy.iter().map(|d| (d.clone(), false)));
    syms.push(("Z_1".into(), false));
    syms.push((names.dummy1.clone(), false));
    if names.carry_tilde {
        syms.push(("Z̃_1".into(), false));
    }
    let syms: Vec<(&str, bool)> = syms.iter().map(|(s, t)| (s.as_str(), *t)).collect();
    let mut b = Builder { sys: Et0lSystem::new(Some(k), &syms), ids: HashMap::new() };
    b.sys.set_axiom(&format!("{} # {} # {}", tilde("X"), tilde("Y"), tilde("Z")))?;
    let mut tau: Vec<(String, String)> = Vec::new();
    for (name, dummy) in NAMES.iter().zip(&names.dummy) {
        for v in [tilde(name), name.to_string(), format!("{name}_b"), dummy.clone()] {
            tau.push((v, String::new()));
        }
    }
    let tau = b.table("τ", &tau)?;
    // Present for comparison with the published tables; no control path uses it.
    b.table("σ", &[("X̃".into(), "B X".into()), ("X".into(), "B X".into()), ("Z̃".into(), "B Z".into()), ("Z".into(), "B Z".into())])?;
    for (id, set) in RHO {
        let rules: Vec<(String, String)> =
            (0..3).filter(|&n| set[n]).map(|n| (format!("{}_b", NAMES[n]), format!("b {}_b", NAMES[n]))).collect();
        b.table(id, &rules)?;
    }
    let variant = case.variant;
    let rel = case.relation();
    let mut sign = |_: &mut Builder, _: &Signs| -> Result<Option<u32>> { Ok(None) };
    let mut step = |b: &mut Builder, st: &Step| -> Result<Vec<u32>> {
        let Some(col) = &st.column else { return Ok(vec![tau]) };
        let mut out = Vec::new();
        for n in (0..3).filter(|&n| st.enter[n]) {
            let name = NAMES[n];
            let mut rules = vec![(tilde(name), format!("{name}_b {name}"))];
            if n == Z && names.carry_tilde {
                rules.push(("Z̃_1".into(), "Z_b Z_1".into()));
            }
            out.push(b.table(&format!("ι{name}"), &rules)?);
        }
        for n in (0..3).filter(|&n| st.finish[n]) {
            let name = NAMES[n];
            let mut rules = vec![(tilde(name), String::new()), (name.to_string(), String::new()), (names.dummy[n].clone(), String::new())];
            if n == Z {
                rules.push(("Z_1".into(), String::new()));
                rules.push((names.dummy1.clone(), String::new()));
                if names.carry_tilde {
                    rules.push(("Z̃_1".into(), String::new()));
                }
            }
            out.push(b.table(&format!("ω{name}"), &rules)?);
        }
        out.push(nf_column(b, k, variant, rel, &names, col)?);
        if col.nf_b.iter().any(|&x| x) {
            let id = rho_choice(col.nf_b, col.has_b).ok_or_else(|| Error::InvalidParameter("no ρ table fits".into()))?;
            out.push(b.ids[id]);
        }
        for n in (0..3).filter(|&n| col.nf_big_b[n]) {
            let name = NAMES[n];
            let mut rules = vec![(tilde(name), format!("B {name}̃"))];
            if n == Z && names.carry_tilde {
                rules.push(("Z̃_1".into(), "B Z̃_1".into()));
            }
            out.push(b.table(&format!("ν{name}"), &rules)?);
        }
        Ok(out)
    };
    assemble(&ms, &mut b, &mut sign, &mut step)?;
    Ok(b.sys)
}

/// The column table named by the regions and the x, y digits. Carries are
/// read from and written to the z letters, so one table serves both.
fn nf_column(b: &mut Builder, k: u32, variant: Variant, rel: Relation, names: &NfNames, col: &Column) -> Result<u32> {
    let [i, j, _] = col.digits;
    let id = format!("{}{}", kind_name(variant, &col.region), digit_pair(k, i, j));
    if let Some(&t) = b.ids.get(&id) {
        return Ok(t);
    }
    let mut rules = Vec::new();
    for (n, d) in [(X, i), (Y, j)] {
        let (name, al) = (NAMES[n], names.alpha[n]);
        let digit = rep(al, d);
        match col.region[n] {
            Region::Frac => {
                if d != 0 {
                    rules.push((tilde(name), format!("{name}_b {digit} B {name}")));
                }
                rules.push((name.to_string(), format!("{digit} B {name}")));
            }
            Region::Int => {
                let img = format!("{digit} {}", rep(&names.dummy[n], k));
                for src in [tilde(name), name.to_string(), names.dummy[n].clone()] {
                    rules.push((src, img.clone()));
                }
            }
        }
    }
    for c in [false, true] {
        let (dz, c_out) = digit_rule(rel, k, i, j, c);
        let [tilde, plain, dummy] = names.z_sources(c);
        let [out_tilde, out_plain, out_dummy] = names.z_sources(c_out);
        let digit = rep(names.alpha[Z], dz);
        let tilde_ok = !c || names.carry_tilde;
        match col.region[Z] {
            Region::Frac => {
                if tilde_ok {
                    if dz != 0 {
                        rules.push((tilde, format!("Z_b {digit} B {out_plain}")));
                    } else if c != c_out {
                        rules.push((tilde, out_tilde));
                    }
                }
                rules.push((plain, format!("{digit} B {out_plain}")));
            }
            Region::Int => {
                let img = format!("{digit} {}", rep(&out_dummy, k));
                if tilde_ok {
                    rules.push((tilde, img.clone()));
                }
                rules.push((plain, img.clone()));
                rules.push((dummy, img));
            }
        }
    }
    b.table(&id, &rules)
}

/// The case system in the requested output form.
pub fn case_system(k: u32, case: &SignCase, form: Form) -> Result<Et0lSystem> {
    match form {
        Form::Frac => frac_case_system(k, case),
        Form::Nf => nf_case_system(k, case),
    }
}

/// The system for several cases with the same signs of `u`.
pub fn group_system(k: u32, cases: &[SignCase], form: Form) -> Result<Et0lSystem> {
    match form {
        Form::Frac => frac_group_system(k, cases),
        Form::Nf => nf_group_system(k, cases),
    }
}

/// The cases of a variant grouped by the signs of `u`, in a fixed order.
pub fn sign_groups(variant: Variant) -> Vec<Vec<SignCase>> {
    let mut groups: Vec<Vec<SignCase>> = Vec::new();
    for c in SignCase::all(variant) {
        match groups.iter_mut().find(|g| (g[0].ux, g[0].uy, g[0].uz) == (c.ux, c.uy, c.uz)) {
            Some(g) => g.push(c),
            None => groups.push(vec![c]),
        }
    }
    groups
}

/// The union over all sign cases of a variant: one system per sign group of
/// `u`, combined with the union construction.
pub fn arith_system(k: u32, variant: Variant, form: Form) -> Result<Et0lSystem> {
    let mut groups = sign_groups(variant).into_iter();
    let first = group_system(k, &groups.next().expect("cases exist"), form)?;
    groups.try_fold(first, |acc, g| union_sys(&acc, &group_system(k, &g, form)?))
}

/// Whether some `#`-separated factor of `w` satisfies `over`, given the
/// counts of letter classes 0, 1 and 2 in it.
fn any_factor(w: &[Sym], hash: Sym, class: &[u8], over: impl Fn([usize; 3]) -> bool) -> bool {
    let mut c = [0usize; 3];
    for &s in w {
        if s == hash {
            if over(c) {
                return true;
            }
            c = [0; 3];
        } else if let Some(&x) = class.get(s as usize) {
            if x < 3 {
                c[x as usize] += 1;
            }
        }
    }
    over(c)
}

/// A cut for fractional-form triples: some factor has more than `max_digits`
/// digits or more than `max_abs_r` prefix letters. Neither ever shrinks.
pub fn frac_prune(sys: &Et0lSystem, max_abs_r: usize, max_digits: usize) -> impl Fn(&[Sym]) -> bool + Sync {
    let class: Vec<u8> = sys
        .symbols
        .iter()
        .map(|s| match s.as_str() {
            "b" | "B" => 0,
            d if d.len() == 1 && d.as_bytes()[0].is_ascii_digit() => 1,
            _ => 3,
        })
        .collect();
    let hash = sys.sym("#").unwrap_or(Sym::MAX);
    move |w: &[Sym]| any_factor(w, hash, &class, |c| c[0] > max_abs_r || c[1] > max_digits)
}

/// A cut for normal-form triples: some factor is sure to end longer than
/// `max_len`. A factor keeps its letters `a`, `A`, and `d` integral dummies
/// still owe at least `⌈d/k⌉` of them, counting those already written.
pub fn nf_prune(sys: &Et0lSystem, k: u32, max_len: usize) -> impl Fn(&[Sym]) -> bool + Sync {
    let class: Vec<u8> = sys
        .symbols
        .iter()
        .zip(&sys.terminal)
        .map(|(s, &t)| match s.as_str() {
            "a" | "A" => 1,
            "#" => 3,
            _ if s.starts_with('𝖺') || s.starts_with('𝖠') => 2,
            _ if t => 0,
            _ => 3,
        })
        .collect();
    let hash = sys.sym("#").unwrap_or(Sym::MAX);
    let k = k as usize;
    move |w: &[Sym]| any_factor(w, hash, &class, |c| c[0] + c[1].max(c[2].div_ceil(k)) > max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{enumerate_dfs, membership, Bounds, Membership};
    use crate::oracle::{oracle_inv_triples, oracle_mult_triples, FracUniverse};

    fn case(s: &str) -> SignCase {
        s.parse().unwrap()
    }

    #[test]
    fn rho_preference() {
        assert_eq!(rho_choice([true, true, false], [true, true, false]), Some("ρXY"));
        assert_eq!(rho_choice([true, true, false], [true, true, true]), Some("ρXY'"));
        assert_eq!(rho_choice([false, true, false], [true, true, true]), Some("ρY"));
        assert_eq!(rho_choice([true, false, true], [true, true, true]), Some("μ"));
    }

    #[test]
    fn section_seven_derivation() {
        let sys = nf_case_system(3, &case("mult/rx-ry-/ux-uy+uz-")).unwrap();
        let w = format!("bAABABA{}#bbaaBaaBaBaaa#AABAABAAA", "A".repeat(21));
        let ctl = sys.parse_control_word("α22 ρXY α12 ρY β11 δ10 δ21 τ").unwrap();
        let out = sys.replay(&ctl);
        assert_eq!(out.iter().map(|x| sys.render(x)).collect::<Vec<_>>(), [w]);
    }

    #[test]
    fn frac_example_membership() {
        let sys = frac_case_system(3, &case("mult/rx-ry+/ux+uy-uz+")).unwrap();
        match membership(&sys, "B+11.21#-101.2#B+200.01", 80, 6).unwrap() {
            Membership::Yes(_) => {}
            other => panic!("{other:?}"),
        }
    }

    fn frac_words(k: u32, c: &SignCase, r: usize, d: usize) -> (std::collections::BTreeSet<String>, bool) {
        let sys = frac_case_system(k, c).unwrap();
        let prune = frac_prune(&sys, r, d);
        let found = enumerate_dfs(&sys, Bounds::new(3 * (r + d + 2) + 2, 400, 4), Some(&prune)).unwrap();
        (found.word_set(), found.exhaustive_up_to_len)
    }

    #[test]
    fn frac_cases_match_oracle() {
        let (r, d) = (1, 3);
        let uni = FracUniverse::new(3, r as i64, d).unwrap();
        for v in [Variant::Mult, Variant::Inv] {
            for c in SignCase::all(v) {
                let (words, exhaustive) = frac_words(3, &c, r, d);
                assert!(exhaustive, "{c}");
                assert_eq!(words, uni.triples(v, Some(&c)), "{c}");
            }
        }
    }

    #[test]
    fn nf_cases_match_oracle() {
        let l = 5;
        for v in [Variant::Mult, Variant::Inv] {
            for c in SignCase::all(v) {
                let sys = nf_case_system(3, &c).unwrap();
                let prune = nf_prune(&sys, 3, l);
                let found = enumerate_dfs(&sys, Bounds::new(3 * l + 2, 400, 8), Some(&prune)).unwrap();
                let want = match v {
                    Variant::Mult => oracle_mult_triples(3, l, Some(&c)).unwrap(),
                    Variant::Inv => oracle_inv_triples(3, l, Some(&c)).unwrap(),
                };
                assert!(found.exhaustive_up_to_len, "{c}");
                assert_eq!(found.word_set(), want, "{c}");
            }
        }
    }
}
