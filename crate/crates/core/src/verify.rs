//! Named languages: build their systems and check them against the oracle.

use std::collections::BTreeSet;
use std::fmt;

use crate::constructions::arith::{arith_system, frac_prune, nf_prune};
use crate::constructions::{
    case_system, centralizer_system, conjugator_system, exp_sequence_system, left_mult_a_system, nf_fixed_r_system, Form, RecurrenceFit,
    SignCase, Variant,
};
use crate::error::{Error, Result};
use crate::group::{eval_word, GroupElement};
use crate::lsystem::{enumerate, enumerate_dfs, Bounds, Et0lSystem};
use crate::oracle::{
    diff, diff_sets, oracle_centralizer, oracle_conjugators, oracle_frac_triples, oracle_inv_triples, oracle_left_mult_a, oracle_mult_triples,
    oracle_nf_fixed_r, DiffReport, OracleCache, Verdict,
};

/// The languages `build-system` and `verify` know by name.
#[derive(Clone, Debug)]
pub enum Target {
    NfFixedR { r: i64 },
    ExpSeq(RecurrenceFit),
    Centralizer { g: GroupElement },
    Conjugator { g: GroupElement, h: GroupElement },
    LeftMultA,
    /// One case, or the union of all of them when `case` is `None`.
    Arith { variant: Variant, form: Form, case: Option<SignCase> },
}

pub const TARGET_NAMES: [&str; 9] =
    ["nf-fixed-r", "exp-seq", "centralizer", "conjugator", "left-mult-a", "mult-frac", "mult-nf", "inv-frac", "inv-nf"];

/// Bounds for a check.
#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub k: u32,
    /// Word length, or per-factor length for the normal-form triples.
    pub max_len: usize,
    pub depth: usize,
    pub slack: usize,
    /// Fractional triples: largest `|r|` of a factor.
    pub max_abs_r: usize,
    /// Fractional triples: most digits in a factor.
    pub max_digits: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { k: 3, max_len: 12, depth: 64, slack: 4, max_abs_r: 1, max_digits: 3 }
    }
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::NfFixedR { .. } => "nf-fixed-r",
            Target::ExpSeq(_) => "exp-seq",
            Target::Centralizer { .. } => "centralizer",
            Target::Conjugator { .. } => "conjugator",
            Target::LeftMultA => "left-mult-a",
            Target::Arith { variant: Variant::Mult, form: Form::Frac, .. } => "mult-frac",
            Target::Arith { variant: Variant::Mult, form: Form::Nf, .. } => "mult-nf",
            Target::Arith { variant: Variant::Inv, form: Form::Frac, .. } => "inv-frac",
            Target::Arith { variant: Variant::Inv, form: Form::Nf, .. } => "inv-nf",
        }
    }

    /// A target other than `exp-seq` from its name and parameters. Elements
    /// are `(r,u)` or words over `a A b B`.
    pub fn named(k: u32, name: &str, r: Option<i64>, g: Option<&str>, h: Option<&str>, case: Option<&str>) -> Result<Target> {
        let need = |v: Option<&str>, flag: &str| -> Result<GroupElement> {
            let s = v.ok_or_else(|| Error::InvalidParameter(format!("{name} needs {flag}")))?.trim();
            if s.starts_with('(') {
                GroupElement::parse(k, s)
            } else {
                eval_word(k, s)
            }
        };
        let arith = |variant: Variant, form: Form| -> Result<Target> {
            let c = case.map(str::parse::<SignCase>).transpose()?;
            if let Some(c) = c.filter(|c| c.variant != variant) {
                return Err(Error::InvalidParameter(format!("case {c} does not belong to {name}")));
            }
            Ok(Target::Arith { variant, form, case: c })
        };
        match name {
            "nf-fixed-r" => Ok(Target::NfFixedR { r: r.ok_or_else(|| Error::InvalidParameter("nf-fixed-r needs r".into()))? }),
            "centralizer" => Ok(Target::Centralizer { g: need(g, "g")? }),
            "conjugator" => Ok(Target::Conjugator { g: need(g, "g")?, h: need(h, "h")? }),
            "left-mult-a" => Ok(Target::LeftMultA),
            "mult-frac" => arith(Variant::Mult, Form::Frac),
            "mult-nf" => arith(Variant::Mult, Form::Nf),
            "inv-frac" => arith(Variant::Inv, Form::Frac),
            "inv-nf" => arith(Variant::Inv, Form::Nf),
            "exp-seq" => Err(Error::InvalidParameter("exp-seq takes recurrence parameters".into())),
            other => Err(Error::InvalidParameter(format!("unknown system {other:?}"))),
        }
    }

    /// The cases the arithmetic targets cover.
    fn cases(&self) -> Vec<SignCase> {
        match self {
            Target::Arith { case: Some(c), .. } => vec![*c],
            Target::Arith { variant, .. } => SignCase::all(*variant).into_iter().filter(SignCase::admissible).collect(),
            _ => Vec::new(),
        }
    }

    pub fn build(&self, k: u32) -> Result<Et0lSystem> {
        match self {
            Target::NfFixedR { r } => nf_fixed_r_system(k, *r),
            Target::ExpSeq(fit) => exp_sequence_system(fit, k),
            Target::Centralizer { g } => centralizer_system(k, g),
            Target::Conjugator { g, h } => conjugator_system(k, g, h),
            Target::LeftMultA => left_mult_a_system(k),
            Target::Arith { variant, form, case: Some(c) } => {
                if c.variant != *variant {
                    return Err(Error::InvalidParameter(format!("case {c} does not belong to {}", self.name())));
                }
                case_system(k, c, *form)
            }
            Target::Arith { variant, form, case: None } => arith_system(k, *variant, *form),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::NfFixedR { r } => write!(f, "nf-fixed-r r={r}"),
            Target::ExpSeq(fit) => write!(
                f,
                "exp-seq r={} c={} n0={} lambda={} s0={} central={}",
                fit.r, fit.c, fit.n_start, fit.lambda, fit.s_start, fit.central_word
            ),
            Target::Centralizer { g } => write!(f, "centralizer g={g}"),
            Target::Conjugator { g, h } => write!(f, "conjugator g={g} h={h}"),
            Target::LeftMultA => write!(f, "left-mult-a"),
            Target::Arith { case: Some(c), .. } => write!(f, "{} {c}", self.name()),
            Target::Arith { .. } => write!(f, "{}", self.name()),
        }
    }
}

/// The words of an exponential sequence up to length `max_len`.
fn exp_seq_words(fit: &RecurrenceFit, k: u32, max_len: usize) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for n in fit.n_start.. {
        let w = fit.word(k, n)?;
        if w.chars().count() > max_len {
            break;
        }
        out.insert(w);
    }
    Ok(out)
}

fn cached(cache: Option<&OracleCache>, k: u32, id: &str, bounds: &str, f: impl FnOnce() -> Result<BTreeSet<String>>) -> Result<BTreeSet<String>> {
    match cache {
        Some(c) => c.get_or_compute(k, id, bounds, f),
        None => f(),
    }
}

/// Merge the reports of disjoint parts into one.
fn merge(parts: Vec<DiffReport>, bounds: String) -> DiffReport {
    let mut out = DiffReport { missing: Vec::new(), extra: Vec::new(), bounds, exhaustive: true, verdict: Verdict::Equal };
    for p in parts {
        out.exhaustive &= p.exhaustive;
        out.verdict = match (out.verdict, p.verdict) {
            (Verdict::Mismatch, _) | (_, Verdict::Mismatch) => Verdict::Mismatch,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Equal,
        };
        out.missing.extend(p.missing);
        out.extra.extend(p.extra);
    }
    out
}

/// Enumerate the target's system within `params` and diff it against the
/// oracle. The arithmetic targets are checked case by case.
pub fn verify(target: &Target, params: &Params, cache: Option<&OracleCache>) -> Result<DiffReport> {
    let Params { k, max_len, depth, slack, max_abs_r, max_digits } = *params;
    let bounds = Bounds::new(max_len, depth, slack);
    let len_key = format!("L{max_len}");
    match target {
        Target::Arith { variant, form, .. } => {
            let mut parts = Vec::new();
            for c in target.cases() {
                let sys = case_system(k, &c, *form)?;
                let id = format!("{}-{c}", target.name());
                let (found, exhaustive, want) = match form {
                    Form::Frac => {
                        let prune = frac_prune(&sys, max_abs_r, max_digits);
                        let len = 3 * (max_abs_r + max_digits + 2) + 2;
                        let found = enumerate_dfs(&sys, Bounds::new(len, depth, slack), Some(&prune))?;
                        let key = format!("r{max_abs_r}-d{max_digits}");
                        let want = cached(cache, k, &id, &key, || oracle_frac_triples(k, *variant, max_abs_r as i64, max_digits, Some(&c)))?;
                        (found.word_set(), found.exhaustive_up_to_len, want)
                    }
                    Form::Nf => {
                        let prune = nf_prune(&sys, k, max_len);
                        let found = enumerate_dfs(&sys, Bounds::new(3 * max_len + 2, depth, slack), Some(&prune))?;
                        let want = cached(cache, k, &id, &len_key, || match variant {
                            Variant::Mult => oracle_mult_triples(k, max_len, Some(&c)),
                            Variant::Inv => oracle_inv_triples(k, max_len, Some(&c)),
                        })?;
                        (found.word_set(), found.exhaustive_up_to_len, want)
                    }
                };
                parts.push(diff_sets(&found, exhaustive, &want, String::new()));
            }
            let b = match form {
                Form::Frac => format!("|r| ≤ {max_abs_r}, digits ≤ {max_digits}, depth={depth} slack={slack}"),
                Form::Nf => format!("factor length ≤ {max_len}, depth={depth} slack={slack}"),
            };
            Ok(merge(parts, b))
        }
        _ => {
            let sys = target.build(k)?;
            let found = enumerate(&sys, bounds)?;
            let want = match target {
                Target::NfFixedR { r } => cached(cache, k, &format!("nf-fixed-r{r}"), &len_key, || oracle_nf_fixed_r(k, *r, max_len))?,
                Target::ExpSeq(fit) => exp_seq_words(fit, k, max_len)?,
                Target::Centralizer { g } => cached(cache, k, &format!("centralizer{g}"), &len_key, || oracle_centralizer(g, max_len))?,
                Target::Conjugator { g, h } => {
                    cached(cache, k, &format!("conjugator{g}{h}"), &len_key, || oracle_conjugators(g, h, max_len))?
                }
                Target::LeftMultA => cached(cache, k, "left-mult-a", &len_key, || oracle_left_mult_a(k, max_len))?,
                Target::Arith { .. } => unreachable!(),
            };
            Ok(diff(&found, &want))
        }
    }
}
