//! Normal forms with a fixed b-exponent.

use crate::automaton::Nfa;
use crate::error::Result;
use crate::lsystem::{regular_to_edt0l, union_sys, Et0lSystem};
use crate::zk::check_base;

const LETTERS: [&str; 4] = ["a", "A", "b", "B"];

fn base_system(k: u32) -> Result<Et0lSystem> {
    let mut sys = Et0lSystem::new(Some(k), &[("a", true), ("A", true), ("b", true), ("B", true), ("S", false), ("T", false)]);
    for al in ["a", "A"] {
        for j in 0..k as usize {
            let digits = al.repeat(j);
            sys.add_dtable(&format!("phi_{al}{j}"), &[("S", &format!("S {digits} B"))])?;
            sys.add_dtable(&format!("psi_{al}{j}"), &[("S", &format!("b S {digits} B"))])?;
        }
        sys.add_dtable(&format!("mu_{al}"), &[("T", &format!("T {al}"))])?;
    }
    sys.add_dtable("theta", &[("S", "b S")])?;
    sys.add_dtable("nu", &[("S", ""), ("T", "")])?;
    sys.set_axiom("S T")?;
    Ok(sys)
}

fn family(name: &str, al: &str, k: u32) -> String {
    let ids: Vec<String> = (0..k).map(|j| format!("{name}_{al}{j}")).collect();
    format!("({})", ids.join(" | "))
}

/// The words of `NF` whose element has b-exponent `r`.
///
/// For `r ≥ 0` the control is `θ^r (Ψ* \ Ψ*ψ₀) μ* ν` per sign of α. For
/// `r < 0` it is `Φ^{|r|} (Ψ* \ Ψ*ψ₀) μ* ν`, united with a regular system for
/// the words with `t < 0`.
pub fn nf_fixed_r_system(k: u32, r: i64) -> Result<Et0lSystem> {
    check_base(k)?;
    let mut sys = base_system(k)?;
    let n = r.unsigned_abs() as usize;
    let branches: Vec<String> = ["a", "A"]
        .iter()
        .map(|al| {
            let psi = family("psi", al, k);
            let head = if r >= 0 { "theta ".repeat(n) } else { format!("{} ", family("phi", al, k)).repeat(n) };
            format!("{head}({psi}* \\ {psi}* psi_{al}0) mu_{al}* nu")
        })
        .collect();
    sys.set_control(&branches.join(" | "))?;
    if r >= 0 {
        return Ok(sys);
    }
    union_sys(&sys, &regular_to_edt0l(&negative_t_words(k, n), &LETTERS)?)
}

/// Words `B^{|t|} α^{i_m}B…α^{i_1}B α^s` with `t < 0` and `|t| + m = n`.
fn negative_t_words(k: u32, n: usize) -> Nfa {
    let (a, aa, bb) = (0u32, 1u32, 3u32);
    let mut out = Nfa::empty(4);
    for x in [a, aa] {
        let alpha_run = |lo: u32| {
            let mut run = Nfa::epsilon(4);
            for i in lo..k {
                run = if i == lo { Nfa::word(4, &vec![x; i as usize]) } else { run.union(&Nfa::word(4, &vec![x; i as usize])) };
            }
            run
        };
        let tail = Nfa::symbol(4, x).star();
        for m in 0..n {
            let mut w = Nfa::word(4, &vec![bb; n - m]);
            if m > 0 {
                w = w.concat(&alpha_run(1)).concat(&Nfa::symbol(4, bb));
                for _ in 1..m {
                    w = w.concat(&alpha_run(0)).concat(&Nfa::symbol(4, bb));
                }
            }
            out = out.union(&w.concat(&tail));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{enumerate, membership, Bounds, Membership};
    use crate::oracle::oracle_nf_fixed_r;

    #[test]
    fn matches_oracle_small() {
        for k in [2, 3] {
            for r in -2..=2 {
                let sys = nf_fixed_r_system(k, r).unwrap();
                let found = enumerate(&sys, Bounds::new(7, 64, 4)).unwrap();
                assert!(found.exhaustive_up_to_len, "k={k} r={r}");
                assert_eq!(found.word_set(), oracle_nf_fixed_r(k, r, 7).unwrap(), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn sample_words() {
        let sys = nf_fixed_r_system(2, 0).unwrap();
        let w = enumerate(&sys, Bounds::new(3, 32, 4)).unwrap().word_set();
        assert!(w.contains("baB") && w.contains("a") && !w.contains("b"));
        assert!(matches!(membership(&sys, "b", 16, 4).unwrap(), Membership::NoUpToDepth { .. }));
        let sys = nf_fixed_r_system(3, 1).unwrap();
        let w = enumerate(&sys, Bounds::new(9, 32, 4)).unwrap().word_set();
        assert!(w.contains("baaaaa") && w.contains("bbaBaaaaa"));
        for r in -2..=3 {
            let sys = nf_fixed_r_system(3, r).unwrap();
            let w = enumerate(&sys, Bounds::new(3, 32, 4)).unwrap().word_set();
            assert_eq!(w.contains(&"b".repeat(r.max(0) as usize)), r >= 0, "r={r}");
        }
    }
}
