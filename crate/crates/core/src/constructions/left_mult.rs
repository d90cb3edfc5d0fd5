//! Left multiplication by `a` on words `b^t α^s`.

use crate::error::Result;
use crate::lsystem::{union_sys, Et0lSystem};
use crate::zk::check_base;

fn alphabet(k: u32) -> Et0lSystem {
    Et0lSystem::new(Some(k), &[("a", true), ("A", true), ("b", true), ("#", true), ("𝖺", false), ("𝖠", false), ("T", false)])
}

fn rep(x: &str, n: u32) -> String {
    vec![x; n as usize].join(" ")
}

/// `a # b^t a^s # b^t a^{s+k^t}`.
fn adding(k: u32) -> Result<Et0lSystem> {
    let mut sys = alphabet(k);
    sys.set_axiom("T # 𝖺 # 𝖺 a")?;
    sys.add_dtable("t1", &[("𝖺", "b 𝖺"), ("a", &rep("a", k))])?;
    sys.add_dtable("t2", &[("T", "a")])?;
    sys.add_dtable("t3", &[("𝖺", "a 𝖺")])?;
    sys.add_dtable("t4", &[("𝖺", "")])?;
    sys.set_control("t1* t2 t3* t4")?;
    Ok(sys)
}

/// `a # b^t A^s # b^t A^{s-k^t}` for `s ≥ k^t`.
fn cancelling(k: u32) -> Result<Et0lSystem> {
    let mut sys = alphabet(k);
    sys.set_axiom("T # 𝖠 A # 𝖠")?;
    sys.add_dtable("t1", &[("𝖠", "b 𝖠"), ("A", &rep("A", k))])?;
    sys.add_dtable("t2", &[("T", "a")])?;
    sys.add_dtable("t3", &[("𝖠", "A 𝖠")])?;
    sys.add_dtable("t4", &[("𝖠", "")])?;
    sys.set_control("t1* t2 t3* t4")?;
    Ok(sys)
}

/// `a # b^t A^s # b^t a^{k^t-s}` for `0 < s < k^t`, by base-k subtraction
/// from the lowest digit up.
fn borrowing(k: u32) -> Result<Et0lSystem> {
    let mut sys = alphabet(k);
    sys.set_axiom("a # 𝖠 # 𝖺")?;
    let (big_a, small_a) = (rep("𝖠", k), rep("𝖺", k));
    sys.add_dtable("alpha", &[("#", "# b"), ("𝖠", &big_a), ("𝖺", &small_a)])?;
    for m in 0..k {
        let minuend = format!("{big_a} {}", rep("A", m));
        sys.add_dtable(&format!("beta{m}"), &[("#", "# b"), ("𝖠", &minuend), ("𝖺", &format!("{small_a} {}", rep("a", k - m)))])?;
        sys.add_dtable(&format!("gamma{m}"), &[("#", "# b"), ("𝖠", &minuend), ("𝖺", &format!("{small_a} {}", rep("a", k - m - 1)))])?;
    }
    sys.add_dtable("delta", &[("𝖺", ""), ("𝖠", "")])?;
    let betas: Vec<String> = (1..k).map(|m| format!("beta{m}")).collect();
    let gammas: Vec<String> = (0..k).map(|m| format!("gamma{m}")).collect();
    sys.set_control(&format!("alpha* ({}) ({})* delta", betas.join(" | "), gammas.join(" | ")))?;
    Ok(sys)
}

/// `{a # u # NF(au) : u = b^t α^s}` as the union of the adding, cancelling
/// and borrowing cases.
pub fn left_mult_a_system(k: u32) -> Result<Et0lSystem> {
    check_base(k)?;
    union_sys(&union_sys(&adding(k)?, &cancelling(k)?)?, &borrowing(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{enumerate, Bounds};
    use crate::oracle::oracle_left_mult_a;

    #[test]
    fn matches_oracle() {
        for k in [2, 3] {
            let found = enumerate(&left_mult_a_system(k).unwrap(), Bounds::new(10, 64, 40)).unwrap();
            assert!(found.exhaustive_up_to_len, "k={k}");
            assert_eq!(found.word_set(), oracle_left_mult_a(k, 10).unwrap(), "k={k}");
        }
    }

    #[test]
    fn samples() {
        let w = enumerate(&left_mult_a_system(3).unwrap(), Bounds::new(8, 64, 40)).unwrap().word_set();
        assert!(w.contains("a#bAA#ba"));
        assert!(w.contains("a#a#aa"));
    }
}
