//! Words `b^{rn+c} w α^{s_n}` whose exponent obeys `s_{n+1} = k^r s_n + λ`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lsystem::Et0lSystem;
use crate::zk::{check_base, kpow, DigitSign};

/// `s_{n+1} = k^r s_n + λ` for `n ≥ n_start`, with the word at index `n`
/// being `b^{rn+c} central α^{s_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub r: u32,
    pub c: i64,
    pub n_start: u64,
    pub lambda: BigInt,
    pub central_word: String,
    pub s_start: BigInt,
    pub alpha_sign: DigitSign,
}

impl RecurrenceFit {
    pub fn alpha(&self) -> char {
        match self.alpha_sign {
            DigitSign::Pos => 'a',
            DigitSign::Neg => 'A',
        }
    }

    /// `s_n`, for `n ≥ n_start`.
    pub fn s(&self, k: u32, n: u64) -> BigInt {
        let kr = kpow(k, self.r);
        let mut s = self.s_start.clone();
        for _ in self.n_start..n {
            s = &kr * &s + &self.lambda;
        }
        s
    }

    /// The word at index `n`.
    pub fn word(&self, k: u32, n: u64) -> Result<String> {
        let t = self.r as i64 * n as i64 + self.c;
        let s = self.s(k, n).to_usize().ok_or_else(|| Error::InvalidParameter("exponent too large to write out".into()))?;
        if t < 0 {
            return Err(Error::InvalidParameter(format!("negative b-exponent at n={n}")));
        }
        let mut w = "b".repeat(t as usize);
        w.push_str(&self.central_word);
        w.extend(std::iter::repeat_n(self.alpha(), s));
        Ok(w)
    }

    fn check(&self, k: u32) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidParameter("recurrence needs r > 0".into()));
        }
        if self.r as i64 * self.n_start as i64 + self.c < 0 {
            return Err(Error::InvalidParameter("r·n_start + c is negative".into()));
        }
        let grows = (kpow(k, self.r) - 1) * &self.s_start + &self.lambda > BigInt::from(0);
        if self.s_start.is_negative() || !grows {
            return Err(Error::InvalidParameter("sequence must be nonnegative and increasing".into()));
        }
        if self.lambda.is_negative() && self.s_start <= self.lambda.abs() {
            return Err(Error::InvalidParameter("s_start must exceed |λ| when λ < 0".into()));
        }
        Ok(())
    }
}

/// The system with control `φ*ψ` generating `{b^{rn+c} w α^{s_n} : n ≥ n_start}`.
/// A negative `λ` is carried by `|λ|` marker letters `𝖺`, each of which
/// grows by `k^r - 2` letters per step and finally becomes one `α`.
pub fn exp_sequence_system(fit: &RecurrenceFit, k: u32) -> Result<Et0lSystem> {
    check_base(k)?;
    fit.check(k)?;
    let lam = fit.lambda.to_usize().or_else(|| (-&fit.lambda).to_usize());
    let lam = lam.ok_or_else(|| Error::InvalidParameter("λ too large".into()))?;
    let kr = kpow(k, fit.r).to_usize().ok_or_else(|| Error::InvalidParameter("k^r too large".into()))?;
    let s0 = fit.s_start.to_usize().ok_or_else(|| Error::InvalidParameter("s_start too large".into()))?;
    let al = fit.alpha().to_string();
    let mut sys = Et0lSystem::new(Some(k), &[("a", true), ("A", true), ("b", true), ("B", true), ("S", false)]);
    let rep = |x: &str, n: usize| vec![x; n].join(" ");
    let w: Vec<String> = fit.central_word.chars().map(String::from).collect();
    let b_head = "b".repeat((fit.r as i64 * fit.n_start as i64 + fit.c) as usize);
    if fit.lambda.is_negative() {
        sys.add_symbol("𝖺", false);
        sys.add_dtable("phi", &[("S", &format!("{} S", rep("b", fit.r as usize))), (&al, &rep(&al, kr)), ("𝖺", &format!("{} 𝖺", rep(&al, kr - 2)))])?;
        sys.add_dtable("psi", &[("S", &w.join(" ")), ("𝖺", &al)])?;
        sys.set_axiom(&format!("{b_head} S {} {}", rep(&al, s0 - lam), rep("𝖺", lam)))?;
    } else {
        sys.add_dtable("phi", &[("S", &format!("{} S {}", rep("b", fit.r as usize), rep(&al, lam))), (&al, &rep(&al, kr))])?;
        sys.add_dtable("psi", &[("S", &w.join(" "))])?;
        sys.set_axiom(&format!("{b_head} S {}", rep(&al, s0)))?;
    }
    sys.set_control("phi* psi")?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{enumerate, Bounds};

    fn fit(r: u32, lambda: i64, s_start: i64) -> RecurrenceFit {
        RecurrenceFit { r, c: 0, n_start: 0, lambda: lambda.into(), central_word: String::new(), s_start: s_start.into(), alpha_sign: DigitSign::Pos }
    }

    #[test]
    fn powers_of_ba() {
        let f = fit(1, 1, 1);
        let got: Vec<BigInt> = (0..4).map(|n| f.s(3, n)).collect();
        assert_eq!(got, [1, 4, 13, 40].map(BigInt::from));
        let sys = exp_sequence_system(&f, 3).unwrap();
        let words = enumerate(&sys, Bounds::new(20, 16, 4)).unwrap().word_set();
        let want: std::collections::BTreeSet<String> = (0..3).map(|n| f.word(3, n).unwrap()).collect();
        assert_eq!(words, want);
    }

    #[test]
    fn hand_applied_phi() {
        let mut sys = Et0lSystem::new(Some(3), &[("a", true), ("b", true), ("S", false)]);
        sys.add_dtable("phi", &[("S", "b S a"), ("a", "a a a")]).unwrap();
        let w = sys.parse_word("b S a a").unwrap();
        let out: Vec<String> = sys.tables[0].apply(&w).iter().map(|x| sys.render(x)).collect();
        assert_eq!(out, ["bbSaaaaaaa"]);
    }

    #[test]
    fn negative_lambda_marker_step() {
        let f = fit(1, -1, 2);
        let sys = exp_sequence_system(&f, 3).unwrap();
        let phi = sys.table_index("phi").unwrap();
        let psi = sys.table_index("psi").unwrap();
        let out = sys.replay(&[phi, psi]);
        assert_eq!(sys.render(&out[0]), format!("b{}", "a".repeat(5)));
    }

    #[test]
    fn rejects_bad_fits() {
        assert!(exp_sequence_system(&fit(0, 1, 1), 3).is_err());
        assert!(exp_sequence_system(&RecurrenceFit { c: -1, ..fit(1, 1, 1) }, 3).is_err());
        assert!(exp_sequence_system(&fit(1, -2, 2), 3).is_err());
        assert!(exp_sequence_system(&fit(1, 1, -1), 2).is_err());
    }
}
