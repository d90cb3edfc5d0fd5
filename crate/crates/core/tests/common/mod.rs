//! Data shared by the integration tests.

use bs_edt0l::constructions::sign_case::{SignCase, Variant};
use bs_edt0l::constructions::{case_system, Form};
use bs_edt0l::group::GroupElement;

pub struct Example {
    pub variant: Variant,
    pub case: &'static str,
    pub frac: &'static str,
    pub frac_control: &'static str,
    pub nf: &'static str,
    pub nf_control: &'static str,
}

/// `x^n` powers, so the targets read like the printed words.
pub fn expand(w: &str) -> String {
    let mut out = String::new();
    let mut chars = w.chars().peekable();
    while let Some(c) = chars.next() {
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut n = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                n.push(*d);
                chars.next();
            }
            out.extend(std::iter::repeat_n(c, n.parse().unwrap()));
        } else {
            out.push(c);
        }
    }
    out
}

pub const EXAMPLES: [Example; 6] = [
    Example {
        variant: Variant::Mult,
        case: "mult/rx-ry+/ux+uy-uz+",
        frac: "B+11.21#-101.2#B+200.01",
        frac_control: "signpmp α01 α10' α11 BX BZ δ22 ωY δ10 τ",
        nf: "baBaBa^5#b^3ABBABA^2#b^2a^2B^3a^3",
        nf_control: "α01 ρXY α10 ρXY α11 ρY δ22 ωY δ10 τ",
    },
    Example {
        variant: Variant::Mult,
        case: "mult/rx-ry+/ux+uy-uz+",
        frac: "B+11.21#b-101.2#+222.111",
        frac_control: "signpmp α01 α00' α11' γ12' BX bY ωY δ20' δ10 τ",
        nf: "baBaBa^5#b^4ABBABA^2#b^3a^2Ba^2Ba^2Ba^13",
        nf_control: "α01 ρXY α00 ρXY α11 ρXY γ12 ρY ωY δ20 δ10 τ",
    },
    Example {
        variant: Variant::Mult,
        case: "mult/rx-ry-/ux-uy+uz-",
        frac: "B-21.112#B+221.01#B^2-22.01",
        frac_control: "signmpm α22 α12 BX BZ β11' BY BZ δ10' δ21 τ",
        nf: "bA^2BABA^22#b^2a^2Ba^2BaBa^3#A^2BA^2BA^3",
        nf_control: "α22 ρXY α12 ρY β11 δ10 δ21 τ",
    },
    Example {
        variant: Variant::Inv,
        case: "inv/rx+ry+/ux-uy+uz-",
        frac: "b^2-1.2#b+2.1#B^3+1210.",
        frac_control: "signmpp αf02 γf11' bY BZ ωY δf20' bX BZ ωX δf00 bX BZ τ",
        nf: "b^3ABA^2#b^2a^2Ba#baBa^2BaB^2",
        nf_control: "αf02 ρXY γf11 ρXY' ωY δf20 ρX ωX δf00 ρX τ",
    },
    Example {
        variant: Variant::Inv,
        case: "inv/rx+ry-rxy+/ux-uy-uz-",
        frac: "b^2-1.21#B-12.22#B+211.01",
        frac_control: "signmmp αf11 βf22 bX BY δf12' bX BZ ωX δi02' ωY δi00' τ",
        nf: "b^3ABA^5#bABA^2BA^8#b^2a^2BaBaBa^3",
        nf_control: "αf11 ρXY βf22 μ δf12 ρX ωX δi02 ωY δi00 τ",
    },
    Example {
        variant: Variant::Inv,
        case: "inv/rx+ry-rxy-/ux-uy+uz+",
        frac: "b^2-1.21#B^3+21.21#b-200.121",
        frac_control: "signmpm αf10 βf20' bX BY βf12' bX BY ωX βi01 BY bZ δi02 δi01 τ",
        nf: "b^3ABA^5#Ba^2BaBa^5#b^4A^2BBBA^16",
        nf_control: "αf10 μ βf20 μ νY βf12 μ ωX βi01 ρZ δi02 δi01 τ",
    },
];

pub fn replay(case: &SignCase, form: Form, control: &str) -> Vec<String> {
    let sys = case_system(3, case, form).unwrap();
    let ctl = sys.parse_control_word(control).unwrap();
    let ids: Vec<u32> = ctl.iter().map(|&t| t as u32).collect();
    assert!(sys.control_dfa().unwrap().accepts(&ids), "{case}: control {control} rejected");
    sys.replay(&ctl).iter().map(|w| sys.render(w)).collect()
}

/// The three factors satisfy the group equation, by arithmetic alone.
pub fn check_triple(variant: Variant, parse: impl Fn(&str) -> GroupElement, word: &str) {
    let f: Vec<_> = word.split('#').map(parse).collect();
    let p = f[0].mul(&f[1]);
    let want = if variant == Variant::Mult { p } else { p.inv() };
    assert_eq!(f[2], want, "{word}");
}

