//! The sign cases that split the multiplication and inversion languages.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// `Pos` means nonnegative, matching the `+` of the fractional form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sgn {
    Pos,
    Neg,
}

impl Sgn {
    pub fn of_int(v: i64) -> Self {
        if v < 0 {
            Sgn::Neg
        } else {
            Sgn::Pos
        }
    }

    fn ch(self) -> char {
        match self {
            Sgn::Pos => '+',
            Sgn::Neg => '-',
        }
    }

    fn parse(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sgn::Pos),
            '-' => Some(Sgn::Neg),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `xy = z`.
    Mult,
    /// `xy = z⁻¹`.
    Inv,
}

/// Which absolute value is the sum of the other two, digit by digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `|z| = |x| + |y|`
    ZSum,
    /// `|x| = |y| + |z|`
    XSum,
    /// `|y| = |x| + |z|`
    YSum,
}

/// One case of the split. `uz` is the sign of the product `xy`; for
/// inversion that is the sign of `z⁻¹`, so `z` itself has the opposite sign
/// unless it is trivial. `rxy` is the sign of `r_x + r_y`, recorded only for
/// inversion with `r_x`, `r_y` of opposite signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignCase {
    pub variant: Variant,
    pub rx: Sgn,
    pub ry: Sgn,
    pub rxy: Option<Sgn>,
    pub ux: Sgn,
    pub uy: Sgn,
    pub uz: Sgn,
}

const U_CASES: [(Sgn, Sgn, Sgn); 6] = [
    (Sgn::Pos, Sgn::Pos, Sgn::Pos),
    (Sgn::Neg, Sgn::Neg, Sgn::Neg),
    (Sgn::Pos, Sgn::Neg, Sgn::Pos),
    (Sgn::Pos, Sgn::Neg, Sgn::Neg),
    (Sgn::Neg, Sgn::Pos, Sgn::Pos),
    (Sgn::Neg, Sgn::Pos, Sgn::Neg),
];

impl SignCase {
    pub fn new(variant: Variant, rx: Sgn, ry: Sgn, rxy: Option<Sgn>, ux: Sgn, uy: Sgn, uz: Sgn) -> Result<Self> {
        let c = SignCase { variant, rx, ry, rxy, ux, uy, uz };
        if c.admissible() {
            Ok(c)
        } else {
            Err(Error::InadmissibleCase(c.to_string()))
        }
    }

    pub fn admissible(&self) -> bool {
        let u_ok = U_CASES.contains(&(self.ux, self.uy, self.uz));
        let r_ok = match self.variant {
            Variant::Mult => self.rxy.is_none(),
            Variant::Inv => (self.rx == self.ry) == self.rxy.is_none(),
        };
        u_ok && r_ok
    }

    /// All cases of a variant: 24 for multiplication, 36 for inversion.
    pub fn all(variant: Variant) -> Vec<SignCase> {
        let mut out = Vec::new();
        for rx in [Sgn::Pos, Sgn::Neg] {
            for ry in [Sgn::Pos, Sgn::Neg] {
                let rxys: Vec<Option<Sgn>> = if variant == Variant::Inv && rx != ry {
                    vec![Some(Sgn::Pos), Some(Sgn::Neg)]
                } else {
                    vec![None]
                };
                for rxy in rxys {
                    for (ux, uy, uz) in U_CASES {
                        out.push(SignCase { variant, rx, ry, rxy, ux, uy, uz });
                    }
                }
            }
        }
        out
    }

    /// The case a pair of factors falls into.
    pub fn classify(variant: Variant, x: &GroupElement, y: &GroupElement) -> SignCase {
        let p = x.mul(y);
        let (rx, ry) = (Sgn::of_int(x.r), Sgn::of_int(y.r));
        let rxy = (variant == Variant::Inv && rx != ry).then(|| Sgn::of_int(x.r + y.r));
        let s = |g: &GroupElement| if g.u.is_negative() { Sgn::Neg } else { Sgn::Pos };
        SignCase { variant, rx, ry, rxy, ux: s(x), uy: s(y), uz: s(&p) }
    }

    pub fn relation(&self) -> Relation {
        match (self.ux, self.uy, self.uz) {
            (Sgn::Pos, Sgn::Pos, _) | (Sgn::Neg, Sgn::Neg, _) => Relation::ZSum,
            (Sgn::Pos, Sgn::Neg, Sgn::Pos) | (Sgn::Neg, Sgn::Pos, Sgn::Neg) => Relation::XSum,
            _ => Relation::YSum,
        }
    }
}

impl fmt::Display for SignCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.variant {
            Variant::Mult => "mult",
            Variant::Inv => "inv",
        };
        write!(f, "{v}/rx{}ry{}", self.rx.ch(), self.ry.ch())?;
        if let Some(s) = self.rxy {
            write!(f, "rxy{}", s.ch())?;
        }
        write!(f, "/ux{}uy{}uz{}", self.ux.ch(), self.uy.ch(), self.uz.ch())
    }
}

impl FromStr for SignCase {
    type Err = Error;

    /// Reads the [`fmt::Display`] form, e.g. `mult/rx+ry-/ux-uy+uz-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "sign case", input: s.to_string() };
        let mut parts = s.split('/');
        let variant = match parts.next() {
            Some("mult") => Variant::Mult,
            Some("inv") => Variant::Inv,
            _ => return Err(bad()),
        };
        let (r, u) = (parts.next().ok_or_else(bad)?, parts.next().ok_or_else(bad)?);
        if parts.next().is_some() {
            return Err(bad());
        }
        let signs = |text: &str, names: &[&str]| -> Option<Vec<Sgn>> {
            let mut rest = text;
            let mut out = Vec::new();
            for name in names {
                rest = rest.strip_prefix(name)?;
                let c = rest.chars().next()?;
                out.push(Sgn::parse(c)?);
                rest = &rest[1..];
            }
            rest.is_empty().then_some(out)
        };
        let rs = signs(r, &["rx", "ry", "rxy"]).or_else(|| signs(r, &["rx", "ry"])).ok_or_else(bad)?;
        let us = signs(u, &["ux", "uy", "uz"]).ok_or_else(bad)?;
        SignCase::new(variant, rs[0], rs[1], rs.get(2).copied(), us[0], us[1], us[2])
    }
}
