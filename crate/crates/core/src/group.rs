//! The group BS(1,k) = <a, b | b^-1 a b = a^k> in fractional coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::zk::{kpow, ZkRational};

/// The element `b^r a^u`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub r: i64,
    pub u: ZkRational,
}

/// Outcome of [`centralizer_generator`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Centralizer {
    Whole,
    SubgroupN,
    Cyclic(GroupElement),
}

/// `k^e - 1` for any integer `e`, as an element of Z[1/k].
fn kpow_minus_one(k: u32, e: i64) -> ZkRational {
    ZkRational::from_int(k, 1)
        .shift(e)
        .sub(&ZkRational::from_int(k, 1))
}

/// `x / y` in Z[1/k], if it stays there.
fn zk_div(x: &ZkRational, y: &ZkRational) -> Option<ZkRational> {
    let k = x.k();
    let num = x.num() * kpow(k, y.exp());
    let den = y.num() * kpow(k, x.exp());
    ZkRational::from_ratio(k, num, den)
}

impl GroupElement {
    pub fn new(r: i64, u: ZkRational) -> Self {
        GroupElement { r, u }
    }

    pub fn identity(k: u32) -> Self {
        GroupElement { r: 0, u: ZkRational::zero(k) }
    }

    pub fn a(k: u32) -> Self {
        GroupElement { r: 0, u: ZkRational::from_int(k, 1) }
    }

    pub fn b(k: u32) -> Self {
        GroupElement { r: 1, u: ZkRational::zero(k) }
    }

    pub fn k(&self) -> u32 {
        self.u.k()
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && self.u.is_zero()
    }

    /// Number of components in the central subword of the normal form.
    pub fn m(&self) -> i64 {
        self.u.exp() as i64
    }

    /// Power of `b` in the left subword (negative for the `B`-prefixed form).
    pub fn t(&self) -> i64 {
        self.r + self.m()
    }

    pub fn mul(&self, h: &GroupElement) -> GroupElement {
        GroupElement { r: self.r + h.r, u: self.u.shift(h.r).add(&h.u) }
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement { r: -self.r, u: self.u.neg().shift(-self.r) }
    }

    pub fn pow(&self, n: i64) -> GroupElement {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let k = self.k();
        if self.r == 0 {
            return GroupElement { r: 0, u: self.u.mul_int(&BigInt::from(n)) };
        }
        // u (k^{rn} - 1) / (k^r - 1)
        let num = self.u.mul(&kpow_minus_one(k, self.r * n));
        let u = zk_div(&num, &kpow_minus_one(k, self.r)).expect("geometric sum stays in Z[1/k]");
        GroupElement { r: self.r * n, u }
    }

    pub fn commutes_with(&self, h: &GroupElement) -> bool {
        self.mul(h) == h.mul(self)
    }

    /// Parse `(r,u)` with `u` written as `n` or `n/k^e`.
    pub fn parse(k: u32, s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "group element", input: s.to_string() };
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let (r, u) = inner.split_once(',').ok_or_else(bad)?;
        let r: i64 = r.trim().parse().map_err(|_| bad())?;
        let u = ZkRational::parse(k, u).map_err(|_| bad())?;
        Ok(GroupElement { r, u })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.u)
    }
}

/// Evaluate a word over `a A b B`.
pub fn eval_word(k: u32, w: &str) -> Result<GroupElement> {
    let mut g = GroupElement::identity(k);
    for (pos, ch) in w.chars().enumerate() {
        g = mul_letter(&g, ch).ok_or(Error::InvalidLetter { pos, ch })?;
    }
    Ok(g)
}

/// Right-multiply by one generator letter.
pub fn mul_letter(g: &GroupElement, ch: char) -> Option<GroupElement> {
    let k = g.k();
    let one = ZkRational::from_int(k, 1);
    Some(match ch {
        'a' => GroupElement { r: g.r, u: g.u.add(&one) },
        'A' => GroupElement { r: g.r, u: g.u.sub(&one) },
        'b' => GroupElement { r: g.r + 1, u: g.u.shift(1) },
        'B' => GroupElement { r: g.r - 1, u: g.u.shift(-1) },
        _ => return None,
    })
}

/// The centralizer of `g`.
///
/// For `r != 0` the commuting elements are `(rho, u (k^rho - 1)/(k^r - 1))`
/// for those `rho` where that value lies in Z[1/k]; they form `dZ` for some
/// divisor `d` of `|r|`, found by scanning divisors upward.
pub fn centralizer_generator(g: &GroupElement) -> Centralizer {
    if g.is_identity() {
        return Centralizer::Whole;
    }
    if g.r == 0 {
        return Centralizer::SubgroupN;
    }
    let k = g.k();
    let denom = kpow_minus_one(k, g.r);
    let n = g.r.unsigned_abs() as i64;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        if let Some(v) = zk_div(&g.u.mul(&kpow_minus_one(k, d)), &denom) {
            return Centralizer::Cyclic(GroupElement { r: d, u: v });
        }
    }
    unreachable!("d = |r| always yields g or its inverse")
}

/// Period of the b-exponents of the centralizer (0 for the whole group or N).
fn centralizer_period(g: &GroupElement) -> i64 {
    match centralizer_generator(g) {
        Centralizer::Cyclic(c) => c.r,
        _ => 0,
    }
}

/// `Some(e)` with `x = y * k^e`, when such an integer exists.
fn log_ratio(x: &ZkRational, y: &ZkRational) -> Option<i64> {
    if x.is_zero() || y.is_zero() || x.is_negative() != y.is_negative() {
        return None;
    }
    let k = x.k();
    // x/y = (nx k^ey) / (ny k^ex)
    let (nx, ny) = (x.num().abs(), y.num().abs());
    let g = nx.gcd(&ny);
    let (p, q) = (&nx / &g, &ny / &g);
    let kb = BigInt::from(k);
    let power_of = |mut v: BigInt| -> Option<i64> {
        let mut e = 0;
        while !v.is_one() {
            let (qq, rr) = v.div_rem(&kb);
            if !rr.is_zero() {
                return None;
            }
            v = qq;
            e += 1;
        }
        Some(e)
    };
    let base = y.exp() as i64 - x.exp() as i64;
    if q.is_one() {
        power_of(p).map(|e| e + base)
    } else if p.is_one() {
        power_of(q).map(|e| base - e)
    } else {
        None
    }
}

/// Some `x` with `x h = g x`, if one exists.
pub fn solve_conjugacy(g: &GroupElement, h: &GroupElement) -> Option<GroupElement> {
    let k = g.k();
    if g.r != h.r {
        return None;
    }
    if g.r == 0 {
        if g.u.is_zero() || h.u.is_zero() {
            return (g.u.is_zero() && h.u.is_zero()).then(|| GroupElement::identity(k));
        }
        // b^rho a^v h = g b^rho a^v  <=>  u_h = u_g k^rho
        let rho = log_ratio(&h.u, &g.u)?;
        return Some(GroupElement { r: rho, u: ZkRational::zero(k) });
    }
    // v (k^r - 1) = u_g k^rho - u_h
    let denom = kpow_minus_one(k, g.r);
    let d = centralizer_period(g).max(1);
    (0..d).find_map(|rho| {
        let v = zk_div(&g.u.shift(rho).sub(&h.u), &denom)?;
        Some(GroupElement { r: rho, u: v })
    })
}
