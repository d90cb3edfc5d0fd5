//! Exact arithmetic in Z[1/k].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Validate a base. Everything in this crate assumes `k >= 2`.
pub fn check_base(k: u32) -> Result<u32> {
    if k < 2 {
        Err(Error::InvalidBase(k as u64))
    } else {
        Ok(k)
    }
}

/// `k^e` as a big integer.
pub fn kpow(k: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(k), e as usize)
}

/// A value `num / k^exp` kept in canonical form: zero has `exp == 0`, and a
/// positive exponent means `k` does not divide `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZkRational {
    k: u32,
    num: BigInt,
    exp: u32,
}

/// Sign reported by [`ZkRational::split`]. Zero counts as positive.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DigitSign {
    Pos,
    Neg,
}

/// Base-k digits of `|x|`: fractional digits `i_m..i_1` (least significant
/// first) and the integral part `s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Split {
    pub frac_digits: Vec<u32>,
    pub int_part: BigUint,
    pub sign: DigitSign,
}

impl ZkRational {
    pub fn new(k: u32, num: BigInt, exp: u32) -> Self {
        let mut z = ZkRational { k, num, exp };
        z.canonicalize();
        z
    }

    pub fn zero(k: u32) -> Self {
        ZkRational { k, num: BigInt::zero(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(k: u32, n: T) -> Self {
        ZkRational { k, num: n.into(), exp: 0 }
    }

    /// `num / den` if it lies in Z[1/k], otherwise `None`.
    pub fn from_ratio(k: u32, num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (&num / &g, &den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        // Every prime of the denominator must divide k.
        let kb = BigInt::from(k);
        let mut rest = d.clone();
        while !rest.is_one() {
            let g = rest.gcd(&kb);
            if g.is_one() {
                return None;
            }
            rest /= g;
        }
        let mut e = 0u32;
        let mut ke = BigInt::one();
        while !(&ke % &d).is_zero() {
            e += 1;
            ke *= &kb;
        }
        Some(ZkRational::new(k, n * (ke / d), e))
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let kb = BigInt::from(self.k);
        while self.exp > 0 {
            let (q, r) = self.num.div_rem(&kb);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.exp -= 1;
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// The value as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        let e = self.exp.max(other.exp);
        let a = &self.num * kpow(self.k, e - self.exp);
        let b = &other.num * kpow(self.k, e - other.exp);
        ZkRational::new(self.k, a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ZkRational { k: self.k, num: -&self.num, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        ZkRational { k: self.k, num: self.num.abs(), exp: self.exp }
    }

    /// `self * k^e`.
    pub fn shift(&self, e: i64) -> Self {
        if e >= 0 {
            let e = e as u32;
            let take = e.min(self.exp);
            let num = &self.num * kpow(self.k, e - take);
            ZkRational::new(self.k, num, self.exp - take)
        } else {
            ZkRational::new(self.k, self.num.clone(), self.exp + (-e) as u32)
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        ZkRational::new(self.k, &self.num * n, self.exp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        ZkRational::new(self.k, &self.num * &other.num, self.exp + other.exp)
    }

    /// Exact division by an integer, when the quotient stays in Z[1/k].
    pub fn div_int(&self, n: &BigInt) -> Option<Self> {
        let z = ZkRational::from_ratio(self.k, self.num.clone(), n.clone())?;
        Some(z.shift(-(self.exp as i64)))
    }

    /// Split `|self|` into fractional digits and integral part.
    pub fn split(&self) -> Split {
        let sign = if self.is_negative() { DigitSign::Neg } else { DigitSign::Pos };
        let mag = self.num.abs().to_biguint().expect("abs is non-negative");
        let den = num_traits::pow(BigUint::from(self.k), self.exp as usize);
        let (int_part, mut rem) = mag.div_rem(&den);
        let kb = BigUint::from(self.k);
        let mut frac_digits = Vec::with_capacity(self.exp as usize);
        for _ in 0..self.exp {
            let (q, d) = rem.div_rem(&kb);
            frac_digits.push(d.to_u32().unwrap());
            rem = q;
        }
        Split { frac_digits, int_part, sign }
    }

    /// Rebuild a value from its split.
    pub fn from_split(k: u32, s: &Split) -> Self {
        let mut num = BigInt::zero();
        for &d in s.frac_digits.iter().rev() {
            num = num * k + d;
        }
        let m = s.frac_digits.len() as u32;
        let num = num + BigInt::from(s.int_part.clone()) * kpow(k, m);
        let num = if s.sign == DigitSign::Neg { -num } else { num };
        ZkRational::new(k, num, m)
    }
}

/// Little-endian base-k digits of a non-negative integer.
pub fn digits_le(k: u32, n: &BigUint) -> Vec<u32> {
    let kb = BigUint::from(k);
    let mut n = n.clone();
    let mut out = Vec::new();
    while !n.is_zero() {
        let (q, d) = n.div_rem(&kb);
        out.push(d.to_u32().unwrap());
        n = q;
    }
    out
}

impl PartialOrd for ZkRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZkRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num * kpow(self.k, e - self.exp);
        let b = &other.num * kpow(other.k, e - other.exp);
        a.cmp(&b)
    }
}

/// Prints `num` or `num/den` with `den = k^exp` written out.
impl fmt::Display for ZkRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, kpow(self.k, self.exp))
        }
    }
}

impl ZkRational {
    /// Parse `n` or `n/d` where the reduced denominator must be a power of k.
    pub fn parse(k: u32, s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "Z[1/k] value", input: s.to_string() };
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        ZkRational::from_ratio(k, n, d).ok_or_else(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: u32, s: &str) -> ZkRational {
        ZkRational::parse(k, s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(q(3, "49/9").add(&q(3, "-64/27")), q(3, "83/27"));
        assert_eq!(q(3, "49/9").add(&ZkRational::zero(3)), q(3, "49/9"));
        let one = q(2, "3/4").add(&q(2, "1/4"));
        assert_eq!((one.num().clone(), one.exp()), (BigInt::from(1), 0));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(q(3, "49/9").shift(-1), q(3, "49/27"));
        assert_eq!(q(3, "49/9").shift(0), q(3, "49/9"));
        assert_eq!(q(3, "4/9").shift(2), q(3, "4"));
    }

    #[test]
    fn split_examples() {
        let s = q(3, "49/9").split();
        assert_eq!(s.frac_digits, vec![1, 1]);
        assert_eq!(s.int_part, BigUint::from(5u32));
        assert_eq!(s.sign, DigitSign::Pos);
        let s = q(3, "-64/27").split();
        assert_eq!(s.frac_digits, vec![1, 0, 1]);
        assert_eq!(s.int_part, BigUint::from(2u32));
        assert_eq!(s.sign, DigitSign::Neg);
        let s = ZkRational::zero(3).split();
        assert!(s.frac_digits.is_empty() && s.int_part.is_zero());
    }

    #[test]
    fn ratio_membership() {
        assert!(ZkRational::from_ratio(3, 1.into(), 2.into()).is_none());
        assert_eq!(ZkRational::from_ratio(6, 1.into(), 4.into()), Some(q(6, "9/36")));
        assert_eq!(ZkRational::from_ratio(3, 6.into(), (-9).into()), Some(q(3, "-2/3")));
        assert!(ZkRational::parse(3, "1/2").is_err());
    }

    #[test]
    fn display_and_order() {
        assert_eq!(q(3, "-64/27").to_string(), "-64/27");
        assert_eq!(q(3, "18/9").to_string(), "2");
        assert!(q(3, "1/3") < q(3, "4/9"));
    }
}
