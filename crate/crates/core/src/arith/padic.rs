//! Capped absolute-precision p-adic numbers.
//!
//! A [`Padic`] is `p^val * unit` known modulo `p^prec`. Every operation
//! reports the largest absolute precision it can guarantee from the
//! precision of its inputs, so `prec` is always a lower bound on the number
//! of correct digits.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

thread_local! {
    static POWERS: RefCell<HashMap<u64, Vec<BigInt>>> = RefCell::new(HashMap::new());
}

/// `p^n` for `n >= 0`, memoized per thread.
pub fn p_pow(p: u64, n: i64) -> BigInt {
    assert!(n >= 0, "negative power of p");
    let n = n as usize;
    POWERS.with(|cell| {
        let mut map = cell.borrow_mut();
        let table = map.entry(p).or_insert_with(|| vec![BigInt::one()]);
        while table.len() <= n {
            let next = table.last().unwrap() * BigInt::from(p);
            table.push(next);
        }
        table[n].clone()
    })
}

/// `v_p` of a nonzero big integer.
pub fn big_valuation(x: &BigInt, p: u64) -> i64 {
    assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: BigInt,
    prec: i64,
}

impl Padic {
    pub fn zero(p: u64, prec: i64) -> Self {
        Padic { p, val: prec, unit: BigInt::zero(), prec }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::from_int(p, &BigInt::one(), prec)
    }

    pub fn from_i64(p: u64, n: i64, prec: i64) -> Self {
        Self::from_int(p, &BigInt::from(n), prec)
    }

    pub fn from_int(p: u64, n: &BigInt, prec: i64) -> Self {
        if n.is_zero() {
            return Self::zero(p, prec);
        }
        let v = big_valuation(n, p);
        Self::from_parts(p, v, n / p_pow(p, v), prec)
    }

    /// Builds `p^val * unit` (unit need not be reduced) at absolute precision `prec`.
    fn from_parts(p: u64, val: i64, unit: BigInt, prec: i64) -> Self {
        if val >= prec {
            return Self::zero(p, prec);
        }
        let modulus = p_pow(p, prec - val);
        let unit = unit.mod_floor(&modulus);
        if unit.is_zero() {
            return Self::zero(p, prec);
        }
        let extra = big_valuation(&unit, p);
        if extra == 0 {
            Padic { p, val, unit, prec }
        } else {
            Self::from_parts(p, val + extra, unit / p_pow(p, extra), prec)
        }
    }

    pub fn from_rational(p: u64, q: &BigRational, prec: i64) -> Self {
        if q.is_zero() {
            return Self::zero(p, prec);
        }
        let vn = big_valuation(q.numer(), p);
        let vd = big_valuation(q.denom(), p);
        let num = q.numer() / p_pow(p, vn);
        let den = q.denom() / p_pow(p, vd);
        let val = vn - vd;
        if val >= prec {
            return Self::zero(p, prec);
        }
        let modulus = p_pow(p, prec - val);
        let inv = mod_inverse(&den, &modulus).expect("denominator is a unit");
        Self::from_parts(p, val, num * inv, prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the value is known modulo `p^precision()`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Number of known digits past the valuation (0 for zero).
    pub fn relative_precision(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.prec - self.val
        }
    }

    /// True when the value is zero to its known precision.
    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// `None` for zero (to precision).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Valuation, with zero reported as its precision (a lower bound).
    pub fn valuation_lower_bound(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    pub fn is_integral(&self) -> bool {
        self.val >= 0
    }

    /// Reduce to a smaller absolute precision (never increases it).
    pub fn with_precision(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::from_parts(self.p, self.val, self.unit.clone(), prec)
    }

    /// Raise the recorded precision. Only sound when the value is known to
    /// be exact, e.g. an integer constant.
    pub fn lift_exact(&self, prec: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.p, prec.max(self.prec));
        }
        Padic { p: self.p, val: self.val, unit: self.unit.clone(), prec: prec.max(self.prec) }
    }

    /// Multiply by `p^k`, exactly.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.p, self.prec + k);
        }
        Padic { p: self.p, val: self.val + k, unit: self.unit.clone(), prec: self.prec + k }
    }

    /// Representative as a rational number `p^val * unit`.
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        if self.val >= 0 {
            BigRational::from_integer(&self.unit * p_pow(self.p, self.val))
        } else {
            BigRational::new(self.unit.clone(), p_pow(self.p, -self.val))
        }
    }

    /// Integer representative in `[0, p^n)` for an integral value; `n` is
    /// capped at the known precision.
    pub fn residue(&self, n: i64) -> Result<BigInt> {
        if self.val < 0 {
            return Err(Error::Domain("residue of a non-integral p-adic number".into()));
        }
        let n = n.min(self.prec);
        if n <= 0 {
            return Ok(BigInt::zero());
        }
        Ok((&self.unit * p_pow(self.p, self.val)).mod_floor(&p_pow(self.p, n)))
    }

    /// Residue as `u64` when it fits.
    pub fn residue_u64(&self, n: i64) -> Result<u64> {
        self.residue(n)?
            .to_u64()
            .ok_or_else(|| Error::Domain("residue does not fit in u64".into()))
    }

    /// Agreement with `other` modulo `p^n`.
    pub fn eq_mod(&self, other: &Padic, n: i64) -> bool {
        let d = self - other;
        d.is_zero() && d.prec >= n || d.val >= n
    }

    fn check_prime(&self, other: &Padic) {
        assert_eq!(self.p, other.p, "p-adic numbers over different primes");
    }

    pub fn add_ref(&self, other: &Padic) -> Padic {
        self.check_prime(other);
        let prec = self.prec.min(other.prec);
        let a0 = self.is_zero();
        let b0 = other.is_zero();
        if a0 && b0 {
            return Self::zero(self.p, prec);
        }
        if a0 {
            return other.with_precision(prec);
        }
        if b0 {
            return self.with_precision(prec);
        }
        let v = self.val.min(other.val);
        if v >= prec {
            return Self::zero(self.p, prec);
        }
        let x = &self.unit * p_pow(self.p, self.val - v) + &other.unit * p_pow(self.p, other.val - v);
        Self::from_parts(self.p, v, x, prec)
    }

    pub fn neg_ref(&self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_parts(self.p, self.val, -&self.unit, self.prec)
    }

    pub fn sub_ref(&self, other: &Padic) -> Padic {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Padic) -> Padic {
        self.check_prime(other);
        let prec = (self.val + other.prec).min(other.val + self.prec);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p, prec);
        }
        let val = self.val + other.val;
        if val >= prec {
            return Self::zero(self.p, prec);
        }
        let modulus = p_pow(self.p, prec - val);
        let unit = (&self.unit * &other.unit).mod_floor(&modulus);
        Padic { p: self.p, val, unit, prec }
    }

    /// Multiply by an exact integer.
    pub fn mul_int(&self, n: i64) -> Padic {
        self.mul_big(&BigInt::from(n))
    }

    /// Multiply by an exact big integer; precision grows by `v_p(n)`.
    pub fn mul_big(&self, n: &BigInt) -> Padic {
        if n.is_zero() {
            return Self::zero(self.p, i64::MAX / 4);
        }
        let v = big_valuation(n, self.p);
        if self.is_zero() {
            return Self::zero(self.p, self.prec + v);
        }
        Self::from_parts(self.p, self.val + v, &self.unit * (n / p_pow(self.p, v)), self.prec + v)
    }

    pub fn inv(&self) -> Result<Padic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = self.prec - self.val;
        let modulus = p_pow(self.p, rel);
        let unit = mod_inverse(&self.unit, &modulus).expect("unit is invertible");
        Ok(Padic { p: self.p, val: -self.val, unit, prec: rel - self.val })
    }

    pub fn div_ref(&self, other: &Padic) -> Result<Padic> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> Padic {
        if e == 0 {
            return Padic::one(self.p, self.prec.max(1));
        }
        let mut result: Option<Padic> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul_ref(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_ref(&base);
        }
        result.unwrap()
    }

    pub fn pow_i64(&self, e: i64) -> Result<Padic> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow((-e) as u64))
        }
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.prec)
        } else {
            write!(f, "{}^{} * {} + O({}^{})", self.p, self.val, self.unit, self.p, self.prec)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&Padic> for &Padic {
            type Output = Padic;
            fn $m(self, rhs: &Padic) -> Padic {
                self.$imp(rhs)
            }
        }
        impl std::ops::$tr<Padic> for Padic {
            type Output = Padic;
            fn $m(self, rhs: Padic) -> Padic {
                self.$imp(&rhs)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.neg_ref()
    }
}

impl std::ops::Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.neg_ref()
    }
}

/// Canonical JSON form. Field order: p, valuation, unit, precision.
/// Big integers are decimal strings; zero has a null valuation.
#[derive(Serialize, Deserialize)]
pub struct PadicRepr {
    pub p: u64,
    pub valuation: Option<i64>,
    pub unit: String,
    pub precision: i64,
}

impl From<&Padic> for PadicRepr {
    fn from(x: &Padic) -> Self {
        PadicRepr {
            p: x.p,
            valuation: x.valuation(),
            unit: x.unit.to_string(),
            precision: x.prec,
        }
    }
}

impl TryFrom<PadicRepr> for Padic {
    type Error = Error;
    fn try_from(r: PadicRepr) -> Result<Padic> {
        let unit: BigInt = r
            .unit
            .parse()
            .map_err(|_| Error::Serde(format!("bad unit string {:?}", r.unit)))?;
        match r.valuation {
            None => Ok(Padic::zero(r.p, r.precision)),
            Some(v) => {
                if unit.is_negative() || (&unit % BigInt::from(r.p)).is_zero() {
                    return Err(Error::Serde("unit must be a positive p-adic unit".into()));
                }
                Ok(Padic::from_parts(r.p, v, unit, r.precision))
            }
        }
    }
}

impl Serialize for Padic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Padic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PadicRepr::deserialize(d)?;
        Padic::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Teichmüller representative `ω(a)`: the `(p-1)`-th root of unity congruent to `a` mod p.
pub fn teichmuller(a: i64, p: u64, prec: i64) -> Result<Padic> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidInput(format!("{a} is divisible by {p}")));
    }
    if prec < 1 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    let modulus = p_pow(p, prec);
    let pb = BigInt::from(p);
    let mut x = BigInt::from(a).mod_floor(&modulus);
    // x -> x^p gains one correct digit per step
    for _ in 0..prec {
        x = x.modpow(&pb, &modulus);
    }
    Ok(Padic::from_int(p, &x, prec))
}

/// p-adic logarithm of `x ≡ 1 mod p` via the Mercator series.
///
/// Terms `t^i / i` are summed for `i <= T`, where `T` is the last index with
/// `i*v(t) - v_p(i) < prec(x)`. Every later term has valuation at least
/// `prec(x)` because `i*v - floor(log_p i)` is nondecreasing for `v >= 1`.
pub fn padic_log(x: &Padic) -> Result<Padic> {
    let p = x.prime();
    let one = Padic::one(p, x.precision().max(1));
    let t = x - &one;
    if x.precision() < 1 || t.valuation_lower_bound() < 1 {
        return Err(Error::Domain("log requires x ≡ 1 mod p".into()));
    }
    if t.is_zero() {
        return Ok(Padic::zero(p, x.precision()));
    }
    let v = t.valuation_lower_bound();
    let target = x.precision();
    let tail_bound = |i: u64| (i as i64) * v - super::numtheory::floor_log(i, p) as i64;
    let mut terms = 0u64;
    while tail_bound(terms + 1) < target {
        terms += 1;
    }
    let mut acc = Padic::zero(p, target + 64);
    let mut power = t.clone();
    for i in 1..=terms {
        let term = power.div_ref(&Padic::from_i64(p, i as i64, target + 64))?;
        acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        power = &power * &t;
    }
    Ok(acc.with_precision(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: i64, prec: i64) -> Padic {
        Padic::from_i64(p, n, prec)
    }

    #[test]
    fn teichmuller_values() {
        assert_eq!(teichmuller(1, 5, 2).unwrap().residue(2).unwrap(), BigInt::from(1));
        assert_eq!(teichmuller(2, 5, 2).unwrap().residue(2).unwrap(), BigInt::from(7));
        assert_eq!(teichmuller(4, 5, 2).unwrap().residue(2).unwrap(), BigInt::from(24));
        assert!(teichmuller(10, 5, 2).is_err());
    }

    #[test]
    fn log_examples() {
        let l = padic_log(&z(3, 4, 3)).unwrap();
        assert_eq!(l.residue(3).unwrap(), BigInt::from(21));
        assert_eq!(l.precision(), 3);
        assert!(padic_log(&z(3, 1, 5)).unwrap().is_zero());
        assert!(padic_log(&z(3, 2, 5)).is_err());
    }

    #[test]
    fn precision_tracking() {
        // 1 - 1 loses everything known: result is O(p^prec).
        let a = z(5, 126, 3);
        let b = z(5, 1, 3);
        let d = &a - &b;
        assert_eq!(d.valuation(), None);
        assert_eq!(d.precision(), 3);
        // multiplication by p^2 adds two digits of absolute precision
        let c = a.mul_ref(&z(5, 25, 10));
        assert_eq!(c.precision(), 5);
        // division by p loses one
        let e = a.div_ref(&z(5, 5, 10)).unwrap();
        assert_eq!(e.precision(), 2);
        assert_eq!(e.valuation(), Some(-1));
    }

    #[test]
    fn rational_roundtrip() {
        let q = BigRational::new(BigInt::from(7), BigInt::from(45));
        let x = Padic::from_rational(3, &q, 10);
        assert_eq!(x.valuation(), Some(-2));
        let back = x.mul_ref(&z(3, 45, 20));
        assert!(back.eq_mod(&z(3, 7, 20), 8));
    }

    #[test]
    fn json_roundtrip() {
        let x = Padic::from_rational(7, &BigRational::new(BigInt::from(-3), BigInt::from(49)), 9);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"p\":7,\"valuation\":-2,\"unit\":"));
        let y: Padic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
