//! Elements of cyclotomic fields `Q(ζ_m)` in the power basis `1, ζ, …, ζ^{φ(m)-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{divisors, gcd, lcm, mobius, totient};
use super::Rational;
use crate::error::{Error, Result};

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    // Φ_m = Π_{d | m} (x^d - 1)^{μ(m/d)}
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => {
                let mut next = vec![0i128; num.len() + d as usize];
                for (i, &c) in num.iter().enumerate() {
                    next[i + d as usize] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // exact division by x^d - 1, from the top
        let n = num.len() - 1;
        let mut q = vec![0i128; n + 1 - d];
        let mut r = num.clone();
        for i in (d..=n).rev() {
            let c = r[i];
            q[i - d] = c;
            r[i] -= c;
            r[i - d] += c;
        }
        debug_assert!(r.iter().all(|&c| c == 0));
        num = q;
    }
    num.into_iter().map(|c| c as i64).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
}

/// Reduce an integer polynomial modulo the monic `phi` (checked arithmetic).
fn reduce_i128(mut r: Vec<i128>, phi: &[i64]) -> Option<Vec<i128>> {
    let d = phi.len() - 1;
    let support: Vec<(usize, i128)> = phi[..d]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c as i128))
        .collect();
    for i in (d..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        r[i] = 0;
        for &(j, pj) in &support {
            let t = c.checked_mul(pj)?;
            r[i - d + j] = r[i - d + j].checked_sub(t)?;
        }
    }
    r.truncate(d);
    r.resize(d, 0);
    Some(r)
}

fn reduce_big(mut r: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let d = phi.len() - 1;
    for i in (d..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut r[i]);
        for (j, &pj) in phi[..d].iter().enumerate() {
            if pj != 0 {
                r[i - d + j] -= &c * pj;
            }
        }
    }
    r.truncate(d);
    r.resize(d, BigInt::zero());
    r
}

fn reduce_rational(mut r: Vec<Rational>, phi: &[i64]) -> Vec<Rational> {
    let d = phi.len() - 1;
    for i in (d..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut r[i], Rational::zero());
        for (j, &pj) in phi[..d].iter().enumerate() {
            if pj != 0 {
                r[i - d + j] -= &c * Rational::from_integer(pj.into());
            }
        }
    }
    r.truncate(d);
    r.resize(d, Rational::zero());
    r
}

/// Split rationals into a common denominator and integer numerators.
fn integerize(v: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (den, nums)
}

impl CyclotomicNumber {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor >= 1);
        let d = totient(conductor) as usize;
        CyclotomicNumber { conductor, coeffs: vec![Rational::zero(); d] }
    }

    pub fn from_rational(conductor: u64, q: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    pub fn from_i64(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(n.into()))
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_i64(conductor, 1)
    }

    /// `ζ_m^e`.
    pub fn root_of_unity(conductor: u64, e: i64) -> Self {
        Self::from_root_sum(conductor, [(e, Rational::one())])
    }

    /// `Σ c · ζ_m^e` over the given `(e, c)` terms.
    pub fn from_root_sum<I>(conductor: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let m = conductor as i64;
        let mut dense = vec![Rational::zero(); conductor as usize];
        for (e, c) in terms {
            dense[e.rem_euclid(m) as usize] += c;
        }
        Self::from_dense(conductor, dense)
    }

    /// Reduce an arbitrary-length coefficient vector modulo `Φ_m`.
    pub fn from_dense(conductor: u64, dense: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        CyclotomicNumber { conductor, coeffs: reduce_rational(dense, &phi) }
    }

    pub fn from_coefficients(conductor: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != totient(conductor) as usize {
            return Err(Error::InvalidInput(format!(
                "conductor {conductor} needs {} coefficients, got {}",
                totient(conductor),
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { conductor, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Image in `Q(ζ_n)` for a multiple `n` of the conductor.
    pub fn embed(&self, n: u64) -> Result<Self> {
        if n % self.conductor != 0 {
            return Err(Error::Incompatible(format!(
                "cannot embed conductor {} into {n}",
                self.conductor
            )));
        }
        if n == self.conductor {
            return Ok(self.clone());
        }
        let step = (n / self.conductor) as i64;
        Ok(Self::from_root_sum(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 * step, c.clone())),
        ))
    }

    /// Bring both operands to the compositum conductor.
    fn align(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let n = lcm(self.conductor, other.conductor);
        (self.embed(n).unwrap(), other.embed(n).unwrap())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = self.align(other);
            return a.add_ref(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNumber { conductor: self.conductor, coeffs }
    }

    pub fn neg_ref(&self) -> Self {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = self.align(other);
            return a.mul_ref(&b);
        }
        if let Some(q) = other.to_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.to_rational() {
            return other.scale(&q);
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let (da, na) = integerize(&self.coeffs);
        let (db, nb) = integerize(&other.coeffs);
        let den = Rational::from_integer(da * db);
        let len = na.len() + nb.len() - 1;

        let small = |v: &[BigInt]| -> Option<Vec<i64>> { v.iter().map(|c| c.to_i64()).collect() };
        if let (Some(a), Some(b)) = (small(&na), small(&nb)) {
            let ma = a.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u128;
            let mb = b.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u128;
            let bound = ma.saturating_mul(mb).saturating_mul(a.len() as u128);
            if bound < (1u128 << 100) {
                let mut prod = vec![0i128; len];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        prod[i + j] += x as i128 * y as i128;
                    }
                }
                if let Some(r) = reduce_i128(prod, &phi) {
                    let coeffs = r
                        .into_iter()
                        .map(|c| Rational::from_integer(BigInt::from(c)) / &den)
                        .collect();
                    return CyclotomicNumber { conductor: self.conductor, coeffs };
                }
            }
        }
        let mut prod = vec![BigInt::zero(); len];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let coeffs = reduce_big(prod, &phi)
            .into_iter()
            .map(|c| Rational::from_integer(c) / &den)
            .collect();
        CyclotomicNumber { conductor: self.conductor, coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.conductor);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        Self::from_root_sum(
            self.conductor,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (-(i as i64), c.clone())),
        )
    }

    /// Galois action `ζ ↦ ζ^a` for `a` prime to the conductor.
    pub fn galois(&self, a: i64) -> Result<Self> {
        if gcd(a.rem_euclid(self.conductor as i64) as u64, self.conductor) != 1 && self.conductor > 1 {
            return Err(Error::InvalidInput(format!("{a} not prime to {}", self.conductor)));
        }
        Ok(Self::from_root_sum(
            self.conductor,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 * a, c.clone())),
        ))
    }

    /// Multiplicative inverse, by solving the linear system of multiplication-by-self.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let d = self.coeffs.len();
        // column j = self * ζ^j
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|j| self.mul_ref(&Self::root_of_unity(self.conductor, j as i64)).coeffs)
            .collect();
        let mut a: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(CyclotomicNumber { conductor: self.conductor, coeffs: a.into_iter().map(|r| r[d].clone()).collect() })
    }

    /// Value under the complex embedding `ζ_m ↦ exp(2πi/m)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * j as f64 / m;
            (re + x * t.cos(), im + x * t.sin())
        })
    }

    /// Whether all coefficients are integers (sufficient for algebraic integrality
    /// in the power basis).
    pub fn has_integral_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Maximum absolute value of the numerators, a crude height.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.numer().abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.conductor),
                _ => format!("{c}*z{}^{i}", self.conductor),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! cyc_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(rhs)
            }
        }
        impl std::ops::$tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$imp(&rhs)
            }
        }
    };
}
cyc_binop!(Add, add, add_ref);
cyc_binop!(Sub, sub, sub_ref);
cyc_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}

/// Canonical JSON form: `{conductor, coefficients: ["num/den", …]}`.
#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coefficients: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.conductor,
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(d)?;
        let coeffs = r
            .coefficients
            .iter()
            .map(|s| super::rational_from_str(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CyclotomicNumber::from_coefficients(r.conductor, coeffs).map_err(serde::de::Error::custom)
    }
}
