//! The totally ramified extensions `Q_p(ζ_{p^n})`, in the basis of powers of
//! the uniformizer `π = ζ - 1`.
//!
//! Level `n` has degree `e = p^{n-1}(p-1)`; level 0 is `Q_p` itself (with
//! `π = 0`). Elements are reduced modulo the Eisenstein polynomial
//! `Φ_{p^n}(1 + π)`, so the representation is canonical.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::padic::{Padic, PadicRepr};
use super::Rational;
use crate::error::{Error, Result};

thread_local! {
    static MINPOLY: RefCell<HashMap<(u64, u32), Rc<Vec<BigInt>>>> = RefCell::new(HashMap::new());
}

/// Degree of `Q_p(ζ_{p^n})` over `Q_p`.
pub fn ramification_degree(p: u64, level: u32) -> usize {
    if level == 0 {
        1
    } else {
        (p.pow(level - 1) * (p - 1)) as usize
    }
}

/// Coefficients of the minimal polynomial of `π`, lowest degree first (monic).
pub fn minimal_polynomial(p: u64, level: u32) -> Rc<Vec<BigInt>> {
    MINPOLY.with(|cell| {
        cell.borrow_mut()
            .entry((p, level))
            .or_insert_with(|| Rc::new(compute_minpoly(p, level)))
            .clone()
    })
}

fn compute_minpoly(p: u64, level: u32) -> Vec<BigInt> {
    if level == 0 {
        return vec![BigInt::zero(), BigInt::one()];
    }
    // Φ_{p^n}(1+x) = Σ_{i<p} (1+x)^{i·p^{n-1}}
    let step = p.pow(level - 1) as usize;
    let e = ramification_degree(p, level);
    let mut out = vec![BigInt::zero(); e + 1];
    for i in 0..p as usize {
        let n = i * step;
        let mut binom = BigInt::one();
        for k in 0..=n {
            out[k] += &binom;
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct RamifiedPadic {
    p: u64,
    level: u32,
    coeffs: Vec<Padic>,
}

impl RamifiedPadic {
    pub fn zero(p: u64, level: u32, prec: i64) -> Self {
        let e = ramification_degree(p, level);
        RamifiedPadic { p, level, coeffs: vec![Padic::zero(p, prec); e] }
    }

    pub fn from_padic(level: u32, x: &Padic) -> Self {
        let mut z = Self::zero(x.prime(), level, x.precision());
        z.coeffs[0] = x.clone();
        z
    }

    pub fn one(p: u64, level: u32, prec: i64) -> Self {
        Self::from_padic(level, &Padic::one(p, prec))
    }

    /// The uniformizer `π = ζ - 1` (zero at level 0).
    pub fn pi(p: u64, level: u32, prec: i64) -> Self {
        let mut z = Self::zero(p, level, prec);
        if level > 0 {
            z.coeffs[1] = Padic::one(p, prec);
        }
        z
    }

    /// The pinned primitive `p^n`-th root of unity `ζ = 1 + π`.
    pub fn zeta(p: u64, level: u32, prec: i64) -> Self {
        Self::one(p, level, prec).add_ref(&Self::pi(p, level, prec))
    }

    /// `ζ^g`; for `g` prime to `p` this is another primitive root.
    pub fn wild_root(p: u64, level: u32, g: u64, prec: i64) -> Self {
        Self::zeta(p, level, prec).pow(g)
    }

    pub fn from_coefficients(p: u64, level: u32, coeffs: Vec<Padic>) -> Result<Self> {
        let e = ramification_degree(p, level);
        if coeffs.len() != e || coeffs.iter().any(|c| c.prime() != p) {
            return Err(Error::InvalidInput(format!(
                "level {level} over {p} needs {e} coefficients"
            )));
        }
        Ok(RamifiedPadic { p, level, coeffs })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Padic::is_zero)
    }

    /// The value as an element of `Q_p`, when it has no `π` terms.
    pub fn to_padic(&self) -> Option<Padic> {
        self.coeffs[1..].iter().all(Padic::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Valuation normalized so that `v(p) = 1`; `None` when zero to precision.
    pub fn valuation(&self) -> Option<Rational> {
        let e = self.coeffs.len() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.valuation().map(|v| v * e + i as i64))
            .min()
            .map(|n| Rational::new(n.into(), e.into()))
    }

    /// Absolute precision in units of `v(p)`: the element is known modulo
    /// `π^{e·precision}`.
    pub fn precision(&self) -> Rational {
        let e = self.coeffs.len() as i64;
        let n = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.precision().saturating_mul(e).saturating_add(i as i64))
            .min()
            .unwrap();
        Rational::new(n.into(), e.into())
    }

    /// Smallest coefficient precision.
    pub fn coefficient_precision(&self) -> i64 {
        self.coeffs.iter().map(Padic::precision).min().unwrap()
    }

    pub fn with_precision(&self, prec: i64) -> Self {
        RamifiedPadic {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.with_precision(prec)).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.level != other.level {
            return Err(Error::Incompatible(format!(
                "Q_{}(ζ_{}^{}) vs Q_{}(ζ_{}^{})",
                self.p, self.p, self.level, other.p, other.p, other.level
            )));
        }
        Ok(())
    }

    /// Image at a higher level (ζ_{p^n} = ζ_{p^m}^{p^{m-n}}).
    pub fn lift_to(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::Incompatible("cannot lower the level".into()));
        }
        if level == self.level {
            return Ok(self.clone());
        }
        let prec = self.coefficient_precision();
        let step = if self.level == 0 { 0 } else { self.p.pow(level - self.level) };
        // old π = ζ^step - 1
        let x = if self.level == 0 {
            Self::zero(self.p, level, prec)
        } else {
            Self::zeta(self.p, level, prec).pow(step).sub_ref(&Self::one(self.p, level, prec))
        };
        Ok(self.substitute(&x))
    }

    /// Evaluate the π-polynomial of `self` at `x` (Horner).
    fn substitute(&self, x: &Self) -> Self {
        let mut acc = Self::zero(x.p, x.level, i64::MAX / 4);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(&Self::from_padic(x.level, c));
        }
        acc
    }

    /// Galois action `ζ ↦ ζ^a`, `a` prime to `p`.
    pub fn galois(&self, a: u64) -> Result<Self> {
        if a % self.p == 0 {
            return Err(Error::InvalidInput(format!("{a} is divisible by {}", self.p)));
        }
        if self.level == 0 {
            return Ok(self.clone());
        }
        let prec = self.coefficient_precision();
        let x = Self::wild_root(self.p, self.level, a, prec).sub_ref(&Self::one(self.p, self.level, prec));
        Ok(self.substitute(&x))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.check(other).expect("compatible ramified elements");
        RamifiedPadic {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg_ref(&self) -> Self {
        RamifiedPadic { p: self.p, level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, c: &Padic) -> Self {
        RamifiedPadic { p: self.p, level: self.level, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Reduce a coefficient vector of any length modulo the minimal polynomial.
    fn reduce(p: u64, level: u32, mut v: Vec<Padic>) -> Self {
        let mp = minimal_polynomial(p, level);
        let e = mp.len() - 1;
        for i in (e..v.len()).rev() {
            if v[i].is_zero() && v[i].precision() >= i64::MAX / 8 {
                continue;
            }
            let c = v[i].clone();
            for j in 0..e {
                if !mp[j].is_zero() {
                    v[i - e + j] = v[i - e + j].sub_ref(&c.mul_big(&mp[j]));
                }
            }
        }
        v.truncate(e);
        RamifiedPadic { p, level, coeffs: v }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.check(other).expect("compatible ramified elements");
        let e = self.coeffs.len();
        if e == 1 {
            return RamifiedPadic { p: self.p, level: self.level, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let top = i64::MAX / 4;
        let mut prod = vec![Padic::zero(self.p, top); 2 * e - 1];
        // zero coefficients still carry precision, so they must be multiplied too
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::reduce(self.p, self.level, prod)
    }

    /// Multiply by `a + bπ`, in `O(e)` coefficient operations.
    pub fn mul_linear(&self, a: &Padic, b: &Padic) -> Self {
        let e = self.coeffs.len();
        if self.level == 0 {
            return self.scale(a);
        }
        let mut v: Vec<Padic> = self.coeffs.iter().map(|c| c * a).collect();
        v.push(Padic::zero(self.p, i64::MAX / 4));
        for i in 0..e {
            v[i + 1] = v[i + 1].add_ref(&self.coeffs[i].mul_ref(b));
        }
        Self::reduce(self.p, self.level, v)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let prec = self.coefficient_precision().max(1);
        let mut acc = Self::one(self.p, self.level, prec);
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
}

/// Rings in which `Φ_{p^m}` can be evaluated.
pub trait PadicRing: Clone {
    fn ring_one(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_prime(&self) -> u64;
}

impl PadicRing for Padic {
    fn ring_one(&self) -> Self {
        Padic::one(self.prime(), self.precision().max(1))
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_prime(&self) -> u64 {
        self.prime()
    }
}

impl PadicRing for RamifiedPadic {
    fn ring_one(&self) -> Self {
        RamifiedPadic::one(self.p, self.level, self.coefficient_precision().max(1))
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn ring_prime(&self) -> u64 {
        self.p
    }
}

/// `Φ_{p^m}(x) = Σ_{i<p} x^{i·p^{m-1}}`.
pub fn cyclotomic_poly_eval<T: PadicRing>(m: u32, x: &T) -> Result<T> {
    if m == 0 {
        return Err(Error::InvalidInput("cyclotomic index must be at least 1".into()));
    }
    let p = x.ring_prime();
    let mut y = x.clone();
    for _ in 1..m {
        let mut z = y.ring_one();
        for _ in 0..p {
            z = z.ring_mul(&y);
        }
        y = z;
    }
    let mut acc = y.ring_one();
    let mut power = y.ring_one();
    for _ in 1..p {
        power = power.ring_mul(&y);
        acc = acc.ring_add(&power);
    }
    Ok(acc)
}

impl fmt::Debug for RamifiedPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RamifiedPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*pi"),
                _ => format!("({c})*pi^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "O(p^{})", self.coefficient_precision())
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RamifiedRepr {
    p: u64,
    level: u32,
    coefficients: Vec<PadicRepr>,
}

impl Serialize for RamifiedPadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RamifiedRepr {
            p: self.p,
            level: self.level,
            coefficients: self.coeffs.iter().map(PadicRepr::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RamifiedPadic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RamifiedRepr::deserialize(d)?;
        let coeffs = r
            .coefficients
            .into_iter()
            .map(Padic::try_from)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RamifiedPadic::from_coefficients(r.p, r.level, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_is_eisenstein() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
            let mp = minimal_polynomial(p, n);
            assert_eq!(mp.len() - 1, ramification_degree(p, n));
            assert!(mp.last().unwrap().is_one());
            assert_eq!(mp[0], BigInt::from(p));
            for c in &mp[..mp.len() - 1] {
                assert!((c % BigInt::from(p)).is_zero());
            }
        }
    }

    #[test]
    fn zeta_is_a_root_of_unity() {
        let z = RamifiedPadic::zeta(3, 2, 10);
        let one = RamifiedPadic::one(3, 2, 10);
        assert!(z.pow(9).sub_ref(&one).is_zero());
        assert!(!z.pow(3).sub_ref(&one).is_zero());
        let phi = cyclotomic_poly_eval(2, &z).unwrap();
        assert!(phi.is_zero());
    }

    #[test]
    fn phi_examples() {
        let one = Padic::one(5, 10);
        for m in 1..4 {
            let v = cyclotomic_poly_eval(m, &one).unwrap();
            assert!(v.eq_mod(&Padic::from_i64(5, 5, 10), 10));
        }
        let x = Padic::from_i64(3, 4, 3);
        let v = cyclotomic_poly_eval(1, &x).unwrap();
        assert_eq!(v.residue(3).unwrap(), BigInt::from(21));
        let z = RamifiedPadic::zeta(7, 1, 8);
        assert!(cyclotomic_poly_eval(1, &z).unwrap().is_zero());
    }

    #[test]
    fn valuation_of_pi() {
        let pi = RamifiedPadic::pi(5, 2, 10);
        assert_eq!(pi.valuation(), Some(Rational::new(1.into(), 20.into())));
        let p = pi.pow(20);
        assert_eq!(p.valuation(), Some(Rational::one()));
    }

    #[test]
    fn galois_and_lift() {
        let z = RamifiedPadic::zeta(3, 1, 12);
        let z2 = z.galois(2).unwrap();
        assert_eq!(z2, z.pow(2));
        let lifted = z.lift_to(2).unwrap();
        assert_eq!(lifted, RamifiedPadic::zeta(3, 2, 12).pow(3));
    }

    #[test]
    fn linear_multiplication_matches_general() {
        let x = RamifiedPadic::zeta(5, 2, 10).pow(7);
        let a = Padic::from_i64(5, 3, 10);
        let b = Padic::from_i64(5, -11, 10);
        let lin = RamifiedPadic::from_padic(2, &a).add_ref(&RamifiedPadic::pi(5, 2, 10).scale(&b));
        assert_eq!(x.mul_linear(&a, &b), x.mul_ref(&lin));
    }

    #[test]
    fn json_roundtrip() {
        let x = RamifiedPadic::zeta(3, 1, 5);
        let s = serde_json::to_string(&x).unwrap();
        let y: RamifiedPadic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
