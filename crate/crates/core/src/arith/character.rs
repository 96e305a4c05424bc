//! Dirichlet characters with values in cyclotomic fields, and Gauss sums.

use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicNumber;
use super::numtheory::{divisors, gcd, is_prime, kronecker, lcm, primitive_root_prime_power, totient};
use super::Rational;
use crate::error::{Error, Result};
use num_traits::One;

/// A Dirichlet character mod `modulus`, stored as a table of exponents:
/// `χ(a) = ζ_order^{exps[a]}` for units `a`, and `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exps: Vec<Option<u64>>,
    /// For characters mod `p^n` built from a generator: `(g, j)` with `χ(g) = ζ_{φ(p^n)}^j`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    generator: Option<(u64, u64)>,
}

impl DirichletCharacter {
    pub fn trivial() -> Self {
        DirichletCharacter { modulus: 1, order: 1, exps: vec![Some(0)], generator: None }
    }

    /// The Kronecker character `(d / ·)` of a fundamental discriminant `d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 1 {
            return Ok(Self::trivial());
        }
        let f = d.unsigned_abs();
        let exps = (0..f)
            .map(|a| match kronecker(d, a) {
                1 => Some(0),
                -1 => Some(1),
                _ => None,
            })
            .collect();
        let chi = DirichletCharacter { modulus: f, order: 2, exps, generator: None };
        if chi.conductor() != f {
            return Err(Error::NotPrimitive(format!("{d} is not a fundamental discriminant")));
        }
        Ok(chi)
    }

    /// A real character from its table of values `±1` (`None` off the units).
    pub fn from_signs(modulus: u64, values: &[Option<i64>]) -> Result<Self> {
        if values.len() as u64 != modulus || modulus == 0 {
            return Err(Error::InvalidInput("sign table length differs from the modulus".into()));
        }
        let exps = values
            .iter()
            .enumerate()
            .map(|(a, v)| match (v, gcd(a as u64, modulus) == 1 || modulus == 1) {
                (Some(1), true) => Ok(Some(0)),
                (Some(-1), true) => Ok(Some(1)),
                (None, false) => Ok(None),
                _ => Err(Error::InvalidInput(format!("bad sign table entry at {a}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DirichletCharacter { modulus, order: 2, exps, generator: None }.normalize_order())
    }

    /// The character mod `p^n` (p odd) with `χ(g) = ζ_{φ(p^n)}^j`, where `g` is the
    /// least primitive root mod `p^2`.
    pub fn prime_power(p: u64, n: u32, j: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
        }
        if n == 0 {
            return Ok(Self::trivial());
        }
        let q = p.pow(n);
        let phi = totient(q);
        let j = j % phi;
        let order = phi / gcd(j, phi);
        let g = primitive_root_prime_power(p);
        let mut exps = vec![None; q as usize];
        let mut a = 1u64;
        for k in 0..phi {
            // ζ_φ^{jk} = ζ_order^{jk·order/φ}
            exps[a as usize] = Some((j * k % phi) * order / phi % order.max(1));
            a = a * g % q;
        }
        Ok(DirichletCharacter { modulus: q, order, exps, generator: Some((g, j)) })
    }

    /// All characters mod `p^n` of exact conductor `p^n`.
    pub fn primitive_prime_power(p: u64, n: u32) -> Result<Vec<Self>> {
        if n == 0 {
            return Ok(vec![Self::trivial()]);
        }
        let phi = totient(p.pow(n));
        (0..phi)
            .map(|j| Self::prime_power(p, n, j))
            .filter(|c| c.as_ref().map_or(true, |c| c.is_primitive()))
            .collect()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> Option<(u64, u64)> {
        self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `χ(a) = ζ_order^e`, or `None` when `gcd(a, f) > 1`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.exps[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, a: i64) -> Option<CyclotomicNumber> {
        self.exponent(a)
            .map(|e| CyclotomicNumber::root_of_unity(self.order.max(1), e as i64))
    }

    /// `χ(a)` as an integer, for characters of order at most 2.
    pub fn value_int(&self, a: i64) -> Option<i64> {
        assert!(self.order <= 2, "character is not real-valued");
        self.exponent(a).map(|e| if e == 0 { 1 } else { -1 })
    }

    /// `χ(-1) = ±1`.
    pub fn parity(&self) -> i64 {
        match self.exponent(-1) {
            Some(0) => 1,
            Some(e) if 2 * e == self.order => -1,
            _ => unreachable!("χ(-1) is ±1"),
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        for d in divisors(f) {
            // trivial on units ≡ 1 mod d
            let ok = (0..f / d)
                .map(|t| 1 + t * d)
                .filter(|&a| gcd(a % f, f) == 1 || f == 1)
                .all(|a| self.exps[(a % f) as usize] == Some(0));
            if ok {
                return d;
            }
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    pub fn conj(&self) -> Self {
        let o = self.order;
        DirichletCharacter {
            modulus: self.modulus,
            order: o,
            exps: self.exps.iter().map(|e| e.map(|e| (o - e) % o)).collect(),
            generator: self.generator.map(|(g, j)| {
                let phi = totient(self.modulus);
                (g, (phi - j) % phi)
            }),
        }
    }

    /// Pointwise product, as a character mod `lcm` of the moduli (not
    /// necessarily primitive).
    pub fn mul(&self, other: &Self) -> Self {
        let f = lcm(self.modulus, other.modulus);
        let o = lcm(self.order, other.order);
        let (sa, sb) = (o / self.order, o / other.order);
        let exps = (0..f as i64)
            .map(|a| match (self.exponent(a), other.exponent(a)) {
                (Some(x), Some(y)) => Some((x * sa + y * sb) % o),
                _ => None,
            })
            .collect();
        DirichletCharacter { modulus: f, order: o, exps, generator: None }.normalize_order()
    }

    pub fn pow(&self, n: u64) -> Self {
        let o = self.order;
        DirichletCharacter {
            modulus: self.modulus,
            order: o,
            exps: self.exps.iter().map(|e| e.map(|e| e * (n % o) % o)).collect(),
            generator: None,
        }
        .normalize_order()
    }

    /// Shrink `order` to the true order of the value group.
    fn normalize_order(mut self) -> Self {
        let g = self.exps.iter().flatten().fold(self.order, |acc, &e| gcd(acc, e));
        if g > 1 {
            self.order /= g;
            for e in self.exps.iter_mut().flatten() {
                *e /= g;
            }
        }
        self
    }

    /// The primitive character inducing `self`.
    pub fn primitive(&self) -> Self {
        let c = self.conductor();
        if c == self.modulus {
            return self.clone();
        }
        let exps = (0..c)
            .map(|a| {
                if gcd(a, c) != 1 && c > 1 {
                    return None;
                }
                // lift a to a unit mod f
                let mut b = a;
                while gcd(b, self.modulus) != 1 {
                    b += c;
                }
                self.exps[b as usize]
            })
            .collect();
        DirichletCharacter { modulus: c, order: self.order, exps, generator: None }.normalize_order()
    }

    /// Values of `χ` as `p`-adic integers: an exponent table into the
    /// `(p-1)`-th roots of unity `ω(g)^i`. Requires `order | p - 1`; the
    /// embedding sends `ζ_order` to `ω(g)^{(p-1)/order}` for the least
    /// primitive root `g` mod `p`.
    pub fn padic_root_exponents(&self, p: u64) -> Result<Vec<Option<u64>>> {
        if (p - 1) % self.order != 0 {
            return Err(Error::InvalidInput(format!(
                "character of order {} has no values in Z_{p}",
                self.order
            )));
        }
        let s = (p - 1) / self.order;
        Ok(self.exps.iter().map(|e| e.map(|e| e * s)).collect())
    }
}

/// `τ(θ) = Σ_{a mod f} θ(a) ζ_f^a` for a primitive character `θ` mod `f`.
pub fn gauss_sum(theta: &DirichletCharacter) -> Result<CyclotomicNumber> {
    if theta.modulus == 1 {
        return Ok(CyclotomicNumber::one(1));
    }
    if !theta.is_primitive() {
        return Err(Error::NotPrimitive(format!(
            "character mod {} has conductor {}",
            theta.modulus,
            theta.conductor()
        )));
    }
    let f = theta.modulus;
    let o = theta.order;
    let m = lcm(f, o);
    let (sf, so) = ((m / f) as i64, (m / o) as i64);
    Ok(CyclotomicNumber::from_root_sum(
        m,
        (0..f as i64).filter_map(|a| theta.exponent(a).map(|e| (a * sf + e as i64 * so, Rational::one()))),
    ))
}

/// Check `τ(θ)τ(θ̄) = θ(-1)·f` exactly.
pub fn gauss_norm_identity(theta: &DirichletCharacter) -> Result<bool> {
    let t = gauss_sum(theta)?;
    let tb = gauss_sum(&theta.conj())?;
    let rhs = CyclotomicNumber::from_i64(1, theta.parity() * theta.modulus as i64);
    Ok((&t * &tb).sub_ref(&rhs).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_characters() {
        let chi = DirichletCharacter::quadratic(-4).unwrap();
        assert_eq!(chi.value_int(1), Some(1));
        assert_eq!(chi.value_int(3), Some(-1));
        assert_eq!(chi.value_int(2), None);
        assert_eq!(chi.parity(), -1);
        assert!(DirichletCharacter::quadratic(-12).is_err());
        assert!(DirichletCharacter::quadratic(12).unwrap().is_even());
    }

    #[test]
    fn primitive_counts() {
        // φ(p^n) - φ(p^{n-1}) primitive characters for n >= 2, p - 2 for n = 1
        assert_eq!(DirichletCharacter::primitive_prime_power(5, 1).unwrap().len(), 3);
        assert_eq!(DirichletCharacter::primitive_prime_power(3, 2).unwrap().len(), 4);
        assert_eq!(DirichletCharacter::primitive_prime_power(7, 2).unwrap().len(), 36);
    }

    #[test]
    fn gauss_sum_examples() {
        assert_eq!(gauss_sum(&DirichletCharacter::trivial()).unwrap(), CyclotomicNumber::one(1));
        let q3 = DirichletCharacter::prime_power(3, 1, 1).unwrap();
        let tau = gauss_sum(&q3).unwrap();
        let z = CyclotomicNumber::root_of_unity(3, 1);
        assert_eq!(tau.embed(6).unwrap(), (&z - &z.pow(2)).embed(6).unwrap());
        assert_eq!(tau.pow(2).to_rational(), Some(Rational::from_integer((-3).into())));
        let not_prim = DirichletCharacter::prime_power(3, 2, 3).unwrap();
        assert!(gauss_sum(&not_prim).is_err());
    }

    #[test]
    fn gauss_norms_small() {
        for p in [3, 5] {
            for n in 1..=2 {
                for theta in DirichletCharacter::primitive_prime_power(p, n).unwrap() {
                    assert!(gauss_norm_identity(&theta).unwrap(), "p={p} n={n} {:?}", theta.generator());
                }
            }
        }
    }

    #[test]
    fn products_and_conductors() {
        let a = DirichletCharacter::quadratic(-4).unwrap();
        let b = DirichletCharacter::quadratic(-3).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.modulus(), 12);
        assert!(ab.is_primitive());
        assert_eq!(ab.parity(), 1);
        let sq = a.pow(2);
        assert!(sq.is_trivial());
        assert_eq!(sq.primitive(), DirichletCharacter::trivial());
    }
}
