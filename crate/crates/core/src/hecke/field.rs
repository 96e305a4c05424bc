//! Imaginary quadratic fields of class number one and their integers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::character::{gauss_sum, DirichletCharacter};
use crate::arith::numtheory::kronecker;
use crate::arith::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};

pub const CLASS_NUMBER_ONE: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

/// `K = Q(√d)` with `O_K = Z[ω]`, `ω² = tω - n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImagQuadField {
    d: i64,
}

/// `a + bω` in a fixed field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i128,
    pub b: i128,
}

impl QuadInt {
    pub const fn new(a: i128, b: i128) -> Self {
        QuadInt { a, b }
    }

    pub fn int(a: i128) -> Self {
        QuadInt { a, b: 0 }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}w"),
            (a, b) if b < 0 => write!(f, "{a}-{}w", -b),
            (a, b) => write!(f, "{a}+{b}w"),
        }
    }
}

impl ImagQuadField {
    pub fn new(d: i64) -> Result<Self> {
        if !CLASS_NUMBER_ONE.contains(&d) {
            return Err(Error::InvalidInput(format!(
                "Q(sqrt({d})) is not an imaginary quadratic field of class number one"
            )));
        }
        Ok(ImagQuadField { d })
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    /// `(t, n)` with `ω² = tω - n`.
    fn trace_norm_omega(&self) -> (i128, i128) {
        let d = self.d as i128;
        if d % 4 == 0 {
            (0, -d / 4)
        } else {
            (1, (1 - d) / 4)
        }
    }

    pub fn mul(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        let (t, n) = self.trace_norm_omega();
        let be = x.b * y.b;
        QuadInt { a: x.a * y.a - be * n, b: x.a * y.b + x.b * y.a + be * t }
    }

    pub fn add(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        QuadInt { a: x.a + y.a, b: x.b + y.b }
    }

    pub fn sub(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        QuadInt { a: x.a - y.a, b: x.b - y.b }
    }

    pub fn pow(&self, x: QuadInt, e: u32) -> QuadInt {
        (0..e).fold(QuadInt::int(1), |acc, _| self.mul(acc, x))
    }

    pub fn conj(&self, x: QuadInt) -> QuadInt {
        let (t, _) = self.trace_norm_omega();
        QuadInt { a: x.a + x.b * t, b: -x.b }
    }

    pub fn norm(&self, x: QuadInt) -> i128 {
        let (t, n) = self.trace_norm_omega();
        x.a * x.a + x.a * x.b * t + x.b * x.b * n
    }

    pub fn trace(&self, x: QuadInt) -> i128 {
        let (t, _) = self.trace_norm_omega();
        2 * x.a + x.b * t
    }

    pub fn units(&self) -> Vec<QuadInt> {
        match self.d {
            -4 => vec![QuadInt::new(1, 0), QuadInt::new(0, 1), QuadInt::new(-1, 0), QuadInt::new(0, -1)],
            // ω = (1+√-3)/2 is a primitive 6th root of unity
            -3 => {
                let w = QuadInt::new(0, 1);
                (0..6).map(|e| self.pow(w, e)).collect()
            }
            _ => vec![QuadInt::new(1, 0), QuadInt::new(-1, 0)],
        }
    }

    /// `β | x` in `O_K`.
    pub fn divides(&self, beta: QuadInt, x: QuadInt) -> bool {
        let n = self.norm(beta);
        if n == 0 {
            return x == QuadInt::int(0);
        }
        let y = self.mul(x, self.conj(beta));
        y.a % n == 0 && y.b % n == 0
    }

    pub fn congruent(&self, x: QuadInt, y: QuadInt, modulus: QuadInt) -> bool {
        self.divides(modulus, self.sub(x, y))
    }

    /// `ε_K(q)`, the Kronecker symbol `(d / q)`.
    pub fn epsilon(&self, q: u64) -> i32 {
        kronecker(self.d, q)
    }

    pub fn quadratic_character(&self) -> DirichletCharacter {
        DirichletCharacter::quadratic(self.d).expect("fundamental discriminant")
    }

    pub fn is_split(&self, q: u64) -> bool {
        self.epsilon(q) == 1
    }

    pub fn is_inert(&self, q: u64) -> bool {
        self.epsilon(q) == -1
    }

    /// An element of norm `q` (a generator of a prime above a split `q`).
    pub fn element_of_norm(&self, q: u64) -> Option<QuadInt> {
        let (t, n) = self.trace_norm_omega();
        let q = q as i128;
        // N(a + bω) = (a + bt/2)² + b²(n - t²/4) = q
        let mut b = 0i128;
        while b * b * (4 * n - t * t) <= 4 * q {
            // a² + abt + b²n - q = 0
            let disc = b * b * t * t - 4 * (b * b * n - q);
            if disc >= 0 {
                let s = isqrt(disc);
                if s * s == disc {
                    for num in [-b * t + s, -b * t - s] {
                        if num % 2 == 0 {
                            let x = QuadInt::new(num / 2, b);
                            if self.norm(x) == q {
                                return Some(x);
                            }
                        }
                    }
                }
            }
            b += 1;
        }
        None
    }

    /// `√d` as a cyclotomic number (the Gauss sum of `ε_K`).
    pub fn sqrt_d(&self) -> CyclotomicNumber {
        gauss_sum(&self.quadratic_character()).expect("primitive")
    }

    /// Conductor of the cyclotomic field holding `K` and the Gauss sums
    /// used for it (`lcm(|d|, 2)`).
    pub fn cyclotomic_conductor(&self) -> u64 {
        crate::arith::numtheory::lcm(self.d.unsigned_abs(), 2)
    }

    /// Image of `a + bω` in the cyclotomic field, via `ω = (t + √d)/2`.
    pub fn to_cyclotomic(&self, x: QuadInt) -> CyclotomicNumber {
        let (t, _) = self.trace_norm_omega();
        let m = self.cyclotomic_conductor();
        let half = Rational::new(1.into(), 2.into());
        let omega = CyclotomicNumber::from_i64(m, t as i64)
            .add_ref(&self.sqrt_d().embed(m).unwrap())
            .scale(&half);
        let a = CyclotomicNumber::from_rational(m, Rational::from_integer(x.a.into()));
        a.add_ref(&omega.scale(&Rational::from_integer(x.b.into())))
    }
}

pub fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
