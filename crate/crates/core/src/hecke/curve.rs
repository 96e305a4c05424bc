//! Naive point counting on Weierstrass curves over prime fields.

use serde::{Deserialize, Serialize};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weierstrass(pub [i64; 5]);

impl Weierstrass {
    pub fn discriminant(&self) -> i128 {
        let [a1, a2, a3, a4, a6] = self.0.map(|a| a as i128);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    /// `#E(F_q)` including the point at infinity.
    pub fn count_points(&self, q: u64) -> u64 {
        let qi = q as i64;
        let [a1, a2, a3, a4, a6] = self.0.map(|a| a.rem_euclid(qi));
        if q == 2 {
            let mut n = 1;
            for x in 0..2 {
                for y in 0..2 {
                    let lhs = y * y + a1 * x * y + a3 * y;
                    let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                    if (lhs - rhs).rem_euclid(2) == 0 {
                        n += 1;
                    }
                }
            }
            return n;
        }
        // y-discriminant (a1 x + a3)² + 4·rhs decides the number of y
        let mut is_square = vec![false; q as usize];
        for y in 0..qi {
            is_square[(y * y % qi) as usize] = true;
        }
        let mut n = 1u64;
        for x in 0..qi {
            let rhs = (((x + a2) * x % qi + a4) * x % qi + a6) % qi;
            let lin = (a1 * x + a3) % qi;
            let disc = ((lin * lin + 4 * rhs) % qi) as usize;
            n += if disc == 0 {
                1
            } else if is_square[disc] {
                2
            } else {
                0
            };
        }
        n
    }

    /// `a_q = q + 1 - #E(F_q)`.
    pub fn trace_of_frobenius(&self, q: u64) -> i64 {
        q as i64 + 1 - self.count_points(q) as i64
    }
}
