//! Half-logarithms `log±` of weight `k`, their zero pattern, and the
//! plus/minus splitting of a symmetric pair of series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::padic::{p_pow, Padic};
use crate::arith::ramified::RamifiedPadic;
use crate::error::{Error, Result};
use crate::series::{truncated_product, CharacterPoint, DivisionDefect, GrowthClass, IwasawaSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }

    /// `m` is in this sign's parity class (`+`: even, `-`: odd).
    fn owns(self, m: u32) -> bool {
        (m % 2 == 0) == (self == Sign::Plus)
    }

    /// The index `m` of the `n`-th factor of this sign.
    fn level(self, n: u32) -> u32 {
        match self {
            Sign::Plus => 2 * n,
            Sign::Minus => 2 * n - 1,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One truncated half-logarithm together with the factor list it was built from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfLog {
    pub k: u32,
    pub sign: Sign,
    /// Factors `Φ_{p^m}(u^{-r}(1+X))/p` with `m` up to `level(n_max)` in the sign's class.
    pub n_max: u32,
    pub working_precision: i64,
    pub series: IwasawaSeries,
}

/// `log⁺` and `log⁻` for one weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogPair {
    pub k: u32,
    pub plus: HalfLog,
    pub minus: HalfLog,
}

impl LogPair {
    pub fn build(k: u32, p: u64, prec: i64, degree: usize) -> Result<Self> {
        Ok(LogPair {
            k,
            plus: build_log(k, Sign::Plus, p, prec, degree)?,
            minus: build_log(k, Sign::Minus, p, prec, degree)?,
        })
    }

    pub fn get(&self, sign: Sign) -> &HalfLog {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

/// Coefficients of `Φ_{p^m}(c(1+X))/p` below `X^degree`, known to `p^work`,
/// with `c = u^{-r}`.
fn factor_coefficients(p: u64, u: u64, m: u32, r: u32, work: i64, degree: usize) -> Vec<Padic> {
    let modulus = p_pow(p, work + 1);
    let c = if r == 0 {
        BigInt::one()
    } else {
        let ur = BigInt::from(u).modpow(&BigInt::from(r), &modulus);
        inverse_mod(&ur, &modulus)
    };
    let q = BigInt::from(p).pow(m - 1);
    let mut sums = vec![BigInt::zero(); degree];
    for i in 0..p {
        let n: BigInt = &q * i;
        let cn = c.modpow(&n, &modulus);
        let mut binom = BigInt::one();
        for (j, slot) in sums.iter_mut().enumerate() {
            if BigInt::from(j) > n {
                break;
            }
            *slot += (&binom).mod_floor(&modulus) * &cn;
            binom = binom * (&n - j) / (j + 1);
        }
    }
    sums.into_iter()
        .map(|s| Padic::from_int(p, &s.mod_floor(&modulus), work + 1).shift(-1))
        .collect()
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Truncated `log±` of weight `k`: the product over `r = 0..2k-3` and over the
/// sign's parity class of `Φ_{p^m}(u^{-r}(1+X))/p`, stopping once a whole level
/// of factors is `≡ 1` to the precision that can still affect the product.
pub fn build_log(k: u32, sign: Sign, p: u64, prec: i64, degree: usize) -> Result<HalfLog> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("weight {k} < 2")));
    }
    if p < 3 || !crate::arith::numtheory::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let u = 1 + p;
    let logd = crate::arith::numtheory::floor_log(degree as u64, p) as i64 + 1;
    let mut work = prec + (k as i64 - 1) * (logd + 2) + 2;
    loop {
        let (coeffs, n_max) = log_product(k, sign, p, u, prec, work, degree);
        let low = coeffs.iter().map(Padic::precision).min().unwrap();
        if low >= prec {
            let comps = vec![coeffs; (p - 1) as usize];
            let series = IwasawaSeries::from_components(p, u, prec, degree, comps, GrowthClass::of(k as i64 - 1))?;
            return Ok(HalfLog { k, sign, n_max, working_precision: work, series });
        }
        work += prec - low + 2;
    }
}

fn log_product(k: u32, sign: Sign, p: u64, u: u64, prec: i64, work: i64, degree: usize) -> (Vec<Padic>, u32) {
    let top = i64::MAX / 4;
    let mut prod: Vec<Padic> = (0..degree)
        .map(|j| if j == 0 { Padic::one(p, work + 1) } else { Padic::zero(p, top) })
        .collect();
    let mut n = 1;
    loop {
        let m = sign.level(n);
        let factors: Vec<Vec<Padic>> =
            (0..2 * k - 2).map(|r| factor_coefficients(p, u, m, r, work, degree)).collect();
        // how close each factor is to 1
        let close = factors
            .iter()
            .map(|f| {
                f.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let d = if j == 0 { x - &Padic::one(p, work) } else { x.clone() };
                        d.valuation().unwrap_or(work)
                    })
                    .min()
                    .unwrap()
            })
            .min()
            .unwrap();
        let minv = prod.iter().filter_map(Padic::valuation).min().unwrap_or(0);
        if close >= prec - minv + 1 {
            return (prod, n - 1);
        }
        for f in &factors {
            prod = truncated_product(&prod, f, degree, p, top);
        }
        n += 1;
    }
}

/// Exact value of one factor `Φ_{p^m}(u^{s-r}ζ)/p` at a point of wild level `ℓ`.
fn factor_at(p: u64, u: u64, m: u32, shift: i64, level: u32, zeta_powers: &[RamifiedPadic], work: i64) -> RamifiedPadic {
    // y = x^{p^{m-1}} = u^{shift·p^{m-1}} · ζ^{p^{m-1} mod p^ℓ}
    let big = Padic::from_i64(p, u as i64, work + 64);
    let up = big.pow_i64(shift).unwrap().pow(p.pow(m - 1));
    let zeta_part = if level == 0 {
        RamifiedPadic::one(p, 0, work)
    } else if m - 1 < level {
        zeta_powers[(m - 1) as usize].clone()
    } else {
        RamifiedPadic::one(p, level, work)
    };
    let y = zeta_part.scale(&up.with_precision(work));
    let mut acc = RamifiedPadic::one(p, level, work);
    let mut power = RamifiedPadic::one(p, level, work);
    for _ in 1..p {
        power = power.mul_ref(&y);
        acc = acc.add_ref(&power);
    }
    acc.scale(&Padic::one(p, work).shift(-1))
}

impl HalfLog {
    /// Value at a character point, computed factor by factor (the infinite
    /// tail of omitted factors is `≡ 1` past the series precision).
    pub fn evaluate_factored(&self, pt: &CharacterPoint) -> Result<RamifiedPadic> {
        let series = &self.series;
        let p = series.prime();
        let u = series.u();
        let level = pt.wild_level;
        let work = self.working_precision + 4;
        let zeta = RamifiedPadic::wild_root(p, level, pt.wild_root, work);
        let mut zeta_powers = vec![zeta.clone()];
        for i in 1..level as usize {
            let next = zeta_powers[i - 1].pow(p);
            zeta_powers.push(next);
        }
        let mut acc = RamifiedPadic::one(p, level, work);
        for n in 1..=self.n_max {
            let m = self.sign.level(n);
            for r in 0..2 * self.k - 2 {
                let f = factor_at(p, u, m, pt.s - r as i64, level, &zeta_powers, work);
                if f.is_zero() {
                    return Ok(RamifiedPadic::zero(p, level, work));
                }
                acc = acc.mul_ref(&f);
            }
        }
        Ok(acc)
    }

    /// Whether the value at `pt` is exactly zero.
    pub fn zero_pattern(&self, pt: &CharacterPoint) -> Result<bool> {
        let hi = 2 * self.k as i64 - 3;
        if pt.s < 0 || pt.s > hi {
            return Err(Error::OutOfRange(format!("s = {} outside [0, {hi}]", pt.s)));
        }
        Ok(self.evaluate_factored(pt)?.is_zero())
    }
}

/// The predicted pattern: `log⁺` vanishes at even wild level `>= 2`, `log⁻` at odd.
pub fn expected_zero(sign: Sign, wild_level: u32) -> bool {
    wild_level >= 1 && sign.owns(wild_level)
}

/// Precision at which a synthetic pair must be generated so that splitting
/// recovers it mod `(p^prec, X^degree)`: dividing by `log⁻` costs one digit
/// per `p - 1` degrees.
pub fn split_working_precision(p: u64, prec: i64, degree: usize) -> i64 {
    prec + (degree as i64 + p as i64 - 2) / (p as i64 - 1) + 2
}

/// Output of [`split_pm`].
#[derive(Clone, Debug, Serialize)]
pub struct SplitResult {
    pub plus: IwasawaSeries,
    pub minus: IwasawaSeries,
    pub defect_plus: DivisionDefect,
    pub defect_minus: DivisionDefect,
}

/// `L_p± = (L_{+α} ± L_{-α}) / (2·log±)`.
pub fn split_pm(l_plus: &IwasawaSeries, l_minus: &IwasawaSeries, logs: &LogPair) -> Result<SplitResult> {
    let p = l_plus.prime();
    let (prec, _) = l_plus.precision();
    let half = Padic::from_i64(p, 2, prec + 64).inv()?;
    let sum = l_plus.add(l_minus)?.scale(&half);
    let diff = l_plus.sub(l_minus)?.scale(&half);
    let (plus, defect_plus) = sum.divide_exact(&logs.plus.series)?;
    let (minus, defect_minus) = diff.divide_exact(&logs.minus.series)?;
    Ok(SplitResult { plus, minus, defect_plus, defect_minus })
}

/// A synthetic symmetric pair `(A·log⁺ + B·log⁻, A·log⁺ - B·log⁻)` with
/// `A, B` random integral polynomials of degree below `D`.
#[derive(Clone, Debug)]
pub struct SyntheticPair {
    pub a: IwasawaSeries,
    pub b: IwasawaSeries,
    pub l_plus: IwasawaSeries,
    pub l_minus: IwasawaSeries,
}

impl SyntheticPair {
    pub fn generate<R: Rng>(logs: &LogPair, rng: &mut R) -> Result<Self> {
        let s = &logs.plus.series;
        let p = s.prime();
        let (prec, degree) = s.precision();
        let a = IwasawaSeries::random_bounded(p, prec, degree, rng).mark_exact();
        let b = IwasawaSeries::random_bounded(p, prec, degree, rng).mark_exact();
        let ap = a.mul(&logs.plus.series)?;
        let bm = b.mul(&logs.minus.series)?;
        Ok(SyntheticPair { l_plus: ap.add(&bm)?, l_minus: ap.sub(&bm)?, a, b })
    }

    /// `(L_{+α}(pt), L_{-α}(pt))` from exact values of `A`, `B` and the factored logs.
    pub fn evaluate(&self, logs: &LogPair, pt: &CharacterPoint) -> Result<(RamifiedPadic, RamifiedPadic)> {
        let a = self.a.evaluate(pt)?;
        let b = self.b.evaluate(pt)?;
        let lp = logs.plus.evaluate_factored(pt)?;
        let lm = logs.minus.evaluate_factored(pt)?;
        let x = a.mul_ref(&lp);
        let y = b.mul_ref(&lm);
        Ok((x.add_ref(&y), x.sub_ref(&y)))
    }
}

/// The `(-1)^n` symmetry of a synthetic pair at wild level `ℓ >= 1`, `n = ℓ + 1`.
pub fn symmetry_holds(pair: &SyntheticPair, logs: &LogPair, pt: &CharacterPoint) -> Result<bool> {
    if pt.wild_level == 0 {
        return Err(Error::OutOfRange("symmetry is asserted at wild points only".into()));
    }
    let (x, y) = pair.evaluate(logs, pt)?;
    let y = if (pt.wild_level + 1) % 2 == 0 { y } else { y.neg_ref() };
    Ok(x.sub_ref(&y).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use rand::SeedableRng;

    #[test]
    fn factor_at_one_is_one() {
        // Φ_{p^m}(1)/p = 1: constant term of the r = 0 factors
        for m in 1..4 {
            let f = factor_coefficients(3, 4, m, 0, 10, 4);
            assert!(f[0].eq_mod(&Padic::one(3, 10), 9));
        }
    }

    #[test]
    fn log_growth_and_zeros() {
        let logs = LogPair::build(2, 3, 10, 64).unwrap();
        for sign in Sign::both() {
            let h = logs.get(sign);
            assert!(h.series.growth_check(&Rational::from_integer(1.into())).ok);
            for level in 0..=3 {
                for s in 0..=1 {
                    let z = h.zero_pattern(&CharacterPoint::new(s, 0, level)).unwrap();
                    assert_eq!(z, expected_zero(sign, level), "{sign} level {level} s {s}");
                }
            }
        }
        assert!(logs.plus.zero_pattern(&CharacterPoint::new(2, 0, 1)).is_err());
    }

    #[test]
    fn truncated_series_matches_factored_value() {
        let logs = LogPair::build(2, 3, 8, 64).unwrap();
        for level in 0..=2 {
            let pt = CharacterPoint::new(1, 0, level);
            let a = logs.minus.series.evaluate(&pt).unwrap();
            let b = logs.minus.evaluate_factored(&pt).unwrap();
            assert!(a.sub_ref(&b).is_zero(), "level {level}");
        }
    }

    #[test]
    fn split_round_trip() {
        let work = split_working_precision(3, 10, 32);
        let logs = LogPair::build(2, 3, work, 32).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let pair = SyntheticPair::generate(&logs, &mut rng).unwrap();
        let out = split_pm(&pair.l_plus, &pair.l_minus, &logs).unwrap();
        assert!(out.plus.agrees_mod(&pair.a, 10, 32), "{:?}", out.defect_plus);
        assert!(out.minus.agrees_mod(&pair.b, 10, 32));
        assert!(out.defect_plus.holds && out.defect_minus.holds);
        for level in 1..=3 {
            assert!(symmetry_holds(&pair, &logs, &CharacterPoint::new(0, 0, level)).unwrap());
        }
    }
}
