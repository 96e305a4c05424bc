//! The symmetric-square p-adic L-functions assembled from a `φ²` series and
//! a twisted Kubota–Leopoldt series, the bookkeeping of their interpolation
//! formulas, and a nonvanishing gate for injected data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::pollack::{split_pm, LogPair, SplitResult};
use crate::series::IwasawaSeries;

/// `(L_{+α}(φ²)·Tw_{1-k}(L_KL), L_{-α}(φ²)·Tw_{1-k}(L_KL))`.
pub fn assemble_symsq(
    l_phi2: (&IwasawaSeries, &IwasawaSeries),
    kl: &IwasawaSeries,
    k: u32,
) -> Result<(IwasawaSeries, IwasawaSeries)> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("weight {k} < 2")));
    }
    let tw = kl.twist(1 - k as i64);
    Ok((l_phi2.0.mul(&tw)?, l_phi2.1.mul(&tw)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityReport {
    pub tested_precision: i64,
    pub tested_degree: usize,
    pub plus_agrees: bool,
    pub minus_agrees: bool,
}

/// Splitting the assembled pair agrees with splitting first and then
/// multiplying by `Tw_{1-k}(L_KL)`. Each coefficient below `X^degree` is
/// compared to the precision it carries, capped at `prec`; the smallest such
/// precision is reported.
pub fn split_compatibility(
    l_plus: &IwasawaSeries,
    l_minus: &IwasawaSeries,
    kl: &IwasawaSeries,
    k: u32,
    logs: &LogPair,
    prec: i64,
    degree: usize,
) -> Result<CompatibilityReport> {
    let (ap, am) = assemble_symsq((l_plus, l_minus), kl, k)?;
    let after: SplitResult = split_pm(&ap, &am, logs)?;
    let before = split_pm(l_plus, l_minus, logs)?;
    let tw = kl.twist(1 - k as i64);
    let plus = before.plus.mul(&tw)?;
    let minus = before.minus.mul(&tw)?;
    let p = kl.prime() as usize;
    let mut tested = prec;
    let mut compare = |x: &IwasawaSeries, y: &IwasawaSeries| {
        let degree = degree.min(x.precision().1).min(y.precision().1);
        (0..p - 1).all(|j| {
            x.component(j)[..degree].iter().zip(&y.component(j)[..degree]).all(|(a, b)| {
                let d = (a - b).with_precision(prec.min(a.precision()).min(b.precision()));
                tested = tested.min(d.precision());
                d.is_zero()
            })
        })
    };
    let plus_agrees = compare(&after.plus, &plus);
    let minus_agrees = compare(&after.minus, &minus);
    Ok(CompatibilityReport { tested_precision: tested, tested_degree: degree, plus_agrees, minus_agrees })
}

/// `c · Π s^e` over named symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub exps: BTreeMap<String, i64>,
}

impl Monomial {
    pub fn constant(c: Rational) -> Self {
        Monomial { coeff: c, exps: BTreeMap::new() }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn sym(name: &str, e: i64) -> Self {
        Self::int(1).times(name, e)
    }

    pub fn times(mut self, name: &str, e: i64) -> Self {
        let x = self.exps.entry(name.to_string()).or_insert(0);
        *x += e;
        if *x == 0 {
            self.exps.remove(name);
        }
        self
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Monomial::constant(&self.coeff * &other.coeff);
        out.exps = self.exps.clone();
        for (s, e) in &other.exps {
            out = out.times(s, *e);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        let coeff = if e >= 0 { self.coeff.pow(e as i32) } else { self.coeff.recip().pow((-e) as i32) };
        Monomial { coeff, exps: self.exps.iter().map(|(s, x)| (s.clone(), x * e)).collect() }
    }

    pub fn exponent(&self, s: &str) -> i64 {
        self.exps.get(s).copied().unwrap_or(0)
    }

    /// Replace every `s^e` by `value^e`.
    pub fn substitute(&self, s: &str, value: &Monomial) -> Self {
        let e = self.exponent(s);
        let mut rest = self.clone();
        rest.exps.remove(s);
        rest.mul(&value.pow(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (s, e) in &self.exps {
            if *e == 1 {
                write!(f, " {s}")?;
            } else {
                write!(f, " {s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn factorial(n: u64) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |a, b| a * BigInt::from(b)))
}

pub const L_SYM2: &str = "L(Sym2 f,theta^-1,2k-2)";
pub const L_PHI2: &str = "L(phi^2 theta^-1,2k-2)";
pub const L_ABEL: &str = "L(eps_K eps theta^-1,k-1)";

/// Symbolic values at a character `θ` of conductor `p^n`.
#[derive(Clone, Debug, Serialize)]
pub struct InterpolationDatum {
    pub k: u32,
    pub n: u32,
    /// Value of `L_α(φ²)` at the twisted point.
    pub phi2_value: Monomial,
    /// Value of `L_KL(ε_K ε)` at `χ^{k-2}θ`.
    pub kl_value: Monomial,
    /// Claimed value of `L_α(Sym²)`.
    pub symsq_value: Monomial,
}

impl InterpolationDatum {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k < 2 || n < 1 {
            return Err(Error::InvalidInput(format!("need k >= 2 and n >= 1, got ({k}, {n})")));
        }
        let (kk, nn) = (k as i64, n as i64);
        let phi2_value = Monomial::constant(factorial(2 * k as u64 - 3))
            .times("p", (2 * kk - 2) * nn)
            .times("alpha", -nn)
            .times("tau(theta^-1)", -1)
            .times("Omega", -1)
            .times(L_PHI2, 1);
        let r = kk - 2;
        let kl_value = Monomial::constant(factorial(r as u64 + 1))
            .times("p", nn * (r + 1))
            .times("2 pi i", -(r + 1))
            .times("tau(theta^-1)", -1)
            .times(L_ABEL, 1);
        let symsq_value = Monomial::constant(factorial(2 * k as u64 - 3) * factorial(k as u64 - 1))
            .times("p", 3 * nn * (kk - 1))
            .times("tau(theta^-1)", -2)
            .times("alpha", -nn)
            .times("Omega", -1)
            .times("2 pi i", -(kk - 1))
            .times(L_SYM2, 1);
        Ok(InterpolationDatum { k, n, phi2_value, kl_value, symsq_value })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub k: u32,
    pub n: u32,
    pub sign: i64,
    pub p_exponents: (i64, i64, i64),
    pub product_matches: bool,
    pub factorials_match: bool,
    pub tau_power: i64,
    /// `p^{3n(k-1)}/α^n` with `α = ±ε(p)p^{k-1}`.
    pub reduced: Monomial,
    pub reduction_matches: bool,
    /// `((±1)^{-n} + s(∓1)^{-n})/2` for the combination of sign `s`.
    pub branch_coefficient: Rational,
    pub branch_ok: bool,
    pub pass: bool,
}

/// Check `[φ² value]·[KL value] = [Sym² value]` using only
/// `L(Sym²) = L(φ²)·L(ε_K ε)`, then the reduction of the `p`- and
/// `α`-powers on the `±` branch.
pub fn interpolation_consistency(datum: &InterpolationDatum, sign: i64) -> Result<ConsistencyReport> {
    if sign.abs() != 1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let (k, n) = (datum.k as i64, datum.n as i64);
    let product = datum
        .phi2_value
        .mul(&datum.kl_value)
        .times(L_PHI2, -1)
        .times(L_ABEL, -1)
        .times(L_SYM2, 1);
    let product_matches = product == datum.symsq_value;
    let p_exponents = (datum.phi2_value.exponent("p"), datum.kl_value.exponent("p"), datum.symsq_value.exponent("p"));
    let factorials_match = &datum.phi2_value.coeff * &datum.kl_value.coeff
        == factorial(2 * k as u64 - 3) * factorial(k as u64 - 1);
    let tau_power = product.exponent("tau(theta^-1)");

    // α = ±ε(p)p^{k-1}
    let head = Monomial::sym("p", 3 * n * (k - 1)).times("alpha", -n);
    let alpha = |s: i64| Monomial::int(s).times("eps(p)", 1).times("p", k - 1);
    let at = |s: i64| head.substitute("alpha", &alpha(s));
    let reduced = at(sign);
    let target = Monomial::int(sign.pow(n as u32)).times("p", 2 * n * (k - 1)).times("eps(p)", -n);
    let reduction_matches = reduced == target;
    // the ± combination of the two branches
    let plus = at(1).coeff;
    let minus = at(-1).coeff;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let branch_coefficient = if sign == 1 { (plus + minus) * &half } else { (plus - minus) * &half };
    let parity_ok = if sign == 1 { n % 2 == 0 } else { n % 2 == 1 };
    let branch_ok = if parity_ok { branch_coefficient.is_one() } else { branch_coefficient.is_zero() };
    let pass = product_matches && factorials_match && tau_power == -2 && reduction_matches && branch_ok;
    Ok(ConsistencyReport {
        k: datum.k,
        n: datum.n,
        sign,
        p_exponents,
        product_matches,
        factorials_match,
        tau_power,
        reduced,
        reduction_matches,
        branch_coefficient,
        branch_ok,
        pass,
    })
}

/// Every `(k, n) ∈ [2, 6] × [1, 4]` with both signs.
pub fn consistency_sweep() -> Result<Vec<ConsistencyReport>> {
    let mut out = Vec::new();
    for k in 2..=6 {
        for n in 1..=4 {
            let d = InterpolationDatum::new(k, n)?;
            for s in [1, -1] {
                out.push(interpolation_consistency(&d, s)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardResult {
    pub component: usize,
    pub nonzero: bool,
    pub inconclusive: bool,
}

/// Whether component `j` (even) is nonzero to working precision.
pub fn nonvanishing_guard(series: &IwasawaSeries, component: usize) -> Result<GuardResult> {
    let p = series.prime() as usize;
    if component >= p - 1 || component % 2 == 1 {
        return Err(Error::InvalidInput(format!("component {component} is not an even index mod {}", p - 1)));
    }
    let coeffs = series.component(component);
    let nonzero = coeffs.iter().any(|c| c.valuation().is_some());
    let (prec, _) = series.precision();
    let inconclusive = !nonzero && coeffs.iter().any(|c| c.precision() < prec);
    Ok(GuardResult { component, nonzero, inconclusive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::character::DirichletCharacter;
    use crate::arith::Padic;
    use crate::kl::{kubota_leopoldt, Regulator};
    use crate::pollack::{split_working_precision, SyntheticPair};
    use crate::series::{CharacterPoint, GrowthClass};
    use rand::SeedableRng;

    #[test]
    fn sweep_passes() {
        let rows = consistency_sweep().unwrap();
        assert_eq!(rows.len(), 40);
        assert!(rows.iter().all(|r| r.pass), "{:?}", rows.iter().find(|r| !r.pass));
        let r = &rows[0];
        assert_eq!((r.k, r.n), (2, 1));
        assert_eq!(r.p_exponents, (2, 1, 3));
        let d = InterpolationDatum::new(3, 2).unwrap();
        assert_eq!(d.phi2_value.exponent("p") + d.kl_value.exponent("p"), 12);
    }

    #[test]
    fn broken_bookkeeping_is_caught() {
        let mut d = InterpolationDatum::new(3, 1).unwrap();
        d.kl_value = d.kl_value.times("p", 1);
        assert!(!interpolation_consistency(&d, 1).unwrap().pass);
    }

    #[test]
    fn assembly_with_unit_phi2() {
        let q4 = DirichletCharacter::quadratic(-4).unwrap();
        let kl = kubota_leopoldt(&q4, 3, 6, 12, Regulator::Auto).unwrap().series;
        let one = IwasawaSeries::one(3, 6, 12);
        let (a, b) = assemble_symsq((&one, &one), &kl, 2).unwrap();
        let tw = kl.twist(-1);
        assert!(a.eq_to_precision(&tw) && b.eq_to_precision(&tw));
        // multiplicativity at a point
        let x = IwasawaSeries::random_bounded(3, 6, 12, &mut rand_chacha::ChaCha8Rng::seed_from_u64(4)).mark_exact();
        let (prod, _) = assemble_symsq((&x, &x), &kl, 2).unwrap();
        let pt = CharacterPoint::new(2, 0, 0);
        let lhs = prod.evaluate(&pt).unwrap();
        let rhs = x.evaluate(&pt).unwrap().mul_ref(&tw.evaluate(&pt).unwrap());
        let prec = lhs.precision().min(rhs.precision());
        assert!(lhs.sub_ref(&rhs).with_precision(prec.to_integer().try_into().unwrap()).is_zero());
    }

    #[test]
    fn split_commutes_with_assembly() {
        let (p, prec, degree) = (3u64, 6i64, 24usize);
        let work = split_working_precision(p, prec, degree);
        let logs = LogPair::build(2, p, work, degree).unwrap();
        let q4 = DirichletCharacter::quadratic(-4).unwrap();
        let kl = kubota_leopoldt(&q4, p, work, degree, Regulator::Auto).unwrap().series;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let pair = SyntheticPair::generate(&logs, &mut rng).unwrap();
            let rep = split_compatibility(&pair.l_plus, &pair.l_minus, &kl, 2, &logs, prec, degree / 2).unwrap();
            assert!(rep.plus_agrees && rep.minus_agrees);
        }
    }

    #[test]
    fn guard() {
        let z = IwasawaSeries::zero(5, 8, 8);
        assert_eq!(nonvanishing_guard(&z, 0).unwrap(), GuardResult { component: 0, nonzero: false, inconclusive: false });
        let one = IwasawaSeries::one(5, 8, 8);
        assert!(nonvanishing_guard(&one, 2).unwrap().nonzero);
        let fuzzy = IwasawaSeries::from_components(
            5,
            6,
            8,
            8,
            vec![vec![Padic::zero(5, 0)]; 4],
            GrowthClass::bounded(),
        )
        .unwrap();
        let g = nonvanishing_guard(&fuzzy, 0).unwrap();
        assert!(!g.nonzero && g.inconclusive);
        assert!(nonvanishing_guard(&one, 1).is_err());
    }
}
