//! Truncated elements of `H_r(G_∞)`: one power series in `X = γ - 1` per
//! Teichmüller component `j ∈ {0, …, p-2}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::padic::Padic;
use crate::arith::ramified::RamifiedPadic;
use crate::arith::{rational_from_str, Rational};
use crate::error::{Error, Result};

/// Growth rate `r` in `O(log_p^r)`, or unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    Finite(Rational),
    Infinite,
}

impl GrowthClass {
    pub fn bounded() -> Self {
        GrowthClass::Finite(Rational::zero())
    }

    pub fn of(r: i64) -> Self {
        GrowthClass::Finite(Rational::from_integer(r.into()))
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (GrowthClass::Finite(a), GrowthClass::Finite(b)) => GrowthClass::Finite(a + b),
            _ => GrowthClass::Infinite,
        }
    }

    /// Growth of a quotient `F / G`, never below 0.
    pub fn quotient(&self, divisor: &Self) -> Self {
        match (self, divisor) {
            (GrowthClass::Finite(a), GrowthClass::Finite(b)) => {
                let d = a - b;
                GrowthClass::Finite(if d.is_negative() { Rational::zero() } else { d })
            }
            (GrowthClass::Infinite, _) => GrowthClass::Infinite,
            (f, GrowthClass::Infinite) => f.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            GrowthClass::Finite(r) => r.to_f64(),
            GrowthClass::Infinite => None,
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Finite(r) => write!(f, "{r}"),
            GrowthClass::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for GrowthClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GrowthClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(GrowthClass::Infinite)
        } else {
            rational_from_str(&s).map(GrowthClass::Finite).map_err(serde::de::Error::custom)
        }
    }
}

/// A point `χ^s · ω^a · θ` of the weight space, with `θ(γ) = ζ^g` a primitive
/// `p^n`-th root of unity (`n = wild_level`; `g = wild_root`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterPoint {
    pub s: i64,
    pub a: i64,
    pub wild_level: u32,
    #[serde(default = "one_u64")]
    pub wild_root: u64,
}

fn one_u64() -> u64 {
    1
}

impl CharacterPoint {
    pub fn new(s: i64, a: i64, wild_level: u32) -> Self {
        CharacterPoint { s, a, wild_level, wild_root: 1 }
    }

    /// Same point with the cyclotomic exponent shifted by `n`.
    pub fn shifted(&self, n: i64) -> Self {
        CharacterPoint { s: self.s + n, ..*self }
    }

    /// Δ-component read by this point.
    pub fn component(&self, p: u64) -> usize {
        (self.a + self.s).rem_euclid(p as i64 - 1) as usize
    }
}

/// Result of [`IwasawaSeries::growth_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub ok: bool,
    pub r: String,
    /// Smallest `C` with `v(c_j) >= -r log_p j - C` over the known coefficients.
    pub fitted_constant: f64,
    /// The same fit over degrees below `D/p`; a jump past it means the rate
    /// `r` is too small.
    pub head_constant: f64,
    pub degree: usize,
}

/// Result of [`IwasawaSeries::divide_exact`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisionDefect {
    /// `F - Q·G` is tested modulo `(p^tested_precision, X^tested_degree)`.
    pub tested_precision: i64,
    pub tested_degree: usize,
    /// Least known valuation among the remainder coefficients, per component.
    pub remainder_valuation: BTreeMap<usize, Option<i64>>,
    /// Remainder coefficients (past `tested_degree`) whose known precision is
    /// below `tested_precision`.
    pub undetermined: usize,
    pub quotient_growth_ok: bool,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct IwasawaSeries {
    p: u64,
    u: u64,
    prec: i64,
    degree: usize,
    components: Vec<Vec<Padic>>,
    growth: GrowthClass,
    /// `Some(d)`: all coefficients past `X^d` are exactly zero.
    exact_degree: Option<usize>,
}

fn log_p(j: usize, p: u64) -> f64 {
    (j as f64).ln() / (p as f64).ln()
}

impl IwasawaSeries {
    /// Build from explicit components; each is padded or cut to `degree` terms.
    pub fn from_components(
        p: u64,
        u: u64,
        prec: i64,
        degree: usize,
        components: Vec<Vec<Padic>>,
        growth: GrowthClass,
    ) -> Result<Self> {
        if p < 3 || !crate::arith::numtheory::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
        }
        if u % p != 1 || u == 1 {
            return Err(Error::InvalidInput(format!("u = {u} is not a generator of 1 + pZ_p")));
        }
        if components.len() != (p - 1) as usize {
            return Err(Error::InvalidInput(format!("expected {} components", p - 1)));
        }
        if degree == 0 || prec < 1 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        let components = components
            .into_iter()
            .map(|mut c| {
                c.truncate(degree);
                for x in c.iter_mut() {
                    *x = x.with_precision(prec);
                }
                c.resize(degree, Padic::zero(p, prec));
                c
            })
            .collect();
        Ok(IwasawaSeries { p, u, prec, degree, components, growth, exact_degree: None })
    }

    pub fn zero(p: u64, prec: i64, degree: usize) -> Self {
        let comps = vec![Vec::new(); (p - 1) as usize];
        let mut z = Self::from_components(p, 1 + p, prec, degree, comps, GrowthClass::bounded()).unwrap();
        z.exact_degree = Some(0);
        z
    }

    /// The same polynomial in every component, known exactly (tail zero).
    pub fn polynomial(p: u64, prec: i64, degree: usize, coeffs: &[Padic]) -> Result<Self> {
        if coeffs.len() > degree {
            return Err(Error::InsufficientDegree { required: coeffs.len(), available: degree });
        }
        let comps = vec![coeffs.to_vec(); (p - 1) as usize];
        let mut s = Self::from_components(p, 1 + p, prec, degree, comps, GrowthClass::bounded())?;
        s.exact_degree = Some(coeffs.len().saturating_sub(1));
        Ok(s)
    }

    pub fn constant(p: u64, prec: i64, degree: usize, c: i64) -> Self {
        Self::polynomial(p, prec, degree, &[Padic::from_i64(p, c, prec)]).unwrap()
    }

    pub fn one(p: u64, prec: i64, degree: usize) -> Self {
        Self::constant(p, prec, degree, 1)
    }

    /// The series `X = γ - 1`.
    pub fn x(p: u64, prec: i64, degree: usize) -> Self {
        Self::polynomial(p, prec, degree, &[Padic::zero(p, prec), Padic::one(p, prec)]).unwrap()
    }

    /// Random series with integral coefficients (a bounded measure), reproducible from `rng`.
    pub fn random_bounded<R: Rng>(p: u64, prec: i64, degree: usize, rng: &mut R) -> Self {
        let modulus = crate::arith::padic::p_pow(p, prec).to_u128().unwrap_or(u128::MAX);
        let comps = (0..p - 1)
            .map(|_| {
                (0..degree)
                    .map(|_| {
                        let c = rng.gen_range(0..modulus);
                        Padic::from_int(p, &BigInt::from(c), prec)
                    })
                    .collect()
            })
            .collect();
        Self::from_components(p, 1 + p, prec, degree, comps, GrowthClass::bounded()).unwrap()
    }

    /// Use a different generator image `u = χ(γ)` (must be `≡ 1 mod p`).
    pub fn with_u(mut self, u: u64) -> Result<Self> {
        if u % self.p != 1 || u == 1 {
            return Err(Error::InvalidInput(format!("u = {u} is not a generator of 1 + pZ_p")));
        }
        self.u = u;
        Ok(self)
    }

    pub fn with_growth(mut self, growth: GrowthClass) -> Self {
        self.growth = growth;
        self
    }

    /// Declare the stored coefficients to be the whole series.
    pub fn mark_exact(mut self) -> Self {
        let top = self
            .components
            .iter()
            .filter_map(|c| c.iter().rposition(|x| !x.is_zero()))
            .max()
            .unwrap_or(0);
        self.exact_degree = Some(top);
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn precision(&self) -> (i64, usize) {
        (self.prec, self.degree)
    }

    pub fn growth_class(&self) -> &GrowthClass {
        &self.growth
    }

    pub fn exact_degree(&self) -> Option<usize> {
        self.exact_degree
    }

    pub fn component(&self, j: usize) -> &[Padic] {
        &self.components[j]
    }

    pub fn components(&self) -> &[Vec<Padic>] {
        &self.components
    }

    /// Least coefficient precision actually carried.
    pub fn min_coefficient_precision(&self) -> i64 {
        self.components.iter().flatten().map(Padic::precision).min().unwrap_or(self.prec)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.u != other.u {
            return Err(Error::Incompatible(format!(
                "series over (p={}, u={}) and (p={}, u={})",
                self.p, self.u, other.p, other.u
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Padic, &Padic) -> Padic) -> Result<Self> {
        self.check(other)?;
        let degree = self.degree.min(other.degree);
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a[..degree].iter().zip(&b[..degree]).map(|(x, y)| f(x, y)).collect())
            .collect();
        let growth = match (&self.growth, &other.growth) {
            (GrowthClass::Finite(a), GrowthClass::Finite(b)) => GrowthClass::Finite(a.max(b).clone()),
            _ => GrowthClass::Infinite,
        };
        let mut out = Self::from_components(self.p, self.u, self.prec.min(other.prec), degree, comps, growth)?;
        out.exact_degree = match (self.exact_degree, other.exact_degree) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.components.iter_mut().flatten() {
            *c = c.neg_ref();
        }
        out
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, c: &Padic) -> Self {
        let mut out = self.clone();
        for x in out.components.iter_mut().flatten() {
            *x = x.mul_ref(c);
        }
        out
    }

    /// Componentwise Cauchy product truncated to the smaller degree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let degree = self.degree.min(other.degree);
        let prec = self.prec.min(other.prec);
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| truncated_product(&a[..degree], &b[..degree], degree, self.p, prec))
            .collect();
        let mut out = Self::from_components(self.p, self.u, prec, degree, comps, self.growth.add(&other.growth))?;
        out.exact_degree = match (self.exact_degree, other.exact_degree) {
            (Some(a), Some(b)) if a + b < degree => Some(a + b),
            _ => None,
        };
        Ok(out)
    }

    /// Keep only component `a` (mod `p - 1`).
    pub fn isotypic_project(&self, a: i64) -> Self {
        let keep = a.rem_euclid(self.p as i64 - 1) as usize;
        let mut out = self.clone();
        for (j, c) in out.components.iter_mut().enumerate() {
            if j != keep {
                c.iter_mut().for_each(|x| *x = Padic::zero(self.p, self.prec));
            }
        }
        out
    }

    /// Constant `C` for the tail bound `v(c_j) >= -r log_p j - C` (never below 0).
    fn tail_constant(&self) -> Option<f64> {
        let r = self.growth.as_f64()?;
        Some(self.fit_constant(r, self.degree).max(0.0))
    }

    fn fit_constant(&self, r: f64, upto: usize) -> f64 {
        let mut c = f64::NEG_INFINITY;
        for comp in &self.components {
            for (j, x) in comp.iter().enumerate().take(upto).skip(1) {
                if let Some(v) = x.valuation() {
                    c = c.max(-(v as f64) - r * log_p(j, self.p));
                }
            }
        }
        if c == f64::NEG_INFINITY {
            0.0
        } else {
            c
        }
    }

    /// Check `v_p(c_j) >= -r log_p(j) - C` for the stored coefficients.
    ///
    /// Finite data always admits some `C`; the rate is accepted when the
    /// constant fitted on degrees `[1, D/p)` already covers `[D/p, D)`, up to
    /// half a digit of slack.
    pub fn growth_check(&self, r: &Rational) -> GrowthReport {
        let rf = r.to_f64().unwrap_or(0.0);
        let full = self.fit_constant(rf, self.degree).max(0.0);
        // the head must span at least one p-power step to mean anything
        let pp = (self.p * self.p) as usize;
        let lower = (self.degree / self.p as usize).max(pp).min(self.degree).max(2);
        let head = self.fit_constant(rf, lower).max(0.0);
        let ok = full <= head + 0.5;
        GrowthReport { ok, r: r.to_string(), fitted_constant: full, head_constant: head, degree: self.degree }
    }

    /// `Tw_n`: component `j` of the result is `F_{j+n}(u^n(1+X) - 1)`.
    ///
    /// Coefficients near the truncation degree lose precision to the unknown
    /// tail; the loss is bounded with the growth class and the fitted tail
    /// constant.
    pub fn twist(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let p = self.p;
        let pm1 = p as i64 - 1;
        let work = self.prec + 2;
        let un = Padic::from_i64(p, self.u as i64, work + 64).pow_i64(n).unwrap().with_precision(work + 64);
        let c = &un - &Padic::one(p, work + 64);
        let vc = c.valuation().unwrap_or(work);
        let tail_cap: Option<Vec<i64>> = match (self.exact_degree, self.tail_constant()) {
            (Some(_), _) => None,
            (None, Some(cst)) => {
                let r = self.growth.as_f64().unwrap();
                let d = self.degree;
                Some(
                    (0..d)
                        .map(|j| ((d - j) as f64 * vc as f64 - r * log_p(d, p) - cst).floor() as i64)
                        .collect(),
                )
            }
            (None, None) => Some(vec![i64::MIN / 4; self.degree]),
        };
        let components = (0..pm1)
            .map(|j| {
                let src = &self.components[(j + n).rem_euclid(pm1) as usize];
                let mut out = compose_linear(src, &c, &un, self.degree, p);
                if let Some(cap) = &tail_cap {
                    for (x, &m) in out.iter_mut().zip(cap) {
                        *x = x.with_precision(m.max(0).min(x.precision()));
                        if m <= 0 {
                            *x = Padic::zero(p, m.max(0));
                        }
                    }
                }
                out.iter().map(|x| x.with_precision(self.prec)).collect()
            })
            .collect();
        IwasawaSeries { components, ..self.clone() }
    }

    /// Value at a character point, in `Q_p(ζ_{p^n})` with `n` the wild level.
    pub fn evaluate(&self, pt: &CharacterPoint) -> Result<RamifiedPadic> {
        let p = self.p;
        let level = pt.wild_level;
        if level > 6 {
            return Err(Error::OutOfRange(format!("wild level {level} too large")));
        }
        if pt.wild_root % p == 0 {
            return Err(Error::InvalidInput(format!("wild root exponent {} divisible by p", pt.wild_root)));
        }
        let coeffs = &self.components[pt.component(p)];
        let work = self.prec + 8;
        let us = Padic::from_i64(p, self.u as i64, work + 64).pow_i64(pt.s)?.with_precision(work + 64);
        let a = &us - &Padic::one(p, work + 64);
        // X = u^s ζ - 1 = (u^s - 1) + u^s π
        let mut acc = RamifiedPadic::zero(p, level, i64::MAX / 4);
        for c in coeffs.iter().rev() {
            acc = acc.mul_linear(&a, &us).add_ref(&RamifiedPadic::from_padic(level, c));
        }
        if pt.wild_root != 1 {
            acc = acc.galois(pt.wild_root)?;
        }
        if self.exact_degree.is_some() {
            return Ok(acc);
        }
        // tail Σ_{j>=D} c_j X^j with v(X) = λ
        let e = crate::arith::ramified::ramification_degree(p, level) as f64;
        let lambda = if level == 0 {
            match a.valuation() {
                Some(v) => v as f64,
                None => return Ok(acc),
            }
        } else {
            1.0 / e
        };
        let cst = self.tail_constant().ok_or_else(|| {
            Error::InsufficientDegree { required: usize::MAX, available: self.degree }
        })?;
        let r = self.growth.as_f64().unwrap();
        let d = self.degree;
        let tail = d as f64 * lambda - r * log_p(d, p) - cst;
        // π-basis coefficient i is then known to ceil(tail - (e-1)/e)
        let cap = (tail - (e - 1.0) / e).ceil() as i64;
        if cap <= 0 {
            let mut need = d;
            while (need as f64 * lambda - r * log_p(need, p) - cst) < self.prec as f64 + (e - 1.0) / e {
                need *= 2;
            }
            return Err(Error::InsufficientDegree { required: need, available: d });
        }
        Ok(acc.with_precision(cap))
    }

    /// Quotient `F / G` per component, with a report of `F - Q·G`.
    pub fn divide_exact(&self, g: &Self) -> Result<(Self, DivisionDefect)> {
        self.check(g)?;
        let p = self.p;
        let degree = self.degree.min(g.degree);
        let prec = self.prec.min(g.prec);
        let mut comps = Vec::with_capacity((p - 1) as usize);
        for (f, gc) in self.components.iter().zip(&g.components) {
            comps.push(series_quotient(&f[..degree], &gc[..degree], degree, p, prec)?);
        }
        let growth = self.growth.quotient(&g.growth);
        let q = Self::from_components(p, self.u, prec, degree, comps, growth.clone())?;
        let back = q.mul(&g.clone().with_growth(GrowthClass::bounded()))?;
        let rem = self.sub(&back)?;
        let loss = match g.growth.as_f64() {
            Some(r) if degree > 1 => (r * log_p(degree, p)).ceil() as i64,
            _ => 0,
        };
        let tested = prec - loss;
        // honest degree: leading coefficients still known to `tested`
        let tested_degree = (0..degree)
            .take_while(|&j| rem.components.iter().all(|c| c[j].precision() >= tested || c[j].valuation().is_some()))
            .count();
        let mut remainder_valuation = BTreeMap::new();
        let mut undetermined = 0;
        let mut ok = tested_degree > 0;
        for (j, comp) in rem.components.iter().enumerate() {
            let mut least: Option<i64> = None;
            for x in comp {
                if let Some(v) = x.valuation() {
                    least = Some(least.map_or(v, |l: i64| l.min(v)));
                    if v < tested {
                        ok = false;
                    }
                } else if x.precision() < tested {
                    undetermined += 1;
                }
            }
            remainder_valuation.insert(j, least);
        }
        let quotient_growth_ok = match &growth {
            GrowthClass::Finite(r) => q.growth_check(r).ok,
            GrowthClass::Infinite => true,
        };
        let defect = DivisionDefect {
            tested_precision: tested,
            tested_degree,
            remainder_valuation,
            undetermined,
            quotient_growth_ok,
            holds: ok && quotient_growth_ok,
        };
        Ok((q, defect))
    }

    /// Reduce to `(prec, degree)`.
    pub fn truncate(&self, prec: i64, degree: usize) -> Self {
        let degree = degree.min(self.degree);
        let prec = prec.min(self.prec);
        let components = self
            .components
            .iter()
            .map(|c| c[..degree].iter().map(|x| x.with_precision(prec)).collect())
            .collect();
        let exact_degree = self.exact_degree.filter(|&d| d < degree);
        IwasawaSeries { prec, degree, components, exact_degree, ..self.clone() }
    }

    /// Every coefficient of `self - other` below `X^degree` vanishes mod `p^prec`,
    /// with enough known digits to say so.
    pub fn agrees_mod(&self, other: &Self, prec: i64, degree: usize) -> bool {
        if self.p != other.p || self.u != other.u || degree > self.degree.min(other.degree) {
            return false;
        }
        self.components.iter().zip(&other.components).all(|(a, b)| {
            a[..degree].iter().zip(&b[..degree]).all(|(x, y)| {
                let d = x - y;
                match d.valuation() {
                    Some(v) => v >= prec,
                    None => d.precision() >= prec,
                }
            })
        })
    }

    /// Equality to the precision both sides carry.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        if self.check(other).is_err() {
            return false;
        }
        let degree = self.degree.min(other.degree);
        self.components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a[..degree].iter().zip(&b[..degree]).all(|(x, y)| (x - y).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Padic::is_zero)
    }
}

/// `a·b mod X^degree`.
pub(crate) fn truncated_product(a: &[Padic], b: &[Padic], degree: usize, p: u64, prec: i64) -> Vec<Padic> {
    let mut out = vec![Padic::zero(p, i64::MAX / 4); degree];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(degree - i) {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out.into_iter().map(|x| x.with_precision(prec)).collect()
}

/// `Σ f_i (c + bX)^i mod X^degree`, by Horner.
fn compose_linear(f: &[Padic], c: &Padic, b: &Padic, degree: usize, p: u64) -> Vec<Padic> {
    let mut acc: Vec<Padic> = vec![Padic::zero(p, i64::MAX / 4); degree];
    for fi in f.iter().rev() {
        // acc <- acc·(c + bX) + f_i
        let mut next: Vec<Padic> = acc.iter().map(|x| x * c).collect();
        for k in 1..degree {
            next[k] = next[k].add_ref(&acc[k - 1].mul_ref(b));
        }
        next[0] = next[0].add_ref(fi);
        acc = next;
    }
    acc
}

/// Power-series quotient `f / g mod X^degree`, after removing the common
/// `X`-adic factor of `g`.
fn series_quotient(f: &[Padic], g: &[Padic], degree: usize, p: u64, prec: i64) -> Result<Vec<Padic>> {
    let s = g.iter().position(|x| x.valuation().is_some()).ok_or(Error::DivisionByZero)?;
    let f = &f[s.min(f.len())..];
    let g = &g[s..];
    let n = degree - s;
    let g0inv = g[0].inv()?;
    let mut q: Vec<Padic> = Vec::with_capacity(degree);
    for k in 0..n {
        let mut acc = f.get(k).cloned().unwrap_or_else(|| Padic::zero(p, prec));
        for i in 1..=k.min(g.len() - 1) {
            acc = acc.sub_ref(&g[i].mul_ref(&q[k - i]));
        }
        q.push(acc.mul_ref(&g0inv));
    }
    // the top `s` coefficients are not determined by the data
    q.resize(degree, Padic::zero(p, 0));
    Ok(q)
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    valuation: Option<i64>,
    unit: String,
    precision: i64,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    p: u64,
    u: u64,
    precision: (i64, usize),
    components: BTreeMap<String, Vec<CoeffRepr>>,
    growth_class: GrowthClass,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    exact_degree: Option<usize>,
}

impl Serialize for IwasawaSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let coeffs = c
                    .iter()
                    .map(|x| CoeffRepr {
                        valuation: x.valuation(),
                        unit: x.unit().to_string(),
                        precision: x.precision(),
                    })
                    .collect();
                (format!("{j:02}"), coeffs)
            })
            .collect();
        SeriesRepr {
            p: self.p,
            u: self.u,
            precision: (self.prec, self.degree),
            components,
            growth_class: self.growth.clone(),
            exact_degree: self.exact_degree,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IwasawaSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SeriesRepr::deserialize(d)?;
        let p = r.p;
        let mut comps = vec![Vec::new(); (p.max(3) - 1) as usize];
        for (k, coeffs) in r.components {
            let j: usize = k.parse().map_err(D::Error::custom)?;
            let slot = comps.get_mut(j).ok_or_else(|| D::Error::custom("component index out of range"))?;
            *slot = coeffs
                .into_iter()
                .map(|c| {
                    let unit: BigInt = c.unit.parse().map_err(D::Error::custom)?;
                    Ok(match c.valuation {
                        None => Padic::zero(p, c.precision),
                        Some(v) => Padic::from_int(p, &unit, c.precision - v).shift(v),
                    })
                })
                .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        }
        let mut s = IwasawaSeries::from_components(p, r.u, r.precision.0, r.precision.1, comps, r.growth_class)
            .map_err(D::Error::custom)?;
        s.exact_degree = r.exact_degree;
        Ok(s)
    }
}

impl fmt::Debug for IwasawaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IwasawaSeries(p={}, u={}, M={}, D={}, r={})", self.p, self.u, self.prec, self.degree, self.growth)?;
        for (j, c) in self.components.iter().enumerate() {
            let head: Vec<String> = c.iter().take(6).map(|x| x.to_string()).collect();
            writeln!(f, "  [{j}] {} ...", head.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn twist_of_x() {
        let x = IwasawaSeries::x(5, 10, 8);
        let t = x.twist(1);
        let c = t.component(0);
        assert!(c[0].eq_mod(&Padic::from_i64(5, 5, 10), 10));
        assert!(c[1].eq_mod(&Padic::from_i64(5, 6, 10), 10));
        assert!(c[2].is_zero());
    }

    #[test]
    fn evaluate_basics() {
        let x = IwasawaSeries::x(3, 10, 16);
        let v = x.evaluate(&CharacterPoint::new(1, 0, 0)).unwrap().to_padic().unwrap();
        assert!(v.eq_mod(&Padic::from_i64(3, 3, 10), 10));
        let one = IwasawaSeries::one(3, 10, 16);
        let w = one.evaluate(&CharacterPoint::new(4, 1, 2)).unwrap();
        assert_eq!(w, RamifiedPadic::one(3, 2, 10));
    }

    #[test]
    fn twist_round_trip_and_evaluation() {
        let mut r = rng();
        let f = IwasawaSeries::random_bounded(3, 12, 40, &mut r);
        for n in -3..=3 {
            let back = f.twist(n).twist(-n);
            assert!(back.eq_to_precision(&f), "n = {n}");
        }
        let pt = CharacterPoint::new(2, 1, 0);
        let lhs = f.twist(1).evaluate(&pt).unwrap();
        let rhs = f.evaluate(&pt.shifted(1)).unwrap();
        assert!(lhs.sub_ref(&rhs).is_zero());
    }

    #[test]
    fn projection_laws() {
        let f = IwasawaSeries::random_bounded(5, 8, 10, &mut rng());
        let mut sum = IwasawaSeries::zero(5, 8, 10);
        for a in 0..4 {
            let pr = f.isotypic_project(a);
            assert_eq!(pr.isotypic_project(a), pr);
            sum = sum.add(&pr).unwrap();
        }
        assert!(sum.eq_to_precision(&f));
        for a in 0..4 {
            let lhs = f.twist(1).isotypic_project(a);
            let rhs = f.isotypic_project(a + 1).twist(1);
            assert!(lhs.eq_to_precision(&rhs));
        }
    }

    #[test]
    fn growth_examples() {
        let f = IwasawaSeries::random_bounded(3, 10, 64, &mut rng());
        let rep = f.growth_check(&Rational::zero());
        assert!(rep.ok);
        assert_eq!(rep.fitted_constant, 0.0);
        // Σ p^{-floor(log_p j)} X^j has rate 1
        let coeffs: Vec<Padic> = (0..200u64)
            .map(|j| {
                let t = if j == 0 { 0 } else { crate::arith::numtheory::floor_log(j, 3) as i64 };
                Padic::one(3, 30).shift(-t)
            })
            .collect();
        let g = IwasawaSeries::polynomial(3, 30, 200, &coeffs).unwrap();
        assert!(g.growth_check(&Rational::from_integer(1.into())).ok);
        assert!(!g.growth_check(&Rational::zero()).ok);
    }

    #[test]
    fn division_round_trip() {
        let mut r = rng();
        let a = IwasawaSeries::random_bounded(3, 12, 32, &mut r);
        let g = IwasawaSeries::random_bounded(3, 12, 32, &mut r)
            .mul(&IwasawaSeries::x(3, 12, 32))
            .unwrap()
            .add(&IwasawaSeries::one(3, 12, 32))
            .unwrap();
        let x = IwasawaSeries::x(3, 12, 32);
        let xg = x.mul(&g).unwrap();
        let (q, d) = xg.divide_exact(&g).unwrap();
        assert!(d.holds, "{d:?}");
        assert!(q.truncate(12, 31).eq_to_precision(&x.truncate(12, 31)));
        let (q1, d1) = a.divide_exact(&IwasawaSeries::one(3, 12, 32)).unwrap();
        assert!(d1.holds && q1.eq_to_precision(&a));
    }

    #[test]
    fn json_round_trip() {
        let f = IwasawaSeries::random_bounded(5, 6, 5, &mut rng()).with_growth(GrowthClass::of(1));
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"p\":5,\"u\":6,\"precision\":[6,5],\"components\":{\"00\":"));
        let g: IwasawaSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
