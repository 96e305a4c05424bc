//! Symmetric powers of CM Galois representations: the decomposition into
//! induced characters and abelian twists, two routes to Frobenius traces and
//! Euler factors, and the factorization sweep.

use std::fmt;
use std::time::Instant;

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::numtheory::primes_in;
use crate::arith::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::hecke::{CmForm, FrobeniusData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentKind {
    /// `Ind φ^power`.
    Induced { power: u32 },
    /// `(ε_K·ε)^{m/2}·χ^{(m/2)(k-1)}`.
    Abelian { character_power: u32, cyclotomic_twist: u32 },
}

/// One summand of `Sym^m V_f`, twisted by `(ε_K·det ρ_f)^twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RepComponent {
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub twist: u32,
    pub dimension: u32,
}

impl fmt::Display for RepComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ComponentKind::Induced { power } => write!(f, "Ind(phi^{power})")?,
            ComponentKind::Abelian { character_power, cyclotomic_twist } => {
                write!(f, "(eps_K eps)^{character_power} chi^{cyclotomic_twist}")?
            }
        }
        if self.twist > 0 && matches!(self.kind, ComponentKind::Induced { .. }) {
            write!(f, " x (eps_K det)^{}", self.twist)?;
        }
        Ok(())
    }
}

pub fn decompose(m: u32, k: u32) -> Result<Vec<RepComponent>> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("symmetric power {m} < 2")));
    }
    let mut out: Vec<RepComponent> = (0..m.div_ceil(2))
        .map(|i| RepComponent { kind: ComponentKind::Induced { power: m - 2 * i }, twist: i, dimension: 2 })
        .collect();
    if m % 2 == 0 {
        out.push(RepComponent {
            kind: ComponentKind::Abelian { character_power: m / 2, cyclotomic_twist: (m / 2) * (k - 1) },
            twist: m / 2,
            dimension: 1,
        });
    }
    Ok(out)
}

/// `det(1 - Frob_q·T)` on some representation; `coefficients[0] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerPolynomial {
    pub q: u64,
    pub coefficients: Vec<CyclotomicNumber>,
}

impl EulerPolynomial {
    pub fn one(q: u64, conductor: u64) -> Self {
        EulerPolynomial { q, coefficients: vec![CyclotomicNumber::one(conductor)] }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.coefficients[0].conductor();
        let n = self.coefficients.len() + other.coefficients.len() - 1;
        let mut c = vec![CyclotomicNumber::zero(m); n];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                c[i + j] = c[i + j].add_ref(&a.mul_ref(b));
            }
        }
        EulerPolynomial { q: self.q, coefficients: c }
    }

    /// Drop trailing zero coefficients.
    pub fn trimmed(mut self) -> Self {
        let d = self.degree();
        self.coefficients.truncate(d + 1);
        self
    }

    /// Coefficients as strings; rational ones print plainly.
    pub fn display_coefficients(&self) -> Vec<String> {
        self.coefficients
            .iter()
            .map(|c| c.to_rational().map_or_else(|| c.to_string(), |r| r.to_string()))
            .collect()
    }
}

/// Perturbation of the matrix route at one prime, for fault injection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Corruption {
    pub q: u64,
    pub delta: i64,
}

fn corrupted(mut fr: FrobeniusData, corruption: Option<Corruption>) -> FrobeniusData {
    if let Some(c) = corruption.filter(|c| c.q == fr.q) {
        let m = fr.matrix[0][0].conductor();
        fr.matrix[0][0] = fr.matrix[0][0].add_ref(&CyclotomicNumber::from_i64(m, c.delta));
    }
    fr
}

/// `Sym^m` of a 2×2 matrix in the monomial basis `x^r y^{m-r}`, where
/// `σ(x) = M00 x + M10 y` and `σ(y) = M01 x + M11 y`. Column `r` holds the
/// image of `x^r y^{m-r}`; row `s` the coefficient of `x^s y^{m-s}`.
pub fn sym_matrix(mat: &[[CyclotomicNumber; 2]; 2], m: u32) -> Vec<Vec<CyclotomicNumber>> {
    let cond = mat[0][0].conductor();
    let n = m as usize + 1;
    let powers = |c: &CyclotomicNumber| {
        let mut v = vec![CyclotomicNumber::one(cond)];
        for i in 0..m as usize {
            v.push(v[i].mul_ref(c));
        }
        v
    };
    let (p00, p10, p01, p11) = (powers(&mat[0][0]), powers(&mat[1][0]), powers(&mat[0][1]), powers(&mat[1][1]));
    let mut out = vec![vec![CyclotomicNumber::zero(cond); n]; n];
    for r in 0..n {
        let s_ = n - 1 - r;
        // (M00 x + M10 y)^r (M01 x + M11 y)^{m-r}
        for a in 0..=r {
            let left = p00[a].mul_ref(&p10[r - a]).scale(&Rational::from_integer(binomial(r, a).into()));
            if left.is_zero() {
                continue;
            }
            for b in 0..=s_ {
                let right = p01[b].mul_ref(&p11[s_ - b]);
                if right.is_zero() {
                    continue;
                }
                let c = Rational::from_integer(binomial(s_, b).into());
                out[a + b][r] = out[a + b][r].add_ref(&left.mul_ref(&right).scale(&c));
            }
        }
    }
    out
}

/// Characteristic polynomial `det(T·I - A)` by Berkowitz (division free),
/// returned as `[1, c1, ..., cn]` for `T^n + c1 T^{n-1} + ... + cn`.
pub fn charpoly(a: &[Vec<CyclotomicNumber>]) -> Vec<CyclotomicNumber> {
    let n = a.len();
    let cond = a[0][0].conductor();
    let zero = CyclotomicNumber::zero(cond);
    let mut poly = vec![CyclotomicNumber::one(cond)];
    for r in 0..n {
        // leading r×r block is done; extend by row/column r
        let col: Vec<CyclotomicNumber> = (0..r).map(|i| a[i][r].clone()).collect();
        let row: Vec<CyclotomicNumber> = (0..r).map(|j| a[r][j].clone()).collect();
        // Toeplitz column: 1, -a_rr, -R·C, -R·A·C, ...
        let mut t = vec![CyclotomicNumber::one(cond), a[r][r].neg_ref()];
        let mut v = col;
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(zero.clone(), |s, (x, y)| s.add_ref(&x.mul_ref(y)));
            t.push(dot.neg_ref());
            v = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |s, j| s.add_ref(&a[i][j].mul_ref(&v[j]))))
                .collect();
        }
        let mut next = vec![zero.clone(); r + 2];
        for (i, c) in next.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                if i - j < t.len() {
                    *c = c.add_ref(&t[i - j].mul_ref(&poly[j]));
                }
            }
        }
        poly = next;
    }
    poly
}

pub fn trace_via_matrix(m: u32, form: &CmForm, q: u64) -> Result<CyclotomicNumber> {
    trace_via_matrix_with(m, form, q, None)
}

fn trace_via_matrix_with(m: u32, form: &CmForm, q: u64, c: Option<Corruption>) -> Result<CyclotomicNumber> {
    let fr = corrupted(form.frobenius_matrix(q)?, c);
    let s = sym_matrix(&fr.matrix, m);
    Ok((1..s.len()).fold(s[0][0].clone(), |acc, i| acc.add_ref(&s[i][i])))
}

/// The values a component needs at `q`: `w = ε_K(q)ε(q)q^{k-1}` and the
/// Grossencharacter data.
struct PrimeData {
    cond: u64,
    w: CyclotomicNumber,
    split: Option<(CyclotomicNumber, CyclotomicNumber)>,
    inert: Option<CyclotomicNumber>,
}

impl PrimeData {
    fn new(form: &CmForm, q: u64) -> Result<Self> {
        let fr = form.frobenius_matrix(q)?;
        let cond = fr.matrix[0][0].conductor();
        let w = CyclotomicNumber::from_rational(cond, form.twist_value(q));
        let [[a, b], [_, d]] = fr.matrix;
        if fr.split {
            Ok(PrimeData { cond, w, split: Some((a, d)), inert: None })
        } else {
            Ok(PrimeData { cond, w, split: None, inert: Some(b) })
        }
    }
}

pub fn trace_via_components(m: u32, form: &CmForm, q: u64) -> Result<CyclotomicNumber> {
    let data = PrimeData::new(form, q)?;
    let mut total = CyclotomicNumber::zero(data.cond);
    for comp in decompose(m, form.k)? {
        let t = match comp.kind {
            ComponentKind::Induced { power } => match &data.split {
                Some((x, y)) => x.pow(power as u64).add_ref(&y.pow(power as u64)).mul_ref(&data.w.pow(comp.twist as u64)),
                None => CyclotomicNumber::zero(data.cond),
            },
            ComponentKind::Abelian { character_power, .. } => data.w.pow(character_power as u64),
        };
        total = total.add_ref(&t);
    }
    Ok(total)
}

pub fn euler_poly_sym(m: u32, form: &CmForm, q: u64) -> Result<EulerPolynomial> {
    euler_poly_sym_with(m, form, q, None)
}

fn euler_poly_sym_with(m: u32, form: &CmForm, q: u64, c: Option<Corruption>) -> Result<EulerPolynomial> {
    let fr = corrupted(form.frobenius_matrix(q)?, c);
    // det(1 - A T) has the characteristic coefficients in reverse order
    Ok(EulerPolynomial { q, coefficients: charpoly(&sym_matrix(&fr.matrix, m)) }.trimmed())
}

pub fn euler_poly_factored(m: u32, form: &CmForm, q: u64) -> Result<EulerPolynomial> {
    let data = PrimeData::new(form, q)?;
    let cond = data.cond;
    let zero = CyclotomicNumber::zero(cond);
    let one = CyclotomicNumber::one(cond);
    let mut acc = EulerPolynomial::one(q, cond);
    for comp in decompose(m, form.k)? {
        let factor = match comp.kind {
            ComponentKind::Induced { power } => {
                let wi = data.w.pow(comp.twist as u64);
                match (&data.split, &data.inert) {
                    (Some((x, y)), _) => {
                        let (u, v) = (x.pow(power as u64).mul_ref(&wi), y.pow(power as u64).mul_ref(&wi));
                        vec![one.clone(), u.add_ref(&v).neg_ref(), u.mul_ref(&v)]
                    }
                    // Frob_q^2 acts on Ind φ^t by φ^t((q))
                    (None, Some(c)) => {
                        let c2 = c.pow(power as u64).mul_ref(&wi.pow(2));
                        vec![one.clone(), zero.clone(), c2.neg_ref()]
                    }
                    _ => unreachable!(),
                }
            }
            ComponentKind::Abelian { character_power, .. } => {
                vec![one.clone(), data.w.pow(character_power as u64).neg_ref()]
            }
        };
        acc = acc.mul(&EulerPolynomial { q, coefficients: factor });
    }
    Ok(acc.trimmed())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub q: u64,
    pub matrix_route: Vec<String>,
    pub component_route: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub form: String,
    pub m: u32,
    pub bound: u64,
    pub primes_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub wall_time: f64,
}

impl FactorizationReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.primes_checked > 0
    }
}

pub fn verify_factorization(m: u32, form: &CmForm, bound: u64) -> Result<FactorizationReport> {
    verify_factorization_with(m, form, bound, None)
}

/// Sweep every good `q < bound`; `corruption` perturbs the matrix route.
pub fn verify_factorization_with(
    m: u32,
    form: &CmForm,
    bound: u64,
    corruption: Option<Corruption>,
) -> Result<FactorizationReport> {
    let start = Instant::now();
    let primes: Vec<u64> = primes_in(2, bound).into_iter().filter(|&q| form.is_good(q)).collect();
    let results: Vec<Option<Mismatch>> = primes
        .par_iter()
        .map(|&q| {
            let a = euler_poly_sym_with(m, form, q, corruption)?;
            let b = euler_poly_factored(m, form, q)?;
            Ok((a != b).then(|| Mismatch {
                q,
                matrix_route: a.display_coefficients(),
                component_route: b.display_coefficients(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(FactorizationReport {
        form: form.label.clone(),
        m,
        bound,
        primes_checked: primes.len(),
        mismatches: results.into_iter().flatten().collect(),
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceMismatch {
    pub q: u64,
    pub m: u32,
    pub matrix_route: String,
    pub component_route: String,
}

/// Compare the two trace routes for all `2 <= m <= max_m` and good `q < bound`.
pub fn compare_traces(form: &CmForm, max_m: u32, bound: u64) -> Result<(usize, Vec<TraceMismatch>)> {
    let cases: Vec<(u32, u64)> = (2..=max_m)
        .flat_map(|m| primes_in(2, bound).into_iter().filter(|&q| form.is_good(q)).map(move |q| (m, q)))
        .collect();
    let out: Vec<Option<TraceMismatch>> = cases
        .par_iter()
        .map(|&(m, q)| {
            let a = trace_via_matrix(m, form, q)?;
            let b = trace_via_components(m, form, q)?;
            Ok((a != b).then(|| TraceMismatch { q, m, matrix_route: a.to_string(), component_route: b.to_string() }))
        })
        .collect::<Result<_>>()?;
    Ok((cases.len(), out.into_iter().flatten().collect()))
}
