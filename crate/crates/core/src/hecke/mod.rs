//! Grossencharacters of class-number-one imaginary quadratic fields, the CM
//! forms they define, Frobenius matrices and the standing hypotheses.

pub mod catalog;
pub mod curve;
pub mod field;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::character::DirichletCharacter;
use crate::arith::numtheory::{gcd, is_prime};
use crate::arith::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};
pub use curve::Weierstrass;
pub use field::{ImagQuadField, QuadInt};

/// Algebraic Hecke character of type `(-k+1, 0)`: `φ((α)) = α^{k-1}` for the
/// generator `α` of `(α)` whose class mod `f` lies in `residues`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grossencharacter {
    pub field: ImagQuadField,
    pub k: u32,
    /// Generator of the conductor ideal `f`.
    pub conductor: QuadInt,
    /// A subgroup of `(O/f)^×` meeting each unit coset once.
    pub residues: Vec<QuadInt>,
}

impl Grossencharacter {
    pub fn new(field: ImagQuadField, k: u32, conductor: QuadInt, residues: Vec<QuadInt>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput(format!("weight {k} < 2")));
        }
        let chi = Grossencharacter { field, k, conductor, residues };
        // every unit class must pick exactly one associate
        let units = field.units();
        for u in &units {
            let hits = units
                .iter()
                .filter(|v| chi.residues.iter().any(|s| field.congruent(field.mul(**v, *u), *s, conductor)))
                .count();
            if hits != 1 {
                return Err(Error::UnitFixing(format!(
                    "residue set does not fix the unit {u} (matches {hits} associates)"
                )));
            }
        }
        Ok(chi)
    }

    pub fn conductor_norm(&self) -> u64 {
        self.field.norm(self.conductor) as u64
    }

    /// The selected generator of `(α)`.
    pub fn canonical_generator(&self, alpha: QuadInt) -> Result<QuadInt> {
        let k = &self.field;
        let n = k.norm(alpha);
        if n == 0 {
            return Err(Error::InvalidInput("zero ideal".into()));
        }
        if gcd(n as u64, self.conductor_norm()) != 1 {
            return Err(Error::Ramified(format!("({alpha}) is not prime to the conductor")));
        }
        let hits: Vec<QuadInt> = k
            .units()
            .into_iter()
            .map(|u| k.mul(u, alpha))
            .filter(|x| self.residues.iter().any(|s| k.congruent(*x, *s, self.conductor)))
            .collect();
        match hits.as_slice() {
            [x] => Ok(*x),
            _ => Err(Error::UnitFixing(format!("{} associates of {alpha} satisfy the rule", hits.len()))),
        }
    }

    /// `φ((α))` as an element of `O_K`.
    pub fn eval_ideal(&self, alpha: QuadInt) -> Result<QuadInt> {
        Ok(self.field.pow(self.canonical_generator(alpha)?, self.k - 1))
    }

    /// `φ((α))` as a cyclotomic number.
    pub fn eval(&self, alpha: QuadInt) -> Result<CyclotomicNumber> {
        Ok(self.field.to_cyclotomic(self.eval_ideal(alpha)?))
    }

    /// `φ((α))^{-1}`, the geometric normalization.
    pub fn eval_inverse(&self, alpha: QuadInt) -> Result<CyclotomicNumber> {
        self.eval(alpha)?.inv()
    }

    /// `(φ(𝔮), φ(𝔮̄))` for a split rational prime `q`.
    pub fn eval_split(&self, q: u64) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
        let alpha = self
            .field
            .element_of_norm(q)
            .ok_or_else(|| Error::Domain(format!("{q} does not split")))?;
        Ok((self.eval(alpha)?, self.eval(self.field.conj(alpha))?))
    }

    /// `φ((q))` for an inert rational prime `q`.
    pub fn eval_inert(&self, q: u64) -> Result<CyclotomicNumber> {
        self.eval(QuadInt::int(q as i128))
    }

    /// `ε(n) = ε_K(n)·φ((n))/n^{k-1}` for `n` prime to the level; always `±1`.
    pub fn nebentypus_value(&self, n: u64) -> Result<i64> {
        let phi = self.eval_ideal(QuadInt::int(n as i128))?;
        let nk = (n as i128).pow(self.k - 1);
        let sign = if phi == QuadInt::int(nk) {
            1
        } else if phi == QuadInt::int(-nk) {
            -1
        } else {
            return Err(Error::Structure(format!("φ(({n})) = {phi} is not ±{n}^{}", self.k - 1)));
        };
        Ok(sign * self.field.epsilon(n) as i64)
    }
}

/// One catalogued CM newform.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CmForm {
    pub label: String,
    pub field: ImagQuadField,
    pub character: Grossencharacter,
    pub k: u32,
    pub level: u64,
    pub nebentypus: DirichletCharacter,
    pub curve: Option<Weierstrass>,
    /// Committed `a_q` for good `q < 1000` (regenerated by point counting).
    pub a_q_table: BTreeMap<u64, i64>,
}

impl CmForm {
    /// Form attached to a Grossencharacter; the nebentypus is derived.
    pub fn from_character(label: &str, character: Grossencharacter) -> Result<Self> {
        let field = character.field;
        let level = field.discriminant().unsigned_abs() * character.conductor_norm();
        let values: Vec<Option<i64>> = (0..level)
            .map(|n| {
                if gcd(n, level) != 1 {
                    return Ok(None);
                }
                character.nebentypus_value(n).map(Some)
            })
            .collect::<Result<_>>()?;
        let nebentypus = DirichletCharacter::from_signs(level, &values)?.primitive();
        Ok(CmForm {
            label: label.to_string(),
            field,
            k: character.k,
            character,
            level,
            nebentypus,
            curve: None,
            a_q_table: BTreeMap::new(),
        })
    }

    pub fn is_good(&self, q: u64) -> bool {
        is_prime(q) && self.level % q != 0
    }

    fn check_good(&self, q: u64) -> Result<()> {
        if !self.is_good(q) {
            return Err(Error::BadPrime(q));
        }
        Ok(())
    }

    fn conductor(&self) -> u64 {
        self.field.cyclotomic_conductor()
    }

    /// `ε(q)` for `q` prime to the level.
    pub fn epsilon(&self, q: u64) -> i64 {
        self.nebentypus.value_int(q as i64).unwrap_or(0)
    }

    /// `ε_K(q)·ε(q)·q^{k-1}`, the determinant twist `ε_K·det ρ_f` at `q`.
    pub fn twist_value(&self, q: u64) -> Rational {
        let e = self.field.epsilon(q) as i64 * self.epsilon(q);
        Rational::from_integer(e.into()) * Rational::from_integer(q.into()).pow(self.k as i32 - 1)
    }

    pub fn a_q(&self, q: u64) -> Result<CyclotomicNumber> {
        self.check_good(q)?;
        if self.field.is_split(q) {
            let (x, y) = self.character.eval_split(q)?;
            Ok(x.add_ref(&y))
        } else {
            Ok(CyclotomicNumber::zero(self.conductor()))
        }
    }

    pub fn frobenius_matrix(&self, q: u64) -> Result<FrobeniusData> {
        self.check_good(q)?;
        let m = self.conductor();
        let matrix = if self.field.is_split(q) {
            let (x, y) = self.character.eval_split(q)?;
            [[x, CyclotomicNumber::zero(m)], [CyclotomicNumber::zero(m), y]]
        } else {
            // σ(x) = y, σ(y) = φ((q))·x on the induced basis
            let c = self.character.eval_inert(q)?;
            [[CyclotomicNumber::zero(m), c], [CyclotomicNumber::one(m), CyclotomicNumber::zero(m)]]
        };
        Ok(FrobeniusData { q, split: self.field.is_split(q), matrix })
    }

    /// `det ρ_f(Frob_q) = ε(q)·q^{k-1}`.
    pub fn det_rho(&self, q: u64) -> Result<CyclotomicNumber> {
        self.check_good(q)?;
        let v = Rational::from_integer(self.epsilon(q).into()) * Rational::from_integer(q.into()).pow(self.k as i32 - 1);
        Ok(CyclotomicNumber::from_rational(self.conductor(), v))
    }

    /// The same determinant from the σ-level formula: `φ̃(σ)φ̃(ισι)` on
    /// the split coset and `-φ((q))` on the other.
    pub fn det_rho_sigma(&self, q: u64) -> Result<CyclotomicNumber> {
        self.check_good(q)?;
        if self.field.is_split(q) {
            let (x, y) = self.character.eval_split(q)?;
            Ok(x.mul_ref(&y))
        } else {
            Ok(self.character.eval_inert(q)?.neg_ref())
        }
    }
}

/// `ρ_f(Frob_q)` in the basis `x, y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusData {
    pub q: u64,
    pub split: bool,
    pub matrix: [[CyclotomicNumber; 2]; 2],
}

impl FrobeniusData {
    pub fn trace(&self) -> CyclotomicNumber {
        self.matrix[0][0].add_ref(&self.matrix[1][1])
    }

    pub fn det(&self) -> CyclotomicNumber {
        self.matrix[0][0]
            .mul_ref(&self.matrix[1][1])
            .sub_ref(&self.matrix[0][1].mul_ref(&self.matrix[1][0]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub form: String,
    pub p: u64,
    pub checks: Vec<HypothesisCheck>,
    pub all_pass: bool,
}

impl HypothesisReport {
    pub fn failures(&self) -> Vec<&HypothesisCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

pub fn check_hypotheses(form: &CmForm, p: u64) -> HypothesisReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, witness: String| {
        checks.push(HypothesisCheck { name: name.to_string(), pass, witness })
    };
    push("p odd prime", p > 2 && is_prime(p), format!("p = {p}"));
    push("p does not divide N", form.level % p != 0, format!("N = {}", form.level));
    let ek = if is_prime(p) { form.field.epsilon(p) } else { 0 };
    push("p inert in K", ek == -1, format!("eps_K({p}) = {ek}"));

    // Hypothesis 1: ε_K ≠ ε, with a residue witnessing the difference
    let eps_k = form.field.quadratic_character();
    let modulus = crate::arith::numtheory::lcm(eps_k.modulus(), form.nebentypus.modulus());
    let witness = (1..modulus as i64).find(|&a| {
        gcd(a as u64, modulus) == 1 && eps_k.value_int(a) != form.nebentypus.value_int(a)
    });
    match witness {
        Some(a) => push(
            "eps_K != eps",
            true,
            format!("a = {a}: eps_K(a) = {}, eps(a) = {}", eps_k.value_int(a).unwrap(), form.nebentypus.value_int(a).unwrap()),
        ),
        None => push("eps_K != eps", false, format!("eps_K and eps agree on (Z/{modulus})^x")),
    }

    // Hypothesis 2: p - 1 ∤ k - 1 or ε ≠ 1
    let km1 = form.k as u64 - 1;
    let divides = p > 1 && km1 % (p - 1) == 0;
    let trivial = form.nebentypus.is_trivial();
    push(
        "p-1 does not divide k-1 or eps nontrivial",
        !divides || !trivial,
        format!("p-1 = {}, k-1 = {km1}, eps trivial: {trivial}", p.saturating_sub(1)),
    );
    let all_pass = checks.iter().all(|c| c.pass);
    HypothesisReport { form: form.label.clone(), p, checks, all_pass }
}

/// One row of the `hecke` table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeckeRow {
    pub q: u64,
    pub split: bool,
    pub a_q: String,
    pub det: String,
    pub trace_matches_table: Option<bool>,
    pub det_matches: bool,
    pub ramanujan: bool,
}

/// Frobenius data for every good `q < bound`, with integrity checks.
pub fn hecke_table(form: &CmForm, bound: u64) -> Result<Vec<HeckeRow>> {
    let mut rows = Vec::new();
    for q in crate::arith::numtheory::primes_in(2, bound) {
        if !form.is_good(q) {
            continue;
        }
        let fr = form.frobenius_matrix(q)?;
        let a = fr.trace();
        let det = fr.det();
        let a_rat = a.to_rational();
        let table = form.a_q_table.get(&q).map(|&t| a_rat == Some(Rational::from_integer(t.into())));
        let (re, im) = a.to_complex();
        let bound = 2.0 * (q as f64).powf((form.k as f64 - 1.0) / 2.0);
        rows.push(HeckeRow {
            q,
            split: fr.split,
            a_q: a_rat.map_or_else(|| a.to_string(), |r| r.to_string()),
            det: det.to_string(),
            trace_matches_table: table,
            det_matches: det == form.det_rho(q)? && det == form.det_rho_sigma(q)?,
            ramanujan: (re * re + im * im).sqrt() <= bound + 1e-9,
        });
    }
    Ok(rows)
}
