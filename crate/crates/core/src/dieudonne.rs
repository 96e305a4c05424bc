//! Filtered φ-modules attached to a CM form at an inert prime: `D_cris(V_f)`,
//! its symmetric square and the split `D(V₁) ⊕ D(V₂)`, the vectors `v±`,
//! pairing properties and Tate twists.
//!
//! Coefficients are Laurent polynomials in a symbolic `p` with coefficients
//! in `Q[ε]/(ε^n - 1)`, where `ε` stands for `ε(p)`, so identities hold for
//! every prime and every `ε(p)` of order dividing `n` at once.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};

/// `Σ c · p^i ε^j` with `ε^n = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Symbolic {
    order: u64,
    terms: BTreeMap<(i64, u64), Rational>,
}

impl Symbolic {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        Symbolic { order, terms: BTreeMap::new() }
    }

    pub fn monomial(order: u64, c: Rational, p_exp: i64, eps_exp: i64) -> Self {
        let mut s = Self::zero(order);
        if !c.is_zero() {
            s.terms.insert((p_exp, eps_exp.rem_euclid(order as i64) as u64), c);
        }
        s
    }

    pub fn constant(order: u64, c: Rational) -> Self {
        Self::monomial(order, c, 0, 0)
    }

    pub fn int(order: u64, n: i64) -> Self {
        Self::constant(order, Rational::from_integer(n.into()))
    }

    pub fn one(order: u64) -> Self {
        Self::int(order, 1)
    }

    /// `p^i`.
    pub fn p_pow(order: u64, i: i64) -> Self {
        Self::monomial(order, Rational::one(), i, 0)
    }

    /// `ε^j`.
    pub fn eps_pow(order: u64, j: i64) -> Self {
        Self::monomial(order, Rational::one(), 0, j)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "symbolic values with different ε orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let e = out.terms.entry(*k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Symbolic { order: self.order, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Symbolic { order: self.order, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.order;
        let mut out = Self::zero(n);
        for ((pa, ea), ca) in &self.terms {
            for ((pb, eb), cb) in &other.terms {
                out = out.add(&Symbolic::monomial(n, ca * cb, pa + pb, (ea + eb) as i64));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order), |acc, _| acc.mul(self))
    }

    /// Inverse of a monomial `c p^i ε^j`.
    pub fn inv_monomial(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some(((i, j), c)) if self.terms.len() == 1 => {
                Ok(Symbolic::monomial(self.order, c.recip(), -i, -(*j as i64)))
            }
            _ => Err(Error::Domain(format!("{self} is not an invertible monomial"))),
        }
    }

    /// Substitute `p` and `ε = ζ_n^e`.
    pub fn evaluate(&self, p: u64, eps_exp: u64) -> CyclotomicNumber {
        let n = self.order;
        let pr = Rational::from_integer(p.into());
        let terms = self.terms.iter().map(|((i, j), c)| {
            let pp = if *i >= 0 { pr.pow(*i as i32) } else { pr.recip().pow((-i) as i32) };
            (((j * eps_exp) % n) as i64, c * pp)
        });
        CyclotomicNumber::from_root_sum(n, terms)
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.terms.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut parts = Vec::new();
            if !a.is_one() || (*i == 0 && *j == 0) {
                parts.push(a.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("p".into()),
                _ => parts.push(format!("p^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("e".into()),
                _ => parts.push(format!("e^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Symbolic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub type Matrix = Vec<Vec<Symbolic>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a[0][0].order();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(Symbolic::zero(n), |s, t| s.add(&a[i][t].mul(&b[t][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Symbolic]) -> Vec<Symbolic> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Symbolic::zero(v[0].order()), |s, (x, y)| s.add(&x.mul(y))))
        .collect()
}

fn det2(m: &Matrix) -> Symbolic {
    m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
}

/// One step of a decreasing filtration: `Fil^i` for `i >= from` (until the
/// next step) is spanned by the listed basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilStep {
    pub from: i64,
    pub span: Vec<usize>,
}

/// A filtered φ-module whose filtration is by coordinate subspaces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FilteredPhiModule {
    pub basis: Vec<String>,
    pub phi: Matrix,
    /// Ascending in `from`; below the first step `Fil^i` is everything.
    pub filtration: Vec<FilStep>,
}

impl FilteredPhiModule {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        self.phi[0][0].order()
    }

    pub fn fil(&self, i: i64) -> Vec<usize> {
        match self.filtration.iter().rev().find(|s| s.from <= i) {
            Some(s) => s.span.clone(),
            None => (0..self.dimension()).collect(),
        }
    }

    /// `(i, dim Fil^i)` at each index where the dimension changes, plus the
    /// start.
    pub fn fil_dims(&self) -> Vec<(i64, usize)> {
        let mut out = vec![(i64::MIN, self.dimension())];
        for s in &self.filtration {
            out.push((s.from, s.span.len()));
        }
        out
    }

    /// Indices `i` with `Fil^i ≠ Fil^{i+1}`, with multiplicity.
    pub fn jumps(&self) -> Vec<i64> {
        let mut out = Vec::new();
        let mut prev = self.dimension();
        for s in &self.filtration {
            // Fil changes between s.from - 1 and s.from
            for _ in s.span.len()..prev {
                out.push(s.from - 1);
            }
            prev = s.span.len();
        }
        out
    }

    /// Hodge–Tate weights, taken as the negatives of the jumps.
    pub fn hodge_tate_weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.jumps().into_iter().map(|j| -j).collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    fn validate(&self) -> Result<()> {
        let n = self.dimension();
        if self.phi.len() != n || self.phi.iter().any(|r| r.len() != n) {
            return Err(Error::Structure("φ matrix has the wrong shape".into()));
        }
        let mut prev: Vec<usize> = (0..n).collect();
        let mut last = i64::MIN;
        for s in &self.filtration {
            if s.from <= last || !s.span.iter().all(|i| prev.contains(i)) {
                return Err(Error::Structure("filtration is not decreasing".into()));
            }
            prev = s.span.clone();
            last = s.from;
        }
        if !prev.is_empty() {
            return Err(Error::Structure("filtration is not exhaustive".into()));
        }
        Ok(())
    }
}

/// `D_cris(V_f)` on `{ω, φω}` with `φ² = -ε(p)p^{k-1}`.
pub fn build_dcris_vf(k: u32, eps_order: u64) -> Result<FilteredPhiModule> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("weight {k} < 2")));
    }
    let n = eps_order;
    let a = Symbolic::monomial(n, -Rational::one(), k as i64 - 1, 1);
    let d = FilteredPhiModule {
        basis: vec!["w".into(), "phi(w)".into()],
        phi: vec![vec![Symbolic::zero(n), a], vec![Symbolic::one(n), Symbolic::zero(n)]],
        filtration: vec![FilStep { from: 1, span: vec![0] }, FilStep { from: k as i64, span: vec![] }],
    };
    d.validate()?;
    Ok(d)
}

/// `Sym²` of a 2-dimensional module in the basis
/// `w⊗w, w⊗φw + φw⊗w, φw⊗φw`.
pub fn sym_square(d: &FilteredPhiModule) -> Result<FilteredPhiModule> {
    if d.dimension() != 2 {
        return Err(Error::Structure("symmetric square needs a 2-dimensional module".into()));
    }
    let m = &d.phi;
    let two = Rational::from_integer(2.into());
    // images of the symmetric basis under φ⊗φ
    let col0 = vec![m[0][0].pow(2), m[0][0].mul(&m[1][0]), m[1][0].pow(2)];
    let col1 = vec![
        m[0][0].mul(&m[0][1]).scale(&two),
        m[0][0].mul(&m[1][1]).add(&m[0][1].mul(&m[1][0])),
        m[1][0].mul(&m[1][1]).scale(&two),
    ];
    let col2 = vec![m[0][1].pow(2), m[0][1].mul(&m[1][1]), m[1][1].pow(2)];
    let phi = (0..3).map(|i| vec![col0[i].clone(), col1[i].clone(), col2[i].clone()]).collect();
    // Fil^i(Sym²) = Σ Fil^a ⊗ Fil^b over a + b = i; for the D_cris(V_f) shape
    let (j1, j2) = match d.jumps().as_slice() {
        [a, b] if a < b => (*a, *b),
        _ => return Err(Error::Structure("expected two distinct filtration jumps".into())),
    };
    if d.fil(j1 + 1) != vec![0] {
        return Err(Error::Structure("Fil must be spanned by the first basis vector".into()));
    }
    let s = FilteredPhiModule {
        basis: vec!["w(x)w".into(), "w(x)phi(w)+phi(w)(x)w".into(), "phi(w)(x)phi(w)".into()],
        phi,
        filtration: vec![
            FilStep { from: 2 * j1 + 1, span: vec![0, 1] },
            FilStep { from: j1 + j2 + 1, span: vec![0] },
            FilStep { from: 2 * j2 + 1, span: vec![] },
        ],
    };
    s.validate()?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymSquareSplit {
    pub sym2: FilteredPhiModule,
    pub v1: FilteredPhiModule,
    pub v2: FilteredPhiModule,
    /// Columns: the `V₁ ⊕ V₂` basis in `Sym²` coordinates.
    pub change_of_basis: Matrix,
    pub conjugacy_verified: bool,
}

/// Split `Sym² D` into `D(V₁) = E(mixed tensor)` and
/// `D(V₂) = E(w⊗w) ⊕ E(φw⊗φw)`.
pub fn sym_square_split(d: &FilteredPhiModule) -> Result<SymSquareSplit> {
    let s = sym_square(d)?;
    let n = d.order();
    let z = || Symbolic::zero(n);
    // the mixed tensor must be an eigenvector and {0, 2} invariant
    let phi = &s.phi;
    if !(phi[0][1].is_zero() && phi[2][1].is_zero() && phi[1][0].is_zero() && phi[1][2].is_zero()) {
        return Err(Error::Structure("Sym² does not split along the expected basis".into()));
    }
    let v1 = FilteredPhiModule {
        basis: vec![s.basis[1].clone()],
        phi: vec![vec![phi[1][1].clone()]],
        filtration: restrict(&s.filtration, &[1]),
    };
    let v2 = FilteredPhiModule {
        basis: vec![s.basis[0].clone(), s.basis[2].clone()],
        phi: vec![vec![phi[0][0].clone(), phi[0][2].clone()], vec![phi[2][0].clone(), phi[2][2].clone()]],
        filtration: restrict(&s.filtration, &[0, 2]),
    };
    v1.validate()?;
    v2.validate()?;
    let mut p = vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), z()]];
    p[1][0] = Symbolic::one(n);
    p[0][1] = Symbolic::one(n);
    p[2][2] = Symbolic::one(n);
    let mut block = vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), z()]];
    block[0][0] = v1.phi[0][0].clone();
    for i in 0..2 {
        for j in 0..2 {
            block[i + 1][j + 1] = v2.phi[i][j].clone();
        }
    }
    let conjugacy_verified = mat_mul(&s.phi, &p) == mat_mul(&p, &block);
    Ok(SymSquareSplit { sym2: s, v1, v2, change_of_basis: p, conjugacy_verified })
}

/// Restrict a coordinate filtration to a subset of basis vectors, re-indexed.
fn restrict(fil: &[FilStep], keep: &[usize]) -> Vec<FilStep> {
    let mut out: Vec<FilStep> = Vec::new();
    let mut prev = keep.len();
    for s in fil {
        let span: Vec<usize> = keep.iter().enumerate().filter(|(_, b)| s.span.contains(b)).map(|(i, _)| i).collect();
        if span.len() != prev {
            prev = span.len();
            out.push(FilStep { from: s.from, span });
        }
    }
    out
}

/// Characteristic polynomial `X² - tr X + det` of a 2×2 φ-matrix, as
/// `[1, -tr, det]`.
pub fn charpoly2(m: &Matrix) -> [Symbolic; 3] {
    let n = m[0][0].order();
    [Symbolic::one(n), m[0][0].add(&m[1][1]).neg(), det2(m)]
}

/// `±ε(p)p^{k-1}`.
pub fn v_pm_eigenvalue(k: u32, order: u64, plus: bool) -> Symbolic {
    let c = if plus { Rational::one() } else { -Rational::one() };
    Symbolic::monomial(order, c, k as i64 - 1, 1)
}

/// `v± = (±ε(p)p^{k-1}·w⊗w + φw⊗φw)/c` in the `D(V₂)` basis.
pub fn build_v_pm(k: u32, order: u64, c: &Rational) -> Result<(Vec<Symbolic>, Vec<Symbolic>)> {
    if c.is_zero() {
        return Err(Error::DegeneratePairing("normalization [phi(w)(x)phi(w), w-bar] = 0".into()));
    }
    let ci = c.recip();
    let v = |plus| vec![v_pm_eigenvalue(k, order, plus).scale(&ci), Symbolic::constant(order, ci.clone())];
    Ok((v(true), v(false)))
}

/// A vector of a Tate twist `D(j)`; `φ` acts with an extra `p^{-j}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistedVector {
    pub coords: Vec<Symbolic>,
    pub twist: i64,
}

pub fn tate_twist(v: &TwistedVector, j: i64) -> TwistedVector {
    TwistedVector { coords: v.coords.clone(), twist: v.twist + j }
}

pub fn phi_twisted(d: &FilteredPhiModule, v: &TwistedVector) -> TwistedVector {
    let n = d.order();
    let s = Symbolic::p_pow(n, -v.twist);
    TwistedVector { coords: mat_vec(&d.phi, &v.coords).iter().map(|x| x.mul(&s)).collect(), twist: v.twist }
}

/// `λ` with `φ(v) = λ v`, when `v` is an eigenvector.
pub fn eigenvalue_of(d: &FilteredPhiModule, v: &TwistedVector) -> Option<Symbolic> {
    let w = phi_twisted(d, v);
    let i = v.coords.iter().position(|c| c.terms.len() == 1)?;
    let lambda = w.coords[i].mul(&v.coords[i].inv_monomial().ok()?);
    let ok = v.coords.iter().zip(&w.coords).all(|(x, y)| x.mul(&lambda) == *y);
    ok.then_some(lambda)
}

/// Values of the pairing of `D(V₂)` against `w̄`: `[w⊗w, w̄]` and
/// `[φw⊗φw, w̄]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pairing {
    pub ww: Rational,
    pub phiphi: Rational,
}

impl Pairing {
    /// Checked constructor: `w⊗w` lies in a filtration step orthogonal to
    /// `w̄`, and the normalization must be nonzero.
    pub fn new(ww: Rational, phiphi: Rational) -> Result<Self> {
        if !ww.is_zero() {
            return Err(Error::InvalidInput("[w(x)w, w-bar] must vanish".into()));
        }
        if phiphi.is_zero() {
            return Err(Error::DegeneratePairing("[phi(w)(x)phi(w), w-bar] = 0".into()));
        }
        Ok(Pairing { ww, phiphi })
    }

    pub fn normalized(c: Rational) -> Result<Self> {
        Self::new(Rational::zero(), c)
    }

    /// No validation; for fault injection.
    pub fn unchecked(ww: Rational, phiphi: Rational) -> Self {
        Pairing { ww, phiphi }
    }

    /// `[v_j, w̄_{j'}]`, defined when the twists cancel.
    pub fn pair(&self, v: &TwistedVector, dual_twist: i64) -> Result<Symbolic> {
        if v.twist + dual_twist != 0 {
            return Err(Error::Incompatible(format!("twists {} and {dual_twist} do not cancel", v.twist)));
        }
        Ok(v.coords[0].scale(&self.ww).add(&v.coords[1].scale(&self.phiphi)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingRow {
    pub r: i64,
    pub plus: Symbolic,
    pub minus: Symbolic,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingReport {
    pub k: u32,
    pub rows: Vec<PairingRow>,
    pub pass: bool,
}

/// `[v⁺_{r+1}, w̄_{-r-1}] = [v⁻_{r+1}, w̄_{-r-1}] = 1` for `r ∈ [0, 2k-3]`,
/// with `v±` normalized by `pairing.phiphi`.
pub fn pairing_property_check(k: u32, order: u64, pairing: &Pairing) -> Result<PairingReport> {
    let (vp, vm) = build_v_pm(k, order, &pairing.phiphi)?;
    let one = Symbolic::one(order);
    let mut rows = Vec::new();
    for r in 0..=(2 * k as i64 - 3) {
        let t = |v: &Vec<Symbolic>| TwistedVector { coords: v.clone(), twist: r + 1 };
        let plus = pairing.pair(&t(&vp), -r - 1)?;
        let minus = pairing.pair(&t(&vm), -r - 1)?;
        let holds = plus == minus && plus == one;
        rows.push(PairingRow { r, plus, minus, holds });
    }
    let pass = rows.iter().all(|r| r.holds);
    Ok(PairingReport { k, rows, pass })
}

/// `1 - p^{-1} + (1 - ε(p)^{-2}p^{2k-3})(±ε(p)p^{1-k})`.
pub fn trivial_zero_factor(k: u32, order: u64, plus: bool) -> Symbolic {
    let k = k as i64;
    let sign = if plus { Rational::one() } else { -Rational::one() };
    let head = Symbolic::one(order).sub(&Symbolic::p_pow(order, -1));
    let inner = Symbolic::one(order).sub(&Symbolic::monomial(order, Rational::one(), 2 * k - 3, -2));
    head.add(&inner.mul(&Symbolic::monomial(order, sign, 1 - k, 1)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DieudonneReport {
    pub k: u32,
    pub p: u64,
    pub eps_order: u64,
    pub eps_exponent: u64,
    pub vf: FilteredPhiModule,
    pub phi_squared_scalar: bool,
    pub split: SymSquareSplit,
    pub v2_charpoly: Vec<Symbolic>,
    pub v2_eigenvalues: Vec<Symbolic>,
    pub eigen_verified: bool,
    pub hodge_tate: BTreeMap<String, Vec<i64>>,
    pub fil_dims_sym2: Vec<(i64, usize)>,
    pub v_plus: Vec<String>,
    pub v_minus: Vec<String>,
    pub pairing: PairingReport,
    pub trivial_zero: Vec<TrivialZeroRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrivialZeroRow {
    pub sign: String,
    pub symbolic: Symbolic,
    pub value: String,
    pub vanishes: bool,
}

/// Everything the `dieudonne` command reports, for `ε(p) = ζ_n^e`.
pub fn report(k: u32, p: u64, eps_order: u64, eps_exponent: u64) -> Result<DieudonneReport> {
    let n = eps_order;
    let vf = build_dcris_vf(k, n)?;
    let sq = mat_mul(&vf.phi, &vf.phi);
    let a = Symbolic::monomial(n, -Rational::one(), k as i64 - 1, 1);
    let phi_squared_scalar = sq == vec![vec![a.clone(), Symbolic::zero(n)], vec![Symbolic::zero(n), a]];
    let split = sym_square_split(&vf)?;
    let cp = charpoly2(&split.v2.phi);
    let expected = [Symbolic::one(n), Symbolic::zero(n), Symbolic::monomial(n, -Rational::one(), 2 * k as i64 - 2, 2)];
    let (vp, vm) = build_v_pm(k, n, &Rational::one())?;
    let eig = |v: &Vec<Symbolic>| eigenvalue_of(&split.v2, &TwistedVector { coords: v.clone(), twist: 0 });
    let eigs = vec![v_pm_eigenvalue(k, n, true), v_pm_eigenvalue(k, n, false)];
    let eigen_verified = cp == expected && eig(&vp).as_ref() == Some(&eigs[0]) && eig(&vm).as_ref() == Some(&eigs[1]);
    let mut hodge_tate = BTreeMap::new();
    hodge_tate.insert("V_f".to_string(), vf.hodge_tate_weights());
    hodge_tate.insert("V_1".to_string(), split.v1.hodge_tate_weights());
    hodge_tate.insert("V_2".to_string(), split.v2.hodge_tate_weights());
    let pairing = pairing_property_check(k, n, &Pairing::normalized(Rational::one())?)?;
    let trivial_zero = [true, false]
        .into_iter()
        .map(|plus| {
            let s = trivial_zero_factor(k, n, plus);
            let v = s.evaluate(p, eps_exponent);
            TrivialZeroRow {
                sign: if plus { "+" } else { "-" }.into(),
                value: v.to_rational().map_or_else(|| v.to_string(), |r| r.to_string()),
                vanishes: v.is_zero(),
                symbolic: s,
            }
        })
        .collect();
    let pass = phi_squared_scalar && split.conjugacy_verified && eigen_verified && pairing.pass;
    Ok(DieudonneReport {
        k,
        p,
        eps_order: n,
        eps_exponent,
        fil_dims_sym2: split.sym2.fil_dims(),
        vf,
        phi_squared_scalar,
        split,
        v2_charpoly: cp.to_vec(),
        v2_eigenvalues: eigs,
        eigen_verified,
        hodge_tate,
        v_plus: vp.iter().map(|x| x.to_string()).collect(),
        v_minus: vm.iter().map(|x| x.to_string()).collect(),
        pairing,
        trivial_zero,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn phi_squared() {
        let d = build_dcris_vf(2, 1).unwrap();
        let at3: Vec<Vec<CyclotomicNumber>> =
            d.phi.iter().map(|r| r.iter().map(|x| x.evaluate(3, 0)).collect()).collect();
        assert_eq!(at3[0][1], CyclotomicNumber::from_i64(1, -3));
        for k in 2..7 {
            assert!(report(k, 3, 6, 1).unwrap().phi_squared_scalar);
        }
        assert_eq!(d.fil(0), vec![0, 1]);
        assert_eq!(d.fil(1), vec![0]);
        assert!(d.fil(2).is_empty());
        assert_eq!(d.hodge_tate_weights(), vec![0, -1]);
    }

    #[test]
    fn split_and_eigenvalues() {
        for k in 2..7 {
            let r = report(k, 5, 4, 1).unwrap();
            assert!(r.split.conjugacy_verified && r.eigen_verified, "k = {k}");
            assert_eq!(r.hodge_tate["V_2"], vec![0, 2 - 2 * k as i64]);
            assert_eq!(r.hodge_tate["V_1"], vec![1 - k as i64]);
            let dims: Vec<usize> = r.fil_dims_sym2.iter().map(|x| x.1).collect();
            assert_eq!(dims, vec![3, 2, 1, 0]);
            // mixed tensor eigenvalue -ε p^{k-1}
            assert_eq!(r.split.v1.phi[0][0], Symbolic::monomial(4, -Rational::one(), k as i64 - 1, 1));
        }
    }

    #[test]
    fn v_pm_vectors() {
        let (vp, vm) = build_v_pm(2, 1, &Rational::one()).unwrap();
        let at = |v: &Vec<Symbolic>| v.iter().map(|x| x.evaluate(3, 0).to_rational().unwrap()).collect::<Vec<_>>();
        assert_eq!(at(&vp), vec![rat(3, 1), rat(1, 1)]);
        assert_eq!(at(&vm), vec![rat(-3, 1), rat(1, 1)]);
        let diff: Vec<Symbolic> = vp.iter().zip(&vm).map(|(a, b)| a.sub(b)).collect();
        assert!(diff[1].is_zero());
        assert!(matches!(build_v_pm(2, 1, &Rational::zero()), Err(Error::DegeneratePairing(_))));
    }

    #[test]
    fn pairing_checks() {
        for k in 2..7 {
            let rep = pairing_property_check(k, 2, &Pairing::normalized(Rational::one()).unwrap()).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.rows.len(), 2 * k as usize - 2);
            // scale covariance
            assert!(pairing_property_check(k, 2, &Pairing::normalized(rat(-7, 3)).unwrap()).unwrap().pass);
        }
        let bad = Pairing::unchecked(Rational::one(), Rational::one());
        assert!(!pairing_property_check(2, 1, &bad).unwrap().pass);
        assert!(Pairing::new(Rational::one(), Rational::one()).is_err());
    }

    #[test]
    fn tate_twists() {
        let k = 3;
        let r = report(k, 3, 2, 0).unwrap();
        let (vp, _) = build_v_pm(k, 2, &Rational::one()).unwrap();
        let v = TwistedVector { coords: vp, twist: 0 };
        assert_eq!(tate_twist(&v, 0), v);
        assert_eq!(tate_twist(&tate_twist(&v, 2), 3), tate_twist(&v, 5));
        let tw = tate_twist(&v, 2 * k as i64 - 2);
        let lam = eigenvalue_of(&r.split.v2, &tw).unwrap();
        assert_eq!(lam, Symbolic::monomial(2, Rational::one(), 1 - k as i64, 1));
    }

    #[test]
    fn trivial_zero_values() {
        let v = |k, plus, p, e: u64, n| trivial_zero_factor(k, n, plus).evaluate(p, e);
        assert!(v(2, true, 7, 0, 1).is_zero());
        assert!(trivial_zero_factor(2, 1, true).is_zero());
        assert_eq!(v(2, false, 3, 0, 1).to_rational(), Some(rat(4, 3)));
        assert_eq!(v(3, true, 3, 0, 1).to_rational(), Some(rat(-20, 9)));
        for k in 2..7 {
            for n in [1u64, 2, 3, 4, 6] {
                for e in 0..n {
                    for p in [3u64, 5, 7] {
                        let z = v(k, true, p, e, n).is_zero();
                        assert_eq!(z, k == 2 && e == 0, "k={k} n={n} e={e} p={p}");
                    }
                }
            }
        }
    }
}
