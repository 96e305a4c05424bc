//! End-to-end verification: the hypothesis gate followed by every suite,
//! aggregated into a deterministic JSON report.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arith::character::{gauss_norm_identity, DirichletCharacter};
use crate::arith::Rational;
use crate::dieudonne;
use crate::error::{Error, Result};
use crate::hecke::catalog::load_form;
use crate::hecke::{check_hypotheses, CmForm, HypothesisReport};
use crate::kl::{kubota_leopoldt, kummer_pair, oracle_check, Regulator};
use crate::pollack::{expected_zero, split_pm, split_working_precision, LogPair, Sign, SyntheticPair};
use crate::series::{CharacterPoint, IwasawaSeries};
use crate::sympower::{compare_traces, verify_factorization};
use crate::symsq::{consistency_sweep, nonvanishing_guard, split_compatibility};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub form: String,
    pub p: u64,
    /// Largest symmetric power swept.
    pub m: u32,
    pub bound: u64,
    /// `(M, D)`: `p`-adic precision and `X`-degree.
    pub prec: (i64, usize),
    pub seed: u64,
    /// Random pairs pushed through the `±` round trip.
    pub pairs: usize,
    /// Random triples for the assembly/splitting diagram.
    pub triples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { form: "32a".into(), p: 3, m: 4, bound: 500, prec: (20, 128), seed: 0, pairs: 100, triples: 50 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prec.0 < 4 || self.prec.1 < 8 {
            return Err(Error::InvalidInput(format!("precision {:?} too small (need M >= 4, D >= 8)", self.prec)));
        }
        if self.m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        Ok(())
    }
}

/// Parse `"M,D"`.
pub fn parse_prec(s: &str) -> Result<(i64, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("precision {s:?} is not of the form M,D")))?;
    let m = a.trim().parse().map_err(|_| Error::InvalidInput(format!("bad M in {s:?}")))?;
    let d = b.trim().parse().map_err(|_| Error::InvalidInput(format!("bad D in {s:?}")))?;
    Ok((m, d))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: Value) -> Self {
        Check { name: name.into(), pass, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    fn new(name: &str, checks: Vec<Check>) -> Self {
        SuiteResult { name: name.into(), pass: checks.iter().all(|c| c.pass), checks }
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Gated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub status: Status,
    pub gate: HypothesisReport,
    pub suites: Vec<SuiteResult>,
    /// Seconds per suite; excluded from the hash.
    pub timings: BTreeMap<String, f64>,
    pub content_hash: String,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// sha256 of the canonical serialization with timings and the hash blanked.
    pub fn compute_hash(&self) -> String {
        let mut bare = self.clone();
        bare.timings.clear();
        bare.content_hash.clear();
        content_hash(&bare)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// sha256 of the compact JSON form; `serde_json` keeps struct field order and
/// `BTreeMap` keys sorted, so this is stable across runs.
pub fn content_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("report values serialize");
    hex::encode(Sha256::digest(&bytes))
}

pub fn run_pipeline(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let form = load_form(&config.form)?;
    run_pipeline_for(&form, config)
}

/// Same as [`run_pipeline`] for a form built outside the catalog.
pub fn run_pipeline_for(form: &CmForm, config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let gate = check_hypotheses(form, config.p);
    let mut report = Report {
        tool: "cmsym".into(),
        version: VERSION.into(),
        config: config.clone(),
        status: Status::Gated,
        gate,
        suites: Vec::new(),
        timings: BTreeMap::new(),
        content_hash: String::new(),
    };
    if report.gate.all_pass {
        let suites: [(&str, &dyn Fn() -> Result<SuiteResult>); 6] = [
            ("sym", &|| sym_suite(form, config.m, config.bound)),
            ("dieudonne", &|| dieudonne_suite(config.p)),
            ("pollack", &|| pollack_suite(config.p, config.prec, config.pairs, config.seed)),
            ("kl", &|| kl_suite(form, config.p, config.seed)),
            ("interpolation", &|| interpolation_suite(form, config.p, config.triples, config.seed)),
            ("gauss", &gauss_suite),
        ];
        for (name, run) in suites {
            let start = Instant::now();
            let s = run()?;
            report.timings.insert(name.to_string(), start.elapsed().as_secs_f64());
            report.suites.push(s);
        }
        report.status = if report.suites.iter().all(|s| s.pass) { Status::Pass } else { Status::Fail };
    }
    report.content_hash = report.compute_hash();
    Ok(report)
}

/// Factorization of `L(Sym^m)` for `2 <= m <= max_m` and the trace oracle.
pub fn sym_suite(form: &CmForm, max_m: u32, bound: u64) -> Result<SuiteResult> {
    let mut checks = Vec::new();
    for m in 2..=max_m {
        let mut r = verify_factorization(m, form, bound)?;
        r.wall_time = 0.0;
        checks.push(Check::new(format!("factorization m={m}"), r.pass(), serde_json::to_value(&r)?));
    }
    let (compared, mismatches) = compare_traces(form, max_m, bound)?;
    checks.push(Check::new(
        "trace routes agree",
        mismatches.is_empty() && compared > 0,
        json!({ "compared": compared, "mismatches": mismatches }),
    ));
    Ok(SuiteResult::new("sym", checks))
}

/// The filtered φ-module checks for `k ∈ [2, 6]` and `ε(p) ∈ {1, -1, i}`.
pub fn dieudonne_suite(p: u64) -> Result<SuiteResult> {
    let mut checks = Vec::new();
    for k in 2..=6u32 {
        for (order, e, label) in [(1u64, 0u64, "1"), (2, 1, "-1"), (4, 1, "i")] {
            let r = dieudonne::report(k, p, order, e)?;
            let kk = k as i64;
            let ht = r.hodge_tate["V_2"] == vec![0, 2 - 2 * kk] && r.hodge_tate["V_f"] == vec![0, 1 - kk];
            let plus_zero = r.trivial_zero.iter().any(|t| t.sign == "+" && t.vanishes);
            let minus_zero = r.trivial_zero.iter().any(|t| t.sign == "-" && t.vanishes);
            // the minus factor is the plus factor at -ε(p)
            let tz = plus_zero == (k == 2 && label == "1") && minus_zero == (k == 2 && label == "-1");
            checks.push(Check::new(
                format!("k={k} eps(p)={label}"),
                r.pass && ht && tz,
                json!({
                    "phi_squared_scalar": r.phi_squared_scalar,
                    "conjugacy": r.split.conjugacy_verified,
                    "eigenvalues": r.v2_eigenvalues.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "eigen_verified": r.eigen_verified,
                    "hodge_tate": r.hodge_tate,
                    "pairing": r.pairing.pass,
                    "trivial_zero": r.trivial_zero.iter().map(|t| (t.sign.clone(), t.value.clone())).collect::<Vec<_>>(),
                }),
            ));
        }
    }
    Ok(SuiteResult::new("dieudonne", checks))
}

/// Largest wild level `<= 4` whose ramified degree `(p-1)p^{ℓ-1}` stays
/// at most 100; factored evaluation beyond that is slow.
pub fn max_wild_level(p: u64) -> u32 {
    (1..=4u32).take_while(|&l| (p - 1) * p.pow(l - 1) <= 100).last().unwrap_or(1)
}

/// Growth, zero pattern, round trips at `(M, D)` and agreement with
/// `(3M/4, 3D/4)`.
pub fn pollack_suite(p: u64, prec: (i64, usize), pairs: usize, seed: u64) -> Result<SuiteResult> {
    let (m, d) = prec;
    let mut checks = Vec::new();
    for k in [2u32, 3] {
        let logs = LogPair::build(k, p, m, d)?;
        for sign in Sign::both() {
            let h = logs.get(sign);
            let g = h.series.growth_check(&Rational::from_integer((k as i64 - 1).into()));
            checks.push(Check::new(format!("growth k={k} {sign}"), g.ok, serde_json::to_value(&g)?));
            let mut table = Vec::new();
            let mut ok = true;
            for level in 0..=max_wild_level(p) {
                for s in 0..=(2 * k as i64 - 3) {
                    let pt = CharacterPoint::new(s, 0, level);
                    let zero = h.zero_pattern(&pt)?;
                    // the truncated series is only evaluable at low wild level
                    let direct = match h.series.evaluate(&pt) {
                        Ok(v) => Some(v.sub_ref(&h.evaluate_factored(&pt)?).is_zero()),
                        Err(Error::InsufficientDegree { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    let row_ok = zero == expected_zero(sign, level) && direct != Some(false);
                    ok &= row_ok;
                    table.push(json!({ "level": level, "s": s, "zero": zero, "series_agrees": direct }));
                }
            }
            checks.push(Check::new(format!("zero pattern k={k} {sign}"), ok, Value::Array(table)));
        }
    }

    let work = split_working_precision(p, m, d);
    let logs = LogPair::build(2, p, work, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x706f6c6c);
    let mut failures = Vec::new();
    let mut first = None;
    for i in 0..pairs {
        let pair = SyntheticPair::generate(&logs, &mut rng)?;
        let out = split_pm(&pair.l_plus, &pair.l_minus, &logs)?;
        if !(out.plus.agrees_mod(&pair.a, m, d) && out.minus.agrees_mod(&pair.b, m, d)) {
            failures.push(i);
        }
        if first.is_none() {
            first = Some((pair, out));
        }
    }
    checks.push(Check::new(
        "split round trip",
        failures.is_empty(),
        json!({ "pairs": pairs, "precision": [m, d], "failures": failures }),
    ));

    // precision stability
    let (m2, d2) = (m * 3 / 4, d * 3 / 4);
    let low = LogPair::build(2, p, split_working_precision(p, m2, d2), d2)?;
    let high = LogPair::build(2, p, m, d)?;
    let mut stable = Sign::both().iter().all(|&s| low.get(s).series.agrees_mod(&high.get(s).series, m2, d2));
    if let Some((pair, out)) = first {
        let a = pair.a.truncate(work, d2).mark_exact();
        let b = pair.b.truncate(work, d2).mark_exact();
        let ap = a.mul(&low.plus.series)?;
        let bm = b.mul(&low.minus.series)?;
        let lo = split_pm(&ap.add(&bm)?, &ap.sub(&bm)?, &low)?;
        stable &= lo.plus.agrees_mod(&out.plus, m2, d2) && lo.minus.agrees_mod(&out.minus, m2, d2);
    }
    checks.push(Check::new("precision stability", stable, json!({ "high": [m, d], "low": [m2, d2] })));
    Ok(SuiteResult::new("pollack", checks))
}

/// `ε_K·ε`, the character of the abelian piece of `Sym²`.
pub fn abelian_character(form: &CmForm) -> Result<DirichletCharacter> {
    Ok(form.field.quadratic_character().mul(&form.nebentypus).primitive())
}

/// Admissible regulators: the first `count` integers `c > 1` accepted by
/// the construction.
fn fixed_regulators(eta: &DirichletCharacter, p: u64, count: usize) -> Vec<u64> {
    (2..200u64)
        .filter(|&c| kubota_leopoldt(eta, p, 2, 2, Regulator::Fixed(c)).is_ok())
        .take(count)
        .collect()
}

/// Oracle agreement, `c`-independence and Kummer congruences.
pub fn kl_suite(form: &CmForm, p: u64, seed: u64) -> Result<SuiteResult> {
    const TARGET: i64 = 10;
    let eta = abelian_character(form)?;
    let mut checks = Vec::new();
    let auto = kubota_leopoldt(&eta, p, TARGET, 16, Regulator::Auto)?;
    let rs: Vec<u32> = (0..=5).filter(|&r| !auto.pole_components().contains(&((r as usize) % (p as usize - 1)))).collect();
    let rows = oracle_check(&auto, &rs, TARGET)?;
    checks.push(Check::new(
        format!("closed form to p^{TARGET}"),
        rows.iter().all(|r| r.pass),
        json!({ "eta_modulus": eta.modulus(), "rows": rows }),
    ));
    // values at x^r to p^TARGET, whole series to the digits both carry
    let cs = fixed_regulators(&eta, p, 2);
    let mut agree = cs.len() == 2;
    for &c in &cs {
        let other = kubota_leopoldt(&eta, p, TARGET, 16, Regulator::Fixed(c))?;
        agree &= other.series.eq_to_precision(&auto.series);
        for &r in &rs {
            agree &= other.value_at_power(r as i64)?.eq_mod(&auto.value_at_power(r as i64)?, TARGET);
        }
    }
    checks.push(Check::new("regulator independence", agree, json!({ "c": cs, "also": "auto", "target": TARGET })));

    let anchor = kummer_pair(5, 1, 5)?;
    checks.push(Check::new("kummer p=5 (1,5)", anchor.holds && anchor.residue == "3", serde_json::to_value(&anchor)?));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b756d6d);
    let mut rows = Vec::new();
    while rows.len() < 50 {
        let pm1 = p as u32 - 1;
        let r = rng.gen_range(0..24u32);
        if (r + 1) % pm1 == 0 {
            continue;
        }
        let j = rng.gen_range(0..2u32);
        let step = pm1 * (p as u32).pow(j) * rng.gen_range(1..3u32);
        rows.push(kummer_pair(p, r, r + step)?);
    }
    checks.push(Check::new(
        "kummer random pairs",
        rows.iter().all(|r| r.holds),
        json!({ "p": p, "failures": rows.iter().filter(|r| !r.holds).collect::<Vec<_>>(), "count": rows.len() }),
    ));
    Ok(SuiteResult::new("kl", checks))
}

/// Symbolic interpolation bookkeeping, the assembly/splitting diagram and
/// the nonvanishing gate.
pub fn interpolation_suite(form: &CmForm, p: u64, triples: usize, seed: u64) -> Result<SuiteResult> {
    const PREC: i64 = 10;
    const DEG: usize = 32;
    let mut checks = Vec::new();
    let rows = consistency_sweep()?;
    checks.push(Check::new(
        "consistency sweep",
        rows.iter().all(|r| r.pass),
        json!({ "cases": rows.len(), "failures": rows.iter().filter(|r| !r.pass).collect::<Vec<_>>() }),
    ));

    let work = split_working_precision(p, PREC, DEG);
    let logs = LogPair::build(form.k, p, work, DEG)?;
    let eta = abelian_character(form)?;
    let kl = kubota_leopoldt(&eta, p, PREC + 2, DEG, Regulator::Auto)?.series;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x73796d32);
    let mut failures = Vec::new();
    let mut guard = None;
    let mut tested = PREC;
    for i in 0..triples {
        let pair = SyntheticPair::generate(&logs, &mut rng)?;
        // the first triple uses the actual KL series
        let klx = if i == 0 { kl.clone() } else { IwasawaSeries::random_bounded(p, work, DEG, &mut rng) };
        let rep = split_compatibility(&pair.l_plus, &pair.l_minus, &klx, form.k, &logs, PREC, DEG / 2)?;
        // random KL data carries full precision, so those must reach PREC
        if !(rep.plus_agrees && rep.minus_agrees) || (i > 0 && rep.tested_precision < PREC) {
            failures.push(i);
        }
        if i == 0 {
            tested = rep.tested_precision;
            guard = Some(nonvanishing_guard(&pair.l_plus, 0)?);
        }
    }
    checks.push(Check::new(
        "assembly commutes with splitting",
        failures.is_empty(),
        json!({ "triples": triples, "precision": [PREC, DEG / 2], "kl_triple_precision": tested, "failures": failures }),
    ));
    if let Some(g) = guard {
        // gate on the injected φ² input
        checks.push(Check::new("nonvanishing guard", g.nonzero && !g.inconclusive, serde_json::to_value(&g)?));
    }
    Ok(SuiteResult::new("interpolation", checks))
}

/// `τ(θ)τ(θ̄) = θ(-1)p^n` for primitive `θ` mod `p^n`, `p ∈ {3, 5, 7}`, `n <= 3`.
pub fn gauss_suite() -> Result<SuiteResult> {
    let mut checks = Vec::new();
    for p in [3u64, 5, 7] {
        for n in 1..=3u32 {
            let chars = DirichletCharacter::primitive_prime_power(p, n)?;
            let mut bad = Vec::new();
            for (i, t) in chars.iter().enumerate() {
                if !gauss_norm_identity(t)? {
                    bad.push(i);
                }
            }
            checks.push(Check::new(
                format!("p={p} n={n}"),
                bad.is_empty() && !chars.is_empty(),
                json!({ "characters": chars.len(), "failures": bad }),
            ));
        }
    }
    Ok(SuiteResult::new("gauss", checks))
}
