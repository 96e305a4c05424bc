//! The checked-in form catalog and its regeneration from point counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CmForm, Grossencharacter, ImagQuadField, QuadInt, Weierstrass};
use crate::arith::numtheory::primes_in;
use crate::error::{Error, Result};

pub const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

/// Primes below this bound carry a committed `a_q`.
pub const TABLE_BOUND: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub label: String,
    pub d: i64,
    pub k: u32,
    #[serde(rename = "N")]
    pub level: u64,
    /// Generator `[a, b]` of the conductor ideal, as `a + bω`.
    pub conductor: [i128; 2],
    /// Residues mod the conductor that the canonical generator must hit.
    pub unit_fixing: Vec<[i128; 2]>,
    pub curve: [i64; 5],
    #[serde(default)]
    pub a_q: BTreeMap<u64, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub forms: Vec<FormEntry>,
}

impl FormEntry {
    pub fn to_form(&self) -> Result<CmForm> {
        let field = ImagQuadField::new(self.d)?;
        let q = |[a, b]: [i128; 2]| QuadInt::new(a, b);
        let chi = Grossencharacter::new(
            field,
            self.k,
            q(self.conductor),
            self.unit_fixing.iter().copied().map(q).collect(),
        )?;
        let mut form = CmForm::from_character(&self.label, chi)?;
        if form.level != self.level {
            return Err(Error::Catalog(format!(
                "{}: level {} recorded, {} derived",
                self.label, self.level, form.level
            )));
        }
        form.curve = Some(Weierstrass(self.curve));
        form.a_q_table = self.a_q.clone();
        Ok(form)
    }
}

impl Catalog {
    pub fn builtin() -> Result<Self> {
        Ok(serde_json::from_str(CATALOG_JSON)?)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.forms.iter().map(|f| f.label.as_str()).collect()
    }

    pub fn entry(&self, label: &str) -> Result<&FormEntry> {
        self.forms
            .iter()
            .find(|f| f.label == label)
            .ok_or_else(|| Error::Catalog(format!("unknown form {label}; known: {}", self.labels().join(", "))))
    }

    pub fn to_pretty_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

pub fn load_form(label: &str) -> Result<CmForm> {
    Catalog::builtin()?.entry(label)?.to_form()
}

pub fn all_forms() -> Result<Vec<CmForm>> {
    Catalog::builtin()?.forms.iter().map(FormEntry::to_form).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub label: String,
    pub q: u64,
    pub committed: Option<i64>,
    pub regenerated: Option<i64>,
}

/// Disagreement between point counts and the Grossencharacter trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterMismatch {
    pub label: String,
    pub q: u64,
    pub point_count: i64,
    pub character: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegenReport {
    pub catalog: Catalog,
    pub diffs: Vec<TableDiff>,
    pub character_mismatches: Vec<CharacterMismatch>,
}

impl RegenReport {
    pub fn clean(&self) -> bool {
        self.diffs.is_empty() && self.character_mismatches.is_empty()
    }
}

/// Recount `a_q` for every good `q < 1000`, cross-check against the
/// character and diff against the committed tables.
pub fn regenerate(committed: &Catalog) -> Result<RegenReport> {
    let mut out = committed.clone();
    let mut diffs = Vec::new();
    let mut character_mismatches = Vec::new();
    for entry in out.forms.iter_mut() {
        let mut form = entry.to_form()?;
        form.a_q_table.clear();
        let curve = Weierstrass(entry.curve);
        let mut table = BTreeMap::new();
        for q in primes_in(2, TABLE_BOUND) {
            if !form.is_good(q) {
                continue;
            }
            let a = curve.trace_of_frobenius(q);
            table.insert(q, a);
            let from_chi = form.a_q(q)?;
            if from_chi.to_rational() != Some(crate::arith::Rational::from_integer(a.into())) {
                character_mismatches.push(CharacterMismatch {
                    label: entry.label.clone(),
                    q,
                    point_count: a,
                    character: from_chi.to_string(),
                });
            }
        }
        let keys: std::collections::BTreeSet<u64> = table.keys().chain(entry.a_q.keys()).copied().collect();
        for q in keys {
            let (c, r) = (entry.a_q.get(&q).copied(), table.get(&q).copied());
            if c != r {
                diffs.push(TableDiff { label: entry.label.clone(), q, committed: c, regenerated: r });
            }
        }
        entry.a_q = table;
    }
    Ok(RegenReport { catalog: out, diffs, character_mismatches })
}
