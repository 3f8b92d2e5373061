//! The identity catalogue and its batch verifier.
//!
//! Entries live in a TOML data file (`data/registry.toml`, embedded at build
//! time) written in the expression grammar, so a transcription fix is a data
//! change. See `docs/data-format.md`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, parse_with_defs, Definitions, Expr};
use crate::series::VerifyOutcome;

const BUILTIN: &str = include_str!("../data/registry.toml");

/// Environment variable naming a registry file that replaces the built-in one.
pub const REGISTRY_ENV: &str = "QRR_REGISTRY";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Main,
    Corollary,
    Gh,
    Lemma,
    Intermediate,
    Concluding,
    Classical,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::Main,
        Group::Corollary,
        Group::Gh,
        Group::Lemma,
        Group::Intermediate,
        Group::Concluding,
        Group::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Main => "main",
            Group::Corollary => "corollary",
            Group::Gh => "gh",
            Group::Lemma => "lemma",
            Group::Intermediate => "intermediate",
            Group::Concluding => "concluding",
            Group::Classical => "classical",
        }
    }

    /// Default `min_order` in fifths of q.
    pub fn default_min_order(self) -> i64 {
        match self {
            Group::Concluding => 600,
            _ => 200,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct IdentityEntry {
    pub id: String,
    pub group: Group,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Source text as written in the data file.
    pub lhs_text: String,
    pub rhs_text: String,
    /// Short neutral description of the identity.
    pub source: String,
    pub min_order: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default, rename = "def")]
    defs: Vec<RawDef>,
    #[serde(default, rename = "identity")]
    identities: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDef {
    name: String,
    expr: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    group: Group,
    lhs: String,
    rhs: String,
    source: String,
    min_order: Option<i64>,
}

/// Result of checking one entry.
#[derive(Clone, Debug)]
pub struct Verification {
    pub id: String,
    pub group: Group,
    /// Order actually used, in fifths of q.
    pub order: i64,
    pub outcome: Option<VerifyOutcome>,
    /// Leading terms of both sides when they disagree.
    pub diagnostic: Option<String>,
    pub error: Option<String>,
    pub elapsed_ms: u128,
}

impl Verification {
    pub fn is_zero(&self) -> bool {
        self.outcome.as_ref().is_some_and(VerifyOutcome::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct Registry {
    defs: Definitions,
    def_order: Vec<String>,
    entries: Vec<IdentityEntry>,
}

impl Registry {
    /// The built-in catalogue, or the file named by `QRR_REGISTRY` when set.
    pub fn load_default() -> Result<Self> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(path) => Self::load(path),
            None => Self::builtin(),
        }
    }

    pub fn builtin() -> Result<Self> {
        Self::from_toml_str(BUILTIN)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        let mut defs = Definitions::new();
        let mut def_order = Vec::new();
        for d in raw.defs {
            let e = parse_with_defs(&d.expr, &defs)
                .map_err(|err| Error::Data(format!("definition `{}`: {err}", d.name)))?;
            if defs.insert(d.name.clone(), e).is_some() {
                return Err(Error::Data(format!("duplicate definition `{}`", d.name)));
            }
            def_order.push(d.name);
        }
        let mut entries: Vec<IdentityEntry> = Vec::with_capacity(raw.identities.len());
        for r in raw.identities {
            if entries.iter().any(|e| e.id == r.id) {
                return Err(Error::Data(format!("duplicate identity id `{}`", r.id)));
            }
            let side = |text: &str, which: &str| {
                parse_with_defs(text, &defs)
                    .map_err(|err| Error::Data(format!("identity `{}` {which}: {err}", r.id)))
            };
            entries.push(IdentityEntry {
                lhs: side(&r.lhs, "lhs")?,
                rhs: side(&r.rhs, "rhs")?,
                min_order: r.min_order.unwrap_or(r.group.default_min_order()),
                id: r.id,
                group: r.group,
                lhs_text: r.lhs,
                rhs_text: r.rhs,
                source: r.source,
            });
        }
        Ok(Registry {
            defs,
            def_order,
            entries,
        })
    }

    pub fn definitions(&self) -> &Definitions {
        &self.defs
    }

    /// Definition names in file order.
    pub fn definition_names(&self) -> &[String] {
        &self.def_order
    }

    /// All entries in catalogue order.
    pub fn entries(&self) -> &[IdentityEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Result<&IdentityEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    /// Entries of one group (or all), in catalogue order.
    pub fn list(&self, group: Option<Group>) -> Vec<&IdentityEntry> {
        self.entries
            .iter()
            .filter(|e| group.map_or(true, |g| e.group == g))
            .collect()
    }

    /// Parses an expression that may use this registry's definitions.
    pub fn parse(&self, text: &str) -> Result<Expr> {
        Ok(parse_with_defs(text, &self.defs)?)
    }

    /// Checks one entry at `order`, which must reach the entry's minimum.
    pub fn verify(&self, id: &str, order: i64) -> Result<Verification> {
        let entry = self.get(id)?;
        if order < entry.min_order {
            return Err(Error::OrderTooLow {
                order,
                min_order: entry.min_order,
            });
        }
        Ok(verify_entry(entry, order))
    }

    /// Checks every entry of `group` (or all) at `max(order, min_order)`.
    ///
    /// `jobs = Some(1)` runs on the calling thread; `None` uses all cores.
    /// Results come back in catalogue order either way.
    pub fn verify_all(
        &self,
        order: i64,
        group: Option<Group>,
        jobs: Option<usize>,
    ) -> Vec<Verification> {
        let selected = self.list(group);
        let run = |e: &&IdentityEntry| verify_entry(e, order.max(e.min_order));
        match jobs {
            Some(1) => selected.iter().map(run).collect(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(|pool| pool.install(|| selected.par_iter().map(run).collect()))
                .unwrap_or_else(|_| selected.iter().map(run).collect()),
            None => selected.par_iter().map(run).collect(),
        }
    }
}

/// Checks `lhs = rhs` below `q^(order/5)`.
pub fn verify_exprs(lhs: &Expr, rhs: &Expr, order: i64) -> Result<(VerifyOutcome, Option<String>)> {
    let diff = expr::difference(lhs, rhs, order)?;
    let outcome = diff.is_zero();
    let diagnostic = if outcome.is_zero() {
        None
    } else {
        Some(leading_terms(lhs, rhs, order))
    };
    Ok((outcome, diagnostic))
}

fn leading_terms(lhs: &Expr, rhs: &Expr, order: i64) -> String {
    let describe = |e: &Expr| match expr::evaluate(e, order) {
        Ok(v) => {
            let v = v.to_fifths();
            let lead = v.terms().next();
            match lead {
                Some((k, c)) => {
                    let e = v.exponent(k);
                    if e.is_integer() {
                        format!("{c}*q^{e}")
                    } else {
                        format!("{c}*q^({e})")
                    }
                }
                None => "0".to_string(),
            }
        }
        Err(err) => format!("error: {err}"),
    };
    format!(
        "lhs leads with {}, rhs leads with {}",
        describe(lhs),
        describe(rhs)
    )
}

pub fn verify_entry(entry: &IdentityEntry, order: i64) -> Verification {
    let start = Instant::now();
    let (outcome, diagnostic, error) = match verify_exprs(&entry.lhs, &entry.rhs, order) {
        Ok((o, d)) => (Some(o), d, None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    Verification {
        id: entry.id.clone(),
        group: entry.group,
        order,
        outcome,
        diagnostic,
        error,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
