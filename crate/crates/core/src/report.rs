//! Machine-readable reports for the command-line tool.
//!
//! A [`Report`] serializes to versioned JSON (schema in
//! `docs/report-schema.json`) and re-parses into the same value. Coefficients
//! are decimal strings so arbitrary precision survives any JSON reader.
//! Everything except `wall_time_ms` and `elapsed_ms` is deterministic for
//! fixed inputs.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::partitions::TheoremReport;
use crate::registry::{IdentityEntry, Verification};
use crate::series::{LaurentSeries, Status, VerifyOutcome};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "qrr";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    /// The command line as invoked, program name excluded.
    pub command: Vec<String>,
    /// Truncation order in fifths of q, when the command has one.
    pub order: Option<i64>,
    pub wall_time_ms: u64,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(command: Vec<String>, order: Option<i64>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            order,
            wall_time_ms: 0,
            items: Vec::new(),
        }
    }

    /// True when every item is a pass: ZERO outcomes, holding relations,
    /// agreeing count oracles.
    pub fn passed(&self) -> bool {
        self.items.iter().all(Item::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// CSV of every table in the report. Coefficient tables use the columns
    /// `exponent_num,exponent_den,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Option<&[&str]> = None;
        for item in &self.items {
            let h = item.csv_header();
            if header != Some(h) {
                w.write_record(h).expect("in-memory writer");
                header = Some(h);
            }
            for row in item.csv_rows() {
                w.write_record(&row).expect("in-memory writer");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            item.write_text(&mut out);
        }
        out
    }
}

/// A rational exponent of q in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

impl From<Rational64> for Exponent {
    fn from(r: Rational64) -> Self {
        Exponent {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exponent_num: i64,
    pub exponent_den: i64,
    pub coefficient: String,
}

impl Term {
    fn new(e: Rational64, c: &BigInt) -> Self {
        Term {
            exponent_num: *e.numer(),
            exponent_den: *e.denom(),
            coefficient: c.to_string(),
        }
    }
}

/// Terms of `s`, on its smallest lattice. `dense` also lists zero
/// coefficients between the least exponent and the bound.
pub fn table(s: &LaurentSeries, dense: bool) -> Vec<Term> {
    let s = s.reduce_lattice();
    if !dense {
        return s
            .terms()
            .map(|(k, c)| Term::new(s.exponent(k), c))
            .collect();
    }
    let zero = BigInt::zero();
    (s.lo()..s.bound())
        .map(|k| Term::new(s.exponent(k), s.coeff(k).as_ref().unwrap_or(&zero)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outcome {
    pub status: Status,
    pub first_nonzero_exponent: Option<Exponent>,
    pub first_nonzero_coefficient: Option<String>,
    /// Every coefficient strictly below `q^checked_below` was compared.
    pub checked_below: Exponent,
}

impl From<&VerifyOutcome> for Outcome {
    fn from(o: &VerifyOutcome) -> Self {
        Outcome {
            status: o.status,
            first_nonzero_exponent: o.first_nonzero_exponent.map(Exponent::from),
            first_nonzero_coefficient: o.first_nonzero_coefficient.as_ref().map(BigInt::to_string),
            checked_below: o.checked_exponent().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountRow {
    pub n: u64,
    pub gf_count: String,
    /// Direct enumeration, present when `n` is within the oracle cap.
    pub enum_count: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRow {
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
    pub judged: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Item {
    Expansion {
        expr: String,
        /// Exact below this exponent.
        exact_below: Exponent,
        terms: Vec<Term>,
    },
    Dissection {
        expr: String,
        modulus: u32,
        residue: u32,
        exact_below: Exponent,
        terms: Vec<Term>,
    },
    Verification {
        id: Option<String>,
        group: Option<String>,
        lhs: String,
        rhs: String,
        order: i64,
        outcome: Option<Outcome>,
        diagnostic: Option<String>,
        error: Option<String>,
        elapsed_ms: u64,
    },
    PartitionCounts {
        spec: String,
        rows: Vec<CountRow>,
    },
    PartitionRelation {
        id: String,
        min_n: u64,
        passed: bool,
        judged: usize,
        rows: Vec<RelationRow>,
    },
    Entry {
        id: String,
        group: String,
        lhs: String,
        rhs: String,
        source: String,
        min_order: i64,
    },
}

impl Item {
    pub fn verification(v: &Verification, entry: &IdentityEntry) -> Self {
        Item::Verification {
            id: Some(v.id.clone()),
            group: Some(v.group.to_string()),
            lhs: entry.lhs_text.clone(),
            rhs: entry.rhs_text.clone(),
            order: v.order,
            outcome: v.outcome.as_ref().map(Outcome::from),
            diagnostic: v.diagnostic.clone(),
            error: v.error.clone(),
            elapsed_ms: v.elapsed_ms as u64,
        }
    }

    pub fn relation(r: &TheoremReport) -> Self {
        Item::PartitionRelation {
            id: r.id.clone(),
            min_n: r.min_n,
            passed: r.passed(),
            judged: r.judged(),
            rows: r
                .rows
                .iter()
                .map(|row| RelationRow {
                    n: row.n,
                    lhs: row.lhs.to_string(),
                    rhs: row.rhs.to_string(),
                    judged: row.judged,
                    holds: row.holds(),
                })
                .collect(),
        }
    }

    pub fn entry(e: &IdentityEntry) -> Self {
        Item::Entry {
            id: e.id.clone(),
            group: e.group.to_string(),
            lhs: e.lhs_text.clone(),
            rhs: e.rhs_text.clone(),
            source: e.source.clone(),
            min_order: e.min_order,
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Item::Verification { outcome, .. } => {
                outcome.as_ref().is_some_and(|o| o.status == Status::Zero)
            }
            Item::PartitionCounts { rows, .. } => rows
                .iter()
                .all(|r| r.enum_count.as_ref().map_or(true, |e| *e == r.gf_count)),
            Item::PartitionRelation { passed, .. } => *passed,
            Item::Expansion { .. } | Item::Dissection { .. } | Item::Entry { .. } => true,
        }
    }

    fn csv_header(&self) -> &'static [&'static str] {
        match self {
            Item::Expansion { .. } | Item::Dissection { .. } => {
                &["exponent_num", "exponent_den", "coefficient"]
            }
            Item::Verification { .. } => &[
                "id",
                "order",
                "status",
                "first_nonzero_exponent",
                "first_nonzero_coefficient",
                "error",
            ],
            Item::PartitionCounts { .. } => &["spec", "n", "gf_count", "enum_count"],
            Item::PartitionRelation { .. } => &["id", "n", "lhs", "rhs", "judged", "holds"],
            Item::Entry { .. } => &["id", "group", "min_order", "lhs", "rhs", "source"],
        }
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        match self {
            Item::Expansion { terms, .. } | Item::Dissection { terms, .. } => terms
                .iter()
                .map(|t| {
                    vec![
                        t.exponent_num.to_string(),
                        t.exponent_den.to_string(),
                        t.coefficient.clone(),
                    ]
                })
                .collect(),
            Item::Verification {
                id,
                order,
                outcome,
                error,
                ..
            } => {
                let (status, e, c) = match outcome {
                    Some(o) => (
                        status_name(o.status).to_string(),
                        o.first_nonzero_exponent
                            .map(|e| e.to_string())
                            .unwrap_or_default(),
                        o.first_nonzero_coefficient.clone().unwrap_or_default(),
                    ),
                    None => ("ERROR".to_string(), String::new(), String::new()),
                };
                vec![vec![
                    id.clone().unwrap_or_default(),
                    order.to_string(),
                    status,
                    e,
                    c,
                    error.clone().unwrap_or_default(),
                ]]
            }
            Item::PartitionCounts { spec, rows } => rows
                .iter()
                .map(|r| {
                    vec![
                        spec.clone(),
                        r.n.to_string(),
                        r.gf_count.clone(),
                        r.enum_count.clone().unwrap_or_default(),
                    ]
                })
                .collect(),
            Item::PartitionRelation { id, rows, .. } => rows
                .iter()
                .map(|r| {
                    vec![
                        id.clone(),
                        r.n.to_string(),
                        r.lhs.clone(),
                        r.rhs.clone(),
                        r.judged.to_string(),
                        r.holds.to_string(),
                    ]
                })
                .collect(),
            Item::Entry {
                id,
                group,
                lhs,
                rhs,
                source,
                min_order,
            } => vec![vec![
                id.clone(),
                group.clone(),
                min_order.to_string(),
                lhs.clone(),
                rhs.clone(),
                source.clone(),
            ]],
        }
    }

    fn write_text(&self, out: &mut String) {
        match self {
            Item::Expansion {
                expr,
                exact_below,
                terms,
            } => {
                let _ = writeln!(out, "{expr}  (exact below {})", qpow(*exact_below));
                write_terms(out, terms);
            }
            Item::Dissection {
                expr,
                modulus,
                residue,
                exact_below,
                terms,
            } => {
                let _ = writeln!(
                    out,
                    "{expr}, exponents = {residue} mod {modulus}  (exact below {})",
                    qpow(*exact_below)
                );
                write_terms(out, terms);
            }
            Item::Verification {
                id,
                lhs,
                rhs,
                outcome,
                diagnostic,
                error,
                order,
                ..
            } => {
                let name = id.clone().unwrap_or_else(|| format!("{lhs} = {rhs}"));
                match outcome {
                    Some(o) if o.status == Status::Zero => {
                        let _ = writeln!(
                            out,
                            "{name}: ZERO below {} (order {order})",
                            qpow(o.checked_below)
                        );
                    }
                    Some(o) => {
                        let _ = writeln!(
                            out,
                            "{name}: NONZERO, first difference {}*{} (order {order})",
                            o.first_nonzero_coefficient.as_deref().unwrap_or("?"),
                            o.first_nonzero_exponent.map(qpow).unwrap_or_default(),
                        );
                        if let Some(d) = diagnostic {
                            let _ = writeln!(out, "  {d}");
                        }
                    }
                    None => {
                        let _ = writeln!(out, "{name}: ERROR {}", error.as_deref().unwrap_or(""));
                    }
                }
            }
            Item::PartitionCounts { spec, rows } => {
                let _ = writeln!(out, "{spec}");
                for r in rows {
                    let check = match &r.enum_count {
                        Some(e) if *e == r.gf_count => "  (enumeration agrees)".to_string(),
                        Some(e) => format!("  (ENUMERATION GIVES {e})"),
                        None => String::new(),
                    };
                    let _ = writeln!(out, "  n={:<4} {}{check}", r.n, r.gf_count);
                }
            }
            Item::PartitionRelation {
                id,
                min_n,
                passed,
                judged,
                rows,
            } => {
                let failures: Vec<u64> = rows
                    .iter()
                    .filter(|r| r.judged && !r.holds)
                    .map(|r| r.n)
                    .collect();
                let verdict = if *passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "theorem {id}: {verdict}, {judged} values of n >= {min_n} checked"
                );
                if !failures.is_empty() {
                    let _ = writeln!(out, "  fails at n = {failures:?}");
                }
                for r in rows.iter().filter(|r| !r.judged) {
                    let holds = if r.holds { "holds" } else { "does not hold" };
                    let _ = writeln!(
                        out,
                        "  n={} (not judged): {} vs {}, {holds}",
                        r.n, r.lhs, r.rhs
                    );
                }
            }
            Item::Entry {
                id,
                group,
                lhs,
                rhs,
                min_order,
                ..
            } => {
                let _ = writeln!(out, "{id:<14} {group:<12} {min_order:>4}  {lhs} = {rhs}");
            }
        }
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Zero => "ZERO",
        Status::Nonzero => "NONZERO",
    }
}

fn qpow(e: Exponent) -> String {
    if e.den == 1 {
        format!("q^{}", e.num)
    } else {
        format!("q^({e})")
    }
}

fn write_terms(out: &mut String, terms: &[Term]) {
    if terms.iter().all(|t| t.coefficient == "0") {
        let _ = writeln!(out, "  (no nonzero terms)");
    }
    for t in terms {
        let e = Exponent {
            num: t.exponent_num,
            den: t.exponent_den,
        };
        let _ = writeln!(out, "  {:<10} {}", qpow(e), t.coefficient);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{evaluate, parse};

    fn expansion(text: &str, order: i64, dense: bool) -> Item {
        let v = evaluate(&parse(text).unwrap(), order).unwrap().to_fifths();
        Item::Expansion {
            expr: text.to_string(),
            exact_below: Rational64::new(v.bound(), 5).into(),
            terms: table(&v, dense),
        }
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new(vec!["expand".into(), "T(q)".into()], Some(50));
        r.items.push(expansion("T(q)", 50, true));
        r.items.push(expansion("q^(1/5)", 50, false));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["items"][0]["kind"], "expansion");
        assert_eq!(v["items"][1]["terms"][0]["exponent_den"], 5);
    }

    #[test]
    fn dense_table_keeps_zeros() {
        let Item::Expansion { terms, .. } = expansion("T(q)", 50, true) else {
            unreachable!()
        };
        let coeffs: Vec<&str> = terms.iter().map(|t| t.coefficient.as_str()).collect();
        assert_eq!(
            coeffs,
            ["1", "-1", "1", "0", "-1", "1", "-1", "1", "0", "-1"]
        );
    }

    #[test]
    fn csv_columns() {
        let mut r = Report::new(vec![], None);
        r.items.push(expansion("phi(q)", 50, false));
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "exponent_num,exponent_den,coefficient");
        assert_eq!(&lines[1..], ["0,1,1", "1,1,2", "4,1,2", "9,1,2"]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r = Report::new(vec![], Some(1));
        let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        v["extra"] = 1.into();
        assert!(Report::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn schema_lists_every_field() {
        let schema: serde_json::Value =
            serde_json::from_str(include_str!("../../../docs/report-schema.json")).unwrap();
        let defs = &schema["$defs"];
        let items = [
            expansion("phi(q)", 20, false),
            Item::Dissection {
                expr: "1".into(),
                modulus: 2,
                residue: 0,
                exact_below: Rational64::from(4).into(),
                terms: vec![],
            },
            Item::Verification {
                id: None,
                group: None,
                lhs: "1".into(),
                rhs: "1".into(),
                order: 5,
                outcome: None,
                diagnostic: None,
                error: None,
                elapsed_ms: 0,
            },
            Item::PartitionCounts {
                spec: "p1".into(),
                rows: vec![],
            },
            Item::PartitionRelation {
                id: "7.1".into(),
                min_n: 1,
                passed: true,
                judged: 0,
                rows: vec![],
            },
            Item::Entry {
                id: "x".into(),
                group: "gh".into(),
                lhs: "1".into(),
                rhs: "1".into(),
                source: String::new(),
                min_order: 200,
            },
        ];
        for item in items {
            let v = serde_json::to_value(&item).unwrap();
            let kind = v["kind"].as_str().unwrap();
            let props = defs[kind]["properties"].as_object().expect(kind);
            let fields: Vec<&String> = v.as_object().unwrap().keys().collect();
            let listed: Vec<&String> = props.keys().collect();
            let (mut a, mut b) = (fields, listed);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{kind}");
        }
    }
}
