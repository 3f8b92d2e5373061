//! Colored partition counts, by generating function and by direct
//! enumeration, and the linear relations between them.
//!
//! Specs and relations live in `data/partitions.toml`.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::series::LaurentSeries;
use crate::theta;

const BUILTIN: &str = include_str!("../data/partitions.toml");

/// Largest n the enumeration oracle accepts by default.
pub const ENUM_CAP: u64 = 60;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorClass {
    /// Parts congruent to `±residue` modulo the spec's modulus.
    pub residue: u32,
    #[serde(default = "one")]
    pub colors: u32,
}

fn one() -> u32 {
    1
}

fn plus_one() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartSpec {
    pub name: String,
    pub modulus: u32,
    pub classes: Vec<ColorClass>,
}

impl PartSpec {
    pub fn new(name: impl Into<String>, modulus: u32, classes: Vec<ColorClass>) -> Result<Self> {
        let spec = PartSpec {
            name: name.into(),
            modulus,
            classes,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.modulus < 2 {
            return Err(Error::Data(format!(
                "{}: modulus must be at least 2",
                self.name
            )));
        }
        for c in &self.classes {
            if c.residue == 0 || c.residue >= self.modulus {
                return Err(Error::Data(format!(
                    "{}: residue {} outside 1..{}",
                    self.name, c.residue, self.modulus
                )));
            }
            if c.colors == 0 {
                return Err(Error::Data(format!(
                    "{}: color count must be positive",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// `(least part, colors)` for every residue class of allowed parts, after
    /// expanding `±r` to `{r, M - r}`. Classes listed twice add their colors.
    pub fn part_classes(&self) -> Vec<(u32, u32)> {
        let mut colors = vec![0u32; self.modulus as usize];
        for c in &self.classes {
            let r = c.residue as usize;
            let s = self.modulus as usize - r;
            colors[r] += c.colors;
            if s != r {
                colors[s] += c.colors;
            }
        }
        colors
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(r, c)| (r as u32, c))
            .collect()
    }

    /// Number of colors available to a part of size `part` (0 if not allowed).
    pub fn colors_of(&self, part: u64) -> u32 {
        let r = (part % self.modulus as u64) as u32;
        self.part_classes()
            .into_iter()
            .find(|&(s, _)| s == r)
            .map_or(0, |(_, c)| c)
    }

    /// The generating function `1 / prod (q^r; q^M)^c`, exact through `q^max_n`.
    pub fn generating_function(&self, max_n: u64) -> LaurentSeries {
        let bound = max_n as i64 + 1;
        let mut denominator = LaurentSeries::one(1, bound);
        for (r, c) in self.part_classes() {
            let factor = theta::pochhammer(1, r as i64, self.modulus as i64, 1, bound)
                .expect("residues are validated positive");
            for _ in 0..c {
                denominator = denominator.mul(&factor).expect("same lattice");
            }
        }
        denominator.invert().expect("leading coefficient is 1")
    }

    /// Coefficients `p(0), ..., p(max_n)` of the generating function.
    pub fn gf_counts(&self, max_n: u64) -> Vec<BigInt> {
        let gf = self.generating_function(max_n);
        (0..=max_n as i64)
            .map(|n| gf.coeff(n).expect("within bound"))
            .collect()
    }

    pub fn gf_count(&self, n: u64) -> BigInt {
        self.gf_counts(n).pop().expect("nonempty")
    }

    /// Direct count by dynamic programming over colored parts, capped at
    /// [`ENUM_CAP`].
    pub fn enum_count(&self, n: u64) -> Result<BigInt> {
        self.enum_count_capped(n, ENUM_CAP)
    }

    pub fn enum_count_capped(&self, n: u64, cap: u64) -> Result<BigInt> {
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        let n = n as usize;
        let mut ways = vec![BigInt::zero(); n + 1];
        ways[0] = BigInt::one();
        for part in 1..=n {
            for _ in 0..self.colors_of(part as u64) {
                for total in part..=n {
                    let add = ways[total - part].clone();
                    ways[total] += add;
                }
            }
        }
        Ok(ways.swap_remove(n))
    }
}

/// `sign * p_spec(n - shift)`
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub spec: String,
    #[serde(default)]
    pub shift: u64,
    #[serde(default = "plus_one")]
    pub sign: i8,
}

/// `sum(lhs) = sum(rhs)` for every `n >= min_n`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem {
    pub id: String,
    pub min_n: u64,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremRow {
    pub n: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    /// False below the stated threshold: the row is reported but not judged.
    pub judged: bool,
}

impl TheoremRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub id: String,
    pub min_n: u64,
    pub rows: Vec<TheoremRow>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().filter(|r| r.judged).all(TheoremRow::holds)
    }

    pub fn judged(&self) -> usize {
        self.rows.iter().filter(|r| r.judged).count()
    }

    pub fn failures(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.judged && !r.holds())
            .map(|r| r.n)
            .collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionData {
    #[serde(rename = "spec")]
    specs: Vec<PartSpec>,
    #[serde(default, rename = "theorem")]
    theorems: Vec<Theorem>,
}

impl PartitionData {
    pub fn builtin() -> Result<Self> {
        Self::from_toml_str(BUILTIN)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let data: PartitionData = toml::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        for s in &data.specs {
            s.validate()?;
        }
        for t in &data.theorems {
            for term in t.lhs.iter().chain(&t.rhs) {
                data.spec(&term.spec)?;
                if term.sign != 1 && term.sign != -1 {
                    return Err(Error::Data(format!(
                        "theorem {}: sign must be 1 or -1",
                        t.id
                    )));
                }
            }
        }
        Ok(data)
    }

    pub fn specs(&self) -> &[PartSpec] {
        &self.specs
    }

    pub fn theorems(&self) -> &[Theorem] {
        &self.theorems
    }

    pub fn spec(&self, name: &str) -> Result<&PartSpec> {
        self.specs
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSpec(name.to_string()))
    }

    pub fn theorem(&self, id: &str) -> Result<&Theorem> {
        self.theorems
            .iter()
            .find(|t| t.id == id)
            .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
    }

    /// Checks a relation for `n = 1..=max_n` using generating-function counts.
    /// Rows below the theorem's threshold are included with `judged = false`.
    pub fn verify_theorem(&self, id: &str, max_n: u64) -> Result<TheoremReport> {
        let thm = self.theorem(id)?;
        let mut counts = std::collections::HashMap::new();
        for term in thm.lhs.iter().chain(&thm.rhs) {
            if !counts.contains_key(term.spec.as_str()) {
                counts.insert(term.spec.as_str(), self.spec(&term.spec)?.gf_counts(max_n));
            }
        }
        let side = |terms: &[Term], n: u64| -> BigInt {
            terms
                .iter()
                .map(|t| match n.checked_sub(t.shift) {
                    Some(m) => BigInt::from(t.sign) * &counts[t.spec.as_str()][m as usize],
                    None => BigInt::zero(),
                })
                .sum()
        };
        let rows = (1..=max_n)
            .map(|n| TheoremRow {
                n,
                lhs: side(&thm.lhs, n),
                rhs: side(&thm.rhs, n),
                judged: n >= thm.min_n,
            })
            .collect();
        Ok(TheoremReport {
            id: thm.id.clone(),
            min_n: thm.min_n,
            rows,
        })
    }

    /// `(spec, n)` pairs with `n <= max_n` where the two counting methods
    /// disagree.
    pub fn oracle_mismatches(&self, max_n: u64) -> Result<Vec<(String, u64)>> {
        let mut out = Vec::new();
        for spec in &self.specs {
            let gf = spec.gf_counts(max_n);
            for n in 0..=max_n {
                if spec.enum_count(n)? != gf[n as usize] {
                    out.push((spec.name.clone(), n));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> PartitionData {
        PartitionData::builtin().unwrap()
    }

    #[test]
    fn small_values() {
        let d = data();
        assert_eq!(d.spec("p3").unwrap().gf_count(0), BigInt::one());
        assert_eq!(d.spec("p1").unwrap().gf_count(1), BigInt::one());
        assert_eq!(d.spec("p2").unwrap().gf_count(1), BigInt::zero());
        let ones = PartSpec::new(
            "ones",
            7,
            vec![ColorClass {
                residue: 1,
                colors: 1,
            }],
        )
        .unwrap();
        assert_eq!(ones.enum_count(5).unwrap(), BigInt::one());
    }

    #[test]
    fn expansion_and_colors() {
        let d = data();
        let p1 = d.spec("p1").unwrap();
        assert_eq!(
            p1.part_classes(),
            vec![
                (1, 1),
                (5, 2),
                (11, 1),
                (12, 2),
                (18, 2),
                (19, 1),
                (25, 2),
                (29, 1)
            ]
        );
        assert_eq!(p1.colors_of(35), 2);
        assert_eq!(p1.colors_of(2), 0);
        let half = PartSpec::new(
            "h",
            4,
            vec![ColorClass {
                residue: 2,
                colors: 1,
            }],
        )
        .unwrap();
        assert_eq!(half.part_classes(), vec![(2, 1)]);
    }

    #[test]
    fn oracle_agrees() {
        assert!(data().oracle_mismatches(40).unwrap().is_empty());
    }

    #[test]
    fn theorems_hold() {
        let d = data();
        for id in ["7.1", "7.2", "7.3"] {
            let r = d.verify_theorem(id, 60).unwrap();
            assert!(r.passed(), "{id} fails at {:?}", r.failures());
        }
        assert_eq!(d.verify_theorem("7.2", 5).unwrap().judged(), 4);
    }

    #[test]
    fn errors() {
        let d = data();
        assert!(matches!(d.spec("p11"), Err(Error::UnknownSpec(_))));
        assert!(matches!(
            d.verify_theorem("7.4", 10),
            Err(Error::UnknownTheorem(_))
        ));
        assert!(matches!(
            d.spec("p1").unwrap().enum_count(61),
            Err(Error::CapExceeded { n: 61, cap: 60 })
        ));
        assert!(PartSpec::new(
            "bad",
            30,
            vec![ColorClass {
                residue: 30,
                colors: 1
            }]
        )
        .is_err());
    }
}
