//! Printed constants: words, shuffles, morphisms, the square-free
//! substitution, base witnesses and the composition table.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::{
    certify_square_free_morphism, certify_square_free_substitution, substitution_test_length,
    Morphism, Substitution, Verdict,
};
use crate::shuffle::{shuffle_conducted, ConductingSequence, ShuffleWitness};
use crate::word::Word;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// `σ_{chain[0]} ∘ ⋯ ∘ σ_{chain[last]}` applied to the witness named `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionRule {
    pub target_length: usize,
    pub chain: Vec<usize>,
    pub base: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Word {
        word: Word,
        alphabet: usize,
    },
    /// `w = u ⧢_β v`, with the printed claim about square-freeness of `w`.
    Shuffle {
        u: Word,
        v: Word,
        beta: ConductingSequence,
        w: Word,
        square_free: bool,
    },
    Morphism(Morphism),
    Substitution(Substitution),
    Witness {
        u: Word,
        beta: ConductingSequence,
        beta_notation: String,
        /// A printed conducting sequence that does not give a square-free
        /// shuffle, kept for the record.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        printed_beta: Option<String>,
    },
    Composition(CompositionRule),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Word { .. } => "word",
            Payload::Shuffle { .. } => "shuffle",
            Payload::Morphism(_) => "morphism",
            Payload::Substitution(_) => "substitution",
            Payload::Witness { .. } => "witness",
            Payload::Composition(_) => "composition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub provenance: String,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Deserialize)]
struct CatalogFile {
    entries: Vec<CatalogEntry>,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: BTreeMap<String, usize>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text)?;
        let index = file
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), i))
            .collect();
        Ok(Catalog {
            entries: file.entries,
            index,
        })
    }

    /// The catalog shipped with the library.
    pub fn embedded() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("embedded catalog parses"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownEntry {
                name: name.to_string(),
                suggestions: self.near_matches(name),
            })
    }

    fn near_matches(&self, name: &str) -> Vec<String> {
        let lower = name.to_lowercase();
        let mut scored: Vec<(usize, &String)> = self
            .index
            .keys()
            .map(|k| (edit_distance(&lower, &k.to_lowercase()), k))
            .filter(|&(d, k)| d <= 2 || k.to_lowercase().starts_with(&lower))
            .collect();
        scored.sort();
        scored.into_iter().take(5).map(|(_, k)| k.clone()).collect()
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism> {
        match &self.get(name)?.payload {
            Payload::Morphism(h) => Ok(h),
            other => Err(wrong_kind(name, "morphism", other)),
        }
    }

    pub fn substitution(&self, name: &str) -> Result<&Substitution> {
        match &self.get(name)?.payload {
            Payload::Substitution(s) => Ok(s),
            other => Err(wrong_kind(name, "substitution", other)),
        }
    }

    pub fn word(&self, name: &str) -> Result<&Word> {
        match &self.get(name)?.payload {
            Payload::Word { word, .. } => Ok(word),
            other => Err(wrong_kind(name, "word", other)),
        }
    }

    /// The base witness `name`, verified.
    pub fn witness(&self, name: &str) -> Result<ShuffleWitness> {
        match &self.get(name)?.payload {
            Payload::Witness { u, beta, .. } => ShuffleWitness::new(u.clone(), beta.clone()),
            other => Err(wrong_kind(name, "witness", other)),
        }
    }

    /// The morphism `σ_i`.
    pub fn sigma(&self, i: usize) -> Result<&Morphism> {
        self.morphism(&format!("sigma_{i}"))
    }

    /// Base witnesses keyed by length.
    pub fn base_witnesses(&self) -> BTreeMap<usize, &CatalogEntry> {
        self.entries
            .iter()
            .filter_map(|e| match &e.payload {
                Payload::Witness { u, .. } => Some((u.len(), e)),
                _ => None,
            })
            .collect()
    }

    /// Composition rules keyed by target length.
    pub fn compositions(&self) -> BTreeMap<usize, &CompositionRule> {
        self.entries
            .iter()
            .filter_map(|e| match &e.payload {
                Payload::Composition(rule) => Some((rule.target_length, rule)),
                _ => None,
            })
            .collect()
    }

    /// The witness produced by a composition rule, verified at every step.
    pub fn apply_composition(&self, rule: &CompositionRule) -> Result<ShuffleWitness> {
        let mut witness = self.witness(&rule.base)?;
        for &i in rule.chain.iter().rev() {
            witness = lift_witness(&witness, self.sigma(i)?)?;
        }
        Ok(witness)
    }

    /// Uniform square-free morphisms `Σ₃ → Σ₃` among the named entries and
    /// the restrictions of the five-letter ones, keyed by image length.
    pub fn ternary_uniform_morphisms(&self) -> BTreeMap<usize, (String, Morphism)> {
        let mut out = BTreeMap::new();
        for name in ["absorbing_h", "absorbing_h_prime", "h19", "h23", "h24", "B", "S"] {
            let Ok(h) = self.morphism(name) else { continue };
            let Ok(h) = h.restrict(3) else { continue };
            if let Some(d) = h.uniform_length() {
                out.entry(d).or_insert_with(|| (name.to_string(), h));
            }
        }
        out
    }
}

fn wrong_kind(name: &str, expected: &'static str, found: &Payload) -> Error {
    Error::WrongKind {
        name: name.to_string(),
        expected,
        found: found.kind(),
    }
}

fn edit_distance(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.chars().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let next = (diagonal + usize::from(ca != cb)).min(row[j] + 1).min(row[j + 1] + 1);
            diagonal = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[b.len()]
}

/// `(h(u), lifted β, h(w))` without the certification gate.
pub(crate) fn lift_witness(witness: &ShuffleWitness, h: &Morphism) -> Result<ShuffleWitness> {
    let beta = h.lift(&witness.beta, &witness.u)?;
    let lifted = ShuffleWitness {
        u: h.apply(&witness.u)?,
        beta,
        w: h.apply(&witness.w)?,
    };
    lifted.verify()?;
    Ok(lifted)
}

pub fn get_entry(name: &str) -> Result<&'static CatalogEntry> {
    Catalog::embedded().get(name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub entry: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub rows: Vec<CheckRow>,
}

impl CatalogReport {
    fn push(&mut self, entry: &str, check: &str, passed: bool, detail: impl Into<String>) {
        self.rows.push(CheckRow {
            entry: entry.to_string(),
            check: check.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn push_result(&mut self, entry: &str, check: &str, result: Result<bool>) {
        match result {
            Ok(passed) => self.push(entry, check, passed, ""),
            Err(e) => self.push(entry, check, false, e.to_string()),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// Morphisms whose printed images contain squares or which fail the test.
const REFUTED_MORPHISMS: [&str; 2] = ["tau", "rho"];

/// Re-derives every checkable claim in the embedded catalog.
pub fn verify_catalog() -> CatalogReport {
    verify(Catalog::embedded())
}

pub fn verify(catalog: &Catalog) -> CatalogReport {
    let mut report = CatalogReport::default();
    for entry in catalog.entries() {
        let name = entry.name.as_str();
        match &entry.payload {
            Payload::Word { word, alphabet } => {
                report.push_result(name, "round trip", round_trip(word));
                report.push(name, "alphabet", word.alphabet() == *alphabet, "");
                report.push(name, "square-free", word.is_square_free(), "");
            }
            Payload::Shuffle {
                u,
                v,
                beta,
                w,
                square_free,
            } => {
                report.push_result(
                    name,
                    "shuffle",
                    shuffle_conducted(u, v, beta).map(|x| &x == w),
                );
                report.push(name, "square-freeness claim", w.is_square_free() == *square_free, "");
            }
            Payload::Morphism(h) => {
                let cert = certify_square_free_morphism(h);
                let expected = if REFUTED_MORPHISMS.contains(&name) {
                    Verdict::Refuted
                } else {
                    Verdict::Certified
                };
                let detail = match &cert.counterexample {
                    Some(cx) => format!("{} -> square at {}", cx.source, cx.square),
                    None => format!("{} words of length <= {}", cert.checked_count, cert.bound_used),
                };
                report.push(name, "certificate", cert.verdict == expected, detail);
            }
            Payload::Substitution(s) => {
                let length = substitution_test_length(s);
                let cert = certify_square_free_substitution(s, length);
                report.push(
                    name,
                    "certificate",
                    cert.is_certified(),
                    format!("{} words of length {length}", cert.checked_count),
                );
            }
            Payload::Witness {
                u,
                beta,
                beta_notation,
                printed_beta,
            } => {
                let notation = ConductingSequence::parse(beta_notation).map(|b| &b == beta);
                report.push_result(name, "notation", notation);
                report.push_result(
                    name,
                    "witness",
                    ShuffleWitness::new(u.clone(), beta.clone()).map(|_| true),
                );
                if let Some(printed) = printed_beta {
                    let (passed, detail) = match ConductingSequence::parse(printed)
                        .and_then(|b| shuffle_conducted(u, u, &b))
                    {
                        Ok(w) => match w.find_square() {
                            Some(sq) => (true, format!("printed sequence gives a square at {sq}")),
                            None => (false, "printed sequence is valid after all".to_string()),
                        },
                        Err(e) => (false, e.to_string()),
                    };
                    report.push(name, "erratum", passed, detail);
                }
            }
            Payload::Composition(rule) => {
                let built = catalog
                    .apply_composition(rule)
                    .map(|w| w.len() == rule.target_length);
                report.push_result(name, "composition", built);
            }
        }
    }
    cross_checks(catalog, &mut report);
    report
}

fn round_trip(word: &Word) -> Result<bool> {
    let text = serde_json::to_string(word)?;
    let back: Word = serde_json::from_str(&text)?;
    Ok(&back == word && Word::parse(&word.to_string(), word.alphabet())? == *word)
}

/// Relations between entries.
fn cross_checks(catalog: &Catalog, report: &mut CatalogReport) {
    for i in 0..4u8 {
        let name = format!("sigma{i}");
        let check = || -> Result<bool> {
            let Payload::Shuffle { u, v, beta, .. } = &catalog.get(&name)?.payload else {
                return Ok(false);
            };
            let image = catalog.morphism("rho")?.image(i);
            Ok(u == image && v == image && beta.count0() == 12 && beta.count1() == 12)
        };
        report.push_result(&name, "operand is rho image, 12/12 split", check());
    }

    let product = |outer: &str, inner: &str| -> Result<Morphism> {
        catalog.morphism(outer)?.compose(catalog.morphism(inner)?)
    };
    report.push_result(
        "B",
        "equals rho after alpha",
        product("rho", "alpha").and_then(|h| Ok(&h == catalog.morphism("B")?)),
    );
    report.push_result(
        "S",
        "equals sigma after alpha",
        sigma_table(catalog)
            .and_then(|sigma| sigma.compose(catalog.morphism("alpha")?))
            .and_then(|h| Ok(&h == catalog.morphism("S")?)),
    );
    report.push_result(
        "absorbing_h_prime",
        "seventh letter deleted",
        (|| {
            let h = catalog.morphism("absorbing_h")?;
            let deleted = Morphism::new(
                h.images()
                    .iter()
                    .map(|x| {
                        let mut letters = x.letters().to_vec();
                        letters.remove(6);
                        Word::new(letters, x.alphabet())
                    })
                    .collect::<Result<_>>()?,
            )?;
            Ok(&deleted == catalog.morphism("absorbing_h_prime")?)
        })(),
    );
    report.push_result(
        "t",
        "fixed point of tau",
        (|| {
            let t = catalog.word("t")?;
            Ok(&catalog.morphism("tau")?.fixed_point_prefix(0, t.len())? == t)
        })(),
    );
}

/// The morphism `i ↦ σ(i)` whose images are the four printed self-shuffles.
pub fn sigma_table(catalog: &Catalog) -> Result<Morphism> {
    let images = (0..4)
        .map(|i| match &catalog.get(&format!("sigma{i}"))?.payload {
            Payload::Shuffle { w, .. } => Ok(w.clone()),
            other => Err(wrong_kind(&format!("sigma{i}"), "shuffle", other)),
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_entries() {
        let c = Catalog::embedded();
        let Payload::Shuffle { w, beta, .. } = &c.get("sigma0").unwrap().payload else {
            panic!()
        };
        assert_eq!(w.to_string(), "010210120102120210120212");
        assert_eq!(beta.to_string(), "000000001100001111111111");
        let Payload::Witness { u, beta, .. } = &c.get("w3").unwrap().payload else {
            panic!()
        };
        assert_eq!((u.to_string().as_str(), beta.to_string().as_str()), ("012", "001011"));
        assert_eq!(
            c.morphism("h19").unwrap().image(0).to_string(),
            "0102012021020121012"
        );
    }

    #[test]
    fn unknown_names_suggest() {
        match get_entry("sigma_18") {
            Err(Error::UnknownEntry { suggestions, .. }) => {
                assert!(suggestions.contains(&"sigma_13".to_string()), "{suggestions:?}")
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Catalog::embedded().morphism("w3"),
            Err(Error::WrongKind { .. })
        ));
    }

    #[test]
    fn composition_table_lengths() {
        let c = Catalog::embedded();
        let rules = c.compositions();
        assert_eq!(rules.keys().next(), Some(&18));
        assert_eq!(rules.keys().last(), Some(&1831));
        let w18 = c.apply_composition(rules[&18]).unwrap();
        let direct = lift_witness(&c.witness("w3").unwrap(), c.sigma(6).unwrap()).unwrap();
        assert_eq!(w18, direct);
    }

    #[test]
    fn embedded_catalog_verifies() {
        let report = verify_catalog();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
