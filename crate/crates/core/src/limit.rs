//! Prefix checks of the infinite-word statements.

use serde::{Deserialize, Serialize};

use crate::catalog::{sigma_table, Catalog, Payload};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::shuffle::{shuffle_conducted, ConductingSequence, PeriodicConductingSequence};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_violation: Option<usize>,
}

impl SubCheck {
    fn new(name: &str, first_violation: Option<usize>) -> Self {
        SubCheck {
            name: name.to_string(),
            holds: first_violation.is_none(),
            first_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixVerdict {
    pub theorem: String,
    /// Number of letters actually checked after rounding to whole blocks.
    pub prefix_length: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_violation: Option<usize>,
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl PrefixVerdict {
    fn from_checks(theorem: &str, prefix_length: usize, checks: Vec<SubCheck>) -> Self {
        let first_violation = checks.iter().find_map(|c| c.first_violation);
        PrefixVerdict {
            theorem: theorem.to_string(),
            prefix_length,
            holds: checks.iter().all(|c| c.holds),
            first_violation,
            checks,
            detail: None,
        }
    }

    pub fn check(&self, name: &str) -> Option<&SubCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Start of the leftmost square, if any.
fn square_position(w: &Word) -> Option<usize> {
    w.find_square().map(|sq| sq.start)
}

/// First index where the words differ, or the shorter length.
fn mismatch(a: &Word, b: &Word) -> Option<usize> {
    if a == b {
        return None;
    }
    let common = a.letters().iter().zip(b.letters()).position(|(x, y)| x != y);
    Some(common.unwrap_or(a.len().min(b.len())))
}

fn catalog_morphism(name: &str) -> &'static Morphism {
    Catalog::embedded().morphism(name).expect("catalog morphism")
}

/// The Hall word prefix used as the default carrier.
pub fn hall_prefix(n: usize) -> Word {
    catalog_morphism("tau").fixed_point_prefix(0, n).expect("tau is prolongable on 0")
}

/// The per-letter conducting sequences `β₀ … β₃` of the σ table.
fn sigma_betas() -> Vec<ConductingSequence> {
    (0..4)
        .map(|i| match &Catalog::embedded().get(&format!("sigma{i}")).expect("sigma row").payload {
            Payload::Shuffle { beta, .. } => beta.clone(),
            _ => unreachable!("sigma rows are shuffles"),
        })
        .collect()
}

/// `β_{α(i₁)} β_{α(i₂)} ⋯` for a carrier word.
pub fn blockwise_beta(carrier: &Word) -> Result<ConductingSequence> {
    let alpha = catalog_morphism("alpha");
    let betas = sigma_betas();
    let mut bits = Vec::new();
    for &a in alpha.apply(carrier)?.letters() {
        bits.extend_from_slice(betas[a as usize].bits());
    }
    ConductingSequence::new(bits)
}

/// `S(t) = B(t) ⧢_β B(t)` on the Hall word, rounded up to whole 96-blocks.
pub fn verify_theorem4(n: usize) -> Result<PrefixVerdict> {
    let blocks = n.div_ceil(96).max(1);
    verify_theorem4_on(&hall_prefix(blocks))
}

/// The same check on any square-free ternary carrier.
pub fn verify_theorem4_on(carrier: &Word) -> Result<PrefixVerdict> {
    let catalog = Catalog::embedded();
    let b = catalog.morphism("B")?.apply(carrier)?;
    let s = catalog.morphism("S")?.apply(carrier)?;
    let beta = blockwise_beta(carrier)?;
    let shuffled = shuffle_conducted(&b, &b, &beta)?;
    let s_from_table = sigma_table(catalog)?.compose(catalog.morphism("alpha")?)?.apply(carrier)?;
    let checks = vec![
        SubCheck::new("carrier square-free", square_position(carrier)),
        SubCheck::new("S equals sigma after alpha", mismatch(&s, &s_from_table)),
        SubCheck::new("shuffle equals S", mismatch(&shuffled, &s)),
        SubCheck::new("S square-free", square_position(&s)),
        SubCheck::new("B square-free", square_position(&b)),
    ];
    Ok(PrefixVerdict::from_checks("theorem4", s.len(), checks))
}

/// Letters of the second operand consumed by the first `n` steps of
/// `(0⁶10¹¹)^ω`: one per period, counted once position 6 is reached.
pub fn theorem5_second_operand_steps(n: usize) -> usize {
    (n + 11) / 18
}

/// `u = h′(u) ⧢_β u` for `u = h^ω(0)` and `β = (0⁶10¹¹)^ω`, rounded down
/// to whole 18-blocks (at least one).
///
/// Bit 0 takes from `h′(u)` and bit 1 from `u`: the letter at offset 6 of
/// every block is the one drawn from `u`.
pub fn verify_theorem5(n: usize) -> Result<PrefixVerdict> {
    let catalog = Catalog::embedded();
    let h = catalog.morphism("absorbing_h")?;
    let h_prime = catalog.morphism("absorbing_h_prime")?;
    let blocks = (n / 18).max(1);
    let len = 18 * blocks;
    let u = h.fixed_point_prefix(0, len)?;
    let seeds = u.factor(0..blocks);
    let marked: Vec<u8> = (0..blocks).map(|j| u.letters()[18 * j + 6]).collect();
    let marked = Word::new(marked, 3)?;
    let w = h_prime.apply(&seeds)?;
    let beta = PeriodicConductingSequence::parse("(000000100000000000)^w")?.prefix(len);
    let steps_ok = beta.count1() == theorem5_second_operand_steps(len) && beta.count0() == w.len();
    let checks = vec![
        SubCheck::new("marked letters spell u", mismatch(&marked, &seeds)),
        SubCheck::new("h' image square-free", square_position(&w)),
        SubCheck::new(
            "step bookkeeping",
            (!steps_ok).then_some(0),
        ),
        SubCheck::new(
            "shuffle reproduces u",
            if steps_ok {
                mismatch(&shuffle_conducted(&w, &seeds, &beta)?, &u)
            } else {
                Some(0)
            },
        ),
    ];
    Ok(PrefixVerdict::from_checks("theorem5", len, checks))
}

/// Equal Parikh vectors on all consecutive length-`p` blocks of the first
/// `n` letters of `B(t)`.
pub fn verify_abelian_periodicity(n: usize, p: usize) -> Result<PrefixVerdict> {
    let carrier = hall_prefix(n.div_ceil(48).max(1));
    let b = catalog_morphism("B").apply(&carrier)?;
    verify_abelian_periodicity_of(&b.factor(0..n), p)
}

pub fn verify_abelian_periodicity_of(word: &Word, p: usize) -> Result<PrefixVerdict> {
    if p == 0 {
        return Err(Error::BelowDomain {
            what: "period",
            min: 1,
            value: 0,
        });
    }
    if !word.len().is_multiple_of(p) {
        return Err(Error::LengthMismatch {
            left: word.len(),
            right: p,
        });
    }
    let vectors: Vec<Vec<usize>> = word.letters().chunks(p).map(|c| parikh(c, word.alphabet())).collect();
    let first_violation = vectors.iter().position(|v| v != &vectors[0]).map(|i| i * p);
    let mut verdict = PrefixVerdict::from_checks(
        "abelian",
        word.len(),
        vec![SubCheck::new("equal block parikh vectors", first_violation)],
    );
    if let (None, Some(v)) = (first_violation, vectors.first()) {
        verdict.detail = Some(format!("parikh {v:?}"));
    }
    Ok(verdict)
}

fn parikh(letters: &[u8], alphabet: usize) -> Vec<usize> {
    let mut counts = vec![0; alphabet];
    for &a in letters {
        counts[a as usize] += 1;
    }
    counts
}

/// A square-free Lyndon word with a smaller square-free Lyndon self-shuffle.
pub fn verify_lyndon_example() -> Result<PrefixVerdict> {
    let Payload::Shuffle { u, beta, w, .. } = &Catalog::embedded().get("lyndon_example")?.payload else {
        return Err(Error::InvalidWitness("lyndon_example is not a shuffle".into()));
    };
    let flag = |ok: bool| (!ok).then_some(0);
    let checks = vec![
        SubCheck::new("u square-free", square_position(u)),
        SubCheck::new("w square-free", square_position(w)),
        SubCheck::new("u Lyndon", flag(u.is_lyndon()?)),
        SubCheck::new("w Lyndon", flag(w.is_lyndon()?)),
        SubCheck::new("shuffle equals w", mismatch(&shuffle_conducted(u, u, beta)?, w)),
        SubCheck::new("w below u", flag(w < u)),
    ];
    Ok(PrefixVerdict::from_checks("lyndon", w.len(), checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem4_single_block() {
        let v = verify_theorem4(96).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.prefix_length, 96);
        let bits: Vec<String> = sigma_betas().iter().map(|b| b.to_string()).collect();
        let expected = [1, 0, 1, 3].map(|i| bits[i].clone()).concat();
        assert_eq!(blockwise_beta(&"0".parse().unwrap()).unwrap().to_string(), expected);
    }

    #[test]
    fn theorem5_first_block() {
        let h = catalog_morphism("absorbing_h");
        assert_eq!(h.image(0).letters()[6], 0);
        let v = verify_theorem5(18).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(verify_theorem5(10_000).unwrap().prefix_length, 9990);
    }

    #[test]
    fn second_operand_steps_match_the_sequence() {
        let beta = PeriodicConductingSequence::parse("(000000100000000000)^w").unwrap();
        for n in 0..100 {
            assert_eq!(beta.prefix(n).count1(), theorem5_second_operand_steps(n), "{n}");
        }
    }

    #[test]
    fn abelian_blocks() {
        let v = verify_abelian_periodicity(48 * 50, 48).unwrap();
        assert!(v.holds);
        assert_eq!(v.detail.as_deref(), Some("parikh [16, 16, 16]"));
        assert!(verify_abelian_periodicity(96, 96).unwrap().holds);
        let v = verify_abelian_periodicity_of(&"012".parse().unwrap(), 1).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation, Some(1));
        assert!(verify_abelian_periodicity(48, 0).is_err());
    }

    #[test]
    fn lyndon_example_holds() {
        let v = verify_lyndon_example().unwrap();
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn literal_operand_order_fails() {
        // the marked letters come from u, so u must be the second operand
        let h = catalog_morphism("absorbing_h");
        let u = h.fixed_point_prefix(0, 18).unwrap();
        let seeds = u.factor(0..1);
        let w = catalog_morphism("absorbing_h_prime").apply(&seeds).unwrap();
        let beta = ConductingSequence::parse("0^{6}10^{11}").unwrap();
        assert!(shuffle_conducted(&seeds, &w, &beta).is_err());
        assert_eq!(shuffle_conducted(&w, &seeds, &beta).unwrap(), u);
    }
}
