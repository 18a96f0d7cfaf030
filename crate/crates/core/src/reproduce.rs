//! One-shot reproduction of every published number and claim, as a
//! scorecard of numbered criteria.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{verify_catalog, Catalog, Payload};
use crate::construct::Constructor;
use crate::enumerate::{distinct_self_shuffles, enumeration_row, find_self_shuffle_betas};
use crate::error::Result;
use crate::limit::{verify_abelian_periodicity, verify_theorem4, verify_theorem5};
use crate::morphism::{
    certify_square_free_morphism, certify_square_free_substitution, check_substitution_properties,
    substitution_test_length, Verdict,
};
use crate::shuffle::{dual_word, find_conducting, is_reduced, perfect_shuffle, shuffle_conducted, ConductingSequence};
use crate::word::{enumerate_square_free, ends_with_square, Word};

/// `(L, square-free, shuffle words, shuffleable u)` for even `L` in 4..=26.
pub const PUBLISHED_COUNTS: [(usize, usize, usize, usize); 12] = [
    (4, 18, 0, 0),
    (6, 42, 6, 6),
    (8, 78, 12, 6),
    (10, 144, 30, 12),
    (12, 264, 24, 18),
    (14, 456, 42, 30),
    (16, 798, 78, 42),
    (18, 1392, 138, 36),
    (20, 2388, 228, 54),
    (22, 4146, 396, 138),
    (24, 7032, 588, 168),
    (26, 11892, 1008, 234),
];

/// Morphisms that must certify square-free.
pub const CERTIFIED_MORPHISMS: [&str; 20] = [
    "alpha", "B", "S", "h19", "h23", "h24", "absorbing_h", "absorbing_h_prime", "sigma_6", "sigma_7", "sigma_8",
    "sigma_9", "sigma_10", "sigma_11", "sigma_12", "sigma_13", "sigma_14", "sigma_15", "sigma_16",
    "sigma_17",
];

/// Lengths beyond the full sweep that must be constructible.
pub const LARGE_SAMPLES: [usize; 6] = [5202, 5203, 5302, 9999, 18 * 17 * 17 * 2 + 1, 100_000];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub number: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CRITERIA: [&str; 11] = [
    "enumeration table",
    "sigma table",
    "length-8 listing",
    "morphism certificates",
    "substitution certificate",
    "base witnesses and compositions",
    "coverage",
    "self-shuffled image prefix",
    "self-shuffle with deleted letters prefix",
    "abelian periodicity",
    "property suites",
];

/// Runs criterion `number` (1-based).
pub fn run_criterion(number: usize) -> CriterionResult {
    let start = Instant::now();
    let outcome = match number {
        1 => enumeration_table(26),
        2 => sigma_rows(),
        3 => length8_listing(),
        4 => morphism_certificates(),
        5 => substitution_certificate(),
        6 => witnesses_and_compositions(),
        7 => coverage(2000, &LARGE_SAMPLES),
        8 => prefix(verify_theorem4(10_000)),
        9 => prefix(verify_theorem5(10_000)),
        10 => abelian(),
        11 => property_suites(&PropertyBudget::default()).map(|r| (r.violations == 0, r.summary())),
        _ => Ok((false, format!("no criterion {number}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        number,
        title: CRITERIA.get(number.wrapping_sub(1)).unwrap_or(&"unknown").to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn scorecard() -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(run_criterion).collect()
}

type Outcome = Result<(bool, String)>;

pub fn enumeration_table(max_length: usize) -> Outcome {
    let mut mismatched = Vec::new();
    for &(l, sf, words, us) in PUBLISHED_COUNTS.iter().filter(|r| r.0 <= max_length) {
        let row = enumeration_row(l)?;
        if (row.square_free_count, row.shuffle_word_count, row.shuffleable_u_count) != (sf, words, us) {
            mismatched.push(l);
        }
    }
    Ok((
        mismatched.is_empty(),
        if mismatched.is_empty() {
            "all rows match".into()
        } else {
            format!("rows differ at L = {mismatched:?}")
        },
    ))
}

fn sigma_rows() -> Outcome {
    let catalog = Catalog::embedded();
    let rho = catalog.morphism("rho")?;
    let mut bad = Vec::new();
    for i in 0..4u8 {
        let Payload::Shuffle { beta, w, .. } = &catalog.get(&format!("sigma{i}"))?.payload else {
            bad.push(i);
            continue;
        };
        let image = rho.image(i);
        let ok = shuffle_conducted(image, image, beta)? == *w && w.is_square_free();
        if !ok {
            bad.push(i);
        }
    }
    Ok((bad.is_empty(), format!("{} of 4 rows reproduce", 4 - bad.len())))
}

/// Printed listing rows: `u` to the set of its square-free self-shuffles.
pub fn printed_length8_listing() -> Result<BTreeMap<Word, BTreeSet<Word>>> {
    let mut listing: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for entry in Catalog::embedded().entries() {
        if !entry.name.starts_with("listing8_row") {
            continue;
        }
        if let Payload::Shuffle { u, v, beta, w, .. } = &entry.payload {
            if u != v || shuffle_conducted(u, v, beta)? != *w || !w.is_square_free() {
                return Err(crate::Error::InvalidWitness(format!("{} does not verify", entry.name)));
            }
            listing.entry(u.clone()).or_default().insert(w.clone());
        }
    }
    Ok(listing)
}

fn length8_listing() -> Outcome {
    let printed = printed_length8_listing()?;
    let mut computed: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for u in enumerate_square_free(3, 8)? {
        if !u.letters().starts_with(&[0, 1]) {
            continue;
        }
        let words: BTreeSet<Word> = distinct_self_shuffles(&u).into_keys().collect();
        if !words.is_empty() {
            computed.insert(u, words);
        }
    }
    let words: usize = computed.values().map(BTreeSet::len).sum();
    Ok((
        computed == printed && printed.len() == 7,
        format!("{} words u with {words} distinct shuffles; printed {} u", computed.len(), printed.len()),
    ))
}

fn morphism_certificates() -> Outcome {
    let catalog = Catalog::embedded();
    let mut failed = Vec::new();
    for name in CERTIFIED_MORPHISMS {
        if !certify_square_free_morphism(catalog.morphism(name)?).is_certified() {
            failed.push(name.to_string());
        }
    }
    for name in ["rho", "tau"] {
        let cert = certify_square_free_morphism(catalog.morphism(name)?);
        let rechecked = cert.counterexample.as_ref().is_some_and(|cx| cx.recheck());
        if cert.verdict != Verdict::Refuted || !rechecked {
            failed.push(name.to_string());
        }
    }
    let rho20 = catalog.morphism("rho")?.apply(&Word::parse("20", 3)?)?.to_string();
    let square_in_rho20 = rho20.contains("201021201021");
    if !square_in_rho20 {
        failed.push("rho(20)".into());
    }
    Ok((
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} certified, rho and tau refuted", CERTIFIED_MORPHISMS.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    ))
}

fn substitution_certificate() -> Outcome {
    let s = Catalog::embedded().substitution("interval_subst")?;
    let properties = check_substitution_properties(s);
    let length = substitution_test_length(s);
    let cert = certify_square_free_substitution(s, length);
    // squares with half-length up to 3M − 2 fit in images of `length` letters
    let half = 3 * s.max_image_len() - 2;
    let covered = (length - 2) * s.min_image_len() + 2 >= 2 * half;
    Ok((
        properties.all() && cert.is_certified() && cert.checked_count == 78 && length == 8 && covered,
        format!(
            "properties {properties:?}; {} words of length {length}; half-lengths up to {half} covered",
            cert.checked_count
        ),
    ))
}

fn witnesses_and_compositions() -> Outcome {
    let report = verify_catalog();
    let relevant: Vec<_> = report
        .rows
        .iter()
        .filter(|r| matches!(r.check.as_str(), "witness" | "composition" | "notation" | "erratum"))
        .collect();
    let failed: Vec<String> = relevant.iter().filter(|r| !r.passed).map(|r| r.entry.clone()).collect();
    let errata: Vec<String> = relevant
        .iter()
        .filter(|r| r.check == "erratum")
        .map(|r| format!("{}: {}", r.entry, r.detail))
        .collect();
    let longest = Catalog::embedded().compositions().keys().last().copied().unwrap_or(0);
    let mut detail = format!(
        "{} checks, {} failed, longest composition {longest}",
        relevant.len(),
        failed.len()
    );
    if !errata.is_empty() {
        detail.push_str(&format!("; replaced printed sequence ({})", errata.join("; ")));
    }
    Ok((failed.is_empty(), detail))
}

pub fn coverage(n_max: usize, samples: &[usize]) -> Outcome {
    let constructor = Constructor::from_env()?;
    let report = constructor.coverage_report(n_max)?;
    let mut failed_samples = Vec::new();
    for &n in samples {
        if constructor.construct_witness(n).and_then(|c| c.verify()).is_err() {
            failed_samples.push(n);
        }
    }
    let tally: Vec<String> = report.tally().iter().map(|(s, c)| format!("{s} {c}")).collect();
    Ok((
        report.gaps.is_empty() && failed_samples.is_empty(),
        format!(
            "gaps {:?}, failed samples {:?}; {}",
            report.gaps,
            failed_samples,
            tally.join(", ")
        ),
    ))
}

fn prefix(verdict: Result<crate::limit::PrefixVerdict>) -> Outcome {
    let v = verdict?;
    Ok((v.holds, format!("{} letters, first violation {:?}", v.prefix_length, v.first_violation)))
}

fn abelian() -> Outcome {
    let v = verify_abelian_periodicity(48 * 50, 48)?;
    let ok = v.holds && v.detail.as_deref() == Some("parikh [16, 16, 16]");
    Ok((ok, format!("{} blocks, {}", 50, v.detail.unwrap_or_default())))
}

#[derive(Debug, Clone, Copy)]
pub struct PropertyBudget {
    pub seed: u64,
    pub round_trips: usize,
    pub splits: usize,
    /// Self-shuffles of all square-free `u` up to this length are checked.
    pub parity_max_len: usize,
    /// Every reduced square-free word up to this length.
    pub dean_exhaustive: usize,
    pub dean_samples: usize,
    pub dean_max_len: usize,
}

impl Default for PropertyBudget {
    fn default() -> Self {
        PropertyBudget {
            seed: 0x5eed,
            round_trips: 10_000,
            splits: 10_000,
            parity_max_len: 10,
            dean_exhaustive: 20,
            dean_samples: 500,
            dean_max_len: 50,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub round_trips: usize,
    pub splits: usize,
    pub self_shuffles: usize,
    pub dean_words: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl PropertyReport {
    fn violation(&mut self, text: String) {
        self.violations += 1;
        if self.examples.len() < 5 {
            self.examples.push(text);
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} round trips, {} splits, {} self-shuffles, {} reduced words; {} violations {:?}",
            self.round_trips, self.splits, self.self_shuffles, self.dean_words, self.violations, self.examples
        )
    }
}

fn random_word(rng: &mut ChaCha8Rng, len: usize, alphabet: usize) -> Word {
    Word::new((0..len).map(|_| rng.random_range(0..alphabet as u8)).collect(), alphabet).expect("letters in range")
}

fn random_beta(rng: &mut ChaCha8Rng, zeros: usize, ones: usize) -> ConductingSequence {
    let mut bits = vec![0u8; zeros];
    bits.extend(std::iter::repeat_n(1, ones));
    bits.shuffle(rng);
    ConductingSequence::new(bits).expect("binary")
}

/// Square-free words over four letters avoiding `02, 20, 13, 31`.
pub fn reduced_square_free_words(max_len: usize) -> Vec<Word> {
    fn grow(prefix: &mut Vec<u8>, max_len: usize, out: &mut Vec<Word>) {
        out.push(Word::new(prefix.clone(), 4).expect("four letters"));
        if prefix.len() == max_len {
            return;
        }
        for a in 0..4u8 {
            if prefix.last().is_some_and(|&b| (b + 2) % 4 == a) {
                continue;
            }
            prefix.push(a);
            if !ends_with_square(prefix) {
                grow(prefix, max_len, out);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), max_len, &mut out);
    out
}

/// A random reduced square-free word of length `len`, by randomized DFS.
pub fn random_reduced_square_free(rng: &mut ChaCha8Rng, len: usize) -> Option<Word> {
    fn grow(rng: &mut ChaCha8Rng, prefix: &mut Vec<u8>, len: usize) -> bool {
        if prefix.len() == len {
            return true;
        }
        let mut letters = [0u8, 1, 2, 3];
        letters.shuffle(rng);
        for a in letters {
            if prefix.last().is_some_and(|&b| (b + 2) % 4 == a) {
                continue;
            }
            prefix.push(a);
            if !ends_with_square(prefix) && grow(rng, prefix, len) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    let mut prefix = Vec::with_capacity(len);
    grow(rng, &mut prefix, len).then(|| Word::new(prefix, 4).expect("four letters"))
}

pub fn property_suites(budget: &PropertyBudget) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut report = PropertyReport::default();

    for _ in 0..budget.round_trips {
        let (m, n) = (rng.random_range(0..=12), rng.random_range(0..=12));
        let u = random_word(&mut rng, m, 3);
        let v = random_word(&mut rng, n, 3);
        let beta = random_beta(&mut rng, m, n);
        let w = shuffle_conducted(&u, &v, &beta)?;
        let back = find_conducting(&u, &v, &w).map(|b| shuffle_conducted(&u, &v, &b));
        if !matches!(back, Some(Ok(ref x)) if *x == w) {
            report.violation(format!("round trip {u} {v} {beta}"));
        }
        report.round_trips += 1;
    }

    for _ in 0..budget.splits {
        let n = rng.random_range(1..=16);
        let k = rng.random_range(0..=n);
        let u = random_word(&mut rng, n, 3);
        let (u1, u2) = (u.factor(0..k), u.factor(k..n));
        let (b1, b2) = (random_beta(&mut rng, k, k), random_beta(&mut rng, n - k, n - k));
        let whole = shuffle_conducted(&u, &u, &b1.concat(&b2))?;
        let parts = shuffle_conducted(&u1, &u1, &b1)?.concat(&shuffle_conducted(&u2, &u2, &b2)?)?;
        if whole != parts {
            report.violation(format!("concatenation {u} at {k}"));
        }
        report.splits += 1;
    }

    for len in 1..=budget.parity_max_len {
        for u in enumerate_square_free(3, len)? {
            for (_, w) in find_self_shuffle_betas(&u, None) {
                if w.parikh().iter().any(|c| c % 2 == 1) {
                    report.violation(format!("odd letter count in {w}"));
                }
                report.self_shuffles += 1;
            }
        }
    }

    let mut dean = reduced_square_free_words(budget.dean_exhaustive);
    for _ in 0..budget.dean_samples {
        let len = rng.random_range(budget.dean_exhaustive + 1..=budget.dean_max_len.max(budget.dean_exhaustive + 1));
        dean.extend(random_reduced_square_free(&mut rng, len));
    }
    for u in dean {
        debug_assert!(is_reduced(&u));
        let shuffled = perfect_shuffle(&u, &dual_word(&u)?)?;
        if !shuffled.is_square_free() {
            report.violation(format!("perfect shuffle of {u}"));
        }
        report.dean_words += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_property_budget_is_clean() {
        let budget = PropertyBudget {
            round_trips: 200,
            splits: 200,
            parity_max_len: 6,
            dean_exhaustive: 10,
            dean_samples: 10,
            dean_max_len: 30,
            ..PropertyBudget::default()
        };
        let report = property_suites(&budget).unwrap();
        assert_eq!(report.violations, 0, "{}", report.summary());
        assert_eq!(report.round_trips, 200);
    }

    #[test]
    fn reduced_words_are_reduced_and_square_free() {
        let words = reduced_square_free_words(8);
        assert!(words.iter().all(|w| is_reduced(w) && w.is_square_free()));
        assert!(words.iter().any(|w| w.to_string() == "010301210".get(..8).unwrap()));
    }

    #[test]
    fn quick_criteria() {
        for n in [2, 3, 4, 5, 10] {
            let r = run_criterion(n);
            assert!(r.passed, "{r:?}");
        }
    }
}
