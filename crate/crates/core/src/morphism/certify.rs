//! Square-freeness certificates for morphisms and substitutions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Morphism, Substitution};
use crate::word::{enumerate_square_free, is_square_free, SquareOccurrence, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
    /// Every tested image is square-free but a structural property needed
    /// for the substitution argument fails.
    Inconclusive,
}

/// A source word whose image contains a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub source: Word,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub choices: Option<Vec<usize>>,
    pub image: Word,
    pub square: SquareOccurrence,
}

impl Counterexample {
    /// Checks the reported square directly in the stored image.
    pub fn recheck(&self) -> bool {
        self.square.holds_in(self.image.letters())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    pub verdict: Verdict,
    pub bound_used: usize,
    pub checked_count: usize,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub properties: Option<SubstitutionProperties>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn named(mut self, subject: impl Into<String>) -> Self {
        self.subject = subject.into();
        self
    }
}

/// `max(3, ⌈(M − 3)/m + 1⌉)` for image lengths `M ≥ m ≥ 1`.
pub fn crochemore_bound(h: &Morphism) -> usize {
    let (big, small) = (h.max_image_len() as i64, h.min_image_len().max(1) as i64);
    let numerator = big - 3 + small;
    let ceil = if numerator <= 0 {
        0
    } else {
        (numerator + small - 1) / small
    };
    (ceil as usize).max(3)
}

fn square_free_words_up_to(alphabet: usize, max_len: usize) -> Vec<Word> {
    (1..=max_len)
        .flat_map(|n| enumerate_square_free(alphabet, n).expect("valid alphabet"))
        .collect()
}

/// Tests every square-free source word of length at most the bound. The
/// first failing word in (length, lexicographic) order is reported.
pub fn certify_square_free_morphism(h: &Morphism) -> Certificate {
    let bound = crochemore_bound(h);
    let words = square_free_words_up_to(h.src_alphabet(), bound);
    let failure = words.par_iter().find_map_first(|source| {
        let image = h.apply_unchecked(source.letters());
        if is_square_free(image.letters()) {
            return None;
        }
        let square = image.find_square().expect("square exists");
        Some(Counterexample {
            source: source.clone(),
            choices: None,
            image,
            square,
        })
    });
    Certificate {
        subject: String::from("morphism"),
        verdict: if failure.is_some() {
            Verdict::Refuted
        } else {
            Verdict::Certified
        },
        bound_used: bound,
        checked_count: words.len(),
        counterexample: failure,
        properties: None,
    }
}

/// The three structural properties used to rule out long squares in
/// images of a substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionProperties {
    /// No letter image occurs strictly inside an image of a two-letter
    /// square-free word (with nonempty context on both sides).
    pub no_inner_occurrence: bool,
    /// No image word is a prefix of a different image word.
    pub prefix_free: bool,
    /// Images of distinct letters end with distinct letters.
    pub distinct_last_letters: bool,
}

impl SubstitutionProperties {
    pub fn all(&self) -> bool {
        self.no_inner_occurrence && self.prefix_free && self.distinct_last_letters
    }
}

fn occurs_strictly_inside(needle: &[u8], hay: &[u8]) -> bool {
    hay.len() >= needle.len() + 2
        && (1..=hay.len() - needle.len() - 1).any(|p| hay[p..p + needle.len()] == *needle)
}

pub fn check_substitution_properties(s: &Substitution) -> SubstitutionProperties {
    let k = s.src_alphabet();
    let all_images: Vec<(usize, &Word)> = s
        .image_sets()
        .iter()
        .enumerate()
        .flat_map(|(a, set)| set.iter().map(move |w| (a, w)))
        .collect();

    let mut no_inner_occurrence = true;
    'outer: for a in 0..k {
        for b in (0..k).filter(|&b| b != a) {
            for x in s.image_set(a as u8) {
                for y in s.image_set(b as u8) {
                    let mut xy = x.letters().to_vec();
                    xy.extend_from_slice(y.letters());
                    if all_images
                        .iter()
                        .any(|(_, z)| occurs_strictly_inside(z.letters(), &xy))
                    {
                        no_inner_occurrence = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let prefix_free = all_images.iter().enumerate().all(|(i, (_, x))| {
        all_images
            .iter()
            .enumerate()
            .all(|(j, (_, y))| i == j || !y.letters().starts_with(x.letters()))
    });

    let distinct_last_letters = all_images.iter().all(|(a, x)| {
        all_images
            .iter()
            .all(|(b, y)| a == b || x.letters().last() != y.letters().last())
    });

    SubstitutionProperties {
        no_inner_occurrence,
        prefix_free,
        distinct_last_letters,
    }
}

/// Smallest test-word length `L` such that `L` consecutive images of
/// length at least `m` cover every factor of length `2(3M − 2)`, i.e.
/// `(L − 2)·m + 2 ≥ 2(3M − 2)`. Never below 3.
pub fn substitution_test_length(s: &Substitution) -> usize {
    let (big, small) = (s.max_image_len(), s.min_image_len().max(1));
    let span = 2 * (3 * big).saturating_sub(2);
    let needed = span.saturating_sub(2).div_ceil(small) + 2;
    needed.max(3)
}

/// Certifies a substitution: the structural properties hold and every
/// choice image of every square-free source word of `test_word_length` is
/// square-free.
pub fn certify_square_free_substitution(s: &Substitution, test_word_length: usize) -> Certificate {
    let properties = check_substitution_properties(s);
    let words: Vec<Word> = enumerate_square_free(s.src_alphabet(), test_word_length)
        .expect("valid alphabet")
        .collect();
    let failure = words.par_iter().find_map_first(|source| {
        s.apply(source)
            .expect("source over the substitution alphabet")
            .find(|(_, image)| !is_square_free(image.letters()))
            .map(|(choices, image)| Counterexample {
                source: source.clone(),
                square: image.find_square().expect("square exists"),
                choices: Some(choices),
                image,
            })
    });
    let verdict = match (&failure, properties.all()) {
        (Some(_), _) => Verdict::Refuted,
        (None, true) => Verdict::Certified,
        (None, false) => Verdict::Inconclusive,
    };
    Certificate {
        subject: String::from("substitution"),
        verdict,
        bound_used: test_word_length,
        checked_count: words.len(),
        counterexample: failure,
        properties: Some(properties),
    }
}
