//! Morphisms and substitutions of free monoids over digit alphabets.

mod certify;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shuffle::{lift_by_image_lengths, ConductingSequence};
use crate::word::{parse_digits, Word};

pub use certify::{
    certify_square_free_morphism, certify_square_free_substitution,
    check_substitution_properties, crochemore_bound, substitution_test_length, Certificate,
    Counterexample, SubstitutionProperties, Verdict,
};
pub use search::{search_uniform_square_free_morphism, MorphismSearch};

/// A morphism `Σ_src* → Σ_dst*` given by one nonempty image per letter.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MorphismRepr", into = "MorphismRepr")]
pub struct Morphism {
    dst: u8,
    images: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    src: usize,
    dst: usize,
    images: Vec<String>,
}

impl TryFrom<MorphismRepr> for Morphism {
    type Error = Error;

    fn try_from(repr: MorphismRepr) -> Result<Self> {
        if repr.images.len() != repr.src {
            return Err(Error::LengthMismatch {
                left: repr.src,
                right: repr.images.len(),
            });
        }
        let images: Vec<&str> = repr.images.iter().map(String::as_str).collect();
        Morphism::from_images(&images, repr.dst)
    }
}

impl From<Morphism> for MorphismRepr {
    fn from(h: Morphism) -> Self {
        MorphismRepr {
            src: h.src_alphabet(),
            dst: h.dst_alphabet(),
            images: h.images.iter().map(Word::to_string).collect(),
        }
    }
}

fn leading_letter_line(line: &str, number: usize) -> Result<(usize, &str)> {
    let (letter, rest) = line.split_once("->").ok_or_else(|| Error::Parse {
        line: number,
        message: "expected `letter -> image`".into(),
    })?;
    let letter = letter.trim().parse::<usize>().map_err(|_| Error::Parse {
        line: number,
        message: format!("bad source letter {:?}", letter.trim()),
    })?;
    Ok((letter, rest.trim()))
}

/// Collects `letter -> payload` lines, skipping blanks and `#` comments, and
/// checks that the letters are exactly `0..k`.
fn collect_lines(text: &str) -> Result<Vec<&str>> {
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push(leading_letter_line(line, index + 1)?);
    }
    rows.sort_by_key(|&(letter, _)| letter);
    for (expected, &(letter, _)) in rows.iter().enumerate() {
        if letter != expected {
            return Err(Error::Parse {
                line: 0,
                message: format!("source letters must be 0..{}, missing {expected}", rows.len()),
            });
        }
    }
    Ok(rows.into_iter().map(|(_, payload)| payload).collect())
}

fn infer_dst(images: impl Iterator<Item = u8>) -> usize {
    images.map(|a| a as usize + 1).max().unwrap_or(0).max(3)
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let dst = images.iter().map(Word::alphabet).max().unwrap_or(1);
        let images = images
            .into_iter()
            .map(|w| w.widen(dst))
            .collect::<Result<Vec<_>>>()?;
        for (a, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage(a as u8));
            }
        }
        if images.is_empty() || images.len() > crate::word::MAX_ALPHABET as usize {
            return Err(Error::InvalidAlphabet(images.len()));
        }
        Ok(Morphism {
            dst: dst as u8,
            images,
        })
    }

    pub fn from_images(images: &[&str], dst: usize) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| Word::parse(s, dst))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }

    pub fn identity(alphabet: usize) -> Result<Self> {
        let images = (0..alphabet as u8)
            .map(|a| Word::new(vec![a], alphabet))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }

    /// Parses lines of the form `a -> image`.
    pub fn parse(text: &str) -> Result<Self> {
        let payloads = collect_lines(text)?;
        let letters = payloads
            .iter()
            .map(|p| parse_digits(p))
            .collect::<Result<Vec<_>>>()?;
        let dst = infer_dst(letters.iter().flatten().copied());
        Morphism::new(
            letters
                .into_iter()
                .map(|l| Word::new(l, dst))
                .collect::<Result<_>>()?,
        )
    }

    pub fn to_text(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(a, image)| format!("{a} -> {image}\n"))
            .collect()
    }

    pub fn src_alphabet(&self) -> usize {
        self.images.len()
    }

    pub fn dst_alphabet(&self) -> usize {
        self.dst as usize
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, letter: u8) -> &Word {
        &self.images[letter as usize]
    }

    /// `M`, the longest image length.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    /// `m`, the shortest image length.
    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(Word::len).min().unwrap_or(0)
    }

    pub fn uniform_length(&self) -> Option<usize> {
        let m = self.min_image_len();
        (m == self.max_image_len()).then_some(m)
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_length().is_some()
    }

    fn check_source(&self, w: &Word) -> Result<()> {
        if let Some(position) = w.letters().iter().position(|&a| a as usize >= self.images.len()) {
            return Err(Error::LetterOutOfRange {
                letter: w.letters()[position],
                position,
                alphabet: self.images.len() as u8,
            });
        }
        Ok(())
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.check_source(w)?;
        Ok(self.apply_unchecked(w.letters()))
    }

    pub(crate) fn apply_unchecked(&self, letters: &[u8]) -> Word {
        let mut out = Vec::with_capacity(letters.len() * self.max_image_len());
        for &a in letters {
            out.extend_from_slice(self.images[a as usize].letters());
        }
        Word::from_raw(out, self.dst)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.dst_alphabet() > self.src_alphabet() {
            return Err(Error::AlphabetMismatch {
                left: inner.dst,
                right: self.src_alphabet() as u8,
            });
        }
        Morphism::new(
            inner
                .images
                .iter()
                .map(|image| self.apply_unchecked(image.letters()))
                .collect(),
        )
    }

    /// The restriction to the first `alphabet` source letters.
    pub fn restrict(&self, alphabet: usize) -> Result<Morphism> {
        if alphabet == 0 || alphabet > self.src_alphabet() {
            return Err(Error::InvalidAlphabet(alphabet));
        }
        Morphism::new(self.images[..alphabet].to_vec())
    }

    /// The conducting sequence for `h(u) ⧢ h(u)` matching `u ⧢_β u`.
    pub fn lift(&self, beta: &ConductingSequence, u: &Word) -> Result<ConductingSequence> {
        self.check_source(u)?;
        let lengths: Vec<usize> = u.letters().iter().map(|&a| self.image(a).len()).collect();
        lift_by_image_lengths(beta, &lengths)
    }

    /// The first `length` letters of the fixed point `h^ω(seed)`.
    pub fn fixed_point_prefix(&self, seed: u8, length: usize) -> Result<Word> {
        if self.dst_alphabet() > self.src_alphabet() {
            return Err(Error::AlphabetMismatch {
                left: self.dst,
                right: self.src_alphabet() as u8,
            });
        }
        if seed as usize >= self.src_alphabet() {
            return Err(Error::LetterOutOfRange {
                letter: seed,
                position: 0,
                alphabet: self.src_alphabet() as u8,
            });
        }
        let first = self.image(seed);
        if first.len() < 2 || first.letters()[0] != seed {
            return Err(Error::NotProlongable {
                seed,
                image: first.to_string(),
            });
        }
        // x = h(x): the image of x[i] is appended once x[i] itself is known
        let mut out: Vec<u8> = first.letters().to_vec();
        let mut frontier = 1;
        while out.len() < length {
            let a = out[frontier];
            out.extend_from_slice(self.images[a as usize].letters());
            frontier += 1;
        }
        out.truncate(length);
        Ok(Word::from_raw(out, self.dst))
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.images.iter().enumerate().map(|(a, w)| (a, w.to_string())))
            .finish()
    }
}

/// A substitution: each letter maps to a finite nonempty set of nonempty
/// words. Image sets keep their given order, which fixes choice indices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "SubstitutionRepr", into = "SubstitutionRepr")]
pub struct Substitution {
    dst: u8,
    images: Vec<Vec<Word>>,
}

#[derive(Serialize, Deserialize)]
struct SubstitutionRepr {
    src: usize,
    dst: usize,
    images: Vec<Vec<String>>,
}

impl TryFrom<SubstitutionRepr> for Substitution {
    type Error = Error;

    fn try_from(repr: SubstitutionRepr) -> Result<Self> {
        if repr.images.len() != repr.src {
            return Err(Error::LengthMismatch {
                left: repr.src,
                right: repr.images.len(),
            });
        }
        let images = repr
            .images
            .iter()
            .map(|set| {
                set.iter()
                    .map(|s| Word::parse(s, repr.dst))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(images)
    }
}

impl From<Substitution> for SubstitutionRepr {
    fn from(s: Substitution) -> Self {
        SubstitutionRepr {
            src: s.src_alphabet(),
            dst: s.dst_alphabet(),
            images: s
                .images
                .iter()
                .map(|set| set.iter().map(Word::to_string).collect())
                .collect(),
        }
    }
}

impl Substitution {
    pub fn new(images: Vec<Vec<Word>>) -> Result<Self> {
        let dst = images.iter().flatten().map(Word::alphabet).max().unwrap_or(1);
        if images.is_empty() || images.len() > crate::word::MAX_ALPHABET as usize {
            return Err(Error::InvalidAlphabet(images.len()));
        }
        let mut widened = Vec::with_capacity(images.len());
        for (a, set) in images.into_iter().enumerate() {
            if set.is_empty() || set.iter().any(Word::is_empty) {
                return Err(Error::EmptyImage(a as u8));
            }
            widened.push(set.iter().map(|w| w.widen(dst)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Substitution {
            dst: dst as u8,
            images: widened,
        })
    }

    /// Parses lines of the form `a -> {image1, image2}`; a bare image is a
    /// singleton set.
    pub fn parse(text: &str) -> Result<Self> {
        let payloads = collect_lines(text)?;
        let mut sets = Vec::new();
        for payload in payloads {
            let inner = payload
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .unwrap_or(payload);
            let set = inner
                .split(',')
                .map(|s| parse_digits(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        let dst = infer_dst(sets.iter().flatten().flatten().copied());
        Substitution::new(
            sets.into_iter()
                .map(|set| set.into_iter().map(|l| Word::new(l, dst)).collect())
                .collect::<Result<_>>()?,
        )
    }

    pub fn to_text(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(a, set)| {
                let parts: Vec<String> = set.iter().map(Word::to_string).collect();
                format!("{a} -> {{{}}}\n", parts.join(", "))
            })
            .collect()
    }

    pub fn from_morphism(h: &Morphism) -> Substitution {
        Substitution {
            dst: h.dst,
            images: h.images.iter().map(|w| vec![w.clone()]).collect(),
        }
    }

    pub fn src_alphabet(&self) -> usize {
        self.images.len()
    }

    pub fn dst_alphabet(&self) -> usize {
        self.dst as usize
    }

    pub fn image_set(&self, letter: u8) -> &[Word] {
        &self.images[letter as usize]
    }

    pub fn image_sets(&self) -> &[Vec<Word>] {
        &self.images
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().flatten().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().flatten().map(Word::len).min().unwrap_or(0)
    }

    fn check_source(&self, w: &Word) -> Result<()> {
        if let Some(position) = w.letters().iter().position(|&a| a as usize >= self.images.len()) {
            return Err(Error::LetterOutOfRange {
                letter: w.letters()[position],
                position,
                alphabet: self.images.len() as u8,
            });
        }
        Ok(())
    }

    /// All choice products of `s(w)` in lexicographic order of the choice
    /// vectors.
    pub fn apply(&self, w: &Word) -> Result<SubstitutionImages<'_>> {
        self.check_source(w)?;
        Ok(SubstitutionImages {
            subst: self,
            source: w.letters().to_vec(),
            choices: vec![0; w.len()],
            done: false,
        })
    }

    /// The image of `w` with `choices[i]` selecting the image of `w[i]`.
    pub fn apply_with_choices(&self, w: &Word, choices: &[usize]) -> Result<Word> {
        self.check_source(w)?;
        if choices.len() != w.len() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: choices.len(),
            });
        }
        let mut out = Vec::new();
        for (&a, &c) in w.letters().iter().zip(choices) {
            let image = self.images[a as usize]
                .get(c)
                .ok_or(Error::BadChoice { letter: a, choice: c })?;
            out.extend_from_slice(image.letters());
        }
        Ok(Word::from_raw(out, self.dst))
    }

    /// The conducting sequence for `s_c(u) ⧢ s_c(u)` where both copies of
    /// `u` use the same choice vector.
    pub fn lift(
        &self,
        beta: &ConductingSequence,
        u: &Word,
        choices: &[usize],
    ) -> Result<ConductingSequence> {
        self.check_source(u)?;
        if choices.len() != u.len() {
            return Err(Error::LengthMismatch {
                left: u.len(),
                right: choices.len(),
            });
        }
        let mut lengths = Vec::with_capacity(u.len());
        for (&a, &c) in u.letters().iter().zip(choices) {
            let image = self.images[a as usize]
                .get(c)
                .ok_or(Error::BadChoice { letter: a, choice: c })?;
            lengths.push(image.len());
        }
        lift_by_image_lengths(beta, &lengths)
    }
}

/// Iterator over the choice products of a substitution image.
#[derive(Debug, Clone)]
pub struct SubstitutionImages<'a> {
    subst: &'a Substitution,
    source: Vec<u8>,
    choices: Vec<usize>,
    done: bool,
}

impl SubstitutionImages<'_> {
    fn current(&self) -> Word {
        let mut out = Vec::new();
        for (&a, &c) in self.source.iter().zip(&self.choices) {
            out.extend_from_slice(self.subst.images[a as usize][c].letters());
        }
        Word::from_raw(out, self.subst.dst)
    }
}

impl Iterator for SubstitutionImages<'_> {
    type Item = (Vec<usize>, Word);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = (self.choices.clone(), self.current());
        // odometer, last position fastest
        self.done = true;
        for i in (0..self.choices.len()).rev() {
            self.choices[i] += 1;
            if self.choices[i] < self.subst.images[self.source[i] as usize].len() {
                self.done = false;
                break;
            }
            self.choices[i] = 0;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn tau() -> Morphism {
        Morphism::from_images(&["012", "02", "1"], 3).unwrap()
    }

    fn interval_subst() -> Substitution {
        Substitution::parse(
            "0 -> {01202120102120210, 012021020102120210}\n\
             1 -> {12010201210201021, 120102101210201021}\n\
             2 -> {20121012021012102, 201210212021012102}\n",
        )
        .unwrap()
    }

    #[test]
    fn applying_morphisms() {
        let alpha = Morphism::from_images(&["1013", "1023", "1032"], 4).unwrap();
        assert_eq!(alpha.apply(&w("0")).unwrap(), Word::parse("1013", 4).unwrap());
        assert_eq!(alpha.apply(&Word::empty(3).unwrap()).unwrap().len(), 0);
        let mut x = w("0");
        for _ in 0..4 {
            x = tau().apply(&x).unwrap();
        }
        assert!(x.to_string().starts_with("012021012102"));
        assert!(matches!(
            tau().apply(&Word::parse("013", 4).unwrap()),
            Err(Error::LetterOutOfRange { letter: 3, position: 2, .. })
        ));
    }

    #[test]
    fn fixed_points() {
        assert_eq!(
            tau().fixed_point_prefix(0, 27).unwrap().to_string(),
            "012021012102012021020121012"
        );
        let h = Morphism::from_images(
            &["012021020102120210", "120102101210201021", "201210212021012102"],
            3,
        )
        .unwrap();
        assert_eq!(h.fixed_point_prefix(0, 18).unwrap().to_string(), "012021020102120210");
        assert_eq!(h.fixed_point_prefix(1, 1).unwrap().to_string(), "1");
        assert_eq!(tau().fixed_point_prefix(0, 0).unwrap().len(), 0);
        assert!(matches!(
            tau().fixed_point_prefix(1, 5),
            Err(Error::NotProlongable { seed: 1, .. })
        ));
        assert!(tau().fixed_point_prefix(2, 5).is_err());
    }

    #[test]
    fn text_round_trip() {
        let h = tau();
        assert_eq!(Morphism::parse(&h.to_text()).unwrap(), h);
        let s = interval_subst();
        assert_eq!(Substitution::parse(&s.to_text()).unwrap(), s);
        assert!(Morphism::parse("0 -> 01\n2 -> 1\n").is_err());
        assert!(Morphism::parse("0 => 01\n").is_err());
        assert!(Morphism::parse("0 -> \n1 -> 1").is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = tau();
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"src":3,"dst":3,"images":["012","02","1"]}"#);
        assert_eq!(serde_json::from_str::<Morphism>(&json).unwrap(), h);
    }

    #[test]
    fn composition_is_right_to_left() {
        let s1 = Morphism::from_images(&["1", "2", "0"], 3).unwrap();
        let s6 = Morphism::from_images(&["0102012", "021012", "10212"], 3).unwrap();
        let u = w("0120");
        let chained = s6.compose(&s1).unwrap().apply(&u).unwrap();
        assert_eq!(chained, s6.apply(&s1.apply(&u).unwrap()).unwrap());
    }

    #[test]
    fn substitution_images() {
        let s = interval_subst();
        let zero: Vec<String> = s.apply(&w("0")).unwrap().map(|(_, x)| x.to_string()).collect();
        assert_eq!(zero, ["01202120102120210", "012021020102120210"]);
        let empty: Vec<_> = s.apply(&Word::empty(3).unwrap()).unwrap().collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].1.is_empty());
        let lengths: Vec<usize> = s.apply(&w("01")).unwrap().map(|(_, x)| x.len()).collect();
        assert_eq!(lengths, [34, 35, 35, 36]);
        let choices: Vec<Vec<usize>> = s.apply(&w("01")).unwrap().map(|(c, _)| c).collect();
        assert_eq!(choices, [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(
            s.apply_with_choices(&w("01"), &[1, 0]).unwrap().len(),
            35
        );
        assert!(s.apply_with_choices(&w("01"), &[2, 0]).is_err());
    }

    #[test]
    fn lifting_matches_images() {
        let alpha = Morphism::from_images(&["1013", "1023", "1032"], 4).unwrap();
        let beta: ConductingSequence = "001011".parse().unwrap();
        assert_eq!(
            alpha.lift(&beta, &w("012")).unwrap(),
            "0^{8}1^{4}0^{4}1^{8}".parse().unwrap()
        );
        let u = w("0120");
        let blocks = ConductingSequence::blocks(4, 4);
        let hu = tau().apply(&u).unwrap();
        assert_eq!(
            tau().lift(&blocks, &u).unwrap(),
            ConductingSequence::blocks(hu.len(), hu.len())
        );
    }
}
