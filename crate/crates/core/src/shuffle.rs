//! Shuffles conducted by binary sequences.
//!
//! Bit `0` takes the next unused letter of the first operand, bit `1` the
//! next unused letter of the second. Positions are 0-based throughout.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Operand, Result};
use crate::word::{parse_digits, Word};

/// A finite binary word steering a shuffle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConductingSequence {
    bits: Vec<u8>,
}

impl ConductingSequence {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(position) = bits.iter().position(|&b| b > 1) {
            return Err(Error::LetterOutOfRange {
                letter: bits[position],
                position,
                alphabet: 2,
            });
        }
        Ok(ConductingSequence { bits })
    }

    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        ConductingSequence { bits }
    }

    /// `0^a 1^b`.
    pub fn blocks(zeros: usize, ones: usize) -> Self {
        let mut bits = vec![0; zeros];
        bits.resize(zeros + ones, 1);
        ConductingSequence { bits }
    }

    /// Parses either a plain bit string (`00101110`) or run-length
    /// notation with exponents (`0^2101^2`, `0^{25}1^{24}01^{2}`). An
    /// exponent without braces is a single digit.
    pub fn parse(text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if !text.contains('^') {
            return ConductingSequence::new(parse_digits(&text)?);
        }
        let mut bits = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let bit = match chars[i] {
                '0' => 0,
                '1' => 1,
                ch => return Err(Error::InvalidCharacter { ch, position: i }),
            };
            i += 1;
            let mut count = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let braced = chars.get(i) == Some(&'{');
                if braced {
                    i += 1;
                }
                let start = i;
                // without braces the exponent is a single digit
                while i < chars.len() && chars[i].is_ascii_digit() && (braced || i == start) {
                    i += 1;
                }
                if start == i {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("missing exponent at position {start}"),
                    });
                }
                count = chars[start..i].iter().collect::<String>().parse().map_err(|_| {
                    Error::Parse {
                        line: 1,
                        message: "exponent out of range".into(),
                    }
                })?;
                if braced {
                    if chars.get(i) != Some(&'}') {
                        return Err(Error::Parse {
                            line: 1,
                            message: format!("unclosed brace at position {i}"),
                        });
                    }
                    i += 1;
                }
            }
            bits.extend(std::iter::repeat_n(bit, count));
        }
        Ok(ConductingSequence { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count0(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    pub fn count1(&self) -> usize {
        self.len() - self.count0()
    }

    pub fn is_balanced(&self) -> bool {
        self.count0() == self.count1()
    }

    pub fn concat(&self, other: &ConductingSequence) -> ConductingSequence {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        ConductingSequence { bits }
    }

    /// Maximal runs as `(bit, length)`.
    pub fn runs(&self) -> Vec<(u8, usize)> {
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for &b in &self.bits {
            match runs.last_mut() {
                Some((bit, len)) if *bit == b => *len += 1,
                _ => runs.push((b, 1)),
            }
        }
        runs
    }

    /// Compact exponent notation, e.g. `0^{2}101^{2}`.
    pub fn to_notation(&self) -> String {
        let mut out = String::new();
        for (bit, len) in self.runs() {
            if len == 1 {
                out.push_str(&bit.to_string());
            } else {
                out.push_str(&format!("{bit}^{{{len}}}"));
            }
        }
        out
    }

    fn check_counts(&self, first: usize, second: usize) -> Result<()> {
        let zeros = self.count0();
        if zeros != first {
            return Err(Error::CountMismatch {
                operand: Operand::First,
                expected: first,
                found: zeros,
            });
        }
        let ones = self.len() - zeros;
        if ones != second {
            return Err(Error::CountMismatch {
                operand: Operand::Second,
                expected: second,
                found: ones,
            });
        }
        Ok(())
    }
}

impl FromStr for ConductingSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        ConductingSequence::parse(text)
    }
}

impl fmt::Display for ConductingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ConductingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConductingSequence(\"{self}\")")
    }
}

impl Serialize for ConductingSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConductingSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An infinite conducting sequence `period^ω`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PeriodicRepr", into = "PeriodicRepr")]
pub struct PeriodicConductingSequence {
    period: ConductingSequence,
}

#[derive(Serialize, Deserialize)]
struct PeriodicRepr {
    period: String,
}

impl TryFrom<PeriodicRepr> for PeriodicConductingSequence {
    type Error = Error;

    fn try_from(repr: PeriodicRepr) -> Result<Self> {
        PeriodicConductingSequence::new(repr.period.parse()?)
    }
}

impl From<PeriodicConductingSequence> for PeriodicRepr {
    fn from(seq: PeriodicConductingSequence) -> Self {
        PeriodicRepr {
            period: seq.period.to_string(),
        }
    }
}

impl PeriodicConductingSequence {
    pub fn new(period: ConductingSequence) -> Result<Self> {
        if period.count0() == 0 || period.count1() == 0 {
            return Err(Error::DegeneratePeriod(period.to_string()));
        }
        Ok(PeriodicConductingSequence { period })
    }

    pub fn period(&self) -> &ConductingSequence {
        &self.period
    }

    pub fn bit(&self, index: usize) -> u8 {
        self.period.bits[index % self.period.len()]
    }

    pub fn prefix(&self, len: usize) -> ConductingSequence {
        ConductingSequence::from_raw((0..len).map(|i| self.bit(i)).collect())
    }

    /// Parses `(<period>)^w` or a bare period.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let inner = text
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(")^w").or_else(|| rest.strip_suffix(")^ω")))
            .unwrap_or(text);
        PeriodicConductingSequence::new(ConductingSequence::parse(inner)?)
    }
}

impl fmt::Display for PeriodicConductingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^w", self.period)
    }
}

fn same_alphabet(u: &Word, v: &Word) -> Result<()> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet() as u8,
            right: v.alphabet() as u8,
        });
    }
    Ok(())
}

/// `u ⧢_β v`.
pub fn shuffle_conducted(u: &Word, v: &Word, beta: &ConductingSequence) -> Result<Word> {
    same_alphabet(u, v)?;
    beta.check_counts(u.len(), v.len())?;
    let operands = [u.letters(), v.letters()];
    let mut next = [0usize; 2];
    let letters = beta
        .bits
        .iter()
        .map(|&b| {
            let b = b as usize;
            let letter = operands[b][next[b]];
            next[b] += 1;
            letter
        })
        .collect();
    Ok(Word::from_raw(letters, u.alphabet() as u8))
}

/// The alternating blocks `u₁, u′₁, u₂, u′₂, …` cut out by the runs of β.
///
/// Always starts with a first-operand block (empty if β starts with `1`)
/// and has even length (the last second-operand block may be empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Word>,
}

impl BlockDecomposition {
    pub fn first_operand(&self) -> Word {
        self.join(self.blocks.iter().step_by(2))
    }

    pub fn second_operand(&self) -> Word {
        self.join(self.blocks.iter().skip(1).step_by(2))
    }

    pub fn interleaved(&self) -> Word {
        self.join(self.blocks.iter())
    }

    fn join<'a>(&self, blocks: impl Iterator<Item = &'a Word>) -> Word {
        let alphabet = self.blocks.first().map_or(1, |b| b.alphabet() as u8);
        let letters = blocks.flat_map(|b| b.letters().iter().copied()).collect();
        Word::from_raw(letters, alphabet)
    }
}

pub fn decompose_blocks(
    u: &Word,
    v: &Word,
    beta: &ConductingSequence,
) -> Result<BlockDecomposition> {
    same_alphabet(u, v)?;
    beta.check_counts(u.len(), v.len())?;
    let operands = [u, v];
    let mut next = [0usize; 2];
    let mut blocks = Vec::new();
    for (bit, len) in beta.runs() {
        let b = bit as usize;
        if blocks.len() % 2 != b {
            blocks.push(Word::from_raw(Vec::new(), u.alphabet() as u8));
        }
        blocks.push(operands[b].factor(next[b]..next[b] + len));
        next[b] += len;
    }
    if blocks.len() % 2 == 1 {
        blocks.push(Word::from_raw(Vec::new(), u.alphabet() as u8));
    }
    Ok(BlockDecomposition { blocks })
}

/// Replaces every step of β by as many copies of the same bit as the image
/// length of the letter it consumes.
///
/// `image_lengths[i]` is the image length of position `i` of the (common)
/// operand. Both copies of the operand share these lengths.
pub fn lift_by_image_lengths(
    beta: &ConductingSequence,
    image_lengths: &[usize],
) -> Result<ConductingSequence> {
    beta.check_counts(image_lengths.len(), image_lengths.len())?;
    let mut next = [0usize; 2];
    let mut bits = Vec::with_capacity(2 * image_lengths.iter().sum::<usize>());
    for &b in &beta.bits {
        let len = image_lengths[next[b as usize]];
        next[b as usize] += 1;
        bits.extend(std::iter::repeat_n(b, len));
    }
    Ok(ConductingSequence { bits })
}

/// Some β with `u ⧢_β v = w`, the lexicographically least one, or `None`.
pub fn find_conducting(u: &Word, v: &Word, w: &Word) -> Option<ConductingSequence> {
    let (m, n) = (u.len(), v.len());
    if w.len() != m + n {
        return None;
    }
    let (u, v, w) = (u.letters(), v.letters(), w.letters());
    // completes[i][j]: w[i+j..] is a shuffle of u[i..] and v[j..]
    let width = n + 1;
    let mut completes = vec![false; (m + 1) * width];
    completes[m * width + n] = true;
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            if i == m && j == n {
                continue;
            }
            let target = w[i + j];
            let by_first = i < m && u[i] == target && completes[(i + 1) * width + j];
            let by_second = j < n && v[j] == target && completes[i * width + j + 1];
            completes[i * width + j] = by_first || by_second;
        }
    }
    if !completes[0] {
        return None;
    }
    let (mut i, mut j) = (0, 0);
    let mut bits = Vec::with_capacity(m + n);
    while i + j < m + n {
        if i < m && u[i] == w[i + j] && completes[(i + 1) * width + j] {
            bits.push(0);
            i += 1;
        } else {
            bits.push(1);
            j += 1;
        }
    }
    Some(ConductingSequence { bits })
}

/// `u ⧢_{(01)^n} v`.
pub fn perfect_shuffle(u: &Word, v: &Word) -> Result<Word> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let beta = ConductingSequence::from_raw([0, 1].repeat(u.len()));
    shuffle_conducted(u, v, &beta)
}

/// Exchanges `0 ↔ 2` and `1 ↔ 3` in a word over four letters.
pub fn dual_word(u: &Word) -> Result<Word> {
    if u.alphabet() != 4 {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet() as u8,
            right: 4,
        });
    }
    Ok(Word::from_raw(
        u.letters().iter().map(|&a| (a + 2) % 4).collect(),
        4,
    ))
}

/// True iff `u` over four letters avoids `02`, `20`, `13` and `31`.
pub fn is_reduced(u: &Word) -> bool {
    u.letters().windows(2).all(|p| (p[0] + 2) % 4 != p[1])
}

/// A verified triple `(u, β, w = u ⧢_β u)` with `u` and `w` square-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleWitness {
    pub u: Word,
    pub beta: ConductingSequence,
    pub w: Word,
}

impl ShuffleWitness {
    /// Computes `w` from `(u, β)` and verifies the result.
    pub fn new(u: Word, beta: ConductingSequence) -> Result<Self> {
        let w = shuffle_conducted(&u, &u, &beta)?;
        let witness = ShuffleWitness { u, beta, w };
        witness.verify()?;
        Ok(witness)
    }

    /// Recomputes the shuffle and reruns both square-freeness checks.
    pub fn verify(&self) -> Result<()> {
        let n = self.u.len();
        if self.beta.len() != 2 * n || !self.beta.is_balanced() {
            return Err(Error::InvalidWitness(format!(
                "conducting sequence of length {} is not balanced for |u| = {n}",
                self.beta.len()
            )));
        }
        let recomputed = shuffle_conducted(&self.u, &self.u, &self.beta)?;
        if recomputed != self.w {
            return Err(Error::InvalidWitness("w differs from u ⧢_β u".into()));
        }
        if let Some(sq) = self.u.find_square() {
            return Err(Error::InvalidWitness(format!("u has a square at {sq}")));
        }
        if let Some(sq) = self.w.find_square() {
            return Err(Error::InvalidWitness(format!("w has a square at {sq}")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}
