//! Finite words over `{0, 1, …, k-1}` and square detection.
//!
//! Letters are stored as `u8` and rendered as single decimal digits, so the
//! alphabet size is capped at 10.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_ALPHABET: u8 = 10;

/// A finite word over an alphabet of `alphabet` letters.
///
/// Ordering is lexicographic on the letters (a proper prefix sorts first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: u8,
}

/// A factor `xx` at `start` with `|x| = half_length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareOccurrence {
    pub start: usize,
    pub half_length: usize,
}

impl SquareOccurrence {
    pub fn end(&self) -> usize {
        self.start + 2 * self.half_length
    }

    /// Re-checks the occurrence against `letters`.
    pub fn holds_in(&self, letters: &[u8]) -> bool {
        self.half_length > 0
            && self.end() <= letters.len()
            && letters[self.start..self.start + self.half_length]
                == letters[self.start + self.half_length..self.end()]
    }
}

impl fmt::Display for SquareOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.half_length)
    }
}

fn check_alphabet(alphabet: usize) -> Result<u8> {
    if (1..=MAX_ALPHABET as usize).contains(&alphabet) {
        Ok(alphabet as u8)
    } else {
        Err(Error::InvalidAlphabet(alphabet))
    }
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: usize) -> Result<Self> {
        let alphabet = check_alphabet(alphabet)?;
        if let Some(position) = letters.iter().position(|&a| a >= alphabet) {
            return Err(Error::LetterOutOfRange {
                letter: letters[position],
                position,
                alphabet,
            });
        }
        Ok(Word { letters, alphabet })
    }

    pub(crate) fn from_raw(letters: Vec<u8>, alphabet: u8) -> Self {
        debug_assert!(letters.iter().all(|&a| a < alphabet));
        Word { letters, alphabet }
    }

    pub fn empty(alphabet: usize) -> Result<Self> {
        Word::new(Vec::new(), alphabet)
    }

    /// Parses a digit string over an explicit alphabet.
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        Word::new(parse_digits(text)?, alphabet)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet as usize
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The same letters viewed over a larger alphabet.
    pub fn widen(&self, alphabet: usize) -> Result<Word> {
        Word::new(self.letters.clone(), alphabet.max(self.alphabet()))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_raw(letters, self.alphabet))
    }

    pub fn factor(&self, range: std::ops::Range<usize>) -> Word {
        Word::from_raw(self.letters[range].to_vec(), self.alphabet)
    }

    pub fn find_square(&self) -> Option<SquareOccurrence> {
        find_square(&self.letters)
    }

    pub fn is_square_free(&self) -> bool {
        is_square_free(&self.letters)
    }

    pub fn parikh(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet()];
        for &a in &self.letters {
            counts[a as usize] += 1;
        }
        counts
    }

    /// True iff the word is strictly smaller than each of its proper
    /// nonempty suffixes.
    pub fn is_lyndon(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord("the Lyndon property"));
        }
        let w = self.letters.as_slice();
        Ok((1..w.len()).all(|i| w < &w[i..]))
    }
}

pub(crate) fn parse_digits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .enumerate()
        .map(|(position, ch)| match ch.to_digit(10) {
            Some(d) => Ok(d as u8),
            None => Err(Error::InvalidCharacter { ch, position }),
        })
        .collect()
}

/// Parses a digit string; the alphabet is the larger of 3 and one past the
/// largest letter present.
impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let letters = parse_digits(text)?;
        let alphabet = letters.iter().map(|&a| a as usize + 1).max().unwrap_or(0).max(3);
        Word::new(letters, alphabet)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.letters {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\" over {})", self.alphabet)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Leftmost square: minimal start, then minimal half-length. The quadratic
/// scan only runs once [`is_square_free`] has said a square exists.
pub fn find_square(w: &[u8]) -> Option<SquareOccurrence> {
    if is_square_free(w) {
        return None;
    }
    let n = w.len();
    for start in 0..n {
        for half_length in 1..=(n - start) / 2 {
            let right = start + half_length;
            if w[start..right] == w[right..right + half_length] {
                return Some(SquareOccurrence { start, half_length });
            }
        }
    }
    None
}

/// Square-freeness by Main–Lorentz divide and conquer, `O(n log n)`.
///
/// Cross-checked against a naive scan in tests.
pub fn is_square_free(w: &[u8]) -> bool {
    !has_square(w)
}

/// True iff some square ends at the last letter of `w`.
pub fn ends_with_square(w: &[u8]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|half| w[n - half..] == w[n - 2 * half..n - half])
}

const SENTINEL: u8 = u8::MAX;

fn z_function(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

fn joined(a: impl Iterator<Item = u8>, b: impl Iterator<Item = u8>) -> Vec<u8> {
    a.chain(std::iter::once(SENTINEL)).chain(b).collect()
}

/// Below this length a direct scan beats the divide step's allocations.
const DIRECT_SCAN_BELOW: usize = 48;

fn has_square(s: &[u8]) -> bool {
    let n = s.len();
    if n < DIRECT_SCAN_BELOW {
        return (2..=n).any(|end| ends_with_square(&s[..end]));
    }
    let nu = n / 2;
    let nv = n - nu;
    let (u, v) = s.split_at(nu);
    if has_square(u) || has_square(v) {
        return true;
    }
    let get = |z: &[usize], i: usize| z.get(i).copied().unwrap_or(0);
    let ru: Vec<u8> = u.iter().rev().copied().collect();
    let z1 = z_function(&ru);
    let z2 = z_function(&joined(v.iter().copied(), u.iter().copied()));
    let z3 = z_function(&joined(ru.iter().copied(), v.iter().rev().copied()));
    let z4 = z_function(v);
    for center in 0..n {
        let left = center < nu;
        let (l, k1, k2) = if left {
            let l = nu - center;
            (l, get(&z1, nu - center), get(&z2, nv + 1 + center))
        } else {
            let l = center - nu + 1;
            (
                l,
                get(&z3, nu + 1 + nv - 1 - (center - nu)),
                get(&z4, center - nu + 1),
            )
        };
        if k1 + k2 < l {
            continue;
        }
        let low = 1.max(l.saturating_sub(k2));
        let mut high = l.min(k1);
        if left {
            high = high.min(l - 1);
        }
        if low <= high {
            return true;
        }
    }
    false
}

/// Lexicographic depth-first enumeration of square-free words of a fixed
/// length.
#[derive(Debug, Clone)]
pub struct SquareFreeWords {
    alphabet: u8,
    length: usize,
    current: Vec<u8>,
    started: bool,
    exhausted: bool,
}

impl SquareFreeWords {
    pub fn new(alphabet: usize, length: usize) -> Result<Self> {
        Ok(SquareFreeWords {
            alphabet: check_alphabet(alphabet)?,
            length,
            current: Vec::with_capacity(length),
            started: false,
            exhausted: false,
        })
    }

    /// Places the smallest admissible letter `>= from` at the end of the
    /// current prefix, backtracking as needed, until the target length.
    fn advance(&mut self, mut from: u8) -> bool {
        loop {
            let mut placed = false;
            for a in from..self.alphabet {
                self.current.push(a);
                if !ends_with_square(&self.current) {
                    placed = true;
                    break;
                }
                self.current.pop();
            }
            if placed {
                if self.current.len() == self.length {
                    return true;
                }
                from = 0;
            } else {
                match self.current.pop() {
                    Some(last) => from = last + 1,
                    None => return false,
                }
            }
        }
    }
}

impl Iterator for SquareFreeWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.exhausted {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            if self.length == 0 {
                self.exhausted = true;
                return Some(Word::from_raw(Vec::new(), self.alphabet));
            }
            self.advance(0)
        } else {
            let last = self.current.pop().expect("complete word on resume");
            self.advance(last + 1)
        };
        if found {
            Some(Word::from_raw(self.current.clone(), self.alphabet))
        } else {
            self.exhausted = true;
            None
        }
    }
}

pub fn enumerate_square_free(alphabet: usize, length: usize) -> Result<SquareFreeWords> {
    SquareFreeWords::new(alphabet, length)
}

pub fn count_square_free(alphabet: usize, length: usize) -> Result<usize> {
    Ok(enumerate_square_free(alphabet, length)?.count())
}

/// The lexicographically least square-free word of length `length` over
/// `alphabet` letters, i.e. the greedy choice with backtracking.
pub fn lex_least_square_free_prefix(alphabet: usize, length: usize) -> Result<Word> {
    if alphabet < 3 {
        return Err(Error::BelowDomain {
            what: "alphabet size",
            min: 3,
            value: alphabet,
        });
    }
    Ok(enumerate_square_free(alphabet, length)?
        .next()
        .expect("square-free words of every length exist over three letters"))
}
