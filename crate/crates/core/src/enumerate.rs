//! Self-shuffle search, the square-free shuffle counts, and unshuffling.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shuffle::ConductingSequence;
use crate::word::{count_square_free, ends_with_square, enumerate_square_free, Word};

/// DFS over β prefixes for `u ⧢_β u`, extending only while the partial
/// output is square-free. Results come in ascending β order.
pub fn find_self_shuffle_betas(u: &Word, limit: Option<usize>) -> Vec<(ConductingSequence, Word)> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    let mut state = SelfShuffle {
        u: u.letters(),
        bits: Vec::with_capacity(2 * u.len()),
        output: Vec::with_capacity(2 * u.len()),
        limit: limit.unwrap_or(usize::MAX),
    };
    state.descend(0, 0, &mut |bits, output| {
        out.push((
            ConductingSequence::from_raw(bits.to_vec()),
            Word::from_raw(output.to_vec(), u.alphabet() as u8),
        ));
        out.len()
    });
    out
}

struct SelfShuffle<'a> {
    u: &'a [u8],
    bits: Vec<u8>,
    output: Vec<u8>,
    limit: usize,
}

impl SelfShuffle<'_> {
    /// Returns false once the limit is reached.
    fn descend(&mut self, i: usize, j: usize, emit: &mut impl FnMut(&[u8], &[u8]) -> usize) -> bool {
        let n = self.u.len();
        if i == n && j == n {
            return emit(&self.bits, &self.output) < self.limit;
        }
        for (bit, (ni, nj)) in [(0u8, (i + 1, j)), (1, (i, j + 1))] {
            if ni > n || nj > n {
                continue;
            }
            let letter = self.u[if bit == 0 { i } else { j }];
            self.output.push(letter);
            self.bits.push(bit);
            let keep_going = ends_with_square(&self.output) || self.descend(ni, nj, emit);
            self.output.pop();
            self.bits.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Distinct square-free self-shuffles of `u`, each with its least β.
pub fn distinct_self_shuffles(u: &Word) -> BTreeMap<Word, ConductingSequence> {
    let mut out = BTreeMap::new();
    for (beta, w) in find_self_shuffle_betas(u, None) {
        out.entry(w).or_insert(beta);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRow {
    pub length: usize,
    pub square_free_count: usize,
    /// Square-free `w` of this length with `w ∈ u ⧢ u` for a square-free `u`.
    pub shuffle_word_count: usize,
    /// Square-free `u` of half the length with some square-free self-shuffle.
    pub shuffleable_u_count: usize,
}

/// One row of the ternary counts for even `length ≥ 4`.
pub fn enumeration_row(length: usize) -> Result<EnumerationRow> {
    if length % 2 == 1 {
        return Err(Error::OddLength(length));
    }
    if length < 4 {
        return Err(Error::BelowDomain {
            what: "enumeration length",
            min: 4,
            value: length,
        });
    }
    let us: Vec<Word> = enumerate_square_free(3, length / 2)?.collect();
    let per_u: Vec<BTreeSet<Word>> = us
        .par_iter()
        .map(|u| distinct_self_shuffles(u).into_keys().collect())
        .collect();
    let shuffleable_u_count = per_u.iter().filter(|s| !s.is_empty()).count();
    let words: BTreeSet<&Word> = per_u.iter().flatten().collect();
    Ok(EnumerationRow {
        length,
        square_free_count: count_square_free(3, length)?,
        shuffle_word_count: words.len(),
        shuffleable_u_count,
    })
}

/// A square-free `u` and the least β with `w = u ⧢_β u`, searching over
/// both copies of `u` at once. `None` if `w` is not square-free or has no
/// such decomposition.
pub fn unshuffle_square_free(w: &Word) -> Option<(Word, ConductingSequence)> {
    if w.len() % 2 == 1 || !w.is_square_free() {
        return None;
    }
    let mut state = Unshuffle {
        w: w.letters(),
        half: w.len() / 2,
        u: Vec::with_capacity(w.len() / 2),
        bits: Vec::with_capacity(w.len()),
    };
    state.descend(0, 0).then(|| {
        (
            Word::from_raw(state.u, w.alphabet() as u8),
            ConductingSequence::from_raw(state.bits),
        )
    })
}

struct Unshuffle<'a> {
    w: &'a [u8],
    half: usize,
    /// The letters of `u` fixed so far.
    u: Vec<u8>,
    bits: Vec<u8>,
}

impl Unshuffle<'_> {
    fn descend(&mut self, i: usize, j: usize) -> bool {
        let p = i + j;
        if p == self.w.len() {
            return true;
        }
        let target = self.w[p];
        for (bit, k) in [(0u8, i), (1, j)] {
            if k == self.half {
                continue;
            }
            let extends = k == self.u.len();
            if extends {
                self.u.push(target);
                if ends_with_square(&self.u) {
                    self.u.pop();
                    continue;
                }
            } else if self.u[k] != target {
                continue;
            }
            self.bits.push(bit);
            let (ni, nj) = if bit == 0 { (i + 1, j) } else { (i, j + 1) };
            if self.descend(ni, nj) {
                return true;
            }
            self.bits.pop();
            if extends {
                self.u.pop();
            }
        }
        false
    }
}
