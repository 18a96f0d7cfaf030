//! Shared inputs for the benchmarks.

use shufflecraft_core::limit::hall_prefix;
use shufflecraft_core::{Catalog, ConductingSequence, Morphism, Word};

/// Square-free ternary carrier of the given length.
pub fn carrier(len: usize) -> Word {
    hall_prefix(len)
}

/// `len` letters whose only square is the final `aa`.
pub fn late_square(len: usize) -> Word {
    let mut letters = hall_prefix(len - 1).into_letters();
    letters.push(*letters.last().unwrap());
    Word::new(letters, 3).unwrap()
}

/// Alternating balanced sequence for two operands of length `half`.
pub fn alternating(half: usize) -> ConductingSequence {
    ConductingSequence::new((0..2 * half).map(|i| (i % 2) as u8).collect()).unwrap()
}

pub fn catalog_morphism(name: &str) -> &'static Morphism {
    Catalog::embedded().morphism(name).unwrap()
}
