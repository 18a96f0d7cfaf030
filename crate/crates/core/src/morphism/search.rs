//! Backtracking search for uniform square-free morphisms.

use super::{certify_square_free_morphism, Morphism};
use crate::word::{ends_with_square, enumerate_square_free, is_square_free, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismSearch {
    Found(Morphism),
    /// The whole search space was explored without success.
    Exhausted,
    /// The node budget ran out first.
    BudgetExhausted,
}

impl MorphismSearch {
    pub fn found(self) -> Option<Morphism> {
        match self {
            MorphismSearch::Found(h) => Some(h),
            _ => None,
        }
    }
}

struct Search {
    src: usize,
    dst: u8,
    len: usize,
    budget: u64,
    nodes: u64,
    images: Vec<Vec<u8>>,
    /// Square-free test words of length 2 and 3.
    tests: Vec<Vec<u8>>,
}

enum Step {
    Done,
    Fail,
    OutOfBudget,
}

impl Search {
    /// Images of the test words ending in `letter` whose other letters are
    /// already assigned, without the final image.
    fn contexts(&self, letter: u8) -> Vec<Vec<u8>> {
        self.tests
            .iter()
            .filter(|t| *t.last().unwrap() == letter && t[..t.len() - 1].iter().all(|&a| a < letter))
            .map(|t| {
                t[..t.len() - 1]
                    .iter()
                    .flat_map(|&a| self.images[a as usize].iter().copied())
                    .collect()
            })
            .collect()
    }

    /// Test words over `0..=letter` that use `letter`, fully assigned.
    fn complete_ok(&self, letter: u8) -> bool {
        if self.images[..letter as usize].contains(&self.images[letter as usize]) {
            return false;
        }
        self.tests
            .iter()
            .filter(|t| t.contains(&letter) && t.iter().all(|&a| a <= letter))
            .all(|t| {
                let image: Vec<u8> = t
                    .iter()
                    .flat_map(|&a| self.images[a as usize].iter().copied())
                    .collect();
                is_square_free(&image)
            })
    }

    fn image(&mut self, letter: u8) -> Step {
        if letter as usize == self.src {
            return Step::Done;
        }
        let mut buffers = self.contexts(letter);
        buffers.push(Vec::new());
        let mut current: Vec<u8> = Vec::with_capacity(self.len);
        self.extend(letter, &mut current, &mut buffers)
    }

    fn extend(&mut self, letter: u8, current: &mut Vec<u8>, buffers: &mut [Vec<u8>]) -> Step {
        if current.len() == self.len {
            self.images[letter as usize] = current.clone();
            if self.complete_ok(letter) {
                match self.image(letter + 1) {
                    Step::Fail => {}
                    other => return other,
                }
            }
            return Step::Fail;
        }
        for a in 0..self.dst {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            current.push(a);
            for b in buffers.iter_mut() {
                b.push(a);
            }
            if buffers.iter().all(|b| !ends_with_square(b)) {
                match self.extend(letter, current, buffers) {
                    Step::Fail => {}
                    other => return other,
                }
            }
            current.pop();
            for b in buffers.iter_mut() {
                b.pop();
            }
        }
        Step::Fail
    }
}

/// Depth-first search over image tuples in lexicographic order, pruning on
/// squares in images of square-free words of length 2 and 3. A candidate is
/// returned only after [`certify_square_free_morphism`] certifies it.
///
/// `budget` caps the number of letter placements tried.
pub fn search_uniform_square_free_morphism(
    src_alphabet: usize,
    dst_alphabet: usize,
    image_length: usize,
    budget: u64,
) -> MorphismSearch {
    if src_alphabet == 0 || dst_alphabet == 0 || image_length == 0 {
        return MorphismSearch::Exhausted;
    }
    let tests = (2..=3)
        .flat_map(|n| enumerate_square_free(src_alphabet, n).expect("valid alphabet"))
        .map(Word::into_letters)
        .collect();
    let mut search = Search {
        src: src_alphabet,
        dst: dst_alphabet as u8,
        len: image_length,
        budget,
        nodes: 0,
        images: vec![Vec::new(); src_alphabet],
        tests,
    };
    match search.image(0) {
        Step::Done => {
            let images = search
                .images
                .into_iter()
                .map(|letters| Word::new(letters, dst_alphabet))
                .collect::<Result<Vec<_>, _>>()
                .expect("letters below dst alphabet");
            let h = Morphism::new(images).expect("nonempty images");
            // uniform morphisms are settled by words of length 3
            debug_assert_eq!(super::crochemore_bound(&h), 3);
            if certify_square_free_morphism(&h).is_certified() {
                MorphismSearch::Found(h)
            } else {
                MorphismSearch::Exhausted
            }
        }
        Step::Fail => MorphismSearch::Exhausted,
        Step::OutOfBudget => MorphismSearch::BudgetExhausted,
    }
}
