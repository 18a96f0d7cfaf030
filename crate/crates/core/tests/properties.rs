use proptest::prelude::*;

use shufflecraft_core::enumerate::find_self_shuffle_betas;
use shufflecraft_core::limit::hall_prefix;
use shufflecraft_core::shuffle::{find_conducting, shuffle_conducted};
use shufflecraft_core::{Catalog, ConductingSequence, Morphism, SquareOccurrence, Word};

fn word(letters: Vec<u8>) -> Word {
    Word::new(letters, 3).unwrap()
}

fn naive_square(w: &[u8]) -> Option<(usize, usize)> {
    (0..w.len()).find_map(|i| (1..=(w.len() - i) / 2).find(|&h| w[i..i + h] == w[i + h..i + 2 * h]).map(|h| (i, h)))
}

fn ternary(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 0..=max)
}

/// A Hall factor with at most one letter overwritten: square-free or nearly so.
fn near_square_free() -> impl Strategy<Value = Vec<u8>> {
    (0usize..400, 1usize..=200, any::<prop::sample::Index>(), 0u8..3).prop_map(|(start, len, at, letter)| {
        let mut letters = hall_prefix(start + len).letters()[start..].to_vec();
        letters[at.index(len)] = letter;
        letters
    })
}

/// `(u, v, β)` with β steering exactly `|u|` and `|v|` letters.
fn operands() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, Vec<u8>)> {
    prop::collection::vec(0u8..2, 0..40).prop_flat_map(|bits| {
        let zeros = bits.iter().filter(|&&b| b == 0).count();
        let ones = bits.len() - zeros;
        (prop::collection::vec(0u8..3, zeros), prop::collection::vec(0u8..3, ones), Just(bits))
    })
}

fn catalog_morphism(name: &str) -> &'static Morphism {
    Catalog::embedded().morphism(name).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn leftmost_square_matches_naive_scan(letters in prop_oneof![ternary(200), near_square_free()]) {
        let found = word(letters.clone()).find_square().map(|SquareOccurrence { start, half_length }| (start, half_length));
        prop_assert_eq!(found, naive_square(&letters));
    }

    #[test]
    fn shuffle_round_trip((u, v, bits) in operands()) {
        let (u, v) = (word(u), word(v));
        let beta = ConductingSequence::new(bits).unwrap();
        let w = shuffle_conducted(&u, &v, &beta).unwrap();
        let found = find_conducting(&u, &v, &w).expect("w is a shuffle of u and v");
        prop_assert_eq!(shuffle_conducted(&u, &v, &found).unwrap(), w);
    }

    #[test]
    fn shuffles_concatenate((u1, v1, b1) in operands(), (u2, v2, b2) in operands()) {
        let (u1, v1, u2, v2) = (word(u1), word(v1), word(u2), word(v2));
        let (b1, b2) = (ConductingSequence::new(b1).unwrap(), ConductingSequence::new(b2).unwrap());
        let whole = shuffle_conducted(&u1.concat(&u2).unwrap(), &v1.concat(&v2).unwrap(), &b1.concat(&b2)).unwrap();
        let parts = shuffle_conducted(&u1, &v1, &b1).unwrap().concat(&shuffle_conducted(&u2, &v2, &b2).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn morphisms_are_monoid_maps(x in ternary(30), y in ternary(30)) {
        let (x, y) = (word(x), word(y));
        let tau = catalog_morphism("tau");
        let h = catalog_morphism("absorbing_h");
        prop_assert_eq!(tau.apply(&x.concat(&y).unwrap()).unwrap(), tau.apply(&x).unwrap().concat(&tau.apply(&y).unwrap()).unwrap());
        prop_assert_eq!(h.compose(tau).unwrap().apply(&x).unwrap(), h.apply(&tau.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn lifting_commutes_with_shuffle(
        u in ternary(12),
        seed in any::<u64>(),
        name in prop::sample::select(vec!["h19", "absorbing_h", "sigma_6", "sigma_11", "B"]),
    ) {
        let u = word(u);
        let mut bits: Vec<u8> = [vec![0; u.len()], vec![1; u.len()]].concat();
        // cheap deterministic shuffle of the bit multiset
        let mut state = seed | 1;
        for i in (1..bits.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            bits.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let beta = ConductingSequence::new(bits).unwrap();
        let h = catalog_morphism(name);
        let hu = h.apply(&u).unwrap();
        let lifted = h.lift(&beta, &u).unwrap();
        prop_assert_eq!(
            shuffle_conducted(&hu, &hu, &lifted).unwrap(),
            h.apply(&shuffle_conducted(&u, &u, &beta).unwrap()).unwrap()
        );
    }

    #[test]
    fn parikh_vectors_add(x in ternary(50), y in ternary(50)) {
        let (x, y) = (word(x), word(y));
        let sum: Vec<usize> = x.parikh().iter().zip(y.parikh()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(x.concat(&y).unwrap().parikh(), sum);
    }
}

#[test]
fn lyndon_agrees_with_rotations() {
    for len in 1..=8u32 {
        for code in 0..3usize.pow(len) {
            let letters: Vec<u8> = (0..len).map(|i| (code / 3usize.pow(i) % 3) as u8).collect();
            let strict_min = (1..letters.len()).all(|r| {
                let rotated = [&letters[r..], &letters[..r]].concat();
                letters < rotated
            });
            assert_eq!(word(letters.clone()).is_lyndon().unwrap(), strict_min, "{letters:?}");
        }
    }
}

#[test]
fn self_shuffle_search_is_complete() {
    for len in 0..=7u32 {
        for code in 0..3usize.pow(len) {
            let u = word((0..len).map(|i| (code / 3usize.pow(i) % 3) as u8).collect());
            let n = u.len();
            let mut expected = Vec::new();
            for mask in 0u32..1 << (2 * n) {
                if mask.count_ones() as usize != n {
                    continue;
                }
                // most significant bit first gives lexicographic order
                let bits: Vec<u8> = (0..2 * n).rev().map(|i| (mask >> i & 1) as u8).collect();
                let beta = ConductingSequence::new(bits).unwrap();
                let w = shuffle_conducted(&u, &u, &beta).unwrap();
                if naive_square(w.letters()).is_none() {
                    expected.push((beta, w));
                }
            }
            assert_eq!(find_self_shuffle_betas(&u, None), expected, "{u}");
        }
    }
}
