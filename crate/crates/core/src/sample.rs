//! Random words for the verification harness.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::words::{AlphabetBound, Letter, Word};

/// Independent generator for sample `index` of a batch seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ index.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Uniform length in `[0, max_len]`, letters uniform over the alphabet.
/// With `reduced`, a letter that would cancel its predecessor is redrawn.
pub fn random_word<R: Rng>(rng: &mut R, bound: AlphabetBound, max_len: usize, reduced: bool) -> Word {
    random_word_over(rng, &bound.letters(), max_len, reduced)
}

pub fn random_word_over<R: Rng>(rng: &mut R, alphabet: &[Letter], max_len: usize, reduced: bool) -> Word {
    if alphabet.is_empty() {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = alphabet[rng.gen_range(0..alphabet.len())];
        if reduced && out.last().is_some_and(|p| p.is_inverse_of(l)) {
            continue;
        }
        out.push(l);
    }
    Word::from_letters(out)
}

/// Half of the draws are reduced, half unconstrained.
pub fn mixed_word<R: Rng>(rng: &mut R, bound: AlphabetBound, max_len: usize) -> Word {
    let reduced = rng.gen_bool(0.5);
    random_word(rng, bound, max_len, reduced)
}

/// Loop letters `ℓ_lo ..= ℓ_hi` with both signs.
pub fn loop_alphabet(lo: u64, hi: u64) -> Vec<Letter> {
    (lo..=hi).flat_map(|i| [Letter::ell(i), Letter::ell(i).inverse()]).collect()
}
