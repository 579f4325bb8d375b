//! Reproducible random streams.
//!
//! Sub-streams are ChaCha20 generators keyed by a SplitMix64 expansion of
//! `hash(master, index, tag)`. Derivation depends only on the triple, so an
//! ensemble produces the same numbers whatever order or thread its members
//! run on.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Component tags separating the independent random ingredients of a model.
pub mod tag {
    pub const CUE_LEFT: u64 = 1;
    pub const CUE_RIGHT: u64 = 2;
    pub const COUPLING: u64 = 3;
    pub const ANGLES: u64 = 4;
    pub const STATE: u64 = 5;
    pub const CUE: u64 = 6;
}

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit sub-seed for `(master, index, tag)`.
pub fn derive_seed(master: u64, index: u64, tag: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ index) ^ tag.rotate_left(32))
}

/// Independent generator for `(master, index, tag)`.
pub fn substream(master: u64, index: u64, tag: u64) -> ChaCha20Rng {
    let mut state = derive_seed(master, index, tag);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha20Rng::from_seed(key)
}
