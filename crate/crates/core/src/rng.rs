//! The seeded random number generator behind every generator.
//!
//! The stream is fully specified so that outputs can be reproduced by other
//! implementations. All arithmetic is on 64-bit words, wrapping.
//!
//! **Seeding (SplitMix64).** Starting from `z = seed`, each state word is
//! produced by
//!
//! ```text
//! z  = z + 0x9E3779B97F4A7C15
//! w  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! w  = (w ^ (w >> 27)) * 0x94D049BB133111EB
//! s[k] = w ^ (w >> 31)                 for k = 0, 1, 2, 3
//! ```
//!
//! **Output (xoshiro256\*\*).**
//!
//! ```text
//! out  = rotl(s[1] * 5, 7) * 9
//! t    = s[1] << 17
//! s[2] ^= s[0];  s[3] ^= s[1];  s[1] ^= s[2];  s[0] ^= s[3]
//! s[2] ^= t;     s[3] = rotl(s[3], 45)
//! ```
//!
//! **Bounded integers.** `below(b)` returns a value in `0..b` by Lemire's
//! multiply-and-reject method: take `m = out * b` as a 128-bit product; if the
//! low 64 bits are below `(2^64 - b) mod b`, draw again; return the high 64
//! bits.
//!
//! **Shuffles.** Fisher-Yates from the back: for `k = len-1` down to `1`,
//! swap items `k` and `below(k + 1)`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

#[derive(Debug, Clone)]
pub struct Rng(Xoshiro256StarStar);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        if (m as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (m as u64) < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
            }
        }
        (m >> 64) as u64
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for k in (1..items.len()).rev() {
            let j = self.index(k + 1);
            items.swap(k, j);
        }
    }
}
