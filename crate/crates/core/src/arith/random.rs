use num_bigint::Sign;
use num_traits::{One, Signed, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::BigInt;

/// Seeded source of uniform integers.
///
/// Backed by ChaCha8 keyed through `SeedableRng::seed_from_u64`, so a seed
/// reproduces the same draw sequence on every platform. Every 64-bit word
/// pulled from the generator counts as one draw.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
    draws: u64,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 64-bit words drawn so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn bits_consumed(&self) -> u64 {
        self.draws * 64
    }

    /// Independent child stream number `index`.
    ///
    /// The child seed is `splitmix64(seed ^ splitmix64(index + 1))`; it depends
    /// only on the parent's seed, never on how far the parent has advanced.
    pub fn split(&self, index: u64) -> RandomStream {
        RandomStream::new(splitmix64(self.seed ^ splitmix64(index.wrapping_add(1))))
    }

    fn next_word(&mut self) -> u64 {
        self.draws += 1;
        self.rng.next_u64()
    }

    /// Uniform integer in `[1, m]`. A singleton range consumes no draws.
    pub fn uniform_u64(&mut self, m: u64) -> u64 {
        assert!(m >= 1, "uniform_u64 needs a non-empty range");
        if m == 1 {
            return 1;
        }
        // Rejection keeps the largest multiple of m below 2^64.
        let zone = u64::MAX - (u64::MAX % m + 1) % m;
        loop {
            let w = self.next_word();
            if w <= zone {
                return w % m + 1;
            }
        }
    }

    /// Uniform integer in `[1, m]` for an arbitrary-size bound.
    pub fn uniform_int(&mut self, m: &BigInt) -> BigInt {
        assert!(m.is_positive(), "uniform_int needs m >= 1");
        if let Some(small) = m.to_u64() {
            return BigInt::from(self.uniform_u64(small));
        }
        // Draw `bits` random bits and reject values >= m.
        let below = m - BigInt::one();
        let bits = below.bits();
        let words = bits.div_ceil(64) as usize;
        let top_bits = bits - 64 * (words as u64 - 1);
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_word()).collect();
            if top_bits < 64 {
                digits[words - 1] &= (1u64 << top_bits) - 1;
            }
            let candidate = from_le_words(&digits);
            if candidate <= below {
                return candidate + 1u32;
            }
        }
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn from_le_words(digits: &[u64]) -> BigInt {
    let bytes: Vec<u8> = digits.iter().flat_map(|d| d.to_le_bytes()).collect();
    BigInt::from_bytes_le(Sign::Plus, &bytes)
}
