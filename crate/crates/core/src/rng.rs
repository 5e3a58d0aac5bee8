//! Counter-based random streams.
//!
//! A stream is addressed by `(seed, trial)` and has no sequential state
//! beyond a per-stream draw counter, so any partition of trials across
//! workers reproduces the same numbers bit for bit.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The random stream of one Monte Carlo trial.
#[derive(Debug, Clone)]
pub struct TrialRng {
    key: u64,
    counter: u64,
}

impl TrialRng {
    pub fn new(seed: u64, trial: u64) -> Self {
        let key = mix64(seed.wrapping_add(mix64(
            trial.wrapping_mul(GOLDEN) ^ 0xD1B5_4A32_D192_ED03,
        )));
        TrialRng { key, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}
