use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) type LabRng = ChaCha8Rng;

pub(crate) fn seeded(seed: u64) -> LabRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for a sub-task, keyed by `(seed, stream)`.
pub(crate) fn substream(seed: u64, stream: u64) -> LabRng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}

/// Seed for a sub-task; splitmix64 finalizer over `(seed, stream)`.
pub(crate) fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
