//! Independent checks: linear algebra over a prime field and
//! Greene–Kleitman chain invariants.

pub mod fp;
pub mod genjf;
pub mod gk;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use genjf::{gen_jf, generic_coker_jf, GenJf, OracleError};
pub use gk::{build_tilde_poset, gk_partition};

pub const DEFAULT_PRIME: u64 = 32003;
pub const DEFAULT_SAMPLES: usize = 8;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
