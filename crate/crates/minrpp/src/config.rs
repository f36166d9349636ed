//! Oracle settings from the environment.

use anyhow::{Context, Result};

pub const DEFAULT_PRIME: u64 = 32003;
pub const DEFAULT_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { prime: DEFAULT_PRIME, samples: DEFAULT_SAMPLES, seed: 0 }
    }
}

fn env_num<T: std::str::FromStr>(key: &str) -> Result<Option<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    match std::env::var(key) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("{key}={s}"))?)),
        Err(_) => Ok(None),
    }
}

impl OracleConfig {
    /// `ORACLE_PRIME`, `ORACLE_SAMPLES` and `ORACLE_SEED` over the defaults.
    pub fn from_env() -> Result<Self> {
        let d = Self::default();
        let cfg = OracleConfig {
            prime: env_num("ORACLE_PRIME")?.unwrap_or(d.prime),
            samples: env_num("ORACLE_SAMPLES")?.unwrap_or(d.samples),
            seed: env_num("ORACLE_SEED")?.unwrap_or(d.seed),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_overrides(mut self, prime: Option<u64>, samples: Option<usize>, seed: Option<u64>) -> Result<Self> {
        self.prime = prime.unwrap_or(self.prime);
        self.samples = samples.unwrap_or(self.samples);
        self.seed = seed.unwrap_or(self.seed);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        anyhow::ensure!(minrpp_core::oracle::fp::is_prime(self.prime), "{} is not prime", self.prime);
        anyhow::ensure!(self.prime < 1 << 31, "prime must be below 2^31");
        anyhow::ensure!(self.samples > 0, "need at least one sample");
        Ok(())
    }
}
