//! Size limits for exact computations.

use crate::error::{Error, Result};

/// Environment variable overriding the default generator limit.
pub const ENV_VAR: &str = "ANNCAT_SIZE_GUARD";

pub const DEFAULT_GENERATORS: u128 = 4096;
pub const DEFAULT_ENUMERATION: u128 = 1 << 24;

/// Caps on basis size (for the linear algebra) and on brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub generators: u128,
    pub enumeration: u128,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { generators: DEFAULT_GENERATORS, enumeration: DEFAULT_ENUMERATION }
    }
}

impl SizeGuard {
    /// Defaults, with the generator limit taken from the environment when set.
    pub fn from_env() -> Self {
        let mut g = SizeGuard::default();
        if let Some(v) = std::env::var(ENV_VAR).ok().and_then(|s| s.trim().parse().ok()) {
            g.generators = v;
        }
        g
    }

    pub fn with_generators(limit: u128) -> Self {
        SizeGuard { generators: limit, ..SizeGuard::default() }
    }

    pub fn check_generators(&self, what: impl Into<String>, needed: usize) -> Result<()> {
        if needed as u128 > self.generators {
            return Err(Error::SizeGuard { what: what.into(), needed: needed as u128, limit: self.generators });
        }
        Ok(())
    }

    pub fn check_enumeration(&self, what: impl Into<String>, needed: u128) -> Result<()> {
        if needed > self.enumeration {
            return Err(Error::SizeGuard { what: what.into(), needed, limit: self.enumeration });
        }
        Ok(())
    }
}
