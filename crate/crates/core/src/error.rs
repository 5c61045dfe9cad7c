use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A construction hypothesis does not hold for the given inputs.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A computation would exceed the configured size budget.
    #[error("budget exceeded: {what} needs {}, limit is {limit}", count_text(*.needed))]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

fn count_text(n: u128) -> String {
    if n == u128::MAX {
        "more than 2^128".to_string()
    } else {
        n.to_string()
    }
}

/// Size limits for exhaustive work.
///
/// Defaults: fields up to 2^20 elements, sweeps of up to 2^24 codewords and
/// subgroup closures of up to 10^6 elements. `LRC_MAX_Q`, `LRC_MAX_ENUM` and
/// `LRC_MAX_GROUP` override them through [`Budget::from_env`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_q: u64,
    pub max_enum: u64,
    pub max_group: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_q: 1 << 20,
            max_enum: 1 << 24,
            max_group: 1_000_000,
        }
    }
}

impl Budget {
    pub fn from_env() -> Self {
        Budget::default().with_env()
    }

    /// Replaces each limit whose environment variable is set.
    pub fn with_env(self) -> Self {
        let mut b = self;
        if let Some(v) = env_u64("LRC_MAX_Q") {
            b.max_q = v;
        }
        if let Some(v) = env_u64("LRC_MAX_ENUM") {
            b.max_enum = v;
        }
        if let Some(v) = env_u64("LRC_MAX_GROUP") {
            b.max_group = v as usize;
        }
        b
    }

    /// Checks `base^exp <= max_enum` without overflowing.
    pub fn check_enum(&self, what: &'static str, base: u64, exp: usize) -> Result<u64> {
        let total = (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128));
        if total > self.max_enum as u128 {
            return Err(Error::Budget {
                what,
                needed: total,
                limit: self.max_enum as u128,
            });
        }
        Ok(total as u64)
    }
}

fn env_u64(key: &str) -> Option<u64> {
    std::env::var(key).ok().and_then(|s| s.trim().parse().ok())
}
