//! Resource bounds for exhaustive enumeration.
//!
//! Every enumeration that grows faster than exponentially (packed words,
//! plane trees, parking fibers, free-trialgebra closure) checks the requested
//! degree against a [`Limits`] value before doing any work. The process-wide
//! default is read once from `DENDRIKIT_MAX_DEGREE` and falls back to
//! [`DEFAULT_MAX_DEGREE`].

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const MAX_DEGREE_ENV: &str = "DENDRIKIT_MAX_DEGREE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
}

static GLOBAL: Lazy<Limits> = Lazy::new(|| {
    let max_degree = std::env::var(MAX_DEGREE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE);
    Limits { max_degree }
});

impl Limits {
    pub const fn new(max_degree: usize) -> Self {
        Limits { max_degree }
    }

    /// Process-wide bound, honoring the environment override.
    pub fn global() -> Limits {
        *GLOBAL
    }

    pub fn check(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            Err(Error::ResourceLimit {
                requested: degree,
                bound: self.max_degree,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::new(DEFAULT_MAX_DEGREE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_rejects_above_bound() {
        let l = Limits::new(3);
        assert!(l.check(3).is_ok());
        assert_eq!(
            l.check(4),
            Err(Error::ResourceLimit {
                requested: 4,
                bound: 3
            })
        );
    }
}
