use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Size budgets. Every exponential routine checks one of these before it
/// starts, so oversized inputs fail fast with [`Error::Capacity`].
///
/// Defaults can be overridden through the environment variables
/// `CONTACTLAB_MAX_ATOMS`, `CONTACTLAB_MAX_EXHAUSTIVE_ATOMS`,
/// `CONTACTLAB_MAX_POINTS` and `CONTACTLAB_MAX_SEARCH_POINTS`; they are read
/// once per process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest atom count accepted by [`crate::BooleanAlgebra::new`].
    pub max_atoms: usize,
    /// Largest atom count for checks that quantify over the whole carrier.
    pub max_exhaustive_atoms: usize,
    /// Largest point count of a finite space (bounded by the mask width).
    pub max_points: usize,
    /// Largest point count for brute-force searches over subsets or maps.
    pub max_search_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 16,
            max_exhaustive_atoms: 6,
            max_points: 64,
            max_search_points: 16,
        }
    }
}

fn env_usize(key: &str) -> Option<usize> {
    std::env::var(key).ok()?.trim().parse().ok()
}

impl Limits {
    pub fn from_env() -> Self {
        let d = Limits::default();
        Limits {
            max_atoms: env_usize("CONTACTLAB_MAX_ATOMS")
                .unwrap_or(d.max_atoms)
                .min(63),
            max_exhaustive_atoms: env_usize("CONTACTLAB_MAX_EXHAUSTIVE_ATOMS")
                .unwrap_or(d.max_exhaustive_atoms)
                .min(12),
            max_points: env_usize("CONTACTLAB_MAX_POINTS")
                .unwrap_or(d.max_points)
                .min(64),
            max_search_points: env_usize("CONTACTLAB_MAX_SEARCH_POINTS")
                .unwrap_or(d.max_search_points)
                .min(24),
        }
    }

    pub(crate) fn check_exhaustive(&self, atoms: usize) -> Result<()> {
        if atoms > self.max_exhaustive_atoms {
            return Err(Error::Capacity {
                what: "atoms for exhaustive check",
                requested: atoms,
                limit: self.max_exhaustive_atoms,
            });
        }
        Ok(())
    }

    pub(crate) fn check_points(&self, points: usize) -> Result<()> {
        if points > self.max_points {
            return Err(Error::Capacity {
                what: "points",
                requested: points,
                limit: self.max_points,
            });
        }
        Ok(())
    }

    pub(crate) fn check_search(&self, points: usize) -> Result<()> {
        if points > self.max_search_points {
            return Err(Error::Capacity {
                what: "points for brute-force search",
                requested: points,
                limit: self.max_search_points,
            });
        }
        Ok(())
    }
}

static LIMITS: OnceLock<Limits> = OnceLock::new();

/// Process-wide limits.
pub fn limits() -> Limits {
    *LIMITS.get_or_init(Limits::from_env)
}
