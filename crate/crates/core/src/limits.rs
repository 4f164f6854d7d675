//! Size caps for the exponential parts of the library.

use crate::error::{Error, Result};

/// Caps on work sizes. Every exponential routine checks the relevant cap up
/// front and fails with [`Error::Capacity`] instead of running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for which a complex's `2^v` cells are stored
    /// densely (Taylor pruning, Morse complexes, Taylor strand oracle).
    pub max_dense_vertices: usize,
    /// Largest lcm lattice enumerated by the Betti oracle.
    pub max_lattice: usize,
    /// Largest face count of a single upper Koszul complex or power complex.
    pub max_faces: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dense_vertices: 24,
            max_lattice: 250_000,
            max_faces: 2_000_000,
        }
    }
}

pub const ENV_DENSE: &str = "MORSERES_MAX_DENSE";
pub const ENV_LATTICE: &str = "MORSERES_MAX_LATTICE";
pub const ENV_FACES: &str = "MORSERES_MAX_FACES";

impl Limits {
    /// Defaults overridden by `MORSERES_MAX_DENSE`, `MORSERES_MAX_LATTICE`
    /// and `MORSERES_MAX_FACES` when set.
    pub fn from_env() -> Result<Self> {
        let mut l = Limits::default();
        for (var, slot) in [
            (ENV_DENSE, &mut l.max_dense_vertices),
            (ENV_LATTICE, &mut l.max_lattice),
            (ENV_FACES, &mut l.max_faces),
        ] {
            if let Ok(v) = std::env::var(var) {
                *slot = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("{var}={v} is not a count")))?;
            }
        }
        if l.max_dense_vertices > 40 {
            return Err(Error::Invalid(format!(
                "{ENV_DENSE} above 40 would need more than 2^40 cells"
            )));
        }
        Ok(l)
    }

    pub(crate) fn check_dense(&self, v: usize, what: &'static str) -> Result<()> {
        if v > self.max_dense_vertices {
            return Err(Error::Capacity {
                what,
                size: v,
                cap: self.max_dense_vertices,
                hint: "use `split` to prune through Betti splittings, or raise MORSERES_MAX_DENSE",
            });
        }
        Ok(())
    }
}
