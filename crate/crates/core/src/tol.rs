//! Numerical tolerances shared across the pipeline.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative zero threshold for trimming signal endpoints.
    pub trim: f64,
    /// Relative tolerance for intensity and autocorrelation identities.
    pub eval: f64,
    /// Residual bound for polished roots, relative to the coefficient 1-norm.
    pub root: f64,
    /// Matching tolerance for reflection pairs `(γ, 1/conj γ)`.
    pub pair: f64,
    /// Distance from |z| = 1 below which a root is treated as self-reflective.
    pub circle: f64,
    /// Imaginary parts below this (relative) are snapped to zero.
    pub real: f64,
    /// Elementwise relative tolerance for merging solution classes.
    pub dedup: f64,
    /// Slack on non-negativity tests, relative to the largest component.
    pub nn: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trim: 1e-12,
            eval: 1e-9,
            root: 1e-8,
            pair: 1e-6,
            circle: 1e-7,
            real: 1e-8,
            dedup: 1e-6,
            nn: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("trim", self.trim),
            ("eval", self.eval),
            ("root", self.root),
            ("pair", self.pair),
            ("circle", self.circle),
            ("real", self.real),
            ("dedup", self.dedup),
            ("nn", self.nn),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
