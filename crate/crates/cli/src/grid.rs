//! `lo:hi:step` grid specifications.

use anyhow::{bail, Context, Result};

/// An inclusive arithmetic grid parsed from `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            bail!("grid must look like lo:hi:step, got `{spec}`");
        }
        let lo: f64 = parts[0].parse().with_context(|| format!("bad grid lo `{}`", parts[0]))?;
        let hi: f64 = parts[1].parse().with_context(|| format!("bad grid hi `{}`", parts[1]))?;
        let step: f64 = parts[2]
            .parse()
            .with_context(|| format!("bad grid step `{}`", parts[2]))?;
        if !lo.is_finite() || !hi.is_finite() || !step.is_finite() {
            bail!("grid endpoints and step must be finite");
        }
        if step <= 0.0 {
            bail!("grid step must be positive");
        }
        if lo > hi {
            bail!("empty grid: lo {lo} exceeds hi {hi}");
        }
        Ok(Self { lo, hi, step })
    }

    /// Materializes the grid points, both endpoints included (up to
    /// floating-point slack in the final step).
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}
