//! Floating-point verification of exact predictions: eigenvalues on sample
//! grids, continuation of eigenvalue tracks, exponent fits, braid
//! permutations and a cubic-formula oracle.

pub mod braid;
pub mod cardano;
pub mod eigen;
pub mod fit;
pub mod roots;
pub mod track;

use num_complex::Complex;

use crate::error::{Error, Result};

pub use braid::{braid_loop, cycle_lengths, BraidOptions, BraidPermutation};
pub use cardano::cardano_roots;
pub use eigen::{dense_eigenvalues, eigenvalues_at, EigenRoute, MatrixWithCharPoly, NumericFamily, SpectralFamily};
pub use fit::{fit_exponents, numeric_ord, Cluster, FitOptions, NumericOrd, VerificationResult, ZERO_FLOOR};
pub use roots::poly_roots;
pub use track::{track_path, Tracks};

/// Geometric grid `t_k = t0 · ratio^k · e^{i·phase}`, `k = 0..count`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    pub t0: f64,
    pub ratio: f64,
    pub count: usize,
    pub phase: f64,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self { t0: 1e-4, ratio: 0.5, count: 25, phase: 0.0 }
    }
}

impl SampleGrid {
    pub fn new(t0: f64, ratio: f64, count: usize, phase: f64) -> Result<Self> {
        let g = Self { t0, ratio, count, phase };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(Error::InvalidArgument(format!("grid t0 must be positive, got {}", self.t0)));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::InvalidArgument(format!("grid ratio must lie in (0,1), got {}", self.ratio)));
        }
        if self.count < 5 {
            return Err(Error::InvalidArgument(format!("grid needs at least 5 points, got {}", self.count)));
        }
        if !self.phase.is_finite() {
            return Err(Error::InvalidArgument("grid phase must be finite".into()));
        }
        Ok(())
    }

    /// Magnitudes `|t_k|`, decreasing.
    pub fn magnitudes(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.t0 * self.ratio.powi(k as i32)).collect()
    }

    pub fn points(&self) -> Vec<Complex<f64>> {
        self.magnitudes().into_iter().map(|r| Complex::from_polar(r, self.phase)).collect()
    }

    /// Decades spanned by the grid.
    pub fn decades(&self) -> f64 {
        -((self.count - 1) as f64) * self.ratio.log10()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = SampleGrid::default();
        let p = g.points();
        assert_eq!(p.len(), 25);
        assert_eq!(p[0], Complex::new(1e-4, 0.0));
        assert!((p[24].re - 1e-4 * 0.5f64.powi(24)).abs() < 1e-25);
        assert!(g.decades() > 7.0);
    }

    #[test]
    fn invalid_grids() {
        assert!(SampleGrid::new(0.0, 0.5, 25, 0.0).is_err());
        assert!(SampleGrid::new(1e-4, 1.0, 25, 0.0).is_err());
        assert!(SampleGrid::new(1e-4, 0.5, 4, 0.0).is_err());
        assert!(SampleGrid::new(1e-4, 0.5, 5, 0.3).is_ok());
    }
}
