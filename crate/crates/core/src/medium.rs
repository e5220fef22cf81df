//! The two-step unit cell and the slab built from `k` copies of it.
//!
//! On one period `[0, 1)` the coefficient is `a(x) = b2^-2` for `x < x2` and
//! `a(x) = b1^-2` for `x >= x2`; outside the slab it is `b1^-2`. The period is
//! fixed to 1.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative tolerance for the commensurability test `b2*x2 = b1*(1-x2)`.
pub const COMMENSURATE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCell")]
pub struct UnitCell {
    b1: f64,
    b2: f64,
    x2: f64,
}

#[derive(Deserialize)]
struct RawCell {
    b1: f64,
    b2: f64,
    x2: f64,
}

impl TryFrom<RawCell> for UnitCell {
    type Error = Error;

    fn try_from(raw: RawCell) -> Result<Self> {
        UnitCell::new(raw.b1, raw.b2, raw.x2)
    }
}

/// Constants derived from a cell that appear throughout the formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// Interface reflection amplitude `(b2 - b1) / (b2 + b1)`.
    pub d: f64,
    /// `(b1^2 + b2^2) / (2 b1 b2)`.
    pub rho: f64,
    /// Total optical length of the cell, `x2 b2 + (1 - x2) b1`.
    pub tau_b: f64,
    /// Optical length mismatch of the two layers, `x2 b2 - (1 - x2) b1`.
    pub tau_g: f64,
}

impl UnitCell {
    pub fn new(b1: f64, b2: f64, x2: f64) -> Result<Self> {
        if !(b1.is_finite() && b1 > 0.0) {
            return Err(Error::InvalidCell(format!("b1 must be positive, got {b1}")));
        }
        if !(b2.is_finite() && b2 > 0.0) {
            return Err(Error::InvalidCell(format!("b2 must be positive, got {b2}")));
        }
        if !(x2.is_finite() && x2 > 0.0 && x2 < 1.0) {
            return Err(Error::InvalidCell(format!("x2 must lie in (0, 1), got {x2}")));
        }
        Ok(Self { b1, b2, x2 })
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn d(&self) -> f64 {
        (self.b2 - self.b1) / (self.b2 + self.b1)
    }

    pub fn rho(&self) -> f64 {
        (self.b1 * self.b1 + self.b2 * self.b2) / (2.0 * self.b1 * self.b2)
    }

    /// Optical length of the `b2` layer, `b2 x2`.
    pub fn inner_length(&self) -> f64 {
        self.b2 * self.x2
    }

    /// Optical length of the `b1` layer, `b1 (1 - x2)`.
    pub fn outer_length(&self) -> f64 {
        self.b1 * (1.0 - self.x2)
    }

    pub fn tau_b(&self) -> f64 {
        self.inner_length() + self.outer_length()
    }

    pub fn tau_g(&self) -> f64 {
        self.inner_length() - self.outer_length()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.b1 == self.b2
    }

    pub fn derived(&self) -> DerivedConstants {
        derived_constants(self)
    }

    pub fn is_commensurate(&self) -> bool {
        is_commensurate(self)
    }

    /// Period `pi / (b2 x2)` of the band and resonance spectra, when the
    /// cell is commensurate.
    pub fn spectral_period(&self) -> Option<f64> {
        self.is_commensurate().then(|| PI / self.inner_length())
    }

    /// Frequencies `pi m / (x2 b2)`, `m >= 0`, at which a single cell is
    /// perfectly transparent, up to and including `lambda_max`.
    pub fn transparency_frequencies(&self, lambda_max: f64) -> Vec<f64> {
        let step = PI / self.inner_length();
        (0..)
            .map(|m| m as f64 * step)
            .take_while(|&l| l <= lambda_max)
            .collect()
    }
}

pub fn derived_constants(cell: &UnitCell) -> DerivedConstants {
    DerivedConstants {
        d: cell.d(),
        rho: cell.rho(),
        tau_b: cell.tau_b(),
        tau_g: cell.tau_g(),
    }
}

pub fn is_commensurate(cell: &UnitCell) -> bool {
    let lhs = cell.inner_length();
    let rhs = cell.outer_length();
    (lhs - rhs).abs() <= COMMENSURATE_RTOL * lhs.max(rhs)
}

/// A slab of `k` identical cells on `[0, k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabConfig {
    pub cell: UnitCell,
    pub k: usize,
}

impl SlabConfig {
    pub fn new(cell: UnitCell, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("number of cells k must be >= 1".into()));
        }
        Ok(Self { cell, k })
    }

    pub fn is_commensurate(&self) -> bool {
        self.cell.is_commensurate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cell_a_constants() {
        let c = UnitCell::new(1.0, 4.0, 0.2).unwrap().derived();
        assert_abs_diff_eq!(c.d, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(c.rho, 2.125, epsilon = 1e-15);
        assert_abs_diff_eq!(c.tau_b, 1.6, epsilon = 1e-15);
        assert_abs_diff_eq!(c.tau_g, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn homogeneous_constants() {
        let cell = UnitCell::new(1.0, 1.0, 0.5).unwrap();
        let c = cell.derived();
        assert_eq!(c.d, 0.0);
        assert_eq!(c.rho, 1.0);
        assert_abs_diff_eq!(c.tau_b, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.tau_g, 0.0, epsilon = 1e-15);
        assert!(cell.is_homogeneous());
    }

    #[test]
    fn cell_c_constants() {
        let c = UnitCell::new(3.8, 1.0, 0.8).unwrap().derived();
        assert_abs_diff_eq!(c.d, -2.8 / 4.8, epsilon = 1e-15);
        assert_abs_diff_eq!(c.rho, 15.44 / 7.6, epsilon = 1e-14);
        assert_abs_diff_eq!(c.d, -0.583333, epsilon = 1e-6);
        assert_abs_diff_eq!(c.rho, 2.031579, epsilon = 1e-6);
    }

    #[test]
    fn commensurability() {
        assert!(UnitCell::new(1.0, 4.0, 0.2).unwrap().is_commensurate());
        assert!(!UnitCell::new(1.0, 3.8, 0.2).unwrap().is_commensurate());
        assert!(UnitCell::new(1.0, 1.0, 0.5).unwrap().is_commensurate());
        let period = UnitCell::new(1.0, 4.0, 0.2).unwrap().spectral_period().unwrap();
        assert_abs_diff_eq!(period, PI / 0.8, epsilon = 1e-14);
        assert!(UnitCell::new(1.0, 3.8, 0.2).unwrap().spectral_period().is_none());
    }

    #[test]
    fn rejects_invalid_cells() {
        assert!(UnitCell::new(0.0, 1.0, 0.5).is_err());
        assert!(UnitCell::new(1.0, -1.0, 0.5).is_err());
        assert!(UnitCell::new(1.0, 1.0, 0.0).is_err());
        assert!(UnitCell::new(1.0, 1.0, 1.0).is_err());
        assert!(UnitCell::new(f64::NAN, 1.0, 0.5).is_err());
        assert!(SlabConfig::new(UnitCell::new(1.0, 2.0, 0.5).unwrap(), 0).is_err());
    }

    #[test]
    fn deserialization_validates() {
        let ok: UnitCell = serde_json::from_str(r#"{"b1":1,"b2":4,"x2":0.2}"#).unwrap();
        assert_eq!(ok.b2(), 4.0);
        assert!(serde_json::from_str::<UnitCell>(r#"{"b1":1,"b2":4,"x2":1.5}"#).is_err());
    }

    #[test]
    fn transparency_frequencies_cell_a() {
        let cell = UnitCell::new(1.0, 4.0, 0.2).unwrap();
        let l0 = cell.transparency_frequencies(8.0);
        assert_eq!(l0.len(), 3);
        assert_abs_diff_eq!(l0[1], PI / 0.8, epsilon = 1e-14);
    }
}
