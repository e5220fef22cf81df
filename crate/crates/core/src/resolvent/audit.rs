//! Zero counting by the argument principle, independent of Newton.
//!
//! The counted function is the entire `det D_{2k+1}(-i lambda)`, whose
//! zeros are the resonances. `d Q_{2k} - 1` has the same zeros but also
//! poles in the lower half plane, so its winding number would count
//! zeros minus poles.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::newton::Resonance;
use super::recursion::LayerChain;
use crate::error::{Error, Result};
use crate::medium::UnitCell;
use crate::monodromy::Band;

const MAX_ATTEMPTS: usize = 5;
const NEAR_ZERO: f64 = 1e-9;
const MAX_DARG: f64 = 0.3;
const MAX_DEPTH: usize = 40;
const TOP_IM: f64 = -1e-9;

struct Contour<'a> {
    chain: &'a LayerChain,
}

impl Contour<'_> {
    /// Unit phasor of `det D` at `z`, or `None` when `z` is numerically a
    /// zero.
    fn phasor(&self, z: Complex64) -> Option<Complex64> {
        let (d, dt) = self.chain.det_d_normalized(z);
        let size = d.norm();
        if size < NEAR_ZERO * dt.norm().max(1e-300) || size == 0.0 || !size.is_finite() {
            None
        } else {
            Some(d / size)
        }
    }

    fn segment(&self, a: Complex64, b: Complex64, pa: Complex64, pb: Complex64, depth: usize) -> Option<f64> {
        let step = (pb / pa).arg();
        if step.abs() <= MAX_DARG || depth >= MAX_DEPTH {
            return Some(step);
        }
        let m = (a + b) * 0.5;
        let pm = self.phasor(m)?;
        Some(self.segment(a, m, pa, pm, depth + 1)? + self.segment(m, b, pm, pb, depth + 1)?)
    }

    /// Total change of argument along the closed polygon `corners`.
    fn winding(&self, corners: &[Complex64], per_unit: f64) -> Option<f64> {
        let mut total = 0.0;
        for (i, &a) in corners.iter().enumerate() {
            let b = corners[(i + 1) % corners.len()];
            let n = (((b - a).norm() * per_unit).ceil() as usize).max(4);
            let mut prev = (a, self.phasor(a)?);
            for j in 1..=n {
                let z = a + (b - a) * (j as f64 / n as f64);
                let p = self.phasor(z)?;
                total += self.segment(prev.0, z, prev.1, p, 0)?;
                prev = (z, p);
            }
        }
        Some(total / (2.0 * PI))
    }
}

/// Number of resonances, with multiplicity, in
/// `[re_lo, re_hi] x [im_lo, im_hi]`, `im_hi < 0`.
pub fn count_zeros_in_rect(cell: &UnitCell, k: usize, re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<usize> {
    if !(re_lo < re_hi && im_lo < im_hi && im_hi < 0.0) {
        return Err(Error::InvalidRange(format!(
            "bad contour [{re_lo}, {re_hi}] x [{im_lo}, {im_hi}]"
        )));
    }
    let chain = LayerChain::locally_periodic(cell, k)?;
    let contour = Contour { chain: &chain };
    let corners = [
        Complex64::new(re_lo, im_lo),
        Complex64::new(re_hi, im_lo),
        Complex64::new(re_hi, im_hi),
        Complex64::new(re_lo, im_hi),
    ];
    // Sample density follows the oscillation rate of det D along the edges.
    let per_unit = 8.0 * k as f64 * cell.tau_b() + 16.0;
    let w = contour
        .winding(&corners, per_unit)
        .ok_or(Error::ContourThroughZero { attempts: 1 })?;
    let n = w.round();
    if (w - n).abs() > 0.01 || n < 0.0 {
        return Err(Error::NoConvergence(format!("winding number {w} is not an integer")));
    }
    Ok(n as usize)
}

/// Argument-principle count of resonances below `band`: the rectangle
/// `[lo - margin, hi + margin] x [im_floor, -1e-9]`. A contour that passes
/// through a zero is retried with a larger margin and a deeper floor.
pub fn audit_count(cell: &UnitCell, k: usize, band: &Band, margin: f64, im_floor: f64) -> Result<usize> {
    if !(margin > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "contour margin must be positive, got {margin}"
        )));
    }
    if !(im_floor < TOP_IM) {
        return Err(Error::InvalidRange(format!(
            "im_floor must be below {TOP_IM}, got {im_floor}"
        )));
    }
    if cell.is_homogeneous() {
        return Ok(0);
    }
    for attempt in 0..MAX_ATTEMPTS {
        let grow = 1.0 + 0.137 * attempt as f64;
        let m = margin * grow;
        match count_zeros_in_rect(cell, k, band.lo - m, band.hi + m, im_floor * grow, TOP_IM) {
            Err(Error::ContourThroughZero { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::ContourThroughZero { attempts: MAX_ATTEMPTS })
}

/// Resonances from `found` (all with `Re >= 0`) inside the rectangle,
/// including mirror images `-conj(lambda)` for the part with `Re < 0`.
pub fn count_resonances_in_rect(found: &[Resonance], re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> usize {
    let inside = |z: Complex64| z.re >= re_lo && z.re <= re_hi && z.im >= im_lo && z.im <= im_hi;
    let direct = found.iter().filter(|r| inside(r.lambda)).count();
    let mirrored = found
        .iter()
        .filter(|r| r.lambda.re > 1e-6)
        .filter(|r| inside(-r.lambda.conj()))
        .count();
    direct + mirrored
}
