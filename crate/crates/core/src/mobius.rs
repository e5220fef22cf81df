//! The linear-fractional map taking `r_k` to `r_{k+1}` for a commensurate
//! cell, its fixed points and the limit of its iterates.
//!
//! With `eta = e^{2i lambda b2 x2}` and `g(z) = (d - eta z) / (1 - d eta z)`,
//! the map is `f = g o g`, `r_1 = f(0)` and `r_{k+1} = f(r_k)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::UnitCell;

const IDENTITY_TOL: f64 = 1e-12;
const KIND_TOL: f64 = 1e-10;
const STEP_TOL: f64 = 1e-10;
const SNAP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPointKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl FixedPointKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FixedPointKind::Elliptic => "elliptic",
            FixedPointKind::Parabolic => "parabolic",
            FixedPointKind::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub eta: Complex64,
    pub d: f64,
    pub lambda: f64,
}

impl MobiusMap {
    fn half(&self, z: Complex64) -> Complex64 {
        (Complex64::new(self.d, 0.0) - self.eta * z) / (Complex64::new(1.0, 0.0) - self.eta * z * self.d)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.half(self.half(z))
    }

    /// `f^[n](z)`.
    pub fn iterate(&self, z: Complex64, n: usize) -> Complex64 {
        (0..n).fold(z, |acc, _| self.apply(acc))
    }

    pub fn is_identity(&self) -> bool {
        (self.eta - 1.0).norm() < IDENTITY_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointAnalysis {
    pub z1: Complex64,
    pub z2: Complex64,
    pub kind: FixedPointKind,
    /// `cos^2(lambda b2 x2) - d^2`.
    pub discriminant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOutcome {
    pub converged: bool,
    pub value: Complex64,
    /// `None` when the map is the identity (degenerate edge).
    pub kind: Option<FixedPointKind>,
    pub iterations: usize,
}

fn require_commensurate(cell: &UnitCell) -> Result<()> {
    if !cell.is_commensurate() {
        return Err(Error::NotCommensurate {
            lhs: cell.inner_length(),
            rhs: cell.outer_length(),
        });
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be finite, got {lambda}")));
    }
    Ok(())
}

pub fn mobius_map(cell: &UnitCell, lambda: f64) -> Result<MobiusMap> {
    require_commensurate(cell)?;
    check_lambda(lambda)?;
    let eta = Complex64::new(0.0, 2.0 * lambda * cell.inner_length()).exp();
    Ok(MobiusMap {
        eta,
        d: cell.d(),
        lambda,
    })
}

/// One-cell reflection coefficient `(1 - eta) d / (1 - d^2 eta)`.
pub fn r1(cell: &UnitCell, lambda: f64) -> Result<Complex64> {
    check_lambda(lambda)?;
    let eta = Complex64::new(0.0, 2.0 * lambda * cell.inner_length()).exp();
    let d = cell.d();
    Ok((Complex64::new(1.0, 0.0) - eta) * d / (Complex64::new(1.0, 0.0) - eta * (d * d)))
}

pub fn fixed_points(cell: &UnitCell, lambda: f64) -> Result<FixedPointAnalysis> {
    let map = mobius_map(cell, lambda)?;
    if cell.is_homogeneous() {
        return Err(Error::HomogeneousCell);
    }
    if map.is_identity() {
        return Err(Error::DegenerateEdge { lambda });
    }
    let phi = lambda * cell.inner_length();
    let (c, d) = (phi.cos(), map.d);
    let disc = c * c - d * d;
    let root = Complex64::new(disc, 0.0).sqrt();
    let den = Complex64::new(0.0, phi).exp() * d;
    let za = (root + c) / den;
    let zb = (-root + c) / den;
    let (z1, z2) = if (za.norm() - zb.norm()).abs() > 1e-12 {
        if za.norm() < zb.norm() {
            (za, zb)
        } else {
            (zb, za)
        }
    } else if za.re >= zb.re {
        (za, zb)
    } else {
        (zb, za)
    };
    let kind = if disc > KIND_TOL && c * c < 1.0 {
        FixedPointKind::Elliptic
    } else if disc < -KIND_TOL {
        FixedPointKind::Hyperbolic
    } else {
        FixedPointKind::Parabolic
    };
    Ok(FixedPointAnalysis {
        z1,
        z2,
        kind,
        discriminant: disc,
    })
}

/// Iterates the map from `z0` until successive values differ by less than
/// `1e-10`. Elliptic maps never converge and report the last iterate; a
/// converged orbit is reported at the fixed point it reached.
pub fn iterate_limit(cell: &UnitCell, lambda: f64, z0: Complex64, max_iter: usize) -> Result<IterateOutcome> {
    if !(z0.norm() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "start point must lie in the unit disk, got {z0}"
        )));
    }
    let map = mobius_map(cell, lambda)?;
    if map.is_identity() {
        return Ok(IterateOutcome {
            converged: true,
            value: z0,
            kind: None,
            iterations: 0,
        });
    }
    let analysis = if cell.is_homogeneous() {
        None
    } else {
        Some(fixed_points(cell, lambda)?)
    };
    let kind = analysis.map(|a| a.kind);

    let mut z = z0;
    for n in 1..=max_iter {
        let next = map.apply(z);
        let step = (next - z).norm();
        z = next;
        if kind != Some(FixedPointKind::Elliptic) && kind.is_some() && step < STEP_TOL {
            let a = analysis.unwrap();
            let value = [a.z1, a.z2]
                .into_iter()
                .filter(|p| (p - z).norm() < SNAP_TOL)
                .min_by(|p, q| (p - z).norm().partial_cmp(&(q - z).norm()).unwrap())
                .unwrap_or(z);
            return Ok(IterateOutcome {
                converged: true,
                value,
                kind,
                iterations: n,
            });
        }
    }
    Ok(IterateOutcome {
        converged: false,
        value: z,
        kind,
        iterations: max_iter,
    })
}
