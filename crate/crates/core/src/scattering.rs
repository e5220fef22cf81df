//! Reflection and transmission for a wave incident from the left on the
//! `k`-cell slab and on the half-infinite periodic medium.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::UnitCell;
use crate::monodromy::bands::bisect;
use crate::monodromy::{bloch, chebyshev_u_pair, lyapunov_derivatives, monodromy, power_of, Band, MonodromyMatrix};

/// Relative size below which a reflection denominator counts as zero.
pub const POLE_RTOL: f64 = 1e-13;
/// Offset used to evaluate `r_k` on both sides of a degenerate edge.
pub const EDGE_EPS: f64 = 1e-9;
const EDGE_AGREEMENT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficients {
    pub lambda: Complex64,
    pub k: usize,
    pub r: Complex64,
    /// `|t_k|^2`, only for real frequencies.
    pub t_sq: Option<f64>,
}

/// Reflection coefficient of the half-infinite medium. `on_band` marks a
/// real frequency inside a band, where the value is the `lambda + i0`
/// boundary value and `r_k` does not converge to it pointwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineReflection {
    pub value: Complex64,
    pub on_band: bool,
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(())
}

fn reflection_parts(cell: &UnitCell, mk: &MonodromyMatrix) -> (Complex64, Complex64) {
    let b1 = cell.b1();
    let i = Complex64::i();
    let num = mk.delta - mk.alpha - i * (mk.gamma * b1 + mk.beta / b1);
    let den = mk.delta + mk.alpha + i * (mk.gamma * b1 - mk.beta / b1);
    (num, den)
}

/// `r_k` from the entries of `M^k`.
pub fn reflection_k(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Complex64> {
    check_k(k)?;
    let mk = power_of(&monodromy(cell, lambda), k);
    let (num, den) = reflection_parts(cell, &mk);
    if den.norm() < POLE_RTOL * num.norm().max(1.0) {
        return Err(Error::PoleProximity {
            denominator: den.norm(),
        });
    }
    Ok(num / den)
}

/// `r_k` at a degenerate band edge as the mean of the values at
/// `lambda0 ± 1e-9`; the two sides must agree to `1e-6`.
pub fn reflection_k_edge_limit(cell: &UnitCell, lambda0: f64, k: usize) -> Result<Complex64> {
    let lo = reflection_k(cell, Complex64::new(lambda0 - EDGE_EPS, 0.0), k)?;
    let hi = reflection_k(cell, Complex64::new(lambda0 + EDGE_EPS, 0.0), k)?;
    if (lo - hi).norm() > EDGE_AGREEMENT {
        return Err(Error::NoConvergence(format!(
            "one-sided limits of r_k at {lambda0} differ by {:e}",
            (lo - hi).norm()
        )));
    }
    Ok((lo + hi) * 0.5)
}

/// `|t_k|^2 = 4 / (U_{k-1}^2 ((alpha - delta)^2 + (b1 gamma + beta / b1)^2) + 4)`.
pub fn transmission_sq(cell: &UnitCell, lambda: f64, k: usize) -> Result<f64> {
    check_k(k)?;
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be finite, got {lambda}")));
    }
    let m = monodromy(cell, Complex64::new(lambda, 0.0));
    let (u, _) = chebyshev_u_pair(m.trace() * 0.5, k);
    let b1 = cell.b1();
    let a = (m.alpha - m.delta).re;
    let c = (m.gamma * b1 + m.beta / b1).re;
    let u = u.re;
    Ok(4.0 / (u * u * (a * a + c * c) + 4.0))
}

pub fn scattering_coefficients(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<ScatteringCoefficients> {
    let r = reflection_k(cell, lambda, k)?;
    let t_sq = if lambda.im == 0.0 {
        Some(transmission_sq(cell, lambda.re, k)?)
    } else {
        None
    };
    Ok(ScatteringCoefficients { lambda, k, r, t_sq })
}

fn check_band(cell: &UnitCell, band: &Band) -> Result<()> {
    let mismatch = || Error::BandMismatch {
        lo: band.lo,
        hi: band.hi,
    };
    if cell.is_homogeneous() || !(band.lo < band.hi) {
        return Err(mismatch());
    }
    let f = |l: f64| lyapunov_derivatives(cell, l).0;
    if (f(band.lo).abs() - 1.0).abs() > 1e-9 || (f(band.hi).abs() - 1.0).abs() > 1e-9 || f(band.midpoint()).abs() >= 1.0
    {
        return Err(mismatch());
    }
    Ok(())
}

/// Frequencies inside `band` where `|t_k| = 1`: the `k - 1` roots of
/// `U_{k-1}(F)`, i.e. `F = cos(m pi / k)`, plus any single-cell
/// transparency frequency `pi m / (x2 b2)` in the band interior.
pub fn perfect_transmission_frequencies(cell: &UnitCell, band: &Band, k: usize) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::InvalidArgument("perfect transmission peaks need k >= 2".into()));
    }
    check_band(cell, band)?;
    let f = |l: f64| lyapunov_derivatives(cell, l).0;
    let mut out = Vec::with_capacity(k);
    for m in 1..k {
        let target = (std::f64::consts::PI * m as f64 / k as f64).cos();
        let g = |l: f64| f(l) - target;
        let ga = g(band.lo);
        if ga * g(band.hi) < 0.0 {
            out.push(bisect(&g, band.lo, band.hi, ga));
        }
    }
    for l0 in cell.transparency_frequencies(band.hi) {
        if band.contains_strictly(l0, 1e-9) && out.iter().all(|&x| (x - l0).abs() > 1e-9) {
            out.push(l0);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

/// `r = ((alpha - delta) + i (beta / b1 + b1 gamma)) / (2i sin(theta) + i (beta / b1 - b1 gamma))`
/// with `sin(theta)` taken from the selected Floquet multiplier.
pub fn reflection_half_infinite(cell: &UnitCell, lambda: Complex64) -> Result<HalfLineReflection> {
    if lambda.im < 0.0 {
        return Err(Error::DomainError(format!(
            "half-line reflection is defined for Im lambda >= 0, got {lambda}"
        )));
    }
    let m = monodromy(cell, lambda);
    let b1 = cell.b1();
    let i = Complex64::i();
    let (sin_theta, on_band) = match bloch(cell, lambda) {
        Ok(b) => {
            let on_band = lambda.im == 0.0 && lyapunov_derivatives(cell, lambda.re).0.abs() < 1.0;
            (b.sin_theta(), on_band)
        }
        Err(Error::EdgeDegeneracy { .. }) => (Complex64::new(0.0, 0.0), false),
        Err(e) => return Err(e),
    };
    let num = (m.alpha - m.delta) + i * (m.beta / b1 + m.gamma * b1);
    let den = i * sin_theta * 2.0 + i * (m.beta / b1 - m.gamma * b1);
    if den.norm() < 1e-12 {
        if num.norm() < 1e-12 {
            return Err(Error::EdgeDegeneracy {
                multiplier: m.trace().re * 0.5,
                weyl_defined: false,
            });
        }
        return Err(Error::PoleProximity {
            denominator: den.norm(),
        });
    }
    Ok(HalfLineReflection {
        value: num / den,
        on_band,
    })
}
