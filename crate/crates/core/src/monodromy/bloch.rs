use num_complex::Complex64;

use super::{lyapunov, lyapunov_derivatives, monodromy};
use crate::error::{Error, Result};
use crate::medium::UnitCell;

/// Roots of `mu^2 - 2 F mu + 1` are treated as coincident below this.
const EDGE_TOL: f64 = 1e-9;
const DEGENERATE_SLOPE_TOL: f64 = 1e-8;
const WEYL_BETA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Band,
    Gap,
    NonDegenerateEdge,
    DegenerateEdge,
}

/// Floquet data at one frequency.
///
/// `mu_plus` is the multiplier of the solution decaying to the right: it
/// satisfies `|mu_plus| < 1` in the upper half plane, is the `lambda + i0`
/// boundary value on the real axis, and is continued by reflection
/// (`mu_plus(lambda) = 1 / conj(mu_plus(conj lambda))`) into the lower half
/// plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochData {
    pub lyapunov: Complex64,
    pub mu_plus: Complex64,
    pub mu_minus: Complex64,
    pub m_plus: Option<Complex64>,
    pub m_minus: Option<Complex64>,
    /// Only set for real frequencies.
    pub regime: Option<Regime>,
}

impl BlochData {
    /// `sin(theta) = (mu_plus - mu_minus) / (2i)`.
    pub fn sin_theta(&self) -> Complex64 {
        (self.mu_plus - self.mu_minus) / Complex64::new(0.0, 2.0)
    }
}

/// Band/gap/edge classification of a real frequency.
pub fn classify_real(cell: &UnitCell, lambda: f64) -> Regime {
    let (f, f1, _) = lyapunov_derivatives(cell, lambda);
    if (f * f - 1.0).abs() <= EDGE_TOL {
        if f1.abs() < DEGENERATE_SLOPE_TOL {
            Regime::DegenerateEdge
        } else {
            Regime::NonDegenerateEdge
        }
    } else if f.abs() < 1.0 {
        Regime::Band
    } else {
        Regime::Gap
    }
}

pub fn bloch(cell: &UnitCell, lambda: Complex64) -> Result<BlochData> {
    let m = monodromy(cell, lambda);
    let f = lyapunov(cell, lambda);
    let disc = f * f - 1.0;
    if disc.norm() <= EDGE_TOL {
        let weyl_defined = m.beta.norm() > EDGE_TOL || m.gamma.norm() > EDGE_TOL;
        return Err(Error::EdgeDegeneracy {
            multiplier: f.re.signum(),
            weyl_defined,
        });
    }

    let mu_plus = select_mu_plus(cell, lambda, f);
    let mu_minus = mu_plus.inv();
    let weyl = |mu: Complex64| -> Option<Complex64> {
        if m.beta.norm() > WEYL_BETA_TOL {
            Some((mu - m.alpha) / m.beta)
        } else {
            let den = mu - m.delta;
            (den.norm() > WEYL_BETA_TOL).then(|| m.gamma / den)
        }
    };
    let regime = (lambda.im == 0.0).then(|| classify_real(cell, lambda.re));

    Ok(BlochData {
        lyapunov: f,
        mu_plus,
        mu_minus,
        m_plus: weyl(mu_plus),
        m_minus: weyl(mu_minus),
        regime,
    })
}

fn contractive_root(f: Complex64) -> Complex64 {
    let s = (f * f - 1.0).sqrt();
    let big = if (f + s).norm() >= (f - s).norm() { f + s } else { f - s };
    big.inv()
}

fn select_mu_plus(cell: &UnitCell, lambda: Complex64, f: Complex64) -> Complex64 {
    if lambda.im > 0.0 {
        contractive_root(f)
    } else if lambda.im < 0.0 {
        let upper = lyapunov(cell, lambda.conj());
        contractive_root(upper).conj().inv()
    } else if f.re.abs() > 1.0 {
        contractive_root(Complex64::new(f.re, 0.0))
    } else {
        // On a band the lambda + i0 limit has Im theta -> 0+, which forces
        // sin(theta) to carry the sign opposite to F'.
        let (fr, f1, _) = lyapunov_derivatives(cell, lambda.re);
        let sign = if f1 > 0.0 { 1.0 } else { -1.0 };
        Complex64::new(fr, -sign * (1.0 - fr * fr).max(0.0).sqrt())
    }
}
