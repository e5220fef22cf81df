//! Unit-cell monodromy matrix, Lyapunov function and `k`-cell transfer
//! matrix.
//!
//! The monodromy matrix maps the Cauchy data `(psi, a psi' / lambda)` at
//! `x = 0` to the data at `x = 1`. Its entries are entire in `lambda` and it
//! has unit determinant. The `k`-th power is computed from the Chebyshev
//! identity `M^k = U_{k-1}(F) M - U_{k-2}(F) I`, where `F` is the half trace,
//! so no Bloch phase is ever materialized.

pub(crate) mod bands;
mod bloch;

pub use bands::{band_intervals, find_bands, Band, EdgeType};
pub use bloch::{bloch, classify_real, BlochData, Regime};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::UnitCell;

/// A complex 2x2 matrix `[[alpha, beta], [gamma, delta]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyMatrix {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

impl MonodromyMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            alpha: one,
            beta: zero,
            gamma: zero,
            delta: one,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn trace(&self) -> Complex64 {
        self.alpha + self.delta
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            alpha: self.alpha * rhs.alpha + self.beta * rhs.gamma,
            beta: self.alpha * rhs.beta + self.beta * rhs.delta,
            gamma: self.gamma * rhs.alpha + self.delta * rhs.gamma,
            delta: self.gamma * rhs.beta + self.delta * rhs.delta,
        }
    }

    pub fn max_abs(&self) -> f64 {
        [self.alpha, self.beta, self.gamma, self.delta]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.alpha - other.alpha,
            self.beta - other.beta,
            self.gamma - other.gamma,
            self.delta - other.delta,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

pub fn monodromy(cell: &UnitCell, lambda: Complex64) -> MonodromyMatrix {
    let (b1, b2) = (cell.b1(), cell.b2());
    let sum = cell.tau_b();
    // b1 (1 - x2) - x2 b2
    let diff = -cell.tau_g();
    let (cs, ss) = ((lambda * sum).cos(), (lambda * sum).sin());
    let (cd, sd) = ((lambda * diff).cos(), (lambda * diff).sin());
    let (p, m) = (b2 + b1, b2 - b1);
    MonodromyMatrix {
        alpha: cs * (p / (2.0 * b2)) + cd * (m / (2.0 * b2)),
        beta: ss * (p / 2.0) - sd * (m / 2.0),
        gamma: -ss * (p / (2.0 * b1 * b2)) - sd * (m / (2.0 * b1 * b2)),
        delta: cs * (p / (2.0 * b1)) - cd * (m / (2.0 * b1)),
    }
}

/// Lyapunov function `F = ((rho+1)/2) cos(lambda tau_b) - ((rho-1)/2) cos(lambda tau_g)`.
pub fn lyapunov(cell: &UnitCell, lambda: Complex64) -> Complex64 {
    let rho = cell.rho();
    (lambda * cell.tau_b()).cos() * (0.5 * (rho + 1.0)) - (lambda * cell.tau_g()).cos() * (0.5 * (rho - 1.0))
}

/// `F`, `F'` and `F''` at a real frequency.
pub fn lyapunov_derivatives(cell: &UnitCell, lambda: f64) -> (f64, f64, f64) {
    let rho = cell.rho();
    let (tb, tg) = (cell.tau_b(), cell.tau_g());
    let (a, g) = (0.5 * (rho + 1.0), 0.5 * (rho - 1.0));
    let f = a * (lambda * tb).cos() - g * (lambda * tg).cos();
    let f1 = -a * tb * (lambda * tb).sin() + g * tg * (lambda * tg).sin();
    let f2 = -a * tb * tb * (lambda * tb).cos() + g * tg * tg * (lambda * tg).cos();
    (f, f1, f2)
}

pub fn lyapunov_real(cell: &UnitCell, lambda: f64) -> f64 {
    lyapunov_derivatives(cell, lambda).0
}

/// Returns `(U_{n-1}(f), U_{n-2}(f))` for Chebyshev polynomials of the
/// second kind, with `U_{-1} = 0` and `U_{-2} = -1`.
pub fn chebyshev_u_pair(f: Complex64, n: usize) -> (Complex64, Complex64) {
    let two_f = f * 2.0;
    let mut prev = Complex64::new(-1.0, 0.0);
    let mut cur = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        let next = two_f * cur - prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `U_n(f)`; `U_n(cos t) = sin((n+1) t) / sin t`.
pub fn chebyshev_u(f: Complex64, n: usize) -> Complex64 {
    chebyshev_u_pair(f, n + 1).0
}

/// Transfer matrix over `k` cells, `M^k = U_{k-1} M - U_{k-2} I`.
pub fn transfer_power(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<MonodromyMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let m = monodromy(cell, lambda);
    Ok(power_of(&m, k))
}

pub(crate) fn power_of(m: &MonodromyMatrix, k: usize) -> MonodromyMatrix {
    let f = m.trace() * 0.5;
    let (u1, u2) = chebyshev_u_pair(f, k);
    MonodromyMatrix {
        alpha: u1 * m.alpha - u2,
        beta: u1 * m.beta,
        gamma: u1 * m.gamma,
        delta: u1 * m.delta - u2,
    }
}
