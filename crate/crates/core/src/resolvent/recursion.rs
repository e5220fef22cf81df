use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::UnitCell;
use crate::scattering::POLE_RTOL;

const RECURSION_POLE_TOL: f64 = 1e-14;
const OVERFLOW_LIMIT: f64 = 1e300;

/// `Q_m(-i lambda)` together with its index `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QState {
    pub q: Complex64,
    pub m: usize,
}

fn phases(cell: &UnitCell, lambda: Complex64) -> (Complex64, Complex64) {
    let i2l = Complex64::new(0.0, 2.0) * lambda;
    ((i2l * cell.outer_length()).exp(), (i2l * cell.inner_length()).exp())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(())
}

/// `Q_2, ..., Q_{2k}` for the alternating chain of `k` cells.
///
/// Odd steps cross a `b2 -> b1` interface (`e1 (-d + q) / (1 - d q)`), even
/// steps a `b1 -> b2` interface (`e2 (d + q) / (1 + d q)`).
pub fn q_sequence(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Vec<QState>> {
    check_k(k)?;
    let d = cell.d();
    let (e1, e2) = phases(cell, lambda);
    let mut out = Vec::with_capacity(2 * k - 1);
    let mut q = e2 * d;
    out.push(QState { q, m: 2 });
    for m in 3..=2 * k {
        let s = if m % 2 == 1 { -d } else { d };
        let den = q * s + 1.0;
        if den.norm() < RECURSION_POLE_TOL {
            return Err(Error::RecursionPole { m });
        }
        let e = if m % 2 == 1 { e1 } else { e2 };
        q = e * (q + s) / den;
        out.push(QState { q, m });
    }
    Ok(out)
}

/// `Q_{2k}(-i lambda)`.
pub fn q_recursion(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Complex64> {
    check_k(k)?;
    let d = cell.d();
    let (e1, e2) = phases(cell, lambda);
    let mut q = e2 * d;
    for j in 2..=k {
        let den = Complex64::new(1.0, 0.0) - q * d;
        if den.norm() < RECURSION_POLE_TOL {
            return Err(Error::RecursionPole { m: 2 * j - 1 });
        }
        q = e1 * (q - d) / den;
        let den = q * d + 1.0;
        if den.norm() < RECURSION_POLE_TOL {
            return Err(Error::RecursionPole { m: 2 * j });
        }
        q = e2 * (q + d) / den;
    }
    Ok(q)
}

/// `h(lambda) = d Q_{2k}(-i lambda) - 1`; resonances are its zeros.
pub fn resonance_function(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Complex64> {
    Ok(q_recursion(cell, lambda, k)? * cell.d() - 1.0)
}

/// `P(lambda) = prod_{m=2}^{2k} (1 - (-1)^m d Q_m(-i lambda))`.
///
/// `det D_{2k+1} = -(b1 + b2)^{2k} e^{-i lambda (b2 - b1) k x2} P`, so `P` is
/// entire with the resonances as its zeros: the pole of each intermediate
/// `Q_m` cancels against the zero of the factor before it. It stays of
/// moderate size where `det D` would overflow.
pub fn interface_product(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Complex64> {
    let d = cell.d();
    Ok(q_sequence(cell, lambda, k)?
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, s| {
            let sign = if s.m % 2 == 0 { d } else { -d };
            acc * (Complex64::new(1.0, 0.0) - s.q * sign)
        }))
}

/// `r_k = -(-d + Q_{2k}) / (1 - d Q_{2k})`.
pub fn reflection_via_q(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Complex64> {
    let d = cell.d();
    let q = q_recursion(cell, lambda, k)?;
    let num = q - d;
    let den = Complex64::new(1.0, 0.0) - q * d;
    if den.norm() < POLE_RTOL * num.norm().max(1.0) {
        return Err(Error::PoleProximity {
            denominator: den.norm(),
        });
    }
    Ok(-num / den)
}

/// A piecewise-constant profile: `b[j]` holds on `(x[j], x[j+1])`, with
/// `b[0]` to the left of `x[0]` and the last value to the right of the
/// last point. Indices are 0-based versions of `b_1..b_n`, `x_1..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerChain {
    pub b: Vec<f64>,
    pub x: Vec<f64>,
}

impl LayerChain {
    pub fn new(b: Vec<f64>, x: Vec<f64>) -> Result<Self> {
        if b.len() != x.len() || b.len() < 2 {
            return Err(Error::InvalidArgument(
                "layer chain needs matching b and x of length >= 2".into(),
            ));
        }
        if b.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
            return Err(Error::InvalidArgument("layer speeds must be positive".into()));
        }
        if x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("interface positions must increase".into()));
        }
        Ok(Self { b, x })
    }

    /// The chain `b1, b2, b1, ..., b1` with `n = 2k + 1` entries and
    /// interfaces `0, x2, 1, 1 + x2, ..., k`.
    pub fn locally_periodic(cell: &UnitCell, k: usize) -> Result<Self> {
        check_k(k)?;
        let mut b = Vec::with_capacity(2 * k + 1);
        let mut x = Vec::with_capacity(2 * k + 1);
        for j in 0..k {
            b.push(cell.b1());
            x.push(j as f64);
            b.push(cell.b2());
            x.push(j as f64 + cell.x2());
        }
        b.push(cell.b1());
        x.push(k as f64);
        Ok(Self { b, x })
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    fn start(&self, lambda: Complex64) -> (Complex64, Complex64) {
        let i = Complex64::i();
        let (b1, b2, x1) = (self.b[0], self.b[1], self.x[0]);
        let d = (i * lambda * (x1 * (b2 - b1))).exp() * (b1 + b2);
        let dt = (-i * lambda * (x1 * (b1 + b2))).exp() * (b2 - b1);
        (d, dt)
    }

    fn step(&self, n: usize, lambda: Complex64, d: Complex64, dt: Complex64) -> (Complex64, Complex64) {
        // n is the 0-based index of b_n; the interface is x_{n-1} = x[n - 1].
        let i = Complex64::i();
        let (bp, bn, xp) = (self.b[n - 1], self.b[n], self.x[n - 1]);
        let ep = (i * lambda * (bp * xp)).exp();
        let en = (i * lambda * (bn * xp)).exp();
        let new_d = en * (ep * dt * (bp - bn) - d / ep * (bp + bn));
        let new_dt = (d / ep * (bp - bn) - ep * dt * (bp + bn)) / en;
        (new_d, new_dt)
    }

    /// `(det D_n, det D~_n)` at `-i lambda` by the direct recursion.
    pub fn det_d_recursion(&self, lambda: Complex64) -> Result<(Complex64, Complex64)> {
        let (mut d, mut dt) = self.start(lambda);
        for n in 2..self.len() {
            (d, dt) = self.step(n, lambda, d, dt);
            let size = d.norm().max(dt.norm());
            if !(size <= OVERFLOW_LIMIT) {
                return Err(Error::Overflow { n: n + 1 });
            }
        }
        Ok((d, dt))
    }

    /// `(det D_n, det D~_n)` divided by a common positive factor; the
    /// argument of `det D_n` is preserved and nothing overflows.
    pub fn det_d_normalized(&self, lambda: Complex64) -> (Complex64, Complex64) {
        let (mut d, mut dt) = self.start(lambda);
        for n in 2..self.len() {
            (d, dt) = self.step(n, lambda, d, dt);
            let size = d.norm().max(dt.norm());
            if size > 0.0 && size.is_finite() {
                d /= size;
                dt /= size;
            }
        }
        (d, dt)
    }
}

/// `det D_{2k+1}(-i lambda)` for the `k`-cell slab.
pub fn det_d_recursion(cell: &UnitCell, lambda: Complex64, k: usize) -> Result<Complex64> {
    Ok(LayerChain::locally_periodic(cell, k)?.det_d_recursion(lambda)?.0)
}
