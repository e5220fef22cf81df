use std::f64::consts::PI;

use super::lyapunov_derivatives;
use crate::error::{Error, Result};
use crate::medium::UnitCell;

const TANGENT_TOL: f64 = 1e-11;
const DEGENERATE_SLOPE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum EdgeType {
    /// Two bands touch: `F = ±1`, `F' = 0`.
    Degenerate,
    /// Band meets a gap: `F = ±1`, `F' != 0`.
    NonDegenerate,
    /// The band continues past the scanned range.
    Open,
}

impl EdgeType {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeType::Degenerate => "degenerate",
            EdgeType::NonDegenerate => "non-degenerate",
            EdgeType::Open => "open",
        }
    }
}

/// A maximal real interval on which `|F| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
    pub lo_type: EdgeType,
    pub hi_type: EdgeType,
    /// 1-based, in increasing frequency.
    pub index: usize,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains_strictly(&self, lambda: f64, tol: f64) -> bool {
        lambda > self.lo + tol && lambda < self.hi - tol
    }
}

/// Bands of the periodic operator in `(0, lambda_max]` whose two edges both
/// lie in range. A homogeneous cell yields the single band `(0, lambda_max]`.
pub fn find_bands(cell: &UnitCell, lambda_max: f64) -> Result<Vec<Band>> {
    let mut bands = band_intervals(cell, lambda_max)?;
    if !cell.is_homogeneous() {
        bands.retain(|b| b.hi_type != EdgeType::Open);
    }
    Ok(bands)
}

/// Like [`find_bands`], but also reports a trailing band cut off at
/// `lambda_max` (its upper edge is [`EdgeType::Open`]).
pub fn band_intervals(cell: &UnitCell, lambda_max: f64) -> Result<Vec<Band>> {
    if !(lambda_max.is_finite() && lambda_max > 0.0) {
        return Err(Error::InvalidRange(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    if cell.is_homogeneous() {
        return Ok(vec![Band {
            lo: 0.0,
            hi: lambda_max,
            lo_type: EdgeType::Degenerate,
            hi_type: EdgeType::Degenerate,
            index: 1,
        }]);
    }

    let f = |l: f64| lyapunov_derivatives(cell, l).0;
    let df = |l: f64| lyapunov_derivatives(cell, l).1;

    // Critical points of F split (0, lambda_max] into monotone pieces.
    let step = (0.01f64).min(PI / cell.tau_b() / 50.0);
    let n = (lambda_max / step).ceil() as usize;
    let mut critical = vec![0.0];
    let mut prev = (step.min(lambda_max), df(step.min(lambda_max)));
    for j in 2..=n.max(1) {
        let l = (j as f64 * step).min(lambda_max);
        let d = df(l);
        if d == 0.0 {
            critical.push(l);
        } else if prev.1 * d < 0.0 {
            critical.push(bisect(&df, prev.0, l, prev.1));
        }
        prev = (l, d);
    }
    critical.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    let is_tangent = |l: f64| (f(l).abs() - 1.0).abs() <= TANGENT_TOL;
    let mut boundaries: Vec<f64> = critical.iter().copied().filter(|&c| is_tangent(c)).collect();

    let mut knots = critical.clone();
    if *knots.last().unwrap() < lambda_max {
        knots.push(lambda_max);
    }
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        for s in [1.0, -1.0] {
            let g = |l: f64| {
                let v = f(l) - s;
                if v.abs() <= TANGENT_TOL && is_tangent(l) {
                    0.0
                } else {
                    v
                }
            };
            let (ga, gb) = (g(a), g(b));
            if ga * gb < 0.0 {
                boundaries.push(bisect(&|l| f(l) - s, a, b, ga));
            } else if gb == 0.0 && b == lambda_max {
                boundaries.push(b);
            }
        }
    }
    boundaries.sort_by(|a, b| a.partial_cmp(b).unwrap());
    boundaries.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let edge_type = |l: f64| {
        if df(l).abs() < DEGENERATE_SLOPE_TOL {
            EdgeType::Degenerate
        } else {
            EdgeType::NonDegenerate
        }
    };

    let mut bands = Vec::new();
    for w in boundaries.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if f(0.5 * (lo + hi)).abs() < 1.0 {
            bands.push(Band {
                lo,
                hi,
                lo_type: edge_type(lo),
                hi_type: edge_type(hi),
                index: bands.len() + 1,
            });
        }
    }
    let last = *boundaries.last().unwrap();
    if last < lambda_max && f(0.5 * (last + lambda_max)).abs() < 1.0 {
        bands.push(Band {
            lo: last,
            hi: lambda_max,
            lo_type: edge_type(last),
            hi_type: EdgeType::Open,
            index: bands.len() + 1,
        });
    }
    Ok(bands)
}

/// Bisection for a sign change of `g` on `[a, b]`, `ga = g(a)`.
pub(crate) fn bisect(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, mut ga: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= 1e-14 * (1.0 + a.abs()) {
            return m;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if ga * gm < 0.0 {
            b = m;
        } else {
            a = m;
            ga = gm;
        }
    }
    0.5 * (a + b)
}
