use num_complex::Complex64;
use rayon::prelude::*;

use super::recursion::{interface_product, resonance_function};
use crate::error::{Error, Result};
use crate::medium::UnitCell;
use crate::monodromy::{band_intervals, Band};

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const DEDUP_RADIUS: f64 = 1e-6;
const MAX_ITERS: usize = 50;
const IM_LADDER: [f64; 4] = [-0.02, -0.1, -0.3, -0.7];
const UPPER_REJECT: f64 = -1e-12;
const BAND_TOL: f64 = 1e-9;
const WINDOW_TOL: f64 = 1e-9;
const GAP_SEEDS: usize = 4;
const POLISH_STEPS: usize = 3;

/// A zero of `d Q_{2k}(-i lambda) - 1` in the lower half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub lambda: Complex64,
    /// `|d Q_{2k}(-i lambda) - 1|`.
    pub residual: f64,
    /// Band whose interior contains `Re lambda`; `None` for roots sitting on
    /// an edge or in a gap.
    pub band_index: Option<usize>,
    pub newton_iters: usize,
    pub seed: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
}

impl SearchWindow {
    pub fn new(re_min: f64, re_max: f64, im_min: f64) -> Result<Self> {
        if !(re_min.is_finite() && re_max.is_finite() && im_min.is_finite()) {
            return Err(Error::InvalidRange("window bounds must be finite".into()));
        }
        if re_min < 0.0 {
            return Err(Error::InvalidRange(format!("re_min must be >= 0, got {re_min}")));
        }
        if re_max <= re_min {
            return Err(Error::InvalidRange(format!(
                "re_max {re_max} must exceed re_min {re_min}"
            )));
        }
        if im_min >= 0.0 {
            return Err(Error::InvalidRange(format!("im_min must be negative, got {im_min}")));
        }
        Ok(Self { re_min, re_max, im_min })
    }

    /// `[re_min, re_max] x [-1 / (b2 x2), 0)`.
    pub fn with_default_depth(cell: &UnitCell, re_min: f64, re_max: f64) -> Result<Self> {
        Self::new(re_min, re_max, default_im_min(cell))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min - WINDOW_TOL
            && z.re <= self.re_max + WINDOW_TOL
            && z.im >= self.im_min
            && z.im < UPPER_REJECT
    }
}

/// Default lower edge of the search window, `-2 / (2 b2 x2)`.
pub fn default_im_min(cell: &UnitCell) -> f64 {
    -1.0 / cell.inner_length()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchDiagnostics {
    pub seeds: usize,
    pub converged: usize,
    pub no_convergence: usize,
    pub recursion_poles: usize,
    pub outside_window: usize,
    pub upper_half_plane: usize,
    pub duplicates: usize,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceSearch {
    pub resonances: Vec<Resonance>,
    pub diagnostics: SearchDiagnostics,
}

enum SeedOutcome {
    Root(Complex64, f64, usize),
    NoConvergence,
    Pole,
}

// Newton iterates on the entire interface product rather than on
// d Q_{2k} - 1 itself: the latter has poles next to its zeros, which makes
// the basins of the roots near band edges very small. Acceptance is still
// judged on |d Q_{2k} - 1|.
fn target(cell: &UnitCell, z: Complex64, k: usize) -> Result<Complex64> {
    interface_product(cell, z, k)
}

fn newton(cell: &UnitCell, k: usize, seed: Complex64, im_bail: f64) -> SeedOutcome {
    let mut z = seed;
    let mut retried = false;
    let mut iters = 0;
    while iters < MAX_ITERS {
        iters += 1;
        let step = 1e-7 * (1.0 + z.norm());
        let eval = target(cell, z, k).and_then(|f| {
            let fp = target(cell, z + step, k)?;
            let fm = target(cell, z - step, k)?;
            Ok((f, (fp - fm) / (2.0 * step)))
        });
        let (f, df) = match eval {
            Ok(v) => v,
            Err(Error::RecursionPole { .. }) if !retried => {
                retried = true;
                z += Complex64::new(1e-5, 1e-5);
                continue;
            }
            Err(_) => return SeedOutcome::Pole,
        };
        if !(f.norm().is_finite() && df.norm().is_finite()) || df.norm() == 0.0 {
            return SeedOutcome::NoConvergence;
        }
        let dz = f / df;
        z -= dz;
        if !(z.re.is_finite() && z.im.is_finite()) || z.im.abs() > im_bail {
            return SeedOutcome::NoConvergence;
        }
        if dz.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    match polish(cell, k, z) {
        Ok((z, r)) if r <= RESIDUAL_TOL => SeedOutcome::Root(z, r, iters),
        Ok(_) => SeedOutcome::NoConvergence,
        Err(_) => SeedOutcome::Pole,
    }
}

// A few Newton steps on d Q_{2k} - 1 itself, which is well behaved this
// close to a root; keeps the iterate with the smallest residual.
fn polish(cell: &UnitCell, k: usize, z0: Complex64) -> Result<(Complex64, f64)> {
    let mut best = (z0, resonance_function(cell, z0, k)?.norm());
    let mut z = z0;
    for _ in 0..POLISH_STEPS {
        let step = 1e-6 * (1.0 + z.norm());
        let step_of = |z: Complex64| -> Result<Complex64> {
            let f = resonance_function(cell, z, k)?;
            let df = (resonance_function(cell, z + step, k)? - resonance_function(cell, z - step, k)?) / (2.0 * step);
            Ok(f / df)
        };
        let Ok(dz) = step_of(z) else { break };
        if !(dz.re.is_finite() && dz.im.is_finite()) || dz.norm() > 1e-6 * (1.0 + z.norm()) {
            break;
        }
        z -= dz;
        match resonance_function(cell, z, k) {
            Ok(f) if f.norm() < best.1 => best = (z, f.norm()),
            Ok(_) => {}
            Err(_) => break,
        }
    }
    Ok(best)
}

/// Index of the band whose interior contains `re`.
pub fn assign_band(bands: &[Band], re: f64) -> Option<usize> {
    bands
        .iter()
        .find(|b| b.contains_strictly(re, BAND_TOL))
        .map(|b| b.index)
}

fn seed_grid(cell: &UnitCell, k: usize, window: &SearchWindow, bands: &[Band]) -> Vec<Complex64> {
    let scale = 1.0 / (2.0 * cell.inner_length());
    let ims: Vec<f64> = IM_LADDER
        .iter()
        .map(|s| s * scale)
        .filter(|&im| im >= window.im_min)
        .collect();
    let ims = if ims.is_empty() { vec![0.5 * window.im_min] } else { ims };

    let mut res = Vec::new();
    for b in bands {
        let spacing = b.width() / (4.0 * k as f64);
        let margin = 2.0 * spacing;
        let lo = (b.lo - margin).max(window.re_min - margin);
        let hi = (b.hi + margin).min(window.re_max + margin);
        if lo > hi {
            continue;
        }
        let n = ((hi - lo) / spacing).ceil() as usize;
        res.extend((0..=n).map(|j| lo + j as f64 * spacing));
    }
    // A few seeds in each gap; they should find nothing.
    for w in bands.windows(2) {
        let (lo, hi) = (w[0].hi, w[1].lo);
        if hi <= lo || hi < window.re_min || lo > window.re_max {
            continue;
        }
        res.extend((1..=GAP_SEEDS).map(|j| lo + (hi - lo) * j as f64 / (GAP_SEEDS + 1) as f64));
    }
    res.iter()
        .flat_map(|&re| ims.iter().map(move |&im| Complex64::new(re, im)))
        .collect()
}

/// Resonances of the `k`-cell slab in `window`: zeros of
/// `d Q_{2k}(-i lambda) - 1` found by Newton's method from seeds placed
/// over the bands.
pub fn find_resonances(cell: &UnitCell, k: usize, window: SearchWindow) -> Result<ResonanceSearch> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let mut diagnostics = SearchDiagnostics::default();
    if cell.is_homogeneous() {
        diagnostics.note = Some("homogeneous cell: no interfaces, no resonances".into());
        return Ok(ResonanceSearch {
            resonances: Vec::new(),
            diagnostics,
        });
    }

    let all = band_intervals(cell, window.re_max + 1.0)?;
    let reach = |b: &Band| {
        let margin = b.width() / (2.0 * k as f64);
        b.hi + margin >= window.re_min && b.lo - margin <= window.re_max
    };
    if !all.iter().any(reach) {
        diagnostics.note = Some("window intersects no band".into());
        return Ok(ResonanceSearch {
            resonances: Vec::new(),
            diagnostics,
        });
    }
    let seeds = seed_grid(cell, k, &window, &all);
    diagnostics.seeds = seeds.len();

    let im_bail = 20.0 * window.im_min.abs().max(1.0);
    let outcomes: Vec<(Complex64, SeedOutcome)> = seeds.par_iter().map(|&s| (s, newton(cell, k, s, im_bail))).collect();

    let mut found: Vec<Resonance> = Vec::new();
    for (seed, outcome) in outcomes {
        match outcome {
            SeedOutcome::NoConvergence => diagnostics.no_convergence += 1,
            SeedOutcome::Pole => diagnostics.recursion_poles += 1,
            SeedOutcome::Root(z, residual, iters) => {
                diagnostics.converged += 1;
                if z.im >= UPPER_REJECT {
                    diagnostics.upper_half_plane += 1;
                    continue;
                }
                if !window.contains(z) {
                    diagnostics.outside_window += 1;
                    continue;
                }
                if found.iter().any(|r| (r.lambda - z).norm() < DEDUP_RADIUS) {
                    diagnostics.duplicates += 1;
                    continue;
                }
                found.push(Resonance {
                    lambda: z,
                    residual,
                    band_index: assign_band(&all, z.re),
                    newton_iters: iters,
                    seed,
                });
            }
        }
    }
    found.sort_by(|a, b| {
        a.lambda
            .re
            .partial_cmp(&b.lambda.re)
            .unwrap()
            .then(a.lambda.im.partial_cmp(&b.lambda.im).unwrap())
    });
    Ok(ResonanceSearch {
        resonances: found,
        diagnostics,
    })
}

/// Zeros of `det D_3` for a single `b2` layer of optical length `b2 * len`
/// between media `b1` (left) and `b3` (right):
/// `e^{2i lambda b2 len} = R`, `R = (b2 + b3)(b1 + b2) / ((b2 - b3)(b2 - b1))`.
/// Returns the roots with real part in `[re_min, re_max]`.
pub fn resonances_three_layer(b1: f64, b2: f64, b3: f64, len: f64, re_min: f64, re_max: f64) -> Vec<Complex64> {
    if b1 == b2 || b3 == b2 {
        return Vec::new();
    }
    let r = (b2 + b3) * (b1 + b2) / ((b2 - b3) * (b2 - b1));
    let two_l = 2.0 * b2 * len;
    let im = -r.abs().ln() / two_l;
    let step = std::f64::consts::PI / two_l;
    // m even when R > 0, odd otherwise.
    let parity = if r > 0.0 { 0 } else { 1 };
    let m_lo = (re_min / step - 1.0).floor() as i64;
    let m_hi = (re_max / step + 1.0).ceil() as i64;
    (m_lo..=m_hi)
        .filter(|m| m.rem_euclid(2) == parity)
        .map(|m| Complex64::new(m as f64 * step, im))
        .filter(|z| z.re >= re_min - WINDOW_TOL && z.re <= re_max + WINDOW_TOL)
        .collect()
}

/// Closed-form resonances of the one-cell slab with real part in
/// `[re_min, re_max]`. Empty for a homogeneous cell.
pub fn resonances_k1(cell: &UnitCell, re_min: f64, re_max: f64) -> Result<Vec<Resonance>> {
    if !(re_min.is_finite() && re_max.is_finite() && re_max >= re_min) {
        return Err(Error::InvalidRange(format!("bad real window [{re_min}, {re_max}]")));
    }
    if cell.is_homogeneous() {
        return Ok(Vec::new());
    }
    let bands = band_intervals(cell, re_max.max(0.0) + 1.0)?;
    resonances_three_layer(cell.b1(), cell.b2(), cell.b1(), cell.x2(), re_min, re_max)
        .into_iter()
        .map(|z| {
            let residual = resonance_function(cell, z, 1)?.norm();
            Ok(Resonance {
                lambda: z,
                residual,
                band_index: assign_band(&bands, z.re),
                newton_iters: 0,
                seed: z,
            })
        })
        .collect()
}
