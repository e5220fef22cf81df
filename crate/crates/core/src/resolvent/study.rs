use super::newton::{default_im_min, find_resonances, resonances_k1, Resonance, SearchWindow};
use crate::error::{Error, Result};
use crate::medium::UnitCell;
use crate::monodromy::Band;

/// Resonances assigned to one band for one `k`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub count: usize,
    /// Largest (closest to zero) imaginary part, if any resonance was found.
    pub max_im: Option<f64>,
    pub min_im: Option<f64>,
}

/// Resonances of the `k`-cell slab whose real part lies inside `band`.
/// `k = 1` uses the closed form.
pub fn band_resonances(cell: &UnitCell, band: &Band, k: usize, im_min: f64) -> Result<Vec<Resonance>> {
    let all = if k == 1 {
        resonances_k1(cell, band.lo, band.hi)?
            .into_iter()
            .filter(|r| r.lambda.im >= im_min)
            .collect()
    } else {
        let window = SearchWindow::new(band.lo.max(0.0), band.hi, im_min)?;
        find_resonances(cell, k, window)?.resonances
    };
    Ok(all.into_iter().filter(|r| r.band_index == Some(band.index)).collect())
}

/// Per-`k` summary of the resonances under `band`. `im_min` defaults to
/// `-1 / (b2 x2)`.
pub fn convergence_study(
    cell: &UnitCell,
    band: &Band,
    k_list: &[usize],
    im_min: Option<f64>,
) -> Result<Vec<ConvergenceRow>> {
    if k_list.is_empty() {
        return Err(Error::InvalidArgument("k_list is empty".into()));
    }
    if k_list.contains(&0) || k_list.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument(format!(
            "k_list must be non-decreasing positive integers, got {k_list:?}"
        )));
    }
    let im_min = im_min.unwrap_or_else(|| default_im_min(cell));
    k_list
        .iter()
        .map(|&k| {
            let res = band_resonances(cell, band, k, im_min)?;
            let ims = res.iter().map(|r| r.lambda.im);
            Ok(ConvergenceRow {
                k,
                count: res.len(),
                max_im: ims.clone().reduce(f64::max),
                min_im: ims.reduce(f64::min),
            })
        })
        .collect()
}
