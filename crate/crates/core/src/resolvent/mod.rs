//! Resonances of the `k`-cell slab.
//!
//! The resonance condition is `d Q_{2k}(-i lambda) = 1`, where `Q_m` runs
//! through a bounded linear-fractional recursion across the `2k` interfaces.
//! The direct determinant recursion is kept as a cross-check for small `k`
//! and as the entire function behind the argument-principle audit.

mod audit;
mod newton;
mod recursion;
mod study;

pub use audit::{audit_count, count_resonances_in_rect, count_zeros_in_rect};
pub use newton::{
    assign_band, default_im_min, find_resonances, resonances_k1, resonances_three_layer, Resonance, ResonanceSearch,
    SearchDiagnostics, SearchWindow, DEDUP_RADIUS, RESIDUAL_TOL,
};
pub use recursion::{
    det_d_recursion, interface_product, q_recursion, q_sequence, reflection_via_q, resonance_function, LayerChain,
    QState,
};
pub use study::{band_resonances, convergence_study, ConvergenceRow};
