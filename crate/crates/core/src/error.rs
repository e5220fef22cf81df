use thiserror::Error;

/// Errors produced by the spectral, scattering and resonance routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid unit cell: {0}")]
    InvalidCell(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// The two Floquet multipliers coincide (F = ±1). `multiplier` is the
    /// common value and `weyl_defined` is false when the monodromy matrix
    /// is ±I, i.e. at a degenerate band edge.
    #[error("band edge: Floquet multipliers coincide at {multiplier}")]
    EdgeDegeneracy { multiplier: f64, weyl_defined: bool },

    /// A denominator vanished to working precision; the frequency is
    /// numerically a resonance.
    #[error("frequency is within pole tolerance (|denominator| = {denominator:e})")]
    PoleProximity { denominator: f64 },

    /// An intermediate step of the Q recursion hit a pole.
    #[error("intermediate pole in Q recursion at index m = {m}")]
    RecursionPole { m: usize },

    #[error("determinant recursion overflowed at n = {n}")]
    Overflow { n: usize },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("integration contour passes through a zero after {attempts} attempts")]
    ContourThroughZero { attempts: usize },

    #[error("cell is not commensurate: b2*x2 = {lhs} but b1*(1-x2) = {rhs}")]
    NotCommensurate { lhs: f64, rhs: f64 },

    #[error("frequency {lambda} is a degenerate band edge (eta = 1)")]
    DegenerateEdge { lambda: f64 },

    #[error("homogeneous cell (b1 = b2) has no interfaces")]
    HomogeneousCell,

    #[error("band [{lo}, {hi}] does not match the spectrum of this cell")]
    BandMismatch { lo: f64, hi: f64 },

    #[error("outside the domain: {0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
