//! C ABI over `slabres`.
//!
//! Every function returns an [`SrStatus`]; results go through out-pointers.
//! On failure [`sr_last_error_message`] describes the error on the calling
//! thread. Handles returned by `*_new`/`sr_find_*` are owned by the caller
//! and must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use slabres::error::Error;
use slabres::medium::UnitCell;
use slabres::mobius::FixedPointKind;
use slabres::monodromy::{Band, EdgeType, MonodromyMatrix};
use slabres::resolvent::{Resonance, SearchWindow};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidCell = 2,
    InvalidArgument = 3,
    InvalidRange = 4,
    EdgeDegeneracy = 5,
    PoleProximity = 6,
    RecursionPole = 7,
    Overflow = 8,
    NoConvergence = 9,
    ContourThroughZero = 10,
    NotCommensurate = 11,
    DegenerateEdge = 12,
    HomogeneousCell = 13,
    BandMismatch = 14,
    DomainError = 15,
    OutOfBounds = 16,
    Panic = 99,
}

impl From<&Error> for SrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidCell(_) => SrStatus::InvalidCell,
            Error::InvalidArgument(_) => SrStatus::InvalidArgument,
            Error::InvalidRange(_) => SrStatus::InvalidRange,
            Error::EdgeDegeneracy { .. } => SrStatus::EdgeDegeneracy,
            Error::PoleProximity { .. } => SrStatus::PoleProximity,
            Error::RecursionPole { .. } => SrStatus::RecursionPole,
            Error::Overflow { .. } => SrStatus::Overflow,
            Error::NoConvergence(_) => SrStatus::NoConvergence,
            Error::ContourThroughZero { .. } => SrStatus::ContourThroughZero,
            Error::NotCommensurate { .. } => SrStatus::NotCommensurate,
            Error::DegenerateEdge { .. } => SrStatus::DegenerateEdge,
            Error::HomogeneousCell => SrStatus::HomogeneousCell,
            Error::BandMismatch { .. } => SrStatus::BandMismatch,
            Error::DomainError(_) => SrStatus::DomainError,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for SrComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<SrComplex> for Complex64 {
    fn from(z: SrComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrDerived {
    pub d: f64,
    pub rho: f64,
    pub tau_b: f64,
    pub tau_g: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrMonodromy {
    pub alpha: SrComplex,
    pub beta: SrComplex,
    pub gamma: SrComplex,
    pub delta: SrComplex,
}

impl From<MonodromyMatrix> for SrMonodromy {
    fn from(m: MonodromyMatrix) -> Self {
        Self {
            alpha: m.alpha.into(),
            beta: m.beta.into(),
            gamma: m.gamma.into(),
            delta: m.delta.into(),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrEdgeType {
    Degenerate = 0,
    NonDegenerate = 1,
    Open = 2,
}

impl From<EdgeType> for SrEdgeType {
    fn from(e: EdgeType) -> Self {
        match e {
            EdgeType::Degenerate => SrEdgeType::Degenerate,
            EdgeType::NonDegenerate => SrEdgeType::NonDegenerate,
            EdgeType::Open => SrEdgeType::Open,
        }
    }
}

impl From<SrEdgeType> for EdgeType {
    fn from(e: SrEdgeType) -> Self {
        match e {
            SrEdgeType::Degenerate => EdgeType::Degenerate,
            SrEdgeType::NonDegenerate => EdgeType::NonDegenerate,
            SrEdgeType::Open => EdgeType::Open,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrBand {
    /// 1-based.
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub lo_type: SrEdgeType,
    pub hi_type: SrEdgeType,
}

impl From<&Band> for SrBand {
    fn from(b: &Band) -> Self {
        Self {
            index: b.index,
            lo: b.lo,
            hi: b.hi,
            lo_type: b.lo_type.into(),
            hi_type: b.hi_type.into(),
        }
    }
}

impl From<&SrBand> for Band {
    fn from(b: &SrBand) -> Self {
        Band {
            index: b.index,
            lo: b.lo,
            hi: b.hi,
            lo_type: b.lo_type.into(),
            hi_type: b.hi_type.into(),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrResonance {
    pub lambda: SrComplex,
    /// `|d Q_{2k} - 1|` at `lambda`.
    pub residual: f64,
    /// 1-based band index, or 0 for an edge or gap resonance.
    pub band_index: usize,
}

impl From<&Resonance> for SrResonance {
    fn from(r: &Resonance) -> Self {
        Self {
            lambda: r.lambda.into(),
            residual: r.residual,
            band_index: r.band_index.unwrap_or(0),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrFixedPointKind {
    Elliptic = 0,
    Parabolic = 1,
    Hyperbolic = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrFixedPoints {
    pub z1: SrComplex,
    pub z2: SrComplex,
    pub kind: SrFixedPointKind,
    pub discriminant: f64,
}

/// Opaque unit cell.
pub struct SrCell(UnitCell);

/// Opaque list of bands.
pub struct SrBandList(Vec<Band>);

/// Opaque list of resonances sorted by real part.
pub struct SrResonanceList(Vec<Resonance>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: Error) -> SrStatus {
    set_error(&e.to_string());
    SrStatus::from(&e)
}

fn guard<F: FnOnce() -> Result<(), SrStatus>>(f: F) -> SrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SrStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            SrStatus::Panic
        }
    }
}

fn null(what: &str) -> SrStatus {
    set_error(&format!("null pointer: {what}"));
    SrStatus::NullPointer
}

unsafe fn cell_ref<'a>(cell: *const SrCell) -> Result<&'a UnitCell, SrStatus> {
    cell.as_ref().map(|c| &c.0).ok_or_else(|| null("cell"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), SrStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

/// Creates a cell. `*out` receives a handle to free with `sr_cell_free`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_cell_new(b1: f64, b2: f64, x2: f64, out: *mut *mut SrCell) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cell = UnitCell::new(b1, b2, x2).map_err(fail)?;
        write(out, Box::into_raw(Box::new(SrCell(cell))))
    })
}

/// # Safety
/// `cell` must be null or a handle from `sr_cell_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_cell_free(cell: *mut SrCell) {
    if !cell.is_null() {
        drop(Box::from_raw(cell));
    }
}

/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_cell_derived(cell: *const SrCell, out: *mut SrDerived) -> SrStatus {
    guard(|| {
        let d = cell_ref(cell)?.derived();
        write(
            out,
            SrDerived {
                d: d.d,
                rho: d.rho,
                tau_b: d.tau_b,
                tau_g: d.tau_g,
            },
        )
    })
}

/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_cell_is_commensurate(cell: *const SrCell, out: *mut bool) -> SrStatus {
    guard(|| write(out, cell_ref(cell)?.is_commensurate()))
}

/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_lyapunov(cell: *const SrCell, lambda: SrComplex, out: *mut SrComplex) -> SrStatus {
    guard(|| write(out, slabres::monodromy::lyapunov(cell_ref(cell)?, lambda.into()).into()))
}

/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_monodromy(cell: *const SrCell, lambda: SrComplex, out: *mut SrMonodromy) -> SrStatus {
    guard(|| {
        write(
            out,
            slabres::monodromy::monodromy(cell_ref(cell)?, lambda.into()).into(),
        )
    })
}

/// `M^k` by the Chebyshev identity.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_transfer_power(
    cell: *const SrCell,
    lambda: SrComplex,
    k: usize,
    out: *mut SrMonodromy,
) -> SrStatus {
    guard(|| {
        let m = slabres::monodromy::transfer_power(cell_ref(cell)?, lambda.into(), k).map_err(fail)?;
        write(out, m.into())
    })
}

/// `r_k` from the monodromy matrix.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_reflection_k(
    cell: *const SrCell,
    lambda: SrComplex,
    k: usize,
    out: *mut SrComplex,
) -> SrStatus {
    guard(|| {
        let r = slabres::scattering::reflection_k(cell_ref(cell)?, lambda.into(), k).map_err(fail)?;
        write(out, r.into())
    })
}

/// `r_k` from the interface recursion.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_reflection_via_q(
    cell: *const SrCell,
    lambda: SrComplex,
    k: usize,
    out: *mut SrComplex,
) -> SrStatus {
    guard(|| {
        let r = slabres::resolvent::reflection_via_q(cell_ref(cell)?, lambda.into(), k).map_err(fail)?;
        write(out, r.into())
    })
}

/// `|t_k|^2` at a real frequency.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_transmission_sq(cell: *const SrCell, lambda: f64, k: usize, out: *mut f64) -> SrStatus {
    guard(|| {
        let t = slabres::scattering::transmission_sq(cell_ref(cell)?, lambda, k).map_err(fail)?;
        write(out, t)
    })
}

/// Reflection coefficient of the half-infinite medium for `Im lambda >= 0`.
/// `on_band` may be null.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes; `on_band`
/// must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_reflection_half_infinite(
    cell: *const SrCell,
    lambda: SrComplex,
    out: *mut SrComplex,
    on_band: *mut bool,
) -> SrStatus {
    guard(|| {
        let h = slabres::scattering::reflection_half_infinite(cell_ref(cell)?, lambda.into()).map_err(fail)?;
        write(out, h.value.into())?;
        if !on_band.is_null() {
            on_band.write(h.on_band);
        }
        Ok(())
    })
}

/// Bands in `[0, lambda_max]`. Free with `sr_band_list_free`.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_find_bands(cell: *const SrCell, lambda_max: f64, out: *mut *mut SrBandList) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let bands = slabres::monodromy::find_bands(cell_ref(cell)?, lambda_max).map_err(fail)?;
        write(out, Box::into_raw(Box::new(SrBandList(bands))))
    })
}

/// Number of bands, 0 for a null list.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_band_list_len(list: *const SrBandList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// # Safety
/// `list` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_band_list_get(list: *const SrBandList, i: usize, out: *mut SrBand) -> SrStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let b = l.0.get(i).ok_or_else(|| {
            set_error(&format!("index {i} out of bounds for {} bands", l.0.len()));
            SrStatus::OutOfBounds
        })?;
        write(out, b.into())
    })
}

/// # Safety
/// `list` must be null or a handle from `sr_find_bands` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_band_list_free(list: *mut SrBandList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Resonances of the `k`-cell slab with `re_min <= Re <= re_max` and
/// `Im >= im_min`. Free with `sr_resonance_list_free`.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_find_resonances(
    cell: *const SrCell,
    k: usize,
    re_min: f64,
    re_max: f64,
    im_min: f64,
    out: *mut *mut SrResonanceList,
) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cell = cell_ref(cell)?;
        let found = if k == 1 {
            slabres::resolvent::resonances_k1(cell, re_min, re_max)
                .map_err(fail)?
                .into_iter()
                .filter(|r| r.lambda.im >= im_min)
                .collect()
        } else {
            let window = SearchWindow::new(re_min, re_max, im_min).map_err(fail)?;
            slabres::resolvent::find_resonances(cell, k, window)
                .map_err(fail)?
                .resonances
        };
        write(out, Box::into_raw(Box::new(SrResonanceList(found))))
    })
}

/// Number of resonances, 0 for a null list.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_resonance_list_len(list: *const SrResonanceList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// # Safety
/// `list` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_resonance_list_get(
    list: *const SrResonanceList,
    i: usize,
    out: *mut SrResonance,
) -> SrStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let r = l.0.get(i).ok_or_else(|| {
            set_error(&format!("index {i} out of bounds for {} resonances", l.0.len()));
            SrStatus::OutOfBounds
        })?;
        write(out, r.into())
    })
}

/// # Safety
/// `list` must be null or a handle from `sr_find_resonances` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_resonance_list_free(list: *mut SrResonanceList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Zero count of the resonance function below `band`, by the argument
/// principle.
///
/// # Safety
/// `cell` must be a live handle; `band` must be readable; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_audit_count(
    cell: *const SrCell,
    k: usize,
    band: *const SrBand,
    margin: f64,
    im_floor: f64,
    out: *mut usize,
) -> SrStatus {
    guard(|| {
        let band: Band = band.as_ref().ok_or_else(|| null("band"))?.into();
        let n = slabres::resolvent::audit_count(cell_ref(cell)?, k, &band, margin, im_floor).map_err(fail)?;
        write(out, n)
    })
}

/// Fixed points of the cell-adding map of a commensurate cell.
///
/// # Safety
/// `cell` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sr_fixed_points(cell: *const SrCell, lambda: f64, out: *mut SrFixedPoints) -> SrStatus {
    guard(|| {
        let a = slabres::mobius::fixed_points(cell_ref(cell)?, lambda).map_err(fail)?;
        let kind = match a.kind {
            FixedPointKind::Elliptic => SrFixedPointKind::Elliptic,
            FixedPointKind::Parabolic => SrFixedPointKind::Parabolic,
            FixedPointKind::Hyperbolic => SrFixedPointKind::Hyperbolic,
        };
        write(
            out,
            SrFixedPoints {
                z1: a.z1.into(),
                z2: a.z2.into(),
                kind,
                discriminant: a.discriminant,
            },
        )
    })
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
