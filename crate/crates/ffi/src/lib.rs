//! C ABI over the `lempert` library.
//!
//! Every fallible function returns a [`LempertStatus`]; on failure a message is
//! available from [`lempert_last_error`] until the next call on the same
//! thread. Datums and geodesics are opaque handles released with their
//! `_free` functions; strings returned through `char **` are released with
//! [`lempert_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lempert::bidisc::{balanced_geodesic, car_bidisc};
use lempert::cli::{cmd_check, cmd_dist, RunConfig};
use lempert::datum::GeodesicDisc;
use lempert::disc::{poincare_distance, poincare_metric, Moebius};
use lempert::json::parse_datum;
use lempert::symmetrized::{car_g, in_g, symmetrize, symmetrized_geodesic, CarGOptions, PhiOmega};
use lempert::{Datum, Domain, Error};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LempertComplex {
    pub re: f64,
    pub im: f64,
}

impl From<LempertComplex> for Complex64 {
    fn from(z: LempertComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for LempertComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LempertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Degenerate = 5,
    Infeasible = 6,
    NotBalanced = 7,
    NoLeftInverse = 8,
    Pole = 9,
    InvalidArgument = 10,
    BufferTooSmall = 11,
    CheckFailed = 12,
    Internal = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LempertDomain {
    Disc = 0,
    Bidisc = 1,
    SymBidisc = 2,
}

impl From<Domain> for LempertDomain {
    fn from(d: Domain) -> Self {
        match d {
            Domain::Disc => LempertDomain::Disc,
            Domain::Bidisc => LempertDomain::Bidisc,
            Domain::SymBidisc => LempertDomain::SymBidisc,
        }
    }
}

/// Opaque datum handle.
pub struct LempertDatum {
    inner: Datum,
}

/// Opaque handle to a certified complex geodesic.
pub struct LempertGeodesic {
    inner: GeodesicDisc,
    omega_angle: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LempertStatus {
    match e {
        Error::Parse(_) => LempertStatus::Parse,
        Error::DomainViolation(_) | Error::DomainMismatch { .. } | Error::DatumKind { .. } => {
            LempertStatus::Domain
        }
        Error::DegenerateDatum | Error::DegenerateInput(_) => LempertStatus::Degenerate,
        Error::Infeasible { .. } | Error::DistanceMismatch { .. } => LempertStatus::Infeasible,
        Error::NotBalanced { .. } => LempertStatus::NotBalanced,
        Error::LeftInverseNotFound { .. } => LempertStatus::NoLeftInverse,
        Error::PoleEncountered(_) => LempertStatus::Pole,
        Error::InvalidParameter(_) | Error::FamilyEscapesDisc(_) => LempertStatus::InvalidArgument,
        _ => LempertStatus::Internal,
    }
}

/// Runs `f`, recording errors and converting panics into [`LempertStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), LempertStatus>) -> LempertStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LempertStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside lempert");
            LempertStatus::Panic
        }
    }
}

trait IntoStatus<T> {
    fn status(self) -> Result<T, LempertStatus>;
}

impl<T> IntoStatus<T> for lempert::Result<T> {
    fn status(self) -> Result<T, LempertStatus> {
        self.map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), LempertStatus> {
    if p.is_null() {
        set_error(format!("{name} is NULL"));
        Err(LempertStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, LempertStatus> {
    non_null(p, name)?;
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        LempertStatus::InvalidUtf8
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// is valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lempert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lempert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Poincaré distance between two points of the disc.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_poincare_distance(
    z1: LempertComplex,
    z2: LempertComplex,
    out: *mut f64,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = poincare_distance(z1.into(), z2.into()).status()?;
        Ok(())
    })
}

/// Poincaré metric `|v| / (1 - |z|²)`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_poincare_metric(
    z: LempertComplex,
    v: LempertComplex,
    out: *mut f64,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = poincare_metric(z.into(), v.into()).status()?;
        Ok(())
    })
}

/// Evaluates `e^{iθ}(z - a)/(1 - āz)`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_moebius_apply(
    theta: f64,
    a: LempertComplex,
    z: LempertComplex,
    out: *mut LempertComplex,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        let m = Moebius::new(theta, a.into()).status()?;
        *out = m.apply(z.into()).status()?.into();
        Ok(())
    })
}

/// Whether `(s, p)` lies in the symmetrized bidisc.
#[no_mangle]
pub extern "C" fn lempert_in_g(s: LempertComplex, p: LempertComplex) -> bool {
    in_g(s.into(), p.into())
}

/// `(z + w, zw)`; writes two complex numbers to `out`.
///
/// # Safety
/// `out` must be NULL or valid for writing two elements.
#[no_mangle]
pub unsafe extern "C" fn lempert_symmetrize(
    z: LempertComplex,
    w: LempertComplex,
    out: *mut LempertComplex,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = symmetrize(z.into(), w.into()).status()?;
        *out = p.coord(0).into();
        *out.add(1) = p.coord(1).into();
        Ok(())
    })
}

/// `Φ_ω(s, p) = (2ωp - s)/(2 - ωs)` with `ω = e^{iθ}`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_phi(
    theta: f64,
    s: LempertComplex,
    p: LempertComplex,
    out: *mut LempertComplex,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = PhiOmega::from_angle(theta)
            .value(s.into(), p.into())
            .status()?
            .into();
        Ok(())
    })
}

/// Parses a JSON datum into a new handle.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_datum_from_json(
    json: *const c_char,
    out: *mut *mut LempertDatum,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let datum = parse_datum(read_str(json, "json")?).status()?;
        *out = Box::into_raw(Box::new(LempertDatum { inner: datum }));
        Ok(())
    })
}

/// Serializes a datum; release the result with [`lempert_string_free`].
///
/// # Safety
/// `datum` must be NULL or a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_datum_to_json(
    datum: *const LempertDatum,
    out: *mut *mut c_char,
) -> LempertStatus {
    guard(|| {
        non_null(datum, "datum")?;
        non_null(out, "out")?;
        let text = serde_json::to_string(&(*datum).inner).map_err(|e| {
            set_error(e.to_string());
            LempertStatus::Internal
        })?;
        *out = to_c_string(text);
        Ok(())
    })
}

/// # Safety
/// `datum` must be NULL or a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_datum_domain(
    datum: *const LempertDatum,
    out: *mut LempertDomain,
) -> LempertStatus {
    guard(|| {
        non_null(datum, "datum")?;
        non_null(out, "out")?;
        *out = (*datum).inner.domain().into();
        Ok(())
    })
}

/// # Safety
/// `datum` must be NULL or a handle from [`lempert_datum_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lempert_datum_free(datum: *mut LempertDatum) {
    if !datum.is_null() {
        drop(Box::from_raw(datum));
    }
}

/// Carathéodory value on the bidisc; bit `j - 1` of `extremal_mask` is set
/// when the coordinate `F^j` is extremal.
///
/// # Safety
/// `datum` must be NULL or a live handle; outputs must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_car_bidisc(
    datum: *const LempertDatum,
    value: *mut f64,
    extremal_mask: *mut u32,
) -> LempertStatus {
    guard(|| {
        non_null(datum, "datum")?;
        non_null(value, "value")?;
        non_null(extremal_mask, "extremal_mask")?;
        let car = car_bidisc(&(*datum).inner).status()?;
        *value = car.value;
        *extremal_mask = car.extremal.iter().fold(0, |m, j| m | 1 << (j - 1));
        Ok(())
    })
}

/// Carathéodory value on the symmetrized bidisc with its argmax angles.
///
/// Up to `capacity` angles are written to `argmax`; `count` receives the
/// total, and [`LempertStatus::BufferTooSmall`] is returned if it exceeds
/// `capacity`. `flat` is set when every angle is extremal.
///
/// # Safety
/// `datum` must be NULL or a live handle; `argmax` must be valid for
/// `capacity` writes (or NULL with `capacity == 0`); other outputs must be
/// NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_car_g(
    datum: *const LempertDatum,
    grid_size: u32,
    refine: bool,
    value: *mut f64,
    argmax: *mut f64,
    capacity: usize,
    count: *mut usize,
    flat: *mut bool,
) -> LempertStatus {
    guard(|| {
        non_null(datum, "datum")?;
        non_null(value, "value")?;
        non_null(count, "count")?;
        non_null(flat, "flat")?;
        if capacity > 0 {
            non_null(argmax, "argmax")?;
        }
        let opts = CarGOptions {
            grid_size: grid_size as usize,
            refine,
            keep_profile: false,
        };
        let opt = car_g(&(*datum).inner, opts).status()?;
        *value = opt.value;
        *flat = opt.flat;
        *count = opt.argmax_angles.len();
        for (j, t) in opt.argmax_angles.iter().take(capacity).enumerate() {
            *argmax.add(j) = *t;
        }
        if opt.argmax_angles.len() > capacity {
            set_error(format!(
                "{} argmax angles do not fit in {capacity}",
                opt.argmax_angles.len()
            ));
            return Err(LempertStatus::BufferTooSmall);
        }
        Ok(())
    })
}

/// Carathéodory and Kobayashi values of a JSON datum as a JSON report
/// `{"domain","car","kob","extremal","flat"}`.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_dist_json(
    json: *const c_char,
    out: *mut *mut c_char,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let report = cmd_dist(read_str(json, "json")?, &RunConfig::default()).status()?;
        *out = to_c_string(report.json.to_string());
        if report.passed {
            Ok(())
        } else {
            set_error("car and kob disagree");
            Err(LempertStatus::CheckFailed)
        }
    })
}

/// Runs a named verification suite with the given seed and default
/// tolerances; the JSON report is written to `out` even when the suite fails
/// ([`LempertStatus::CheckFailed`]).
///
/// # Safety
/// `suite` must be NULL or a NUL-terminated string; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_check_suite(
    suite: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let cfg = RunConfig {
            seed,
            ..RunConfig::default()
        };
        let report = cmd_check(read_str(suite, "suite")?, &cfg).status()?;
        *out = to_c_string(report.json.to_string());
        if report.passed {
            Ok(())
        } else {
            set_error("check failed");
            Err(LempertStatus::CheckFailed)
        }
    })
}

/// Geodesic `{(ζ, m(ζ))}` of a balanced bidisc datum, with left inverse `F¹`.
///
/// # Safety
/// `datum` must be NULL or a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_balanced(
    datum: *const LempertDatum,
    out: *mut *mut LempertGeodesic,
) -> LempertStatus {
    guard(|| {
        non_null(datum, "datum")?;
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let g = balanced_geodesic(&(*datum).inner).status()?;
        *out = Box::into_raw(Box::new(LempertGeodesic {
            inner: g,
            omega_angle: f64::NAN,
        }));
        Ok(())
    })
}

/// Geodesic `ζ ↦ (ζ + m(ζ), ζ·m(ζ))` of the symmetrized bidisc for
/// `m(z) = e^{iθ}(z - a)/(1 - āz)`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_symmetrized(
    theta: f64,
    a: LempertComplex,
    out: *mut *mut LempertGeodesic,
) -> LempertStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let m = Moebius::new(theta, a.into()).status()?;
        let g = symmetrized_geodesic(m).status()?;
        *out = Box::into_raw(Box::new(LempertGeodesic {
            inner: g.geodesic,
            omega_angle: g.omega_angle,
        }));
        Ok(())
    })
}

/// Writes `k(ζ)` (two complex numbers) to `out`.
///
/// # Safety
/// `g` must be NULL or a live handle; `out` must be NULL or valid for writing two elements.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_eval(
    g: *const LempertGeodesic,
    zeta: LempertComplex,
    out: *mut LempertComplex,
) -> LempertStatus {
    guard(|| {
        non_null(g, "geodesic")?;
        non_null(out, "out")?;
        let w = (*g).inner.k().eval(&[zeta.into()]).status()?;
        for (j, z) in w.iter().enumerate() {
            *out.add(j) = (*z).into();
        }
        Ok(())
    })
}

/// Applies the left inverse `C` to a point given by two complex numbers.
///
/// # Safety
/// `g` must be NULL or a live handle; `point` must be NULL or valid for
/// reading two elements; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_left_inverse(
    g: *const LempertGeodesic,
    point: *const LempertComplex,
    out: *mut LempertComplex,
) -> LempertStatus {
    guard(|| {
        non_null(g, "geodesic")?;
        non_null(point, "point")?;
        non_null(out, "out")?;
        let z = [(*point).into(), (*point.add(1)).into()];
        *out = (*g).inner.left_inverse().eval(&z).status()?[0].into();
        Ok(())
    })
}

/// Grid residual `sup |C(k(ζ)) - ζ|`, or NaN for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_residual(g: *const LempertGeodesic) -> f64 {
    if g.is_null() {
        return f64::NAN;
    }
    (*g).inner.residual()
}

/// Angle of `ω` in the left inverse `μ ∘ Φ_ω`; NaN for bidisc geodesics.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_omega_angle(g: *const LempertGeodesic) -> f64 {
    if g.is_null() {
        return f64::NAN;
    }
    (*g).omega_angle
}

/// # Safety
/// `g` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lempert_geodesic_free(g: *mut LempertGeodesic) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}
