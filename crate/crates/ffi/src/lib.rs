//! C ABI over `dcc-core`.
//!
//! Every entry point returns a [`DcStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and read with
//! [`dc_last_error`]. Strings returned by the library must be released with
//! [`dc_string_free`]; t-structure handles with [`dc_tstructure_free`].
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dcc_core::category::{ext1_dim, hom_dim};
use dcc_core::completion::{completion_member, hom_completed_dim};
use dcc_core::io::{from_json, to_json};
use dcc_core::tstructure::{kreweras, largest_aisle_in_coaisle, NCPartition};
use dcc_core::{Arc, BoundaryPoint, Error, TStructure};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    Malformed = 2,
    InvalidUtf8 = 3,
    NotAnArc = 4,
    SegmentOutOfRange = 5,
    InvalidTStructure = 6,
    ZeroMorphism = 7,
    Domain = 8,
    Panic = 9,
    /// Well-formed JSON describing an invalid value.
    InvalidValue = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcPointKind {
    Marked = 0,
    Acc = 1,
}

/// `index` is ignored for accumulation points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DcPoint {
    pub kind: DcPointKind,
    pub segment: u32,
    pub index: i64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DcArc {
    pub a: DcPoint,
    pub b: DcPoint,
}

/// Opaque validated t-structure.
pub struct DcTStructure(TStructure);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DcStatus {
    match e {
        Error::NotAnArc(..) => DcStatus::NotAnArc,
        Error::SegmentOutOfRange { .. } => DcStatus::SegmentOutOfRange,
        Error::InvalidPartition(_) | Error::Crossing | Error::InvalidDecoration { .. } => {
            DcStatus::InvalidTStructure
        }
        Error::ZeroMorphism | Error::NoMorphism(..) => DcStatus::ZeroMorphism,
        Error::Malformed(_) => DcStatus::Malformed,
        Error::InvalidValue(_) => DcStatus::InvalidValue,
        _ => DcStatus::Domain,
    }
}

struct Failure(DcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(DcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(p: *mut T, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null());
    }
    p.write(value);
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(DcStatus::InvalidUtf8, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

fn point(p: DcPoint) -> BoundaryPoint {
    match p.kind {
        DcPointKind::Marked => BoundaryPoint::marked(p.segment, p.index),
        DcPointKind::Acc => BoundaryPoint::acc(p.segment),
    }
}

fn dc_point(p: BoundaryPoint) -> DcPoint {
    match p {
        BoundaryPoint::Marked { segment, index } => DcPoint {
            kind: DcPointKind::Marked,
            segment,
            index,
        },
        BoundaryPoint::Acc { segment } => DcPoint {
            kind: DcPointKind::Acc,
            segment,
            index: 0,
        },
    }
}

fn arc(a: &DcArc) -> Result<Arc, Failure> {
    Ok(Arc::new(point(a.a), point(a.b))?)
}

fn dc_arc(a: &Arc) -> DcArc {
    let [p, q] = a.endpoints();
    DcArc {
        a: dc_point(p),
        b: dc_point(q),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `dim Hom(x, y)`.
///
/// # Safety
/// Pointers must be valid for reads or writes of their types.
#[no_mangle]
pub unsafe extern "C" fn dc_hom_dim(x: *const DcArc, y: *const DcArc, out: *mut u8) -> DcStatus {
    guard(|| {
        let (x, y) = (arc(deref(x)?)?, arc(deref(y)?)?);
        write(out, hom_dim(&x, &y))
    })
}

/// `dim Ext¹(x, y)`.
///
/// # Safety
/// Pointers must be valid for reads or writes of their types.
#[no_mangle]
pub unsafe extern "C" fn dc_ext1_dim(x: *const DcArc, y: *const DcArc, out: *mut u8) -> DcStatus {
    guard(|| {
        let (x, y) = (arc(deref(x)?)?, arc(deref(y)?)?);
        write(out, ext1_dim(&x, &y))
    })
}

/// `Σⁿx`, normalised.
///
/// # Safety
/// Pointers must be valid for reads or writes of their types.
#[no_mangle]
pub unsafe extern "C" fn dc_suspend(x: *const DcArc, n: i64, out: *mut DcArc) -> DcStatus {
    guard(|| {
        let x = arc(deref(x)?)?;
        write(out, dc_arc(&x.suspend(n)))
    })
}

/// Parse and validate a decorated partition given as JSON.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_tstructure_from_json(
    json: *const c_char,
    out: *mut *mut DcTStructure,
) -> DcStatus {
    guard(|| {
        let t: TStructure = from_json(read_str(json)?)?;
        write(out, Box::into_raw(Box::new(DcTStructure(t))))
    })
}

/// # Safety
/// `t` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dc_tstructure_free(t: *mut DcTStructure) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// JSON of a t-structure; free with [`dc_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_tstructure_to_json(
    t: *const DcTStructure,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let t = deref(t)?;
        write(out, into_c_string(to_json(&t.0)))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_tstructure_n(t: *const DcTStructure, out: *mut u32) -> DcStatus {
    guard(|| write(out, deref(t)?.0.n()))
}

/// Whether `x` lies in `Σᵖ` of the aisle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_aisle_member(
    t: *const DcTStructure,
    x: *const DcArc,
    shift: i64,
    out: *mut bool,
) -> DcStatus {
    guard(|| {
        let t = &deref(t)?.0;
        let x = arc(deref(x)?)?;
        x.validate(t.n())?;
        write(out, t.aisle_arc(&x, shift))
    })
}

/// Whether `x` lies in `Σᵖ` of the coaisle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_coaisle_member(
    t: *const DcTStructure,
    x: *const DcArc,
    shift: i64,
    out: *mut bool,
) -> DcStatus {
    guard(|| {
        let t = &deref(t)?.0;
        let x = arc(deref(x)?)?;
        x.validate(t.n())?;
        write(out, t.coaisle_arc(&x, shift))
    })
}

/// New handle for the largest aisle inside the coaisle of `t`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_largest_aisle(
    t: *const DcTStructure,
    out: *mut *mut DcTStructure,
) -> DcStatus {
    guard(|| {
        let reduced = largest_aisle_in_coaisle(&deref(t)?.0);
        write(out, Box::into_raw(Box::new(DcTStructure(reduced))))
    })
}

/// Completion membership of `x`. `block` receives the certifying block id,
/// or 0 when `member` is false.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_completion_member(
    t: *const DcTStructure,
    x: *const DcArc,
    member: *mut bool,
    block: *mut u32,
) -> DcStatus {
    guard(|| {
        let t = &deref(t)?.0;
        let x = arc(deref(x)?)?;
        x.validate(t.n())?;
        let b = completion_member(&x, t);
        write(member, b.is_some())?;
        write(block, b.unwrap_or(0))
    })
}

/// Hom dimension between arcs of the completion.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dc_hom_completed_dim(
    x: *const DcArc,
    y: *const DcArc,
    out: *mut u8,
) -> DcStatus {
    guard(|| {
        let (x, y) = (arc(deref(x)?)?, arc(deref(y)?)?);
        write(out, hom_completed_dim(&x, &y))
    })
}

/// Kreweras complement of a partition given as JSON; the result is JSON to be
/// freed with [`dc_string_free`].
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_kreweras_json(json: *const c_char, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let p: NCPartition = from_json(read_str(json)?)?;
        write(out, into_c_string(to_json(&kreweras(&p))))
    })
}
