//! C ABI over the ontolint library.
//!
//! Every function returns an [`OntolintStatus`]; on failure the message is
//! available from [`ontolint_last_error`] on the same thread. Strings handed
//! out by the library are freed with [`ontolint_string_free`], graphs with
//! [`ontolint_graph_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ontolint::rdf::{parse_rdf, sniff_format, Graph, RdfFormat};
use ontolint::review::{fleiss_kappa, krippendorff_alpha, AgreementError, Metric};
use ontolint::xref::{parse_curie, Separator};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OntolintStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Unsupported = 4,
    InvalidArgument = 5,
    /// The statistic is undefined for the given data.
    Undefined = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OntolintFormat {
    NTriples = 0,
    Turtle = 1,
    RdfXml = 2,
    OwlFunctional = 3,
    OwlXml = 4,
    Unknown = 5,
}

impl From<RdfFormat> for OntolintFormat {
    fn from(f: RdfFormat) -> Self {
        match f {
            RdfFormat::NTriples => OntolintFormat::NTriples,
            RdfFormat::Turtle => OntolintFormat::Turtle,
            RdfFormat::RdfXml => OntolintFormat::RdfXml,
            RdfFormat::OwlFunctional => OntolintFormat::OwlFunctional,
            RdfFormat::OwlXml => OntolintFormat::OwlXml,
            RdfFormat::Unknown => OntolintFormat::Unknown,
        }
    }
}

impl From<OntolintFormat> for RdfFormat {
    fn from(f: OntolintFormat) -> Self {
        match f {
            OntolintFormat::NTriples => RdfFormat::NTriples,
            OntolintFormat::Turtle => RdfFormat::Turtle,
            OntolintFormat::RdfXml => RdfFormat::RdfXml,
            OntolintFormat::OwlFunctional => RdfFormat::OwlFunctional,
            OntolintFormat::OwlXml => RdfFormat::OwlXml,
            OntolintFormat::Unknown => RdfFormat::Unknown,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OntolintMetric {
    Nominal = 0,
    Ordinal = 1,
}

/// Opaque parsed graph.
pub struct OntolintGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: OntolintStatus, msg: impl Into<String>) -> OntolintStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> OntolintStatus) -> OntolintStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(OntolintStatus::Panic, "internal panic"),
    }
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Option<&'a [u8]> {
    if len == 0 {
        return Some(&[]);
    }
    if data.is_null() {
        return None;
    }
    // SAFETY: caller guarantees `data` points at `len` readable bytes.
    Some(unsafe { std::slice::from_raw_parts(data, len) })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "\\u0000")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ontolint_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Detects the serialization of `len` bytes at `data`.
///
/// # Safety
/// `data` must point at `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ontolint_sniff(data: *const u8, len: usize, out: *mut OntolintFormat) -> OntolintStatus {
    guard(|| {
        let Some(input) = (unsafe { bytes(data, len) }) else {
            return fail(OntolintStatus::NullPointer, "data is NULL");
        };
        if out.is_null() {
            return fail(OntolintStatus::NullPointer, "out is NULL");
        }
        // SAFETY: checked non-null above.
        unsafe { *out = sniff_format(input).detected.into() };
        OntolintStatus::Ok
    })
}

/// Parses N-Triples or Turtle (gzip accepted) into a new graph handle.
///
/// # Safety
/// `data` must point at `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ontolint_graph_parse(
    data: *const u8,
    len: usize,
    format: OntolintFormat,
    out: *mut *mut OntolintGraph,
) -> OntolintStatus {
    guard(|| {
        if out.is_null() {
            return fail(OntolintStatus::NullPointer, "out is NULL");
        }
        // SAFETY: checked non-null above.
        unsafe { *out = ptr::null_mut() };
        let Some(input) = (unsafe { bytes(data, len) }) else {
            return fail(OntolintStatus::NullPointer, "data is NULL");
        };
        let format = RdfFormat::from(format);
        if !format.is_supported() {
            return fail(OntolintStatus::Unsupported, format!("{} is not supported", format.name()));
        }
        match parse_rdf(input, format) {
            Ok(graph) => {
                // SAFETY: checked non-null above.
                unsafe { *out = Box::into_raw(Box::new(OntolintGraph { graph })) };
                OntolintStatus::Ok
            }
            Err(ontolint::rdf::RdfError::InvalidUtf8) => fail(OntolintStatus::InvalidUtf8, "input is not valid UTF-8"),
            Err(e) => fail(OntolintStatus::ParseError, e.to_string()),
        }
    })
}

/// Number of distinct triples; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle from [`ontolint_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn ontolint_graph_len(graph: *const OntolintGraph) -> usize {
    // SAFETY: caller contract.
    unsafe { graph.as_ref() }.map_or(0, |g| g.graph.len())
}

/// Canonical sorted N-Triples serialization as a new string.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ontolint_graph_to_ntriples(graph: *const OntolintGraph, out: *mut *mut c_char) -> OntolintStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (Some(g), false) = (unsafe { graph.as_ref() }, out.is_null()) else {
            return fail(OntolintStatus::NullPointer, "graph or out is NULL");
        };
        // SAFETY: checked non-null above.
        unsafe { *out = into_c_string(g.graph.to_ntriples()) };
        OntolintStatus::Ok
    })
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ontolint_graph_free(graph: *mut OntolintGraph) {
    if !graph.is_null() {
        // SAFETY: the handle came from Box::into_raw in ontolint_graph_parse.
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ontolint_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

fn agreement_status(e: AgreementError) -> OntolintStatus {
    let status = match e {
        AgreementError::DegenerateCategories | AgreementError::NoVariation => OntolintStatus::Undefined,
        _ => OntolintStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Fleiss' kappa over a row-major `items` x `categories` count matrix.
///
/// # Safety
/// `counts` must point at `items * categories` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ontolint_fleiss_kappa(
    counts: *const usize,
    items: usize,
    categories: usize,
    out: *mut f64,
) -> OntolintStatus {
    guard(|| {
        if counts.is_null() || out.is_null() {
            return fail(OntolintStatus::NullPointer, "counts or out is NULL");
        }
        let Some(n) = items.checked_mul(categories) else {
            return fail(OntolintStatus::InvalidArgument, "matrix too large");
        };
        // SAFETY: caller contract.
        let flat = unsafe { std::slice::from_raw_parts(counts, n) };
        let rows: Vec<Vec<usize>> = flat.chunks(categories.max(1)).map(<[usize]>::to_vec).collect();
        match fleiss_kappa(&rows) {
            Ok(k) => {
                // SAFETY: checked non-null above.
                unsafe { *out = k };
                OntolintStatus::Ok
            }
            Err(e) => agreement_status(e),
        }
    })
}

/// Krippendorff's alpha over a row-major `units` x `raters` matrix of
/// integer ratings, NaN marking a missing rating.
///
/// # Safety
/// `ratings` must point at `units * raters` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ontolint_krippendorff_alpha(
    ratings: *const f64,
    units: usize,
    raters: usize,
    metric: OntolintMetric,
    out: *mut f64,
) -> OntolintStatus {
    guard(|| {
        if ratings.is_null() || out.is_null() {
            return fail(OntolintStatus::NullPointer, "ratings or out is NULL");
        }
        let Some(n) = units.checked_mul(raters) else {
            return fail(OntolintStatus::InvalidArgument, "matrix too large");
        };
        // SAFETY: caller contract.
        let flat = unsafe { std::slice::from_raw_parts(ratings, n) };
        let mut rows = Vec::with_capacity(units);
        for chunk in flat.chunks(raters.max(1)) {
            let mut row = Vec::with_capacity(raters);
            for &x in chunk {
                if x.is_nan() {
                    row.push(None);
                } else if x.fract() == 0.0 && x.abs() < 1e15 {
                    row.push(Some(x as i64));
                } else {
                    return fail(OntolintStatus::InvalidArgument, format!("rating {x} is not an integer"));
                }
            }
            rows.push(row);
        }
        let metric = match metric {
            OntolintMetric::Nominal => Metric::Nominal,
            OntolintMetric::Ordinal => Metric::Ordinal,
        };
        match krippendorff_alpha(&rows, metric) {
            Ok(a) => {
                // SAFETY: checked non-null above.
                unsafe { *out = a };
                OntolintStatus::Ok
            }
            Err(e) => agreement_status(e),
        }
    })
}

/// Splits a compact identifier into new prefix and local-id strings.
/// `separator` receives ':' or '_'.
///
/// # Safety
/// `text` must be a NUL-terminated string; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ontolint_parse_curie(
    text: *const c_char,
    prefix: *mut *mut c_char,
    local_id: *mut *mut c_char,
    separator: *mut c_char,
) -> OntolintStatus {
    guard(|| {
        if text.is_null() || prefix.is_null() || local_id.is_null() || separator.is_null() {
            return fail(OntolintStatus::NullPointer, "NULL argument");
        }
        // SAFETY: caller contract.
        let Ok(s) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(OntolintStatus::InvalidUtf8, "text is not valid UTF-8");
        };
        match parse_curie(s) {
            Ok(c) => {
                // SAFETY: checked non-null above.
                unsafe {
                    *prefix = into_c_string(c.prefix);
                    *local_id = into_c_string(c.local_id);
                    *separator = match c.separator {
                        Separator::Colon => b':',
                        Separator::Underscore => b'_',
                    } as c_char;
                }
                OntolintStatus::Ok
            }
            Err(e) => fail(OntolintStatus::ParseError, e.to_string()),
        }
    })
}
