//! C interface to modegen.
//!
//! Documents are passed around as opaque `MgDocument` handles created by
//! [`mg_document_parse`] or [`mg_document_read`] and released with [`mg_document_free`].
//! Every fallible call returns an [`MgStatus`]; on failure [`mg_last_error`] describes it.
//! Strings returned by the library are freed with [`mg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modegen::certificate::{codim, push_submodule};
use modegen::hom::hom_dim;
use modegen::io::{self, Document};
use modegen::iso::{is_isomorphic, SearchOptions};
use modegen::series::{series_isomorphic, TriangularRep};
use modegen::Error;

/// Opaque handle to a parsed document.
pub struct MgDocument {
    doc: Document,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    WrongKind = 3,
    Parse = 4,
    Io = 5,
    DimensionMismatch = 6,
    AlgebraMismatch = 7,
    FieldMismatch = 8,
    NotSubmodule = 9,
    NotHomomorphism = 10,
    Undecided = 11,
    NoLift = 12,
    VectorMismatch = 13,
    FieldTooSmall = 14,
    VerificationFailed = 15,
    TooLarge = 16,
    InvalidInput = 17,
    Other = 18,
    Panic = 19,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MgStatus {
    match e {
        Error::Parse { .. } => MgStatus::Parse,
        Error::DimensionMismatch(_) => MgStatus::DimensionMismatch,
        Error::AlgebraMismatch => MgStatus::AlgebraMismatch,
        Error::FieldMismatch { .. } => MgStatus::FieldMismatch,
        Error::NotSubmodule => MgStatus::NotSubmodule,
        Error::NotHomomorphism => MgStatus::NotHomomorphism,
        Error::Undecided => MgStatus::Undecided,
        Error::NoLift => MgStatus::NoLift,
        Error::VectorMismatch(_) => MgStatus::VectorMismatch,
        Error::FieldTooSmall(_) => MgStatus::FieldTooSmall,
        Error::VerificationFailed(_) => MgStatus::VerificationFailed,
        Error::TooLarge(_) => MgStatus::TooLarge,
        Error::InvalidInput(_) => MgStatus::InvalidInput,
        _ => MgStatus::Other,
    }
}

struct Failure(MgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), format!("{}: {e}", e.kind()))
    }
}

fn wrong_kind(want: &str, doc: &Document) -> Failure {
    Failure(
        MgStatus::WrongKind,
        format!("expected a {want} document, got {}", doc.kind()),
    )
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MgStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(MgStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(MgStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn doc<'a>(d: *const MgDocument) -> Result<&'a Document, Failure> {
    d.as_ref()
        .map(|h| &h.doc)
        .ok_or_else(|| Failure(MgStatus::NullPointer, "null document".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(MgStatus::NullPointer, "null output pointer".into()))
}

fn representation(d: &Document) -> Result<modegen::algebra::Representation, Failure> {
    match d {
        Document::Representation(r) => Ok(r.clone()),
        other => Err(wrong_kind("representation", other)),
    }
}

fn boxed(doc: Document) -> *mut MgDocument {
    Box::into_raw(Box::new(MgDocument { doc }))
}

/// Message for the most recent failed call on this thread, or null.
/// The pointer stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn mg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses one JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_doc` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_document_parse(
    json: *const c_char,
    out_doc: *mut *mut MgDocument,
) -> MgStatus {
    guard(|| {
        let slot = out(out_doc)?;
        *slot = boxed(io::parse(text(json)?)?);
        Ok(())
    })
}

/// Reads and parses a document file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out_doc` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_document_read(
    path: *const c_char,
    out_doc: *mut *mut MgDocument,
) -> MgStatus {
    guard(|| {
        let slot = out(out_doc)?;
        let path = text(path)?;
        let json = std::fs::read_to_string(path)
            .map_err(|e| Failure(MgStatus::Io, format!("{path}: {e}")))?;
        *slot = boxed(io::parse(&json)?);
        Ok(())
    })
}

/// # Safety
/// `doc` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mg_document_free(doc: *mut MgDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Canonical single-line text of the document; free with [`mg_string_free`].
///
/// # Safety
/// `d` must be a live document and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_document_print(
    d: *const MgDocument,
    out_json: *mut *mut c_char,
) -> MgStatus {
    guard(|| {
        let slot = out(out_json)?;
        let s = CString::new(io::print(doc(d)?))
            .map_err(|e| Failure(MgStatus::Other, e.to_string()))?;
        *slot = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The document kind, e.g. `"certificate"`. Static storage; never null for a live document.
///
/// # Safety
/// `d` must be a live document or null.
#[no_mangle]
pub unsafe extern "C" fn mg_document_kind(d: *const MgDocument) -> *const c_char {
    let kind = match d.as_ref().map(|h| h.doc.kind()) {
        Some("algebra") => c"algebra",
        Some("representation") => c"representation",
        Some("map") => c"map",
        Some("submodule") => c"submodule",
        Some("certificate") => c"certificate",
        Some("ladder") => c"ladder",
        Some("series") => c"series",
        Some(_) => c"composition-vector",
        None => return ptr::null(),
    };
    kind.as_ptr()
}

/// Re-checks every invariant of the document, ladders and certificates included.
///
/// # Safety
/// `d` must be a live document and `out_valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_document_validate(
    d: *const MgDocument,
    out_valid: *mut bool,
) -> MgStatus {
    guard(|| {
        let slot = out(out_valid)?;
        *slot = doc(d)?.validate().is_valid();
        Ok(())
    })
}

/// `[M, N]`, the dimension of the homomorphism space.
///
/// # Safety
/// `m`, `n` must be live representation documents and `out_dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_hom_dim(
    m: *const MgDocument,
    n: *const MgDocument,
    out_dim: *mut usize,
) -> MgStatus {
    guard(|| {
        let slot = out(out_dim)?;
        *slot = hom_dim(&representation(doc(m)?)?, &representation(doc(n)?)?)?;
        Ok(())
    })
}

/// `[N, N] - [M, M]`.
///
/// # Safety
/// `m`, `n` must be live representation documents and `out_codim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_codim(
    m: *const MgDocument,
    n: *const MgDocument,
    out_codim: *mut i64,
) -> MgStatus {
    guard(|| {
        let slot = out(out_codim)?;
        *slot = codim(&representation(doc(m)?)?, &representation(doc(n)?)?)?;
        Ok(())
    })
}

/// Isomorphism test; `Undecided` is reported as a status, not as `false`.
///
/// # Safety
/// `m`, `n` must be live representation documents and `out_iso` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_is_isomorphic(
    m: *const MgDocument,
    n: *const MgDocument,
    seed: u64,
    out_iso: *mut bool,
) -> MgStatus {
    guard(|| {
        let slot = out(out_iso)?;
        let opts = SearchOptions {
            seed,
            ..SearchOptions::default()
        };
        *slot = is_isomorphic(&representation(doc(m)?)?, &representation(doc(n)?)?, opts)?
            .is_isomorphic();
        Ok(())
    })
}

/// Whether an invertible upper-triangular intertwiner exists between two triangular representations.
///
/// # Safety
/// `a`, `b` must be live representation documents and `out_iso` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_series_isomorphic(
    a: *const MgDocument,
    b: *const MgDocument,
    out_iso: *mut bool,
) -> MgStatus {
    guard(|| {
        let slot = out(out_iso)?;
        let ta = TriangularRep::new(representation(doc(a)?)?)?;
        let tb = TriangularRep::new(representation(doc(b)?)?)?;
        *slot = series_isomorphic(&ta, &tb, true)?.is_isomorphic();
        Ok(())
    })
}

/// Pushes a submodule of `M` through a certificate, returning the certificate for `M' <=deg N'`.
///
/// # Safety
/// `cert` and `sub` must be live documents and `out_doc` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_push_submodule(
    cert: *const MgDocument,
    sub: *const MgDocument,
    out_doc: *mut *mut MgDocument,
) -> MgStatus {
    guard(|| {
        let slot = out(out_doc)?;
        let c = match doc(cert)? {
            Document::Certificate(c) => c,
            other => return Err(wrong_kind("certificate", other)),
        };
        let s = doc(sub)?.clone().into_submodule()?;
        *slot = boxed(push_submodule(c, &s)?.certificate.into());
        Ok(())
    })
}
