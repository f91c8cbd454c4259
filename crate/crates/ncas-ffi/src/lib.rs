//! C ABI for building, verifying and tabulating the scheme families.
//!
//! Every call returns an [`NcasStatus`]; on failure the structured error is kept
//! per thread and is available through [`ncas_last_error`]. Handles are opaque
//! and owned by the caller until passed to the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncas::algebra::FiniteField;
use ncas::builders::{bgw_scheme, gh_scheme};
use ncas::cli::{error_json, Provenance, SchemeFile};
use ncas::error::{Error, ErrorClass};
use ncas::schemes::{AssociationScheme, SchemeClass};
use ncas::spectra::{wedderburn_bgw, wedderburn_gh, Eigensystem};

/// Bumped on any incompatible change of the exported signatures.
pub const NCAS_ABI_VERSION: u32 = 1;

static VERSION: &[u8] = concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes();

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcasStatus {
    Ok = 0,
    Usage = 1,
    Verification = 2,
    Precondition = 3,
    NullPointer = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcasClassification {
    Symmetric = 0,
    CommutativeNonsymmetric = 1,
    Noncommutative = 2,
}

/// A verified association scheme.
pub struct NcasScheme {
    scheme: AssociationScheme,
    provenance: Option<Provenance>,
}

/// Wedderburn data of a family scheme.
pub struct NcasEigensystem {
    eig: Eigensystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(status: NcasStatus, json: String) -> NcasStatus {
    let c = CString::new(json).unwrap_or_else(|_| CString::new("{}").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
    status
}

fn status_of(class: ErrorClass) -> NcasStatus {
    match class {
        ErrorClass::Usage => NcasStatus::Usage,
        ErrorClass::Verification => NcasStatus::Verification,
        ErrorClass::Precondition => NcasStatus::Precondition,
    }
}

fn fail(status: NcasStatus, message: &str) -> NcasStatus {
    set_error(status, serde_json::json!({ "error": format!("{status:?}"), "message": message }).to_string())
}

/// Runs `f`, maps its error into a status and traps panics.
fn guard(f: impl FnOnce() -> Result<(), NcasStatusOr>) -> NcasStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcasStatus::Ok,
        Ok(Err(NcasStatusOr::Lib(e))) => set_error(status_of(e.class()), error_json(&e).to_string()),
        Ok(Err(NcasStatusOr::Status(s, msg))) => fail(s, &msg),
        Err(_) => fail(NcasStatus::Panic, "panic inside ncas"),
    }
}

enum NcasStatusOr {
    Lib(Error),
    Status(NcasStatus, String),
}

impl<E: Into<Error>> From<E> for NcasStatusOr {
    fn from(e: E) -> Self {
        NcasStatusOr::Lib(e.into())
    }
}

fn null(what: &str) -> NcasStatusOr {
    NcasStatusOr::Status(NcasStatus::NullPointer, format!("{what} is null"))
}

fn out_of_range(what: String) -> NcasStatusOr {
    NcasStatusOr::Status(NcasStatus::OutOfRange, what)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), NcasStatusOr> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, NcasStatusOr> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

#[no_mangle]
pub extern "C" fn ncas_abi_version() -> u32 {
    NCAS_ABI_VERSION
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn ncas_version() -> *const c_char {
    VERSION.as_ptr().cast()
}

/// JSON description of the last error on this thread, or null.
/// The string is a copy and must be released with [`ncas_string_free`].
#[no_mangle]
pub extern "C" fn ncas_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ncas_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds and verifies the BGW scheme for `GF(q)` and `Z_m`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ncas_bgw_scheme_new(q: usize, m: usize, out: *mut *mut NcasScheme) -> NcasStatus {
    guard(|| {
        let b = bgw_scheme(q, m)?;
        let provenance = Some(Provenance { family: "bgw".into(), q: Some(q), m: Some(m), seed: None });
        put(out, Box::into_raw(Box::new(NcasScheme { scheme: b.scheme, provenance })))
    })
}

/// Builds and verifies the GH scheme for `GF(q)`, `q` odd.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ncas_gh_scheme_new(q: usize, out: *mut *mut NcasScheme) -> NcasStatus {
    guard(|| {
        let g = gh_scheme(q)?;
        let provenance = Some(Provenance { family: "gh".into(), q: Some(q), m: None, seed: None });
        put(out, Box::into_raw(Box::new(NcasScheme { scheme: g.scheme, provenance })))
    })
}

/// Parses a scheme file and re-verifies every axiom.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_from_json(json: *const c_char, out: *mut *mut NcasScheme) -> NcasStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| Error::Usage(e.to_string()))?;
        let file: SchemeFile = serde_json::from_str(text).map_err(ncas::error::FileError::from)?;
        let scheme = file.to_scheme()?;
        put(out, Box::into_raw(Box::new(NcasScheme { scheme, provenance: file.provenance })))
    })
}

/// Serializes a scheme; release the string with [`ncas_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_to_json(s: *const NcasScheme, out: *mut *mut c_char) -> NcasStatus {
    guard(|| {
        let s = deref(s, "scheme")?;
        let f = SchemeFile::from_scheme(&s.scheme, s.provenance.clone());
        let text = serde_json::to_string(&f).map_err(ncas::error::FileError::from)?;
        put(out, to_c_string(text))
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_free(s: *mut NcasScheme) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_vertices(s: *const NcasScheme, out: *mut usize) -> NcasStatus {
    guard(|| put(out, deref(s, "scheme")?.scheme.vertices()))
}

/// Number of relations, identity included.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_rank(s: *const NcasScheme, out: *mut usize) -> NcasStatus {
    guard(|| put(out, deref(s, "scheme")?.scheme.rank()))
}

/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_classification(s: *const NcasScheme, out: *mut NcasClassification) -> NcasStatus {
    guard(|| {
        let c = match deref(s, "scheme")?.scheme.classify() {
            SchemeClass::Symmetric => NcasClassification::Symmetric,
            SchemeClass::CommutativeNonsymmetric => NcasClassification::CommutativeNonsymmetric,
            SchemeClass::Noncommutative => NcasClassification::Noncommutative,
        };
        put(out, c)
    })
}

/// Intersection number `p_{ij}^k`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ncas_scheme_intersection(s: *const NcasScheme, i: usize, j: usize, k: usize, out: *mut u64) -> NcasStatus {
    guard(|| {
        let s = &deref(s, "scheme")?.scheme;
        let r = s.rank();
        if i >= r || j >= r || k >= r {
            return Err(out_of_range(format!("({i}, {j}, {k}) with rank {r}")));
        }
        put(out, s.p(i, j, k))
    })
}

/// Closed-form Wedderburn system of a BGW or GH scheme.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ncas_eigensystem_new(s: *const NcasScheme, out: *mut *mut NcasEigensystem) -> NcasStatus {
    guard(|| {
        let s = deref(s, "scheme")?;
        let p = s.provenance.as_ref().ok_or_else(|| Error::Usage("scheme has no family provenance".into()))?;
        let eig = match (p.family.as_str(), p.q, p.m) {
            ("bgw", Some(q), Some(m)) => wedderburn_bgw(&s.scheme, q, m)?,
            ("gh", Some(q), _) => wedderburn_gh(&s.scheme, &FiniteField::of_order(q as u64)?)?,
            _ => return Err(Error::Usage(format!("unknown family {:?}", p.family)).into()),
        };
        put(out, Box::into_raw(Box::new(NcasEigensystem { eig })))
    })
}

/// # Safety
/// `e` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncas_eigensystem_free(e: *mut NcasEigensystem) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `e` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ncas_eigensystem_block_count(e: *const NcasEigensystem, out: *mut usize) -> NcasStatus {
    guard(|| put(out, deref(e, "eigensystem")?.eig.blocks().len()))
}

/// Degree and multiplicity of simple block `k`.
///
/// # Safety
/// `e` must be a live handle; `degree` and `multiplicity` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ncas_eigensystem_block(
    e: *const NcasEigensystem,
    k: usize,
    degree: *mut usize,
    multiplicity: *mut usize,
) -> NcasStatus {
    guard(|| {
        let blocks = deref(e, "eigensystem")?.eig.blocks();
        let b = blocks.get(k).ok_or_else(|| out_of_range(format!("block {k} of {}", blocks.len())))?;
        put(degree, b.degree)?;
        put(multiplicity, b.multiplicity)
    })
}

/// Character table, eigenmatrices and duality report as JSON, scalars as strings.
/// Release the string with [`ncas_string_free`].
///
/// # Safety
/// `e` must be a live handle and `out` valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ncas_eigensystem_table_json(e: *const NcasEigensystem, out: *mut *mut c_char) -> NcasStatus {
    guard(|| {
        let eig = &deref(e, "eigensystem")?.eig;
        let json = serde_json::json!({
            "relations": eig.labels(),
            "blocks": eig.blocks(),
            "units": eig.unit_names(),
            "character_table": eig.character_table(),
            "p_matrix": eig.p_matrix().to_rows(),
            "q_matrix": eig.q_matrix().to_rows(),
            "duality": eig.check_pq_duality(),
        });
        put(out, to_c_string(json.to_string()))
    })
}
