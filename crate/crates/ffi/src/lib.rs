//! C ABI for braidkit.
//!
//! Objects cross the boundary as opaque heap handles that the caller frees
//! with the matching `*_free` function. Every fallible call returns a
//! [`BkStatus`]; on failure, [`bk_last_error_message`] describes the error
//! for the calling thread. Strings returned to the caller are owned by the
//! caller and released with [`bk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use braidkit::band::{conjugated_factorization, standard_factorization, BandWord};
use braidkit::braid::{self, BraidWord, StrandCount};
use braidkit::factorization::Factorization;
use braidkit::hurwitz::{self, Move, PathResult};
use braidkit::semiframe::{self, CombMap};
use braidkit::Error;

/// Result codes shared by all fallible functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed text, out-of-range index or bad JSON.
    InvalidInput = 3,
    StrandMismatch = 4,
    /// A map failed validation.
    InvalidMap = 5,
    /// An internal error; the library caught a panic.
    Internal = 6,
}

/// Opaque braid word.
pub struct BkBraid {
    word: BraidWord,
}

/// Opaque factorization (ordered tuple of braid words).
pub struct BkFactorization {
    inner: Factorization,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BkStatus {
    match e {
        Error::StrandMismatch { .. } => BkStatus::StrandMismatch,
        Error::Map(_) => BkStatus::InvalidMap,
        _ => BkStatus::InvalidInput,
    }
}

struct Fail(BkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            BkStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(BkStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BkStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BkStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s)
        .map_err(|_| Fail(BkStatus::Internal, "string holds a nul byte".into()))?
        .into_raw();
    Ok(())
}

fn strands(n: u32) -> Result<StrandCount, Fail> {
    Ok(StrandCount::new(n as u64)?)
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn bk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn bk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses whitespace-separated signed generator indices ("1 -2 1").
///
/// # Safety
/// `text_in` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_parse(
    strands_n: u32,
    text_in: *const c_char,
    out: *mut *mut BkBraid,
) -> BkStatus {
    guard(|| {
        let n = strands(strands_n)?;
        let word = braid::parse_braid(text(text_in, "text")?, n)?;
        put(out, BkBraid { word })
    })
}

/// # Safety
/// `b` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_free(b: *mut BkBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Strand count, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_strands(b: *const BkBraid) -> u32 {
    b.as_ref().map_or(0, |b| b.word.strands().get() as u32)
}

/// Number of letters, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_len(b: *const BkBraid) -> usize {
    b.as_ref().map_or(0, |b| b.word.len())
}

/// The word in text form.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_to_string(b: *const BkBraid, out: *mut *mut c_char) -> BkStatus {
    guard(|| put_string(out, get(b, "braid")?.word.to_string()))
}

/// Canonical normal-form key; equal braids have equal keys.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_normal_form_key(
    b: *const BkBraid,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| put_string(out, braid::canonical_key(&get(b, "braid")?.word)))
}

/// Writes whether `a` and `b` are the same braid.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_equal(
    a: *const BkBraid,
    b: *const BkBraid,
    out: *mut bool,
) -> BkStatus {
    guard(|| {
        let same = braid::equal(&get(a, "left")?.word, &get(b, "right")?.word)?;
        if out.is_null() {
            return Err(Fail(BkStatus::NullPointer, "output pointer is null".into()));
        }
        *out = same;
        Ok(())
    })
}

/// The product `a b` (letters of `a` first).
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_compose(
    a: *const BkBraid,
    b: *const BkBraid,
    out: *mut *mut BkBraid,
) -> BkStatus {
    guard(|| {
        let word = braid::compose(&get(a, "left")?.word, &get(b, "right")?.word)?;
        put(out, BkBraid { word })
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_inverse(a: *const BkBraid, out: *mut *mut BkBraid) -> BkStatus {
    guard(|| {
        let word = braid::inverse(&get(a, "braid")?.word);
        put(out, BkBraid { word })
    })
}

/// The conjugate `g⁻¹ x g`.
///
/// # Safety
/// `x`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_braid_conjugate(
    x: *const BkBraid,
    g: *const BkBraid,
    out: *mut *mut BkBraid,
) -> BkStatus {
    guard(|| {
        let word = braid::conjugate(&get(x, "x")?.word, &get(g, "g")?.word)?;
        put(out, BkBraid { word })
    })
}

/// Expands a band word ("3:1 2:1") into Artin generators.
///
/// # Safety
/// `text_in` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_band_expand(
    strands_n: u32,
    text_in: *const c_char,
    out: *mut *mut BkBraid,
) -> BkStatus {
    guard(|| {
        let n = strands(strands_n)?;
        let w = BandWord::parse(text(text_in, "text")?, n)?;
        put(out, BkBraid { word: w.expand() })
    })
}

/// Reads `{"strands": n, "factors": ["1 2", ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_factorization_from_json(
    json: *const c_char,
    out: *mut *mut BkFactorization,
) -> BkStatus {
    guard(|| {
        let inner = Factorization::from_json(text(json, "json")?)?;
        put(out, BkFactorization { inner })
    })
}

/// The standard factorization of the full twist, conjugated by `b` when `b`
/// is not null.
///
/// # Safety
/// `b` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_delta2_factorization(
    strands_n: u32,
    b: *const BkBraid,
    out: *mut *mut BkFactorization,
) -> BkStatus {
    guard(|| {
        let n = strands(strands_n)?;
        let inner = match b.as_ref() {
            Some(b) => conjugated_factorization(n, &b.word)?,
            None => standard_factorization(n),
        };
        put(out, BkFactorization { inner })
    })
}

/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bk_factorization_free(f: *mut BkFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of factors, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bk_factorization_len(f: *const BkFactorization) -> usize {
    f.as_ref().map_or(0, |f| f.inner.len())
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_factorization_to_json(
    f: *const BkFactorization,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| put_string(out, get(f, "factorization")?.inner.to_json()))
}

/// Canonical key of the whole tuple, compared position by position.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_factorization_tuple_key(
    f: *const BkFactorization,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| put_string(out, get(f, "factorization")?.inner.tuple_key()))
}

/// Applies Hurwitz moves in order: `k` is `R_k`, `-k` is its inverse.
///
/// # Safety
/// `f` must be a live handle; `moves` must point to `count` integers (may be
/// null when `count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_factorization_apply_moves(
    f: *const BkFactorization,
    moves: *const i64,
    count: usize,
    out: *mut *mut BkFactorization,
) -> BkStatus {
    guard(|| {
        let f = get(f, "factorization")?;
        let raw: &[i64] = if count == 0 {
            &[]
        } else if moves.is_null() {
            return Err(Fail(BkStatus::NullPointer, "moves is null".into()));
        } else {
            std::slice::from_raw_parts(moves, count)
        };
        let seq = raw
            .iter()
            .map(|&k| Move::from_int(k))
            .collect::<Result<Vec<_>, _>>()?;
        let inner = hurwitz::apply_sequence(&f.inner, &seq)?;
        put(out, BkFactorization { inner })
    })
}

/// Searches for Hurwitz moves from `source` to `target` and writes a JSON
/// report: `{"result":"found","moves":[...]}`, `{"result":"not_found",
/// "orbit_closed":bool}` or `{"result":"different_products"}`.
///
/// # Safety
/// `source`, `target` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_find_path(
    source: *const BkFactorization,
    target: *const BkFactorization,
    depth_cap: usize,
    size_cap: usize,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let (s, t) = (get(source, "source")?, get(target, "target")?);
        let report = hurwitz::search_path(&s.inner, &t.inner, depth_cap, size_cap)?;
        let value = match report.result {
            PathResult::Found(moves) => serde_json::json!({"result": "found", "moves": moves}),
            PathResult::NotFound { orbit_closed } => {
                serde_json::json!({"result": "not_found", "orbit_closed": orbit_closed})
            }
            PathResult::NotComparable => serde_json::json!({"result": "different_products"}),
        };
        put_string(out, value.to_string())
    })
}

/// Checks a map given as JSON and writes the verdict as JSON.
///
/// # Safety
/// `map_json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_semiframe_check_json(
    map_json: *const c_char,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let map: CombMap = serde_json::from_str(text(map_json, "map")?)
            .map_err(|e| Fail(BkStatus::InvalidInput, format!("map: {e}")))?;
        let verdict = semiframe::check_semiframe(&map).map_err(Error::from)?;
        put_string(
            out,
            serde_json::to_string(&verdict).expect("plain data serializes"),
        )
    })
}
