//! C ABI over `bs-edt0l`.
//!
//! Every fallible call returns a [`BsStatus`] and writes its result through
//! an out pointer. Handles and strings returned to the caller are owned by
//! the caller and released with the matching `*_free` function. After a
//! failure, [`bs_last_error`] describes it until the next call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bs_edt0l::lsystem::{enumerate, membership, Bounds, Et0lSystem, Membership};
use bs_edt0l::normal_form::{frac_of, nf_of};
use bs_edt0l::oracle::Verdict;
use bs_edt0l::verify::{verify, Params, Target};
use bs_edt0l::{eval_word, Error, GroupElement};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed element, word, case or parameter.
    InvalidInput = 3,
    InvalidSystem = 4,
    /// The generator could not produce a system for these parameters.
    Construction = 5,
    Io = 6,
    Panic = 7,
}

/// Outcome of [`bs_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsVerdict {
    Equal = 0,
    Mismatch = 1,
    Inconclusive = 3,
}

/// An element of BS(1,k).
pub struct BsElement(GroupElement);

/// An ET0L system.
pub struct BsSystem(Et0lSystem);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BsStatus {
    match e {
        Error::InvalidSystem(_) | Error::Control { .. } | Error::Json(_) => BsStatus::InvalidSystem,
        Error::FittingFailure(_) | Error::InadmissibleCase(_) => BsStatus::Construction,
        Error::Io(_) => BsStatus::Io,
        _ => BsStatus::InvalidInput,
    }
}

/// Run `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), BsStatus>) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BsStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            BsStatus::Panic
        }
    }
}

fn fail(e: Error) -> BsStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> BsStatus {
    set_error("null pointer argument");
    BsStatus::NullPointer
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, BsStatus> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        BsStatus::InvalidUtf8
    })
}

unsafe fn opt_text<'a>(p: *const c_char) -> Result<Option<&'a str>, BsStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p).map(Some)
    }
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), BsStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), BsStatus> {
    let c = CString::new(s).map_err(|_| fail(Error::InvalidParameter("string holds a NUL byte".into())))?;
    put(out, c.into_raw())
}

unsafe fn element<'a>(p: *const BsElement) -> Result<&'a GroupElement, BsStatus> {
    p.as_ref().map(|e| &e.0).ok_or_else(null)
}

unsafe fn system<'a>(p: *const BsSystem) -> Result<&'a Et0lSystem, BsStatus> {
    p.as_ref().map(|s| &s.0).ok_or_else(null)
}

unsafe fn put_element(out: *mut *mut BsElement, g: GroupElement) -> Result<(), BsStatus> {
    put(out, Box::into_raw(Box::new(BsElement(g))))
}

/// The message of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn bs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an element written `(r,u)` or as a word over `a A b B`.
///
/// # Safety
/// `input` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_parse(k: u32, input: *const c_char, out: *mut *mut BsElement) -> BsStatus {
    guard(|| {
        let s = text(input)?.trim();
        let g = if s.starts_with('(') { GroupElement::parse(k, s) } else { eval_word(k, s) }.map_err(fail)?;
        put_element(out, g)
    })
}

/// # Safety
/// `e` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_element_free(e: *mut BsElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `x y`.
///
/// # Safety
/// `x`, `y` are live handles of the same k; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_mul(x: *const BsElement, y: *const BsElement, out: *mut *mut BsElement) -> BsStatus {
    guard(|| {
        let (x, y) = (element(x)?, element(y)?);
        if x.k() != y.k() {
            return Err(fail(Error::InvalidParameter("elements of different groups".into())));
        }
        put_element(out, x.mul(y))
    })
}

/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_inv(x: *const BsElement, out: *mut *mut BsElement) -> BsStatus {
    guard(|| put_element(out, element(x)?.inv()))
}

/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_pow(x: *const BsElement, n: i64, out: *mut *mut BsElement) -> BsStatus {
    guard(|| put_element(out, element(x)?.pow(n)))
}

/// # Safety
/// `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_equal(x: *const BsElement, y: *const BsElement, out: *mut bool) -> BsStatus {
    guard(|| put(out, element(x)? == element(y)?))
}

/// `(r,u)`.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_to_string(x: *const BsElement, out: *mut *mut c_char) -> BsStatus {
    guard(|| put_string(out, element(x)?.to_string()))
}

/// The normal form word.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_nf(x: *const BsElement, out: *mut *mut c_char) -> BsStatus {
    guard(|| put_string(out, nf_of(element(x)?)))
}

/// The fractional form.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_element_frac(x: *const BsElement, out: *mut *mut c_char) -> BsStatus {
    guard(|| put_string(out, frac_of(element(x)?)))
}

/// Generate a named system. `r`, `g`, `h` and `sign_case` are used by the
/// systems that take them; strings may be null when unused.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_system_build(
    name: *const c_char,
    k: u32,
    r: i64,
    g: *const c_char,
    h: *const c_char,
    sign_case: *const c_char,
    out: *mut *mut BsSystem,
) -> BsStatus {
    guard(|| {
        let t = Target::named(k, text(name)?, Some(r), opt_text(g)?, opt_text(h)?, opt_text(sign_case)?).map_err(fail)?;
        let sys = t.build(k).map_err(fail)?;
        put(out, Box::into_raw(Box::new(BsSystem(sys))))
    })
}

/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_system_from_json(json: *const c_char, out: *mut *mut BsSystem) -> BsStatus {
    guard(|| {
        let sys = Et0lSystem::from_json(text(json)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(BsSystem(sys))))
    })
}

/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_system_to_json(s: *const BsSystem, out: *mut *mut c_char) -> BsStatus {
    guard(|| put_string(out, system(s)?.to_json()))
}

/// # Safety
/// `s` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_system_free(s: *mut BsSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The words of length at most `max_len`, newline-separated in shortlex
/// order. `exhaustive` is false when the control depth cut the search.
///
/// # Safety
/// `s` is a live handle; `out`, `exhaustive` are writable.
#[no_mangle]
pub unsafe extern "C" fn bs_system_enumerate(
    s: *const BsSystem,
    max_len: usize,
    depth: usize,
    slack: usize,
    out: *mut *mut c_char,
    exhaustive: *mut bool,
) -> BsStatus {
    guard(|| {
        let found = enumerate(system(s)?, Bounds::new(max_len, depth, slack)).map_err(fail)?;
        let mut words: Vec<String> = found.word_set().into_iter().collect();
        words.sort_by(|a, b| bs_edt0l::oracle::shortlex(a, b));
        put(exhaustive, found.exhaustive_up_to_len)?;
        put_string(out, words.join("\n"))
    })
}

/// Whether the system generates `word`. On a yes, `witness` receives the
/// control word (table ids separated by spaces), else null.
///
/// # Safety
/// `s` is a live handle; `word` is NUL-terminated; out pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn bs_system_membership(
    s: *const BsSystem,
    word: *const c_char,
    depth: usize,
    slack: usize,
    member: *mut bool,
    witness: *mut *mut c_char,
) -> BsStatus {
    guard(|| match membership(system(s)?, text(word)?, depth, slack).map_err(fail)? {
        Membership::Yes(w) => {
            put(member, true)?;
            put_string(witness, w.join(" "))
        }
        Membership::NoUpToDepth { .. } => {
            put(member, false)?;
            put(witness, ptr::null_mut())
        }
    })
}

/// Compare a named system with the oracle; arguments as for
/// [`bs_system_build`]. Fractional triples use `|r| ≤ 1` and 3 digits.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bs_verify(
    name: *const c_char,
    k: u32,
    r: i64,
    g: *const c_char,
    h: *const c_char,
    sign_case: *const c_char,
    max_len: usize,
    depth: usize,
    slack: usize,
    out: *mut BsVerdict,
) -> BsStatus {
    guard(|| {
        let t = Target::named(k, text(name)?, Some(r), opt_text(g)?, opt_text(h)?, opt_text(sign_case)?).map_err(fail)?;
        let params = Params { k, max_len, depth, slack, ..Params::default() };
        let report = verify(&t, &params, None).map_err(fail)?;
        put(
            out,
            match report.verdict {
                Verdict::Equal => BsVerdict::Equal,
                Verdict::Mismatch => BsVerdict::Mismatch,
                Verdict::Inconclusive => BsVerdict::Inconclusive,
            },
        )
    })
}
