//! C ABI over the ordinal, transfinite-list and evaluation engine.
//!
//! Every function returns a [`ListindStatus`]. Results go through out-pointers,
//! which are written only on success. Handles are opaque and owned by the
//! caller; release them with the matching `_free` function. On failure the
//! message for the calling thread is available from [`listind_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use listind::logic::{parse_assignment, parse_formula};
use listind::models::Model;
use listind::transfinite::TransfiniteList;
use listind::Ordinal;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListindStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    Evaluation = 5,
    Panic = 6,
}

/// Ordinal below ω^ω.
pub struct ListindOrdinal(Ordinal);

/// Transfinite list of length below ω^ω.
pub struct ListindList(TransfiniteList);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ListindStatus, String);

fn fail(status: ListindStatus, message: impl ToString) -> Failure {
    Failure(status, message.to_string())
}

fn set_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("interior NULs removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ListindStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            ListindStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(Some(message));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            ListindStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(ListindStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(ListindStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(ListindStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(ListindStatus::NullPointer, "null out-pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| fail(ListindStatus::Panic, e))?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn listind_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned through an out-pointer. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn listind_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses Cantor normal form or an ordinal expression, e.g. `w^2*3+w+1`.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_parse(src: *const c_char, out: *mut *mut ListindOrdinal) -> ListindStatus {
    guard(|| {
        let o: Ordinal = text(src)?.parse().map_err(|e| fail(ListindStatus::Parse, e))?;
        put(out, Box::into_raw(Box::new(ListindOrdinal(o))))
    })
}

/// # Safety
/// `o` must be NULL or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_free(o: *mut ListindOrdinal) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// `a + b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_add(
    a: *const ListindOrdinal,
    b: *const ListindOrdinal,
    out: *mut *mut ListindOrdinal,
) -> ListindStatus {
    guard(|| {
        let r = handle(a)?.0.add(&handle(b)?.0);
        put(out, Box::into_raw(Box::new(ListindOrdinal(r))))
    })
}

/// `a · b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_mul(
    a: *const ListindOrdinal,
    b: *const ListindOrdinal,
    out: *mut *mut ListindOrdinal,
) -> ListindStatus {
    guard(|| {
        let r = handle(a)?.0.mul(&handle(b)?.0);
        put(out, Box::into_raw(Box::new(ListindOrdinal(r))))
    })
}

/// The unique `c` with `b + c = a`; `OUT_OF_RANGE` when `b > a`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_sub_left(
    a: *const ListindOrdinal,
    b: *const ListindOrdinal,
    out: *mut *mut ListindOrdinal,
) -> ListindStatus {
    guard(|| {
        let r = handle(a)?.0.sub_left(&handle(b)?.0).map_err(|e| fail(ListindStatus::OutOfRange, e))?;
        put(out, Box::into_raw(Box::new(ListindOrdinal(r))))
    })
}

/// Writes -1, 0 or 1.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_compare(
    a: *const ListindOrdinal,
    b: *const ListindOrdinal,
    out: *mut i32,
) -> ListindStatus {
    guard(|| put(out, handle(a)?.0.cmp(&handle(b)?.0) as i32))
}

/// Cantor normal form text; free with `listind_string_free`.
///
/// # Safety
/// `o` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_ordinal_to_string(o: *const ListindOrdinal, out: *mut *mut c_char) -> ListindStatus {
    guard(|| put_string(out, handle(o)?.0.to_string()))
}

/// Parses list literal syntax, e.g. `rep(N(0),[1]~N(4)).[2]`.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_parse(src: *const c_char, out: *mut *mut ListindList) -> ListindStatus {
    guard(|| {
        let l: TransfiniteList = text(src)?.parse().map_err(|e| fail(ListindStatus::Parse, e))?;
        put(out, Box::into_raw(Box::new(ListindList(l))))
    })
}

/// # Safety
/// `l` must be NULL or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn listind_list_free(l: *mut ListindList) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// `a ⌢ b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_concat(
    a: *const ListindList,
    b: *const ListindList,
    out: *mut *mut ListindList,
) -> ListindStatus {
    guard(|| {
        let r = handle(a)?.0.concat(&handle(b)?.0);
        put(out, Box::into_raw(Box::new(ListindList(r))))
    })
}

/// Length as an ordinal handle.
///
/// # Safety
/// `l` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_length(l: *const ListindList, out: *mut *mut ListindOrdinal) -> ListindStatus {
    guard(|| put(out, Box::into_raw(Box::new(ListindOrdinal(handle(l)?.0.length())))))
}

/// Entry at position `xi`; `OUT_OF_RANGE` when `xi` is not below the length.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_at(
    l: *const ListindList,
    xi: *const ListindOrdinal,
    out: *mut u64,
) -> ListindStatus {
    guard(|| {
        let v = handle(l)?.0.at(&handle(xi)?.0).map_err(|e| fail(ListindStatus::OutOfRange, e))?;
        put(out, v)
    })
}

/// `l ↑ beta`; `OUT_OF_RANGE` when `beta` exceeds the length.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_suffix(
    l: *const ListindList,
    beta: *const ListindOrdinal,
    out: *mut *mut ListindList,
) -> ListindStatus {
    guard(|| {
        let r = handle(l)?.0.suffix(&handle(beta)?.0).map_err(|e| fail(ListindStatus::OutOfRange, e))?;
        put(out, Box::into_raw(Box::new(ListindList(r))))
    })
}

/// Equality of the denoted sequences.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_equal(a: *const ListindList, b: *const ListindList, out: *mut bool) -> ListindStatus {
    guard(|| put(out, handle(a)?.0 == handle(b)?.0))
}

/// Canonical literal text; free with `listind_string_free`.
///
/// # Safety
/// `l` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_list_to_string(l: *const ListindList, out: *mut *mut c_char) -> ListindStatus {
    guard(|| put_string(out, handle(l)?.0.to_string()))
}

/// Truth value of a formula in a model (`m1:<step>` or `m2`) under an
/// assignment such as `X=N(0); y=3`. `assignment` may be NULL for none.
///
/// # Safety
/// Strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listind_eval(
    model: *const c_char,
    formula: *const c_char,
    assignment: *const c_char,
    out: *mut bool,
) -> ListindStatus {
    guard(|| {
        let model: Model = text(model)?.parse().map_err(|e| fail(ListindStatus::Parse, e))?;
        let phi = parse_formula(text(formula)?, &model.signature()).map_err(|e| fail(ListindStatus::Parse, e))?;
        let sigma = if assignment.is_null() { "" } else { text(assignment)? };
        let sigma = parse_assignment(sigma).map_err(|e| fail(ListindStatus::Parse, e))?;
        let v = model.eval_formula(&phi, &sigma).map_err(|e| fail(ListindStatus::Evaluation, e))?;
        put(out, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn last_error() -> String {
        let p = listind_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn null_arguments_are_reported() {
        let mut o = std::ptr::null_mut();
        let s = unsafe { listind_ordinal_parse(std::ptr::null(), &mut o) };
        assert_eq!(s, ListindStatus::NullPointer);
        assert!(o.is_null());
        assert!(last_error().contains("null"));
        let src = c("w");
        assert_eq!(unsafe { listind_ordinal_parse(src.as_ptr(), std::ptr::null_mut()) }, ListindStatus::NullPointer);
    }

    #[test]
    fn success_clears_the_error() {
        let mut o = std::ptr::null_mut();
        let bad = c("w^");
        assert_eq!(unsafe { listind_ordinal_parse(bad.as_ptr(), &mut o) }, ListindStatus::Parse);
        let good = c("w+1");
        assert_eq!(unsafe { listind_ordinal_parse(good.as_ptr(), &mut o) }, ListindStatus::Ok);
        assert!(listind_last_error().is_null());
        unsafe { listind_ordinal_free(o) };
    }

    #[test]
    fn invalid_utf8_is_rejected() {
        let bytes = [0xffu8, 0];
        let mut l = std::ptr::null_mut();
        let s = unsafe { listind_list_parse(bytes.as_ptr().cast(), &mut l) };
        assert_eq!(s, ListindStatus::InvalidUtf8);
    }
}
