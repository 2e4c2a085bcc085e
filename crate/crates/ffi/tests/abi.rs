use std::ffi::{c_char, CStr, CString};
use std::ptr::null_mut;

use listind_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn ordinal(s: &str) -> *mut ListindOrdinal {
    let mut o = null_mut();
    assert_eq!(unsafe { listind_ordinal_parse(c(s).as_ptr(), &mut o) }, ListindStatus::Ok, "{s}");
    o
}

fn list(s: &str) -> *mut ListindList {
    let mut l = null_mut();
    assert_eq!(unsafe { listind_list_parse(c(s).as_ptr(), &mut l) }, ListindStatus::Ok, "{s}");
    l
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { listind_string_free(s) };
    out
}

fn ordinal_text(o: *const ListindOrdinal) -> String {
    let mut s = null_mut();
    assert_eq!(unsafe { listind_ordinal_to_string(o, &mut s) }, ListindStatus::Ok);
    take(s)
}

#[test]
fn ordinal_arithmetic_is_not_commutative() {
    let (one, w) = (ordinal("1"), ordinal("w"));
    let (mut a, mut b) = (null_mut(), null_mut());
    unsafe {
        assert_eq!(listind_ordinal_add(one, w, &mut a), ListindStatus::Ok);
        assert_eq!(listind_ordinal_add(w, one, &mut b), ListindStatus::Ok);
    }
    assert_eq!(ordinal_text(a), ordinal_text(w));
    let mut cmp = 0;
    unsafe { listind_ordinal_compare(b, a, &mut cmp) };
    assert_eq!(cmp, 1);

    let mut d = null_mut();
    assert_eq!(unsafe { listind_ordinal_sub_left(one, w, &mut d) }, ListindStatus::OutOfRange);
    assert!(d.is_null());
    assert_eq!(unsafe { listind_ordinal_sub_left(b, w, &mut d) }, ListindStatus::Ok);
    assert_eq!(ordinal_text(d), ordinal_text(one));

    let mut p = null_mut();
    unsafe { listind_ordinal_mul(w, w, &mut p) };
    let w2 = ordinal("w^2");
    unsafe { listind_ordinal_compare(p, w2, &mut cmp) };
    assert_eq!(cmp, 0);
    for o in [one, w, a, b, d, p, w2] {
        unsafe { listind_ordinal_free(o) };
    }
}

#[test]
fn list_operations_round_trip() {
    let (n0, omega) = (list("N(0)"), list("rep(N(0))"));
    let mut cat = null_mut();
    unsafe { listind_list_concat(n0, omega, &mut cat) };
    let mut eq = false;
    unsafe { listind_list_equal(cat, omega, &mut eq) };
    assert!(eq, "N(0) absorbed by its own omega-power");

    let mut len = null_mut();
    unsafe { listind_list_length(omega, &mut len) };
    assert_eq!(ordinal_text(len), "w^2");

    let xi = ordinal("w*2+3");
    let mut v = 0u64;
    assert_eq!(unsafe { listind_list_at(omega, xi, &mut v) }, ListindStatus::Ok);
    assert_eq!(v, 3);
    assert_eq!(unsafe { listind_list_at(n0, xi, &mut v) }, ListindStatus::OutOfRange);

    let w = ordinal("w");
    let mut rest = null_mut();
    assert_eq!(unsafe { listind_list_suffix(omega, w, &mut rest) }, ListindStatus::Ok);
    unsafe { listind_list_equal(rest, omega, &mut eq) };
    assert!(eq);

    let mut s = null_mut();
    unsafe { listind_list_to_string(cat, &mut s) };
    let text = take(s);
    let back = list(&text);
    unsafe { listind_list_equal(back, cat, &mut eq) };
    assert!(eq, "{text}");

    unsafe {
        for l in [n0, omega, cat, rest, back] {
            listind_list_free(l);
        }
        for o in [len, xi, w] {
            listind_ordinal_free(o);
        }
    }
}

#[test]
fn evaluation_matches_the_models() {
    let mut v = false;
    let run = |model: &str, phi: &str, sigma: Option<&str>, v: &mut bool| {
        let sigma = sigma.map(c);
        unsafe {
            listind_eval(
                c(model).as_ptr(),
                c(phi).as_ptr(),
                sigma.as_ref().map_or(std::ptr::null(), |s| s.as_ptr()),
                v,
            )
        }
    };
    assert_eq!(run("m2", "Y ++ X = X", Some("X=rep(N(0)); Y=N(0)"), &mut v), ListindStatus::Ok);
    assert!(v);
    assert_eq!(run("m1:3", "A(X)", Some("X=N(0)"), &mut v), ListindStatus::Ok);
    assert!(!v);
    assert_eq!(run("m1:3", "A(nil)", None, &mut v), ListindStatus::Ok);
    assert!(v);
    assert_eq!(run("m1:3", "X ++ X = X", Some("X=nil"), &mut v), ListindStatus::Parse);
    assert_eq!(run("m2", "A(X)", None, &mut v), ListindStatus::Parse);
    assert!(!listind_last_error().is_null());
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/listind.h");
    let src = std::fs::read_to_string(header).unwrap();
    for f in ["listind_eval", "listind_last_error", "LISTIND_STATUS_OUT_OF_RANGE", "typedef struct ListindList"] {
        assert!(src.contains(f), "{f} missing from header");
    }
    for lang in ["c", "c++"] {
        let status = std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, header]).status();
        match status {
            Ok(s) => assert!(s.success(), "header rejected as {lang}"),
            Err(_) => eprintln!("no C compiler; skipped {lang}"),
        }
    }
}
