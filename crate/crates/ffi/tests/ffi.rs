use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use skewheyting_ffi::*;

const CHAIN2: &str = "elements: 0 1\nmeet:\n0 0\n0 1\njoin:\n0 1\n1 1\ntop: 1\nbottom: 0\n";
const N5: &str = "\
elements: 0 a b c 1
meet:
0 0 0 0 0
0 a 0 a a
0 0 b 0 b
0 a 0 c c
0 a b c 1
join:
0 a b c 1
a a 1 c 1
b 1 b 1 1
c c 1 c 1
1 1 1 1 1
top: 1
bottom: 0
";

fn parse(text: &str) -> *mut SkhAlgebra {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { skh_algebra_parse(c.as_ptr(), &mut out) }, SkhStatus::Ok);
    out
}

fn last_error() -> String {
    let p = skh_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { skh_string_free(s) };
    text
}

#[test]
fn parse_and_query() {
    let a = parse(CHAIN2);
    let mut n = 0;
    let mut v = 9;
    unsafe {
        assert_eq!(skh_algebra_size(a, &mut n), SkhStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(skh_algebra_meet(a, 0, 1, &mut v), SkhStatus::Ok);
        assert_eq!(v, 0);
        assert_eq!(skh_algebra_join(a, 0, 1, &mut v), SkhStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(skh_algebra_arrow(a, 0, 1, &mut v), SkhStatus::InvalidArgument);
        assert!(last_error().contains("no arrow"));
        assert_eq!(skh_algebra_meet(a, 2, 0, &mut v), SkhStatus::InvalidArgument);
        let mut name = ptr::null_mut();
        assert_eq!(skh_algebra_name(a, 1, &mut name), SkhStatus::Ok);
        assert_eq!(take(name), "1");
        skh_algebra_free(a);
    }
}

#[test]
fn round_trips_text() {
    let a = parse(CHAIN2);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(skh_algebra_to_text(a, &mut s), SkhStatus::Ok);
        assert_eq!(take(s), CHAIN2);
        skh_algebra_free(a);
    }
}

#[test]
fn derive_and_verify() {
    let a = parse(CHAIN2);
    let mut d = ptr::null_mut();
    let mut v = 9;
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(skh_algebra_derive_arrow(a, &mut d), SkhStatus::Ok);
        for (x, y, want) in [(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 1)] {
            assert_eq!(skh_algebra_arrow(d, x, y, &mut v), SkhStatus::Ok);
            assert_eq!(v, want, "{x} -> {y}");
        }
        assert_eq!(skh_algebra_verify(d, SkhFormat::Machine, &mut report), SkhStatus::Ok);
        let text = take(report);
        assert!(text.starts_with("artifact=skewheyting"));
        assert!(text.ends_with("verdict=PASS\n"), "{text}");
        skh_algebra_free(d);
        skh_algebra_free(a);
    }
}

#[test]
fn property_failures_carry_a_report() {
    let a = parse(N5);
    let mut d = ptr::null_mut();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(skh_algebra_derive_arrow(a, &mut d), SkhStatus::PropertyFails);
        assert!(d.is_null());
        let req = CString::new("distributive, skew-lattice").unwrap();
        assert_eq!(
            skh_algebra_check(a, req.as_ptr(), SkhFormat::Text, &mut report),
            SkhStatus::PropertyFails
        );
        let text = take(report);
        assert!(text.contains("check distributive: fails"), "{text}");
        assert!(text.ends_with("VERDICT: FAIL\n"));
        let bad = CString::new("no-such-property").unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(
            skh_algebra_check(a, bad.as_ptr(), SkhFormat::Text, &mut none),
            SkhStatus::InvalidArgument
        );
        assert!(none.is_null());
        assert!(last_error().contains("unknown property"));
        skh_algebra_free(a);
    }
}

#[test]
fn errors_and_null_pointers() {
    let mut out = ptr::null_mut();
    let bad = CString::new("elements: a\nmeet:\nz\n").unwrap();
    unsafe {
        assert_eq!(skh_algebra_parse(bad.as_ptr(), &mut out), SkhStatus::ParseError);
        assert!(last_error().contains("line 3"), "{}", last_error());
        assert_eq!(skh_algebra_parse(ptr::null(), &mut out), SkhStatus::NullPointer);
        let mut n = 0;
        assert_eq!(skh_algebra_size(ptr::null(), &mut n), SkhStatus::NullPointer);
        let a = parse(CHAIN2);
        assert_eq!(skh_algebra_size(a, ptr::null_mut()), SkhStatus::NullPointer);
        assert_eq!(skh_algebra_size(a, &mut n), SkhStatus::Ok);
        assert!(skh_last_error_message().is_null());
        skh_algebra_free(a);
        skh_algebra_free(ptr::null_mut());
        skh_string_free(ptr::null_mut());
    }
}

#[test]
fn partial_function_model() {
    let mut a = ptr::null_mut();
    let mut n = 0;
    unsafe {
        assert_eq!(skh_model_partial_functions(2, 2, &mut a), SkhStatus::Ok);
        assert_eq!(skh_algebra_size(a, &mut n), SkhStatus::Ok);
        assert_eq!(n, 9);
        skh_algebra_free(a);
        assert_eq!(skh_model_partial_functions(0, 2, &mut a), SkhStatus::PropertyFails);
    }
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(skh_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_lists_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/skewheyting.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "header lacks {f}");
    }
    assert!(header.contains("typedef struct SkhAlgebra SkhAlgebra;"));
}

#[test]
fn c_program_links_against_the_shared_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libskewheyting_ffi.so");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("skh_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg("-L")
        .arg(&profile_dir)
        .arg(format!("-Wl,-rpath,{}", profile_dir.display()))
        .args(["-Wall", "-Werror", "-lskewheyting_ffi", "-o"])
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).contains("line"));
}
