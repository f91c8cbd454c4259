use std::ffi::{CStr, CString};
use std::ptr;

use ncas_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ncas_string_free(p);
    s
}

#[test]
fn version_and_abi() {
    assert_eq!(ncas_abi_version(), NCAS_ABI_VERSION);
    let v = unsafe { CStr::from_ptr(ncas_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn bgw_scheme_handle() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ncas_bgw_scheme_new(7, 3, &mut s), NcasStatus::Ok);
        let (mut v, mut r, mut p) = (0usize, 0usize, 0u64);
        assert_eq!(ncas_scheme_vertices(s, &mut v), NcasStatus::Ok);
        assert_eq!(ncas_scheme_rank(s, &mut r), NcasStatus::Ok);
        assert_eq!((v, r), (24, 6));
        assert_eq!(ncas_scheme_intersection(s, 4, 5, 2, &mut p), NcasStatus::Ok);
        assert_eq!(p, 7);
        assert_eq!(ncas_scheme_intersection(s, 6, 0, 0, &mut p), NcasStatus::OutOfRange);
        let mut c = NcasClassification::Symmetric;
        assert_eq!(ncas_scheme_classification(s, &mut c), NcasStatus::Ok);
        assert_eq!(c, NcasClassification::Noncommutative);

        let mut e = ptr::null_mut();
        assert_eq!(ncas_eigensystem_new(s, &mut e), NcasStatus::Ok);
        let mut n = 0;
        assert_eq!(ncas_eigensystem_block_count(e, &mut n), NcasStatus::Ok);
        assert_eq!(n, 3);
        let (mut d, mut m) = (0, 0);
        assert_eq!(ncas_eigensystem_block(e, 2, &mut d, &mut m), NcasStatus::Ok);
        assert_eq!((d, m), (2, 8));
        let mut js = ptr::null_mut();
        assert_eq!(ncas_eigensystem_table_json(e, &mut js), NcasStatus::Ok);
        let table: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(table["character_table"][2][0], "2");
        ncas_eigensystem_free(e);

        let mut json = ptr::null_mut();
        assert_eq!(ncas_scheme_to_json(s, &mut json), NcasStatus::Ok);
        let text = CString::new(take_string(json)).unwrap();
        let mut s2 = ptr::null_mut();
        assert_eq!(ncas_scheme_from_json(text.as_ptr(), &mut s2), NcasStatus::Ok);
        assert_eq!(ncas_scheme_intersection(s2, 4, 5, 2, &mut p), NcasStatus::Ok);
        assert_eq!(p, 7);
        ncas_scheme_free(s2);
        ncas_scheme_free(s);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ncas_bgw_scheme_new(5, 4, &mut s), NcasStatus::Precondition);
        assert!(s.is_null());
        let e: serde_json::Value = serde_json::from_str(&take_string(ncas_last_error())).unwrap();
        assert_eq!(e["error"], "SymmetryObstruction");
        assert_eq!(ncas_gh_scheme_new(3, ptr::null_mut()), NcasStatus::NullPointer);
        let mut v = 0;
        assert_eq!(ncas_scheme_vertices(ptr::null(), &mut v), NcasStatus::NullPointer);
        let bad = CString::new("{\"version\": \"ncas-scheme/0\"}").unwrap();
        assert_eq!(ncas_scheme_from_json(bad.as_ptr(), &mut s), NcasStatus::Usage);
        assert_eq!(ncas_gh_scheme_new(3, &mut s), NcasStatus::Ok);
        assert!(ncas_last_error().is_null());
        ncas_scheme_free(s);
        ncas_scheme_free(ptr::null_mut());
        ncas_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ncas.h")).unwrap();
    for name in [
        "ncas_abi_version",
        "ncas_last_error",
        "ncas_bgw_scheme_new",
        "ncas_gh_scheme_new",
        "ncas_scheme_from_json",
        "ncas_scheme_intersection",
        "ncas_eigensystem_table_json",
        "typedef struct NcasScheme NcasScheme",
        "NcasStatus_Precondition = 3",
    ] {
        assert!(h.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        "#include \"ncas.h\"\nint main(void) {\n  NcasScheme *s = 0;\n  NcasStatus st = ncas_bgw_scheme_new(7, 3, &s);\n  ncas_scheme_free(s);\n  return st == NcasStatus_Ok ? 0 : 1;\n}\n",
    )
    .unwrap();
    let out = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .output()
        .expect("a C compiler on PATH");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("ncas-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
