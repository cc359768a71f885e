use std::ffi::{CStr, CString};
use std::ptr;

use mvcorr_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    mvcorr_string_free(s);
    out
}

unsafe fn paper_p() -> *mut MvcorrAlgebra {
    let mut alg = ptr::null_mut();
    assert_eq!(mvcorr_algebra_builtin(c("paper-P").as_ptr(), &mut alg), MvcorrErrorCode::Ok);
    alg
}

#[test]
fn algebra_handles() {
    unsafe {
        let alg = paper_p();
        assert_eq!(mvcorr_algebra_size(alg), 5);
        assert_eq!(take(mvcorr_algebra_fingerprint(alg)).len(), 64);
        mvcorr_algebra_free(alg);

        let json = c(r#"{"elements":["0","h","1"],"leq":[["0","h"],["h","1"]]}"#);
        let mut chain = ptr::null_mut();
        assert_eq!(mvcorr_algebra_load_json(json.as_ptr(), &mut chain), MvcorrErrorCode::Ok);
        assert_eq!(mvcorr_algebra_size(chain), 3);
        mvcorr_algebra_free(chain);

        assert_eq!(mvcorr_algebra_size(ptr::null()), 0);
        mvcorr_algebra_free(ptr::null_mut());
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(mvcorr_algebra_builtin(c("nope").as_ptr(), &mut alg), MvcorrErrorCode::Algebra);
        assert!(alg.is_null());
        assert!(take(mvcorr_last_error()).contains("nope"));
        assert_eq!(mvcorr_algebra_builtin(ptr::null(), &mut alg), MvcorrErrorCode::NullArgument);

        let json = c(r#"{"elements":["0","a","b","1"],"leq":[["0","a"],["0","b"],["a","1"]]}"#);
        assert_eq!(mvcorr_algebra_load_json(json.as_ptr(), &mut alg), MvcorrErrorCode::Algebra);

        let alg = paper_p();
        let mut res = ptr::null_mut();
        assert_eq!(mvcorr_alba_run(alg, c("p ->").as_ptr(), c("1").as_ptr(), &mut res), MvcorrErrorCode::Parse);
        assert_eq!(mvcorr_alba_run(alg, c("p").as_ptr(), c("delta").as_ptr(), &mut res), MvcorrErrorCode::UnknownValue);
        assert_eq!(mvcorr_alba_run(alg, c("<i>p -> p").as_ptr(), c("1").as_ptr(), &mut res), MvcorrErrorCode::Unsupported);
        assert!(res.is_null());
        let mut text = ptr::null_mut();
        assert_eq!(mvcorr_svb(alg, c("[]<>p -> <>[]p").as_ptr(), &mut text), MvcorrErrorCode::Unsupported);

        assert_eq!(mvcorr_algebra_size(alg), 5);
        assert!(mvcorr_last_error().is_null() || !take(mvcorr_last_error()).is_empty());
        let mut alg2 = ptr::null_mut();
        assert_eq!(mvcorr_algebra_builtin(c("bool2").as_ptr(), &mut alg2), MvcorrErrorCode::Ok);
        assert!(mvcorr_last_error().is_null());
        mvcorr_algebra_free(alg2);
        mvcorr_algebra_free(alg);
    }
}

#[test]
fn alba_through_the_abi() {
    unsafe {
        let alg = paper_p();
        let mut res = ptr::null_mut();
        assert_eq!(mvcorr_alba_run(alg, c("p -> <>p").as_ptr(), c("gamma").as_ptr(), &mut res), MvcorrErrorCode::Ok);
        assert_eq!(mvcorr_alba_status(res), MvcorrAlbaStatus::Success);
        assert_eq!(take(mvcorr_alba_correspondent(res)), "a <= R(x,x)");
        let json: serde_json::Value = serde_json::from_str(&take(mvcorr_alba_json(res))).unwrap();
        assert_eq!(json["status"], "success");
        assert_eq!(json["branches"][0]["system"], serde_json::json!(["#i0 <= @a", "<>#i0 <= $m0"]));
        mvcorr_alba_free(res);

        let mut stuck = ptr::null_mut();
        let s = c("[](p \\/ q) <= <>(p /\\ q)");
        assert_eq!(mvcorr_alba_run(alg, s.as_ptr(), c("1").as_ptr(), &mut stuck), MvcorrErrorCode::Ok);
        assert_eq!(mvcorr_alba_status(stuck), MvcorrAlbaStatus::Failure);
        assert!(mvcorr_alba_correspondent(stuck).is_null());
        mvcorr_alba_free(stuck);
        mvcorr_algebra_free(alg);
    }
}

#[test]
fn classify_svb_and_verify() {
    unsafe {
        let alg = paper_p();
        let mut json = ptr::null_mut();
        assert_eq!(mvcorr_classify(alg, c("[](p \\/ q) <= <>(p /\\ q)").as_ptr(), &mut json), MvcorrErrorCode::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["verdict"], "not inductive");

        let mut text = ptr::null_mut();
        assert_eq!(mvcorr_svb(alg, c("p -> []<>p").as_ptr(), &mut text), MvcorrErrorCode::Ok);
        assert_eq!(take(text), "A y1. (R(x,y1) -> R(y1,x))");

        let sizes = [1usize, 2];
        let mut pass = false;
        let code = mvcorr_verify(alg, c("~p \\/ <>p").as_ptr(), c("1").as_ptr(), c("@0").as_ptr(), sizes.as_ptr(), 2, &mut pass);
        assert_eq!(code, MvcorrErrorCode::Ok);
        assert!(pass);
        let code =
            mvcorr_verify(alg, c("p -> <>p").as_ptr(), c("1").as_ptr(), c("symmetry").as_ptr(), sizes.as_ptr(), 2, &mut pass);
        assert_eq!(code, MvcorrErrorCode::Ok);
        assert!(!pass);
        let code = mvcorr_verify(alg, c("p").as_ptr(), c("1").as_ptr(), c("R(y,y)").as_ptr(), sizes.as_ptr(), 2, &mut pass);
        assert_eq!(code, MvcorrErrorCode::Oracle);
        mvcorr_algebra_free(alg);
    }
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mvcorr.h")).unwrap();
    for name in [
        "typedef struct MvcorrAlgebra MvcorrAlgebra;",
        "typedef struct MvcorrAlbaResult MvcorrAlbaResult;",
        "MvcorrErrorCode_Ok = 0",
        "mvcorr_algebra_builtin(",
        "mvcorr_algebra_load_json(",
        "mvcorr_alba_run(",
        "mvcorr_alba_json(",
        "mvcorr_classify(",
        "mvcorr_svb(",
        "mvcorr_verify(",
        "mvcorr_string_free(",
        "mvcorr_last_error(",
    ] {
        assert!(h.contains(name), "{name}");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libmvcorr_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = env!("CARGO_MANIFEST_DIR");
    let bin = std::env::temp_dir().join(format!("mvcorr_smoke_{}", std::process::id()));
    let status = std::process::Command::new("cc")
        .arg(format!("{dir}/tests/c/smoke.c"))
        .arg(format!("-I{dir}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_file(&bin);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "a <= R(x,x)\n");
}
