use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use finspace_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fs_last_error()) }.to_str().unwrap().to_string()
}

fn parse(text: &str) -> *mut FsModel {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { fs_model_parse(c.as_ptr(), &mut m) }, FsStatus::FsOk, "{}", last_error());
    m
}

#[test]
fn model_round_trip_and_lookup() {
    let m = parse("space S { points 2; opens {0 1} {} {1} }\nmap i : S -> S { 0->0 1->1 }");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { fs_model_to_dsl(m, &mut text) }, FsStatus::FsOk);
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    assert_eq!(s, "space S { points 2; opens {} {1} {0 1} }\nmap i : S -> S { 0->0 1->1 }\n");
    unsafe { fs_string_free(text) };

    let name = CString::new("S").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { fs_model_space(m, name.as_ptr(), &mut x) }, FsStatus::FsOk);
    let (mut n, mut leq, mut t0) = (0usize, false, false);
    unsafe {
        assert_eq!(fs_space_points(x, &mut n), FsStatus::FsOk);
        assert_eq!(fs_space_leq(x, 0, 1, &mut leq), FsStatus::FsOk);
        assert_eq!(fs_space_is_t0(x, &mut t0), FsStatus::FsOk);
        assert_eq!(fs_space_leq(x, 0, 7, &mut leq), FsStatus::FsInvalidArgument);
    }
    assert!(n == 2 && t0);
    let missing = CString::new("i2").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fs_model_map(m, missing.as_ptr(), &mut f) }, FsStatus::FsNotFound);
    assert!(last_error().contains("i2"));
    unsafe {
        fs_space_free(x);
        fs_model_free(m);
    }
}

#[test]
fn pushout_of_the_point_into_sierpinski() {
    let mut s = ptr::null_mut();
    let mut p = ptr::null_mut();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(fs_space_sierpinski(&mut s), FsStatus::FsOk);
        assert_eq!(fs_space_from_opens(1, [0u32, 1].as_ptr(), 2, &mut p), FsStatus::FsOk);
        assert_eq!(fs_map_new(p, s, [0usize].as_ptr(), 1, &mut m), FsStatus::FsOk);
        let (mut apex, mut u, mut v) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(fs_pushout(m, m, &mut apex, &mut u, &mut v), FsStatus::FsOk);
        let mut n = 0;
        fs_space_points(apex, &mut n);
        assert_eq!(n, 3);
        assert_eq!(fs_pushout(m, m, ptr::null_mut(), &mut u, &mut v), FsStatus::FsNullArgument);
        for f in [m, u, v] {
            fs_map_free(f);
        }
        for x in [s, p, apex] {
            fs_space_free(x);
        }
    }
}

#[test]
fn errors_carry_status_and_message() {
    let bad = CString::new("space B { points 2; opens {} {0} }").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { fs_model_parse(bad.as_ptr(), &mut m) }, FsStatus::FsParseError);
    assert!(last_error().starts_with("line 1, column 1"));
    assert!(m.is_null());
    let mut x = ptr::null_mut();
    let status = unsafe { fs_space_from_opens(2, [1u32].as_ptr(), 1, &mut x) };
    assert_eq!(status, FsStatus::FsInvalidArgument);
    let mut report = ptr::null_mut();
    let name = CString::new("no-such-suite").unwrap();
    assert_eq!(unsafe { fs_run_suite(name.as_ptr(), -1, &mut report) }, FsStatus::FsUnknownSuite);
    // success clears the message
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fs_space_sierpinski(&mut s) }, FsStatus::FsOk);
    assert_eq!(last_error(), "");
    unsafe { fs_space_free(s) };
}

#[test]
fn header_compiles_and_links_from_c() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/finspace.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["fs_model_parse", "fs_pushout", "fs_run_suite", "fs_last_error", "FS_BUDGET_EXCEEDED"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libfinspace_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("finspace_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
