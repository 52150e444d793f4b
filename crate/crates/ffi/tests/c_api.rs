use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sncx_ffi::*;

const TRIANGLE: &str = r#"{"components": [{"label": "L0"}, {"label": "L1"}, {"label": "L2"}],
  "strata": [{"indices": [0, 1], "label": "P2"}, {"indices": [0, 2], "label": "P1"},
             {"indices": [1, 2], "label": "P0"}]}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sncx_last_error()) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sncx_string_free(s);
    out
}

#[test]
fn dual_complex_round_trip() {
    unsafe {
        let mut c: *mut SncxComplex = ptr::null_mut();
        assert_eq!(sncx_dual_complex(cstr(TRIANGLE).as_ptr(), &mut c), SncxStatus::Ok);
        assert_eq!(last_error(), "");
        let mut f = [0usize; 4];
        let mut len = 0;
        assert_eq!(sncx_complex_f_vector(c, f.as_mut_ptr(), f.len(), &mut len), SncxStatus::Ok);
        assert_eq!(&f[..len], &[3, 3]);
        let mut b1 = 0;
        assert_eq!(sncx_complex_betti(c, false, 1, &mut b1), SncxStatus::Ok);
        assert_eq!(b1, 1);

        let mut doc = ptr::null_mut();
        assert_eq!(sncx_complex_to_json(c, &mut doc), SncxStatus::Ok);
        let doc = take(doc);
        let mut again: *mut SncxComplex = ptr::null_mut();
        assert_eq!(sncx_complex_from_json(cstr(&doc).as_ptr(), &mut again), SncxStatus::Ok);
        let mut count = 0;
        sncx_complex_face_count(again, &mut count);
        assert_eq!(count, 6);

        let mut blown: *mut SncxComplex = ptr::null_mut();
        let mut log = ptr::null_mut();
        let script = cstr(r#"[{"case": 2, "face": "P2"}]"#);
        assert_eq!(sncx_complex_blowup(c, script.as_ptr(), &mut blown, &mut log), SncxStatus::Ok);
        assert!(take(log).contains("\"step\": 1"));
        let mut dim = 0;
        sncx_complex_dim(blown, &mut dim);
        assert_eq!(dim, 1);

        let mut cert = ptr::null_mut();
        assert_eq!(sncx_complex_certify_json(blown, 1, &mut cert), SncxStatus::Ok);
        assert!(take(cert).contains("\"verdict\": \"certified-wedge\""));

        sncx_complex_free(c);
        sncx_complex_free(again);
        sncx_complex_free(blown);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut c: *mut SncxComplex = ptr::null_mut();
        assert_eq!(sncx_complex_from_json(ptr::null(), &mut c), SncxStatus::NullArgument);
        assert_eq!(sncx_complex_from_json(cstr("{").as_ptr(), &mut c), SncxStatus::InvalidInput);
        assert!(!last_error().is_empty());
        assert!(c.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(sncx_complex_from_json(bad.as_ptr().cast(), &mut c), SncxStatus::InvalidUtf8);

        assert_eq!(sncx_dual_complex(cstr(TRIANGLE).as_ptr(), &mut c), SncxStatus::Ok);
        let mut len = 0;
        assert_eq!(
            sncx_complex_f_vector(c, ptr::null_mut(), 0, &mut len),
            SncxStatus::BufferTooSmall
        );
        assert_eq!(len, 2);
        let mut out = ptr::null_mut();
        let script = cstr(r#"[{"case": 2, "face": "nowhere"}]"#);
        assert_eq!(sncx_complex_blowup(c, script.as_ptr(), &mut out, ptr::null_mut()), SncxStatus::Failed);
        assert!(last_error().contains("nowhere"));
        let mut n = 0;
        assert_eq!(sncx_complex_face_count(ptr::null(), &mut n), SncxStatus::NullArgument);
        sncx_complex_free(c);
        sncx_complex_free(ptr::null_mut());
        sncx_string_free(ptr::null_mut());
    }
}

#[test]
fn newton_and_torus() {
    unsafe {
        let mut report = ptr::null_mut();
        let mut res: *mut SncxComplex = ptr::null_mut();
        let cusp = cstr("[[4,0,0],[0,4,0],[0,0,4],[1,1,1]]");
        assert_eq!(sncx_newton_report_json(cusp.as_ptr(), &mut report, &mut res), SncxStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["predicted"]["interior"], 1);
        let mut b1 = 0;
        sncx_complex_betti(res, true, 1, &mut b1);
        assert_eq!(b1, 1);
        sncx_complex_free(res);

        let mut c: *mut SncxComplex = ptr::null_mut();
        let square = cstr("[[0,0],[2,0],[0,2],[2,2]]");
        assert_eq!(sncx_torus_boundary(square.as_ptr(), &mut c), SncxStatus::Ok);
        let mut b0 = 0;
        sncx_complex_betti(c, true, 0, &mut b0);
        assert_eq!(b0, 7);
        let mut h = ptr::null_mut();
        assert_eq!(sncx_complex_homology_json(c, true, &mut h), SncxStatus::Ok);
        assert!(take(h).contains("\"reduced\": true"));
        sncx_complex_free(c);

        let line = cstr("[[0,0],[1,1]]");
        assert_eq!(sncx_torus_boundary(line.as_ptr(), &mut c), SncxStatus::InvalidInput);
        assert!(last_error().contains("dimensional"));
    }
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(sncx_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sncx.h")).unwrap();
    for name in [
        "typedef struct SncxComplex SncxComplex;",
        "SNCX_STATUS_OK = 0",
        "SNCX_STATUS_PANIC = 6",
        "sncx_complex_from_json(",
        "sncx_dual_complex(",
        "sncx_toric_link(",
        "sncx_torus_boundary(",
        "sncx_complex_blowup(",
        "sncx_complex_f_vector(",
        "sncx_complex_betti(",
        "sncx_complex_certify_json(",
        "sncx_newton_report_json(",
        "sncx_last_error(void)",
        "sncx_string_free(",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles a C program against the header and the static library when a C
/// compiler is on the path.
#[test]
fn c_program_links() {
    use std::path::PathBuf;
    use std::process::Command;

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps.join("libsncx_ffi.a"), deps.parent().unwrap().join("libsncx_ffi.a")]
        .into_iter()
        .find(|p| p.exists());
    let Some(lib) = lib else {
        eprintln!("static library not built; skipped");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sncx_smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    assert_eq!(String::from_utf8_lossy(&run.stdout), "f=(2,4) b1=3\n");
}
