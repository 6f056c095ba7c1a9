use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use parlines_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pl_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pl_last_error()) }.to_string_lossy().into_owned()
}

fn conic(kind: &str, p: Option<&str>, a: Option<&str>, b: Option<&str>) -> (PlStatus, *mut PlConic) {
    let hold = |v: Option<&str>| v.map(cs);
    let (p, a, b) = (hold(p), hold(a), hold(b));
    let raw = |v: &Option<CString>| v.as_ref().map_or(ptr::null(), |c| c.as_ptr());
    let mut out = ptr::null_mut();
    let s = unsafe { pl_conic_new(cs(kind).as_ptr(), raw(&p), raw(&a), raw(&b), &mut out) };
    (s, out)
}

#[test]
fn conic_lifecycle_and_critical_offset() {
    let (s, c) = conic("ellipse", None, Some("3"), Some("3/2"));
    assert_eq!(s, PlStatus::Ok);
    let mut rc = ptr::null_mut();
    assert_eq!(unsafe { pl_conic_r_crit(c, &mut rc) }, PlStatus::Ok);
    assert_eq!(take(rc), "3/4");
    let mut regime = PlRegime::Subcritical;
    assert_eq!(unsafe { pl_conic_regime(c, cs("4/3").as_ptr(), &mut regime) }, PlStatus::Ok);
    assert_eq!(regime, PlRegime::Supercritical);
    unsafe { pl_conic_free(c) };
    unsafe { pl_conic_free(ptr::null_mut()) };
}

#[test]
fn invalid_input_reports_status_and_message() {
    let (s, c) = conic("ellipse", None, Some("1"), Some("2"));
    assert_eq!(s, PlStatus::InvalidArgument);
    assert!(c.is_null());
    assert!(!last_error().is_empty());
    let (s, _) = conic("circle", None, None, None);
    assert_eq!(s, PlStatus::InvalidArgument);
    let mut out = ptr::null_mut();
    let s = unsafe { pl_conic_new(ptr::null(), ptr::null(), ptr::null(), ptr::null(), &mut out) };
    assert_eq!(s, PlStatus::NullArgument);
    assert!(last_error().contains("kind"));
    let (s, c) = conic("parabola", Some("1/3"), None, None);
    assert_eq!(s, PlStatus::Ok);
    assert!(last_error().is_empty());
    assert_eq!(unsafe { pl_conic_r_crit(c, ptr::null_mut()) }, PlStatus::NullArgument);
    unsafe { pl_conic_free(c) };
}

#[test]
fn offset_polynomial_matches_both_methods() {
    let (_, c) = conic("parabola", Some("1/3"), None, None);
    let r = cs("1/4");
    let mut json = Vec::new();
    for method in [PlMethod::ClosedForm, PlMethod::Elimination] {
        let mut g = ptr::null_mut();
        assert_eq!(unsafe { pl_offset_poly(c, r.as_ptr(), method, &mut g) }, PlStatus::Ok, "{}", last_error());
        let (mut terms, mut deg) = (0usize, 0u32);
        assert_eq!(unsafe { pl_offset_shape(g, &mut terms, &mut deg) }, PlStatus::Ok);
        assert_eq!((terms, deg), (13, 6));
        let mut v = f64::NAN;
        // (0, r) lies on the outer parallel line through the vertex
        assert_eq!(unsafe { pl_offset_eval(g, 0.0, 0.25, &mut v) }, PlStatus::Ok);
        assert_eq!(v, 0.0);
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { pl_offset_to_json(g, &mut s) }, PlStatus::Ok);
        json.push(take(s));
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { pl_offset_to_string(g, &mut s) }, PlStatus::Ok);
        assert!(take(s).contains("x^6"));
        unsafe { pl_offset_free(g) };
    }
    assert_eq!(json[0], json[1]);
    unsafe { pl_conic_free(c) };
}

#[test]
fn singular_points_through_the_abi() {
    let (_, c) = conic("hyperbola", None, Some("3/2"), Some("1"));
    for elim in [false, true] {
        let mut rep = ptr::null_mut();
        assert_eq!(unsafe { pl_singular_points(c, cs("4/3").as_ptr(), elim, &mut rep) }, PlStatus::Ok, "{}", last_error());
        let (mut real, mut complex, mut regime) = (0, 0, PlRegime::Critical);
        assert_eq!(unsafe { pl_singular_summary(rep, &mut real, &mut complex, &mut regime) }, PlStatus::Ok);
        assert_eq!((real, regime), (6, PlRegime::Supercritical));
        let mut on_axis = 0;
        for k in 0..real {
            let (mut x, mut y, mut tag) = (0.0, 0.0, PlPointTag::Virtual);
            assert_eq!(unsafe { pl_singular_point(rep, k, &mut x, &mut y, &mut tag) }, PlStatus::Ok);
            if tag == PlPointTag::OnCurve {
                on_axis += 1;
                assert_eq!(x, 0.0);
                assert!((y.abs() - 5.0 * 13f64.sqrt() / 6.0).abs() < 1e-12);
            }
        }
        assert_eq!(on_axis, 2);
        let (mut x, mut y, mut tag) = (0.0, 0.0, PlPointTag::Virtual);
        assert_eq!(unsafe { pl_singular_point(rep, real, &mut x, &mut y, &mut tag) }, PlStatus::OutOfRange);
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { pl_singular_to_json(rep, &mut s) }, PlStatus::Ok);
        assert!(take(s).contains("\"regime\""));
        unsafe { pl_singular_free(rep) };
    }
    unsafe { pl_conic_free(c) };
}

#[test]
fn mesh_buffers() {
    let offsets = [0.2, 0.4, 0.6];
    let stations = [3.75, 3.0, 2.0, 1.0, 0.0, -1.0, -2.0, -3.0, -3.75];
    let mut m = ptr::null_mut();
    let s = unsafe {
        pl_mesh_new(cs("4").as_ptr(), cs("2").as_ptr(), offsets.as_ptr(), 3, stations.as_ptr(), 9, &mut m)
    };
    assert_eq!(s, PlStatus::Ok, "{}", last_error());
    let (mut rows, mut cols, mut n4, mut n9) = (0, 0, 0, 0);
    assert_eq!(unsafe { pl_mesh_dims(m, &mut rows, &mut cols, &mut n4, &mut n9) }, PlStatus::Ok);
    assert_eq!((rows, cols, n4, n9), (7, 20, 120, 30));
    let mut nodes = vec![0.0; 2 * rows * cols];
    assert_eq!(unsafe { pl_mesh_nodes(m, nodes.as_mut_ptr(), nodes.len()) }, PlStatus::Ok);
    // the middle row lies on the ellipse x²/4 + y²/16 = 1
    for j in 0..cols {
        let k = 2 * (3 * cols + j);
        assert!((nodes[k] * nodes[k] / 4.0 + nodes[k + 1] * nodes[k + 1] / 16.0 - 1.0).abs() < 1e-12);
    }
    assert_eq!(unsafe { pl_mesh_nodes(m, nodes.as_mut_ptr(), 3) }, PlStatus::OutOfRange);
    let mut q4 = vec![0usize; 4 * n4];
    assert_eq!(unsafe { pl_mesh_quad4(m, q4.as_mut_ptr(), q4.len()) }, PlStatus::Ok);
    assert!(q4.iter().all(|&i| i < rows * cols));
    let mut q9 = vec![0usize; 9 * n9];
    assert_eq!(unsafe { pl_mesh_quad9(m, q9.as_mut_ptr(), q9.len()) }, PlStatus::Ok);
    assert!(q9.iter().all(|&i| i < rows * cols));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pl_mesh_to_json(m, &mut s) }, PlStatus::Ok);
    assert!(take(s).starts_with('{'));
    unsafe { pl_mesh_free(m) };
    let bad = [1.5]; // beyond r_crit = b²/a = 1
    let s = unsafe { pl_mesh_new(cs("4").as_ptr(), cs("2").as_ptr(), bad.as_ptr(), 1, stations.as_ptr(), 9, &mut m) };
    assert_eq!(s, PlStatus::InvalidArgument);
    assert!(m.is_null());
    let s = unsafe { pl_mesh_new(cs("4").as_ptr(), cs("2").as_ptr(), ptr::null(), 3, stations.as_ptr(), 9, &mut m) };
    assert_eq!(s, PlStatus::NullArgument);
}

#[test]
fn verify_through_the_abi() {
    let mut pass = false;
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pl_verify_paper(cs("1").as_ptr(), &mut pass, &mut s) }, PlStatus::Ok);
    assert!(pass);
    assert!(take(s).contains("example1"));
    assert_eq!(unsafe { pl_verify_paper(cs("12").as_ptr(), &mut pass, &mut s) }, PlStatus::InvalidArgument);
    let v = unsafe { CStr::from_ptr(pl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("parlines.h").exists(), "header not generated");
    // target/<profile>/deps/<test-binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libparlines_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler `cc` available");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}{}", String::from_utf8_lossy(&out.stderr));
    assert!(text.contains("r_crit 2/3"), "{text}");
    assert!(text.contains("points 3 complex"), "{text}");
    assert!(text.contains("terms 13 degree 6"), "{text}");
    assert!(text.contains("bad ellipse status 2 null 1 error set"), "{text}");
}
