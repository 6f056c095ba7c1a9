//! C ABI for the parlines engine.
//!
//! Conventions:
//! - Every fallible function returns a [`PlStatus`]; results come back through out-pointers.
//! - Objects are opaque handles created by `pl_*_new`-style functions and released with the
//!   matching `pl_*_free`. Passing NULL to a free function is a no-op.
//! - Rationals are passed as C strings such as `"3/2"` or `"-4"`.
//! - Strings returned through `char **` are owned by the caller and released with
//!   [`pl_string_free`].
//! - After a failure, [`pl_last_error`] describes it. The message is per thread and stays valid
//!   until the next call into the library on that thread.
//! - Panics never cross the boundary; they are reported as [`PlStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use parlines::conics::{self, ConicKind, ConicSpec, OffsetCurve, PointTag, Regime, SingularPointReport};
use parlines::mesh::{generate_mesh, mesh_json, Mesh, MeshSpec};
use parlines::rational::{format_rational, parse_rational};
use parlines::verify::{verify_paper, VerifyId};
use parlines::{Error, Rational};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// Invalid parameters or unparsable input.
    InvalidArgument = 2,
    /// A Gröbner computation hit its pair or degree limit.
    ResourceLimit = 3,
    /// Elimination, root isolation or Newton refinement failed.
    Numerical = 4,
    /// File or serialization failure.
    Io = 5,
    /// An index was out of range or a buffer too small.
    OutOfRange = 6,
    /// A bug in the library (a caught panic).
    Internal = 7,
}

/// How the offset polynomial is obtained.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlMethod {
    /// Substitution into the general polynomial.
    ClosedForm = 0,
    /// Gröbner elimination of the foot point.
    Elimination = 1,
}

/// Position of the offset relative to the critical offset.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlRegime {
    Subcritical = 0,
    Critical = 1,
    Supercritical = 2,
}

/// Kind of a singular point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlPointTag {
    Virtual = 0,
    OnCurve = 1,
    Split = 2,
}

/// A parabola, ellipse or hyperbola with exact parameters.
pub struct PlConic(ConicSpec);

/// An offset polynomial g(x, y) together with its conic and offset.
pub struct PlOffsetCurve(OffsetCurve);

/// Singular points of the offset curve.
pub struct PlSingularReport(SingularPointReport);

/// A layered quadrilateral mesh.
pub struct PlMesh(Mesh);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn status_of(e: &Error) -> PlStatus {
    match e {
        Error::ResourceLimit { .. } => PlStatus::ResourceLimit,
        Error::Elimination(_) | Error::RootPairing(_) | Error::RootRefine(_) => PlStatus::Numerical,
        Error::Io(_) | Error::Json(_) => PlStatus::Io,
        _ => PlStatus::InvalidArgument,
    }
}

struct Fail(PlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = std::result::Result<T, Fail>;

/// Runs `f`, records any error or panic, and converts the outcome to a status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> PlStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal error: {msg}"));
            PlStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(PlStatus::NullArgument, format!("`{what}` must not be NULL"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> FfiResult<Option<&'a str>> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|_| Fail(PlStatus::InvalidArgument, format!("`{what}` is not valid UTF-8")))
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    opt_str(p, what)?.ok_or_else(|| null(what))
}

unsafe fn opt_rational(p: *const c_char, what: &str) -> FfiResult<Option<Rational>> {
    Ok(opt_str(p, what)?.map(parse_rational).transpose()?)
}

fn give_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(PlStatus::Internal, "string contains a NUL byte".into()))
}

fn give<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message describing the most recent failure on this thread (empty after a success).
/// The pointer stays valid until the next library call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a conic. `kind` is `"parabola"`, `"ellipse"` or `"hyperbola"`; the parabola needs `p`,
/// the others `a` and `b` (unused parameters may be NULL).
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_conic_new(
    kind: *const c_char,
    p: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut PlConic,
) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let kind = ConicKind::parse(req_str(kind, "kind")?)?;
        let spec = ConicSpec::from_params(kind, opt_rational(p, "p")?, opt_rational(a, "a")?, opt_rational(b, "b")?)?;
        *out = give(PlConic(spec));
        Ok(())
    })
}

/// # Safety
/// `conic` must be NULL or a handle from [`pl_conic_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_conic_free(conic: *mut PlConic) {
    if !conic.is_null() {
        drop(Box::from_raw(conic));
    }
}

/// Critical offset as an exact rational string, e.g. `"2/3"`.
///
/// # Safety
/// `conic` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_conic_r_crit(conic: *const PlConic, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let c = borrow(conic, "conic")?;
        *out = give_string(format_rational(&conics::r_crit(&c.0)))?;
        Ok(())
    })
}

/// Regime of the offset `r` for this conic.
///
/// # Safety
/// `conic` must be a live handle; `r` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_conic_regime(conic: *const PlConic, r: *const c_char, out: *mut PlRegime) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let c = borrow(conic, "conic")?;
        let r = parse_rational(req_str(r, "r")?)?;
        *out = regime(Regime::of(&c.0, &r));
        Ok(())
    })
}

fn regime(r: Regime) -> PlRegime {
    match r {
        Regime::Subcritical => PlRegime::Subcritical,
        Regime::Critical => PlRegime::Critical,
        Regime::Supercritical => PlRegime::Supercritical,
    }
}

/// Computes the offset polynomial at distance `r`.
///
/// # Safety
/// `conic` must be a live handle; `r` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_offset_poly(
    conic: *const PlConic,
    r: *const c_char,
    method: PlMethod,
    out: *mut *mut PlOffsetCurve,
) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let c = borrow(conic, "conic")?;
        let r = parse_rational(req_str(r, "r")?)?;
        let curve = match method {
            PlMethod::ClosedForm => conics::offset_poly_closed_form(&c.0, &r)?,
            PlMethod::Elimination => conics::offset_poly_elimination(&c.0, &r)?,
        };
        *out = give(PlOffsetCurve(curve));
        Ok(())
    })
}

/// # Safety
/// `curve` must be NULL or a handle from [`pl_offset_poly`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_offset_free(curve: *mut PlOffsetCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// The polynomial in human-readable form, e.g. `"331776 x^6 - ..."`.
///
/// # Safety
/// `curve` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_offset_to_string(curve: *const PlOffsetCurve, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = give_string(borrow(curve, "curve")?.0.g.to_string())?;
        Ok(())
    })
}

/// The polynomial in the JSON form `{"vars":[...],"terms":[{"exp":[...],"num":"..","den":".."}]}`.
///
/// # Safety
/// `curve` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_offset_to_json(curve: *const PlOffsetCurve, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let json = serde_json::to_string(&borrow(curve, "curve")?.0.g.to_json()).map_err(Error::from)?;
        *out = give_string(json)?;
        Ok(())
    })
}

/// Number of terms and total degree of g.
///
/// # Safety
/// `curve` must be a live handle; the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pl_offset_shape(curve: *const PlOffsetCurve, terms: *mut usize, degree: *mut u32) -> PlStatus {
    guard(|| {
        let g = &borrow(curve, "curve")?.0.g;
        *out_ptr(terms, "terms")? = g.num_terms();
        *out_ptr(degree, "degree")? = g.total_degree().unwrap_or(0);
        Ok(())
    })
}

/// Evaluates g(x, y) in floating point.
///
/// # Safety
/// `curve` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_offset_eval(curve: *const PlOffsetCurve, x: f64, y: f64, out: *mut f64) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let g = &borrow(curve, "curve")?.0.g;
        *out = parlines::curve::eval_poly(g, parlines::curve::Point2::new(x, y))?;
        Ok(())
    })
}

/// Singular points of the offset curve at distance `r`; `use_elimination` selects the Gröbner
/// route instead of the closed forms.
///
/// # Safety
/// `conic` must be a live handle; `r` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_singular_points(
    conic: *const PlConic,
    r: *const c_char,
    use_elimination: bool,
    out: *mut *mut PlSingularReport,
) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let c = borrow(conic, "conic")?;
        let r = parse_rational(req_str(r, "r")?)?;
        let rep = if use_elimination {
            conics::singular_points_via_elimination(&c.0, &r)?
        } else {
            conics::singular_points(&c.0, &r)?
        };
        *out = give(PlSingularReport(rep));
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a handle from [`pl_singular_points`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_singular_free(report: *mut PlSingularReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of real singular points, number of complex ones and the regime.
///
/// # Safety
/// `report` must be a live handle; the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pl_singular_summary(
    report: *const PlSingularReport,
    real_count: *mut usize,
    complex_count: *mut usize,
    regime_out: *mut PlRegime,
) -> PlStatus {
    guard(|| {
        let rep = &borrow(report, "report")?.0;
        *out_ptr(real_count, "real_count")? = rep.points.len();
        *out_ptr(complex_count, "complex_count")? = rep.complex_count;
        *out_ptr(regime_out, "regime")? = regime(rep.regime);
        Ok(())
    })
}

/// Coordinates and tag of the `index`-th real singular point.
///
/// # Safety
/// `report` must be a live handle; the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pl_singular_point(
    report: *const PlSingularReport,
    index: usize,
    x: *mut f64,
    y: *mut f64,
    tag: *mut PlPointTag,
) -> PlStatus {
    guard(|| {
        let rep = &borrow(report, "report")?.0;
        let p = rep
            .points
            .get(index)
            .ok_or_else(|| Fail(PlStatus::OutOfRange, format!("point {index} of {}", rep.points.len())))?;
        let (px, py) = p.xy();
        *out_ptr(x, "x")? = px;
        *out_ptr(y, "y")? = py;
        *out_ptr(tag, "tag")? = match p.tag {
            PointTag::Virtual => PlPointTag::Virtual,
            PointTag::OnCurve => PlPointTag::OnCurve,
            PointTag::Split => PlPointTag::Split,
        };
        Ok(())
    })
}

/// The full report as JSON.
///
/// # Safety
/// `report` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_singular_to_json(report: *const PlSingularReport, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let json = serde_json::to_string_pretty(&borrow(report, "report")?.0).map_err(Error::from)?;
        *out = give_string(json)?;
        Ok(())
    })
}

/// Builds the layered mesh around the ellipse `(a, b)` (rational strings) with decimal offsets
/// (ascending) and y stations (descending).
///
/// # Safety
/// `a`, `b` NUL-terminated; `offsets` and `stations` point to the given number of doubles;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_new(
    a: *const c_char,
    b: *const c_char,
    offsets: *const f64,
    n_offsets: usize,
    stations: *const f64,
    n_stations: usize,
    out: *mut *mut PlMesh,
) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let a = parse_rational(req_str(a, "a")?)?;
        let b = parse_rational(req_str(b, "b")?)?;
        let offsets = slice(offsets, n_offsets, "offsets")?.to_vec();
        let stations = slice(stations, n_stations, "stations")?.to_vec();
        let spec = MeshSpec::new(ConicSpec::ellipse(a, b)?, offsets, stations)?;
        *out = give(PlMesh(generate_mesh(&spec)?));
        Ok(())
    })
}

/// # Safety
/// `mesh` must be NULL or a handle from [`pl_mesh_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_free(mesh: *mut PlMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Node matrix dimensions and element counts.
///
/// # Safety
/// `mesh` must be a live handle; the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_dims(
    mesh: *const PlMesh,
    rows: *mut usize,
    cols: *mut usize,
    n_quad4: *mut usize,
    n_quad9: *mut usize,
) -> PlStatus {
    guard(|| {
        let m = &borrow(mesh, "mesh")?.0;
        *out_ptr(rows, "rows")? = m.rows;
        *out_ptr(cols, "cols")? = m.cols;
        *out_ptr(n_quad4, "n_quad4")? = m.quad4.len();
        *out_ptr(n_quad9, "n_quad9")? = m.quad9.len();
        Ok(())
    })
}

fn check_len(have: usize, need: usize) -> FfiResult<()> {
    if have < need {
        return Err(Fail(PlStatus::OutOfRange, format!("buffer holds {have} values, {need} needed")));
    }
    Ok(())
}

/// Copies node coordinates, row-major, as `x0, y0, x1, y1, ...` (`2 * rows * cols` doubles).
///
/// # Safety
/// `mesh` must be a live handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_nodes(mesh: *const PlMesh, buf: *mut f64, len: usize) -> PlStatus {
    guard(|| {
        let m = &borrow(mesh, "mesh")?.0;
        check_len(len, 2 * m.nodes.len())?;
        let dst = std::slice::from_raw_parts_mut(out_ptr(buf, "buf")?, len);
        for (k, p) in m.nodes.iter().enumerate() {
            dst[2 * k] = p.x;
            dst[2 * k + 1] = p.y;
        }
        Ok(())
    })
}

/// Copies the four-node elements (`4 * n_quad4` zero-based node indices).
///
/// # Safety
/// `mesh` must be a live handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_quad4(mesh: *const PlMesh, buf: *mut usize, len: usize) -> PlStatus {
    guard(|| {
        let m = &borrow(mesh, "mesh")?.0;
        check_len(len, 4 * m.quad4.len())?;
        let dst = std::slice::from_raw_parts_mut(out_ptr(buf, "buf")?, len);
        for (k, v) in m.quad4.iter().flatten().enumerate() {
            dst[k] = *v;
        }
        Ok(())
    })
}

/// Copies the nine-node elements (`9 * n_quad9` zero-based node indices).
///
/// # Safety
/// `mesh` must be a live handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_quad9(mesh: *const PlMesh, buf: *mut usize, len: usize) -> PlStatus {
    guard(|| {
        let m = &borrow(mesh, "mesh")?.0;
        check_len(len, 9 * m.quad9.len())?;
        let dst = std::slice::from_raw_parts_mut(out_ptr(buf, "buf")?, len);
        for (k, v) in m.quad9.iter().flatten().enumerate() {
            dst[k] = *v;
        }
        Ok(())
    })
}

/// The mesh in its JSON exchange form.
///
/// # Safety
/// `mesh` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_mesh_to_json(mesh: *const PlMesh, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = give_string(mesh_json(&borrow(mesh, "mesh")?.0))?;
        Ok(())
    })
}

/// Re-derives a published instance (`"1"`..`"9"`, `"appendixA"`, `"appendixB"`, `"mesh"`).
/// `pass` receives the overall verdict and `report_json` the per-check report.
///
/// # Safety
/// `id` NUL-terminated; the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pl_verify_paper(id: *const c_char, pass: *mut bool, report_json: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let report_json = out_ptr(report_json, "report_json")?;
        *report_json = ptr::null_mut();
        let pass = out_ptr(pass, "pass")?;
        let rep = verify_paper(VerifyId::parse(req_str(id, "id")?)?)?;
        *pass = rep.pass;
        *report_json = give_string(rep.to_json())?;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(pl_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn errors_are_classified() {
        assert_eq!(status_of(&Error::Param("x".into())), PlStatus::InvalidArgument);
        assert_eq!(status_of(&Error::RootRefine("x".into())), PlStatus::Numerical);
        assert_eq!(status_of(&Error::Io(std::io::Error::other("x"))), PlStatus::Io);
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, PlStatus::Internal);
        assert!(last_error().contains("boom"));
        assert_eq!(guard(|| Ok(())), PlStatus::Ok);
        assert_eq!(last_error(), "");
    }
}
