//! C ABI for the rephull library: opaque handles, status codes, and flat
//! coordinate buffers (interleaved re, im). The generated header lives in
//! `include/rephull.h`.
//!
//! All geometric comparisons use the library's default tolerances
//! (1e-9 angular, 1e-9 relative coordinate).

use std::ffi::{c_char, CStr};

use rephull::{
    cloud, convexity_report, lambda_hull, translate_hull, Alphabet, Base, Point, PointCloud,
    Polygon, Tolerance,
};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RephullStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotConvex = 3,
    CapExceeded = 4,
    HypothesesNotMet = 5,
    BufferTooSmall = 6,
}

fn status_of(err: &rephull::Error) -> RephullStatus {
    use rephull::Error::*;
    match err {
        NotConvex => RephullStatus::NotConvex,
        EnumerationCap { .. } => RephullStatus::CapExceeded,
        HypothesesNotMet(_) => RephullStatus::HypothesesNotMet,
        _ => RephullStatus::InvalidArgument,
    }
}

/// Opaque base handle.
pub struct RephullBase(Base);
/// Opaque alphabet handle.
pub struct RephullAlphabet(Alphabet);
/// Opaque polygon handle.
pub struct RephullPolygon(Polygon);
/// Opaque point-cloud handle.
pub struct RephullCloud(PointCloud);

/// Convexity verdict of the gap criterion. `witness_gap_index` is −1 when
/// there is no witness gap (single-digit alphabets).
#[repr(C)]
pub struct RephullConvexityReport {
    pub is_convex: u8,
    pub max_gap: f64,
    pub threshold: f64,
    pub witness_gap_index: i64,
}

fn tol() -> Tolerance {
    Tolerance::default()
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> RephullStatus {
    if out.is_null() {
        return RephullStatus::NullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    RephullStatus::Ok
}

/// Creates the base q = p·e^(2πi/n). Requires n ≥ 1 and p > 1.
///
/// # Safety
/// `out` must be a valid pointer. The returned handle must be released with
/// [`rephull_base_free`].
#[no_mangle]
pub unsafe extern "C" fn rephull_base_new(
    n: u32,
    p: f64,
    out: *mut *mut RephullBase,
) -> RephullStatus {
    match Base::new(n, p) {
        Ok(base) => unsafe { write_handle(out, RephullBase(base)) },
        Err(_) => RephullStatus::InvalidArgument,
    }
}

/// # Safety
/// `base` must come from [`rephull_base_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rephull_base_free(base: *mut RephullBase) {
    if !base.is_null() {
        drop(unsafe { Box::from_raw(base) });
    }
}

/// Creates an alphabet from `len` strictly increasing finite digits.
///
/// # Safety
/// `digits` must point to `len` readable doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rephull_alphabet_new(
    digits: *const f64,
    len: usize,
    out: *mut *mut RephullAlphabet,
) -> RephullStatus {
    if digits.is_null() {
        return RephullStatus::NullPointer;
    }
    let slice = unsafe { std::slice::from_raw_parts(digits, len) };
    match Alphabet::new(slice.to_vec()) {
        Ok(a) => unsafe { write_handle(out, RephullAlphabet(a)) },
        Err(_) => RephullStatus::InvalidArgument,
    }
}

/// # Safety
/// `alphabet` must come from [`rephull_alphabet_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rephull_alphabet_free(alphabet: *mut RephullAlphabet) {
    if !alphabet.is_null() {
        drop(unsafe { Box::from_raw(alphabet) });
    }
}

/// Builds the base polygon (hull of the 2^n binary power sums).
///
/// # Safety
/// `base` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rephull_base_polygon(
    base: *const RephullBase,
    out: *mut *mut RephullPolygon,
) -> RephullStatus {
    if base.is_null() {
        return RephullStatus::NullPointer;
    }
    let poly = rephull::base_polygon(unsafe { &(*base).0 });
    unsafe { write_handle(out, RephullPolygon(poly)) }
}

/// Builds the hull of the representable set for the alphabet.
///
/// # Safety
/// `base` and `alphabet` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rephull_lambda_hull(
    base: *const RephullBase,
    alphabet: *const RephullAlphabet,
    out: *mut *mut RephullPolygon,
) -> RephullStatus {
    if base.is_null() || alphabet.is_null() {
        return RephullStatus::NullPointer;
    }
    let poly = lambda_hull(unsafe { &(*base).0 }, unsafe { &(*alphabet).0 });
    unsafe { write_handle(out, RephullPolygon(poly)) }
}

/// Convex hull of `npoints` points given as interleaved (re, im) pairs.
///
/// # Safety
/// `xy` must point to `2·npoints` readable doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rephull_convex_hull(
    xy: *const f64,
    npoints: usize,
    out: *mut *mut RephullPolygon,
) -> RephullStatus {
    if xy.is_null() {
        return RephullStatus::NullPointer;
    }
    let flat = unsafe { std::slice::from_raw_parts(xy, 2 * npoints) };
    let mut pts = Vec::with_capacity(npoints);
    for pair in flat.chunks_exact(2) {
        match Point::new(pair[0], pair[1]) {
            Ok(p) => pts.push(p),
            Err(_) => return RephullStatus::InvalidArgument,
        }
    }
    match rephull::convex_hull(&pts, &tol()) {
        Ok(poly) => unsafe { write_handle(out, RephullPolygon(poly)) },
        Err(e) => status_of(&e),
    }
}

/// The hull of `polygon ∪ (polygon + t)` for t = (tre, tim).
///
/// # Safety
/// `polygon` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rephull_translate_hull(
    polygon: *const RephullPolygon,
    tre: f64,
    tim: f64,
    out: *mut *mut RephullPolygon,
) -> RephullStatus {
    if polygon.is_null() {
        return RephullStatus::NullPointer;
    }
    let t = Point { re: tre, im: tim };
    match translate_hull(unsafe { &(*polygon).0 }, t, &tol()) {
        Ok(poly) => unsafe { write_handle(out, RephullPolygon(poly)) },
        Err(e) => status_of(&e),
    }
}

/// Number of listed vertices (degenerate vertices included).
///
/// # Safety
/// `polygon` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rephull_polygon_len(polygon: *const RephullPolygon) -> usize {
    if polygon.is_null() {
        return 0;
    }
    unsafe { (*polygon).0.len() }
}

/// Number of extremal (non-degenerate) vertices.
///
/// # Safety
/// `polygon` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rephull_polygon_extremal_count(polygon: *const RephullPolygon) -> usize {
    if polygon.is_null() {
        return 0;
    }
    unsafe { (*polygon).0.extremal_points(&tol()).len() }
}

/// Copies the vertices as interleaved (re, im) pairs into `xy_out`, which
/// must hold at least `2·rephull_polygon_len(polygon)` doubles.
///
/// # Safety
/// `polygon` must be a live handle and `xy_out` writable for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn rephull_polygon_vertices(
    polygon: *const RephullPolygon,
    xy_out: *mut f64,
    cap: usize,
) -> RephullStatus {
    if polygon.is_null() || xy_out.is_null() {
        return RephullStatus::NullPointer;
    }
    let verts = unsafe { (*polygon).0.vertices() };
    if cap < 2 * verts.len() {
        return RephullStatus::BufferTooSmall;
    }
    let out = unsafe { std::slice::from_raw_parts_mut(xy_out, 2 * verts.len()) };
    for (i, v) in verts.iter().enumerate() {
        out[2 * i] = v.re;
        out[2 * i + 1] = v.im;
    }
    RephullStatus::Ok
}

/// Point-in-polygon test; writes 1 or 0 into `inside`. Fails with
/// `NotConvex` on non-convex polygons.
///
/// # Safety
/// `polygon` must be a live handle and `inside` writable.
#[no_mangle]
pub unsafe extern "C" fn rephull_polygon_contains(
    polygon: *const RephullPolygon,
    re: f64,
    im: f64,
    inside: *mut u8,
) -> RephullStatus {
    if polygon.is_null() || inside.is_null() {
        return RephullStatus::NullPointer;
    }
    let Ok(point) = Point::new(re, im) else {
        return RephullStatus::InvalidArgument;
    };
    match unsafe { (*polygon).0.contains(point, &tol()) } {
        Ok(v) => {
            unsafe { *inside = u8::from(v) };
            RephullStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `polygon` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rephull_polygon_free(polygon: *mut RephullPolygon) {
    if !polygon.is_null() {
        drop(unsafe { Box::from_raw(polygon) });
    }
}

/// Evaluates the gap criterion for convexity of the representable set.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rephull_check_convex(
    base: *const RephullBase,
    alphabet: *const RephullAlphabet,
    out: *mut RephullConvexityReport,
) -> RephullStatus {
    if base.is_null() || alphabet.is_null() || out.is_null() {
        return RephullStatus::NullPointer;
    }
    let report = convexity_report(unsafe { &(*base).0 }, unsafe { &(*alphabet).0 });
    unsafe {
        (*out).is_convex = u8::from(report.is_convex);
        (*out).max_gap = report.max_gap;
        (*out).threshold = report.threshold;
        (*out).witness_gap_index = report.witness_gap_index.map_or(-1, |i| i as i64);
    }
    RephullStatus::Ok
}

/// Generates the depth-d cloud of truncated expansions. `dedup` thins
/// coincident points.
///
/// # Safety
/// All pointers must be valid; the handle must be freed with
/// [`rephull_cloud_free`].
#[no_mangle]
pub unsafe extern "C" fn rephull_cloud_new(
    base: *const RephullBase,
    alphabet: *const RephullAlphabet,
    depth: u32,
    dedup: u8,
    out: *mut *mut RephullCloud,
) -> RephullStatus {
    if base.is_null() || alphabet.is_null() {
        return RephullStatus::NullPointer;
    }
    match cloud(
        unsafe { &(*base).0 },
        unsafe { &(*alphabet).0 },
        depth,
        dedup != 0,
        &tol(),
    ) {
        Ok(c) => unsafe { write_handle(out, RephullCloud(c)) },
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `cloud` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rephull_cloud_len(cloud: *const RephullCloud) -> usize {
    if cloud.is_null() {
        return 0;
    }
    unsafe { (*cloud).0.points.len() }
}

/// Copies cloud points as interleaved (re, im) pairs.
///
/// # Safety
/// `cloud` must be a live handle and `xy_out` writable for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn rephull_cloud_points(
    cloud: *const RephullCloud,
    xy_out: *mut f64,
    cap: usize,
) -> RephullStatus {
    if cloud.is_null() || xy_out.is_null() {
        return RephullStatus::NullPointer;
    }
    let pts = unsafe { &(*cloud).0.points };
    if cap < 2 * pts.len() {
        return RephullStatus::BufferTooSmall;
    }
    let out = unsafe { std::slice::from_raw_parts_mut(xy_out, 2 * pts.len()) };
    for (i, p) in pts.iter().enumerate() {
        out[2 * i] = p.re;
        out[2 * i + 1] = p.im;
    }
    RephullStatus::Ok
}

/// # Safety
/// `cloud` must come from [`rephull_cloud_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rephull_cloud_free(cloud: *mut RephullCloud) {
    if !cloud.is_null() {
        drop(unsafe { Box::from_raw(cloud) });
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn rephull_status_message(status: RephullStatus) -> *const c_char {
    let msg: &CStr = match status {
        RephullStatus::Ok => c"ok",
        RephullStatus::NullPointer => c"null pointer argument",
        RephullStatus::InvalidArgument => c"invalid argument",
        RephullStatus::NotConvex => c"polygon is not convex",
        RephullStatus::CapExceeded => c"enumeration cap exceeded",
        RephullStatus::HypothesesNotMet => c"hypotheses not met",
        RephullStatus::BufferTooSmall => c"output buffer too small",
    };
    msg.as_ptr()
}
