//! C ABI for `schwarzkit`.
//!
//! Objects cross the boundary as opaque handles (`SkVector`, `SkProjector`,
//! `SkIndex`) created by `sk_*_new`/`sk_*_build` and released by the
//! matching `sk_*_free`. Every fallible call returns an [`SkStatus`]; on
//! failure [`sk_last_error_message`] describes the error for the calling
//! thread. Output parameters are written only on success.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use num_complex::Complex64;
use schwarzkit::harness::{run_suite_with, Execution, TrialConfig};
use schwarzkit::metrics::{angle, d_p, delta_p, triangle_check, AngleKind, TriangleKind};
use schwarzkit::{
    basis_max_bound, det2_bound, detp_bound, general_e_bound, mean_bound, projection_bound,
    quad_refinement, rs_chain, schwarz_bound, BoundReport, CVector, Error, MetricParams, Mode,
    Order, Projector, Tolerance, VpIndex,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    EmptyVector = 4,
    NonFinite = 5,
    ZeroVector = 6,
    NotUnit = 7,
    NotOrthonormal = 8,
    Consistency = 9,
    Parse = 10,
    Io = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkMode {
    Modulus = 0,
    Real = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkOrder {
    PForm = 0,
    Quadratic = 1,
    P2Simple = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkAngleKind {
    Psi = 0,
    Phi = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkTriangleKind {
    LinPsi = 0,
    Krein = 1,
    WzSinPsi = 2,
    SinPhi = 3,
    Dp = 4,
    DeltaP = 5,
    CosLower = 6,
}

/// Relative and absolute tolerance. Pass `NULL` for the defaults
/// (1e-9, 1e-12).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkTolerance {
    pub rel_eps: f64,
    pub abs_eps: f64,
}

/// One evaluated inequality `lhs >= rhs`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SkBoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub satisfied: bool,
    pub equality: bool,
}

impl From<&BoundReport> for SkBoundReport {
    fn from(r: &BoundReport) -> Self {
        SkBoundReport {
            lhs: r.lhs,
            rhs: r.rhs,
            gap: r.gap,
            satisfied: r.satisfied,
            equality: r.equality,
        }
    }
}

/// Opaque vector in C^n.
pub struct SkVector(CVector);

/// Opaque orthogonal projection.
pub struct SkProjector(Projector);

/// Opaque vantage-point index.
pub struct SkIndex(VpIndex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> SkStatus {
    match err {
        Error::DimensionMismatch { .. } => SkStatus::DimensionMismatch,
        Error::EmptyVector => SkStatus::EmptyVector,
        Error::NonFinite { .. } => SkStatus::NonFinite,
        Error::ZeroVector { .. } => SkStatus::ZeroVector,
        Error::NotUnit { .. } => SkStatus::NotUnit,
        Error::NotOrthonormal { .. } => SkStatus::NotOrthonormal,
        Error::InvalidParameter(_) => SkStatus::InvalidArgument,
        Error::Consistency(_) => SkStatus::Consistency,
        Error::Parse { .. } => SkStatus::Parse,
        Error::Io(_) => SkStatus::Io,
    }
}

/// Internal failure carrying a status and message.
struct Fail(SkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SkStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SkStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn vec_ref<'a>(p: *const SkVector, what: &str) -> Result<&'a CVector, Fail> {
    Ok(&get(p, what)?.0)
}

unsafe fn tolerance(tol: *const SkTolerance) -> Result<Tolerance, Fail> {
    match tol.as_ref() {
        None => Ok(Tolerance::default()),
        Some(t) => Ok(Tolerance::new(t.rel_eps, t.abs_eps)?),
    }
}

unsafe fn handles<'a>(items: *const *const SkVector, n: usize) -> Result<Vec<&'a CVector>, Fail> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if items.is_null() {
        return Err(null("vector array"));
    }
    std::slice::from_raw_parts(items, n)
        .iter()
        .enumerate()
        .map(|(i, &p)| vec_ref(p, &format!("vector {i}")))
        .collect()
}

fn mode_of(m: SkMode) -> Mode {
    match m {
        SkMode::Modulus => Mode::Modulus,
        SkMode::Real => Mode::RealPart,
    }
}

fn order_of(o: SkOrder) -> Order {
    match o {
        SkOrder::PForm => Order::PForm,
        SkOrder::Quadratic => Order::Quadratic,
        SkOrder::P2Simple => Order::P2Simple,
    }
}

/// Message of the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a vector from `dim` real parts and optional imaginary parts
/// (`im` may be `NULL`).
#[no_mangle]
pub unsafe extern "C" fn sk_vector_new(
    re: *const f64,
    im: *const f64,
    dim: usize,
    out_vec: *mut *mut SkVector,
) -> SkStatus {
    guard(|| {
        let slot = out(out_vec, "out")?;
        if dim == 0 {
            return Err(Error::EmptyVector.into());
        }
        if re.is_null() {
            return Err(null("re"));
        }
        let re = std::slice::from_raw_parts(re, dim);
        let entries = if im.is_null() {
            re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, dim);
            re.iter()
                .zip(im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect()
        };
        let v = CVector::new(entries)?;
        *slot = Box::into_raw(Box::new(SkVector(v)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_vector_free(v: *mut SkVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Dimension of `v`, or 0 for `NULL`.
#[no_mangle]
pub unsafe extern "C" fn sk_vector_dim(v: *const SkVector) -> usize {
    v.as_ref().map_or(0, |v| v.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn sk_vector_get(
    v: *const SkVector,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> SkStatus {
    guard(|| {
        let v = vec_ref(v, "v")?;
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        let z = v.entries().get(index).ok_or_else(|| {
            Fail(
                SkStatus::InvalidArgument,
                format!("index {index} out of range for dim {}", v.dim()),
            )
        })?;
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// `<x, y> = sum x_k conj(y_k)`.
#[no_mangle]
pub unsafe extern "C" fn sk_inner(
    x: *const SkVector,
    y: *const SkVector,
    re: *mut f64,
    im: *mut f64,
) -> SkStatus {
    guard(|| {
        let z = vec_ref(x, "x")?.inner(vec_ref(y, "y")?)?;
        *out(re, "re")? = z.re;
        *out(im, "im")? = z.im;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_norm(x: *const SkVector, result: *mut f64) -> SkStatus {
    guard(|| {
        *out(result, "result")? = vec_ref(x, "x")?.norm();
        Ok(())
    })
}

/// Projection onto the span of an orthonormal family of `n` vectors
/// (`n = 0` gives the zero projection).
#[no_mangle]
pub unsafe extern "C" fn sk_projector_new(
    family: *const *const SkVector,
    n: usize,
    out_proj: *mut *mut SkProjector,
) -> SkStatus {
    guard(|| {
        let slot = out(out_proj, "out")?;
        let fam = handles(family, n)?.into_iter().cloned().collect();
        *slot = Box::into_raw(Box::new(SkProjector(Projector::new(fam)?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_projector_free(p: *mut SkProjector) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sk_projector_apply(
    p: *const SkProjector,
    x: *const SkVector,
    out_vec: *mut *mut SkVector,
) -> SkStatus {
    guard(|| {
        let slot = out(out_vec, "out")?;
        let v = get(p, "p")?.0.apply(vec_ref(x, "x")?)?;
        *slot = Box::into_raw(Box::new(SkVector(v)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_schwarz_bound(
    x: *const SkVector,
    y: *const SkVector,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let r = schwarz_bound(vec_ref(x, "x")?, vec_ref(y, "y")?, &tolerance(tol)?)?;
        *out(report, "report")? = (&r).into();
        Ok(())
    })
}

/// Projection refinement and the chain `|x||y| - |<x,y>| >= ...`.
#[no_mangle]
pub unsafe extern "C" fn sk_projection_bound(
    p: *const SkProjector,
    x: *const SkVector,
    y: *const SkVector,
    tol: *const SkTolerance,
    refinement: *mut SkBoundReport,
    chain: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let r = projection_bound(
            &get(p, "p")?.0,
            vec_ref(x, "x")?,
            vec_ref(y, "y")?,
            &tolerance(tol)?,
        )?;
        let (a, b) = (out(refinement, "refinement")?, out(chain, "chain")?);
        *a = (&r.refinement).into();
        *b = (&r.chain).into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_quad_refinement(
    x: *const SkVector,
    y: *const SkVector,
    z: *const SkVector,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let r = quad_refinement(
            vec_ref(x, "x")?,
            vec_ref(y, "y")?,
            vec_ref(z, "z")?,
            &tolerance(tol)?,
        )?;
        *out(report, "report")? = (&r).into();
        Ok(())
    })
}

/// `a >= b` in `upper` and `b >= c` in `lower`.
#[no_mangle]
pub unsafe extern "C" fn sk_rs_chain(
    x: *const SkVector,
    y: *const SkVector,
    e: *const SkVector,
    tol: *const SkTolerance,
    upper: *mut SkBoundReport,
    lower: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let r = rs_chain(
            vec_ref(x, "x")?,
            vec_ref(y, "y")?,
            vec_ref(e, "e")?,
            &tolerance(tol)?,
        )?;
        let (u, l) = (out(upper, "upper")?, out(lower, "lower")?);
        *u = (&r.upper).into();
        *l = (&r.lower).into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_detp_bound(
    x: *const SkVector,
    y: *const SkVector,
    e: *const SkVector,
    p: f64,
    mode: SkMode,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let params = MetricParams::new(p, mode_of(mode))?;
        let r = detp_bound(
            vec_ref(x, "x")?,
            vec_ref(y, "y")?,
            vec_ref(e, "e")?,
            params,
            &tolerance(tol)?,
        )?;
        *out(report, "report")? = (&r).into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_det2_bound(
    x: *const SkVector,
    y: *const SkVector,
    e: *const SkVector,
    mode: SkMode,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let r = det2_bound(
            vec_ref(x, "x")?,
            vec_ref(y, "y")?,
            vec_ref(e, "e")?,
            mode_of(mode),
            &tolerance(tol)?,
        )?;
        *out(report, "report")? = (&r).into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_d_p(
    x: *const SkVector,
    y: *const SkVector,
    p: f64,
    result: *mut f64,
) -> SkStatus {
    guard(|| {
        *out(result, "result")? = d_p(vec_ref(x, "x")?, vec_ref(y, "y")?, p)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_delta_p(
    x: *const SkVector,
    y: *const SkVector,
    p: f64,
    result: *mut f64,
) -> SkStatus {
    guard(|| {
        *out(result, "result")? = delta_p(vec_ref(x, "x")?, vec_ref(y, "y")?, p)?;
        Ok(())
    })
}

/// Angle in radians.
#[no_mangle]
pub unsafe extern "C" fn sk_angle(
    x: *const SkVector,
    y: *const SkVector,
    kind: SkAngleKind,
    result: *mut f64,
) -> SkStatus {
    guard(|| {
        let kind = match kind {
            SkAngleKind::Psi => AngleKind::Psi,
            SkAngleKind::Phi => AngleKind::Phi,
        };
        *out(result, "result")? = angle(vec_ref(x, "x")?, vec_ref(y, "y")?, kind)?.radians;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_triangle_check(
    kind: SkTriangleKind,
    x: *const SkVector,
    y: *const SkVector,
    z: *const SkVector,
    p: f64,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let kind = match kind {
            SkTriangleKind::LinPsi => TriangleKind::LinPsi,
            SkTriangleKind::Krein => TriangleKind::Krein,
            SkTriangleKind::WzSinPsi => TriangleKind::WzSinPsi,
            SkTriangleKind::SinPhi => TriangleKind::SinPhi,
            SkTriangleKind::Dp => TriangleKind::Dp,
            SkTriangleKind::DeltaP => TriangleKind::DeltaP,
            SkTriangleKind::CosLower => TriangleKind::CosLower,
        };
        let r = triangle_check(
            kind,
            vec_ref(x, "x")?,
            vec_ref(y, "y")?,
            vec_ref(z, "z")?,
            p,
            &tolerance(tol)?,
        )?;
        *out(report, "report")? = (&r).into();
        Ok(())
    })
}

/// Determinant bound for n-tuples with an arbitrary unit `e`.
#[no_mangle]
pub unsafe extern "C" fn sk_ntuple_general(
    x: *const SkVector,
    y: *const SkVector,
    e: *const SkVector,
    p: f64,
    order: SkOrder,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let (x, y, e) = (vec_ref(x, "x")?, vec_ref(y, "y")?, vec_ref(e, "e")?);
        let r = general_e_bound(
            x.entries(),
            y.entries(),
            e.entries(),
            p,
            order_of(order),
            &tolerance(tol)?,
        )?;
        *out(report, "report")? = (&r.base).into();
        Ok(())
    })
}

/// Maximum over standard basis vectors; `argmax` receives the 1-based index.
#[no_mangle]
pub unsafe extern "C" fn sk_ntuple_basis_max(
    x: *const SkVector,
    y: *const SkVector,
    p: f64,
    order: SkOrder,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
    argmax: *mut usize,
) -> SkStatus {
    guard(|| {
        let (x, y) = (vec_ref(x, "x")?, vec_ref(y, "y")?);
        let r = basis_max_bound(
            x.entries(),
            y.entries(),
            p,
            order_of(order),
            &tolerance(tol)?,
        )?;
        let (rep, am) = (out(report, "report")?, out(argmax, "argmax")?);
        *rep = (&r.base).into();
        *am = r.argmax_m.unwrap_or(0);
        Ok(())
    })
}

/// Mean / centered-moment form (uniform `e`).
#[no_mangle]
pub unsafe extern "C" fn sk_ntuple_mean(
    x: *const SkVector,
    y: *const SkVector,
    p: f64,
    order: SkOrder,
    tol: *const SkTolerance,
    report: *mut SkBoundReport,
) -> SkStatus {
    guard(|| {
        let (x, y) = (vec_ref(x, "x")?, vec_ref(y, "y")?);
        let r = mean_bound(
            x.entries(),
            y.entries(),
            p,
            order_of(order),
            &tolerance(tol)?,
        )?;
        *out(report, "report")? = (&r.base).into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_index_build(
    points: *const *const SkVector,
    n: usize,
    p: f64,
    out_index: *mut *mut SkIndex,
) -> SkStatus {
    guard(|| {
        let slot = out(out_index, "out")?;
        let pts: Vec<CVector> = handles(points, n)?.into_iter().cloned().collect();
        *slot = Box::into_raw(Box::new(SkIndex(VpIndex::build(&pts, p)?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_index_free(idx: *mut SkIndex) {
    if !idx.is_null() {
        drop(Box::from_raw(idx));
    }
}

/// Number of stored points, or 0 for `NULL`.
#[no_mangle]
pub unsafe extern "C" fn sk_index_len(idx: *const SkIndex) -> usize {
    idx.as_ref().map_or(0, |i| i.0.len())
}

unsafe fn write_hits(
    hits: &[schwarzkit::Neighbor],
    ids: *mut usize,
    dists: *mut f64,
    cap: usize,
    count: *mut usize,
) -> Result<(), Fail> {
    *out(count, "count")? = hits.len();
    if hits.len() > cap {
        return Err(Fail(
            SkStatus::BufferTooSmall,
            format!("{} results do not fit in {cap} slots", hits.len()),
        ));
    }
    if hits.is_empty() {
        return Ok(());
    }
    if ids.is_null() || dists.is_null() {
        return Err(null("result buffer"));
    }
    let ids = std::slice::from_raw_parts_mut(ids, hits.len());
    let dists = std::slice::from_raw_parts_mut(dists, hits.len());
    for (k, h) in hits.iter().enumerate() {
        ids[k] = h.id;
        dists[k] = h.distance;
    }
    Ok(())
}

/// `k` nearest points. Results go to `ids`/`dists` (capacity `cap`);
/// `count` always receives the number of results, also when the status is
/// `BufferTooSmall`.
#[no_mangle]
pub unsafe extern "C" fn sk_index_query_nn(
    idx: *const SkIndex,
    q: *const SkVector,
    k: usize,
    ids: *mut usize,
    dists: *mut f64,
    cap: usize,
    count: *mut usize,
) -> SkStatus {
    guard(|| {
        let hits = get(idx, "index")?.0.query_nn(vec_ref(q, "q")?, k)?;
        write_hits(&hits, ids, dists, cap, count)
    })
}

/// Points within distance `r`; buffers as in [`sk_index_query_nn`].
#[no_mangle]
pub unsafe extern "C" fn sk_index_query_range(
    idx: *const SkIndex,
    q: *const SkVector,
    r: f64,
    ids: *mut usize,
    dists: *mut f64,
    cap: usize,
    count: *mut usize,
) -> SkStatus {
    guard(|| {
        let hits = get(idx, "index")?.0.query_range(vec_ref(q, "q")?, r)?;
        write_hits(&hits, ids, dists, cap, count)
    })
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a Path, Fail> {
    if path.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| Fail(SkStatus::InvalidArgument, "path is not UTF-8".into()))?;
    Ok(Path::new(s))
}

#[no_mangle]
pub unsafe extern "C" fn sk_index_save(idx: *const SkIndex, path: *const c_char) -> SkStatus {
    guard(|| {
        get(idx, "index")?.0.save(path_arg(path)?)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_index_load(
    path: *const c_char,
    out_index: *mut *mut SkIndex,
) -> SkStatus {
    guard(|| {
        let slot = out(out_index, "out")?;
        let idx = VpIndex::load(path_arg(path)?)?;
        *slot = Box::into_raw(Box::new(SkIndex(idx)));
        Ok(())
    })
}

/// Runs the randomized suite. `config_json` is a trial configuration, e.g.
/// `{"dims":[2,3],"trials_per_dim":100,"seed":42,"p_values":[2,3],
/// "scalar_field":"complex","tol":{"rel_eps":1e-9,"abs_eps":1e-12}}`.
/// The report is returned in `out_json`; release it with [`sk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sk_run_suite_json(
    config_json: *const c_char,
    parallel: bool,
    out_json: *mut *mut c_char,
) -> SkStatus {
    guard(|| {
        let slot = out(out_json, "out")?;
        if config_json.is_null() {
            return Err(null("config_json"));
        }
        let text = CStr::from_ptr(config_json)
            .to_str()
            .map_err(|_| Fail(SkStatus::InvalidArgument, "config is not UTF-8".into()))?;
        let config: TrialConfig = serde_json::from_str(text)
            .map_err(|e| Fail(SkStatus::Parse, format!("config: {e}")))?;
        let exec = if parallel {
            Execution::Parallel
        } else {
            Execution::Serial
        };
        let report = run_suite_with(&config, exec)?;
        let c = CString::new(report.to_json())
            .map_err(|_| Fail(SkStatus::Consistency, "report contains NUL".into()))?;
        *slot = c.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
