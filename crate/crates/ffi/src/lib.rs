//! C ABI over the chain-construction toolkit: opaque handles, status codes,
//! plain-data step records. The header is generated into
//! `include/sixcircles.h` at build time.
//!
//! Ownership rules: every `*_new`/`*_run` that returns `SC_STATUS_OK` hands
//! the caller a pointer that must be released with the matching `*_free`.
//! Output pointers are only written on `SC_STATUS_OK`.

use sixcircles::chain::{
    circle_from_phi, circle_from_radius, run_chain, ChainRecord, Choice, Policy, SignCase,
    Termination,
};
use sixcircles::oracles::brute_force_malfatti;
use sixcircles::plmap::{composite_params, f_eval, fixed_point, orbit, PlParams, FLOAT_CYCLE_TOL};
use sixcircles::Triangle;
use std::os::raw::c_char;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    NonPositiveSide = 3,
    TriangleInequality = 4,
    NotConstructible = 5,
    NoConvergence = 6,
    MapDomain = 7,
    IndexOutOfRange = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScPolicy {
    Smaller = 0,
    Larger = 1,
    Random = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScTermination {
    MaxSteps = 0,
    CycleDetected = 1,
    NotConstructible = 2,
    DegenerateCircle = 3,
}

/// One chain element. `phi` is NaN when the angle coordinate is undefined;
/// `choice` and `sign_case` are -1 on the initial circle, otherwise
/// 0 = smaller / plus-on-side and 1 = larger / minus-on-extension.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ScStep {
    pub vertex: u32,
    pub radius: f64,
    pub u: f64,
    pub phi: f64,
    pub center_x: f64,
    pub center_y: f64,
    pub choice: i32,
    pub sign_case: i32,
}

pub struct ScTriangle {
    inner: Triangle,
}

pub struct ScChain {
    record: ChainRecord<Triangle>,
    semiperimeter: f64,
}

fn status_of(err: &sixcircles::Error) -> ScStatus {
    use sixcircles::Error::*;
    match err {
        NonPositiveSide { .. } => ScStatus::NonPositiveSide,
        TriangleInequalityViolated { .. } => ScStatus::TriangleInequality,
        RadicandNegative { .. } | NegativeRoot(_) | NotConstructible | DegenerateCircle => {
            ScStatus::NotConstructible
        }
        DomainExceeded { .. } | InvalidMapParams { .. } => ScStatus::MapDomain,
        NoConvergence(_) | MaxIterExceeded(_) | NoRoot { .. } => ScStatus::NoConvergence,
        _ => ScStatus::InvalidArgument,
    }
}

/// Builds a triangle from side lengths (side i opposite vertex i).
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_new(
    a1: f64,
    a2: f64,
    a3: f64,
    out: *mut *mut ScTriangle,
) -> ScStatus {
    if out.is_null() {
        return ScStatus::NullArgument;
    }
    match Triangle::from_sides(a1, a2, a3) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(ScTriangle { inner }));
            ScStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `t` must come from `sc_triangle_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_free(t: *mut ScTriangle) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

unsafe fn write3(out: *mut f64, values: [f64; 3]) {
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, 3);
}

/// # Safety
/// `t` must be a live triangle handle; `out` must hold one f64.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_semiperimeter(
    t: *const ScTriangle,
    out: *mut f64,
) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    *out = (*t).inner.semiperimeter();
    ScStatus::Ok
}

/// # Safety
/// `t` must be a live triangle handle; `out` must hold three f64.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_half_angles(t: *const ScTriangle, out: *mut f64) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    write3(out, (*t).inner.half_angles());
    ScStatus::Ok
}

/// # Safety
/// `t` must be a live triangle handle; `out` must hold three f64.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_betas(t: *const ScTriangle, out: *mut f64) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    write3(out, (*t).inner.betas());
    ScStatus::Ok
}

/// # Safety
/// `t` must be a live triangle handle; `out` must hold three f64.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_couplings(t: *const ScTriangle, out: *mut f64) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    write3(out, (*t).inner.couplings());
    ScStatus::Ok
}

/// # Safety
/// `t` must be a live triangle handle; `out` must hold three f64.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_tangent_lengths(
    t: *const ScTriangle,
    out: *mut f64,
) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    write3(out, (*t).inner.tangent_lengths());
    ScStatus::Ok
}

/// Canonical embedding, six doubles `x1, y1, x2, y2, x3, y3`.
///
/// # Safety
/// `t` must be a live triangle handle; `out` must hold six f64.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_vertices(t: *const ScTriangle, out: *mut f64) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    for (k, v) in (*t).inner.vertices().iter().enumerate() {
        *out.add(2 * k) = v.x;
        *out.add(2 * k + 1) = v.y;
    }
    ScStatus::Ok
}

/// Scaled interval-map parameters `(a, b)` of the triangle's triple-step map.
///
/// # Safety
/// `t` must be a live triangle handle; `out_a` and `out_b` hold one f64 each.
#[no_mangle]
pub unsafe extern "C" fn sc_triangle_map_params(
    t: *const ScTriangle,
    out_a: *mut f64,
    out_b: *mut f64,
) -> ScStatus {
    if t.is_null() || out_a.is_null() || out_b.is_null() {
        return ScStatus::NullArgument;
    }
    let params = composite_params(&(*t).inner);
    *out_a = params.a();
    *out_b = params.b();
    ScStatus::Ok
}

/// Radii of the unique pairwise tangent triple, circle k in angle k.
///
/// # Safety
/// `t` must be a live triangle handle; `out` must hold three f64.
#[no_mangle]
pub unsafe extern "C" fn sc_malfatti_radii(t: *const ScTriangle, out: *mut f64) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    match brute_force_malfatti(&(*t).inner) {
        Ok(radii) => {
            write3(out, radii);
            ScStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

unsafe fn chain_run(
    t: *const ScTriangle,
    initial: impl FnOnce(&Triangle, usize) -> sixcircles::AngleCircle,
    start_vertex: u32,
    policy: ScPolicy,
    seed: u64,
    max_steps: usize,
    out: *mut *mut ScChain,
) -> ScStatus {
    if t.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    if !(1..=3).contains(&start_vertex) {
        return ScStatus::InvalidArgument;
    }
    let tri = &(*t).inner;
    let policy = match policy {
        ScPolicy::Smaller => Policy::AlwaysSmaller,
        ScPolicy::Larger => Policy::AlwaysLarger,
        ScPolicy::Random => Policy::Random { seed },
    };
    let record = run_chain(
        tri,
        initial(tri, start_vertex as usize - 1),
        &policy,
        max_steps,
    );
    *out = Box::into_raw(Box::new(ScChain {
        semiperimeter: tri.semiperimeter(),
        record,
    }));
    ScStatus::Ok
}

/// Runs a chain whose first circle has angle coordinate `phi0` at the 1-based
/// `start_vertex`.
///
/// # Safety
/// `t` must be a live triangle handle; `out` must hold one pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_run_phi(
    t: *const ScTriangle,
    start_vertex: u32,
    phi0: f64,
    policy: ScPolicy,
    seed: u64,
    max_steps: usize,
    out: *mut *mut ScChain,
) -> ScStatus {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi0) {
        return ScStatus::InvalidArgument;
    }
    chain_run(
        t,
        |tri, v| circle_from_phi(tri, v, phi0),
        start_vertex,
        policy,
        seed,
        max_steps,
        out,
    )
}

/// Runs a chain whose first circle has radius `r0` at the 1-based
/// `start_vertex`.
///
/// # Safety
/// `t` must be a live triangle handle; `out` must hold one pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_run_radius(
    t: *const ScTriangle,
    start_vertex: u32,
    r0: f64,
    policy: ScPolicy,
    seed: u64,
    max_steps: usize,
    out: *mut *mut ScChain,
) -> ScStatus {
    if r0.is_nan() || r0 < 0.0 {
        return ScStatus::InvalidArgument;
    }
    chain_run(
        t,
        |tri, v| circle_from_radius(tri, v, r0),
        start_vertex,
        policy,
        seed,
        max_steps,
        out,
    )
}

/// # Safety
/// `c` must come from a chain constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_free(c: *mut ScChain) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of circles in the chain, including the initial one.
///
/// # Safety
/// `c` must be a live chain handle.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_len(c: *const ScChain) -> usize {
    if c.is_null() {
        return 0;
    }
    (*c).record.steps.len()
}

/// # Safety
/// `c` must be a live chain handle.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_termination(c: *const ScChain) -> ScTermination {
    match (*c).record.termination {
        Termination::MaxSteps => ScTermination::MaxSteps,
        Termination::CycleDetected => ScTermination::CycleDetected,
        Termination::NotConstructible => ScTermination::NotConstructible,
        Termination::DegenerateCircle => ScTermination::DegenerateCircle,
    }
}

/// Circles before the first cycle element, or -1 when no cycle was detected.
///
/// # Safety
/// `c` must be a live chain handle.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_pre_period(c: *const ScChain) -> i64 {
    (*c).record.pre_period.map_or(-1, |v| v as i64)
}

/// Cycle length in chain steps, or -1 when no cycle was detected.
///
/// # Safety
/// `c` must be a live chain handle.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_period(c: *const ScChain) -> i64 {
    (*c).record.period.map_or(-1, |v| v as i64)
}

/// Copies the 0-based `index`-th chain element into `out`.
///
/// # Safety
/// `c` must be a live chain handle; `out` must hold one `ScStep`.
#[no_mangle]
pub unsafe extern "C" fn sc_chain_step(
    c: *const ScChain,
    index: usize,
    out: *mut ScStep,
) -> ScStatus {
    if c.is_null() || out.is_null() {
        return ScStatus::NullArgument;
    }
    let chain = &*c;
    let Some(step) = chain.record.steps.get(index) else {
        return ScStatus::IndexOutOfRange;
    };
    let circle = &step.circle;
    *out = ScStep {
        vertex: circle.vertex as u32 + 1,
        radius: circle.radius,
        u: circle.u,
        phi: sixcircles::plmap::phi_from_u(circle.u, chain.semiperimeter).unwrap_or(f64::NAN),
        center_x: circle.center.x,
        center_y: circle.center.y,
        choice: match step.choice {
            None => -1,
            Some(Choice::Smaller) => 0,
            Some(Choice::Larger) => 1,
        },
        sign_case: match step.sign_case {
            None => -1,
            Some(SignCase::PlusOnSide) => 0,
            Some(SignCase::MinusOnExtension) => 1,
        },
    };
    ScStatus::Ok
}

/// Evaluates the interval map `f(x) = |||x-1|-a|-b|` after validating
/// `1 <= a <= b < a+1`.
///
/// # Safety
/// `out` must hold one f64.
#[no_mangle]
pub unsafe extern "C" fn sc_map_eval(a: f64, b: f64, x: f64, out: *mut f64) -> ScStatus {
    if out.is_null() {
        return ScStatus::NullArgument;
    }
    match PlParams::new(a, b) {
        Ok(params) => {
            *out = f_eval(params, x);
            ScStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Fixed point `(1 + b - a) / 2` of the interval map.
///
/// # Safety
/// `out` must hold one f64.
#[no_mangle]
pub unsafe extern "C" fn sc_map_fixed_point(a: f64, b: f64, out: *mut f64) -> ScStatus {
    if out.is_null() {
        return ScStatus::NullArgument;
    }
    match PlParams::new(a, b) {
        Ok(params) => {
            *out = fixed_point(params);
            ScStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Pre-period and period (1 or 2) of the orbit of `x0`.
///
/// # Safety
/// `out_pre_period` and `out_period` must each hold one value.
#[no_mangle]
pub unsafe extern "C" fn sc_map_orbit(
    a: f64,
    b: f64,
    x0: f64,
    max_iter: usize,
    out_pre_period: *mut usize,
    out_period: *mut u32,
) -> ScStatus {
    if out_pre_period.is_null() || out_period.is_null() {
        return ScStatus::NullArgument;
    }
    if x0.is_nan() || x0 < 0.0 {
        return ScStatus::InvalidArgument;
    }
    let params = match PlParams::new(a, b) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match orbit(params, x0, FLOAT_CYCLE_TOL, max_iter) {
        Ok(report) => {
            *out_pre_period = report.pre_period;
            *out_period = report.period as u32;
            ScStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Version of the underlying library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
