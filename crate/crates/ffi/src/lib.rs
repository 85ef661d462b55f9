//! C interface to the `dunkl-kg` solver.
//!
//! Every function returns a [`DkgStatus`]. On failure a human-readable
//! message is kept per thread and can be fetched with [`dkg_last_error`].
//! Solvers are opaque handles created by [`dkg_solver_new`] and released by
//! [`dkg_solver_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use dunkl_kg::energetics::{energies, predict_limits};
use dunkl_kg::measures::{make_grid, MultIndex, RadialProfile};
use dunkl_kg::propagator::{CauchyData, Propagator};
use dunkl_kg::specfun::{bessel_j, normalized_bessel, Order};
use dunkl_kg::transform::DunklTransform;
use dunkl_kg::Error;
use num_complex::Complex64;

/// Result codes shared by all entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkgStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    LengthMismatch = 3,
    /// No initial data has been attached to the solver yet.
    NoData = 4,
    Numerical = 5,
    Panic = 6,
}

/// Opaque solver: a radial grid, its Dunkl transform and optional Cauchy data.
pub struct DkgSolver {
    transform: Arc<DunklTransform>,
    propagator: Option<Propagator>,
}

/// Energies at one instant.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DkgEnergies {
    pub t: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
    pub conserved: f64,
    pub l2: f64,
}

/// Predicted large-time limits. `strichartz_bound` may be `+inf`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DkgLimits {
    pub k_inf: f64,
    pub p_inf: f64,
    pub e_inf: f64,
    pub l2_inf: f64,
    pub strichartz_bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: DkgStatus, msg: impl Into<String>) -> DkgStatus {
    set_error(msg);
    status
}

fn from_core(err: Error) -> DkgStatus {
    let status = match err {
        Error::Domain { .. } | Error::InvalidParameter { .. } | Error::OutOfRange { .. } => {
            DkgStatus::InvalidArgument
        }
        Error::GridMismatch => DkgStatus::LengthMismatch,
        _ => DkgStatus::Numerical,
    };
    fail(status, err.to_string())
}

fn guard(body: impl FnOnce() -> DkgStatus) -> DkgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == DkgStatus::Ok {
                set_error("");
            }
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            fail(DkgStatus::Panic, format!("panic: {msg}"))
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(DkgStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Message describing the last failure on this thread, or an empty string.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dkg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn dkg_status_message(status: DkgStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        DkgStatus::Ok => b"ok\0",
        DkgStatus::InvalidArgument => b"invalid argument\0",
        DkgStatus::NullPointer => b"null pointer\0",
        DkgStatus::LengthMismatch => b"length mismatch\0",
        DkgStatus::NoData => b"no initial data attached\0",
        DkgStatus::Numerical => b"numerical failure\0",
        DkgStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Bessel function of the first kind `J_nu(x)` for `x > 0`.
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn dkg_bessel_j(nu: f64, x: f64, out: *mut f64) -> DkgStatus {
    guard(|| {
        non_null!(out);
        match Order::new(nu).and_then(|nu| bessel_j(nu, x)) {
            Ok(v) => {
                *out = v;
                DkgStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Normalized Bessel function `j_alpha(x)` with `j_alpha(0) = 1`.
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn dkg_normalized_bessel(alpha: f64, x: f64, out: *mut f64) -> DkgStatus {
    guard(|| {
        non_null!(out);
        match Order::new(alpha).and_then(|a| normalized_bessel(a, x)) {
            Ok(v) => {
                *out = v;
                DkgStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Builds a solver for dimension `n`, multiplicity `gamma` on `[0, rmax]`
/// with `nodes` Gauss-Legendre nodes.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dkg_solver_new(
    n: u32,
    gamma: f64,
    rmax: f64,
    nodes: usize,
    out: *mut *mut DkgSolver,
) -> DkgStatus {
    guard(|| {
        non_null!(out);
        *out = ptr::null_mut();
        let built = MultIndex::new(n, gamma)
            .and_then(|mu| Ok((mu, make_grid(rmax, nodes)?)))
            .and_then(|(mu, grid)| DunklTransform::new(mu, grid));
        match built {
            Ok(t) => {
                *out = Box::into_raw(Box::new(DkgSolver {
                    transform: Arc::new(t),
                    propagator: None,
                }));
                DkgStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Releases a solver. Null is ignored.
///
/// # Safety
/// `solver` must be null or come from [`dkg_solver_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dkg_solver_free(solver: *mut DkgSolver) {
    if !solver.is_null() {
        drop(Box::from_raw(solver));
    }
}

/// Number of radial nodes, or 0 for a null handle.
///
/// # Safety
/// `solver` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dkg_solver_len(solver: *const DkgSolver) -> usize {
    solver
        .as_ref()
        .map_or(0, |s| s.transform.grid().len())
}

/// Copies the radial nodes into `out[0..len]`.
///
/// # Safety
/// `solver` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn dkg_solver_nodes(
    solver: *const DkgSolver,
    out: *mut f64,
    len: usize,
) -> DkgStatus {
    guard(|| {
        non_null!(solver, out);
        let nodes = (*solver).transform.grid().nodes();
        if len != nodes.len() {
            return length_mismatch(len, nodes.len());
        }
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(nodes);
        DkgStatus::Ok
    })
}

fn length_mismatch(got: usize, want: usize) -> DkgStatus {
    fail(
        DkgStatus::LengthMismatch,
        format!("buffer holds {got} values, grid has {want} nodes"),
    )
}

/// Attaches real initial data sampled at the nodes: `position` is `u(., 0)`,
/// `velocity` is `d_t u(., 0)`, and `mass` must be positive.
///
/// # Safety
/// `solver` must be a live handle; `position` and `velocity` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn dkg_solver_set_data(
    solver: *mut DkgSolver,
    position: *const f64,
    velocity: *const f64,
    len: usize,
    mass: f64,
) -> DkgStatus {
    guard(|| {
        non_null!(solver, position, velocity);
        let solver = &mut *solver;
        let grid = solver.transform.grid().clone();
        if len != grid.len() {
            return length_mismatch(len, grid.len());
        }
        let lift = |p: *const f64| -> Vec<Complex64> {
            std::slice::from_raw_parts(p, len)
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect()
        };
        let mu = *solver.transform.mu();
        let built = RadialProfile::new(grid.clone(), lift(velocity))
            .and_then(|f| Ok((f, RadialProfile::new(grid, lift(position))?)))
            .and_then(|(f, g)| CauchyData::new(mu, f, g, mass))
            .and_then(|data| Propagator::with_transform(solver.transform.clone(), data));
        match built {
            Ok(p) => {
                solver.propagator = Some(p);
                DkgStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

unsafe fn propagator<'a>(solver: *const DkgSolver) -> Result<&'a Propagator, DkgStatus> {
    match (*solver).propagator.as_ref() {
        Some(p) => Ok(p),
        None => Err(fail(
            DkgStatus::NoData,
            "call dkg_solver_set_data before evaluating the solution",
        )),
    }
}

unsafe fn write_profile(
    result: dunkl_kg::Result<RadialProfile>,
    out_re: *mut f64,
    out_im: *mut f64,
    len: usize,
) -> DkgStatus {
    let profile = match result {
        Ok(p) => p,
        Err(e) => return from_core(e),
    };
    if len != profile.len() {
        return length_mismatch(len, profile.len());
    }
    let re = std::slice::from_raw_parts_mut(out_re, len);
    for (dst, v) in re.iter_mut().zip(profile.values()) {
        *dst = v.re;
    }
    if !out_im.is_null() {
        let im = std::slice::from_raw_parts_mut(out_im, len);
        for (dst, v) in im.iter_mut().zip(profile.values()) {
            *dst = v.im;
        }
    }
    DkgStatus::Ok
}

/// Writes `u(., t)` at the nodes. `out_im` may be null.
///
/// # Safety
/// `solver` must be a live handle; `out_re` (and `out_im` if not null) must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn dkg_solve(
    solver: *const DkgSolver,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    len: usize,
) -> DkgStatus {
    guard(|| {
        non_null!(solver, out_re);
        match propagator(solver) {
            Ok(p) => write_profile(p.solve(t), out_re, out_im, len),
            Err(status) => status,
        }
    })
}

/// Writes `d_t u(., t)` at the nodes. `out_im` may be null.
///
/// # Safety
/// Same contract as [`dkg_solve`].
#[no_mangle]
pub unsafe extern "C" fn dkg_solve_dt(
    solver: *const DkgSolver,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    len: usize,
) -> DkgStatus {
    guard(|| {
        non_null!(solver, out_re);
        match propagator(solver) {
            Ok(p) => write_profile(p.solve_dt(t), out_re, out_im, len),
            Err(status) => status,
        }
    })
}

/// Spectral forward transform of real samples `input[0..len]`.
///
/// # Safety
/// `solver` must be a live handle; `input` and `out_re` (and `out_im` if not null) must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn dkg_forward(
    solver: *const DkgSolver,
    input: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
    len: usize,
) -> DkgStatus {
    guard(|| {
        non_null!(solver, input, out_re);
        let transform = &(*solver).transform;
        let grid = transform.grid().clone();
        if len != grid.len() {
            return length_mismatch(len, grid.len());
        }
        let values = std::slice::from_raw_parts(input, len)
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let spectral = RadialProfile::new(grid, values).and_then(|f| transform.forward(&f));
        let spectral = match spectral {
            Ok(s) => s,
            Err(e) => return from_core(e),
        };
        let re = std::slice::from_raw_parts_mut(out_re, len);
        for (dst, v) in re.iter_mut().zip(spectral.values()) {
            *dst = v.re;
        }
        if !out_im.is_null() {
            let im = std::slice::from_raw_parts_mut(out_im, len);
            for (dst, v) in im.iter_mut().zip(spectral.values()) {
                *dst = v.im;
            }
        }
        DkgStatus::Ok
    })
}

/// Kinetic, potential, total and conserved energies at time `t`.
///
/// # Safety
/// `solver` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dkg_energies(
    solver: *const DkgSolver,
    t: f64,
    out: *mut DkgEnergies,
) -> DkgStatus {
    guard(|| {
        non_null!(solver, out);
        if !t.is_finite() {
            return fail(DkgStatus::InvalidArgument, format!("time must be finite, got {t}"));
        }
        let p = match propagator(solver) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let e = energies(p, t);
        *out = DkgEnergies {
            t: e.t,
            kinetic: e.kinetic,
            potential: e.potential,
            total: e.total,
            conserved: e.conserved,
            l2: e.l2,
        };
        DkgStatus::Ok
    })
}

/// Predicted `t -> infinity` limits of the energies and of `||u||^2`.
///
/// # Safety
/// `solver` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dkg_predict_limits(solver: *const DkgSolver, out: *mut DkgLimits) -> DkgStatus {
    guard(|| {
        non_null!(solver, out);
        let p = match propagator(solver) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let l = predict_limits(p);
        *out = DkgLimits {
            k_inf: l.k_inf,
            p_inf: l.p_inf,
            e_inf: l.e_inf,
            l2_inf: l.l2_inf,
            strichartz_bound: l.strichartz_bound,
        };
        DkgStatus::Ok
    })
}
