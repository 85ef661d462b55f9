use std::ffi::CStr;
use std::ptr;

use dunkl_kg_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(dkg_last_error()) }
        .to_string_lossy()
        .into_owned()
}

struct Solver(*mut DkgSolver);

impl Drop for Solver {
    fn drop(&mut self) {
        unsafe { dkg_solver_free(self.0) }
    }
}

fn solver(n: u32, gamma: f64) -> Solver {
    let mut raw = ptr::null_mut();
    let status = unsafe { dkg_solver_new(n, gamma, 30.0, 512, &mut raw) };
    assert_eq!(status, DkgStatus::Ok, "{}", last_error());
    assert!(!raw.is_null());
    Solver(raw)
}

fn nodes(s: &Solver) -> Vec<f64> {
    let len = unsafe { dkg_solver_len(s.0) };
    let mut out = vec![0.0; len];
    assert_eq!(unsafe { dkg_solver_nodes(s.0, out.as_mut_ptr(), len) }, DkgStatus::Ok);
    out
}

fn with_gaussian(s: &Solver, mass: f64) -> Vec<f64> {
    let r = nodes(s);
    let g: Vec<f64> = r.iter().map(|r| (-r * r / 2.0).exp()).collect();
    let f: Vec<f64> = g.iter().map(|v| 0.3 * v).collect();
    let status = unsafe { dkg_solver_set_data(s.0, g.as_ptr(), f.as_ptr(), g.len(), mass) };
    assert_eq!(status, DkgStatus::Ok, "{}", last_error());
    g
}

#[test]
fn bessel_entry_points() {
    let mut v = f64::NAN;
    assert_eq!(unsafe { dkg_bessel_j(0.5, 1.0, &mut v) }, DkgStatus::Ok);
    let closed = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sin();
    assert!((v - closed).abs() < 1e-14);

    assert_eq!(unsafe { dkg_normalized_bessel(0.0, 0.0, &mut v) }, DkgStatus::Ok);
    assert_eq!(v, 1.0);

    assert_eq!(unsafe { dkg_bessel_j(0.0, 1.0, ptr::null_mut()) }, DkgStatus::NullPointer);
    assert_eq!(
        unsafe { dkg_bessel_j(f64::NAN, 1.0, &mut v) },
        DkgStatus::InvalidArgument
    );
    assert!(!last_error().is_empty());
}

#[test]
fn construction_errors() {
    let mut raw = ptr::null_mut();
    assert_eq!(
        unsafe { dkg_solver_new(0, 1.0, 30.0, 512, &mut raw) },
        DkgStatus::InvalidArgument
    );
    assert!(raw.is_null());
    assert_eq!(
        unsafe { dkg_solver_new(1, 0.0, 30.0, 512, ptr::null_mut()) },
        DkgStatus::NullPointer
    );
    unsafe { dkg_solver_free(ptr::null_mut()) };
    assert_eq!(unsafe { dkg_solver_len(ptr::null()) }, 0);
}

#[test]
fn data_is_required_and_checked() {
    let s = solver(1, 0.0);
    let len = unsafe { dkg_solver_len(s.0) };
    let mut out = vec![0.0; len];
    let status = unsafe { dkg_solve(s.0, 1.0, out.as_mut_ptr(), ptr::null_mut(), len) };
    assert_eq!(status, DkgStatus::NoData);

    let short = vec![0.0; len - 1];
    let status =
        unsafe { dkg_solver_set_data(s.0, short.as_ptr(), short.as_ptr(), short.len(), 1.0) };
    assert_eq!(status, DkgStatus::LengthMismatch);

    let zeros = vec![0.0; len];
    let status = unsafe { dkg_solver_set_data(s.0, zeros.as_ptr(), zeros.as_ptr(), len, 0.0) };
    assert_eq!(status, DkgStatus::InvalidArgument);
    assert!(last_error().contains("mass"));
}

#[test]
fn solve_matches_initial_data_and_conserves() {
    let s = solver(3, 1.0);
    let g = with_gaussian(&s, 1.0);
    let len = g.len();

    let mut re = vec![0.0; len];
    let mut im = vec![0.0; len];
    assert_eq!(
        unsafe { dkg_solve(s.0, 0.0, re.as_mut_ptr(), im.as_mut_ptr(), len) },
        DkgStatus::Ok
    );
    assert_eq!(re, g);
    assert!(im.iter().all(|&v| v == 0.0));

    assert_eq!(
        unsafe { dkg_solve_dt(s.0, 0.0, re.as_mut_ptr(), ptr::null_mut(), len) },
        DkgStatus::Ok
    );
    assert!(re.iter().zip(&g).all(|(a, b)| *a == 0.3 * b));

    let mut e0 = DkgEnergies::default();
    let mut e1 = DkgEnergies::default();
    assert_eq!(unsafe { dkg_energies(s.0, 0.0, &mut e0) }, DkgStatus::Ok);
    assert_eq!(unsafe { dkg_energies(s.0, 7.5, &mut e1) }, DkgStatus::Ok);
    assert_eq!(e1.t, 7.5);
    assert!((e1.conserved - e0.conserved).abs() <= 1e-12 * e0.conserved);
    assert!((e0.total - e0.kinetic - e0.potential).abs() <= 1e-15 * e0.total);
}

#[test]
fn forward_transform_of_gaussian_is_itself() {
    let s = solver(1, 0.0);
    let r = nodes(&s);
    let g: Vec<f64> = r.iter().map(|r| (-r * r / 2.0).exp()).collect();
    let mut re = vec![0.0; g.len()];
    let status =
        unsafe { dkg_forward(s.0, g.as_ptr(), re.as_mut_ptr(), ptr::null_mut(), g.len()) };
    assert_eq!(status, DkgStatus::Ok);
    let err = re.iter().zip(&g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(err < 1e-10, "max error {err}");
}

#[test]
fn limits_are_consistent() {
    let s = solver(1, 1.0);
    with_gaussian(&s, 1.0);
    let mut l = DkgLimits::default();
    assert_eq!(unsafe { dkg_predict_limits(s.0, &mut l) }, DkgStatus::Ok);
    assert!((l.e_inf - l.k_inf - l.p_inf).abs() <= 1e-15 * l.e_inf);
    assert!(l.l2_inf <= l.strichartz_bound);
}

#[test]
fn status_messages_are_static() {
    let msg = unsafe { CStr::from_ptr(dkg_status_message(DkgStatus::LengthMismatch)) };
    assert_eq!(msg.to_str().unwrap(), "length mismatch");
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/dunkl_kg.h");
    for name in [
        "dkg_last_error",
        "dkg_status_message",
        "dkg_bessel_j",
        "dkg_normalized_bessel",
        "dkg_solver_new",
        "dkg_solver_free",
        "dkg_solver_len",
        "dkg_solver_nodes",
        "dkg_solver_set_data",
        "dkg_solve",
        "dkg_solve_dt",
        "dkg_forward",
        "dkg_energies",
        "dkg_predict_limits",
        "typedef struct DkgSolver DkgSolver",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
