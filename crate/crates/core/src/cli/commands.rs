//! Experiment drivers behind the subcommands.

use super::config::RunConfig;
use super::output::{fmt_num, Constants, Report, Table};
use super::Outcome;
use crate::energetics::{measure_series, predict_limits};
use crate::error::{Error, Result};
use crate::kernels::{
    compare_at_origin, hankel_f_closed, hankel_g_closed, ArgumentConvention, KernelParams,
};
use crate::measures::{make_grid, weighted_norm_sq, MultIndex, RadialGrid, RadialProfile};
use crate::oracle::classical_reference;
use crate::propagator::{CauchyData, Propagator};
use crate::tolerances;
use crate::transform::DunklTransform;
use serde_json::json;
use std::sync::Arc;

/// Default number of time steps of `energies` and `limits`.
pub const DEFAULT_SERIES_STEPS: usize = 40_000;
/// Default number of intervals of the `repr-check` time table.
pub const DEFAULT_REPR_STEPS: usize = 6;

/// Grid, multiplicity, transform and sampled data for one configuration.
pub struct Setup {
    pub mu: MultIndex,
    pub grid: Arc<RadialGrid>,
    pub transform: Arc<DunklTransform>,
    pub f: RadialProfile,
    pub g: RadialProfile,
}

impl Setup {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        let mu = MultIndex::new(cfg.n, cfg.gamma)?;
        let grid = make_grid(cfg.rmax, cfg.nodes)?;
        let f = RadialProfile::from_fn(grid.clone(), |r| cfg.velocity_profile.eval(r, cfg.width))?;
        let g = RadialProfile::from_fn(grid.clone(), |r| cfg.profile.eval(r, cfg.width))?;
        let transform = Arc::new(DunklTransform::new(mu, grid.clone())?);
        Ok(Self {
            mu,
            grid,
            transform,
            f,
            g,
        })
    }

    pub fn constants(&self) -> Constants {
        Constants {
            alpha: self.mu.alpha(),
            d_k: self.mu.d_k(),
            unitary_scale: self.transform.unitary_scale(),
        }
    }

    /// Propagator with mass `m > 0`.
    pub fn propagator(&self, m: f64) -> Result<Propagator> {
        let data = CauchyData::new(self.mu, self.f.clone(), self.g.clone(), m)?;
        Propagator::with_transform(self.transform.clone(), data)
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::VerificationFailure
    }
}

/// Rows `(r, f, Hf, round_trip_error)` for the position profile.
pub fn cmd_transform(cfg: &RunConfig) -> Result<(String, Outcome)> {
    let setup = Setup::new(cfg)?;
    let f = &setup.g;
    let fh = setup.transform.forward(f)?;
    let back = setup.transform.inverse(&fh)?;
    let mut table = Table::new(&["r", "f", "Hf", "round_trip_error"]);
    let mut max_err: f64 = 0.0;
    for (i, &r) in setup.grid.nodes().iter().enumerate() {
        let err = (back.values()[i] - f.values()[i]).norm();
        max_err = max_err.max(err);
        table.push_numbers(&[r, f.values()[i].re, fh.values()[i].re, err]);
    }
    let norm_phys = weighted_norm_sq(&setup.mu, f);
    let norm_spec = weighted_norm_sq(&setup.mu, &fh);
    let scale = f.sup_norm();
    let rel_rt = if scale > 0.0 { max_err / scale } else { max_err };
    let rel_pl = if norm_phys > 0.0 {
        (norm_phys - norm_spec).abs() / norm_phys
    } else {
        (norm_phys - norm_spec).abs()
    };
    let ok = rel_rt <= tolerances::TRANSFORM_UNITARY && rel_pl <= tolerances::TRANSFORM_UNITARY;
    let report = Report {
        table,
        results: json!({
            "max_round_trip_error": max_err,
            "norm_phys": norm_phys,
            "norm_spec": norm_spec,
        }),
        residuals: json!({
            "round_trip_relative": rel_rt,
            "plancherel_relative": rel_pl,
        }),
        constants: setup.constants(),
    };
    Ok((report.render(cfg), outcome(ok)))
}

/// Rows `(r, Re u, Im u, Re d_t u)` at time `t`; mass 0 solves the wave equation.
pub fn cmd_solve(cfg: &RunConfig) -> Result<(String, Outcome)> {
    let setup = Setup::new(cfg)?;
    let wave = cfg.mass == 0.0;
    let p = setup.propagator(if wave { 1.0 } else { cfg.mass })?;
    let (u, ut) = if wave {
        (p.wave_limit_solve(cfg.t)?, p.wave_limit_solve_dt(cfg.t)?)
    } else {
        (p.solve(cfg.t)?, p.solve_dt(cfg.t)?)
    };
    let oracle = if !wave && cfg.n == 1 && cfg.gamma == 0.0 {
        Some(classical_reference(p.data(), cfg.t)?)
    } else {
        None
    };
    let mut headers = vec!["r", "re_u", "im_u", "re_dt_u"];
    if oracle.is_some() {
        headers.push("oracle_abs_diff");
    }
    let mut table = Table::new(&headers);
    let mut oracle_max: f64 = 0.0;
    for (i, &r) in setup.grid.nodes().iter().enumerate() {
        let mut row = vec![r, u.values()[i].re, u.values()[i].im, ut.values()[i].re];
        if let Some(o) = &oracle {
            let d = (o.values()[i] - u.values()[i]).norm();
            oracle_max = oracle_max.max(d);
            row.push(d);
        }
        table.push_numbers(&row);
    }
    let norm_sq = weighted_norm_sq(&setup.mu, &u);
    let ok = oracle.is_none() || oracle_max <= tolerances::CLASSICAL_REFERENCE_MASSIVE;
    let report = Report {
        table,
        results: json!({
            "t": cfg.t,
            "wave_equation": wave,
            "norm_sq": norm_sq,
        }),
        residuals: json!({
            "oracle_max_abs_diff": oracle.as_ref().map(|_| oracle_max),
        }),
        constants: setup.constants(),
    };
    Ok((report.render(cfg), outcome(ok)))
}

fn series_steps(cfg: &RunConfig) -> usize {
    cfg.steps.unwrap_or(DEFAULT_SERIES_STEPS)
}

/// Energy series `(t, K, P, E, Q, L2)` with limits and Cesaro residuals.
pub fn cmd_energies(cfg: &RunConfig) -> Result<(String, Outcome)> {
    let setup = Setup::new(cfg)?;
    let p = setup.propagator(cfg.positive_mass()?)?;
    let series = measure_series(&p, cfg.t_max, series_steps(cfg))?;
    let limits = predict_limits(&p).with_measurement(&series)?;
    let half = predict_limits(&p).with_measurement(&truncate_half(&series))?;
    let mut table = Table::new(&["t", "K", "P", "E", "Q", "L2"]);
    for i in 0..series.len() {
        let s = series.sample(i);
        table.push_numbers(&[s.t, s.kinetic, s.potential, s.total, s.conserved, s.l2]);
    }
    let drift = series.conservation_drift();
    let ok = drift <= tolerances::CONSERVATION;
    let report = Report {
        table,
        results: json!({
            "limits": limits,
            "series": series,
        }),
        residuals: json!({
            "conservation_drift": drift,
            "cesaro": limits.residuals,
            "cesaro_half_horizon": half.residuals,
        }),
        constants: setup.constants(),
    };
    Ok((report.render(cfg), outcome(ok)))
}

fn truncate_half(series: &crate::energetics::EnergySeries) -> crate::energetics::EnergySeries {
    let n = series.len() / 2 + 1;
    crate::energetics::EnergySeries {
        times: series.times[..n].to_vec(),
        kinetic: series.kinetic[..n].to_vec(),
        potential: series.potential[..n].to_vec(),
        total: series.total[..n].to_vec(),
        conserved: series.conserved[..n].to_vec(),
        l2: series.l2[..n].to_vec(),
    }
}

/// Predicted limits against Cesaro averages over `[0, t-max]`.
pub fn cmd_limits(cfg: &RunConfig) -> Result<(String, Outcome)> {
    let setup = Setup::new(cfg)?;
    let p = setup.propagator(cfg.positive_mass()?)?;
    let series = measure_series(&p, cfg.t_max, series_steps(cfg))?;
    let limits = predict_limits(&p).with_measurement(&series)?;
    let avg = limits.measured.expect("measurement attached");
    let res = limits.residuals.expect("measurement attached");
    let mut table = Table::new(&["quantity", "predicted", "measured", "relative_residual"]);
    for (name, pred, meas, r) in [
        ("kinetic", limits.k_inf, avg.kinetic, res.kinetic),
        ("potential", limits.p_inf, avg.potential, res.potential),
        ("total", limits.e_inf, avg.total, res.total),
        ("l2", limits.l2_inf, avg.l2, res.l2),
    ] {
        table.push(vec![name.to_string(), fmt_num(pred), fmt_num(meas), fmt_num(r)]);
    }
    table.push(vec![
        "strichartz_bound".to_string(),
        fmt_num(limits.strichartz_bound),
        fmt_num(limits.l2_inf),
        fmt_num(f64::NAN),
    ]);
    let ok = res.max() <= tolerances::CESARO_LIMIT && limits.strichartz_holds();
    let report = Report {
        table,
        results: json!({ "limits": limits }),
        residuals: json!({
            "cesaro": res,
            "strichartz_holds": limits.strichartz_holds(),
        }),
        constants: setup.constants(),
    };
    Ok((report.render(cfg), outcome(ok)))
}

/// Table of `u(0, t)` from both representations.
pub fn cmd_repr_check(cfg: &RunConfig) -> Result<(String, Outcome)> {
    if cfg.t.abs() > cfg.rmax {
        return Err(Error::OutOfRange {
            what: "t",
            value: cfg.t,
            lo: -cfg.rmax,
            hi: cfg.rmax,
        });
    }
    let setup = Setup::new(cfg)?;
    let m = cfg.positive_mass()?;
    let p = setup.propagator(m)?;
    let k = cfg.steps.unwrap_or(DEFAULT_REPR_STEPS);
    let mut table = Table::new(&["t", "u_spectral", "u_integral", "abs_diff"]);
    let mut worst: f64 = 0.0;
    for i in 0..=k {
        let t = cfg.t * i as f64 / k as f64;
        let (s, v) = compare_at_origin(&p, t, ArgumentConvention::SquareRoot)?;
        let diff = (s - v).norm();
        worst = worst.max(diff / s.norm().max(1.0));
        table.push_numbers(&[t, s.re, v.re, diff]);
    }
    let mut support_max: f64 = 0.0;
    let t_ref = if cfg.t == 0.0 { 1.0 } else { cfg.t.abs() };
    let params = KernelParams::new(setup.mu.alpha(), m, t_ref)?;
    for j in 1..=10 {
        let y = t_ref * (1.0 + 0.1 * j as f64);
        support_max = support_max
            .max(hankel_g_closed(&params, y)?.abs())
            .max(hankel_f_closed(&params, y)?.abs());
    }
    let ok = worst <= tolerances::INTEGRAL_REPRESENTATION && support_max == 0.0;
    let report = Report {
        table,
        results: json!({ "max_relative_diff": worst }),
        residuals: json!({
            "max_relative_diff": worst,
            "support_max_abs": support_max,
        }),
        constants: setup.constants(),
    };
    Ok((report.render(cfg), outcome(ok)))
}
