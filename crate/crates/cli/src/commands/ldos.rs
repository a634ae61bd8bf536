//! `ldos`: channel-resolved LDOS scans, near-zero oscillations and the
//! normalized states behind them.

use super::{energies, with_threads, ScanConfig};
use crate::error::CliResult;
use crate::presets::View;
use crate::svg::PlotSpec;
use crate::table::{Cell, Table};
use conecollapse::cone::{tilde_alpha, ConeGeometry};
use conecollapse::ldos::{describe_oscillations, ldos_asymptotic_large_e, LdosGrid, LdosOptions};
use conecollapse::states::{QuantumState, ZpieForm};
use conecollapse::Error;
use rayon::prelude::*;
use std::f64::consts::PI;

pub fn run(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    with_threads(cfg.output.threads, || match cfg.view {
        View::States => states(cfg),
        View::Ldos => ldos(cfg),
    })?
}

fn options(cfg: &ScanConfig) -> LdosOptions {
    LdosOptions {
        l_max: cfg.l_max,
        y_mode: cfg.y_mode,
    }
}

fn states(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    let mut t = Table::new(
        "states",
        &["alpha", "eps", "r", "psi_collapse", "psi_scattering_l1", "envelope", "plane_l0", "plane_l1"],
    )
    .with_plot(
        PlotSpec::new("r", &["psi_collapse", "psi_scattering_l1", "envelope"]).group_by(&["alpha", "eps"]),
    );
    let r_end = cfg.rs.iter().copied().fold(1.0, f64::max);
    let n = ((r_end - 1.0) * 20.0).ceil().max(1.0) as usize;
    for &alpha in &cfg.alphas {
        let geom = ConeGeometry::new(alpha)?;
        for eps in cfg.energies() {
            let collapse = QuantumState::collapse(&geom, eps)?;
            let scat = QuantumState::scattering(&geom, 1, eps, cfg.y_mode)?;
            let (p0, p1) = (QuantumState::plane(0, eps)?, QuantumState::plane(1, eps)?);
            for i in 0..=n {
                let r = 1.0 + (r_end - 1.0) * i as f64 / n as f64;
                let env = (2.0 / (PI * eps.sqrt() * r)).sqrt();
                t.push(vec![
                    alpha.into(),
                    eps.into(),
                    r.into(),
                    collapse.value(r)?.into(),
                    scat.value(r)?.into(),
                    env.into(),
                    p0.value(r)?.into(),
                    p1.value(r)?.into(),
                ]);
            }
        }
    }
    Ok(vec![t])
}

/// Hard-hole plane LDOS `Σ_{|l| ≤ l_max}` of the α = 1 states, per radius.
fn plane_ldos(eps: f64, rs: &[f64], l_max: u32) -> conecollapse::Result<Vec<f64>> {
    let chans = (0..=l_max as i64)
        .map(|l| QuantumState::plane(l, eps))
        .collect::<conecollapse::Result<Vec<_>>>()?;
    rs.iter()
        .map(|&r| {
            let mut s = 0.0;
            for (l, c) in chans.iter().enumerate() {
                let v = c.value(r)?;
                s += if l == 0 { v * v } else { 2.0 * v * v };
            }
            Ok(s)
        })
        .collect()
}

fn ldos(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    let opts = options(cfg);
    let eps = cfg.energies();
    let mut main = Table::new(
        "ldos",
        &[
            "alpha",
            "r",
            "eps",
            "total",
            "l0",
            "lneq0",
            "l0_asymptote",
            "lneq0_asymptote",
            "plane",
        ],
    )
    .with_plot(PlotSpec::new("eps", &["total", "l0", "lneq0", "plane"]).group_by(&["alpha", "r"]).log_x());
    let plane = eps
        .par_iter()
        .map(|&e| plane_ldos(e, &cfg.rs, cfg.l_max))
        .collect::<conecollapse::Result<Vec<_>>>()?;
    for &alpha in &cfg.alphas {
        let geom = ConeGeometry::new(alpha)?;
        let grid = LdosGrid::compute(&geom, &eps, &cfg.rs, &opts)?;
        for (j, &r) in cfg.rs.iter().enumerate() {
            for (i, &e) in eps.iter().enumerate() {
                let (a0, a1) = ldos_asymptotic_large_e(e, r, cfg.l_max);
                main.push(vec![
                    alpha.into(),
                    r.into(),
                    e.into(),
                    grid.values_total[i][j].into(),
                    grid.values_l0[i][j].into(),
                    grid.values_lneq0[i][j].into(),
                    a0.into(),
                    a1.into(),
                    plane[i][j].into(),
                ]);
            }
        }
    }
    let mut out = vec![main];
    if let Some(window) = cfg.near {
        out.extend(near_zero(cfg, window, &opts)?);
    }
    Ok(out)
}

fn near_zero(cfg: &ScanConfig, window: (f64, f64), opts: &LdosOptions) -> CliResult<Vec<Table>> {
    let eps = energies(window, cfg.near_points_per_decade);
    let xs: Vec<f64> = eps.iter().map(|e| 0.5 * e.ln()).collect();
    // a period sampled by fewer than eight points is reported as unresolved
    let spacing = 0.5 * std::f64::consts::LN_10 / cfg.near_points_per_decade as f64;
    let mut near = Table::new("near_zero", &["alpha", "r", "eps", "total", "l0", "l0_zero_energy_form"])
        .with_plot(PlotSpec::new("eps", &["total", "l0_zero_energy_form"]).group_by(&["alpha", "r"]).log_x());
    let mut osc = Table::new(
        "oscillations",
        &[
            "alpha",
            "r",
            "extrema",
            "period",
            "period_expected",
            "amplitude",
            "mean_level",
            "mean_level_formula",
            "sin2_law",
        ],
    )
    .with_plot(PlotSpec::new("r", &["amplitude", "mean_level", "mean_level_formula"]).group_by(&["alpha"]));
    for &alpha in &cfg.alphas {
        let geom = ConeGeometry::new(alpha)?;
        let z = ZpieForm::new(geom.tilde_alpha())?;
        let grid = LdosGrid::compute(&geom, &eps, &cfg.near_rs, opts)?;
        for (j, &r) in cfg.near_rs.iter().enumerate() {
            let total = LdosGrid::column(&grid.values_total, j);
            for (i, &e) in eps.iter().enumerate() {
                near.push(vec![
                    alpha.into(),
                    r.into(),
                    e.into(),
                    total[i].into(),
                    grid.values_l0[i][j].into(),
                    z.value(e, r).powi(2).into(),
                ]);
            }
            let expected = PI / geom.tilde_alpha();
            let described = if expected < 8.0 * spacing {
                Err(Error::InsufficientResolution { found: 0, needed: 3 })
            } else {
                describe_oscillations(window, &xs, &total)
            };
            let (n, period, amp, mean): (usize, Cell, Cell, Cell) = match described {
                Ok(d) => (
                    d.extrema.len(),
                    d.period_in_log_sqrt_eps.into(),
                    d.amplitude.into(),
                    d.mean_level.into(),
                ),
                Err(Error::InsufficientResolution { found, .. }) => {
                    (found, f64::NAN.into(), f64::NAN.into(), f64::NAN.into())
                }
                Err(e) => return Err(e.into()),
            };
            osc.push(vec![
                alpha.into(),
                r.into(),
                n.into(),
                period,
                expected.into(),
                amp,
                mean,
                z.mean_level(r).into(),
                (geom.tilde_alpha() * r.ln()).sin().powi(2).into(),
            ]);
        }
    }
    let mut curve = Table::new("average_curve", &["r", "alpha", "mean_level_formula"])
        .with_plot(PlotSpec::new("alpha", &["mean_level_formula"]).group_by(&["r"]));
    for &r in &cfg.near_rs {
        for i in 1..50 {
            let alpha = i as f64 / 50.0;
            let z = ZpieForm::new(tilde_alpha(alpha))?;
            curve.push(vec![r.into(), alpha.into(), z.mean_level(r).into()]);
        }
    }
    Ok(vec![near, osc, curve])
}

