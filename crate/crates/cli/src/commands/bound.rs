//! `bound-spectrum`: levels, the K_iα̃ curve and the ground state.

use super::{energies, with_threads, ScanConfig};
use crate::error::CliResult;
use crate::svg::PlotSpec;
use crate::table::Table;
use conecollapse::cone::ConeGeometry;
use conecollapse::specfun::{k_inu, k_inu_small_x, SeriesPolicy};
use conecollapse::states::{bound_spectrum, QuantumState};
use rayon::prelude::*;
use std::f64::consts::PI;

pub fn run(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    with_threads(cfg.output.threads, || tables(cfg))?
}

fn tables(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    let mut spectrum = Table::new(
        "spectrum",
        &[
            "alpha",
            "n",
            "eps_exact",
            "eps_approx",
            "approx_over_exact",
            "ratio_to_previous",
            "geometric_ratio",
            "approximation_valid",
        ],
    )
    .with_plot(PlotSpec::new("n", &["eps_exact", "eps_approx"]).group_by(&["alpha"]).log_y());
    let mut curve = Table::new("k_curve", &["alpha", "x", "k_inu", "small_x_form", "large_x_form"])
        .with_plot(PlotSpec::new("x", &["k_inu", "small_x_form", "large_x_form"]).group_by(&["alpha"]).log_x());
    let mut ground = Table::new("ground_state", &["alpha", "r", "psi", "potential", "eps_ground"])
        .with_plot(PlotSpec::new("r", &["psi", "potential", "eps_ground"]).group_by(&["alpha"]));
    let policy = SeriesPolicy::default();
    for &alpha in &cfg.alphas {
        let geom = ConeGeometry::new(alpha)?;
        let ta = geom.tilde_alpha();
        let s = bound_spectrum(&geom, 1, cfg.n_max)?;
        let q = (-2.0 * PI / ta).exp();
        let valid = if s.approximation_valid { "yes" } else { "no" };
        for (i, l) in s.levels.iter().enumerate() {
            let prev = if i == 0 { f64::NAN } else { l.exact / s.levels[i - 1].exact };
            spectrum.push(vec![
                alpha.into(),
                l.n.into(),
                l.exact.into(),
                l.approx.into(),
                (l.approx / l.exact).into(),
                prev.into(),
                q.into(),
                valid.into(),
            ]);
        }

        let xs = energies((1e-3, 5.0), cfg.points_per_decade);
        let rows = xs
            .par_iter()
            .map(|&x| {
                Ok((
                    k_inu(ta, x, &policy)?,
                    k_inu_small_x(ta, x)?,
                    (PI / (2.0 * x)).sqrt() * (-x).exp(),
                ))
            })
            .collect::<conecollapse::Result<Vec<_>>>()?;
        for (&x, (k, small, large)) in xs.iter().zip(rows) {
            curve.push(vec![alpha.into(), x.into(), k.into(), small.into(), large.into()]);
        }

        let e1 = s.levels[0].exact;
        let psi = QuantumState::bound(&geom, 1, e1)?;
        let norm = psi.norm_squared()?.sqrt();
        let r_star = ta / (-e1).sqrt();
        let r_end = 1.0 + 4.0 * (r_star - 1.0).max(1.0);
        let n = 400;
        for i in 0..=n {
            let r = 1.0 + (r_end - 1.0) * i as f64 / n as f64;
            ground.push(vec![
                alpha.into(),
                r.into(),
                (psi.value(r)? / norm).into(),
                (-ta * ta / (r * r)).into(),
                e1.into(),
            ]);
        }
    }
    Ok(vec![spectrum, curve, ground])
}
