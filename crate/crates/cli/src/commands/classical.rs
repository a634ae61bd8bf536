//! `classical`: trajectories and effective potentials for one preset or
//! all three regimes.

use super::{header, with_threads};
use crate::args::ClassicalArgs;
use crate::config::{load_layer, OutputConfig, OUTPUT_KEYS};
use crate::error::{config, CliResult};
use crate::svg::PlotSpec;
use crate::table::Table;
use conecollapse::classical::{presets, turning_point, Preset};
use rayon::prelude::*;

pub const CLASSICAL_KEYS: [&str; 10] = [
    "alpha", "mass", "l-z", "l-eff", "energy", "rho0", "rho-start", "outward", "t-end", "dt",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalConfig {
    pub output: OutputConfig,
    pub runs: Vec<Preset>,
}

impl ClassicalConfig {
    /// Flags and file values override the corresponding field of every run
    /// in the preset (`fig7` by default, which holds all three regimes).
    pub fn resolve(args: &ClassicalArgs) -> CliResult<Self> {
        let mut known: Vec<&str> = CLASSICAL_KEYS.to_vec();
        known.extend(OUTPUT_KEYS);
        let file = load_layer(args.output.config.as_deref(), "classical", &known)?;
        let output = OutputConfig::resolve(&args.output, &file)?;
        let name = output.preset.clone().unwrap_or_else(|| "fig7".into());
        let mut runs: Vec<Preset> = match name.as_str() {
            "fig7" => presets().to_vec(),
            other => vec![conecollapse::classical::preset(other)
                .ok_or_else(|| config(format!("no preset '{other}' for classical")))?],
        };
        let pick = |flag: Option<f64>, key: &str| -> CliResult<Option<f64>> { Ok(flag.or(file.number(key)?)) };
        let alpha = pick(args.alpha, "alpha")?;
        let mass = pick(args.mass, "mass")?;
        let l_z = pick(args.l_z, "l-z")?;
        let l_eff = pick(args.l_eff, "l-eff")?;
        let energy = pick(args.energy, "energy")?;
        let rho0 = pick(args.rho0, "rho0")?;
        let rho_start = pick(args.rho_start, "rho-start")?;
        let t_end = pick(args.t_end, "t-end")?;
        let dt = pick(args.dt, "dt")?;
        let outward = if args.outward { Some(true) } else { file.flag("outward")? };
        for run in &mut runs {
            let p = &mut run.params;
            p.alpha = alpha.unwrap_or(p.alpha);
            p.mass = mass.unwrap_or(p.mass);
            p.l_z = l_z.unwrap_or(p.l_z);
            p.l_eff = l_eff.unwrap_or(p.l_eff);
            p.energy = energy.unwrap_or(p.energy);
            p.rho0 = rho0.unwrap_or(p.rho0);
            run.rho_start = rho_start.unwrap_or(run.rho_start);
            run.t_end = t_end.unwrap_or(run.t_end);
            run.dt = dt.unwrap_or(run.dt);
            if let Some(o) = outward {
                run.inward = !o;
            }
            run.params.validate()?;
            run.params.expected_label()?;
            if !(run.dt > 0.0 && run.t_end > 0.0) {
                return Err(config("dt and t-end must be positive"));
            }
            if !(run.rho_start >= run.params.rho0) {
                return Err(config(format!(
                    "rho-start = {} is inside the wall at {}",
                    run.rho_start, run.params.rho0
                )));
            }
            run.initial()?;
        }
        Ok(Self { output, runs })
    }

    pub fn metadata(&self) -> Vec<(String, String)> {
        header("classical", self.output.preset.as_deref().or(Some("fig7")))
    }
}

pub fn run(cfg: &ClassicalConfig) -> CliResult<Vec<Table>> {
    let trajs = with_threads(cfg.output.threads, || {
        cfg.runs.par_iter().map(|r| r.run()).collect::<conecollapse::Result<Vec<_>>>()
    })??;
    let mut summary = Table::new(
        "summary",
        &[
            "run", "label", "mass", "alpha", "l_z", "l_eff", "energy", "rho0", "rho_star", "rho_min", "rho_max",
            "reflections", "turnings", "escaped", "max_energy_drift",
        ],
    );
    let mut out = Vec::new();
    for (run, t) in cfg.runs.iter().zip(&trajs) {
        let p = &run.params;
        let rho_star = turning_point(p);
        let (lo, hi) = t.rho_range();
        let drift = t.energy_drift(p);
        summary.push(vec![
            run.name.into(),
            t.label.as_str().into(),
            p.mass.into(),
            p.alpha.into(),
            p.l_z.into(),
            p.l_eff.into(),
            p.energy.into(),
            p.rho0.into(),
            rho_star.unwrap_or(f64::NAN).into(),
            lo.into(),
            hi.into(),
            t.reflections.len().into(),
            t.turnings.len().into(),
            (if t.escaped { "yes" } else { "no" }).into(),
            drift.into(),
        ]);

        let mut pot = Table::new(&format!("potential_{}", run.name), &["rho", "potential", "energy"])
            .with_plot(PlotSpec::new("rho", &["potential", "energy"]));
        let rho_end = 1.5 * run.rho_start.max(rho_star.unwrap_or(0.0)).max(2.0 * p.rho0);
        for i in 0..=400 {
            let rho = p.rho0 + (rho_end - p.rho0) * i as f64 / 400.0;
            pot.push(vec![rho.into(), p.potential(rho).into(), p.energy.into()]);
        }
        pot.note("label", t.label);

        let mut tr = Table::new(
            &format!("trajectory_{}", run.name),
            &["t", "rho", "phi", "p_rho", "x", "y", "energy", "energy_drift", "event"],
        )
        .with_plot(PlotSpec::new("x", &["y"]));
        let h0 = p.hamiltonian(t.samples[0].rho, t.samples[0].p_rho);
        for s in &t.samples {
            let h = p.hamiltonian(s.rho, s.p_rho);
            // flattened-cone coordinates: polar angle α φ
            let angle = p.alpha * s.phi;
            tr.push(vec![
                s.t.into(),
                s.rho.into(),
                s.phi.into(),
                s.p_rho.into(),
                (s.rho * angle.cos()).into(),
                (s.rho * angle.sin()).into(),
                h.into(),
                ((h - h0).abs() / h0.abs()).into(),
                s.event.map_or("", |e| e.as_str()).into(),
            ]);
        }
        tr.note("label", t.label);
        tr.note("reflections", t.reflections.len());
        tr.note("turnings", t.turnings.len());
        tr.note("escaped", t.escaped);
        tr.note("rho-star", rho_star.map_or("none".to_string(), |r| format!("{r:e}")));
        tr.note("max-energy-drift", format!("{drift:e}"));
        tr.note("rho-start", format!("{:e}", run.rho_start));
        tr.note("direction", if run.inward { "inward" } else { "outward" });
        tr.note("t-end", format!("{:e}", run.t_end));
        tr.note("dt", format!("{:e}", run.dt));
        out.push(pot);
        out.push(tr);
    }
    out.insert(0, summary);
    Ok(out)
}
