//! `feasibility`: LDOS at the observation radius in physical units, the
//! Dirac and Schrödinger dispersions, and the unit mapping.

use super::{with_threads, ScanConfig};
use crate::error::CliResult;
use crate::svg::PlotSpec;
use crate::table::Table;
use conecollapse::cone::{ConeGeometry, GrapheneMapping};
use conecollapse::ldos::{LdosGrid, LdosOptions};
use conecollapse::states::ZpieForm;

pub fn run(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    with_threads(cfg.output.threads, || tables(cfg))?
}

fn tables(cfg: &ScanConfig) -> CliResult<Vec<Table>> {
    let map = GrapheneMapping::standard();
    let opts = LdosOptions {
        l_max: cfg.l_max,
        y_mode: cfg.y_mode,
    };
    let eps = cfg.energies();
    let mut ldos = Table::new(
        "ldos",
        &[
            "alpha",
            "r",
            "eps",
            "energy_micro_ev",
            "total",
            "l0",
            "lneq0",
            "l0_zero_energy_form",
            "mean_level_formula",
        ],
    )
    .with_plot(PlotSpec::new("eps", &["total", "l0", "lneq0", "l0_zero_energy_form"]).group_by(&["alpha", "r"]).log_x());
    let mut mapping = Table::new("mapping", &["alpha", "quantity", "value", "unit"]);
    for &alpha in &cfg.alphas {
        let geom = ConeGeometry::new(alpha)?;
        let rs = if cfg.rs.is_empty() {
            vec![geom.observation_radius()]
        } else {
            cfg.rs.clone()
        };
        let z = ZpieForm::new(geom.tilde_alpha())?;
        let grid = LdosGrid::compute(&geom, &eps, &rs, &opts)?;
        for (j, &r) in rs.iter().enumerate() {
            for (i, &e) in eps.iter().enumerate() {
                ldos.push(vec![
                    alpha.into(),
                    r.into(),
                    e.into(),
                    map.energy_micro_ev(e).into(),
                    grid.values_total[i][j].into(),
                    grid.values_l0[i][j].into(),
                    grid.values_lneq0[i][j].into(),
                    z.value(e, r).powi(2).into(),
                    z.mean_level(r).into(),
                ]);
            }
        }
        let r_star = geom.observation_radius();
        let (lo, hi) = cfg.eps;
        let rows: [(&str, f64, &str); 13] = [
            ("gap", map.gap, "eV"),
            ("energy_unit", map.energy_unit, "eV"),
            ("fermi_velocity_ratio", map.fermi_velocity_ratio, "1"),
            ("tilde_gap", map.tilde_gap(), "1"),
            ("cutoff", map.cutoff, "nm"),
            ("cutoff_from_closure", map.closure_cutoff(), "nm"),
            ("observation_radius", r_star, "1"),
            ("observation_radius_physical", map.radius_nm(r_star), "nm"),
            ("k_tilde_min", map.k_tilde_for(lo), "1"),
            ("k_tilde_max", map.k_tilde_for(hi), "1"),
            ("energy_min", map.energy_micro_ev(lo), "micro-eV"),
            ("energy_max", map.energy_micro_ev(hi), "micro-eV"),
            ("effective_mass", map.effective_mass(), "m_e"),
        ];
        for (q, v, unit) in rows {
            mapping.push(vec![alpha.into(), q.into(), v.into(), unit.into()]);
        }
    }
    let mut disp = Table::new("dispersion", &["k_tilde", "dirac", "schrodinger"])
        .with_plot(PlotSpec::new("k_tilde", &["dirac", "schrodinger"]));
    let gap = map.tilde_gap();
    for i in 0..=300 {
        let k = 0.3 * i as f64 / 300.0;
        let (e, de) = map.dirac_dispersion(k)?;
        disp.push(vec![k.into(), e.into(), (gap + de).into()]);
    }
    Ok(vec![ldos, disp, mapping])
}
