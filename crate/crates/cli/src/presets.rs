//! Named parameter sets, one per figure.
//!
//! `presets/manifest.ini` maps every figure to its subcommand and preset;
//! the table below supplies the values.

use std::f64::consts::PI;

/// What the `ldos` subcommand produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Ldos,
    States,
}

/// Preset values for the scan subcommands. `None` falls through to the
/// built-in default.
#[derive(Debug, Clone, Default)]
pub struct ScanPreset {
    pub alphas: Option<Vec<f64>>,
    pub rs: Option<Vec<f64>>,
    pub eps: Option<(f64, f64)>,
    pub points_per_decade: Option<usize>,
    pub near: Option<(f64, f64)>,
    pub near_points_per_decade: Option<usize>,
    pub near_rs: Option<Vec<f64>>,
    pub n_max: Option<i64>,
    pub view: Option<View>,
}

pub const MANIFEST: &str = include_str!("../presets/manifest.ini");

pub fn scan_preset(command: &str, name: &str) -> Option<ScanPreset> {
    let p = match (command, name) {
        ("bound-spectrum", "fig2") => ScanPreset {
            alphas: Some(vec![1.0 / 6.0]),
            n_max: Some(7),
            ..Default::default()
        },
        ("ldos", "fig3") => ScanPreset {
            alphas: Some(vec![5.0 / 6.0]),
            rs: Some(vec![40.0]),
            eps: Some((1.0, 1.0)),
            view: Some(View::States),
            ..Default::default()
        },
        ("ldos", "fig4") => ScanPreset {
            alphas: Some(vec![0.99, 0.01, 5.0 / 6.0, 4.0 / 6.0, 3.0 / 6.0]),
            rs: Some(vec![10.0]),
            eps: Some((1e-4, 10.0)),
            points_per_decade: Some(32),
            near: Some((1e-40, 1e-3)),
            near_points_per_decade: Some(8),
            ..Default::default()
        },
        ("ldos", "fig5") => ScanPreset {
            alphas: Some(vec![5.0 / 6.0]),
            rs: Some(vec![3.0, 5.0, 10.0]),
            eps: Some((1e-4, 1e4)),
            points_per_decade: Some(32),
            near: Some((1e-40, 1e-3)),
            near_points_per_decade: Some(8),
            near_rs: Some((0..14).map(|i| 1.0 + 3.0 * i as f64).collect()),
            ..Default::default()
        },
        ("ldos", "fig6") => ScanPreset {
            alphas: Some(vec![2.0 / 6.0, 3.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0]),
            rs: Some(vec![5.0]),
            eps: Some((1e-4, 10.0)),
            points_per_decade: Some(32),
            near: Some((1e-40, 1e-9)),
            near_points_per_decade: Some(8),
            ..Default::default()
        },
        ("feasibility", "fig8") => ScanPreset {
            alphas: Some(vec![0.5]),
            eps: Some((1e-6, 1e-3)),
            points_per_decade: Some(64),
            ..Default::default()
        },
        _ => return None,
    };
    Some(p)
}

/// Radius where the near-zero amplitude `sin²(α̃ ln r)` first peaks.
pub fn antinode_radius(tilde_alpha: f64) -> f64 {
    (PI / (2.0 * tilde_alpha)).exp()
}
