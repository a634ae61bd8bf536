//! Local density of states `N(ε, r) = Σ_l |ψ_{l,ε}(r)|²`.
//!
//! The `l = 0` term is the collapse state; every `l ≠ 0` term is a
//! scattering state, and `±l` contribute equally, so the sum over
//! `|l| ≤ l_max` is `n₀ + 2 Σ_{l=1}^{l_max} n_l`.

use crate::cone::ConeGeometry;
use crate::error::{domain, Error, Result};
use crate::states::{QuantumState, YMode, ZpieForm};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Channel cutoff and `Y` treatment of an LDOS evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LdosOptions {
    pub l_max: u32,
    pub y_mode: YMode,
}

impl Default for LdosOptions {
    fn default() -> Self {
        Self {
            l_max: 50,
            y_mode: YMode::Stable,
        }
    }
}

/// LDOS at one point, split into the collapse (`l = 0`) and the
/// conventional (`l ≠ 0`) channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdosPoint {
    pub total: f64,
    pub l0: f64,
    pub lneq0: f64,
}

/// All channel states at one energy, reusable across radii.
#[derive(Debug, Clone)]
pub struct EnergySlice {
    pub epsilon: f64,
    collapse: QuantumState,
    channels: Vec<QuantumState>,
}

impl EnergySlice {
    pub fn new(geom: &ConeGeometry, epsilon: f64, opts: &LdosOptions) -> Result<Self> {
        if opts.l_max < 1 {
            return Err(domain("l_max must be >= 1"));
        }
        let collapse = QuantumState::collapse(geom, epsilon)?;
        let channels = (1..=opts.l_max as i64)
            .map(|l| QuantumState::scattering(geom, l, epsilon, opts.y_mode))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            epsilon,
            collapse,
            channels,
        })
    }

    /// `n_l(ε, r)` for `l = 1 ..= l_max` (one sign of `l`).
    pub fn channel_terms(&self, r: f64) -> Result<Vec<f64>> {
        self.channels.iter().map(|s| s.value(r).map(|v| v * v)).collect()
    }

    pub fn point(&self, r: f64) -> Result<LdosPoint> {
        let l0 = self.collapse.value(r)?.powi(2);
        let lneq0 = 2.0 * self.channel_terms(r)?.iter().sum::<f64>();
        Ok(LdosPoint {
            total: l0 + lneq0,
            l0,
            lneq0,
        })
    }
}

pub fn ldos_point(geom: &ConeGeometry, epsilon: f64, r: f64, opts: &LdosOptions) -> Result<LdosPoint> {
    EnergySlice::new(geom, epsilon, opts)?.point(r)
}

/// Hole-free flat-plane reference `Σ_{|l| ≤ l_max} J_l(√ε r)²`.
pub fn plane_reference(epsilon: f64, r: f64, l_max: u32) -> Result<f64> {
    let policy = crate::specfun::SeriesPolicy::default();
    let x = epsilon.sqrt() * r;
    let mut s = crate::specfun::bessel_j(0.0, x, &policy)?.powi(2);
    for l in 1..=l_max {
        s += 2.0 * crate::specfun::bessel_j(l as f64, x, &policy)?.powi(2);
    }
    Ok(s)
}

/// `N` points per decade between `lo` and `hi`, both included.
pub fn log_space(lo: f64, hi: f64, points_per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && points_per_decade > 0);
    let (a, b) = (lo.log10(), hi.log10());
    let n = ((b - a) * points_per_decade as f64).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                10f64.powf(a + (b - a) * i as f64 / n as f64)
            }
        })
        .collect()
}

/// LDOS sampled on an `(ε, r)` grid; rows are energies.
#[derive(Debug, Clone, PartialEq)]
pub struct LdosGrid {
    pub epsilons: Vec<f64>,
    pub rs: Vec<f64>,
    pub l_max: u32,
    pub values_total: Vec<Vec<f64>>,
    pub values_l0: Vec<Vec<f64>>,
    pub values_lneq0: Vec<Vec<f64>>,
}

impl LdosGrid {
    /// Rows are computed in parallel; each cell depends only on its own
    /// `(ε, r)`, so the result does not depend on the number of workers.
    pub fn compute(geom: &ConeGeometry, epsilons: &[f64], rs: &[f64], opts: &LdosOptions) -> Result<Self> {
        let rows = epsilons
            .par_iter()
            .map(|&eps| {
                let slice = EnergySlice::new(geom, eps, opts)?;
                rs.iter().map(|&r| slice.point(r)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let pick = |f: fn(&LdosPoint) -> f64| -> Vec<Vec<f64>> {
            rows.iter().map(|row| row.iter().map(f).collect()).collect()
        };
        Ok(Self {
            epsilons: epsilons.to_vec(),
            rs: rs.to_vec(),
            l_max: opts.l_max,
            values_total: pick(|p| p.total),
            values_l0: pick(|p| p.l0),
            values_lneq0: pick(|p| p.lneq0),
        })
    }

    /// Column of the grid at radius index `j`.
    pub fn column(values: &[Vec<f64>], j: usize) -> Vec<f64> {
        values.iter().map(|row| row[j]).collect()
    }
}

/// Large-energy forms `(2/(π√ε r), 2 l_max · 2/(π√ε r) · sin²(√ε(1−r)))`
/// of the collapse and the conventional channels.
pub fn ldos_asymptotic_large_e(epsilon: f64, r: f64, l_max: u32) -> (f64, f64) {
    let k = epsilon.sqrt();
    let env = 2.0 / (PI * k * r);
    (env, 2.0 * l_max as f64 * env * (k * (1.0 - r)).sin().powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    /// Position in `ln√ε`.
    pub x: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Interior local extrema of uniformly spaced samples, refined by the
/// parabola through each extremal sample and its two neighbours.
pub fn find_extrema(xs: &[f64], ys: &[f64]) -> Vec<Extremum> {
    let mut out = Vec::new();
    for i in 1..ys.len().saturating_sub(1) {
        let (a, b, c) = (ys[i - 1], ys[i], ys[i + 1]);
        let kind = if b > a && b >= c {
            ExtremumKind::Max
        } else if b < a && b <= c {
            ExtremumKind::Min
        } else {
            continue;
        };
        let h = xs[i + 1] - xs[i];
        let den = a - 2.0 * b + c;
        let (dx, v) = if den != 0.0 {
            let d = 0.5 * (a - c) / den;
            (d * h, b - 0.25 * (a - c) * d)
        } else {
            (0.0, b)
        };
        out.push(Extremum {
            x: xs[i] + dx,
            value: v,
            kind,
        });
    }
    out
}

/// Near-zero oscillations of `N(ε, r)` as a function of `ln√ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationDescriptor {
    pub window: (f64, f64),
    pub extrema: Vec<Extremum>,
    pub period_in_log_sqrt_eps: f64,
    pub amplitude: f64,
    pub mean_level: f64,
}

/// Log-spaced scan of the total LDOS at radius `r`, as `(ln√ε, N)` pairs.
pub fn scan_total(
    geom: &ConeGeometry,
    r: f64,
    window: (f64, f64),
    points_per_decade: usize,
    opts: &LdosOptions,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(domain(format!("energy window must satisfy 0 < lo < hi, got ({lo}, {hi})")));
    }
    let eps = log_space(lo, hi, points_per_decade);
    let ys = eps
        .par_iter()
        .map(|&e| ldos_point(geom, e, r, opts).map(|p| p.total))
        .collect::<Result<Vec<_>>>()?;
    let xs = eps.iter().map(|e| 0.5 * e.ln()).collect();
    Ok((xs, ys))
}

fn extreme_values(ys: &[f64], extrema: &[Extremum]) -> (f64, f64) {
    let vals = ys.iter().copied().chain(extrema.iter().map(|e| e.value));
    vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Extrema, period, amplitude and mean level of the LDOS in a window
/// inside `(0, 1e-3]`.
pub fn near_zero_profile(
    geom: &ConeGeometry,
    r: f64,
    window: (f64, f64),
    points_per_decade: usize,
    opts: &LdosOptions,
) -> Result<OscillationDescriptor> {
    if !(window.1 <= 1e-3) {
        return Err(domain(format!("near-zero window must end at or below 1e-3, got {}", window.1)));
    }
    let (xs, ys) = scan_total(geom, r, window, points_per_decade, opts)?;
    describe_oscillations(window, &xs, &ys)
}

/// Oscillation descriptor of samples `ys` taken at `xs = ln√ε`.
pub fn describe_oscillations(window: (f64, f64), xs: &[f64], ys: &[f64]) -> Result<OscillationDescriptor> {
    let extrema = find_extrema(xs, ys);
    if extrema.len() < 3 {
        return Err(Error::InsufficientResolution {
            found: extrema.len(),
            needed: 3,
        });
    }
    let (first, last) = (extrema[0].x, extrema[extrema.len() - 1].x);
    let period = 2.0 * (last - first) / (extrema.len() - 1) as f64;
    let (min, max) = extreme_values(ys, &extrema);
    Ok(OscillationDescriptor {
        window,
        extrema,
        period_in_log_sqrt_eps: period,
        amplitude: 0.5 * (max - min),
        mean_level: 0.5 * (max + min),
    })
}

/// `(max + min)/2` of the scanned total LDOS over `window`.
pub fn average_ldos_numeric(
    geom: &ConeGeometry,
    r: f64,
    window: (f64, f64),
    points_per_decade: usize,
    opts: &LdosOptions,
) -> Result<f64> {
    let (xs, ys) = scan_total(geom, r, window, points_per_decade, opts)?;
    let (min, max) = extreme_values(&ys, &find_extrema(&xs, &ys));
    Ok(0.5 * (max + min))
}

/// `N̄(r) = ½[1/B + 1/(B − C)] A² sin²(α̃ ln r)`.
pub fn average_ldos(geom: &ConeGeometry, r: f64) -> Result<f64> {
    if !(r >= 1.0) {
        return Err(domain(format!("r must be >= 1, got {r}")));
    }
    Ok(ZpieForm::new(geom.tilde_alpha())?.mean_level(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_space_endpoints() {
        let v = log_space(1e-6, 1e-3, 64);
        assert_eq!(v.len(), 193);
        assert_eq!(v[0], 1e-6);
        assert_eq!(v[192], 1e-3);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn parabola_refines_extremum() {
        let xs: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (x - 2.03f64).powi(2) * -1.0 + 3.0).collect();
        let e = find_extrema(&xs, &ys);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].kind, ExtremumKind::Max);
        assert!((e[0].x - 2.03).abs() < 1e-12);
        assert!((e[0].value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn decomposition_adds_up() {
        let g = ConeGeometry::new(0.5).unwrap();
        let p = ldos_point(&g, 0.7, 3.0, &LdosOptions { l_max: 5, ..Default::default() }).unwrap();
        assert_eq!(p.total, p.l0 + p.lneq0);
        assert!(p.l0 >= 0.0 && p.lneq0 >= 0.0);
    }

    #[test]
    fn average_vanishes_at_the_wall() {
        let g = ConeGeometry::new(0.5).unwrap();
        assert_eq!(average_ldos(&g, 1.0).unwrap(), 0.0);
        assert!(average_ldos(&g, 0.9).is_err());
    }

    #[test]
    fn profile_window_validation() {
        let g = ConeGeometry::new(0.5).unwrap();
        let o = LdosOptions::default();
        assert!(near_zero_profile(&g, 6.0, (1e-6, 1e-2), 64, &o).is_err());
        assert!(near_zero_profile(&g, 6.0, (1e-6, 1e-7), 64, &o).is_err());
        // far too narrow for three extrema
        assert!(matches!(
            near_zero_profile(&g, 6.0, (1e-6, 2e-6), 64, &o),
            Err(Error::InsufficientResolution { .. })
        ));
    }
}
