//! Geometry of the truncated cone and the graphene mapping.

use crate::error::{domain, Result};
use std::f64::consts::PI;

/// ħc in eV·Å.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.269_804;
/// Electron rest energy in eV.
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.95;

/// Length `ħ/√(2·M·E)` in Å, for a mass given by its rest energy.
fn closure_length(rest_energy_ev: f64, energy_ev: f64) -> f64 {
    HBAR_C_EV_ANGSTROM / (2.0 * rest_energy_ev * energy_ev).sqrt()
}

/// A cone of sector angle `2πα`, cut at `ρ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGeometry {
    pub alpha: f64,
    /// Cutoff radius in Å.
    pub rho0: f64,
    /// Energy unit in eV.
    pub e0: f64,
    /// Particle mass in electron masses.
    pub mass: f64,
}

impl ConeGeometry {
    /// Electron on a cone with `E₀ = 1 eV` and `ρ₀` fixed by `√(2ME₀)ρ₀/ħ = 1`.
    pub fn new(alpha: f64) -> Result<Self> {
        let rho0 = closure_length(ELECTRON_REST_ENERGY_EV, 1.0);
        Self::with_units(alpha, rho0, 1.0, 1.0)
    }

    pub fn with_units(alpha: f64, rho0: f64, e0: f64, mass: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(domain(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        for (name, v) in [("rho0", rho0), ("E0", e0), ("M", mass)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            alpha,
            rho0,
            e0,
            mass,
        })
    }

    /// `√(2ME₀)ρ₀/ħ`; equal to one for the default units.
    pub fn closure(&self) -> f64 {
        self.rho0 / closure_length(self.mass * ELECTRON_REST_ENERGY_EV, self.e0)
    }

    /// `ħ²/(2Mρ₀²)` in eV, the natural energy scale of the radial equation.
    pub fn kinetic_unit(&self) -> f64 {
        HBAR_C_EV_ANGSTROM.powi(2) / (2.0 * self.mass * ELECTRON_REST_ENERGY_EV * self.rho0.powi(2))
    }

    pub fn orders(&self) -> DerivedOrders {
        DerivedOrders::new(self.alpha)
    }

    pub fn tilde_alpha(&self) -> f64 {
        tilde_alpha(self.alpha)
    }

    pub fn curvature(&self) -> CurvatureInfo {
        CurvatureInfo { alpha: self.alpha }
    }

    /// Geometric potential in eV at distance `rho` (Å) from the apex.
    pub fn geometric_potential(&self, rho: f64) -> Result<f64> {
        if !(rho >= self.rho0) {
            return Err(domain(format!(
                "rho = {rho} lies inside the excised region rho < {}",
                self.rho0
            )));
        }
        Ok(self.kinetic_unit() * self.geometric_potential_reduced(rho / self.rho0)?)
    }

    /// Geometric potential at `r = ρ/ρ₀` in units of `ħ²/(2Mρ₀²)`: `−α̃²/r²`.
    pub fn geometric_potential_reduced(&self, r: f64) -> Result<f64> {
        self.effective_radial_potential(0, r)
    }

    /// `ν̃²(l)/r²` in units of `ħ²/(2Mρ₀²)`.
    pub fn effective_radial_potential(&self, l: i64, r: f64) -> Result<f64> {
        if !(r >= 1.0) {
            return Err(domain(format!("r must be >= 1, got {r}")));
        }
        Ok(self.orders().tilde_nu_sq(l) / (r * r))
    }

    /// Radius `exp(π/(2α̃))` where `sin²(α̃ ln r)` first reaches one.
    pub fn observation_radius(&self) -> f64 {
        (PI / (2.0 * self.tilde_alpha())).exp()
    }
}

/// `α̃ = √(1−α²)/(2α)`.
pub fn tilde_alpha(alpha: f64) -> f64 {
    (1.0 - alpha * alpha).sqrt() / (2.0 * alpha)
}

/// Bessel orders of the angular-momentum channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedOrders {
    pub alpha: f64,
    pub tilde_alpha: f64,
}

impl DerivedOrders {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            tilde_alpha: tilde_alpha(alpha),
        }
    }

    /// `ν̃² = l²/α² − (1−α²)/(4α²)`.
    pub fn tilde_nu_sq(&self, l: i64) -> f64 {
        let a2 = self.alpha * self.alpha;
        let l = l as f64;
        (4.0 * l * l - (1.0 - a2)) / (4.0 * a2)
    }

    /// Real order `ν̃(l)`, or `None` for the attractive `l = 0` channel.
    pub fn tilde_nu(&self, l: i64) -> Option<f64> {
        let s = self.tilde_nu_sq(l);
        (s >= 0.0).then(|| s.sqrt())
    }
}

/// Curvatures of the cone surface away from the apex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureInfo {
    pub alpha: f64,
}

/// Principal and normal curvatures at one radius, in 1/length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalCurvatures {
    pub k1: f64,
    pub k1n: f64,
    pub k2: f64,
    pub k2n: f64,
}

impl CurvatureInfo {
    /// `K_M = √(1−α²)/(2αρ)`.
    pub fn mean_curvature(&self, rho: f64) -> f64 {
        (1.0 - self.alpha * self.alpha).sqrt() / (2.0 * self.alpha * rho)
    }

    pub fn principal(&self, rho: f64) -> PrincipalCurvatures {
        let a = self.alpha;
        PrincipalCurvatures {
            k1: 1.0 / (a * rho),
            k1n: (1.0 - a * a).sqrt() / (a * rho),
            k2: 0.0,
            k2n: 0.0,
        }
    }

    /// Integrated Gaussian curvature `2π(1−α)`, all of it carried by the apex.
    pub fn gaussian_deficit(&self) -> f64 {
        2.0 * PI * (1.0 - self.alpha)
    }

    /// The same deficit from Gauss–Bonnet, `2π − ∮κ_g ds`, evaluated with an
    /// `n`-point rule on the circle of radius `rho`.
    pub fn deficit_from_boundary(&self, rho: f64, n: usize) -> f64 {
        // geodesic curvature of a parallel circle is 1/ρ; its length is 2παρ
        let ds = 2.0 * PI * self.alpha * rho / n as f64;
        let turning: f64 = (0..n).map(|_| ds / rho).sum();
        2.0 * PI - turning
    }
}

/// Map of the cone problem onto gapped graphene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneMapping {
    /// Band gap Δ in eV.
    pub gap: f64,
    /// Energy unit Ξ₀ in eV.
    pub energy_unit: f64,
    /// Fermi velocity as a fraction of the speed of light.
    pub fermi_velocity_ratio: f64,
    /// Cutoff radius ξ₀ in nm.
    pub cutoff: f64,
}

impl GrapheneMapping {
    /// Δ = 0.1 eV, Ξ₀ = 2 eV, v_F = c/300 and ξ₀ = 5ρ₀ with ρ₀ from the
    /// electron closure at `E₀ = 1 eV`.
    pub fn standard() -> Self {
        let rho0 = closure_length(ELECTRON_REST_ENERGY_EV, 1.0);
        Self {
            gap: 0.1,
            energy_unit: 2.0,
            fermi_velocity_ratio: 1.0 / 300.0,
            cutoff: 5.0 * rho0 / 10.0,
        }
    }

    pub fn new(gap: f64, energy_unit: f64, fermi_velocity_ratio: f64, cutoff: f64) -> Result<Self> {
        let m = Self {
            gap,
            energy_unit,
            fermi_velocity_ratio,
            cutoff,
        };
        if !(gap > 0.0 && energy_unit > gap) {
            return Err(domain(format!(
                "need 0 < gap < energy unit, got gap = {gap}, unit = {energy_unit}"
            )));
        }
        if !(fermi_velocity_ratio > 0.0 && fermi_velocity_ratio < 1.0) || !(cutoff > 0.0) {
            return Err(domain("Fermi velocity ratio must lie in (0, 1) and cutoff must be positive"));
        }
        Ok(m)
    }

    /// `Δ̃ = Δ/Ξ₀`.
    pub fn tilde_gap(&self) -> f64 {
        self.gap / self.energy_unit
    }

    /// Rest energy `M*c² = Δ (c/v_F)²` in eV.
    pub fn effective_rest_energy(&self) -> f64 {
        self.gap / (self.fermi_velocity_ratio * self.fermi_velocity_ratio)
    }

    /// Effective mass in electron masses.
    pub fn effective_mass(&self) -> f64 {
        self.effective_rest_energy() / ELECTRON_REST_ENERGY_EV
    }

    /// `ħ/√(2M*Ξ₀)` in nm, the cutoff that makes the closure exact.
    pub fn closure_cutoff(&self) -> f64 {
        closure_length(self.effective_rest_energy(), self.energy_unit) / 10.0
    }

    /// `√(2M*Ξ₀)ξ₀/ħ` for the configured cutoff.
    pub fn closure(&self) -> f64 {
        self.cutoff / self.closure_cutoff()
    }

    /// Dirac energy `√(k̃² + Δ̃²)` and Schrödinger excess `k̃²/(2Δ̃)`.
    pub fn dirac_dispersion(&self, k_tilde: f64) -> Result<(f64, f64)> {
        dirac_dispersion(self.tilde_gap(), k_tilde)
    }

    /// `k̃ = √(2 δε Δ̃)`.
    pub fn k_tilde_for(&self, delta_epsilon: f64) -> f64 {
        (2.0 * delta_epsilon * self.tilde_gap()).sqrt()
    }

    /// Physical energy `Ξ = δε Ξ₀` in μeV.
    pub fn energy_micro_ev(&self, delta_epsilon: f64) -> f64 {
        delta_epsilon * self.energy_unit * 1e6
    }

    /// Physical distance `ρ = r ξ₀` in nm.
    pub fn radius_nm(&self, r: f64) -> f64 {
        r * self.cutoff
    }
}

/// `(ε, δε) = (√(k̃² + Δ̃²), k̃²/(2Δ̃))`.
pub fn dirac_dispersion(tilde_gap: f64, k_tilde: f64) -> Result<(f64, f64)> {
    if !(tilde_gap > 0.0) {
        return Err(domain(format!("dimensionless gap must be positive, got {tilde_gap}")));
    }
    if !(k_tilde >= 0.0) {
        return Err(domain(format!("k must be non-negative, got {k_tilde}")));
    }
    Ok((k_tilde.hypot(tilde_gap), k_tilde * k_tilde / (2.0 * tilde_gap)))
}
