//! Eigenstates of the radial equation with a hard wall at `r = 1`.
//!
//! * bound states: `l = 0`, `ε < 0`, `ψ = K_iα̃(√−ε r)`;
//! * collapse states: `l = 0`, `ε > 0`, `ψ = A F_iα̃(√ε r) − B G_iα̃(√ε r)`;
//! * scattering states: `|l| ≥ 1`, `ε > 0`, `ψ = A J_ν̃(√ε r) − B Y_ν̃(√ε r)`.
//!
//! The continuum coefficients are `A = G(√ε)/N`, `B = F(√ε)/N` (and
//! `A = Y(√ε)/N`, `B = J(√ε)/N`), with `N` chosen so that `A² + B² = 1`.
//! They keep their signs; that is what makes `ψ(1)` vanish.

use crate::cone::ConeGeometry;
use crate::error::{domain, Result};
use crate::specfun::{
    bessel_jy_scaled, fg_inu_eval, find_k_inu_zeros, k_inu_eval, ImaginaryOrderTriple, Scaled,
    SeriesPolicy,
};
use std::f64::consts::PI;

/// Magnitude at which `Y_ν̃` is clipped in [`YMode::Clipped`].
pub const Y_CLIP: f64 = 100.0;

/// Below this `α` the small-argument spectrum formula is not trusted.
pub const APPROXIMATION_ALPHA_MIN: f64 = 0.15;

/// How `Y_ν̃` enters the scattering states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YMode {
    /// Exact values, combined through scaled arithmetic.
    #[default]
    Stable,
    /// `|Y_ν̃|` clipped at [`Y_CLIP`] both in the coefficients and in
    /// the state itself.
    Clipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Bound(i64),
    Collapse,
    Scattering(i64),
    /// Flat plane with a hole (`α = 1`), integer order `|l|`.
    Plane(i64),
}

#[derive(Debug, Clone, Copy)]
enum Repr {
    Bound,
    Collapse { a: f64, b: f64 },
    Real { a: Scaled, b: Scaled, mode: YMode },
}

/// One radial eigenfunction at a fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct QuantumState {
    pub kind: StateKind,
    pub epsilon: f64,
    /// Bessel order: `α̃` for `l = 0`, `ν̃(l)` otherwise, `|l|` in the plane.
    pub order: f64,
    /// `√|ε|`.
    k: f64,
    repr: Repr,
    policy: SeriesPolicy,
}

fn clip(y: Scaled, mode: YMode) -> Scaled {
    match mode {
        YMode::Clipped if y.abs().ratio(Scaled::new(Y_CLIP)) > 1.0 => {
            Scaled::new(Y_CLIP * y.signum())
        }
        _ => y,
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(domain(format!("r must be finite and >= 1, got {r}")));
    }
    Ok(())
}

fn check_positive_energy(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(domain(format!("continuum states need epsilon > 0, got {epsilon}")));
    }
    Ok(())
}

impl QuantumState {
    /// Unnormalized bound state `K_iα̃(√−ε r)` at an arbitrary negative energy;
    /// it vanishes at the wall only when `ε` belongs to the spectrum.
    pub fn bound(geom: &ConeGeometry, n: i64, epsilon: f64) -> Result<Self> {
        if !(epsilon < 0.0) || !epsilon.is_finite() {
            return Err(domain(format!("bound states need epsilon < 0, got {epsilon}")));
        }
        Ok(Self {
            kind: StateKind::Bound(n),
            epsilon,
            order: geom.tilde_alpha(),
            k: (-epsilon).sqrt(),
            repr: Repr::Bound,
            policy: SeriesPolicy::default(),
        })
    }

    /// Collapse state at `ε > 0`.
    pub fn collapse(geom: &ConeGeometry, epsilon: f64) -> Result<Self> {
        check_positive_energy(epsilon)?;
        let nu = geom.tilde_alpha();
        let k = epsilon.sqrt();
        let policy = SeriesPolicy::default();
        let [f, g] = fg_inu_eval(nu, k, &policy)?;
        let n = f.value.hypot(g.value);
        Ok(Self {
            kind: StateKind::Collapse,
            epsilon,
            order: nu,
            k,
            repr: Repr::Collapse {
                a: g.value / n,
                b: f.value / n,
            },
            policy,
        })
    }

    /// Scattering state in channel `l ≠ 0`.
    pub fn scattering(geom: &ConeGeometry, l: i64, epsilon: f64, mode: YMode) -> Result<Self> {
        if l == 0 {
            return Err(domain("scattering states need l != 0"));
        }
        let nu = geom.orders().tilde_nu(l).expect("repulsive channel");
        Self::real_order(StateKind::Scattering(l), nu, epsilon, mode)
    }

    /// State of the flat plane with a hole of radius one, `α → 1`.
    pub fn plane(l: i64, epsilon: f64) -> Result<Self> {
        Self::real_order(StateKind::Plane(l), l.unsigned_abs() as f64, epsilon, YMode::Stable)
    }

    fn real_order(kind: StateKind, nu: f64, epsilon: f64, mode: YMode) -> Result<Self> {
        check_positive_energy(epsilon)?;
        let k = epsilon.sqrt();
        let policy = SeriesPolicy::default();
        let jy = bessel_jy_scaled(nu, k, &policy)?;
        let (j, y) = (jy.j, clip(jy.y, mode));
        let (big, small) = if y.abs().ratio(j.abs()) >= 1.0 { (y, j) } else { (j, y) };
        let t = small.ratio(big);
        let n = big.abs().scale((1.0 + t * t).sqrt());
        Ok(Self {
            kind,
            epsilon,
            order: nu,
            k,
            repr: Repr::Real {
                a: y.div(n),
                b: j.div(n),
                mode,
            },
            policy,
        })
    }

    /// `(A, B)` for continuum states.
    pub fn coefficients(&self) -> Option<(f64, f64)> {
        match self.repr {
            Repr::Bound => None,
            Repr::Collapse { a, b } => Some((a, b)),
            Repr::Real { a, b, .. } => Some((a.to_f64(), b.to_f64())),
        }
    }

    /// Radial wavefunction at `r ≥ 1`.
    pub fn value(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let x = self.k * r;
        Ok(match self.repr {
            Repr::Bound => k_inu_eval(self.order, x, &self.policy)?.value,
            Repr::Collapse { a, b } => {
                let [f, g] = fg_inu_eval(self.order, x, &self.policy)?;
                a * f.value - b * g.value
            }
            Repr::Real { a, b, mode } => {
                let jy = bessel_jy_scaled(self.order, x, &self.policy)?;
                a.mul(jy.j).sub(b.mul(clip(jy.y, mode))).to_f64()
            }
        })
    }

    /// `∫₁^∞ ψ² r dr` for bound states, from the closed form
    /// `∫ x K² dx = ((x² − ν²)K² − x²K′²)/2` of the modified Bessel equation.
    pub fn norm_squared(&self) -> Result<f64> {
        match self.repr {
            Repr::Bound => {
                let (k, nu) = (self.k, self.order);
                let e = k_inu_eval(nu, k, &self.policy)?;
                let q = 0.5 * ((k * k - nu * nu) * e.value * e.value - k * k * e.derivative * e.derivative);
                Ok(-q / (k * k))
            }
            _ => Err(domain("continuum states are normalized at infinity, not in L²")),
        }
    }
}

/// One level of the bound spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundLevel {
    pub n: i64,
    pub exact: f64,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundSpectrum {
    pub levels: Vec<BoundLevel>,
    /// `false` for `α < 0.15`, where the approximate levels are unreliable.
    pub approximation_valid: bool,
}

/// `ε_n ≈ −4 exp[2(−nπ + φ₀)/α̃]`.
pub fn approximate_level(tilde_alpha: f64, phi0: f64, n: i64) -> f64 {
    -4.0 * (2.0 * (-(n as f64) * PI + phi0) / tilde_alpha).exp()
}

/// Levels `n_from ..= n_to` from the zeros of `K_iα̃(√−ε)`.
pub fn bound_spectrum(geom: &ConeGeometry, n_from: i64, n_to: i64) -> Result<BoundSpectrum> {
    let nu = geom.tilde_alpha();
    let t = ImaginaryOrderTriple::new(nu)?;
    let roots = find_k_inu_zeros(nu, n_from, n_to)?;
    let levels = roots
        .iter()
        .zip(n_from..=n_to)
        .map(|(&x, n)| BoundLevel {
            n,
            exact: -x * x,
            approx: approximate_level(nu, t.phi0, n),
        })
        .collect();
    Ok(BoundSpectrum {
        levels,
        approximation_valid: geom.alpha >= APPROXIMATION_ALPHA_MIN,
    })
}

/// `K_iα̃(√−ε r)`.
pub fn bound_wavefunction(geom: &ConeGeometry, epsilon: f64, r: f64) -> Result<f64> {
    QuantumState::bound(geom, 0, epsilon)?.value(r)
}

/// Collapse state value and its coefficients `(A, B)`.
pub fn collapse_wavefunction(geom: &ConeGeometry, epsilon: f64, r: f64) -> Result<(f64, (f64, f64))> {
    let s = QuantumState::collapse(geom, epsilon)?;
    Ok((s.value(r)?, s.coefficients().expect("continuum")))
}

/// Scattering state value and its coefficients `(A, B)`.
pub fn scattering_wavefunction(
    geom: &ConeGeometry,
    l: i64,
    epsilon: f64,
    r: f64,
    mode: YMode,
) -> Result<(f64, (f64, f64))> {
    let s = QuantumState::scattering(geom, l, epsilon, mode)?;
    Ok((s.value(r)?, s.coefficients().expect("continuum")))
}

/// Flat-plane state `A J_l(√ε r) − B Y_l(√ε r)` with the same wall.
pub fn plane_limit_state(l: i64, epsilon: f64, r: f64) -> Result<f64> {
    QuantumState::plane(l, epsilon)?.value(r)
}

/// Constants of the near-zero-energy form of the collapse state,
/// `ψ ≈ A sin(α̃ ln r) / √(B − C cos²(α̃ ln(√ε/2) − φ₀))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZpieForm {
    pub tilde_alpha: f64,
    pub phi0: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ZpieForm {
    pub fn new(tilde_alpha: f64) -> Result<Self> {
        let t = ImaginaryOrderTriple::new(tilde_alpha)?;
        let x = tilde_alpha * PI;
        Ok(Self {
            tilde_alpha,
            phi0: t.phi0,
            a: -(2.0 / x).sqrt(),
            b: 1.0 / (0.5 * x).tanh(),
            c: 2.0 / x.sinh(),
        })
    }

    /// Phase offset in `cos²(α̃ ln√ε + C(α̃))`.
    pub fn phase_offset(&self) -> f64 {
        -self.phi0 - self.tilde_alpha * std::f64::consts::LN_2
    }

    pub fn value(&self, epsilon: f64, r: f64) -> f64 {
        let c2 = (self.tilde_alpha * (0.5 * epsilon.ln()) + self.phase_offset()).cos().powi(2);
        self.a * (self.tilde_alpha * r.ln()).sin() / (self.b - self.c * c2).sqrt()
    }

    /// `(max + min)/2` of `ψ²` over a full period in `ln√ε`.
    pub fn mean_level(&self, r: f64) -> f64 {
        let s2 = (self.tilde_alpha * r.ln()).sin().powi(2);
        0.5 * (1.0 / self.b + 1.0 / (self.b - self.c)) * self.a * self.a * s2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_at_one_sixth() {
        let g = ConeGeometry::new(1.0 / 6.0).unwrap();
        let s = bound_spectrum(&g, 1, 1).unwrap();
        let l = s.levels[0];
        assert!((l.exact + 0.994_335).abs() < 1e-5, "{}", l.exact);
        assert!((l.approx + 0.944_7).abs() < 1e-3, "{}", l.approx);
        assert!(s.approximation_valid);
        assert!(bound_wavefunction(&g, l.exact, 1.0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn small_alpha_flags_the_approximation() {
        let g = ConeGeometry::new(0.1).unwrap();
        assert!(!bound_spectrum(&g, 1, 2).unwrap().approximation_valid);
    }

    #[test]
    fn collapse_state_vanishes_at_wall() {
        let g = ConeGeometry::new(0.4).unwrap();
        for eps in [1e-9, 0.01, 1.0, 50.0] {
            let (v, (a, b)) = collapse_wavefunction(&g, eps, 1.0).unwrap();
            assert!(v.abs() < 1e-15);
            assert!((a * a + b * b - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn scattering_state_vanishes_at_wall() {
        let g = ConeGeometry::new(5.0 / 6.0).unwrap();
        for mode in [YMode::Stable, YMode::Clipped] {
            let (v, (a, b)) = scattering_wavefunction(&g, 1, 0.5, 1.0, mode).unwrap();
            assert!(v.abs() < 1e-15);
            assert!((a * a + b * b - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn huge_orders_do_not_overflow() {
        let g = ConeGeometry::new(0.01).unwrap();
        let s = QuantumState::scattering(&g, 50, 1e-6, YMode::Stable).unwrap();
        let (a, b) = s.coefficients().unwrap();
        assert!((a.abs() - 1.0).abs() < 1e-15 && b == 0.0);
        let v = s.value(10.0).unwrap();
        assert!(v.is_finite() && v.abs() < 1e-300);
    }

    #[test]
    fn zpie_constants_order() {
        for nu in [0.05, 0.5, 2.958, 20.0] {
            let z = ZpieForm::new(nu).unwrap();
            assert!(z.b > z.c && z.c > 0.0);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = ConeGeometry::new(0.5).unwrap();
        assert!(QuantumState::collapse(&g, 0.0).is_err());
        assert!(QuantumState::collapse(&g, -1.0).is_err());
        assert!(QuantumState::scattering(&g, 0, 1.0, YMode::Stable).is_err());
        assert!(QuantumState::bound(&g, 1, 0.5).is_err());
        assert!(QuantumState::collapse(&g, 1.0).unwrap().value(0.5).is_err());
        assert!(QuantumState::collapse(&g, 1.0).unwrap().norm_squared().is_err());
    }
}
