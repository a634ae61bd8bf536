//! Classical motion on the cone under `H = p_ρ²/2M + C/(2Mρ²)` with
//! `C = L_z²/α² − L_eff²` and a reflecting wall at `ρ₀`.
//!
//! The flow is integrated with an adaptive Dormand–Prince 5(4) scheme in
//! reduced variables (`ρ` in units of `ρ₀`, energies in units of
//! `max(|E|, |C|/(2Mρ₀²))`). Wall hits and radial turning points are located
//! by bisection on the step fraction.

use crate::error::{domain, Error, Result};
use std::fmt;

/// Parameters in any consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalParams {
    pub mass: f64,
    pub alpha: f64,
    pub l_z: f64,
    pub l_eff: f64,
    pub energy: f64,
    pub rho0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Attractive,
    Repulsive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Bound,
    CollapseEscape,
    Scatter,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Bound => "Bound",
            Label::CollapseEscape => "CollapseEscape",
            Label::Scatter => "Scatter",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl ClassicalParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mass", self.mass), ("rho0", self.rho0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(domain(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        if !self.l_z.is_finite() || !self.l_eff.is_finite() || !self.energy.is_finite() {
            return Err(domain("L_z, L_eff and E must be finite"));
        }
        Ok(())
    }

    /// `C = L_z²/α² − L_eff²`.
    pub fn coupling(&self) -> f64 {
        (self.l_z / self.alpha).powi(2) - self.l_eff * self.l_eff
    }

    pub fn regime(&self) -> Option<Regime> {
        let c = self.coupling();
        if c < 0.0 {
            Some(Regime::Attractive)
        } else if c > 0.0 {
            Some(Regime::Repulsive)
        } else {
            None
        }
    }

    pub fn potential(&self, rho: f64) -> f64 {
        self.coupling() / (2.0 * self.mass * rho * rho)
    }

    pub fn hamiltonian(&self, rho: f64, p_rho: f64) -> f64 {
        p_rho * p_rho / (2.0 * self.mass) + self.potential(rho)
    }

    /// Expected label from the sign of `C` and of `E`.
    pub fn expected_label(&self) -> Result<Label> {
        match (self.regime(), self.energy) {
            (Some(Regime::Attractive), e) if e < 0.0 => Ok(Label::Bound),
            (Some(Regime::Attractive), e) if e > 0.0 => Ok(Label::CollapseEscape),
            (Some(Regime::Repulsive), e) if e > 0.0 => Ok(Label::Scatter),
            _ => Err(domain(format!(
                "no classified motion for C = {}, E = {}",
                self.coupling(),
                self.energy
            ))),
        }
    }

    /// Radial momentum at `rho` for the configured energy, pointing inward
    /// or outward.
    pub fn radial_momentum(&self, rho: f64, inward: bool) -> Result<f64> {
        let kin = self.energy - self.potential(rho);
        if kin < 0.0 {
            return Err(domain(format!("rho = {rho} is classically forbidden at E = {}", self.energy)));
        }
        let p = (2.0 * self.mass * kin).sqrt();
        Ok(if inward { -p } else { p })
    }
}

/// Turning radius `ρ* = √(|C|/(2M|E|))` when the regime has one
/// (outer for bound motion, inner for repulsive scattering).
pub fn turning_point(params: &ClassicalParams) -> Option<f64> {
    let c = params.coupling();
    let e = params.energy;
    let exists = (c < 0.0 && e < 0.0) || (c > 0.0 && e > 0.0);
    exists.then(|| (c.abs() / (2.0 * params.mass * e.abs())).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Wall,
    Turning,
    Escape,
}

impl Event {
    pub fn as_str(self) -> &'static str {
        match self {
            Event::Wall => "wall",
            Event::Turning => "turning",
            Event::Escape => "escape",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub rho: f64,
    pub phi: f64,
    pub p_rho: f64,
    pub event: Option<Event>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalTrajectory {
    pub samples: Vec<TrajectorySample>,
    /// Times of wall reflections.
    pub reflections: Vec<f64>,
    /// Times at which `p_ρ` changes sign away from the wall.
    pub turnings: Vec<f64>,
    pub escaped: bool,
    pub label: Label,
}

impl ClassicalTrajectory {
    pub fn rho_range(&self) -> (f64, f64) {
        self.samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.rho), hi.max(s.rho)))
    }

    /// Largest `|H(t) − H(0)|/|H(0)|` over the samples.
    pub fn energy_drift(&self, params: &ClassicalParams) -> f64 {
        let h = |s: &TrajectorySample| params.hamiltonian(s.rho, s.p_rho);
        let h0 = h(&self.samples[0]);
        self.samples
            .iter()
            .map(|s| (h(s) - h0).abs() / h0.abs())
            .fold(0.0, f64::max)
    }
}

/// Reduced problem: `r' = P`, `P' = c/r³`, `φ' = w/r²`.
struct Reduced {
    c: f64,
    w: f64,
}

type State = [f64; 3]; // r, phi, P

impl Reduced {
    fn rhs(&self, y: &State) -> State {
        let r = y[0];
        let r2 = r * r;
        [y[2], self.w / r2, self.c / (r2 * r)]
    }

    /// One Dormand–Prince step: fifth-order solution and error estimate.
    fn step(&self, y: &State, h: f64) -> (State, State) {
        const A21: f64 = 1.0 / 5.0;
        const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
        const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
        const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
        const A6: [f64; 5] = [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
        ];
        const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
        const E: [f64; 7] = [
            71.0 / 57600.0,
            0.0,
            -71.0 / 16695.0,
            71.0 / 1920.0,
            -17253.0 / 339200.0,
            22.0 / 525.0,
            -1.0 / 40.0,
        ];
        let add = |coef: &[f64], ks: &[State]| -> State {
            let mut o = *y;
            for (c, k) in coef.iter().zip(ks) {
                for i in 0..3 {
                    o[i] += h * c * k[i];
                }
            }
            o
        };
        let k1 = self.rhs(y);
        let k2 = self.rhs(&add(&[A21], &[k1]));
        let k3 = self.rhs(&add(&A3, &[k1, k2]));
        let k4 = self.rhs(&add(&A4, &[k1, k2, k3]));
        let k5 = self.rhs(&add(&A5, &[k1, k2, k3, k4]));
        let k6 = self.rhs(&add(&A6, &[k1, k2, k3, k4, k5]));
        let y5 = add(&B, &[k1, k2, k3, k4, k5, k6]);
        let k7 = self.rhs(&y5);
        let ks = [k1, k2, k3, k4, k5, k6, k7];
        let mut err = [0.0; 3];
        for (c, k) in E.iter().zip(&ks) {
            for i in 0..3 {
                err[i] += h * c * k[i];
            }
        }
        (y5, err)
    }

    /// Fraction `θ ∈ (0, 1]` of the step `h` at which `g` changes sign.
    fn locate(&self, y: &State, h: f64, g: impl Fn(&State) -> f64) -> Option<(f64, State)> {
        let g0 = g(y);
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut best = self.step(y, h).0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Some((hi, best));
            }
            let ym = self.step(y, mid * h).0;
            if g(&ym).signum() == g0.signum() {
                lo = mid;
            } else {
                hi = mid;
                best = ym;
            }
        }
        None
    }
}

const RTOL: f64 = 1e-13;
const ATOL: f64 = 1e-13;
const ESCAPE_FACTOR: f64 = 100.0;

/// Integrates from `initial = (ρ, φ, p_ρ)` until `t_end`, or until the
/// particle is beyond `100·max(ρ₀, ρ*)` and moving outward. Samples are
/// stored every `dt` and at every event.
pub fn integrate(params: &ClassicalParams, initial: (f64, f64, f64), t_end: f64, dt: f64) -> Result<ClassicalTrajectory> {
    params.validate()?;
    let expected = params.expected_label()?;
    let (rho_i, phi_i, p_i) = initial;
    if !(rho_i >= params.rho0) {
        return Err(domain(format!("initial rho = {rho_i} is inside the wall at {}", params.rho0)));
    }
    if !(dt > 0.0 && t_end > 0.0) {
        return Err(domain("dt and t_end must be positive"));
    }
    let h0 = params.hamiltonian(rho_i, p_i);
    let scale = params.energy.abs().max(params.potential(rho_i).abs());
    if (h0 - params.energy).abs() > 1e-9 * scale {
        return Err(domain(format!(
            "initial state has energy {h0}, configured energy is {}",
            params.energy
        )));
    }

    let m = params.mass;
    let c_phys = params.coupling();
    let e_unit = params.energy.abs().max(c_phys.abs() / (2.0 * m * params.rho0 * params.rho0));
    let t_unit = params.rho0 * (m / e_unit).sqrt();
    let p_unit = m * params.rho0 / t_unit;
    let sys = Reduced {
        c: c_phys / (m * params.rho0 * params.rho0 * e_unit),
        w: t_unit * params.l_z / (m * params.alpha * params.alpha * params.rho0 * params.rho0),
    };
    let r_escape = ESCAPE_FACTOR * turning_point(params).map_or(1.0, |r| r / params.rho0).max(1.0);

    let tau_end = t_end / t_unit;
    let dtau = dt / t_unit;
    let mut y: State = [rho_i / params.rho0, phi_i, p_i / p_unit];
    let mut tau = 0.0;
    let mut traj = ClassicalTrajectory {
        samples: Vec::new(),
        reflections: Vec::new(),
        turnings: Vec::new(),
        escaped: false,
        label: expected,
    };
    let push = |traj: &mut ClassicalTrajectory, tau: f64, y: &State, event| {
        traj.samples.push(TrajectorySample {
            t: tau * t_unit,
            rho: y[0] * params.rho0,
            phi: y[1],
            p_rho: y[2] * p_unit,
            event,
        });
    };
    push(&mut traj, 0.0, &y, None);
    let mut next_sample = 1usize;
    let mut h = 1e-3 * dtau.min(1.0);
    while tau < tau_end {
        let target = (next_sample as f64 * dtau).min(tau_end);
        let lands = h >= target - tau;
        let h_try = if lands { target - tau } else { h };
        let (y5, err) = sys.step(&y, h_try);
        let mut en: f64 = 0.0;
        for i in 0..3 {
            en = en.max(err[i].abs() / (ATOL + RTOL * y[i].abs().max(y5[i].abs())));
        }
        if !en.is_finite() || en > 1.0 {
            h = h_try * (0.9 * en.powf(-0.2)).clamp(0.1, 0.5);
            if h < 1e-14 * tau.max(1.0) {
                return Err(Error::StepFailure { t: tau * t_unit });
            }
            continue;
        }
        if y5[0] < 1.0 {
            let (theta, mut ye) = sys
                .locate(&y, h_try, |s| s[0] - 1.0)
                .ok_or(Error::StepFailure { t: tau * t_unit })?;
            if (ye[0] - 1.0).abs() > 1e-9 {
                return Err(Error::StepFailure { t: tau * t_unit });
            }
            tau += theta * h_try;
            ye[0] = 1.0;
            ye[2] = ye[2].abs();
            y = ye;
            traj.reflections.push(tau * t_unit);
            push(&mut traj, tau, &y, Some(Event::Wall));
            continue;
        }
        if y[2] != 0.0 && y5[2] != 0.0 && y[2].signum() != y5[2].signum() {
            let (theta, ye) = sys
                .locate(&y, h_try, |s| s[2])
                .ok_or(Error::StepFailure { t: tau * t_unit })?;
            tau += theta * h_try;
            y = ye;
            traj.turnings.push(tau * t_unit);
            push(&mut traj, tau, &y, Some(Event::Turning));
            continue;
        }
        tau += h_try;
        y = y5;
        if lands {
            tau = target;
            push(&mut traj, tau, &y, None);
            next_sample += 1;
        }
        if y[0] > r_escape && y[2] > 0.0 {
            traj.escaped = true;
            if lands {
                traj.samples.last_mut().expect("sample just pushed").event = Some(Event::Escape);
            } else {
                push(&mut traj, tau, &y, Some(Event::Escape));
            }
            break;
        }
        if !lands || h_try >= h {
            h = h_try * (0.9 * en.max(1e-10).powf(-0.2)).min(5.0);
        }
    }
    traj.label = classify(&traj, params)?;
    Ok(traj)
}

/// Label from the regime table, checked against what the trajectory did.
pub fn classify(traj: &ClassicalTrajectory, params: &ClassicalParams) -> Result<Label> {
    let expected = params.expected_label()?;
    let (lo, hi) = traj.rho_range();
    let tol = 1e-6;
    let fail = |detail: String| Error::Inconsistent {
        expected: expected.as_str(),
        detail,
    };
    match expected {
        Label::Bound => {
            let rs = turning_point(params).expect("bound motion has a turning point");
            if traj.escaped || hi > rs * (1.0 + tol) {
                return Err(fail(format!("reached rho = {hi} beyond rho* = {rs}")));
            }
        }
        Label::Scatter => {
            let rs = turning_point(params).expect("repulsive motion has a turning point");
            if !traj.reflections.is_empty() || lo < rs * (1.0 - tol) {
                return Err(fail(format!("reached rho = {lo} inside rho* = {rs}")));
            }
        }
        Label::CollapseEscape => {
            if !traj.turnings.is_empty() {
                return Err(fail("radial motion turned around away from the wall".into()));
            }
        }
    }
    Ok(expected)
}

/// A launch configuration: parameters, start radius and direction, run length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub params: ClassicalParams,
    pub rho_start: f64,
    pub inward: bool,
    pub t_end: f64,
    pub dt: f64,
}

impl Preset {
    pub fn initial(&self) -> Result<(f64, f64, f64)> {
        Ok((self.rho_start, 0.0, self.params.radial_momentum(self.rho_start, self.inward)?))
    }

    pub fn run(&self) -> Result<ClassicalTrajectory> {
        integrate(&self.params, self.initial()?, self.t_end, self.dt)
    }
}

/// One representative run per regime, with `M = ρ₀ = 1` and `α = 1/2`.
pub fn presets() -> [Preset; 3] {
    let base = ClassicalParams {
        mass: 1.0,
        alpha: 0.5,
        l_z: 1.0,
        l_eff: 3.0,
        energy: -0.5,
        rho0: 1.0,
    };
    [
        Preset {
            name: "bound",
            params: base,
            rho_start: 2.0,
            inward: true,
            t_end: 200.0,
            dt: 0.1,
        },
        Preset {
            name: "collapse-escape",
            params: ClassicalParams { energy: 0.5, ..base },
            rho_start: 20.0,
            inward: true,
            t_end: 500.0,
            dt: 0.1,
        },
        Preset {
            name: "scatter",
            params: ClassicalParams {
                l_z: 2.0,
                l_eff: 1.0,
                energy: 0.5,
                ..base
            },
            rho_start: 20.0,
            inward: true,
            t_end: 500.0,
            dt: 0.1,
        },
    ]
}

pub fn preset(name: &str) -> Option<Preset> {
    presets().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(l_z: f64, l_eff: f64, energy: f64) -> ClassicalParams {
        ClassicalParams {
            mass: 1.0,
            alpha: 0.5,
            l_z,
            l_eff,
            energy,
            rho0: 1.0,
        }
    }

    #[test]
    fn turning_point_cases() {
        assert!(turning_point(&params(1.0, 3.0, 0.5)).is_none());
        let a = turning_point(&params(1.0, 3.0, -0.5)).unwrap();
        let b = turning_point(&params(1.0, 3.0, -1.0)).unwrap();
        assert!((a * a / (b * b) - 2.0).abs() < 1e-14);
        assert!(turning_point(&params(2.0, 1.0, -0.5)).is_none());
        assert!(turning_point(&params(2.0, 1.0, 0.5)).is_some());
    }

    #[test]
    fn dopri_step_is_fifth_order() {
        // free radial motion with c = 0: exact r = r0 + P t
        let sys = Reduced { c: 0.0, w: 0.0 };
        let (y, err) = sys.step(&[2.0, 0.0, 0.3], 0.5);
        assert!((y[0] - 2.15).abs() < 1e-15);
        assert!(err.iter().all(|e| e.abs() < 1e-15));
        let sys = Reduced { c: 1.0, w: 1.0 };
        let (a, _) = sys.step(&[1.0, 0.0, 0.0], 1e-2);
        let (b1, _) = sys.step(&[1.0, 0.0, 0.0], 5e-3);
        let (b, _) = sys.step(&b1, 5e-3);
        assert!((a[0] - b[0]).abs() < 1e-12);
    }

    #[test]
    fn reflection_flips_momentum() {
        let p = params(1.0, 3.0, 0.5);
        let pr = p.radial_momentum(5.0, true).unwrap();
        let t = integrate(&p, (5.0, 0.0, pr), 500.0, 0.1).unwrap();
        assert_eq!(t.reflections.len(), 1);
        assert!(t.escaped);
        assert_eq!(t.label, Label::CollapseEscape);
    }

    #[test]
    fn inconsistent_initial_energy_is_rejected() {
        let p = params(1.0, 3.0, -0.5);
        assert!(integrate(&p, (2.0, 0.0, 5.0), 1.0, 0.1).is_err());
        assert!(integrate(&p, (0.5, 0.0, 0.0), 1.0, 0.1).is_err());
    }
}
