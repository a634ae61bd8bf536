use super::asymptotic::{self, ACCEPT_ERROR};
use super::gamma::arg_gamma_continuous;
use super::{domain, Branch, Convergence, Evaluation, Result, SeriesPolicy, SpecfunError};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Order-dependent constants of the power series for `F_iν`, `G_iν`,
/// `K_iν` and `L_iν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryOrderTriple {
    pub nu: f64,
    /// φ_{ν,0} = arg Γ(1 + iν).
    pub phi0: f64,
    /// √(2ν tanh(νπ/2) / π)
    pub d: f64,
    /// √(2ν coth(νπ/2) / π)
    pub e: f64,
    /// √(νπ / sinh(νπ))
    pub m: f64,
}

impl ImaginaryOrderTriple {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(domain("ImaginaryOrderTriple", format!("nu must be > 0, got {nu}")));
        }
        let h = 0.5 * nu * PI;
        let t = h.tanh();
        let m = if 2.0 * h < 20.0 {
            (2.0 * h / (2.0 * h).sinh()).sqrt()
        } else {
            (4.0 * h / (1.0 - (-4.0 * h).exp())).sqrt() * (-h).exp()
        };
        Ok(Self {
            nu,
            phi0: arg_gamma_continuous(0, nu),
            d: (2.0 * nu * t / PI).sqrt(),
            e: (2.0 * nu / (t * PI)).sqrt(),
            m,
        })
    }

    /// φ_{ν,s} = arg Γ(1 + s + iν).
    pub fn phi_s(&self, s: u32) -> f64 {
        let mut phi = self.phi0;
        for k in 1..=s {
            phi += (self.nu / k as f64).atan();
        }
        phi
    }

    /// The common small-`x` phase ν ln(x/2) − φ_{ν,0}.
    pub fn small_x_phase(&self, x: f64) -> f64 {
        self.nu * (0.5 * x).ln() - self.phi0
    }
}

struct SeriesSums {
    /// Σ σ_s z_s, Σ σ_s z_s (2s+iν), Σ σ_s z_s (2s+iν)(2s+iν−1)
    /// with z_s = (x/2)^{2s} e^{iα_s} / β_s.
    s: [Complex64; 3],
    /// Σ |z_s|, for the rounding-error estimate.
    abs_sum: f64,
}

/// Power series shared by the four functions; `alternating` selects the
/// (−1)^s sign of the `F`, `G` pair.
fn series_sums(
    name: &'static str,
    t: &ImaginaryOrderTriple,
    x: f64,
    alternating: bool,
    policy: &SeriesPolicy,
) -> Result<SeriesSums> {
    let nu = t.nu;
    let q = 0.25 * x * x;
    let lnx2 = (0.5 * x).ln();
    let mut mag = 1.0 / nu;
    let mut phi = t.phi0;
    let mut s = [Complex64::new(0.0, 0.0); 3];
    let mut abs_sum = 0.0;
    let mut conv = Convergence::default();
    for k in 0..policy.max_terms {
        let kf = k as f64;
        if k > 0 {
            mag *= q / (kf * (kf * kf + nu * nu).sqrt());
            phi += (nu / kf).atan();
        }
        let sign = if alternating && k % 2 == 1 { -1.0 } else { 1.0 };
        let z = Complex64::from_polar(sign * mag, nu * lnx2 - phi);
        let p = Complex64::new(2.0 * kf, nu);
        s[0] += z;
        s[1] += z * p;
        s[2] += z * p * (p - 1.0);
        abs_sum += mag;
        if conv.update(mag, s[0].norm(), policy.rel_tol) {
            return Ok(SeriesSums { s, abs_sum });
        }
        if mag == 0.0 {
            return Ok(SeriesSums { s, abs_sum });
        }
    }
    Err(SpecfunError::NonConvergence {
        function: name,
        nu,
        x,
        terms: policy.max_terms,
    })
}

fn check_args(name: &'static str, nu: f64, x: f64) -> Result<ImaginaryOrderTriple> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(name, format!("x must be finite and > 0, got {x}")));
    }
    ImaginaryOrderTriple::new(nu).map_err(|_| domain(name, format!("nu must be > 0, got {nu}")))
}

#[derive(Clone, Copy, PartialEq)]
enum Part {
    Re,
    Im,
}

fn pick(z: Complex64, part: Part) -> f64 {
    match part {
        Part::Re => z.re,
        Part::Im => z.im,
    }
}

/// Series value of `scale · part(S)` with derivatives.
fn from_series(sums: &SeriesSums, x: f64, scale: f64, part: Part) -> Evaluation {
    Evaluation::new(
        scale * pick(sums.s[0], part),
        scale * pick(sums.s[1], part) / x,
        scale * pick(sums.s[2], part) / (x * x),
        Branch::Series,
    )
}

/// Taylor stepping of `x²y″ + xy′ + (σx² + ν²)y = 0` from `(x0, y, y′)` to
/// `x1`; returns `(y, y′, y″)` at `x1`.
pub(crate) fn continue_ode(nu: f64, sigma: f64, x0: f64, y0: f64, dy0: f64, x1: f64) -> [f64; 3] {
    let q = nu * nu;
    let mut x = x0;
    let mut y = y0;
    let mut dy = dy0;
    let mut c = [0.0f64; 64];
    while (x1 - x).abs() > 0.0 {
        let span = x1 - x;
        let hmax = (0.5 * x).min(2.0);
        let h = if span.abs() <= hmax { span } else { hmax * span.signum() };
        c.fill(0.0);
        c[0] = y;
        c[1] = dy;
        let x2 = x * x;
        let (mut val, mut der) = (y + dy * h, dy);
        let mut hp = h;
        for k in 0..62usize {
            let kf = k as f64;
            let mut num = x * (kf + 1.0) * (2.0 * kf + 1.0) * c[k + 1] + (kf * kf + sigma * x2 + q) * c[k];
            if k >= 1 {
                num += sigma * 2.0 * x * c[k - 1];
            }
            if k >= 2 {
                num += sigma * c[k - 2];
            }
            c[k + 2] = -num / (x2 * (kf + 2.0) * (kf + 1.0));
            let term_d = (kf + 2.0) * c[k + 2] * hp;
            hp *= h;
            let term = c[k + 2] * hp;
            val += term;
            der += term_d;
            if k > 8 && term.abs() < 1e-18 * val.abs().max(1e-300) && term_d.abs() < 1e-18 * der.abs().max(1e-300) {
                break;
            }
        }
        x += h;
        y = val;
        dy = der;
    }
    let ddy = -(dy * x + (sigma * x * x + q) * y) / (x * x);
    [y, dy, ddy]
}

fn oscillatory_pair(nu: f64, x: f64) -> Option<[Complex64; 3]> {
    let sum = asymptotic::oscillatory(-4.0 * nu * nu, x, x - PI / 4.0);
    (sum.error_estimate <= ACCEPT_ERROR).then_some(sum.w)
}

/// F (Re) or G (Im) of the Bessel-type pair.
fn fg_eval(name: &'static str, part: Part, nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    let t = check_args(name, nu, x)?;
    let scale = if part == Part::Re { t.d } else { t.e };
    let switch = policy.switch_for(nu);
    if x <= switch {
        let sums = series_sums(name, &t, x, true, policy)?;
        return Ok(from_series(&sums, x, scale, part));
    }
    if let Some(w) = oscillatory_pair(nu, x) {
        return Ok(Evaluation::new(
            pick(w[0], part),
            pick(w[1], part),
            pick(w[2], part),
            Branch::Asymptotic,
        ));
    }
    let sums = series_sums(name, &t, switch, true, policy)?;
    let start = from_series(&sums, switch, scale, part);
    let [y, dy, ddy] = continue_ode(nu, 1.0, switch, start.value, start.derivative, x);
    Ok(Evaluation::new(y, dy, ddy, Branch::Continuation))
}

/// `F_iν` and `G_iν` together, sharing one series evaluation.
pub fn fg_inu_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<[Evaluation; 2]> {
    let t = check_args("fg_inu", nu, x)?;
    let switch = policy.switch_for(nu);
    if x <= switch {
        let sums = series_sums("fg_inu", &t, x, true, policy)?;
        return Ok([
            from_series(&sums, x, t.d, Part::Re),
            from_series(&sums, x, t.e, Part::Im),
        ]);
    }
    if let Some(w) = oscillatory_pair(nu, x) {
        let ev = |part| Evaluation::new(pick(w[0], part), pick(w[1], part), pick(w[2], part), Branch::Asymptotic);
        return Ok([ev(Part::Re), ev(Part::Im)]);
    }
    let sums = series_sums("fg_inu", &t, switch, true, policy)?;
    let cont = |scale, part| {
        let start = from_series(&sums, switch, scale, part);
        let [y, dy, ddy] = continue_ode(nu, 1.0, switch, start.value, start.derivative, x);
        Evaluation::new(y, dy, ddy, Branch::Continuation)
    };
    Ok([cont(t.d, Part::Re), cont(t.e, Part::Im)])
}

pub fn f_inu_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    fg_eval("f_inu", Part::Re, nu, x, policy)
}

pub fn g_inu_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    fg_eval("g_inu", Part::Im, nu, x, policy)
}

pub fn f_inu(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    f_inu_eval(nu, x, policy).map(|e| e.value)
}

pub fn g_inu(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    g_inu_eval(nu, x, policy).map(|e| e.value)
}

/// Trapezoidal rule for `∫_0^∞ e^{−x cosh t} w(νt) (1, −cosh t, cosh² t) dt`
/// with `w = cos` or `cosh`, scaled by `e^{x}`. Returns the three integrals
/// and `∫ |integrand|`.
pub(crate) fn kernel_quadrature(nu: f64, x: f64, hyperbolic: bool) -> ([f64; 3], f64) {
    let h = 4.93 / (37.0 + 0.29 * x + 0.79 * nu);
    let mut acc = [0.0; 3];
    let mut abs = 0.0;
    let mut k = 0usize;
    loop {
        let t = k as f64 * h;
        let ch = t.cosh();
        let decay = -x * (ch - 1.0);
        let (w, envelope) = if hyperbolic {
            let v = (decay + nu * t).exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp());
            (v, v)
        } else {
            let v = decay.exp();
            (v * (nu * t).cos(), v)
        };
        let weight = if k == 0 { 0.5 * h } else { h };
        acc[0] += weight * w;
        acc[1] -= weight * w * ch;
        acc[2] += weight * w * ch * ch;
        abs += weight * envelope * ch * ch;
        // past the peak of the envelope and negligible
        let past_peak = !hyperbolic || x * t.sinh() > nu;
        if past_peak && envelope * ch * ch < 1e-20 * abs.max(1e-300) && decay < -45.0 {
            break;
        }
        k += 1;
        if k > 2_000_000 {
            break;
        }
    }
    (acc, abs)
}

/// K_iν by quadrature, with an absolute error estimate.
fn k_quadrature(nu: f64, x: f64) -> (Evaluation, f64) {
    let (acc, abs) = kernel_quadrature(nu, x, false);
    let s = (-x).exp();
    (
        Evaluation::new(acc[0] * s, acc[1] * s, acc[2] * s, Branch::Quadrature),
        64.0 * f64::EPSILON * abs * s,
    )
}

pub fn k_inu_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    let t = check_args("k_inu", nu, x)?;
    let switch = policy.switch_for(nu);
    if x > switch {
        let sum = asymptotic::exponential(-4.0 * nu * nu, x, -1.0);
        if sum.error_estimate <= ACCEPT_ERROR {
            let e = (-x).exp();
            return Ok(Evaluation::new(
                sum.s[0] * e,
                sum.s[1] * e,
                sum.s[2] * e,
                Branch::Asymptotic,
            ));
        }
    }
    let series = if x <= switch {
        match series_sums("k_inu", &t, x, false, policy) {
            Ok(sums) => {
                let ev = from_series(&sums, x, -t.m, Part::Im);
                let err = 64.0 * f64::EPSILON * t.m * sums.abs_sum;
                if err <= 1e-13 * ev.value.abs() {
                    return Ok(ev);
                }
                Some((ev, err))
            }
            Err(e) if x > 2.0 => {
                let _ = e;
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let (quad, qerr) = k_quadrature(nu, x);
    match series {
        Some((ev, err)) if err < qerr => Ok(ev),
        _ => Ok(quad),
    }
}

pub fn k_inu(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    k_inu_eval(nu, x, policy).map(|e| e.value)
}

pub fn l_inu_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    let t = check_args("l_inu", nu, x)?;
    let overflow = SpecfunError::Overflow {
        function: "l_inu",
        nu,
        x,
    };
    if x > policy.switch_for(nu) {
        let sum = asymptotic::exponential(-4.0 * nu * nu, x, 1.0);
        if sum.error_estimate <= ACCEPT_ERROR {
            // e^x / sinh(νπ), evaluated in logs
            let h = nu * PI;
            let ln_sinh = h + (-(-2.0 * h).exp()).ln_1p() - std::f64::consts::LN_2;
            let f = (x - ln_sinh).exp();
            if !f.is_finite() || !(sum.s[2] * f).is_finite() {
                return Err(overflow);
            }
            return Ok(Evaluation::new(
                sum.s[0] * f,
                sum.s[1] * f,
                sum.s[2] * f,
                Branch::Asymptotic,
            ));
        }
    }
    let sums = series_sums("l_inu", &t, x, false, policy)?;
    let ev = from_series(&sums, x, t.m, Part::Re);
    if !ev.value.is_finite() || !ev.second_derivative.is_finite() {
        return Err(overflow);
    }
    Ok(ev)
}

pub fn l_inu(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    l_inu_eval(nu, x, policy).map(|e| e.value)
}

/// Leading small-`x` behaviour `D_ν cos(ν ln(x/2) − φ_{ν,0}) / ν`.
pub fn f_inu_small_x(nu: f64, x: f64) -> Result<f64> {
    let t = check_args("f_inu_small_x", nu, x)?;
    Ok(t.d * t.small_x_phase(x).cos() / nu)
}

/// Leading small-`x` behaviour `E_ν sin(ν ln(x/2) − φ_{ν,0}) / ν`.
pub fn g_inu_small_x(nu: f64, x: f64) -> Result<f64> {
    let t = check_args("g_inu_small_x", nu, x)?;
    Ok(t.e * t.small_x_phase(x).sin() / nu)
}

/// Leading small-`x` behaviour `−M_ν sin(ν ln(x/2) − φ_{ν,0}) / ν`.
pub fn k_inu_small_x(nu: f64, x: f64) -> Result<f64> {
    let t = check_args("k_inu_small_x", nu, x)?;
    Ok(-t.m * t.small_x_phase(x).sin() / nu)
}

/// Leading small-`x` behaviour `M_ν cos(ν ln(x/2) − φ_{ν,0}) / ν`.
pub fn l_inu_small_x(nu: f64, x: f64) -> Result<f64> {
    let t = check_args("l_inu_small_x", nu, x)?;
    Ok(t.m * t.small_x_phase(x).cos() / nu)
}
