use super::MAX_ASYMPTOTIC_TERMS;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Truncation error (relative to the leading term) below which a
/// large-argument expansion is trusted.
pub(crate) const ACCEPT_ERROR: f64 = 1e-13;

/// Hankel's coefficient a_k(μ) = Π_{j=1..k} (4μ² − (2j−1)²) / (k! 8^k),
/// parameterized by `four_mu2 = 4μ²` so that imaginary orders (4μ² = −4ν²)
/// stay real.
pub fn hankel_coefficient(k: usize, four_mu2: f64) -> f64 {
    let mut a = 1.0;
    for j in 1..=k {
        let odd = (2 * j - 1) as f64;
        a *= (four_mu2 - odd * odd) / (8.0 * j as f64);
    }
    a
}

/// Partial sums of the large-`x` expansion for imaginary order `iν`:
/// `ζ = Σ (−1)^k A_{2k} / x^{2k}` and `η = Σ (−1)^k A_{2k+1} / x^{2k+1}`,
/// with `F_iν ~ √(2/πx) (ζ cos(x − π/4) − η sin(x − π/4))` and
/// `G_iν ~ √(2/πx) (ζ sin(x − π/4) + η cos(x − π/4))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCoeffs {
    pub nu: f64,
    pub x: f64,
    pub zeta: f64,
    pub eta: f64,
    /// A_s(iν) for the terms that were summed.
    pub coefficients: Vec<f64>,
    /// Magnitude of the first omitted term, relative to the leading one.
    pub error_estimate: f64,
}

impl AsymptoticCoeffs {
    pub fn new(nu: f64, x: f64) -> Self {
        let sum = oscillatory(-4.0 * nu * nu, x, x - PI / 4.0);
        let mut zeta = 0.0;
        let mut eta = 0.0;
        let mut xp = 1.0;
        for (k, &a) in sum.coefficients.iter().enumerate() {
            let t = a / xp;
            match k % 4 {
                0 => zeta += t,
                1 => eta += t,
                2 => zeta -= t,
                _ => eta -= t,
            }
            xp *= x;
        }
        Self {
            nu,
            x,
            zeta,
            eta,
            coefficients: sum.coefficients,
            error_estimate: sum.error_estimate,
        }
    }

    pub fn converged(&self) -> bool {
        self.error_estimate <= ACCEPT_ERROR
    }
}

/// `w = √(2/π) Σ i^k a_k x^{−k−1/2} e^{iφ}` together with `w′` and `w″`,
/// where `φ = x + const`. For real order μ, `Re w ~ J_μ` and `Im w ~ Y_μ`
/// with `φ = x − μπ/2 − π/4`.
#[derive(Debug, Clone)]
pub(crate) struct OscillatorySum {
    pub w: [Complex64; 3],
    pub coefficients: Vec<f64>,
    pub error_estimate: f64,
}

/// Number of terms to keep and the error estimate of the truncated series
/// `Σ a_k / x^k`.
fn truncate(four_mu2: f64, x: f64) -> (Vec<f64>, f64) {
    let mut coefficients = Vec::with_capacity(MAX_ASYMPTOTIC_TERMS);
    let mut prev = f64::INFINITY;
    let mut a = 1.0;
    let mut xp = 1.0;
    for k in 0..=MAX_ASYMPTOTIC_TERMS {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= (four_mu2 - odd * odd) / (8.0 * k as f64);
            xp *= x;
        }
        let m = (a / xp).abs();
        if k == MAX_ASYMPTOTIC_TERMS || m > prev || m < 1e-17 {
            // the expansion is exact when a term vanishes identically
            return (coefficients, if a == 0.0 { 0.0 } else { m });
        }
        coefficients.push(a);
        prev = m;
    }
    unreachable!()
}

pub(crate) fn oscillatory(four_mu2: f64, x: f64, phase: f64) -> OscillatorySum {
    let (coefficients, error_estimate) = truncate(four_mu2, x);
    let e = Complex64::from_polar(1.0, phase);
    let i = Complex64::i();
    let mut w = [Complex64::new(0.0, 0.0); 3];
    let mut ik = Complex64::new(1.0, 0.0);
    for (k, &a) in coefficients.iter().enumerate() {
        let p = k as f64 + 0.5;
        let base = ik * a * x.powf(-p);
        w[0] += base;
        w[1] += base * (i - p / x);
        w[2] += base * (p * (p + 1.0) / (x * x) - 2.0 * i * p / x - 1.0);
        ik *= i;
    }
    let norm = (2.0 / PI).sqrt();
    for v in w.iter_mut() {
        *v *= e * norm;
    }
    OscillatorySum {
        w,
        coefficients,
        error_estimate,
    }
}

/// `s(x) = √(π/2) Σ (−σ)^k a_k x^{−k−1/2}` and its first two derivatives
/// of `s(x) e^{σx}`, all divided by `e^{σx}`. With σ = −1 this is the
/// expansion of `K_μ`; with σ = +1 it is `π I_μ` (and `sinh(νπ) L_iν`).
#[derive(Debug, Clone)]
pub(crate) struct ExponentialSum {
    pub s: [f64; 3],
    pub error_estimate: f64,
}

pub(crate) fn exponential(four_mu2: f64, x: f64, sigma: f64) -> ExponentialSum {
    let (coefficients, error_estimate) = truncate(four_mu2, x);
    let mut s = [0.0; 3];
    let mut sign = 1.0;
    for (k, &a) in coefficients.iter().enumerate() {
        let p = k as f64 + 0.5;
        let c = sign * a * x.powf(-p);
        s[0] += c;
        s[1] += c * (sigma - p / x);
        s[2] += c * (1.0 - 2.0 * sigma * p / x + p * (p + 1.0) / (x * x));
        sign *= -sigma;
    }
    let norm = (PI / 2.0).sqrt();
    for v in s.iter_mut() {
        *v *= norm;
    }
    ExponentialSum { s, error_estimate }
}
