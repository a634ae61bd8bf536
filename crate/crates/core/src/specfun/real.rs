use super::asymptotic::{self, ACCEPT_ERROR};
use super::gamma::{recip_gamma, temme_gammas};
use super::imaginary::kernel_quadrature;
use super::scaled::Scaled;
use super::{domain, Branch, Convergence, Evaluation, Result, SeriesPolicy, SpecfunError};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 10_000_000;
const RESCALE_AT: f64 = 1e250;
const RESCALE_BITS: i64 = 600;

fn check(name: &'static str, nu: f64, x: f64, x_positive: bool) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain(name, format!("nu must be finite and >= 0, got {nu}")));
    }
    let ok = if x_positive { x > 0.0 } else { x >= 0.0 };
    if !ok || !x.is_finite() {
        let rel = if x_positive { ">" } else { ">=" };
        return Err(domain(name, format!("x must be finite and {rel} 0, got {x}")));
    }
    Ok(())
}

/// `J_ν`, `Y_ν` and their derivatives as scaled numbers, so that
/// `Y_ν(x)` for large order and small argument (which overflows) and
/// `J_ν(x)` (which underflows) remain usable in ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JyScaled {
    pub j: Scaled,
    pub y: Scaled,
    pub jp: Scaled,
    pub yp: Scaled,
    pub branch: Branch,
}

/// Temme's series (x < 2) or Steed's continued fraction (x ≥ 2) for
/// `J_μ`, `Y_μ` with |μ| ≤ 1/2, CF1 for `J′_ν/J_ν`, and recurrences in
/// order, with power-of-two rescaling in both recurrences.
fn steed(nu: f64, x: f64) -> Result<JyScaled> {
    let nonconv = |terms| SpecfunError::NonConvergence {
        function: "bessel_jy",
        nu,
        x,
        terms,
    };
    let nl = if x < 2.0 {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J′_ν/J_ν by modified Lentz
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(nonconv(MAXIT));
    }

    // downward recurrence from ν to μ
    let mut rjl = isign;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut scale_j: i64 = 0;
    for l in (1..=nl).rev() {
        let rjtemp = (xmu + l as f64) * xi * rjl + rjpl;
        rjpl = (xmu + (l - 1) as f64) * xi * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE_AT || rjpl.abs() > RESCALE_AT {
            let s = 2f64.powi(-RESCALE_BITS as i32);
            rjl *= s;
            rjpl *= s;
            scale_j += RESCALE_BITS;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut i = 1usize;
        loop {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
            i += 1;
            if i > 10_000 {
                return Err(nonconv(i));
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut i = 2usize;
        loop {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
            i += 1;
            if i > MAXIT {
                return Err(nonconv(i));
            }
        }
        let gam = (p - f) / q;
        let mut r = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            r = -r;
        }
        rjmu = r;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let ratio = rjmu / rjl;
    let j = Scaled::from_parts(rjl1 * ratio, -scale_j);
    let jp = Scaled::from_parts(rjp1 * ratio, -scale_j);

    let mut scale_y: i64 = 0;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
        if ry1.abs() > RESCALE_AT {
            let s = 2f64.powi(-RESCALE_BITS as i32);
            ry1 *= s;
            rymu *= s;
            scale_y += RESCALE_BITS;
        }
    }
    let y = Scaled::from_parts(rymu, scale_y);
    let yp = Scaled::from_parts(nu * xi * rymu - ry1, scale_y);
    Ok(JyScaled {
        j,
        y,
        jp,
        yp,
        branch: Branch::ContinuedFraction,
    })
}

fn oscillatory_jy(nu: f64, x: f64, policy: &SeriesPolicy) -> Option<[num_complex::Complex64; 3]> {
    if x <= policy.switch_for(nu) {
        return None;
    }
    let sum = asymptotic::oscillatory(4.0 * nu * nu, x, x - 0.5 * nu * PI - 0.25 * PI);
    (sum.error_estimate <= ACCEPT_ERROR).then_some(sum.w)
}

/// `J_ν(x)`, `Y_ν(x)` and derivatives for `ν ≥ 0`, `x > 0`, in scaled form.
pub fn bessel_jy_scaled(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<JyScaled> {
    check("bessel_jy_scaled", nu, x, true)?;
    if let Some(w) = oscillatory_jy(nu, x, policy) {
        return Ok(JyScaled {
            j: Scaled::new(w[0].re),
            y: Scaled::new(w[0].im),
            jp: Scaled::new(w[1].re),
            yp: Scaled::new(w[1].im),
            branch: Branch::Asymptotic,
        });
    }
    steed(nu, x)
}

fn ode_second(nu: f64, x: f64, y: f64, dy: f64, sigma: f64) -> f64 {
    // x²y″ + xy′ + (σx² − ν²)y = 0
    -(x * dy + (sigma * x * x - nu * nu) * y) / (x * x)
}

/// Power series Σ (±1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1)) with derivatives.
fn power_series(
    name: &'static str,
    nu: f64,
    x: f64,
    alternating: bool,
    policy: &SeriesPolicy,
) -> Result<[f64; 3]> {
    let q = 0.25 * x * x;
    let lead = if nu == 0.0 {
        1.0
    } else {
        let g = recip_gamma(nu + 1.0);
        (nu * (0.5 * x).ln()).exp() * g
    };
    let mut t = lead;
    let mut s = [0.0; 3];
    let mut conv = Convergence::default();
    for k in 0..policy.max_terms {
        let kf = k as f64;
        if k > 0 {
            t *= q / (kf * (kf + nu));
            if alternating {
                t = -t;
            }
        }
        let p = 2.0 * kf + nu;
        s[0] += t;
        s[1] += t * p / x;
        s[2] += t * p * (p - 1.0) / (x * x);
        if conv.update(t, s[0], policy.rel_tol) || t == 0.0 {
            return Ok(s);
        }
    }
    Err(SpecfunError::NonConvergence {
        function: name,
        nu,
        x,
        terms: policy.max_terms,
    })
}

pub fn bessel_j_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    check("bessel_j", nu, x, false)?;
    if x == 0.0 {
        let v = if nu == 0.0 { 1.0 } else { 0.0 };
        let d = if nu == 1.0 {
            0.5
        } else if nu == 0.0 || nu > 1.0 {
            0.0
        } else {
            f64::INFINITY
        };
        return Ok(Evaluation::new(v, d, f64::NAN, Branch::Series));
    }
    if x <= 2.0f64.min(policy.switch_for(nu)) {
        let s = power_series("bessel_j", nu, x, true, policy)?;
        return Ok(Evaluation::new(s[0], s[1], s[2], Branch::Series));
    }
    let jy = bessel_jy_scaled(nu, x, policy)?;
    let (v, d) = (jy.j.to_f64(), jy.jp.to_f64());
    Ok(Evaluation::new(v, d, ode_second(nu, x, v, d, 1.0), jy.branch))
}

pub fn bessel_j(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    bessel_j_eval(nu, x, policy).map(|e| e.value)
}

pub fn bessel_y_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    check("bessel_y", nu, x, true)?;
    let jy = bessel_jy_scaled(nu, x, policy)?;
    let (v, d) = (jy.y.to_f64(), jy.yp.to_f64());
    Ok(Evaluation::new(v, d, ode_second(nu, x, v, d, 1.0), jy.branch))
}

pub fn bessel_y(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    bessel_y_eval(nu, x, policy).map(|e| e.value)
}

pub fn bessel_i_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    check("bessel_i", nu, x, false)?;
    if x == 0.0 {
        let v = if nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(Evaluation::new(v, if nu == 1.0 { 0.5 } else { 0.0 }, f64::NAN, Branch::Series));
    }
    if x > policy.switch_for(nu) {
        let sum = asymptotic::exponential(4.0 * nu * nu, x, 1.0);
        if sum.error_estimate <= ACCEPT_ERROR {
            let f = x.exp() / PI;
            return Ok(Evaluation::new(
                sum.s[0] * f,
                sum.s[1] * f,
                sum.s[2] * f,
                Branch::Asymptotic,
            ));
        }
    }
    let s = power_series("bessel_i", nu, x, false, policy)?;
    Ok(Evaluation::new(s[0], s[1], s[2], Branch::Series))
}

pub fn bessel_i(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    bessel_i_eval(nu, x, policy).map(|e| e.value)
}

/// π (I_{−ν} − I_ν) / (2 sin νπ) for non-integer ν.
fn k_difference(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<[f64; 3]> {
    let ip = power_series("bessel_k", nu, x, false, policy)?;
    // I_{−ν}: Σ (x/2)^{2k−ν} / (k! Γ(k−ν+1)); 1/Γ is built up from 1/Γ(1−ν)
    let q = 0.25 * x * x;
    let mut rg = recip_gamma(1.0 - nu);
    let mut pw = (-nu * (0.5 * x).ln()).exp();
    let mut fact = 1.0;
    let mut im = [0.0; 3];
    let mut conv = Convergence::default();
    let mut done = false;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        if k > 0 {
            // 1/Γ(k+1−ν) = 1/Γ(k−ν) / (k−ν)
            rg /= kf - nu;
            pw *= q;
            fact *= kf;
        }
        let t = pw * rg / fact;
        let p = 2.0 * kf - nu;
        im[0] += t;
        im[1] += t * p / x;
        im[2] += t * p * (p - 1.0) / (x * x);
        if k > nu as usize + 1 && conv.update(t, im[0], policy.rel_tol) {
            done = true;
            break;
        }
    }
    if !done {
        return Err(SpecfunError::NonConvergence {
            function: "bessel_k",
            nu,
            x,
            terms: policy.max_terms,
        });
    }
    let c = PI / (2.0 * (PI * nu).sin());
    Ok([
        c * (im[0] - ip[0]),
        c * (im[1] - ip[1]),
        c * (im[2] - ip[2]),
    ])
}

pub fn bessel_k_eval(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    check("bessel_k", nu, x, true)?;
    if x > policy.switch_for(nu) {
        let sum = asymptotic::exponential(4.0 * nu * nu, x, -1.0);
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
    if x <= 2.0 {
        let s = if nu == nu.round() {
            let a = k_difference(nu + 1e-6, x, policy)?;
            let b = k_difference((nu - 1e-6).abs(), x, policy)?;
            [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])]
        } else {
            k_difference(nu, x, policy)?
        };
        return Ok(Evaluation::new(s[0], s[1], s[2], Branch::Series));
    }
    let (acc, _) = kernel_quadrature(nu, x, true);
    let e = (-x).exp();
    Ok(Evaluation::new(acc[0] * e, acc[1] * e, acc[2] * e, Branch::Quadrature))
}

pub fn bessel_k(nu: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    bessel_k_eval(nu, x, policy).map(|e| e.value)
}
