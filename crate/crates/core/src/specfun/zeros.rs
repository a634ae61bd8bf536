use super::imaginary::{k_inu, ImaginaryOrderTriple};
use super::{domain, Result, SeriesPolicy, SpecfunError};
use std::f64::consts::PI;

/// Roots `x_n` of `K_iν(x)` for `n = n_from ..= n_to`, in that order
/// (so `x` decreases along the list).
///
/// Each root is seeded at `x_n ≈ 2 exp((−nπ + φ_{ν,0})/ν)`, bracketed in
/// `ln x` over half a period on either side of the seed (widened by a factor
/// 1.5 up to 40 times if no sign change shows up) and bisected in `ln x`.
pub fn find_k_inu_zeros(nu: f64, n_from: i64, n_to: i64) -> Result<Vec<f64>> {
    if n_from < 1 {
        return Err(domain("find_k_inu_zeros", format!("n_from must be >= 1, got {n_from}")));
    }
    if n_from > n_to {
        return Err(domain(
            "find_k_inu_zeros",
            format!("n_from ({n_from}) must not exceed n_to ({n_to})"),
        ));
    }
    let t = ImaginaryOrderTriple::new(nu).map_err(|_| domain("find_k_inu_zeros", "nu must be > 0"))?;
    let policy = SeriesPolicy::default();
    let k = |u: f64| k_inu(nu, u.exp(), &policy);
    let mut roots = Vec::with_capacity((n_to - n_from + 1) as usize);
    for n in n_from..=n_to {
        let seed = std::f64::consts::LN_2 + (-(n as f64) * PI + t.phi0) / nu;
        let mut half = PI / (2.0 * nu);
        let mut bracket = None;
        for _ in 0..=40 {
            let (a, b) = (seed - half, seed + half);
            let (fa, fb) = (k(a)?, k(b)?);
            if fa == 0.0 {
                bracket = Some((a, a, fa));
                break;
            }
            if fb == 0.0 {
                bracket = Some((b, b, fb));
                break;
            }
            if fa.signum() != fb.signum() {
                bracket = Some((a, b, fa));
                break;
            }
            half *= 1.5;
        }
        let (mut a, mut b, mut fa) = bracket.ok_or(SpecfunError::BracketFailure { nu, n })?;
        while b - a > 1e-13 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = k(m)?;
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        roots.push((0.5 * (a + b)).exp());
    }
    Ok(roots)
}
