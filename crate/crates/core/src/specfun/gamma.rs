use num_complex::Complex64;
use std::f64::consts::PI;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k (2k − 1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Taylor coefficients of 1/Γ(1 + z) about z = 0.
const RECIP_GAMMA_1P: [f64; 27] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -0.000_001_250_493_482_142_670_657_3,
    0.000_001_133_027_231_981_695_882_4,
    -0.000_000_205_633_841_697_760_710_35,
    0.000_000_006_116_095_104_481_415_817_9,
    0.000_000_005_002_007_644_469_222_930_1,
    -0.000_000_001_181_274_570_487_020_144_6,
    0.000_000_000_104_342_671_169_110_051_05,
    0.000_000_000_007_782_263_439_905_071_254,
    -0.000_000_000_003_696_805_618_642_205_708_2,
    0.000_000_000_000_510_037_028_745_447_597_9,
    -0.000_000_000_000_020_583_260_535_665_067_832,
    -0.000_000_000_000_005_348_122_539_423_017_982_4,
    0.000_000_000_000_001_226_778_628_238_260_790_2,
    -0.000_000_000_000_000_118_125_930_169_745_876_95,
    0.000_000_000_000_000_001_186_692_254_751_600_332_6,
];

/// ln Γ(z) for Re z > 0 on the branch that is continuous in z.
///
/// The argument is shifted up until |z| > 10 and the Stirling series is
/// applied there; the shift contributes a sum of principal logarithms of
/// numbers with positive real part, so the imaginary part never wraps.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "ln_gamma_complex requires Re z > 0, got {z}");
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x <= 30.0 {
        return -recip_gamma(x).ln();
    }
    let mut w = x;
    let mut prod = 1.0;
    while w < 10.0 {
        prod *= w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - prod.ln()
}

/// sin(πx) with the argument reduced before multiplying by π.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        0.0
    } else {
        (PI * r).sin()
    }
}

/// 1/Γ(x) for any real x (zero at the non-positive integers).
pub fn recip_gamma(x: f64) -> f64 {
    if x > 0.0 {
        if x < 0.5 {
            // 1/Γ(x) = x / Γ(1+x)
            return x * recip_gamma_1p(x);
        }
        if x <= 30.0 {
            // Γ(x) = (x−1)(x−2)···y Γ(y) with y in [0.5, 1.5]
            let mut y = x;
            let mut prod = 1.0;
            while y > 1.5 {
                y -= 1.0;
                prod *= y;
            }
            return recip_gamma_1p(y - 1.0) / prod;
        }
        (-ln_gamma(x)).exp()
    } else if x == x.floor() {
        0.0
    } else {
        // reflection: 1/Γ(x) = sin(πx) Γ(1−x) / π
        sin_pi(x) * ln_gamma(1.0 - x).exp() / PI
    }
}

/// 1/Γ(1 + z) from its Taylor series, for |z| ≤ 1/2.
pub(crate) fn recip_gamma_1p(z: f64) -> f64 {
    debug_assert!(z.abs() <= 0.5 + 1e-12);
    RECIP_GAMMA_1P.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Temme's auxiliary functions for |μ| ≤ 1/2:
/// returns (γ₁, γ₂, 1/Γ(1+μ), 1/Γ(1−μ)) with
/// γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ)) / (2μ) and γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mu2 = mu * mu;
    // even part gives γ₂, odd part (divided by μ) gives −γ₁
    let mut p = 1.0;
    for (k, &c) in RECIP_GAMMA_1P.iter().enumerate() {
        if k % 2 == 0 {
            gam2 += c * p;
        } else {
            gam1 -= c * p;
            p *= mu2;
        }
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// φ_{ν,s} = arg Γ(1 + s + iν), continuous in ν with φ → 0 as ν → 0.
pub fn arg_gamma_continuous(s: u32, nu: f64) -> f64 {
    ln_gamma_complex(Complex64::new(1.0 + s as f64, nu)).im
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            fact *= n as f64;
            let lg = ln_gamma(n as f64 + 1.0);
            assert!((lg - fact.ln()).abs() < 1e-13 * fact.ln().max(1.0), "n={n}");
        }
        assert!((ln_gamma(0.5) - 0.5 * PI.ln()).abs() < 4e-16);
    }

    #[test]
    fn complex_ln_gamma_on_real_axis() {
        for &x in &[0.1, 0.5, 1.0, 2.5, 7.3, 40.0] {
            let z = ln_gamma_complex(Complex64::new(x, 0.0));
            assert!((z.re - ln_gamma(x)).abs() < 1e-13);
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn modulus_of_gamma_on_imaginary_line() {
        // |Γ(1 + iν)|² = πν / sinh(πν)
        for &nu in &[0.01, 0.3, 1.0, 2.958, 10.0, 50.0] {
            let re = ln_gamma_complex(Complex64::new(1.0, nu)).re;
            let expected = 0.5 * ((PI * nu).ln() - (PI * nu).sinh().ln());
            assert!((re - expected).abs() < 1e-12, "nu={nu}");
        }
    }

    #[test]
    fn recip_gamma_reflection() {
        // Γ(-1/2) = -2√π
        assert!((recip_gamma(-0.5) + 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
        assert_eq!(recip_gamma(-3.0), 0.0);
        assert_eq!(recip_gamma(0.0), 0.0);
        assert!((recip_gamma(1.0) - 1.0).abs() < 1e-15);
        assert!((recip_gamma(0.25) - 1.0 / 3.625_609_908_221_908).abs() < 1e-15);
    }

    #[test]
    fn temme_gammas_consistent_with_direct_values() {
        for &mu in &[-0.5, -0.2, 0.0, 1e-9, 0.3, 0.5] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            assert!((gp - recip_gamma(1.0 + mu)).abs() < 1e-15);
            assert!((gm - recip_gamma(1.0 - mu)).abs() < 1e-15);
            assert!((g2 - 0.5 * (gp + gm)).abs() < 1e-15);
            if mu.abs() > 1e-3 {
                assert!((g1 - (gm - gp) / (2.0 * mu)).abs() < 1e-13);
            }
        }
        // γ₁(0) = -γ (Euler)
        assert!((temme_gammas(0.0).0 + 0.577_215_664_901_532_9).abs() < 1e-15);
    }

    #[test]
    fn arg_gamma_limit_and_reference_value() {
        assert!(arg_gamma_continuous(0, 1e-12).abs() < 1e-11);
        // Im ln Γ(1 + 2.95803989154980802 i), 30-digit reference
        let phi = arg_gamma_continuous(0, 2.958_039_891_549_808);
        assert!((phi - 1.007_148_952_832_173_7).abs() < 1e-13);
    }
}
