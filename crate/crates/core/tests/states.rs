use conecollapse::cone::ConeGeometry;
use conecollapse::ldos::plane_reference;
use conecollapse::specfun::{bessel_j, recip_gamma, SeriesPolicy};
use conecollapse::states::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn ground_level_against_reference_root() {
    let g = ConeGeometry::new(1.0 / 6.0).unwrap();
    let s = bound_spectrum(&g, 1, 1).unwrap();
    // −x₁² with x₁ the first root of K_iα̃ at 40 digits
    assert!(rel(s.levels[0].exact, -0.994_334_631_254_185_03) < 1e-12);
    assert!(rel(s.levels[0].approx, -0.944_732_954_722_400_78) < 1e-14);
    assert!(rel(s.levels[0].approx, s.levels[0].exact) < 0.10);
    assert!((s.levels[0].exact + 1.0).abs() < 0.05);
}

#[test]
fn approximate_levels_match_reference() {
    let reference = [
        -0.112_933_368_072_648_44,
        -0.013_500_053_703_514_444,
        -0.001_613_796_286_324_643,
        -0.000_192_913_192_121_393_29,
        -0.000_023_060_841_080_024_061,
    ];
    let g = ConeGeometry::new(1.0 / 6.0).unwrap();
    let s = bound_spectrum(&g, 2, 6).unwrap();
    for (l, r) in s.levels.iter().zip(reference) {
        assert!(rel(l.approx, r) < 1e-13, "n={}", l.n);
    }
}

#[test]
fn spectrum_is_geometric_and_accumulates_at_zero() {
    for alpha in [1.0 / 6.0, 0.5, 5.0 / 6.0] {
        let g = ConeGeometry::new(alpha).unwrap();
        let q = (-2.0 * PI / g.tilde_alpha()).exp();
        let s = bound_spectrum(&g, 1, 7).unwrap();
        let mut last = f64::INFINITY;
        for w in s.levels.windows(2) {
            assert!(w[0].exact < w[1].exact && w[1].exact < 0.0);
            let err = rel(w[1].exact / w[0].exact, q);
            assert!(err < 0.05 && (err < last || err < 1e-12), "alpha={alpha} n={}", w[0].n);
            last = err;
        }
        assert!(last < 1e-5, "alpha={alpha}");
    }
}

#[test]
fn bound_states_vanish_at_the_wall() {
    let g = ConeGeometry::new(1.0 / 6.0).unwrap();
    for l in bound_spectrum(&g, 1, 4).unwrap().levels {
        let psi = QuantumState::bound(&g, l.n, l.exact).unwrap();
        let peak = (0..200).map(|i| psi.value(1.0 + 0.05 * i as f64).unwrap().abs()).fold(0.0, f64::max);
        assert!(psi.value(1.0).unwrap().abs() < 1e-9 * peak.max(1e-300), "n={}", l.n);
    }
}

#[test]
fn bound_norm_closed_form() {
    let g = ConeGeometry::new(1.0 / 6.0).unwrap();
    let e = bound_spectrum(&g, 1, 1).unwrap().levels[0].exact;
    let psi = QuantumState::bound(&g, 1, e).unwrap();
    // ∫₁^∞ K_iα̃(x₁r)² r dr by 40-digit quadrature
    assert!(rel(psi.norm_squared().unwrap(), 8.163_047_222_944_512e-4) < 1e-9);
}

#[test]
fn bound_state_large_r_decay() {
    let g = ConeGeometry::new(1.0 / 6.0).unwrap();
    let e = bound_spectrum(&g, 1, 1).unwrap().levels[0].exact;
    let k = (-e).sqrt();
    let nu = g.tilde_alpha();
    let psi = QuantumState::bound(&g, 1, e).unwrap();
    let lead = |x: f64| (PI / (2.0 * x)).sqrt() * (-x).exp();
    // Hankel corrections aₙ/xⁿ with 4μ² = −4α̃²
    let a1 = (-4.0 * nu * nu - 1.0) / 8.0;
    let a2 = a1 * (-4.0 * nu * nu - 9.0) / 16.0;
    let a3 = a2 * (-4.0 * nu * nu - 25.0) / 24.0;
    let x = 30.0 * k;
    let ratio = psi.value(30.0).unwrap() / lead(x);
    assert!((ratio - (1.0 + a1 / x + a2 / (x * x) + a3 / x.powi(3))).abs() < 1e-3);
    // the leading form is approached like 1/x
    let far = psi.value(600.0).unwrap() / lead(600.0 * k) - 1.0;
    assert!((far * 600.0 * k / a1 - 1.0).abs() < 0.05);
}

#[test]
fn ground_state_sits_inside_the_turning_point() {
    let g = ConeGeometry::new(1.0 / 6.0).unwrap();
    let e = bound_spectrum(&g, 1, 1).unwrap().levels[0].exact;
    let psi = QuantumState::bound(&g, 1, e).unwrap();
    let (n, h) = (6000, 0.01);
    let (mut m0, mut m1) = (0.0, 0.0);
    for i in 0..=n {
        let r = 1.0 + h * i as f64;
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let p = psi.value(r).unwrap().powi(2) * r;
        m0 += w * p;
        m1 += w * p * r;
    }
    let mean_r = m1 / m0;
    let r_star = g.tilde_alpha() / (-e).sqrt();
    assert!(mean_r > 1.0 && mean_r < r_star, "<r>={mean_r}, r*={r_star}");
    assert!(rel(m0 * h / 3.0, psi.norm_squared().unwrap()) < 1e-8);
}

#[test]
fn collapse_state_against_reference() {
    let g = ConeGeometry::new(0.4).unwrap();
    let s = QuantumState::collapse(&g, 0.3).unwrap();
    let (a, b) = s.coefficients().unwrap();
    assert!((a + 0.926_865_411_605_008_31).abs() < 1e-12);
    assert!((b - 0.375_393_804_917_287_52).abs() < 1e-12);
    for (r, v) in [
        (1.7, -0.420_457_179_651_076_48),
        (4.0, -0.389_875_000_897_122_40),
        (12.0, -0.167_227_352_688_603_54),
    ] {
        assert!((s.value(r).unwrap() - v).abs() < 1e-11, "r={r}");
    }
}

#[test]
fn scattering_state_against_reference() {
    let g = ConeGeometry::new(5.0 / 6.0).unwrap();
    let cases = [
        (1, 0.5, 2.5, -0.464_385_925_698_828_11, -0.977_375_717_012_911_02, 0.211_510_538_256_366_95),
        (3, 0.02, 7.0, -0.005_817_577_370_369_761_4, -1.0, 3.694_747_025_436_685_4e-10),
        (2, 4.0, 1.3, -0.206_419_791_514_886_38, -0.950_385_443_661_885_80, 0.311_074_763_482_350_81),
    ];
    for (l, eps, r, v, a, b) in cases {
        let s = QuantumState::scattering(&g, l, eps, YMode::Stable).unwrap();
        let (ca, cb) = s.coefficients().unwrap();
        assert!((ca - a).abs() < 1e-12 && rel(cb, b) < 1e-10, "l={l}");
        assert!((s.value(r).unwrap() - v).abs() < 1e-11 * v.abs().max(1.0), "l={l}");
    }
}

/// ψ″ + ψ′/r + (ε − ν̃²/r²)ψ relative to its largest term, by five-point
/// differences.
fn residual(s: &QuantumState, nu_sq: f64, r: f64) -> f64 {
    let h = 2e-2 * (r / (1.0 + nu_sq.abs().sqrt())).min(1.0 / s.epsilon.abs().sqrt());
    let f = |x: f64| s.value(x).unwrap();
    let (m2, m1, c, p1, p2) = (f(r - 2.0 * h), f(r - h), f(r), f(r + h), f(r + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    let terms = [d2, d1 / r, s.epsilon * c, nu_sq * c / (r * r)];
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    (d2 + d1 / r + (s.epsilon - nu_sq / (r * r)) * c).abs() / scale
}

#[test]
fn radial_equation_residuals() {
    for alpha in [0.2, 0.5, 5.0 / 6.0] {
        let g = ConeGeometry::new(alpha).unwrap();
        let o = g.orders();
        for eps in [1e-4, 0.3, 5.0] {
            let collapse = QuantumState::collapse(&g, eps).unwrap();
            let chans: Vec<_> = [1i64, 4]
                .iter()
                .map(|&l| (QuantumState::scattering(&g, l, eps, YMode::Stable).unwrap(), o.tilde_nu_sq(l)))
                .collect();
            for i in 0..12 {
                let r = 1.1 * 1.4f64.powi(i);
                let res = residual(&collapse, o.tilde_nu_sq(0), r);
                assert!(res < 1e-7, "collapse a={alpha} e={eps} r={r} res={res}");
                for (s, q) in &chans {
                    if s.value(r).unwrap().abs() > 1e-250 {
                        assert!(residual(s, *q, r) < 1e-7, "{:?} a={alpha} e={eps} r={r}", s.kind);
                    }
                }
            }
        }
        let e = bound_spectrum(&g, 1, 1).unwrap().levels[0].exact;
        let b = QuantumState::bound(&g, 1, e).unwrap();
        for r in [1.3, 2.0, 4.0] {
            assert!(residual(&b, o.tilde_nu_sq(0), r) < 1e-7, "bound a={alpha} r={r}");
        }
    }
}

#[test]
fn collapse_state_is_log_periodic_near_zero_energy() {
    let g = ConeGeometry::new(0.5).unwrap();
    let s = QuantumState::collapse(&g, 1e-12).unwrap();
    let period = PI / g.tilde_alpha();
    let mut zeros = Vec::new();
    let (mut u, du) = (0.05f64, 1e-3);
    let mut prev = s.value(u.exp()).unwrap();
    while u < 3.5 * period {
        let next = s.value((u + du).exp()).unwrap();
        if prev.signum() != next.signum() {
            let (mut a, mut b) = (u, u + du);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if s.value(m.exp()).unwrap().signum() == prev.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        prev = next;
        u += du;
    }
    assert!(zeros.len() >= 3);
    for w in zeros.windows(2) {
        assert!(rel(w[1] - w[0], period) < 1e-3);
    }
}

#[test]
fn collapse_state_approaches_zero_energy_form() {
    for alpha in [2.0 / 6.0, 0.5, 5.0 / 6.0] {
        let g = ConeGeometry::new(alpha).unwrap();
        let z = ZpieForm::new(g.tilde_alpha()).unwrap();
        for eps in [1e-12, 3e-11, 7e-10] {
            let s = QuantumState::collapse(&g, eps).unwrap();
            for r in [1.5, 4.0, 17.0] {
                let (v, w) = (s.value(r).unwrap(), z.value(eps, r));
                assert!((v - w).abs() < 1e-6 * w.abs().max(1e-3), "a={alpha} e={eps} r={r}");
            }
        }
    }
}

#[test]
fn scattering_large_energy_form() {
    let g = ConeGeometry::new(5.0 / 6.0).unwrap();
    let eps = 1e6f64;
    let k: f64 = eps.sqrt();
    for l in [1, 2, 5] {
        let s = QuantumState::scattering(&g, l, eps, YMode::Stable).unwrap();
        for r in [1.5, 3.0, 5.0] {
            let env = 2.0 / (PI * k * r);
            let target = env * (k * (1.0 - r)).sin().powi(2);
            assert!((s.value(r).unwrap().powi(2) - target).abs() < 0.02 * env, "l={l} r={r}");
        }
    }
}

#[test]
fn scattering_small_energy_power_law() {
    let g = ConeGeometry::new(5.0 / 6.0).unwrap();
    let eps = 1e-10f64;
    let k: f64 = eps.sqrt();
    for l in [1, 2] {
        let nu = g.orders().tilde_nu(l).unwrap();
        let s = QuantumState::scattering(&g, l, eps, YMode::Stable).unwrap();
        for r in [2.0f64, 5.0, 10.0] {
            let v = s.value(r).unwrap();
            // J_ν(k)(r^ν − r^{−ν}) with J_ν(k) ≈ (k/2)^ν / Γ(ν+1)
            let j = (0.5 * k).powf(nu) * recip_gamma(nu + 1.0);
            let oracle = j * (r.powf(nu) - r.powf(-nu));
            assert!(rel(v.abs(), oracle) < 1e-3, "l={l} r={r}");
            assert!(v * v < 1e-6);
        }
    }
}

#[test]
fn plane_sum_rule() {
    for x in [0.1, 1.0, 3.7, 7.0, 10.0] {
        assert!((plane_reference(1.0, x, 50).unwrap() - 1.0).abs() < 1e-12, "x={x}");
    }
    let p = SeriesPolicy::default();
    assert!(bessel_j(0.0, 0.0, &p).unwrap() == 1.0);
}

#[test]
fn nearly_flat_collapse_state_matches_plane() {
    let g = ConeGeometry::new(0.99).unwrap();
    let s = QuantumState::collapse(&g, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..=190 {
        let r = 1.0 + 0.1 * i as f64;
        worst = worst.max((s.value(r).unwrap() - plane_limit_state(0, 1.0, r).unwrap()).abs());
    }
    assert!(worst < 0.05, "{worst}");
}

#[test]
fn collapse_converges_to_plane_as_alpha_grows() {
    let dev = |alpha: f64| {
        let g = ConeGeometry::new(alpha).unwrap();
        let s = QuantumState::collapse(&g, 1.0).unwrap();
        (0..=40)
            .map(|i| 1.0 + 0.5 * i as f64)
            .map(|r| (s.value(r).unwrap() - plane_limit_state(0, 1.0, r).unwrap()).abs())
            .fold(0.0, f64::max)
    };
    let (a, b, c) = (dev(0.9), dev(0.99), dev(0.9999));
    assert!(a > b && b > c && c < 1e-2, "{a} {b} {c}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn boundary_and_normalization(
        alpha in 0.02f64..0.98,
        log_eps in -12.0f64..2.0,
        l in 0i64..60,
        cutoff in any::<bool>(),
    ) {
        let g = ConeGeometry::new(alpha).unwrap();
        let eps = 10f64.powf(log_eps);
        let mode = if cutoff { YMode::Clipped } else { YMode::Stable };
        let s = if l == 0 {
            QuantumState::collapse(&g, eps).unwrap()
        } else {
            QuantumState::scattering(&g, l, eps, mode).unwrap()
        };
        let (a, b) = s.coefficients().unwrap();
        prop_assert!(s.value(1.0).unwrap().abs() < 1e-12);
        prop_assert!((a * a + b * b - 1.0).abs() < 1e-14);
    }

    #[test]
    fn plane_states_vanish_at_the_wall(l in -30i64..30, log_eps in -8.0f64..2.0) {
        let s = QuantumState::plane(l, 10f64.powf(log_eps)).unwrap();
        prop_assert!(s.value(1.0).unwrap().abs() < 1e-12);
    }
}
