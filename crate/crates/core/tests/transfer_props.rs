use std::f64::consts::PI;

use hopspec::seqcore::{c_iterate_word, Branch, SignWord};
use hopspec::transfer::*;
use hopspec::Complex64;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { 1i8 } else { -1 }), 1..=max_len)
}

fn lambda(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r_max, 0.0..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #[test]
    fn root_product_is_sigma_power(s in word(16), sigma in 0.05f64..=1.0, l in lambda(3.0)) {
        let w = SignWord::new(s, sigma).unwrap();
        let td = trace_det(&w, l);
        let (z1, z2) = quadratic_roots(td.tau, td.gamma);
        let expected = sigma.powi(w.period() as i32);
        prop_assert!((z1.norm() * z2.norm() - expected).abs() <= 1e-12 * expected.max(1e-300) + 1e-300);
        prop_assert!(z1.norm() >= z2.norm());
    }

    #[test]
    fn determinant_of_transfer_matrix(s in word(12), sigma in 0.1f64..=1.0, l in lambda(2.0)) {
        let w = SignWord::new(s, sigma).unwrap();
        let t = transfer_matrix(&w, l);
        let td = trace_det(&w, l);
        prop_assert!((t.det().re - td.gamma).abs() <= 1e-10 * (1.0 + l.norm()).powi(2 * w.period() as i32));
    }

    #[test]
    fn region_sandwich(sigma in 0.05f64..0.99, l in lambda(2.0)) {
        let p = RegionParams::new(sigma).unwrap();
        let f = region_tests(l, &p);
        if l.norm() < 1.0 - sigma - 1e-12 {
            prop_assert!(f.in_h);
        }
        if f.in_h {
            prop_assert!(l.norm() <= p.r_sigma + 1e-12);
        }
        prop_assert_eq!(f.in_h, f.in_e_plus && f.in_e_minus);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn phi_decision_matches_roots(s in word(8), sigma in 0.1f64..0.95, l in lambda(2.5)) {
        let w = SignWord::new(s, sigma).unwrap();
        let c = classify(&w, l, DEFAULT_TOL);
        let phi = c.phi.unwrap();
        // away from the boundary band both tests must agree
        prop_assume!((phi - 1.0).abs() > 1e-6 && (c.z1_abs - 1.0).abs() > 1e-6);
        let by_roots = if c.z1_abs < 1.0 { Zone::I } else { Zone::O };
        prop_assert_eq!(c.zone, by_roots);
    }
}

#[test]
fn phi_and_roots_agree_on_the_boundary() {
    // points built on B: λ with a root z of unit modulus solve τ = z + γ/z
    for p in 1..=6 {
        for k in 0..40 {
            let w = SignWord::new((0..p).map(|i| if (k >> i) & 1 == 1 { 1 } else { -1 }).collect(), 0.6).unwrap();
            let g = w.sign_product() as f64 * 0.6f64.powi(p);
            let z = Complex64::from_polar(1.0, 0.37 * k as f64);
            let tau = z + g / z;
            assert!((phi(tau, g).unwrap() - 1.0).abs() < 1e-12);
            let (z1, _) = quadratic_roots(tau, g);
            assert!((z1.norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn closed_form_curves_lie_on_the_spectrum() {
    for sigma in [0.5, 0.9025] {
        for n in 0..=3 {
            for branch in [Branch::Plus, Branch::Minus] {
                let w = c_iterate_word(n, branch, sigma).unwrap();
                for j in 0..720 {
                    let t = 2.0 * PI * j as f64 / 720.0;
                    let l = Complex64::from_polar(rho_curve(n, branch, t, sigma).unwrap(), t);
                    let c = classify(&w, l, DEFAULT_TOL);
                    assert_eq!(c.zone, Zone::B, "n = {n} {branch} σ = {sigma} θ = {t}: {c:?}");
                }
            }
        }
    }
}

#[test]
fn lower_radius_nests_under_every_curve() {
    for sigma in [0.3, 0.5, 0.9025] {
        let p = RegionParams::new(sigma).unwrap();
        for n in 0..=4 {
            for branch in [Branch::Plus, Branch::Minus] {
                let min = (0..4000)
                    .map(|j| rho_curve(n, branch, 2.0 * PI * j as f64 / 4000.0, sigma).unwrap())
                    .fold(f64::INFINITY, f64::min);
                assert!(p.rho_lower(n) <= min + 1e-12, "n = {n}: {} > {min}", p.rho_lower(n));
            }
        }
    }
}

#[test]
fn hole_boundary_on_the_diagonal() {
    // bisection on the two ellipse equations along the ray at π/4
    let sigma = 0.5;
    let p = RegionParams::new(sigma).unwrap();
    let dir = Complex64::from_polar(1.0, PI / 4.0);
    let inside = |r: f64| region_tests(dir * r, &p).in_h;
    let (mut a, mut b) = (0.0, 2.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if inside(m) {
            a = m;
        } else {
            b = m;
        }
    }
    assert!((a - 0.75 / 1.25f64.sqrt()).abs() < 1e-12);
    assert!((a - p.r_sigma).abs() < 1e-12);
}

#[test]
fn decay_on_the_disc_grid() {
    for k in 1..=10 {
        for j in 0..10 {
            let l = Complex64::from_polar(0.08 * k as f64, 2.0 * PI * j as f64 / 10.0 + 0.1);
            let r = decay_check(l, 0.5, 3).unwrap();
            assert!(r.rate_u < 1.0 && r.rate_v < 1.0, "{l}: {r:?}");
        }
    }
    let out = decay_rates(Complex64::new(1.2, 0.0), 0.5, 3, DEFAULT_DECAY_HORIZON);
    assert!(out.rate > 1.0);
}
