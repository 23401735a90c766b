//! Transfer matrices of periodic words and everything derived from them.
//!
//! For `c` with period `p` the eigenvalue equation `c_n f_{n-1} + f_{n+1} = λ f_n`
//! is advanced one step by `X_n = [[0, 1], [-c_n, λ]]`, and one period by
//! `T_p = X_p ⋯ X_1`. Its trace `τ(λ)` and determinant `γ = c_1⋯c_p` decide
//! whether `λ` lies on the spectrum (`B`: a root of `z² − τz + γ` on the unit
//! circle), inside it (`I`: both roots inside) or outside (`O`).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::{c_tilde_prefix, check_sigma, Branch, SignWord};

/// Default band on `|Φ − 1|` for membership in `B`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default number of evolution steps in [`decay_check`].
pub const DEFAULT_DECAY_HORIZON: usize = 2048;

/// A complex 2×2 matrix `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transfer2x2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Transfer2x2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a11: o, a12: z, a21: z, a22: o }
    }

    /// The one-step factor `[[0, 1], [-c, λ]]`.
    pub fn step(c: f64, lambda: Complex64) -> Self {
        Self {
            a11: Complex64::new(0.0, 0.0),
            a12: Complex64::new(1.0, 0.0),
            a21: Complex64::new(-c, 0.0),
            a22: lambda,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            a11: self.a11 * rhs.a11 + self.a12 * rhs.a21,
            a12: self.a11 * rhs.a12 + self.a12 * rhs.a22,
            a21: self.a21 * rhs.a11 + self.a22 * rhs.a21,
            a22: self.a21 * rhs.a12 + self.a22 * rhs.a22,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }
}

/// `T_p = X_p ⋯ X_1` for one period of `word` (using `c_1, …, c_p`).
pub fn transfer_matrix(word: &SignWord, lambda: Complex64) -> Transfer2x2 {
    (1..=word.period() as i64).fold(Transfer2x2::identity(), |acc, n| {
        Transfer2x2::step(word.value(n), lambda).mul(&acc)
    })
}

/// Trace and determinant of the period transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceData {
    pub tau: Complex64,
    pub gamma: f64,
    pub p: usize,
}

pub fn trace_det(word: &SignWord, lambda: Complex64) -> TraceData {
    let p = word.period();
    TraceData {
        tau: transfer_matrix(word, lambda).trace(),
        gamma: word.sign_product() as f64 * word.sigma().powi(p as i32),
        p,
    }
}

/// `Φ(τ, γ) = Re(τ)²/(1+γ)² + Im(τ)²/(1−γ)²`, defined for `|γ| < 1`.
pub fn phi(tau: Complex64, gamma: f64) -> Result<f64> {
    if !(gamma.abs() < 1.0) {
        return Err(Error::OutOfDomain(gamma));
    }
    Ok((tau.re / (1.0 + gamma)).powi(2) + (tau.im / (1.0 - gamma)).powi(2))
}

/// Roots of `z² − τz + γ`, larger modulus first.
pub fn quadratic_roots(tau: Complex64, gamma: f64) -> (Complex64, Complex64) {
    let disc = (tau * tau - 4.0 * gamma).sqrt();
    // pick the sign that avoids cancellation
    let q = if (tau.conj() * disc).re >= 0.0 { tau + disc } else { tau - disc };
    let z1 = q / 2.0;
    if z1.norm() == 0.0 {
        return (z1, z1);
    }
    let z2 = gamma / z1;
    if z1.norm() >= z2.norm() {
        (z1, z2)
    } else {
        (z2, z1)
    }
}

/// Position of `λ` relative to the spectrum of a periodic operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Zone {
    /// On the spectrum: a root of unit modulus.
    B,
    /// Both roots inside the unit disc.
    I,
    /// One root outside the unit disc.
    O,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub zone: Zone,
    pub z1_abs: f64,
    pub z2_abs: f64,
    /// `None` when `|γ| = 1`, where `Φ` is undefined.
    pub phi: Option<f64>,
}

/// Classifies `λ` with a tolerance on `|Φ − 1|` (or on `|z1| − 1` when `σ = 1`).
pub fn classify(word: &SignWord, lambda: Complex64, tol: f64) -> Classification {
    let td = trace_det(word, lambda);
    let (z1, z2) = quadratic_roots(td.tau, td.gamma);
    let (z1_abs, z2_abs) = (z1.norm(), z2.norm());
    match phi(td.tau, td.gamma) {
        Ok(f) => {
            let zone = if (f - 1.0).abs() <= tol {
                Zone::B
            } else if f < 1.0 {
                Zone::I
            } else {
                Zone::O
            };
            Classification { zone, z1_abs, z2_abs, phi: Some(f) }
        }
        Err(_) => {
            let zone = if (z1_abs - 1.0).abs() <= tol {
                Zone::B
            } else if z1_abs < 1.0 {
                Zone::I
            } else {
                Zone::O
            };
            Classification { zone, z1_abs, z2_abs, phi: None }
        }
    }
}

/// `ρ_0^±(θ, σ) = (1−σ²)/√(1+σ² ∓ 2σ cos 2θ)`.
fn rho0(branch: Branch, theta: f64, sigma: f64) -> f64 {
    let s = branch.sign() as f64;
    (1.0 - sigma * sigma) / (1.0 + sigma * sigma - s * 2.0 * sigma * (2.0 * theta).cos()).sqrt()
}

/// Polar radius `ρ_n^±(θ, σ)` of the spectral curve of `σ c^{(n,±)}`.
pub fn rho_curve(n: u32, branch: Branch, theta: f64, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    if sigma == 1.0 {
        return Err(Error::DegenerateSigma);
    }
    if n > 30 {
        return Err(Error::Precondition(format!("rho_curve supports n <= 30, got {n}")));
    }
    let k = (1u64 << n) as f64;
    let s = sigma.powf(k);
    Ok(rho0(branch, k * theta, s).powf(1.0 / k))
}

/// `θ`-sampled polyline of the curve `ρ_n^±(θ)e^{iθ}`, closed (first point
/// repeated at the end). Segments longer than `max_seg` are subdivided.
pub fn curve_polyline(
    n: u32,
    branch: Branch,
    sigma: f64,
    samples: usize,
    max_seg: f64,
) -> Result<Vec<Complex64>> {
    let samples = samples.max(8);
    let point = |t: f64| -> Result<Complex64> { Ok(Complex64::from_polar(rho_curve(n, branch, t, sigma)?, t)) };
    let step = 2.0 * PI / samples as f64;
    let mut out = Vec::with_capacity(samples + 1);
    for i in 0..samples {
        let (t0, t1) = (i as f64 * step, (i + 1) as f64 * step);
        let (p0, p1) = (point(t0)?, point(t1)?);
        out.push(p0);
        let pieces = ((p1 - p0).norm() / max_seg).ceil().min(4096.0) as usize;
        for j in 1..pieces {
            out.push(point(t0 + step * j as f64 / pieces as f64)?);
        }
    }
    out.push(out[0]);
    Ok(out)
}

/// `| |λ| − ρ_n^±(arg λ) |`, an upper bound on the distance from `λ` to the
/// curve.
pub fn curve_radial_gap(lambda: Complex64, n: u32, branch: Branch, sigma: f64) -> Result<f64> {
    Ok((lambda.norm() - rho_curve(n, branch, lambda.arg(), sigma)?).abs())
}

/// σ with its derived region constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionParams {
    pub sigma: f64,
    pub annulus_inner: f64,
    pub annulus_outer: f64,
    pub diamond: f64,
    pub r_sigma: f64,
}

impl RegionParams {
    pub fn new(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        let s2 = sigma * sigma;
        Ok(Self {
            sigma,
            annulus_inner: 1.0 - sigma,
            annulus_outer: 1.0 + sigma,
            diamond: (2.0 * (1.0 + s2)).sqrt(),
            r_sigma: (1.0 - s2) / (1.0 + s2).sqrt(),
        })
    }

    /// `ρ_{σ,n} = ((1 − σ^{2^{n+1}})/(1 + σ^{2^n}))^{1/2^n}`.
    pub fn rho_lower(&self, n: u32) -> f64 {
        let k = 2f64.powi(n as i32);
        let s = self.sigma.powf(k);
        ((1.0 - s * s) / (1.0 + s)).powf(1.0 / k)
    }

    /// Polar radius of `∂H_σ` at angle `θ`; zero when `σ = 1`.
    pub fn hole_radius(&self, theta: f64) -> f64 {
        if self.sigma >= 1.0 {
            return 0.0;
        }
        rho0(Branch::Plus, theta, self.sigma).min(rho0(Branch::Minus, theta, self.sigma))
    }

    /// Distance from `λ` to the closed hole `H̄_σ` (zero inside).
    pub fn distance_to_hole(&self, lambda: Complex64) -> f64 {
        if lambda.norm() <= self.hole_radius(lambda.arg()) {
            return 0.0;
        }
        let f = |t: f64| (Complex64::from_polar(self.hole_radius(t), t) - lambda).norm();
        const COARSE: usize = 2048;
        let h = 2.0 * PI / COARSE as f64;
        let (best, _) = (0..COARSE)
            .map(|i| (i, f(i as f64 * h)))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        // golden-section refinement around the best coarse sample
        let (mut a, mut b) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..80 {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = f(x2);
            }
        }
        f1.min(f2).min(f(best as f64 * h))
    }
}

/// Membership of `λ` in the regions attached to `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionFlags {
    pub in_e_plus: bool,
    pub in_e_minus: bool,
    pub in_h: bool,
    pub in_annulus: bool,
    pub in_diamond: bool,
}

/// `Re(λ)²/(1+s)² + Im(λ)²/(1−s)² < 1`; empty for `|s| = 1`.
fn in_ellipse(lambda: Complex64, s: f64) -> bool {
    phi(lambda, s).map(|f| f < 1.0).unwrap_or(false)
}

pub fn region_tests(lambda: Complex64, params: &RegionParams) -> RegionFlags {
    let s = params.sigma;
    let in_e_plus = in_ellipse(lambda, s);
    let in_e_minus = in_ellipse(lambda, -s);
    let r = lambda.norm();
    RegionFlags {
        in_e_plus,
        in_e_minus,
        in_h: in_e_plus && in_e_minus,
        in_annulus: r >= params.annulus_inner && r <= params.annulus_outer,
        in_diamond: lambda.re.abs() + lambda.im.abs() <= params.diamond,
    }
}

/// Whether `λ ∈ closure(I_c) \ E_{±σ}`, which places `λ` in the spectrum of
/// the operator that follows `c` on one half-line and the constant `±σ` on
/// the other.
pub fn paired_member(word_c: &SignWord, tail: Branch, lambda: Complex64) -> bool {
    let inside = matches!(classify(word_c, lambda, DEFAULT_TOL).zone, Zone::B | Zone::I);
    let flags = region_tests(lambda, &RegionParams::new(word_c.sigma()).expect("word sigma is valid"));
    let in_tail = match tail {
        Branch::Plus => flags.in_e_plus,
        Branch::Minus => flags.in_e_minus,
    };
    inside && !in_tail
}

/// Growth rates of the two fundamental solutions of
/// `ξ_{n+1} = λ ξ_n − σ c̃_n ξ_{n−1}` with `c̃` repeated with period `2^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    /// Rate of the solution started from `(ξ_0, ξ_1) = (0, 1)`.
    pub rate_u: f64,
    /// Rate of the solution started from `(ξ_0, ξ_1) = (1, 0)`.
    pub rate_v: f64,
    /// `max(rate_u, rate_v)`.
    pub rate: f64,
    pub decays: bool,
    pub horizon: usize,
}

/// Smallest `d` with `√σ < 4^{−1/2^d}`, i.e. `σ^{2^d} < 1/16`.
pub fn required_decay_depth(sigma: f64) -> Result<u32> {
    check_sigma(sigma)?;
    (1..=30)
        .find(|&d| decay_sigma_ok(sigma, d))
        .ok_or_else(|| Error::Precondition(format!("no depth d <= 30 works for sigma = {sigma}")))
}

fn decay_sigma_ok(sigma: f64, d: u32) -> bool {
    let m = 1i32 << d;
    sigma.powi(m) < 1.0 / 16.0
}

/// Checks the preconditions and runs [`decay_rates`] with the default horizon.
pub fn decay_check(lambda: Complex64, sigma: f64, d: u32) -> Result<DecayReport> {
    check_sigma(sigma)?;
    if d == 0 || d > 30 {
        return Err(Error::Precondition(format!("decay depth must satisfy 1 <= d <= 30, got {d}")));
    }
    let required_d = required_decay_depth(sigma)?;
    if !decay_sigma_ok(sigma, d) {
        return Err(Error::DecayPrecondition {
            reason: format!("sqrt(sigma) must be below 4^(-1/2^{d})"),
            required_d,
        });
    }
    let h = 4f64.powf(-1.0 / (1u64 << d) as f64);
    if !(lambda.norm() < h) {
        return Err(Error::DecayPrecondition {
            reason: format!("|lambda| = {} must be below {h}", lambda.norm()),
            required_d,
        });
    }
    Ok(decay_rates(lambda, sigma, d, DEFAULT_DECAY_HORIZON))
}

/// Empirical rates `max(|ξ_r|, |ξ_{r+1}|)^{1/r}` at `r = horizon`, without
/// precondition checks.
pub fn decay_rates(lambda: Complex64, sigma: f64, d: u32, horizon: usize) -> DecayReport {
    let m = 1usize << d.min(30);
    let coeffs: Vec<f64> = c_tilde_prefix(m).iter().map(|&s| sigma * s as f64).collect();
    let rate_of = |start: [Complex64; 2]| -> f64 {
        let [mut prev, mut cur] = start;
        let mut log_scale = 0.0f64;
        for n in 1..=horizon {
            let next = lambda * cur - coeffs[(n - 1) % m] * prev;
            prev = cur;
            cur = next;
            let size = prev.norm().max(cur.norm());
            if size > 1e100 || (size < 1e-100 && size > 0.0) {
                log_scale += size.ln();
                prev /= size;
                cur /= size;
            }
        }
        // the state now holds (ξ_r, ξ_{r+1})
        ((log_scale + prev.norm().max(cur.norm()).ln()) / horizon.max(1) as f64).exp()
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let rate_u = rate_of([zero, one]);
    let rate_v = rate_of([one, zero]);
    let rate = rate_u.max(rate_v);
    DecayReport { rate_u, rate_v, rate, decays: rate < 1.0, horizon }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_step_matrix() {
        let w = SignWord::parse("+", 0.5).unwrap();
        let t = transfer_matrix(&w, c(0.3, 0.2));
        assert_eq!(t, Transfer2x2::step(0.5, c(0.3, 0.2)));
        assert_eq!(t.det(), c(0.5, 0.0));
    }

    #[test]
    fn two_step_matrix() {
        let s = 0.5;
        let l = c(0.7, -0.4);
        // c_0 = c_2 = σ, c_1 = −σ
        let w = SignWord::new(vec![1, -1], s).unwrap();
        let t = transfer_matrix(&w, l);
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-15;
        assert!(close(t.a11, c(s, 0.0)));
        assert!(close(t.a12, l));
        assert!(close(t.a21, s * l));
        assert!(close(t.a22, l * l - s));
        let td = trace_det(&w, l);
        assert!(close(td.tau, l * l));
        assert_eq!(td.gamma, -0.25);
    }

    #[test]
    fn trace_det_constant_words() {
        let l = c(1.1, 0.3);
        let plus = trace_det(&SignWord::parse("+", 0.5).unwrap(), l);
        assert_eq!((plus.tau, plus.gamma), (l, 0.5));
        let minus = trace_det(&SignWord::parse("-", 0.5).unwrap(), l);
        assert_eq!((minus.tau, minus.gamma), (l, -0.5));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(c(0.0, 0.0), 0.3).unwrap(), 0.0);
        assert!((phi(c(1.5, 0.0), 0.5).unwrap() - 1.0).abs() < 1e-15);
        for g in [-0.7, -0.1, 0.2, 0.9] {
            assert!((phi(c(1.0 + g, 0.0), g).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(matches!(phi(c(1.0, 0.0), 1.0), Err(Error::OutOfDomain(_))));
        assert!(phi(c(1.0, 0.0), -1.2).is_err());
    }

    #[test]
    fn classify_examples() {
        let w = SignWord::parse("+", 0.5).unwrap();
        assert_eq!(classify(&w, c(0.0, 0.0), DEFAULT_TOL).zone, Zone::I);
        assert_eq!(classify(&w, c(3.0, 0.0), DEFAULT_TOL).zone, Zone::O);
        let b = classify(&w, c(1.5, 0.0), DEFAULT_TOL);
        assert_eq!(b.zone, Zone::B);
        assert!((b.z1_abs - 1.0).abs() < 1e-12);
        assert!((b.z2_abs - 0.5).abs() < 1e-12);
    }

    #[test]
    fn classify_at_unit_sigma_uses_roots() {
        let w = SignWord::parse("+", 1.0).unwrap();
        let on = classify(&w, c(1.0, 0.0), DEFAULT_TOL);
        assert_eq!(on.zone, Zone::B);
        assert!(on.phi.is_none());
        assert_eq!(classify(&w, c(0.0, 0.5), DEFAULT_TOL).zone, Zone::O);
    }

    #[test]
    fn rho_examples() {
        let s = 0.5;
        assert!((rho_curve(0, Branch::Plus, 0.0, s).unwrap() - 1.5).abs() < 1e-15);
        assert!((rho_curve(0, Branch::Plus, PI / 2.0, s).unwrap() - 0.5).abs() < 1e-15);
        for n in 0..=3 {
            for k in 0..50 {
                let t = k as f64 * 0.13;
                let a = rho_curve(n, Branch::Minus, t, s).unwrap();
                let b = rho_curve(n, Branch::Plus, t + PI / 2f64.powi(n as i32 + 1), s).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert!(matches!(rho_curve(1, Branch::Plus, 0.0, 1.0), Err(Error::DegenerateSigma)));
    }

    #[test]
    fn region_examples() {
        let p = RegionParams::new(0.5).unwrap();
        let f = region_tests(c(0.0, 0.0), &p);
        assert!(f.in_h && !f.in_annulus);
        let f = region_tests(c(0.5, 0.0), &p);
        assert!(!f.in_e_minus && f.in_annulus);
        assert!((p.r_sigma - 0.670_820_393_249_936_9).abs() < 1e-12);
        assert!((p.hole_radius(PI / 4.0) - p.r_sigma).abs() < 1e-12);
        let unit = RegionParams::new(1.0).unwrap();
        assert!(!region_tests(c(0.0, 0.0), &unit).in_h);
    }

    #[test]
    fn hole_distance() {
        let p = RegionParams::new(0.5).unwrap();
        assert_eq!(p.distance_to_hole(c(0.1, 0.1)), 0.0);
        // along the real axis the hole ends at 1 − σ
        assert!((p.distance_to_hole(c(0.9, 0.0)) - 0.4).abs() < 1e-9);
        assert!((p.distance_to_hole(c(0.0, -0.8)) - 0.3).abs() < 1e-9);
    }

    #[test]
    fn paired_member_examples() {
        let w = SignWord::parse("+", 0.5).unwrap();
        assert!(paired_member(&w, Branch::Minus, c(0.6, 0.0)));
        assert!(!paired_member(&w, Branch::Minus, c(0.0, 0.0)));
    }

    #[test]
    fn decay_examples() {
        assert_eq!(required_decay_depth(0.5).unwrap(), 3);
        let r = decay_check(c(0.5, 0.0), 0.5, 3).unwrap();
        assert!(r.decays, "{r:?}");
        let r = decay_check(c(0.0, 0.0), 0.5, 3).unwrap();
        assert!(r.decays && r.rate <= 0.5f64.sqrt() + 1e-9, "{r:?}");
        assert!(matches!(
            decay_check(c(0.0, 0.0), 0.5, 2),
            Err(Error::DecayPrecondition { required_d: 3, .. })
        ));
        assert!(decay_check(c(0.9, 0.0), 0.5, 3).is_err());
    }

    #[test]
    fn polyline_is_closed_and_fine() {
        let pts = curve_polyline(2, Branch::Plus, 0.9025, 720, 0.01).unwrap();
        assert_eq!(pts.first(), pts.last());
        let longest = pts.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max);
        assert!(longest <= 0.02, "{longest}");
    }
}
