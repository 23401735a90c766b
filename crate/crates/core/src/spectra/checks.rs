//! Cross-checks between independently computed spectra.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bloch::{bloch_points, bloch_tridiagonal};
use super::build::build_periodic;
use super::cloud::SpectrumCloud;
use super::geometry::{directed_distance, hausdorff, polyline_distance, star_distance, PointIndex};
use crate::eigen::eigvals;
use crate::error::{Error, Result};
use crate::seqcore::{c_iterate_word, c_tilde_prefix, gamma_plus_word, m_word, Branch, SignWord};
use crate::transfer::{curve_polyline, curve_radial_gap, quadratic_roots, trace_det};

/// Hausdorff distances behind `Spec(A_c)² = Spec(A_b) = Spec(M_b)` for
/// `c = Γ_{σ,+}(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareReport {
    /// `{λ² : λ ∈ Spec(A_c)}` against `Spec(A_b)`.
    pub squares_vs_b: f64,
    /// `Spec(M_b)` against `Spec(A_b)`.
    pub mb_vs_b: f64,
    pub points_b: usize,
    pub points_c: usize,
    pub points_mb: usize,
}

impl SquareReport {
    pub fn max(&self) -> f64 {
        self.squares_vs_b.max(self.mb_vs_b)
    }
}

/// Compares `Spec(A_b)` on an `α`-grid of size `2⌈alpha_count/2⌉` with the
/// squared spectrum of `A_c` and the spectrum of `M_b` on the half-size grid.
/// The period-`4N` word `c` is used unreduced, which makes the Floquet
/// multipliers covered on both sides coincide.
pub fn square_spectrum_check(b: &SignWord, sigma: f64, alpha_count: usize) -> Result<SquareReport> {
    if b.period() > 8 {
        return Err(Error::Precondition(format!("square_spectrum_check supports periods <= 8, got {}", b.period())));
    }
    let half = alpha_count.div_ceil(2).max(1);
    let h2: Vec<Complex64> = bloch_points(b, 2 * half)?.into_iter().map(|p| p.z).collect();
    let c = gamma_plus_word(b, sigma)?.unreduced;
    let h1: Vec<Complex64> = bloch_points(&c, half)?.into_iter().map(|p| p.z * p.z).collect();
    let mb = m_word(b, sigma)?;
    let sub = vec![mb.sub; mb.period()];
    let hm: Vec<Complex64> = bloch_tridiagonal(&mb.diag, &sub, mb.sup, half)?.into_iter().map(|p| p.z).collect();
    Ok(SquareReport {
        squares_vs_b: hausdorff(&h1, &h2),
        mb_vs_b: hausdorff(&hm, &h2),
        points_b: h2.len(),
        points_c: h1.len(),
        points_mb: hm.len(),
    })
}

/// Growth of the `c̃` recurrence solution `u` for `|λ| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UeReport {
    pub max_abs: f64,
    /// `(1 − |λ|)^{−1}`.
    pub bound: f64,
    pub passed: bool,
}

/// Iterates `u_{n+1} = λu_n − c̃_n u_{n−1}` from `(0, 1)` up to `i_max` and
/// compares `max |u_i|` with `(1 − |λ|)^{−1}`.
pub fn ue_bound_check(lambda: Complex64, i_max: usize) -> Result<UeReport> {
    if !(lambda.norm() <= 0.99) {
        return Err(Error::Precondition(format!("ue_bound_check needs |lambda| <= 0.99, got {}", lambda.norm())));
    }
    if i_max == 0 || i_max > 1_000_000 {
        return Err(Error::Precondition(format!("ue_bound_check needs 1 <= i_max <= 1e6, got {i_max}")));
    }
    let ct = c_tilde_prefix(i_max);
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let mut max_abs: f64 = 1.0;
    for &c in ct.iter().take(i_max - 1) {
        let next = lambda * cur - c as f64 * prev;
        prev = cur;
        cur = next;
        max_abs = max_abs.max(cur.norm());
    }
    let bound = 1.0 / (1.0 - lambda.norm());
    Ok(UeReport { max_abs, bound, passed: max_abs <= bound + 1e-9 })
}

/// Largest nearest-neighbour distance from the transformed cloud back to the
/// cloud, for three symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub conjugation: f64,
    pub rotation_i: f64,
    pub negation: f64,
}

impl SymmetryReport {
    /// Closure under `λ ↦ λ̄` and `λ ↦ iλ`, the symmetries of `π_{N,σ}`.
    pub fn dihedral_within(&self, tol: f64) -> bool {
        self.conjugation <= tol && self.rotation_i <= tol
    }
}

pub fn symmetry_check(cloud: &SpectrumCloud) -> SymmetryReport {
    let pts = cloud.values();
    let idx = PointIndex::new(&pts);
    let mapped = |f: fn(Complex64) -> Complex64| -> f64 {
        let t: Vec<Complex64> = pts.iter().map(|&z| f(z)).collect();
        directed_distance(&t, &idx)
    };
    SymmetryReport {
        conjugation: mapped(|z| z.conj()),
        rotation_i: mapped(|z| Complex64::new(-z.im, z.re)),
        negation: mapped(|z| -z),
    }
}

/// Distances between a numerically computed spectrum of `σ c^{(n,±)}` and
/// its closed-form curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    /// Largest radial gap `| |λ| − ρ_n(arg λ) |` over the cloud, an upper
    /// bound for the distance of every computed point to the curve.
    pub cloud_to_curve: f64,
    /// Largest distance from a curve vertex to the nearest cloud point; this
    /// shrinks with the `α`-grid spacing.
    pub curve_to_cloud: f64,
    pub points: usize,
}

/// Compares `bloch_spectrum(c^{(n,±)})` with the polar curve `ρ_n^±`.
pub fn curve_check(n: u32, branch: Branch, sigma: f64, alpha_count: usize) -> Result<CurveReport> {
    let word = c_iterate_word(n, branch, sigma)?;
    let cloud: Vec<Complex64> = bloch_points(&word, alpha_count)?.into_iter().map(|p| p.z).collect();
    let mut cloud_to_curve: f64 = 0.0;
    for &z in &cloud {
        cloud_to_curve = cloud_to_curve.max(curve_radial_gap(z, n, branch, sigma)?);
    }
    let curve = curve_polyline(n, branch, sigma, 720, 0.01)?;
    let curve_to_cloud = directed_distance(&curve, &PointIndex::new(&cloud));
    Ok(CurveReport { cloud_to_curve, curve_to_cloud, points: cloud.len() })
}

/// Distance from a computed cloud to a reference polyline.
pub fn cloud_to_polyline(cloud: &[Complex64], line: &[Complex64]) -> f64 {
    cloud.iter().map(|&z| polyline_distance(z, line)).fold(0.0, f64::max)
}

/// `Spec(A_{c^{(m,±)}})` at `σ = 1`: a star of `2^{m+1}` segments of length
/// `2^{1/2^m}`, rotated by `π/2^{m+1}` for the minus branch.
pub fn unit_star_distance(lambda: Complex64, m: u32, branch: Branch) -> f64 {
    let rays = 1usize << (m + 1);
    let radius = 2f64.powf(1.0 / (1u64 << m) as f64);
    let phase = match branch {
        Branch::Plus => 0.0,
        Branch::Minus => std::f64::consts::PI / (1u64 << (m + 1)) as f64,
    };
    star_distance(lambda, rays, radius, phase)
}

/// The closed-form `Spec(A_{c^{(n,±)}})` as polylines: the curve `ρ_n^±`
/// for `σ < 1`, the star segments `[0, tip]` at `σ = 1`.
pub fn closed_form_spectrum(n: u32, branch: Branch, sigma: f64, samples: usize) -> Result<Vec<Vec<Complex64>>> {
    if sigma != 1.0 {
        return Ok(vec![curve_polyline(n, branch, sigma, samples, 0.01)?]);
    }
    if n > 20 {
        return Err(Error::Precondition(format!("closed_form_spectrum supports n <= 20, got {n}")));
    }
    let rays = 1usize << (n + 1);
    let radius = 2f64.powf(1.0 / (1u64 << n) as f64);
    let phase = match branch {
        Branch::Plus => 0.0,
        Branch::Minus => std::f64::consts::PI / (1u64 << (n + 1)) as f64,
    };
    Ok((0..rays)
        .map(|j| {
            let tip = Complex64::from_polar(radius, phase + 2.0 * std::f64::consts::PI * j as f64 / rays as f64);
            vec![Complex64::new(0.0, 0.0), tip]
        })
        .collect())
}

/// Distance from `λ` to the eigenvalues of the periodised matrix at the
/// `α` that puts `λ` into the Bloch spectrum of `word` (found from the
/// Floquet multipliers of the transfer matrix).
pub fn floquet_witness_distance(word: &SignWord, lambda: Complex64) -> Result<f64> {
    let reps = 3usize.div_ceil(word.period()).max(if word.period() < 3 { 4 / word.period() } else { 1 });
    let w = word.repeat(reps);
    let td = trace_det(&w, lambda);
    let (z1, z2) = quadratic_roots(td.tau, td.gamma);
    let c: Vec<f64> = (1..=w.period() as i64).map(|n| w.value(n)).collect();
    let mut best = f64::INFINITY;
    for z in [z1, z2] {
        if z.norm() == 0.0 {
            continue;
        }
        let unit = z / z.norm();
        for alpha in [unit, unit.conj()] {
            let e = eigvals(&build_periodic(&c, alpha)?)?;
            best = best.min(e.iter().map(|x| (x - lambda).norm()).fold(f64::INFINITY, f64::min));
        }
    }
    Ok(best)
}

/// Worst-case distances for the `σ = 1` denseness grid at level `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensenessReport {
    pub m: u32,
    pub points: usize,
    /// Largest distance to the closed-form star.
    pub closed_form: f64,
    /// Largest distance to an eigenvalue of a witnessing periodised matrix.
    pub numeric: f64,
}

/// Checks the points `r e^{iπj/2^m}`, `r ∈ {2^{1/2^m}/2, 2^{1/2^m}}`,
/// `j = 0..2^{m+2}`, against `Spec(A_{c^{(m,+)}})` at `σ = 1`.
pub fn denseness_check(m: u32) -> Result<DensenessReport> {
    if m > 4 {
        return Err(Error::Precondition(format!("denseness_check supports m <= 4, got {m}")));
    }
    let word = c_iterate_word(m, Branch::Plus, 1.0)?;
    let top = 2f64.powf(1.0 / (1u64 << m) as f64);
    let count = 1usize << (m + 2);
    let mut rep = DensenessReport { m, points: 0, closed_form: 0.0, numeric: 0.0 };
    for r in [top / 2.0, top] {
        for j in 0..count {
            let lambda = Complex64::from_polar(r, std::f64::consts::PI * j as f64 / (1u64 << m) as f64);
            rep.closed_form = rep.closed_form.max(unit_star_distance(lambda, m, Branch::Plus));
            rep.numeric = rep.numeric.max(floquet_witness_distance(&word, lambda)?);
            rep.points += 1;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ue_examples() {
        let r = ue_bound_check(Complex64::new(0.5, 0.0), 10_000).unwrap();
        assert!(r.passed && r.max_abs <= 2.0);
        let r = ue_bound_check(Complex64::new(0.0, 0.0), 1000).unwrap();
        assert_eq!(r.max_abs, 1.0);
        let r = ue_bound_check(Complex64::from_polar(0.9, std::f64::consts::PI / 3.0), 10_000).unwrap();
        assert!(r.passed && r.max_abs <= 10.0);
        assert!(ue_bound_check(Complex64::new(0.995, 0.0), 10).is_err());
    }

    #[test]
    fn square_check_constant_words() {
        let b = SignWord::parse("-", 0.25).unwrap();
        let r = square_spectrum_check(&b, 0.5, 512).unwrap();
        assert!(r.max() < 1e-6, "{r:?}");
        let b = SignWord::parse("+", 1.0).unwrap();
        let r = square_spectrum_check(&b, 1.0, 128).unwrap();
        assert!(r.max() < 1e-6, "{r:?}");
    }

    #[test]
    fn star_geometry() {
        assert!(unit_star_distance(Complex64::new(0.0, 1.4), 1, Branch::Plus) < 1e-15);
        let d = unit_star_distance(Complex64::new(0.0, 1.4), 1, Branch::Minus);
        assert!(d > 0.5);
    }

    #[test]
    fn denseness_level_one() {
        let r = denseness_check(1).unwrap();
        assert_eq!(r.points, 16);
        assert!(r.closed_form < 1e-12 && r.numeric < 1e-6, "{r:?}");
    }

    #[test]
    fn closed_form_at_unit_sigma_is_a_star() {
        let cross = closed_form_spectrum(1, Branch::Plus, 1.0, 720).unwrap();
        assert_eq!(cross.len(), 4);
        let r = 2f64.sqrt();
        assert!(cross.iter().all(|seg| (seg[1].norm() - r).abs() < 1e-15));
        assert!(cross.iter().any(|seg| (seg[1] - Complex64::new(0.0, r)).norm() < 1e-12));
        let ellipse = closed_form_spectrum(0, Branch::Plus, 0.5, 720).unwrap();
        assert_eq!(ellipse.len(), 1);
    }

    #[test]
    fn curve_check_ellipse() {
        let r = curve_check(0, Branch::Plus, 0.5, 256).unwrap();
        assert!(r.cloud_to_curve < 1e-9 && r.curve_to_cloud < 0.05, "{r:?}");
    }
}
