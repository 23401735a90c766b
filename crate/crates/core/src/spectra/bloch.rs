//! Spectra of periodic operators as unions over the Bloch parameter.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::build::build_periodic_tridiagonal;
use super::cloud::{CloudPoint, SpectrumCloud};
use crate::eigen::eigvals;
use crate::error::{Error, Result};
use crate::seqcore::{rotation_classes, SignWord};

pub const DEFAULT_ALPHA_COUNT: usize = 512;
/// Largest period `pi_union` accepts unless told otherwise.
pub const DEFAULT_PI_CEILING: usize = 14;

/// `e^{2πi j/m}`, built from first-octant values by exact reflections so that
/// the grid is closed under conjugation and, for `4 | m`, under `α ↦ iα`.
pub fn unit_root(j: usize, m: usize) -> Complex64 {
    let k = j % m;
    if !m.is_multiple_of(8) {
        // conjugation symmetry still holds exactly
        if 2 * k > m {
            return unit_root(m - k, m).conj();
        }
        return Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
    }
    let quarter = m / 4;
    let (q, r) = (k / quarter, k % quarter);
    let base = if 2 * r == quarter {
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    } else if 2 * r < quarter {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / m as f64)
    } else {
        let t = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (quarter - r) as f64 / m as f64);
        Complex64::new(t.im, t.re)
    };
    match q {
        0 => base,
        1 => Complex64::new(-base.im, base.re),
        2 => -base,
        _ => Complex64::new(base.im, -base.re),
    }
}

/// The grid `α_j = e^{2πij/m}`, `j = 0..m`.
pub fn alpha_grid(m: usize) -> Vec<Complex64> {
    (0..m).map(|j| unit_root(j, m)).collect()
}

/// One eigenvalue of a periodised matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub z: Complex64,
    pub alpha: Complex64,
    pub n: usize,
}

/// Eigenvalues of the periodised tridiagonal matrices over an `α`-grid.
///
/// Periods below 3 are first repeated up to 4; the grid is shrunk by the same
/// factor so that the set of Floquet multipliers covered is unchanged.
pub fn bloch_tridiagonal(diag: &[f64], sub: &[f64], sup: f64, alpha_count: usize) -> Result<Vec<BlochPoint>> {
    let p = diag.len();
    if p == 0 || sub.len() != p {
        return Err(Error::InvalidDimension { n: p, reason: "diagonal and subdiagonal must share a nonzero period" });
    }
    if alpha_count == 0 {
        return Err(Error::Precondition("alpha_count must be at least 1".into()));
    }
    let k = if p < 3 { 4 / p } else { 1 };
    let diag: Vec<f64> = diag.iter().copied().cycle().take(k * p).collect();
    let sub: Vec<f64> = sub.iter().copied().cycle().take(k * p).collect();
    let m = alpha_count.div_ceil(k);
    let per_alpha: Vec<Result<Vec<BlochPoint>>> = alpha_grid(m)
        .into_par_iter()
        .map(|alpha| {
            let mat = build_periodic_tridiagonal(&diag, &sub, sup, alpha)?;
            Ok(eigvals(&mat)?.into_iter().map(|z| BlochPoint { z, alpha, n: k * p }).collect())
        })
        .collect();
    let mut out = Vec::with_capacity(m * k * p);
    for r in per_alpha {
        out.extend(r?);
    }
    Ok(out)
}

/// Bloch points of the hopping-sign operator of `word`.
pub fn bloch_points(word: &SignWord, alpha_count: usize) -> Result<Vec<BlochPoint>> {
    let sub: Vec<f64> = (1..=word.period() as i64).map(|n| word.value(n)).collect();
    bloch_tridiagonal(&vec![0.0; sub.len()], &sub, 1.0, alpha_count)
}

fn to_cloud_points(points: Vec<BlochPoint>, id: &Arc<str>) -> impl Iterator<Item = CloudPoint> + '_ {
    points.into_iter().map(move |p| CloudPoint { z: p.z, n: p.n, word: Arc::clone(id), alpha: p.alpha })
}

/// `Spec(A_c)` of a periodic word, sampled on an `α`-grid of `alpha_count`
/// points.
pub fn bloch_spectrum(word: &SignWord, alpha_count: usize) -> Result<SpectrumCloud> {
    let id: Arc<str> = word.id().into();
    let mut cloud = SpectrumCloud::new(word.sigma())
        .with_param("kind", "bloch")
        .with_param("word", &id)
        .with_param("alpha_count", alpha_count);
    cloud.points.extend(to_cloud_points(bloch_points(word, alpha_count)?, &id));
    Ok(cloud)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiUnionOptions {
    pub ceiling: usize,
    /// Keep one word per rotation class.
    pub dedup: bool,
}

impl Default for PiUnionOptions {
    fn default() -> Self {
        Self { ceiling: DEFAULT_PI_CEILING, dedup: true }
    }
}

/// Word counts for one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodCount {
    pub n: usize,
    /// `2^n` sign vectors.
    pub raw: usize,
    /// Words actually used.
    pub used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiUnion {
    pub cloud: SpectrumCloud,
    pub counts: Vec<PeriodCount>,
}

/// All `2^n` sign words of length `n`, in binary order with `−` as 0.
pub fn all_words(n: usize, sigma: f64) -> Result<Vec<SignWord>> {
    if n == 0 || n > 24 {
        return Err(Error::Precondition(format!("all_words supports 1 <= n <= 24, got {n}")));
    }
    (0u32..(1 << n))
        .map(|mask| SignWord::new((0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 }).collect(), sigma))
        .collect()
}

/// `π_{N,σ}`: the union of the spectra of all words of period at most `n_max`.
pub fn pi_union(n_max: usize, sigma: f64, alpha_count: usize) -> Result<PiUnion> {
    pi_union_with(n_max, sigma, alpha_count, PiUnionOptions::default())
}

pub fn pi_union_with(n_max: usize, sigma: f64, alpha_count: usize, opts: PiUnionOptions) -> Result<PiUnion> {
    if n_max > opts.ceiling {
        return Err(Error::CeilingExceeded { n_max, ceiling: opts.ceiling });
    }
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let mut words = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=n_max {
        let ws = if opts.dedup { rotation_classes(n, sigma)? } else { all_words(n, sigma)? };
        counts.push(PeriodCount { n, raw: 1 << n, used: ws.len() });
        words.extend(ws);
    }
    let parts: Vec<Result<Vec<CloudPoint>>> = words
        .par_iter()
        .map(|w| {
            let id: Arc<str> = w.id().into();
            Ok(to_cloud_points(bloch_points(w, alpha_count)?, &id).collect())
        })
        .collect();
    let mut cloud = SpectrumCloud::new(sigma)
        .with_param("kind", "pi_union")
        .with_param("n_max", n_max)
        .with_param("alpha_count", alpha_count)
        .with_param("rotation_dedup", opts.dedup);
    for c in &counts {
        cloud = cloud.with_param(&format!("words_n{}", c.n), format!("raw {} used {}", c.raw, c.used));
    }
    for part in parts {
        cloud.points.extend(part?);
    }
    cloud.sort_points();
    Ok(PiUnion { cloud, counts })
}
