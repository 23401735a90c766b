//! Seeded random ensembles of periodised and finite matrices.
//!
//! Every sample owns its own ChaCha stream (`seed`, stream = sample index),
//! so results do not depend on how samples are spread over threads.

use std::sync::Arc;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::build::{build_finite, build_periodic};
use super::cloud::{CloudPoint, SpectrumCloud};
use crate::eigen::eigvals;
use crate::error::{Error, Result};
use crate::seqcore::check_sigma;

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("p_sigma must lie in (0, 1), got {p}")))
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw_signs(rng: &mut ChaCha8Rng, n: usize, p_sigma: f64, sigma: f64) -> Vec<f64> {
    (0..n).map(|_| if rng.gen_bool(p_sigma) { sigma } else { -sigma }).collect()
}

fn draw_alpha(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.gen::<f64>())
}

/// Parameters of [`random_periodic_sample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicSampleConfig {
    pub count: usize,
    /// Periods are drawn from `1..=n_max` with weight `1/N`.
    pub n_max: usize,
    /// Probability of `+σ`.
    pub p_sigma: f64,
    pub sigma: f64,
    pub seed: u64,
}

/// Eigenvalues of `count` random periodised matrices `A^{(N,per)}_{c,α}`.
///
/// Periods 1 and 2 are repeated up to length 3 or 4 before the matrix is
/// built, since the corner entries would otherwise overlap the band.
pub fn random_periodic_sample(cfg: &PeriodicSampleConfig) -> Result<SpectrumCloud> {
    check_sigma(cfg.sigma)?;
    check_probability(cfg.p_sigma)?;
    if cfg.n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let weights: Vec<f64> = (1..=cfg.n_max).map(|n| 1.0 / n as f64).collect();
    let law = WeightedIndex::new(&weights).map_err(|e| Error::Precondition(e.to_string()))?;
    let parts: Vec<Result<Vec<CloudPoint>>> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, i as u64);
            let n = law.sample(&mut rng) + 1;
            let c = draw_signs(&mut rng, n, cfg.p_sigma, cfg.sigma);
            let alpha = draw_alpha(&mut rng);
            let reps = 3usize.div_ceil(n);
            let c: Vec<f64> = c.iter().copied().cycle().take(reps * n).collect();
            let id: Arc<str> = format!("s{i}").into();
            let z = eigvals(&build_periodic(&c, alpha)?)?;
            Ok(z.into_iter().map(|z| CloudPoint { z, n: c.len(), word: Arc::clone(&id), alpha }).collect())
        })
        .collect();
    let mut cloud = SpectrumCloud::new(cfg.sigma)
        .with_param("kind", "random_periodic")
        .with_param("count", cfg.count)
        .with_param("n_range", format!("1..={}", cfg.n_max))
        .with_param("n_law", "P(N) proportional to 1/N")
        .with_param("p_sigma", cfg.p_sigma)
        .with_param("alpha_law", "uniform on the unit circle");
    cloud.seed = Some(cfg.seed);
    for part in parts {
        cloud.points.extend(part?);
    }
    Ok(cloud)
}

/// Parameters of [`random_finite_sample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteSampleConfig {
    pub n: usize,
    pub p_sigma: f64,
    pub sigma: f64,
    pub seed: u64,
    /// Corner parameter of the periodised matrix.
    pub alpha: Complex64,
}

/// The open and periodised spectra of one random `c ∈ {±σ}^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePair {
    pub c: Vec<f64>,
    pub open: SpectrumCloud,
    pub periodic: SpectrumCloud,
}

/// Draws `c_1..c_N` once and returns both `Spec(A^{(N)}_c)` (which uses
/// `c_1..c_{N−1}`) and `Spec(A^{(N,per)}_{c,α})`.
pub fn random_finite_pair(cfg: &FiniteSampleConfig) -> Result<FinitePair> {
    check_sigma(cfg.sigma)?;
    check_probability(cfg.p_sigma)?;
    if cfg.n < 3 {
        return Err(Error::InvalidDimension { n: cfg.n, reason: "random finite samples need N >= 3" });
    }
    let mut rng = rng_for(cfg.seed, 0);
    let c = draw_signs(&mut rng, cfg.n, cfg.p_sigma, cfg.sigma);
    let id: Arc<str> = "f0".into();
    let tag = |z: Vec<Complex64>, alpha: Complex64| -> Vec<CloudPoint> {
        z.into_iter().map(|z| CloudPoint { z, n: cfg.n, word: Arc::clone(&id), alpha }).collect()
    };
    let base = |kind: &str| {
        let mut cl = SpectrumCloud::new(cfg.sigma)
            .with_param("kind", kind)
            .with_param("n", cfg.n)
            .with_param("p_sigma", cfg.p_sigma);
        cl.seed = Some(cfg.seed);
        cl
    };
    let mut open = base("random_finite_open");
    open.points = tag(eigvals(&build_finite(&c[..cfg.n - 1])?)?, Complex64::new(0.0, 0.0));
    let mut periodic = base("random_finite_periodic").with_param("alpha", cfg.alpha);
    periodic.points = tag(eigvals(&build_periodic(&c, cfg.alpha)?)?, cfg.alpha);
    Ok(FinitePair { c, open, periodic })
}

/// One of the two clouds of [`random_finite_pair`].
pub fn random_finite_sample(cfg: &FiniteSampleConfig, periodic: bool) -> Result<SpectrumCloud> {
    let pair = random_finite_pair(cfg)?;
    Ok(if periodic { pair.periodic } else { pair.open })
}
