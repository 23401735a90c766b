//! Tagged point clouds and their CSV form.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::sync::Arc;

use num_complex::Complex64;

use crate::transfer::{phi, RegionParams};

/// One computed eigenvalue with the data that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CloudPoint {
    pub z: Complex64,
    /// Matrix size.
    pub n: usize,
    /// Sign pattern such as `"+--+"`, or a sample tag such as `"s17"`.
    pub word: Arc<str>,
    pub alpha: Complex64,
}

/// A set of eigenvalues plus the parameters that generated it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumCloud {
    pub sigma: f64,
    pub seed: Option<u64>,
    /// Free-form generation parameters, written as CSV header lines.
    pub params: Vec<(String, String)>,
    pub points: Vec<CloudPoint>,
}

/// Violations of the annulus and diamond inclusions.
/// How a cloud sits relative to the hole `H_σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoleReport {
    /// Points with `in_h` true under exact strict inequalities on the stored values.
    pub inside: usize,
    /// Points with `max(Φ(λ, σ), Φ(λ, −σ)) < 1 − margin`.
    pub inside_beyond_margin: usize,
    /// Smallest distance from a point to the closed hole.
    pub min_distance: f64,
    /// Smallest `max(Φ(λ, σ), Φ(λ, −σ)) − 1`; negative inside `H_σ`.
    pub phi_depth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InclusionReport {
    pub checked: usize,
    pub annulus_violations: usize,
    pub diamond_violations: usize,
    /// Largest amount by which a point leaves the annulus.
    pub worst_annulus: f64,
    /// Largest `|x| + |y| − bound` seen.
    pub worst_diamond: f64,
}

impl SpectrumCloud {
    pub fn new(sigma: f64) -> Self {
        Self { sigma, ..Default::default() }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.z).collect()
    }

    /// Sorts points by value, then by tag, so the order does not depend on
    /// how the work was scheduled.
    pub fn sort_points(&mut self) {
        self.points.sort_by(|a, b| {
            a.z.re
                .total_cmp(&b.z.re)
                .then(a.z.im.total_cmp(&b.z.im))
                .then(a.n.cmp(&b.n))
                .then(a.word.cmp(&b.word))
                .then(a.alpha.re.total_cmp(&b.alpha.re))
                .then(a.alpha.im.total_cmp(&b.alpha.im))
        });
    }

    /// Counts points outside `1−σ ≤ |λ| ≤ 1+σ` or `|x|+|y| ≤ √(2(1+σ²))`,
    /// allowing `slack`. `annulus` / `diamond` switch the two tests.
    pub fn inclusion(&self, slack: f64, annulus: bool, diamond: bool) -> InclusionReport {
        let p = RegionParams::new(self.sigma).expect("cloud sigma is valid");
        let mut rep = InclusionReport { checked: self.points.len(), ..Default::default() };
        for pt in &self.points {
            let r = pt.z.norm();
            let out = (p.annulus_inner - r).max(r - p.annulus_outer);
            let dia = pt.z.re.abs() + pt.z.im.abs() - p.diamond;
            if annulus {
                rep.worst_annulus = rep.worst_annulus.max(out);
                if out > slack {
                    rep.annulus_violations += 1;
                }
            }
            if diamond {
                rep.worst_diamond = rep.worst_diamond.max(dia);
                if dia > slack {
                    rep.diamond_violations += 1;
                }
            }
        }
        rep
    }

    /// Points inside the open hole, and the smallest distance to its closure.
    /// Hole statistics; `margin` is the band on `Φ` below 1 treated as rounding.
    pub fn hole_report(&self, margin: f64) -> HoleReport {
        let p = RegionParams::new(self.sigma).expect("cloud sigma is valid");
        let s = self.sigma;
        let mut inside = 0;
        let mut inside_beyond_margin = 0;
        let mut depth = f64::INFINITY;
        for pt in &self.points {
            if crate::transfer::region_tests(pt.z, &p).in_h {
                inside += 1;
            }
            if let (Ok(a), Ok(b)) = (phi(pt.z, s), phi(pt.z, -s)) {
                let d = a.max(b) - 1.0;
                depth = depth.min(d);
                if d < -margin {
                    inside_beyond_margin += 1;
                }
            }
        }
        // the hole lies in the disc of radius r_σ: scan by modulus and stop early
        let by_norm: Vec<f64> = self.points.iter().map(|pt| pt.z.norm()).collect();
        let mut order: Vec<usize> = (0..by_norm.len()).collect();
        order.sort_by(|&i, &j| by_norm[i].total_cmp(&by_norm[j]));
        let mut min_distance = f64::INFINITY;
        for i in order {
            if by_norm[i] - p.r_sigma >= min_distance {
                break;
            }
            min_distance = min_distance.min(p.distance_to_hole(self.points[i].z));
        }
        HoleReport { inside, inside_beyond_margin, min_distance, phi_depth: depth }
    }

    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("hopspec {}", crate::VERSION), format!("sigma = {}", self.sigma)];
        lines.push(match self.seed {
            Some(s) => format!("seed = {s}"),
            None => "seed = none".to_string(),
        });
        lines.extend(self.params.iter().map(|(k, v)| format!("{k} = {v}")));
        lines
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for line in self.header_lines() {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "re,im,N,word_id,alpha_re,alpha_im")?;
        let mut buf = String::new();
        for p in &self.points {
            buf.clear();
            let _ = writeln!(buf, "{},{},{},{},{},{}", p.z.re, p.z.im, p.n, p.word, p.alpha.re, p.alpha.im);
            w.write_all(buf.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("CSV is UTF-8")
    }
}
