//! Nearest-neighbour queries and Hausdorff distances between point sets.

use num_complex::Complex64;

/// Uniform bucket grid over a finite point set.
#[derive(Debug, Clone)]
pub struct PointIndex {
    points: Vec<Complex64>,
    origin: Complex64,
    cell: f64,
    nx: i64,
    ny: i64,
    // cells[cx * ny + cy] lists indices into `points`
    cells: Vec<Vec<u32>>,
}

impl PointIndex {
    pub fn new(points: &[Complex64]) -> Self {
        let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        if points.is_empty() {
            lo = Complex64::new(0.0, 0.0);
            hi = lo;
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12);
        let per_side = (points.len() as f64).sqrt().ceil().max(1.0);
        let cell = span / per_side;
        let nx = ((hi.re - lo.re) / cell).floor() as i64 + 1;
        let ny = ((hi.im - lo.im) / cell).floor() as i64 + 1;
        let mut cells = vec![Vec::new(); (nx * ny) as usize];
        for (i, p) in points.iter().enumerate() {
            let cx = (((p.re - lo.re) / cell).floor() as i64).clamp(0, nx - 1);
            let cy = (((p.im - lo.im) / cell).floor() as i64).clamp(0, ny - 1);
            cells[(cx * ny + cy) as usize].push(i as u32);
        }
        Self { points: points.to_vec(), origin: lo, cell, nx, ny, cells }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of and distance to the nearest stored point.
    pub fn nearest(&self, q: Complex64) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let qx = ((q.re - self.origin.re) / self.cell).floor() as i64;
        let qy = ((q.im - self.origin.im) / self.cell).floor() as i64;
        let r_max = [qx, self.nx - 1 - qx, qy, self.ny - 1 - qy].iter().map(|v| v.abs()).max().unwrap_or(0)
            + self.nx.max(self.ny);
        let mut best: Option<(usize, f64)> = None;
        for r in 0..=r_max {
            for cx in qx - r..=qx + r {
                if cx < 0 || cx >= self.nx {
                    continue;
                }
                let edge = cx == qx - r || cx == qx + r;
                let ys: Box<dyn Iterator<Item = i64>> =
                    if edge { Box::new(qy - r..=qy + r) } else { Box::new([qy - r, qy + r].into_iter()) };
                for cy in ys {
                    if cy < 0 || cy >= self.ny {
                        continue;
                    }
                    for &i in &self.cells[(cx * self.ny + cy) as usize] {
                        let d = (self.points[i as usize] - q).norm();
                        if best.is_none_or(|(_, b)| d < b) {
                            best = Some((i as usize, d));
                        }
                    }
                }
            }
            if let Some((_, b)) = best {
                if b <= r as f64 * self.cell {
                    break;
                }
            }
        }
        best
    }
}

/// `max_{a ∈ from} min_{b ∈ to} |a − b|` (zero for empty `from`).
pub fn directed_distance(from: &[Complex64], to: &PointIndex) -> f64 {
    from.iter().map(|&a| to.nearest(a).map_or(f64::INFINITY, |(_, d)| d)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let (ia, ib) = (PointIndex::new(a), PointIndex::new(b));
    directed_distance(a, &ib).max(directed_distance(b, &ia))
}

/// Distance from `p` to the segment `[a, b]`.
pub fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len2;
    (p - (a + d * t.clamp(0.0, 1.0))).norm()
}

/// Distance from `p` to a polyline.
pub fn polyline_distance(p: Complex64, line: &[Complex64]) -> f64 {
    match line {
        [] => f64::INFINITY,
        [a] => (p - a).norm(),
        _ => line.windows(2).map(|w| segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min),
    }
}

/// Distance from `p` to the star `{r e^{iπj/k + iφ} : 0 ≤ r ≤ R, j = 0..2k−1}`.
pub fn star_distance(p: Complex64, rays: usize, radius: f64, phase: f64) -> f64 {
    (0..rays)
        .map(|j| {
            let tip = Complex64::from_polar(radius, phase + 2.0 * std::f64::consts::PI * j as f64 / rays as f64);
            segment_distance(p, Complex64::new(0.0, 0.0), tip)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_matches_brute_force() {
        let pts: Vec<Complex64> = (0..500)
            .map(|k| {
                let t = k as f64 * 0.7548776662466927;
                Complex64::new((t * 3.1).sin() * 2.0, (t * 1.7).cos() * (1.0 + t.fract()))
            })
            .collect();
        let idx = PointIndex::new(&pts);
        for k in 0..200 {
            let q = Complex64::new(-4.0 + 0.04 * k as f64, 3.0 - 0.031 * k as f64);
            let brute = pts.iter().map(|p| (p - q).norm()).fold(f64::INFINITY, f64::min);
            assert_eq!(idx.nearest(q).unwrap().1, brute);
        }
    }

    #[test]
    fn hausdorff_basic() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)];
        assert_eq!(hausdorff(&a, &b), 2.0);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn segment_and_star() {
        let d = segment_distance(Complex64::new(0.5, 1.0), Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0));
        assert_eq!(d, 1.0);
        let s = star_distance(Complex64::new(0.0, 1.0), 4, 2.0, 0.0);
        assert!(s < 1e-15);
    }
}
