//! Dense complex eigenvalues.
//!
//! [`eigvals`] balances, reduces to Hessenberg form with Householder
//! reflections and runs single-shift complex QR with Wilkinson shifts.
//! [`oracle_eigvals`] is an unrelated route for small matrices (a
//! characteristic polynomial sampled on a circle and solved by Durand–Kerner)
//! and exists to test the first.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Deflation threshold on `|h_{k,k-1}|` relative to its diagonal neighbours.
pub const DEFLATION_TOL: f64 = 1e-12;
/// Iterations on one eigenvalue before an exceptional shift is tried.
pub const EXCEPTIONAL_SHIFT_EVERY: usize = 10;
/// Total iteration budget per dimension.
pub const ITERATIONS_PER_DIM: usize = 30;

/// Square matrix of complex doubles, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension { n, reason: "matrix dimension must be at least 1" });
        }
        Ok(Self { n, data: vec![ZERO; n * n] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDimension { n: row.len(), reason: "rows must all have length n" });
            }
            for (j, &x) in row.iter().enumerate() {
                if !(x.re.is_finite() && x.im.is_finite()) {
                    return Err(Error::Precondition(format!("non-finite entry at ({i}, {j})")));
                }
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        Self { n, data: out }
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = ONE;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .expect("nonempty range");
            if a[p * n + k] == ZERO {
                return ZERO;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Sorts by real part, then imaginary part. Real parts that agree to within a
/// small relative tolerance are treated as equal so that conjugate pairs come
/// out in a stable order.
pub fn sort_eigenvalues(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-10 * scale;
    let mut start = 0;
    while start < v.len() {
        let mut end = start + 1;
        while end < v.len() && v[end].re - v[end - 1].re <= tol {
            end += 1;
        }
        v[start..end].sort_by(|a, b| a.im.total_cmp(&b.im));
        start = end;
    }
}

/// Parlett–Reinsch balancing with radix 2, iterated until no row/column
/// pair changes by more than 5%.
fn balance(a: &mut DenseMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.n;
    for _sweep in 0..100 {
        let mut done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += abs1(a[(j, i)]);
                    r += abs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form (similarity).
fn hessenberg(a: &mut DenseMatrix) {
    let n = a.n;
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);
        // A <- (I - 2vv*) A on rows k+1..n
        for j in k..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * a[(k + 1 + t, j)]).sum();
            for (t, vt) in v.iter().enumerate() {
                a[(k + 1 + t, j)] -= 2.0 * vt * dot;
            }
        }
        // A <- A (I - 2vv*) on columns k+1..n
        for i in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vt)| a[(i, k + 1 + t)] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                a[(i, k + 1 + t)] -= 2.0 * dot * vt.conj();
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Eigenvalue of the 2×2 block `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) / 2.0;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) / 2.0;
    let (l1, l2) = (mean + disc, mean - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Unitary rotation `[[c̄, s̄], [−s, c]]` mapping `(a, b)` to `(r, 0)`.
#[derive(Clone, Copy)]
struct Givens {
    c: Complex64,
    s: Complex64,
}

impl Givens {
    fn new(a: Complex64, b: Complex64) -> Self {
        let r = a.norm().hypot(b.norm());
        if r == 0.0 {
            Self { c: ONE, s: ZERO }
        } else {
            Self { c: a / r, s: b / r }
        }
    }
}

/// Eigenvalues of a general complex square matrix, with multiplicity, sorted
/// with [`sort_eigenvalues`].
pub fn eigvals(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = m.n;
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let norm = h.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let floor = f64::EPSILON * norm;
    let mut out = vec![ZERO; n];
    let budget = ITERATIONS_PER_DIM * n;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    loop {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let near = abs1(h[(lo, lo)]) + abs1(h[(lo - 1, lo - 1)]);
            if sub <= DEFLATION_TOL * near || sub <= floor {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[(hi, hi)];
            its = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if total >= budget {
            return Err(Error::SolverFailure { index: hi, iterations: total });
        }
        total += 1;
        its += 1;

        let mu = if its.is_multiple_of(EXCEPTIONAL_SHIFT_EVERY) {
            let s = abs1(h[(hi, hi - 1)]) + if hi >= 2 { abs1(h[(hi - 1, hi - 2)]) } else { 0.0 };
            h[(hi, hi)] + Complex64::new(0.75 * s, 0.4375 * s)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        // explicit shifted QR step restricted to the block lo..=hi
        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let g = Givens::new(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = g.c.conj() * x + g.s.conj() * y;
                h[(k + 1, j)] = -g.s * x + g.c * y;
            }
            h[(k + 1, k)] = ZERO;
            rots.push(g);
        }
        for (t, g) in rots.iter().enumerate() {
            let k = lo + t;
            for i in lo..=(k + 1).min(hi) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = x * g.c + y * g.s;
                h[(i, k + 1)] = -x * g.s.conj() + y * g.c.conj();
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
    sort_eigenvalues(&mut out);
    Ok(out)
}

/// [`eigvals`] over many matrices in parallel; results keep input order.
pub fn eigvals_batch(ms: &[DenseMatrix]) -> Vec<Result<Vec<Complex64>>> {
    ms.par_iter().map(eigvals).collect()
}

/// Reduction to Hessenberg form by stabilised elimination (row interchanges
/// and Gauss transforms), as a similarity.
fn elimination_hessenberg(a: &mut DenseMatrix) {
    let n = a.n;
    for m in 1..n.saturating_sub(1) {
        let p = (m..n)
            .max_by(|&i, &j| abs1(a[(i, m - 1)]).total_cmp(&abs1(a[(j, m - 1)])))
            .expect("nonempty");
        let x = a[(p, m - 1)];
        if p != m {
            for j in m - 1..n {
                let t = a[(p, j)];
                a[(p, j)] = a[(m, j)];
                a[(m, j)] = t;
            }
            for i in 0..n {
                let t = a[(i, p)];
                a[(i, p)] = a[(i, m)];
                a[(i, m)] = t;
            }
        }
        if x == ZERO {
            continue;
        }
        for i in m + 1..n {
            let y = a[(i, m - 1)] / x;
            if y == ZERO {
                continue;
            }
            a[(i, m - 1)] = ZERO;
            for j in m..n {
                let t = a[(m, j)];
                a[(i, j)] -= y * t;
            }
            for r in 0..n {
                let t = a[(r, i)];
                a[(r, m)] += y * t;
            }
        }
    }
}

/// `det(zI − H)` for upper Hessenberg `H`, by the recurrence on leading
/// principal minors.
fn hessenberg_char_det(h: &DenseMatrix, z: Complex64) -> Complex64 {
    let n = h.n;
    let b = |i: usize, j: usize| if i == j { z - h[(i, j)] } else { -h[(i, j)] };
    let mut p = vec![ONE; n + 1];
    for k in 1..=n {
        let col = k - 1;
        let mut acc = ZERO;
        let mut prod = ONE;
        let mut sign = 1.0;
        for i in (1..=k).rev() {
            acc += sign * b(i - 1, col) * prod * p[i - 1];
            if i >= 2 {
                prod *= b(i - 1, i - 2);
                sign = -sign;
            }
        }
        p[k] = acc;
    }
    p[n]
}

/// Eigenvalues through the characteristic polynomial, for `n ≤ 16`.
pub fn oracle_eigvals(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = m.n;
    if n > 16 {
        return Err(Error::InvalidDimension { n, reason: "oracle_eigvals supports n <= 16" });
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let mut h = m.clone();
    elimination_hessenberg(&mut h);
    // every eigenvalue lies within the max absolute row sum
    let bound = (0..n).map(|i| (0..n).map(|j| h[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max);
    let radius = bound.max(1e-3);
    // coefficients of the monic characteristic polynomial by inverse DFT
    let pts = n + 1;
    let samples: Vec<Complex64> = (0..pts)
        .map(|k| hessenberg_char_det(&h, Complex64::from_polar(radius, 2.0 * PI * k as f64 / pts as f64)))
        .collect();
    let mut coeffs: Vec<Complex64> = (0..=n)
        .map(|j| {
            let s: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(k, &p)| p * Complex64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / pts as f64))
                .sum();
            s / (pts as f64 * radius.powi(j as i32))
        })
        .collect();
    coeffs[n] = ONE;
    let mut roots = durand_kerner(&coeffs, radius)?;
    polish_roots(&h, &mut roots);
    sort_eigenvalues(&mut roots);
    Ok(roots)
}

const POLISH_SWEEPS: usize = 8;

/// Weierstrass sweeps on `det(zI − H)` itself, which removes the error the
/// interpolated coefficients carry. A step is only taken when it shrinks the
/// determinant.
fn polish_roots(h: &DenseMatrix, z: &mut [Complex64]) {
    let n = z.len();
    for _ in 0..POLISH_SWEEPS {
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            if denom == ZERO {
                continue;
            }
            let value = hessenberg_char_det(h, z[i]);
            let next = z[i] - value / denom;
            if hessenberg_char_det(h, next).norm() < value.norm() {
                z[i] = next;
            }
        }
    }
}

fn eval_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

/// All roots of the monic polynomial `Σ coeffs[k] z^k` by simultaneous
/// (Weierstrass) iteration.
pub fn durand_kerner(coeffs: &[Complex64], radius: f64) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1) * radius.max(1.0) / 0.985f64.powi(k as i32 + 1)).collect();
    const MAX_ITER: usize = 20_000;
    // |p(z)| below this multiple of the rounding bound counts as a root
    let noise = |x: Complex64| -> f64 {
        let r = x.norm();
        32.0 * f64::EPSILON * coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    };
    for _ in 0..MAX_ITER {
        let mut done = true;
        for i in 0..n {
            let mut denom = ONE;
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom == ZERO {
                denom = Complex64::new(1e-300, 0.0);
            }
            let value = eval_poly(coeffs, z[i]);
            let step = value / denom;
            let settled = step.norm() <= 1e-12 * z[i].norm().max(1.0) || value.norm() <= noise(z[i]);
            z[i] -= step;
            done &= settled;
        }
        if done {
            return Ok(z);
        }
    }
    Err(Error::RootIteration { iterations: MAX_ITER })
}

/// Smallest `d` such that the two multisets can be paired with every pair
/// within `d` (bottleneck matching). Infinite when the lengths differ.
pub fn matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    let mut cand: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| (x - y).norm())).collect();
    cand.sort_by(f64::total_cmp);
    cand.dedup();
    let feasible = |d: f64| perfect_matching(a, b, d);
    let (mut lo, mut hi) = (0usize, cand.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cand[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cand[lo]
}

fn perfect_matching(a: &[Complex64], b: &[Complex64], d: f64) -> bool {
    let n = a.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| (a[i] - b[j]).norm() <= d).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    (0..n).all(|i| augment(i, &adj, &mut vec![false; n], &mut owner))
}

/// Largest elementwise gap between two equally long sorted lists.
pub fn elementwise_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Total order used by [`sort_eigenvalues`] before tie-grouping.
pub fn lexicographic(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_matrix() {
        let m = DenseMatrix::zeros(4).unwrap();
        assert_eq!(eigvals(&m).unwrap(), vec![ZERO; 4]);
        assert!(matches!(DenseMatrix::zeros(0), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn circulant() {
        let m = DenseMatrix::from_real_rows(&[vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).unwrap();
        let e = eigvals(&m).unwrap();
        let expected = [c(-1.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)];
        assert!(matching_distance(&e, &expected) < 1e-12, "{e:?}");
        let o = oracle_eigvals(&m).unwrap();
        assert!(matching_distance(&o, &expected) < 1e-7, "{o:?}");
    }

    #[test]
    fn twisted_circulant() {
        let s = 0.5;
        let m = DenseMatrix::from_real_rows(&[vec![0.0, 1.0, s], vec![s, 0.0, 1.0], vec![1.0, s, 0.0]]).unwrap();
        let expected: Vec<Complex64> = (0..3)
            .map(|j| {
                let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 3.0);
                w + s * w * w
            })
            .collect();
        assert!(matching_distance(&eigvals(&m).unwrap(), &expected) < 1e-12);
        assert!(matching_distance(&oracle_eigvals(&m).unwrap(), &expected) < 1e-10);
    }

    #[test]
    fn oracle_small_cases() {
        let m = DenseMatrix::from_real_rows(&[vec![0.0, 2.0], vec![1.0, 0.0]]).unwrap();
        let r = 2f64.sqrt();
        assert!(matching_distance(&oracle_eigvals(&m).unwrap(), &[c(-r, 0.0), c(r, 0.0)]) < 1e-12);
        let one = DenseMatrix::from_rows(&[vec![c(7.0, 1.0)]]).unwrap();
        assert_eq!(oracle_eigvals(&one).unwrap(), vec![c(7.0, 1.0)]);
        assert_eq!(eigvals(&one).unwrap(), vec![c(7.0, 1.0)]);
    }

    #[test]
    fn determinant_by_lu() {
        let m = DenseMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert!((m.determinant() - c(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn matching() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(1.1, 0.0), c(0.05, 0.0)];
        assert!((matching_distance(&a, &b) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn sorting_groups_conjugates() {
        let mut v = vec![c(1.0, 0.5), c(1.0 - 1e-15, -0.5), c(-1.0, 0.0)];
        sort_eigenvalues(&mut v);
        assert_eq!(v[1].im, -0.5);
        assert_eq!(v[2].im, 0.5);
    }
}
