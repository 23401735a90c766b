//! Finite and periodised matrices of the hopping-sign operator.

use num_complex::Complex64;

use crate::eigen::DenseMatrix;
use crate::error::{Error, Result};
use crate::seqcore::SignWord;

const UNIT_TOL: f64 = 1e-12;

fn check_coefficients(c: &[f64]) -> Result<()> {
    SignWord::from_values(c).map(|_| ())
}

/// The `N×N` truncation with superdiagonal 1 and subdiagonal `c_1..c_{N−1}`.
pub fn build_finite(c: &[f64]) -> Result<DenseMatrix> {
    check_coefficients(c)?;
    let n = c.len() + 1;
    let mut m = DenseMatrix::zeros(n)?;
    for i in 0..n - 1 {
        m[(i, i + 1)] = Complex64::new(1.0, 0.0);
        m[(i + 1, i)] = Complex64::new(c[i], 0.0);
    }
    Ok(m)
}

/// [`build_finite`] on `c_1..c_N` plus the corner entries
/// `(1, N) = α c_N` and `(N, 1) = α⁻¹`.
pub fn build_periodic(c: &[f64], alpha: Complex64) -> Result<DenseMatrix> {
    check_coefficients(c)?;
    build_periodic_tridiagonal(&vec![0.0; c.len()], c, 1.0, alpha)
}

/// Periodised tridiagonal matrix with diagonal `diag`, subdiagonal
/// `sub[0..N−1]` (rows 2..N), corner `(1, N) = α sub[N−1]`, constant
/// superdiagonal `sup` and corner `(N, 1) = α⁻¹ sup`.
pub fn build_periodic_tridiagonal(diag: &[f64], sub: &[f64], sup: f64, alpha: Complex64) -> Result<DenseMatrix> {
    let n = diag.len();
    if n < 3 {
        return Err(Error::InvalidDimension { n, reason: "periodised matrices need N >= 3" });
    }
    if sub.len() != n {
        return Err(Error::InvalidDimension { n: sub.len(), reason: "subdiagonal length must equal N" });
    }
    if (alpha.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitModulus(alpha.norm()));
    }
    let mut m = DenseMatrix::zeros(n)?;
    for i in 0..n {
        m[(i, i)] = Complex64::new(diag[i], 0.0);
    }
    for i in 0..n - 1 {
        m[(i, i + 1)] = Complex64::new(sup, 0.0);
        m[(i + 1, i)] = Complex64::new(sub[i], 0.0);
    }
    m[(0, n - 1)] = alpha * sub[n - 1];
    m[(n - 1, 0)] = sup / alpha;
    Ok(m)
}

/// The periodised matrix of one period of `word`, using `c_1..c_N`.
pub fn periodic_matrix(word: &SignWord, alpha: Complex64) -> Result<DenseMatrix> {
    let c: Vec<f64> = (1..=word.period() as i64).map(|n| word.value(n)).collect();
    build_periodic(&c, alpha)
}
