//! Exact integer polynomials and the `c̃`-recurrence polynomials.
//!
//! With `c̃` the sign sequence from [`crate::seqcore::c_tilde`], the solutions of
//! `x_{n+1} = λ x_n − c̃_n x_{n−1}` started from `(u_0, u_1) = (0, 1)` and
//! `(v_0, v_1) = (1, 0)` are integer polynomials in `λ`, and
//!
//! ```text
//! T_n = X_n ⋯ X_1 = [[v_n, u_n], [v_{n+1}, u_{n+1}]].
//! ```
//!
//! Every function that depends on `c̃` has a `_with` variant taking the sign
//! table explicitly (`ctilde[k - 1] = c̃_k`), which is how faults are injected.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::c_tilde_prefix;

/// Polynomial in `λ` with arbitrary-precision integer coefficients;
/// `coeffs[k]` multiplies `λ^k`. Trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![BigInt::from(c)])
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c λ^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `λ^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// `λ^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Self::new(self.coeffs.iter().map(|x| x * &c).collect())
    }

    /// Horner evaluation in complex double precision.
    pub fn eval_at(&self, lambda: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * lambda + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    /// Whether only even (`parity = 0`) or only odd (`parity = 1`) powers occur.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| k % 2 == parity % 2 || c.is_zero())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// First power at which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find(|&k| self.coeff(k) != other.coeff(k))
    }

    /// `λ·self − c·prev` in a single allocation.
    fn recurrence_step(&self, c: i8, prev: &Self) -> Self {
        let len = (self.coeffs.len() + 1).max(prev.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, x) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = x.clone();
        }
        for (k, x) in prev.coeffs.iter().enumerate() {
            if c > 0 {
                coeffs[k] -= x;
            } else {
                coeffs[k] += x;
            }
        }
        Self::new(coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: Self) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            match (show_mag, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}λ")?,
                (false, 1) => write!(f, "λ")?,
                (true, _) => write!(f, "{mag}λ^{k}")?,
                (false, _) => write!(f, "λ^{k}")?,
            }
        }
        Ok(())
    }
}

/// One term of the `u`/`v` recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct UvTerm {
    pub n: usize,
    pub u: IntPolynomial,
    pub v: IntPolynomial,
}

/// Streams `(n, u_n, v_n)` for `n = 0, 1, …, len + 1`, where `len` is the
/// number of supplied `c̃` values. Only two terms are held at a time.
#[derive(Debug, Clone)]
pub struct UvRecurrence {
    ctilde: Vec<i8>,
    n: usize,
    u: (IntPolynomial, IntPolynomial),
    v: (IntPolynomial, IntPolynomial),
}

impl UvRecurrence {
    pub fn new(ctilde: Vec<i8>) -> Self {
        Self {
            ctilde,
            n: 0,
            u: (IntPolynomial::zero(), IntPolynomial::one()),
            v: (IntPolynomial::one(), IntPolynomial::zero()),
        }
    }

    /// The recurrence for the true `c̃`, producing terms up to `n_max + 1`.
    pub fn standard(n_max: usize) -> Self {
        Self::new(c_tilde_prefix(n_max))
    }
}

const COEFF_LIMIT_BITS: u64 = 62;

impl Iterator for UvRecurrence {
    type Item = UvTerm;

    fn next(&mut self) -> Option<UvTerm> {
        if self.n > self.ctilde.len() + 1 {
            return None;
        }
        let term = UvTerm { n: self.n, u: self.u.0.clone(), v: self.v.0.clone() };
        // advance: (x_{n}, x_{n+1}) -> (x_{n+1}, x_{n+2}) using c̃_{n+1}
        if let Some(&c) = self.ctilde.get(self.n) {
            let u_next = self.u.1.recurrence_step(c, &self.u.0);
            let v_next = self.v.1.recurrence_step(c, &self.v.0);
            debug_assert!(
                u_next.max_abs_coeff().bits() < COEFF_LIMIT_BITS
                    && v_next.max_abs_coeff().bits() < COEFF_LIMIT_BITS,
                "recurrence coefficient exceeds 2^62 at n = {}",
                self.n + 2
            );
            self.u = (std::mem::take(&mut self.u.1), u_next);
            self.v = (std::mem::take(&mut self.v.1), v_next);
        } else {
            self.u = (std::mem::take(&mut self.u.1), IntPolynomial::zero());
            self.v = (std::mem::take(&mut self.v.1), IntPolynomial::zero());
        }
        self.n += 1;
        Some(term)
    }
}

/// `u_0, …, u_{n_max+1}` and `v_0, …, v_{n_max+1}`.
pub fn uv_polys(n_max: usize) -> Result<(Vec<IntPolynomial>, Vec<IntPolynomial>)> {
    if n_max == 0 {
        return Err(Error::Precondition("uv_polys needs n_max >= 1".into()));
    }
    Ok(uv_polys_with(&c_tilde_prefix(n_max)))
}

/// As [`uv_polys`] for an explicit sign table.
pub fn uv_polys_with(ctilde: &[i8]) -> (Vec<IntPolynomial>, Vec<IntPolynomial>) {
    UvRecurrence::new(ctilde.to_vec()).map(|t| (t.u, t.v)).unzip()
}

/// `tr(T_n) = v_n + u_{n+1}`.
pub fn trace_poly(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Precondition("trace_poly needs n >= 1".into()));
    }
    Ok(trace_poly_with(&c_tilde_prefix(n), n))
}

/// `v_n + u_{n+1}` for an explicit sign table with at least `n` entries.
pub fn trace_poly_with(ctilde: &[i8], n: usize) -> IntPolynomial {
    let mut it = UvRecurrence::new(ctilde[..n].to_vec()).skip(n);
    let at_n = it.next().expect("term n exists");
    let at_n1 = it.next().expect("term n + 1 exists");
    &at_n.v + &at_n1.u
}

/// Coefficients `p_{i,j}` of `u_i = Σ_j p_{i,j} λ^{j−1}`, built from the
/// support rules and sign rules alone (no polynomial arithmetic).
///
/// The rules come from `u_{2k}(λ) = λ u_k(λ²)` and
/// `u_{2k+1}(λ) = u_{k+1}(λ²) + c̃_{2k+1} u_k(λ²)`:
///
/// 1. `p_{1,1} = 1`;
/// 2. `p_{2k,2j} = p_{k,j}`;
/// 3. `p_{2k+1,2j−1} = p_{k+1,j}` when `(k+1, j)` is in the support;
/// 4. `p_{2k+1,2j−1} = c̃_{2k+1} p_{k,j}` when `(k, j)` is in the support.
///
/// Rules 3 and 4 never apply together. The constant term of an odd row is
/// taken instead from `γ_{2k+1} = ∏_{r=1}^{k} c̃_{2r+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PTable {
    /// `rows[i]` lists `(j, p_{i,j})` for nonzero entries, `j` increasing.
    /// `rows[0]` is empty (`u_0 = 0`).
    rows: Vec<Vec<(u32, i8)>>,
}

impl PTable {
    pub fn i_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, i: usize) -> &[(u32, i8)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: u32) -> i8 {
        self.rows
            .get(i)
            .and_then(|r| r.binary_search_by_key(&j, |&(jj, _)| jj).ok().map(|k| r[k].1))
            .unwrap_or(0)
    }

    /// Row `i` as the polynomial `u_i`.
    pub fn poly(&self, i: usize) -> IntPolynomial {
        let deg = self.rows[i].last().map_or(0, |&(j, _)| j as usize);
        let mut c = vec![0i64; deg];
        for &(j, s) in &self.rows[i] {
            c[j as usize - 1] = s as i64;
        }
        IntPolynomial::from_i64s(&c)
    }
}

/// Builds the coefficient table for `i = 0..=i_max` with the true `c̃`.
pub fn p_table(i_max: usize) -> Result<PTable> {
    if i_max == 0 {
        return Err(Error::Precondition("p_table needs i_max >= 1".into()));
    }
    p_table_with(&c_tilde_prefix(i_max))
}

/// Builds the coefficient table for `i = 0..=ctilde.len()`.
pub fn p_table_with(ctilde: &[i8]) -> Result<PTable> {
    let i_max = ctilde.len();
    let ct = |k: usize| ctilde[k - 1];
    let mut rows: Vec<Vec<(u32, i8)>> = vec![Vec::new(), vec![(1, 1)]];
    let mut gamma: i8 = 1; // γ_1
    for i in 2..=i_max {
        let row = if i % 2 == 0 {
            rows[i / 2].iter().map(|&(j, s)| (2 * j, s)).collect()
        } else {
            let k = i / 2;
            gamma *= ct(i);
            let (hi, lo) = (&rows[k + 1], &rows[k]);
            let mut row = vec![(1, gamma)];
            let (mut a, mut b) = (hi.iter().peekable(), lo.iter().peekable());
            loop {
                let (ja, jb) = (a.peek().map(|x| x.0), b.peek().map(|x| x.0));
                let (j, s) = match (ja, jb) {
                    (None, None) => break,
                    (Some(x), Some(y)) if x == y => {
                        if x > 1 {
                            return Err(Error::Precondition(format!(
                                "coefficient rules 3 and 4 both apply at ({i}, {})",
                                2 * x - 1
                            )));
                        }
                        a.next();
                        b.next();
                        continue;
                    }
                    (Some(x), y) if y.is_none_or(|y| x < y) => {
                        let s = a.next().expect("peeked").1;
                        (x, s)
                    }
                    _ => {
                        let s = b.next().expect("peeked").1;
                        (jb.expect("present"), ct(i) * s)
                    }
                };
                if j > 1 {
                    row.push((2 * j - 1, s));
                }
            }
            row
        };
        rows.push(row);
    }
    rows.truncate(i_max + 1);
    Ok(PTable { rows })
}

/// The four identities checked at `m = 2^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityKind {
    /// `tr(T_m) = λ^m − 2`.
    Trace,
    /// `det(T_m) = 1`, both as the polynomial `v_m u_{m+1} − u_m v_{m+1}` and
    /// as `∏_{k ≤ m} c̃_k`.
    Determinant,
    /// `u_m = λ^{m−1}`.
    LeadingU,
    /// `u_{m+1} = −1 + λ^{m/2} Σ_{r=0}^{m/4} α_r λ^{2r}` with `α_r ∈ {−1, 0, 1}`.
    NextU,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 4] =
        [IdentityKind::Trace, IdentityKind::Determinant, IdentityKind::LeadingU, IdentityKind::NextU];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Trace => "trace",
            IdentityKind::Determinant => "determinant",
            IdentityKind::LeadingU => "u_leading",
            IdentityKind::NextU => "u_next_shape",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The identity has no content at this size (the `u_{m+1}` shape needs `4 | m`).
    NotApplicable,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "N/A",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub r: u32,
    pub kind: IdentityKind,
    pub status: CheckStatus,
    /// For failures, the first mismatching coefficient.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != CheckStatus::Fail)
    }

    pub fn first_failure(&self) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.status == CheckStatus::Fail)
    }
}

/// Checks the four identities for `r = 1..=r_max` with the true `c̃`.
pub fn verify_identities(r_max: u32) -> Result<IdentityReport> {
    if r_max == 0 || r_max > 16 {
        return Err(Error::Precondition(format!("verify_identities needs 1 <= r_max <= 16, got {r_max}")));
    }
    Ok(verify_identities_with(&c_tilde_prefix((1 << r_max) + 1), r_max))
}

fn mismatch(expected: &IntPolynomial, got: &IntPolynomial) -> Option<String> {
    expected.first_difference(got).map(|k| {
        format!("coefficient of λ^{k}: expected {}, got {}", expected.coeff(k), got.coeff(k))
    })
}

/// Checks the identities against an explicit sign table, which must hold at
/// least `2^r_max` entries.
pub fn verify_identities_with(ctilde: &[i8], r_max: u32) -> IdentityReport {
    let top = 1usize << r_max;
    let mut results = Vec::new();
    let mut prev: Option<UvTerm> = None;
    let mut r = 1u32;
    for term in UvRecurrence::new(ctilde[..top].to_vec()) {
        let n = term.n;
        if let Some(at_m) = prev.take() {
            let m = at_m.n;
            if m == 1 << r {
                let sign_product = ctilde[..m].iter().product();
                results.extend(check_at(r, m, &at_m, &term, sign_product));
                r += 1;
            }
        }
        if n > top {
            break;
        }
        prev = Some(term);
    }
    IdentityReport { results }
}

fn check_at(r: u32, m: usize, at_m: &UvTerm, at_m1: &UvTerm, sign_product: i8) -> Vec<IdentityResult> {
    let result = |kind, detail: Option<String>| IdentityResult {
        r,
        kind,
        status: if detail.is_some() { CheckStatus::Fail } else { CheckStatus::Pass },
        detail,
    };
    let mut out = Vec::with_capacity(4);

    let trace = &at_m.v + &at_m1.u;
    let expected = &IntPolynomial::monomial(1, m) - &IntPolynomial::constant(2);
    out.push(result(IdentityKind::Trace, mismatch(&expected, &trace)));

    let det = &(&at_m.v * &at_m1.u) - &(&at_m.u * &at_m1.v);
    let det_detail = mismatch(&IntPolynomial::one(), &det).or_else(|| {
        (sign_product != 1).then(|| format!("sign product of c̃_1..c̃_{m} is {sign_product}"))
    });
    out.push(result(IdentityKind::Determinant, det_detail));

    out.push(result(IdentityKind::LeadingU, mismatch(&IntPolynomial::monomial(1, m - 1), &at_m.u)));

    if !m.is_multiple_of(4) {
        out.push(IdentityResult { r, kind: IdentityKind::NextU, status: CheckStatus::NotApplicable, detail: None });
    } else {
        out.push(result(IdentityKind::NextU, next_u_shape(&at_m1.u, m)));
    }
    out
}

fn next_u_shape(u: &IntPolynomial, m: usize) -> Option<String> {
    let minus_one = BigInt::from(-1);
    if u.coeff(0) != minus_one {
        return Some(format!("coefficient of λ^0: expected -1, got {}", u.coeff(0)));
    }
    for (k, c) in u.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let allowed = k >= m / 2 && k <= m && (k - m / 2).is_multiple_of(2) && c.abs().is_one();
        if !allowed {
            return Some(format!("coefficient of λ^{k}: {c} is outside the allowed shape"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[-1, 0, 1]) * &p(&[0, 1]), p(&[0, -1, 0, 1]));
        assert_eq!(IntPolynomial::one().shift(3), IntPolynomial::monomial(1, 3));
        assert_eq!(p(&[-1, 0, 1, 0, 1]).eval_at(Complex64::new(1.0, 0.0)), Complex64::new(1.0, 0.0));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 3, 0, 0]).degree(), Some(2));
        assert_eq!(-p(&[1, -1]), p(&[-1, 1]));
        assert_eq!(p(&[1, 2]).scale(-3), p(&[-3, -6]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1, 0, 1]).to_string(), "λ^4 + λ^2 - 1");
        assert_eq!(p(&[0, -2, 0, -1]).to_string(), "-λ^3 - 2λ");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn first_rows() {
        let (u, v) = uv_polys(9).unwrap();
        assert_eq!(u.len(), 11);
        assert_eq!(u[5], p(&[-1, 0, 1, 0, 1]));
        assert_eq!(v[9], p(&[0, -2, 0, -2, 0, -2, 0, -1]));
        assert_eq!(u[8], IntPolynomial::monomial(1, 7));
        assert_eq!(v[4], p(&[-1, 0, -1]));
        assert_eq!(trace_poly(5).unwrap(), p(&[0, -3, 0, -1, 0, 1]));
        assert_eq!(trace_poly(8).unwrap(), p(&[-2, 0, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(trace_poly(1).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn p_table_rows() {
        let t = p_table(64).unwrap();
        assert_eq!(t.row(5), &[(1, -1), (3, 1), (5, 1)]);
        let (u, _) = uv_polys(64).unwrap();
        for i in 1..=64 {
            assert_eq!(t.poly(i), u[i], "row {i}");
        }
        assert_eq!(t.get(5, 1), -1);
        assert_eq!(t.get(3, 1), -1);
        for n in 1..=5 {
            assert_eq!(t.get((1 << n) + 1, 1), -1);
        }
    }

    #[test]
    fn identities_small() {
        let rep = verify_identities(6).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
        let r1 = rep.results.iter().find(|x| x.r == 1 && x.kind == IdentityKind::NextU).unwrap();
        assert_eq!(r1.status, CheckStatus::NotApplicable);
        assert_eq!(rep.results.len(), 24);
    }

    #[test]
    fn injected_fault_breaks_trace_at_r2() {
        let mut ct = c_tilde_prefix(65);
        ct[2] = -ct[2];
        let rep = verify_identities_with(&ct, 6);
        let first = rep.first_failure().unwrap();
        assert_eq!((first.r, first.kind), (2, IdentityKind::Trace));
        assert!(first.detail.as_ref().unwrap().contains("coefficient"));
    }
}
