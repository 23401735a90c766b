//! Verification suites behind `hopspec verify`, with a JSON-friendly outcome
//! record per check.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::polyalg::{p_table_with, uv_polys_with, verify_identities_with, CheckStatus, IntPolynomial, UvRecurrence};
use crate::seqcore::c_tilde_prefix;
use crate::spectra::{all_words, denseness_check, pi_union, square_spectrum_check, symmetry_check, ue_bound_check};
use crate::transfer::{decay_check, decay_rates};

/// `c̃_1, …, c̃_9`.
pub const TABLE1_CTILDE: [i8; 9] = [1, 1, -1, -1, 1, -1, 1, -1, 1];

/// `u_1, …, u_9`, coefficients in increasing degree.
pub const TABLE1_U: [&[i64]; 9] = [
    &[1],
    &[0, 1],
    &[-1, 0, 1],
    &[0, 0, 0, 1],
    &[-1, 0, 1, 0, 1],
    &[0, -1, 0, 0, 0, 1],
    &[-1, 0, 0, 0, 1, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 1],
    &[-1, 0, 0, 0, 1, 0, 1, 0, 1],
];

/// `v_1, …, v_9`.
pub const TABLE1_V: [&[i64]; 9] = [
    &[],
    &[-1],
    &[0, -1],
    &[-1, 0, -1],
    &[0, -2, 0, -1],
    &[1, 0, -1, 0, -1],
    &[0, -1, 0, -2, 0, -1],
    &[-1, 0, 0, 0, -1, 0, -1],
    &[0, -2, 0, -2, 0, -2, 0, -1],
];

/// `tr(T_1), …, tr(T_8)`.
pub const TABLE2_TRACE: [&[i64]; 8] = [
    &[0, 1],
    &[-2, 0, 1],
    &[0, -1, 0, 1],
    &[-2, 0, 0, 0, 1],
    &[0, -3, 0, -1, 0, 1],
    &[0, 0, -1, 0, 0, 0, 1],
    &[0, -1, 0, -2, 0, -1, 0, 1],
    &[-2, 0, 0, 0, 0, 0, 0, 0, 1],
];

/// Result of one check. For exact checks `max_error` counts mismatches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: CheckStatus,
    pub max_error: f64,
    pub runtime_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

fn timed(check: &str, f: impl FnOnce() -> (bool, f64, Option<String>)) -> CheckOutcome {
    let start = Instant::now();
    let (ok, max_error, detail) = f();
    CheckOutcome {
        check: check.to_string(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        max_error,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        detail,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Identities are checked at `m = 2^r` for `r ≤ r_max`.
    pub r_max: u32,
    /// Coefficient table rows compared with the recurrence.
    pub p_rows: usize,
    /// 1-based index of a `c̃` value to flip before the exact checks.
    pub fault: Option<usize>,
    pub alpha_count: usize,
    pub ue_steps: usize,
    /// Distance tolerance for the numerical checks.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { r_max: 10, p_rows: 4096, fault: None, alpha_count: 512, ue_steps: 100_000, tol: 1e-6 }
    }
}

/// The first `len` values of `c̃`, with the value at `fault` negated.
pub fn ctilde_with_fault(len: usize, fault: Option<usize>) -> Vec<i8> {
    let mut ct = c_tilde_prefix(len);
    if let Some(k) = fault.filter(|&k| k >= 1 && k <= len) {
        ct[k - 1] = -ct[k - 1];
    }
    ct
}

fn compare_polys(label: &str, expected: &[&[i64]], got: &[IntPolynomial], first: usize) -> (usize, Option<String>) {
    let mut bad = 0;
    let mut detail = None;
    for (k, exp) in expected.iter().enumerate() {
        let n = first + k;
        let exp = IntPolynomial::from_i64s(exp);
        if let Some(j) = exp.first_difference(&got[n]) {
            bad += 1;
            detail.get_or_insert_with(|| format!("{label}_{n}: λ^{j} expected {}, got {}", exp.coeff(j), got[n].coeff(j)));
        }
    }
    (bad, detail)
}

/// Tables of `c̃_n, u_n, v_n` (n ≤ 9) and `tr(T_n)` (n ≤ 8).
pub fn check_tables(ctilde: &[i8]) -> CheckOutcome {
    timed("golden_tables", || {
        let ct = &ctilde[..9];
        let (u, v) = uv_polys_with(ct);
        let mut bad = ct.iter().zip(TABLE1_CTILDE).filter(|(a, b)| **a != *b).count();
        let mut detail = (bad > 0).then(|| format!("c̃ differs from {TABLE1_CTILDE:?}"));
        for (label, table, polys) in [("u", &TABLE1_U, &u), ("v", &TABLE1_V, &v)] {
            let (b, d) = compare_polys(label, table, polys, 1);
            bad += b;
            detail = detail.or(d);
        }
        let traces: Vec<IntPolynomial> = (0..=8)
            .map(|n| if n == 0 { IntPolynomial::zero() } else { &v[n] + &u[n + 1] })
            .collect();
        let (b, d) = compare_polys("tr", &TABLE2_TRACE, &traces, 1);
        bad += b;
        detail = detail.or(d);
        (bad == 0, bad as f64, detail)
    })
}

/// Trace, determinant and `u` identities at `m = 2^r`.
pub fn check_identities(ctilde: &[i8], r_max: u32) -> CheckOutcome {
    timed("identities", || {
        let report = verify_identities_with(ctilde, r_max);
        let failures = report.results.iter().filter(|r| r.status == CheckStatus::Fail).count();
        let detail = report
            .first_failure()
            .map(|f| format!("r = {} {}: {}", f.r, f.kind.name(), f.detail.clone().unwrap_or_default()));
        (failures == 0, failures as f64, detail)
    })
}

/// Coefficient table from the support and sign rules against the recurrence.
pub fn check_p_table(ctilde: &[i8], rows: usize) -> CheckOutcome {
    timed("coefficient_table", || {
        let table = match p_table_with(&ctilde[..rows]) {
            Ok(t) => t,
            Err(e) => return (false, f64::NAN, Some(e.to_string())),
        };
        let mut bad = 0usize;
        let mut detail = None;
        for term in UvRecurrence::new(ctilde[..rows].to_vec()).take(rows + 1) {
            let row = table.poly(term.n);
            if let Some(j) = row.first_difference(&term.u) {
                bad += 1;
                detail.get_or_insert_with(|| {
                    format!("u_{}: λ^{j} table {}, recurrence {}", term.n, row.coeff(j), term.u.coeff(j))
                });
            }
        }
        (bad == 0, bad as f64, detail)
    })
}

/// `|λ|`-grid for the `u` bound: radii `0.09k`, ten angles each.
pub fn ue_grid() -> Vec<Complex64> {
    (1..=10)
        .flat_map(|k| (0..10).map(move |j| Complex64::from_polar(0.09 * k as f64, 2.0 * PI * (j as f64 + 0.5) / 10.0)))
        .collect()
}

/// `max|u_i| ≤ (1 − |λ|)^{−1}`; `max_error` is the largest excess over the bound.
pub fn check_ue(lambdas: &[Complex64], steps: usize) -> CheckOutcome {
    timed("ue_bound", || {
        let mut worst = f64::NEG_INFINITY;
        let mut detail = None;
        for &l in lambdas {
            match ue_bound_check(l, steps) {
                Ok(r) => {
                    let excess = r.max_abs - r.bound;
                    if excess > worst {
                        worst = excess;
                        if !r.passed {
                            detail = Some(format!("λ = {l}: max |u| = {} > {}", r.max_abs, r.bound));
                        }
                    }
                }
                Err(e) => return (false, f64::NAN, Some(e.to_string())),
            }
        }
        (detail.is_none(), worst.max(0.0), detail)
    })
}

/// `Spec(A_c)² = Spec(A_b) = Spec(M_b)` for every word of period ≤ 4 at
/// `σ ∈ {0.5, 0.9}`.
pub fn check_squares(alpha_count: usize, tol: f64) -> CheckOutcome {
    timed("spectral_mapping", || {
        let mut worst: f64 = 0.0;
        let mut detail = None;
        for sigma in [0.5, 0.9] {
            for n in 1..=4 {
                let words = match all_words(n, sigma * sigma) {
                    Ok(w) => w,
                    Err(e) => return (false, f64::NAN, Some(e.to_string())),
                };
                for b in words {
                    match square_spectrum_check(&b, sigma, alpha_count) {
                        Ok(r) => {
                            if r.max() > worst {
                                worst = r.max();
                                if worst > tol {
                                    detail = Some(format!("b = {} at σ = {sigma}: {:?}", b.id(), r));
                                }
                            }
                        }
                        Err(e) => return (false, f64::NAN, Some(e.to_string())),
                    }
                }
            }
        }
        (worst <= tol, worst, detail)
    })
}

/// Conjugation, rotation by `i` and negation map `π_{4,σ}` to itself.
pub fn check_symmetry(alpha_count: usize, tol: f64) -> CheckOutcome {
    timed("symmetry", || {
        let mut worst: f64 = 0.0;
        for sigma in [0.5, 0.9025] {
            match pi_union(4, sigma, alpha_count) {
                Ok(u) => {
                    let r = symmetry_check(&u.cloud);
                    worst = worst.max(r.conjugation).max(r.rotation_i).max(r.negation);
                }
                Err(e) => return (false, f64::NAN, Some(e.to_string())),
            }
        }
        (worst <= tol, worst, None)
    })
}

/// 100-point polar grid with `|λ| ≤ 0.8`.
pub fn decay_grid() -> Vec<Complex64> {
    (1..=10)
        .flat_map(|k| (0..10).map(move |j| Complex64::from_polar(0.08 * k as f64, 2.0 * PI * j as f64 / 10.0 + 0.1)))
        .collect()
}

/// Both fundamental solutions decay on [`decay_grid`] at `σ = 0.5, d = 3`,
/// and one grows at `λ = 1.2`. `max_error` is the largest rate on the grid.
pub fn check_decay() -> CheckOutcome {
    timed("decay", || {
        let (sigma, d) = (0.5, 3);
        let mut worst: f64 = 0.0;
        for l in decay_grid() {
            match decay_check(l, sigma, d) {
                Ok(r) => worst = worst.max(r.rate),
                Err(e) => return (false, f64::NAN, Some(e.to_string())),
            }
        }
        let outside = decay_rates(Complex64::new(1.2, 0.0), sigma, d, crate::transfer::DEFAULT_DECAY_HORIZON);
        let ok = worst < 1.0 && outside.rate > 1.0;
        let detail = format!("max rate on grid {worst:.6}, rate at 1.2 is {:.6}", outside.rate);
        (ok, worst, Some(detail))
    })
}

/// The `σ = 1` star points `r e^{iπj/2^m}` lie on `Spec(A_{c^{(m,+)}})` for `m ≤ 2`.
pub fn check_denseness(tol: f64) -> CheckOutcome {
    timed("denseness", || {
        let mut worst: f64 = 0.0;
        for m in 0..=2 {
            match denseness_check(m) {
                Ok(r) => worst = worst.max(r.closed_form).max(r.numeric),
                Err(e) => return (false, f64::NAN, Some(e.to_string())),
            }
        }
        (worst <= tol, worst, None)
    })
}

/// Runs every suite in a fixed order.
pub fn run_verify(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let len = (1usize << cfg.r_max).max(cfg.p_rows).max(9) + 1;
    let ct = ctilde_with_fault(len, cfg.fault);
    vec![
        check_tables(&ct),
        check_identities(&ct, cfg.r_max),
        check_p_table(&ct, cfg.p_rows),
        check_ue(&ue_grid(), cfg.ue_steps),
        check_squares(cfg.alpha_count, cfg.tol),
        check_symmetry(cfg.alpha_count.min(256), 1e-8),
        check_decay(),
        check_denseness(cfg.tol),
    ]
}

/// Fixed-width text table of outcomes.
pub fn summary_table(outcomes: &[CheckOutcome]) -> String {
    let mut s = format!("{:<20} {:<6} {:>12} {:>12}\n", "check", "status", "max_error", "runtime_ms");
    for o in outcomes {
        let _ = writeln!(
            s,
            "{:<20} {:<6} {:>12.3e} {:>12.1}",
            o.check,
            o.status.label(),
            o.max_error,
            o.runtime_ms
        );
        if let Some(d) = o.detail.as_ref().filter(|_| !o.passed()) {
            let _ = writeln!(s, "    {d}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_pass_and_fault_is_caught() {
        let ct = ctilde_with_fault(64, None);
        assert!(check_tables(&ct).passed());
        assert!(check_identities(&ct, 5).passed());
        let bad = ctilde_with_fault(64, Some(3));
        assert!(!check_tables(&bad).passed());
        let id = check_identities(&bad, 5);
        assert!(!id.passed());
        assert!(id.detail.unwrap().starts_with("r = 2 trace"));
    }

    #[test]
    fn p_table_small() {
        let ct = ctilde_with_fault(300, None);
        let o = check_p_table(&ct, 256);
        assert!(o.passed(), "{o:?}");
    }

    #[test]
    fn grids_have_expected_size() {
        assert_eq!(ue_grid().len(), 100);
        let g = decay_grid();
        assert_eq!(g.len(), 100);
        assert!(g.iter().all(|z| z.norm() <= 0.8 + 1e-12));
    }

    #[test]
    fn outcome_json_shape() {
        let o = check_decay();
        let j = serde_json::to_value(&o).unwrap();
        for key in ["check", "status", "max_error", "runtime_ms"] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["status"], "pass");
    }
}
