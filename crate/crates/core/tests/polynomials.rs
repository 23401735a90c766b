use hopspec::polyalg::*;
use hopspec::seqcore::{c_tilde_prefix, SignWord};
use hopspec::transfer::trace_det;
use hopspec::Complex64;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn parity_of_u_and_v() {
    let (u, v) = uv_polys(300).unwrap();
    for m in 1..=300 {
        assert!(u[m].has_parity((m + 1) % 2), "u_{m} = {}", u[m]);
        if m >= 2 {
            // v_m has the parity of m, so tr(T_m) = v_m + u_{m+1} is even for even m
            assert!(v[m].has_parity(m % 2), "v_{m} = {}", v[m]);
            assert_eq!(v[m].degree(), Some(m - 2));
        }
        if m >= 2 {
            assert_eq!(u[m].degree(), Some(m - 1));
        }
    }
}

#[test]
fn u_coefficients_stay_in_minus_one_to_one() {
    let one = BigInt::from(1);
    for term in UvRecurrence::standard(4096) {
        if term.n > 4096 {
            break;
        }
        assert!(term.u.max_abs_coeff() <= one, "u_{}", term.n);
    }
}

#[test]
fn coefficient_rules_match_recurrence() {
    let table = p_table(4096).unwrap();
    for term in UvRecurrence::standard(4096).take(4097) {
        assert_eq!(table.poly(term.n), term.u, "row {}", term.n);
    }
}

#[test]
fn determinant_telescopes() {
    let (u, v) = uv_polys(129).unwrap();
    let det = |m: usize| &(&v[m] * &u[m + 1]) - &(&u[m] * &v[m + 1]);
    for m in 1..=64 {
        assert_eq!(det(2 * m), det(m), "m = {m}");
    }
    let ct = c_tilde_prefix(128);
    for m in 1..=128 {
        let sign: i64 = ct[..m].iter().map(|&c| c as i64).product();
        assert_eq!(det(m), IntPolynomial::constant(sign), "m = {m}");
    }
}

#[test]
fn identities_up_to_degree_1024() {
    let rep = verify_identities(10).unwrap();
    assert!(rep.passed(), "{:?}", rep.first_failure());
    assert_eq!(rep.results.len(), 40);
}

#[test]
fn flipped_sign_breaks_the_trace_identity_at_r2() {
    let mut ct = c_tilde_prefix(64);
    ct[2] = -ct[2];
    let rep = verify_identities_with(&ct, 5);
    let f = rep.first_failure().unwrap();
    assert_eq!((f.r, f.kind), (2, IdentityKind::Trace));
    assert!(f.detail.as_ref().unwrap().contains("coefficient"));
}

proptest! {
    #[test]
    fn trace_poly_matches_transfer_matrix(n in 1usize..=40, r in 0.0f64..1.5, t in 0.0f64..6.3) {
        let l = Complex64::from_polar(r, t);
        let poly = trace_poly(n).unwrap().eval_at(l);
        let ct = c_tilde_prefix(n);
        let w = SignWord::from_one_based(&ct, 1.0).unwrap();
        let tau = trace_det(&w, l).tau;
        prop_assert!((poly - tau).norm() <= 1e-10 * tau.norm().max(1.0), "{} vs {}", poly, tau);
    }

    #[test]
    fn ring_laws(a in prop::collection::vec(-5i64..5, 0..8), b in prop::collection::vec(-5i64..5, 0..8), c in prop::collection::vec(-5i64..5, 0..8)) {
        let (a, b, c) = (IntPolynomial::from_i64s(&a), IntPolynomial::from_i64s(&b), IntPolynomial::from_i64s(&c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let z = Complex64::new(0.3, -0.7);
        prop_assert!(((&a * &b).eval_at(z) - a.eval_at(z) * b.eval_at(z)).norm() < 1e-9);
    }
}
