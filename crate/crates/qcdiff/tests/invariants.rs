//! Property tests for the structural invariants: monotone lifts, quotient
//! positivity, inversion/composition round trips, certified-bound plumbing
//! and the explicit constants.

use approx::assert_abs_diff_eq;
use num_complex::Complex64 as C;
use proptest::prelude::*;

use qcdiff::certify::{decomposition_bound, theorem_decay_bound, CertBound};
use qcdiff::{choose_lambda, compose, invert, qsq, recurrence, trig_family};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lift_is_monotone_and_periodic(a in -0.9f64..0.9, x in -2.0f64..2.0) {
        let g = trig_family(a).unwrap();
        prop_assert!(g.deriv(x) > 0.0);
        assert_abs_diff_eq!(g.eval(x + 1.0), g.eval(x) + 1.0, epsilon = 1e-12);
    }

    #[test]
    fn quotient_is_positive_and_reciprocal_under_reflection(
        a in -0.5f64..0.5, x in 0.0f64..1.0, t in 1e-6f64..0.49,
    ) {
        let g = trig_family(a).unwrap();
        let m = qsq(&g, x, t);
        prop_assert!(m > 0.0);
        // the one-harmonic lift is odd, so the quotient at -x is 1/m
        let m_ref = qsq(&g, -x, t);
        assert_abs_diff_eq!(m * m_ref, 1.0, epsilon = 1e-9 * (1.0 + m * m));
    }

    #[test]
    fn exact_difference_matches_plain_difference(
        a in -0.9f64..0.9, x in -1.0f64..1.0, t in -0.5f64..0.5,
    ) {
        let g = trig_family(a).unwrap();
        assert_abs_diff_eq!(
            g.eval_diff(x, t),
            g.eval(x + t) - g.eval(x),
            epsilon = 1e-12
        );
    }

    #[test]
    fn inversion_round_trips(a in -0.8f64..0.8, x in -1.0f64..1.0) {
        let g = trig_family(a).unwrap();
        let gi = invert(&g);
        assert_abs_diff_eq!(gi.eval(g.eval(x)), x, epsilon = 1e-10);
        // chain rule at the round trip point
        assert_abs_diff_eq!(
            compose(&gi, &g).deriv(x),
            1.0,
            epsilon = 1e-8
        );
    }

    #[test]
    fn cert_bound_pass_is_margin_predicate(
        bound in -10.0f64..10.0, measured in -10.0f64..10.0, tol in 0.0f64..1.0,
    ) {
        let up = CertBound::upper("u", String::new(), bound, measured, tol);
        prop_assert_eq!(up.pass, bound - measured >= -tol);
        let lo = CertBound::lower("l", String::new(), bound, measured, tol);
        prop_assert_eq!(lo.pass, measured - bound >= -tol);
    }

    #[test]
    fn lambda_choice_sits_between_threshold_and_one(alpha in 0.01f64..0.99) {
        let lc = choose_lambda(alpha);
        prop_assert!(0.5 < lc.threshold && lc.threshold < 1.0);
        prop_assert!(lc.threshold < lc.lambda && lc.lambda < 1.0);
    }

    #[test]
    fn recurrence_above_threshold_increases(alpha in 0.1f64..0.9) {
        let tr = recurrence(alpha, choose_lambda(alpha).lambda, 64);
        prop_assert!(tr.strictly_increasing);
        // and the first step matches the closed form (2 lambda)^{1/alpha}
        assert_abs_diff_eq!(
            tr.log_s[1],
            (2.0 * choose_lambda(alpha).lambda).ln() / alpha,
            epsilon = 1e-12
        );
    }

    #[test]
    fn decay_bound_is_monotone_in_ell_and_t(
        ell in 0.0f64..1.0, alpha in 0.1f64..0.9, t in 1e-4f64..0.5,
    ) {
        let v = theorem_decay_bound(ell, alpha, t);
        prop_assert!(v >= 0.0);
        prop_assert!(theorem_decay_bound(ell * 0.5, alpha, t) <= v + 1e-15);
        // t^alpha / (t + 2) increases only up to t = 2 alpha / (1 - alpha)
        if t <= 2.0 * alpha / (1.0 - alpha) {
            prop_assert!(theorem_decay_bound(ell, alpha, t * 0.5) <= v + 1e-15);
        }
    }

    #[test]
    fn decomposition_bound_monotone_in_k(
        k in 0.0f64..0.9, r in 1.1f64..5.0, th in 0.0f64..6.28,
    ) {
        let z = C::from_polar(r, th);
        let lo = decomposition_bound(&[1.0, 0.5, 0.0], &[k * 0.5, k * 0.5], z).unwrap();
        let hi = decomposition_bound(&[1.0, 0.5, 0.0], &[k, k], z).unwrap();
        prop_assert!(lo <= hi + 1e-15);
        prop_assert!(hi >= 0.0);
    }
}
