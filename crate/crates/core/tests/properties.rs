use heunwell::heun::{check_termination, paper_potential, reduce_to_two_term, HermiteSeries};
use heunwell::oracle::{highprec_hermite, qpoly_determinant, qpoly_numeric_determinant};
use heunwell::specfun::{gamma, hermite_h, kummer_m};
use heunwell::spectrum::{a_of_energy, energy_of_a, find_roots, PhysicalSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn h(nu: f64, z: f64) -> f64 {
    hermite_h(nu, z).unwrap().value
}

fn well() -> impl Strategy<Value = PhysicalSystem> {
    (0.3f64..3.0, 0.3f64..3.0, -2.0f64..2.0, -3.0f64..-0.2)
        .prop_map(|(m, hbar, v0, v1)| PhysicalSystem { m, hbar, v0, v1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_three_term_recurrence(nu in 1.0f64..10.0, z in -5.0f64..5.0) {
        let (hp, h0, hm) = (h(nu + 1.0, z), h(nu, z), h(nu - 1.0, z));
        let terms = [hp.abs(), (2.0 * z * h0).abs(), (2.0 * nu * hm).abs()];
        let scale = terms.iter().cloned().fold(0.0, f64::max);
        prop_assert!((hp - 2.0 * z * h0 + 2.0 * nu * hm).abs() <= 1e-11 * scale);
    }

    #[test]
    fn hermite_matches_extended_precision(nu in 0.0f64..10.0, z in -6.0f64..6.0) {
        let reference = highprec_hermite(nu, z, 24).unwrap().to_f64();
        // envelope from the neighbouring order keeps the bound meaningful near zeros
        let below = highprec_hermite(nu - 1.0, z, 24).unwrap().to_f64();
        let envelope = reference.abs().max((2.0 * nu).sqrt() * below.abs());
        prop_assert!((h(nu, z) - reference).abs() <= 1e-10 * envelope, "{} vs {}", h(nu, z), reference);
    }

    #[test]
    fn integer_orders_are_the_hermite_polynomials(z in -6.0f64..6.0) {
        let mut p = [1.0, 2.0 * z, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for n in 1..7 {
            p[n + 1] = 2.0 * z * p[n] - 2.0 * n as f64 * p[n - 1];
        }
        for (n, want) in p.iter().enumerate() {
            prop_assert!((h(n as f64, z) - want).abs() <= 1e-12 * (1.0 + want.abs()) * 10f64.powi(n as i32 / 2));
        }
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        let g0 = gamma(x).unwrap().value;
        let g1 = gamma(x + 1.0).unwrap().value;
        prop_assert!((g1 / (x * g0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn kummer_transformation(a in -4.0f64..4.0, b in 0.3f64..4.0, z in -8.0f64..8.0) {
        let lhs = kummer_m(a, b, z).unwrap();
        let rhs = kummer_m(b - a, b, -z).unwrap().value * z.exp();
        let tol = 1e-10 * (lhs.value.abs() + lhs.abs_error_estimate * 1e4).max(1e-300);
        prop_assert!((lhs.value - rhs).abs() <= tol.max(1e-10 * rhs.abs()), "{} vs {}", lhs.value, rhs);
    }

    #[test]
    fn energy_parameter_round_trip(sys in well(), a in 0.6f64..40.0) {
        let e = energy_of_a(&sys, a).unwrap();
        prop_assert!(e < sys.v0);
        prop_assert!((a_of_energy(&sys, e).unwrap() / a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_term_form_equals_the_series(
        coeffs in prop::collection::vec(-2.0f64..2.0, 2..6),
        base in 0.1f64..3.0,
        zeta in -3.0f64..3.0,
        pivot_seed in 0usize..16,
    ) {
        let series = HermiteSeries { coeffs: coeffs.clone(), base_order: base, arg_scale: 1.0, arg_shift: 0.0 };
        let pivot = pivot_seed % (coeffs.len() - 1);
        let t = reduce_to_two_term(&series, pivot).unwrap();
        let direct: f64 = coeffs.iter().enumerate().map(|(n, c)| c * h(base + n as f64, zeta)).sum();
        let scale: f64 = coeffs.iter().enumerate().map(|(n, c)| (c * h(base + n as f64, zeta)).abs()).sum();
        prop_assert!((t.value(zeta).unwrap() - direct).abs() <= 1e-9 * scale.max(1e-12));
        prop_assert!((series.sum_at(zeta).unwrap() - direct).abs() <= 1e-12 * scale.max(1e-12));
    }

    #[test]
    fn symbolic_and_numeric_determinants_agree(
        n in 0usize..=6,
        q in (-40i64..40, 1i64..9),
        d in (-40i64..40, 1i64..9),
        e in (-40i64..40, 1i64..9),
        a in (-40i64..40, 1i64..9),
    ) {
        let r = |(p, s): (i64, i64)| BigRational::new(BigInt::from(p), BigInt::from(s));
        let (q, d, e, a) = (r(q), r(d), r(e), r(a));
        let sym = qpoly_determinant(n).unwrap().eval_rational([&q, &d, &e, &a]);
        prop_assert_eq!(sym, qpoly_numeric_determinant(n, &q, &d, &e, &a).unwrap());
    }

    #[test]
    fn well_terminates_at_order_four_for_every_energy(sys in well(), depth in 0.01f64..5.0) {
        let pot = paper_potential(sys.v0, sys.v1, sys.m, sys.hbar);
        let r = check_termination(&pot, sys.v0 - depth, 4, sys.m, sys.hbar).unwrap();
        prop_assert!(r.terminates, "{r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// a_n is universal; E_n follows from E = V0 − K a^{-2/3}.
    #[test]
    fn roots_do_not_depend_on_units(sys in well()) {
        let base = find_roots(&PhysicalSystem::default(), 4).unwrap();
        let levels = find_roots(&sys, 4).unwrap();
        for (b, l) in base.iter().zip(&levels) {
            prop_assert!((l.a_n / b.a_n - 1.0).abs() < 1e-11);
            prop_assert!((l.energy - energy_of_a(&sys, b.a_n).unwrap()).abs() < 1e-11 * (sys.v0 - l.energy));
        }
        prop_assert!(levels.windows(2).all(|w| w[0].energy < w[1].energy));
    }
}
