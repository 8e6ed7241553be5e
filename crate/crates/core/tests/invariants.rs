use dwbc_core::lattice::*;
use dwbc_core::model::*;
use dwbc_core::numerics::zeta::zeta_partial_sum;
use dwbc_core::numerics::*;
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::default().with_tol(1e-12)
}

fn integral(f: impl FnMut(&f64) -> f64) -> f64 {
    integrate_singular(f, &0.0, Upper::Finite(1.0), (Endpoint::Power(-0.5), Endpoint::Smooth), &ctx()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, s in 0.5f64..4.0) {
        let f = |x: &f64| libm::exp(-s * x) / libm::sqrt(*x);
        let g = |x: &f64| libm::cos(s * x) / libm::sqrt(*x);
        let lhs = integral(|x| a * f(x) + b * g(x));
        let rhs = a * integral(f) + b * integral(g);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn phase_is_scale_invariant(a in 0.05f64..4.0, b in 0.05f64..4.0, c in 0.05f64..4.0, s in 0.01f64..100.0) {
        let w = VertexWeights::new(a, b, c).unwrap();
        let p = classify(&w);
        let q = classify(&w.scaled(&s));
        prop_assert_eq!(p.phase, q.phase);
        prop_assert!((p.delta - q.delta).abs() <= 1e-12 * (1.0 + p.delta.abs()));
    }

    #[test]
    fn ferroelectric_delta_is_cosh(gamma in 0.05f64..2.0, extra in 0.05f64..2.0) {
        let p = FerroParam::new(gamma + extra, gamma).unwrap();
        let d = delta_of(&p.weights());
        prop_assert!((d - libm::cosh(2.0 * gamma)).abs() <= 1e-11 * d);
        prop_assert_eq!(ferro_reduced(&p).unwrap().phase, Phase::Ferroelectric);
    }

    #[test]
    fn disordered_delta_is_cos(gamma in 0.1f64..1.5, frac in -0.95f64..0.95) {
        let t = frac * gamma;
        let w = disordered_weights(&t, &gamma).unwrap();
        let d = delta_of(&w);
        prop_assert!((d + libm::cos(2.0 * gamma)).abs() <= 1e-12);
    }

    #[test]
    fn gibbs_measure_sums_to_one(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..3.0) {
        let w = VertexWeights::new(a, b, c).unwrap();
        let z = partition_brute(3, &w).unwrap();
        let total: f64 = enumerate_configs(3).unwrap().map(|cfg| cfg.weight(&w) / z).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_partial_sums_increase_below_the_limit(m in 1usize..200) {
        let lo = zeta_partial_sum(m, 64).to_f64();
        let hi = zeta_partial_sum(m + 1, 64).to_f64();
        prop_assert!(lo < hi && hi < 2.612_375_348_685_489);
    }

    #[test]
    fn contour_deforms_freely(r1 in 1.5f64..3.0, r2 in 1.5f64..3.0, x in -0.9f64..0.9) {
        // Poles at x and 1/2 lie inside both circles; nothing lies between them.
        let f = |z: &Complex<f64>| {
            let e = z.exp();
            e / ((z.clone() - Complex::real(x)) * (z.clone() - Complex::real(0.5)))
        };
        let c1 = Circle { center: Complex::real(0.0), radius: r1 };
        let c2 = Circle { center: Complex::real(0.0), radius: r2 };
        let a = contour_integral(f, &c1, &ctx()).unwrap();
        let b = contour_integral(f, &c2, &ctx()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn unit_circle_residue() {
    let c = Circle { center: Complex::real(0.0), radius: 1.0 };
    let v = contour_integral(|z: &Complex<f64>| z.recip(), &c, &ctx()).unwrap();
    assert!((v.im - 2.0 * core::f64::consts::PI).abs() < 1e-12 && v.re.abs() < 1e-12);
}

#[test]
fn weight_polynomial_counts_configurations() {
    for n in 1..=6 {
        let p = WeightPolynomial::of_size(n).unwrap();
        let ones = VertexWeights::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.eval(&ones), u64::try_from(&p.config_count()).unwrap() as f64);
    }
}
