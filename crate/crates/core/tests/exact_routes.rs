use dwbc_core::exact::*;
use dwbc_core::lattice::*;
use dwbc_core::model::*;
use dwbc_core::numerics::{BigReal, PrecisionContext, Real};
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn critical_weights(alpha: &BigRational) -> VertexWeights<BigRational> {
    let half = q(1, 2);
    let one = q(1, 1);
    VertexWeights::exact((alpha - &one) * &half, (alpha + &one) * &half, one).unwrap()
}

#[test]
fn critical_route_matches_enumeration_exactly() {
    for alpha in [q(2, 1), q(3, 1), q(5, 3)] {
        let w = critical_weights(&alpha);
        for n in 1..=5 {
            let brute = partition_brute_exact(n, &w).unwrap();
            let op = zn_critical_exact(n, &alpha).unwrap().value;
            assert_eq!(brute, op, "alpha {alpha}, n {n}");
        }
    }
}

#[test]
fn enumeration_and_polynomial_agree() {
    let w = VertexWeights::new(0.7, 1.3, 1.1).unwrap();
    for n in 1..=5 {
        let e = enumerate(n, &w, true).unwrap();
        let p = partition_brute(n, &w).unwrap();
        assert!((e.partition_value - p).abs() <= 1e-12 * p);
        let ws = e.per_config_weights.unwrap();
        assert_eq!(ws.len() as u64, u64::try_from(&e.config_count).unwrap());
    }
}

#[test]
fn determinant_formula_matches_enumeration() {
    let ctx = PrecisionContext::default().with_tol(1e-14);
    for (t, g) in [(1.5, 0.5), (1.0, 0.3)] {
        let p = FerroParam::new(t, g).unwrap();
        for n in 1..=4 {
            let ik = zn_ik(n, &p, &ctx).unwrap();
            let brute = partition_brute(n, &p.weights()).unwrap();
            assert!((ik / brute - 1.0).abs() < 1e-9, "t {t} gamma {g} n {n}");
        }
    }
}

#[test]
fn discrete_route_agrees_at_high_precision() {
    let ctx = PrecisionContext::default();
    for (t, g) in [(1.5, 0.5), (2.0, 0.7)] {
        for n in 1..=5 {
            let z = zn_ferro(n, t, g, &ctx).unwrap().value;
            let bits = z.bits();
            let p = FerroParam::new(BigReal::from_f64(t, bits), BigReal::from_f64(g, bits)).unwrap();
            let brute = partition_brute(n, &p.weights().reduced()).unwrap();
            let rel = ((z / brute) - BigReal::from_f64(1.0, bits)).abs().to_f64();
            assert!(rel < 1e-30, "t {t} gamma {g} n {n}: {rel:e}");
        }
    }
}

#[test]
fn asm_counts_and_free_fermion_line() {
    let ones = VertexWeights::exact(q(1, 1), q(1, 1), q(1, 1)).unwrap();
    let counts: Vec<BigRational> = (1..=5).map(|n| partition_brute_exact(n, &ones).unwrap()).collect();
    assert_eq!(counts, [q(1, 1), q(2, 1), q(7, 1), q(42, 1), q(429, 1)]);
    // a² + b² = c² with a = 3/5, b = 4/5.
    let ff = VertexWeights::exact(q(3, 5), q(4, 5), q(1, 1)).unwrap();
    assert_eq!(classify_exact(&ff).phase, Phase::FreeFermion);
    for n in 1..=5 {
        assert_eq!(partition_brute_exact(n, &ff).unwrap(), q(1, 1), "n {n}");
    }
}

#[test]
fn configurations_are_asms() {
    for cfg in enumerate_configs(4).unwrap() {
        cfg.validate().unwrap();
        let m = cfg.to_asm();
        for row in &m {
            assert_eq!(row.iter().map(|&x| x as i32).sum::<i32>(), 1);
            let mut partial = 0;
            for &x in row {
                partial += x as i32;
                assert!((0..=1).contains(&partial));
            }
        }
        for j in 0..4 {
            assert_eq!(m.iter().map(|r| r[j] as i32).sum::<i32>(), 1);
        }
    }
}

#[test]
fn ground_state_dominates_beyond_the_critical_line() {
    let w = critical_weights(&q(3, 1));
    for n in 2..=5 {
        let gs = ground_state(n);
        let p = gibbs_probability_exact(&gs, &w).unwrap();
        let best = enumerate_configs(n).unwrap().map(|c| c.weight_exact(&w)).max().unwrap();
        assert_eq!(gs.weight_exact(&w), best);
        assert!(p > q(0, 1) && p < q(1, 1));
    }
}

#[test]
fn norms_pass_to_the_critical_limit() {
    let ctx = PrecisionContext::default();
    let alpha = 3.0;
    let seq: Vec<(f64, f64)> = [0.02, 0.01, 0.005].iter().map(|&g| (alpha * g, g)).collect();
    let errs = scaling_limit_check(3, alpha, &seq, &ctx).unwrap();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
}

#[test]
fn real_and_exact_norms_agree() {
    let ctx = PrecisionContext::default();
    let exact = norms_critical_exact(20, &q(2, 1)).unwrap();
    let real = norms_critical_real(20, 2.0, &ctx).unwrap();
    for k in [0, 5, 19] {
        let l_exact = ln_scaled_exact(&exact, k, 128);
        let l_real = real.scaled[k].ln().to_f64();
        assert!((l_exact - l_real).abs() < 1e-14, "k {k}");
    }
}
