use proptest::prelude::*;
use signaling::certifier::{ml_sum, ReplacerKind, ReplacerSpec};
use signaling::quantum::{
    induced_channel, make_replacer, standard_setup, CMatrix, QuantumSetup, SetupKind, C64, DEFAULT_RATIONALIZE_TOL,
};
use signaling::rational::{frac, int};
use signaling::sampling::{random_identity_setup, random_pure_state, seeded};
use signaling::Error;

#[test]
fn erasure_guessing_score() {
    // sum over basis inputs of the probability of the correct answer is d mu,
    // and the flag row adds (1 - mu)
    for d in 2..=4 {
        for t in 0..=4 {
            let mu = frac(t, 4);
            let p =
                induced_channel(&standard_setup(SetupKind::Erasure, &mu, d).unwrap(), DEFAULT_RATIONALIZE_TOL).unwrap();
            let diagonal: signaling::Rational = (0..d).map(|i| p.get(i, i).clone()).sum();
            assert_eq!(diagonal, &mu * int(d as i64));
            assert_eq!(ml_sum(&p), &mu * int(d as i64) + int(1) - &mu);
        }
    }
}

#[test]
fn dimension_mismatch() {
    let setup = standard_setup(SetupKind::Identity, &int(1), 2).unwrap();
    let wrong = standard_setup(SetupKind::Identity, &int(1), 3).unwrap();
    assert!(matches!(
        QuantumSetup::new(setup.states.clone(), wrong.povm, setup.channel.clone()),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(standard_setup(SetupKind::Erasure, &frac(1, 2), 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn replacers_are_trace_preserving(num in 0i64..=12, d in 2usize..5, erasure in any::<bool>()) {
        let kind = if erasure { ReplacerKind::Erasure } else { ReplacerKind::Depolarizing };
        let channel = make_replacer(&ReplacerSpec::new(frac(num, 12), d, kind).unwrap()).unwrap();
        let mut total = CMatrix::zeros(d, d);
        for k in channel.kraus() {
            total += k.adjoint() * k;
        }
        let err = (total - CMatrix::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-12);
    }

    #[test]
    fn outputs_are_states(seed in any::<u64>(), num in 0i64..=8, d in 2usize..4) {
        let channel = make_replacer(&ReplacerSpec::new(frac(num, 8), d, ReplacerKind::Depolarizing).unwrap()).unwrap();
        let rho = random_pure_state(&mut seeded(seed), d);
        let out = channel.apply(rho.entries()).unwrap();
        prop_assert!((out.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
        let adj = channel.apply_adjoint(&CMatrix::identity(d, d)).unwrap();
        prop_assert!((adj - CMatrix::identity(d, d)).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn identity_setups_respect_the_ml_bound(seed in any::<u64>(), d in 2usize..4) {
        let setup = random_identity_setup(&mut seeded(seed), d);
        let p = induced_channel(&setup, DEFAULT_RATIONALIZE_TOL).unwrap();
        prop_assert!(ml_sum(&p) <= int(d as i64));
    }

    #[test]
    fn setup_json_round_trip(seed in any::<u64>()) {
        let setup = random_identity_setup(&mut seeded(seed), 2);
        let back = QuantumSetup::from_json(&setup.to_json()).unwrap();
        prop_assert_eq!(
            induced_channel(&back, DEFAULT_RATIONALIZE_TOL).unwrap(),
            induced_channel(&setup, DEFAULT_RATIONALIZE_TOL).unwrap()
        );
    }
}
