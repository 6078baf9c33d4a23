use kuramotoq::classical::{
    simulate_stationary_r, step_massless, EnsembleState, InitialCondition, SimConfig, SimModel,
};
use kuramotoq::numerics::RngHandle;
use kuramotoq::FrequencyDistribution;
use proptest::prelude::*;

fn lorentz() -> FrequencyDistribution {
    FrequencyDistribution::lorentzian(1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn stepping_keeps_r_bounded_and_frequencies_fixed(seed in any::<u64>(), n in 2usize..64, j in 0.0f64..12.0, noise in 0.0f64..3.0) {
        let mut rng = RngHandle::new(seed);
        let mut state = EnsembleState::sample(&lorentz(), n, &InitialCondition::UniformPhases, &mut rng.fork(0)).unwrap();
        let omega = state.omega().to_vec();
        for _ in 0..200 {
            step_massless(&mut state, j, noise, 0.01, &mut rng);
            let r = state.order_parameter().r;
            prop_assert!((0.0..=1.0).contains(&r));
        }
        prop_assert_eq!(state.omega(), &omega[..]);
    }
}

#[test]
fn halving_the_step_stays_within_the_error_bar() {
    let cfg = |dt: f64| SimConfig {
        dt,
        t_burn: 20.0,
        t_avg: 40.0,
        n_realizations: 8,
        initial: InitialCondition::UniformPhases,
    };
    let rng = RngHandle::new(2024);
    let coarse = simulate_stationary_r(&lorentz(), 6.0, 1.0, SimModel::Massless, 200, &cfg(0.02), &rng).unwrap();
    let fine = simulate_stationary_r(&lorentz(), 6.0, 1.0, SimModel::Massless, 200, &cfg(0.01), &rng).unwrap();
    let bar = coarse.r_stderr.max(fine.r_stderr);
    assert!(
        (coarse.r_mean - fine.r_mean).abs() < bar,
        "{} vs {} (stderr {bar})",
        coarse.r_mean,
        fine.r_mean
    );
}

#[test]
fn light_inertial_rotors_reproduce_the_massless_model() {
    let cfg = SimConfig {
        dt: 1e-4,
        t_burn: 15.0,
        t_avg: 25.0,
        n_realizations: 4,
        initial: InitialCondition::UniformPhases,
    };
    let rng = RngHandle::new(99);
    let massive = SimModel::Massive {
        mass: 1e-3,
        damping: 1e3,
    };
    let heavy = simulate_stationary_r(&lorentz(), 6.0, 1.0, massive, 200, &cfg, &rng).unwrap();
    let light = simulate_stationary_r(&lorentz(), 6.0, 1.0, SimModel::Massless, 200, &cfg, &rng).unwrap();
    let bar = heavy.r_stderr + light.r_stderr;
    assert!(
        (heavy.r_mean - light.r_mean).abs() < bar,
        "{} vs {} (combined stderr {bar})",
        heavy.r_mean,
        light.r_mean
    );
}

#[test]
fn runs_are_reproducible_and_thread_independent() {
    let cfg = SimConfig {
        dt: 0.01,
        t_burn: 5.0,
        t_avg: 5.0,
        n_realizations: 6,
        initial: InitialCondition::UniformPhases,
    };
    let rng = RngHandle::new(5);
    let a = simulate_stationary_r(&lorentz(), 3.0, 1.0, SimModel::Massless, 100, &cfg, &rng).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool
        .install(|| simulate_stationary_r(&lorentz(), 3.0, 1.0, SimModel::Massless, 100, &cfg, &rng))
        .unwrap();
    assert_eq!(a, b);
}
