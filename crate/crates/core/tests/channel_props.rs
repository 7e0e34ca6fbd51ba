use bgc_core::channels::*;
use bgc_core::symplectic::CovarianceMatrix;
use proptest::prelude::*;

fn pi_params() -> impl Strategy<Value = PhaseInsensitiveParams> {
    prop_oneof![
        (0.01..0.99f64, 0.0..5.0f64).prop_map(|(e, n)| PhaseInsensitiveParams::attenuator(e, n).unwrap()),
        (1.01..5.0f64, 0.0..5.0f64).prop_map(|(g, n)| PhaseInsensitiveParams::amplifier(g, n).unwrap()),
        (0.1..20.0f64).prop_map(|b| PhaseInsensitiveParams::additive(b).unwrap()),
    ]
}

fn diff(a: &GaussianChannel, b: &GaussianChannel) -> f64 {
    (a.x() - b.x()).amax().max((a.y() - b.y()).amax())
}

proptest! {
    #[test]
    fn composition_is_associative(a in pi_params(), b in pi_params(), c in pi_params()) {
        let (a, b, c) = (
            from_phase_insensitive(&a).unwrap(),
            from_phase_insensitive(&b).unwrap(),
            from_phase_insensitive(&c).unwrap(),
        );
        let left = compose(&c, &compose(&b, &a).unwrap()).unwrap();
        let right = compose(&compose(&c, &b).unwrap(), &a).unwrap();
        prop_assert!(diff(&left, &right) <= 1e-10 * left.y().amax().max(1.0));
    }

    #[test]
    fn parameter_algebra_matches_moment_maps(a in pi_params(), b in pi_params()) {
        let algebra = a.then(&b).unwrap();
        let matrices = compose(&from_phase_insensitive(&b).unwrap(), &from_phase_insensitive(&a).unwrap()).unwrap();
        let read = to_phase_insensitive(&matrices).unwrap();
        prop_assert!((read.tau() - algebra.tau()).abs() <= 1e-12 * algebra.tau().max(1.0));
        prop_assert!((read.y() - algebra.y()).abs() <= 1e-12 * algebra.y().max(1.0));
        // composition of CP maps stays CP
        prop_assert!(algebra.y() >= (1.0 - algebra.tau()).abs() - 1e-12);
    }

    #[test]
    fn outputs_of_physical_inputs_are_physical(p in pi_params(), m in 0.0..100.0f64) {
        let ch = from_phase_insensitive(&p).unwrap();
        let out = ch.apply_cov(&CovarianceMatrix::thermal(m).unwrap()).unwrap();
        prop_assert!(out.certify().is_ok());
    }

    #[test]
    fn extended_attenuator_degrades(eta in 0.5001..0.9999f64, n in 0.0..5.0f64) {
        let f = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta, n }).unwrap();
        let d = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta: (1.0 - eta) / eta, n }).unwrap();
        let c = complementary(&f).unwrap();
        prop_assert!(diff(&compose(&d, &f).unwrap(), &c) <= 1e-12);
    }

    #[test]
    fn sub_minimal_noise_is_rejected(tau in 0.01..5.0f64, frac in 0.0..0.99f64) {
        prop_assume!((1.0 - tau).abs() > 1e-3);
        let y = frac * (1.0 - tau).abs();
        prop_assert!(PhaseInsensitiveParams::new(tau, y).is_err());
    }
}
