use bgc_core::bounds::*;
use bgc_core::channels::*;
use bgc_core::symplectic::bosonic_entropy_h;
use proptest::prelude::*;

fn oracle_flagged(beta: f64, m: f64) -> f64 {
    let c = make_channel(ChannelFamily::FlaggedAdditive { beta }).unwrap();
    coherent_info_at(&c, &OracleStrategy::PurifiedReference, m).unwrap()
}

fn oracle_extended(eta: f64, n: f64) -> CoherentInfoEstimate {
    let c = make_channel(ChannelFamily::ExtendedAttenuator { eta, n }).unwrap();
    let s = OracleStrategy::Complement(complementary(&c).unwrap());
    coherent_info_thermal(&c, &s, DEFAULT_MEAN_PHOTONS).unwrap()
}

#[test]
fn flagged_closed_form_matches_oracle() {
    for beta in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let c = make_channel(ChannelFamily::FlaggedAdditive { beta }).unwrap();
        let est = coherent_info_thermal(&c, &OracleStrategy::PurifiedReference, 1e6).unwrap();
        assert!(
            (est.value - flagged_additive_capacity(beta)).abs() <= 1e-4,
            "beta {beta}"
        );
        assert!(est.convergence_gap < 1e-3);
    }
}

#[test]
fn extended_attenuator_closed_form_matches_oracle() {
    for eta in [0.6, 0.8, 0.95] {
        for n in [0.05, 1.0] {
            let est = oracle_extended(eta, n);
            assert!(
                (est.value - extended_attenuator_capacity(eta, n)).abs() <= 1e-4,
                "{eta} {n}"
            );
        }
    }
}

#[test]
fn identity_oracle_is_thermal_entropy() {
    let id = GaussianChannel::identity(1);
    for m in [1.0, 10.0, 1e4] {
        let v = coherent_info_at(&id, &OracleStrategy::PurifiedReference, m).unwrap();
        assert!((v - bosonic_entropy_h(2.0 * m + 1.0).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn pure_loss_collapses_to_known_capacity() {
    for eta in [0.55, 0.7, 0.9, 0.99] {
        let r = bounds_attenuator(eta, 0.0).unwrap();
        let q = (eta / (1.0 - eta)).log2();
        for name in [BoundName::Extension, BoundName::Rosati, BoundName::Lower] {
            assert!((r.raw(name).unwrap() - q).abs() <= 1e-12, "{name}");
        }
    }
    for g in [1.1, 2.0, 7.0] {
        let r = bounds_amplifier(g, 0.0).unwrap();
        let q = (g / (g - 1.0)).log2();
        assert!((r.raw(BoundName::AmPlob).unwrap() - q).abs() <= 1e-12);
        assert!((r.raw(BoundName::Lower).unwrap() - q).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flagged_oracle_increases_with_energy(beta in 0.2..20.0f64, m in 1.0..1e4f64) {
        prop_assert!(oracle_flagged(beta, 10.0 * m) >= oracle_flagged(beta, m) - 1e-9);
    }

    #[test]
    fn additive_sandwich(beta in 0.05..100.0f64) {
        let r = bounds_additive(beta).unwrap();
        prop_assert!(r.lower() <= r.combined() + 1e-12);
        let min_upper = r.entries().iter().filter(|e| e.name.is_upper() && e.name != BoundName::Combined)
            .filter_map(|e| e.clamped()).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(r.combined(), min_upper);
    }

    #[test]
    fn amplifier_sandwich(g in 1.001..10.0f64, n in 0.0..20.0f64) {
        let r = bounds_amplifier(g, n).unwrap();
        prop_assert!(r.lower() <= r.combined() + 1e-12);
    }

    #[test]
    fn attenuator_sandwich(eta in 0.01..0.999f64, n in 0.0..20.0f64) {
        let r = bounds_attenuator(eta, n).unwrap();
        prop_assert!(r.lower() <= r.combined() + 1e-12);
        if let Some(ext) = r.clamped(BoundName::Extension) {
            prop_assert!(r.lower() <= ext + 1e-12);
        }
    }

    #[test]
    fn decomposition_never_loosens(eta in 0.5..0.99f64, n in 0.0..2.0f64) {
        let t = PhaseInsensitiveParams::attenuator(eta, n).unwrap();
        let d = combined_decomposition_bound(&t, 60).unwrap();
        let direct = bounds_attenuator(eta, n).unwrap();
        prop_assert!(d.value <= direct.combined() + 1e-12);
        prop_assert!(d.value >= direct.lower() - 1e-9);
        if let Some(second) = d.witness.second {
            let back = d.witness.first.then(&second).unwrap();
            prop_assert!((back.tau() - t.tau()).abs() <= 1e-10);
            prop_assert!((back.y() - t.y()).abs() <= 1e-10);
        }
    }
}
