use bgc_core::verify::*;

#[test]
fn covariance_reproductions() {
    for (beta, m) in [(1.0, 1.0), (2.0, 3.0), (0.7, 0.0)] {
        let o = check_classical_mixing_representation(beta, m);
        assert!(o.passed, "{o:?}");
    }
    assert!(check_purified_flag_covariance(1.0, 2.0).passed);
    assert!(check_purified_flag_covariance(3.0, 10.0).passed);
    assert!(check_extended_attenuator_covariance(0.7, 0.05, 3.0).passed);
    assert!(check_extended_attenuator_covariance(0.3, 2.0, 0.0).passed);
}

#[test]
fn spectrum_asymptotics_across_parameters() {
    for case in [
        AsymptoticCase::Flagged { beta: 0.5 },
        AsymptoticCase::Flagged { beta: 4.0 },
        AsymptoticCase::FlaggedPurified { beta: 2.0 },
        AsymptoticCase::ExtendedAttenuator { eta: 0.6, n: 1.0 },
    ] {
        let o = check_spectrum_asymptotics(case, &M_LADDER);
        assert!(o.passed, "{o:?}");
    }
    assert!(!check_spectrum_asymptotics(AsymptoticCase::Flagged { beta: 1.0 }, &[1e4, 1e3]).applicable);
}

#[test]
fn seeds_change_samples_not_verdicts() {
    let a = run_suite(&SuiteConfig {
        seed: 1,
        ..SuiteConfig::default()
    });
    let b = run_suite(&SuiteConfig {
        seed: 2,
        ..SuiteConfig::default()
    });
    assert!(a.iter().chain(&b).all(|o| o.passed));
    let names: Vec<_> = a.iter().map(|o| &o.name).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}
