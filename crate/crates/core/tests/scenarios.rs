use std::f64::consts::FRAC_PI_6;

use twoqubit::*;

fn all_specs() -> [ScenarioSpec; 4] {
    [
        ScenarioSpec::CLASS1,
        ScenarioSpec::Class2,
        ScenarioSpec::CLASS3,
        ScenarioSpec::Entangled { p: 0.7 },
    ]
}

#[test]
fn every_grid_point_is_a_valid_state_with_constant_purity() {
    let cfg = SweepConfig::default();
    for spec in all_specs() {
        let st0 = initial_state(&spec).unwrap();
        let p0 = st0.purity();
        for t in cfg.times().into_iter().step_by(7) {
            let st = evolve(&st0, &cfg.params, t).unwrap();
            assert!(validate(&st).valid, "{spec:?} t={t}");
            assert!((st.purity() - p0).abs() < 1e-10);
        }
    }
}

#[test]
fn class1_purity_swap_identity() {
    let cfg = SweepConfig::default();
    let a = FRAC_PI_6;
    for r in sweep(&ScenarioSpec::CLASS1, &cfg).unwrap() {
        let (c, s) = ((2.0 * r.t * a).cos(), (2.0 * r.t * a).sin());
        assert!((r.measures.purity_a - 0.5 * (1.0 + c * c * c * c)).abs() < 1e-9);
        assert!((r.measures.purity_b - 0.5 * (1.0 + s * s * s * s)).abs() < 1e-9);
    }
    assert_eq!(
        sweep(&ScenarioSpec::CLASS1, &cfg).unwrap()[0].measures.doe,
        0.0
    );
}

#[test]
fn pure_families_keep_marginal_entropies_equal() {
    let cfg = SweepConfig::default();
    for spec in [
        ScenarioSpec::Class2,
        ScenarioSpec::Entangled { p: 0.7 },
        ScenarioSpec::Entangled { p: 0.2 },
    ] {
        for r in sweep(&spec, &cfg).unwrap() {
            assert!((r.measures.entropy_a - r.measures.entropy_b).abs() < 1e-9);
        }
    }
}

#[test]
fn records_repeat_after_three_time_units() {
    let cfg = SweepConfig::default();
    for spec in all_specs() {
        let records = sweep(&spec, &cfg).unwrap();
        for k in 0..=300 {
            assert!(
                records[k].max_abs_diff(&records[k + 300]) < 1e-9,
                "{spec:?} k={k}"
            );
        }
    }
}

#[test]
fn sweep_matches_pointwise_evaluation() {
    let cfg = SweepConfig::new(CouplingParams::new(0.2, 0.45, -0.3), -1.0, 2.0, 37).unwrap();
    let spec = ScenarioSpec::CLASS3;
    let st0 = initial_state(&spec).unwrap();
    let records = sweep(&spec, &cfg).unwrap();
    for (k, r) in records.iter().enumerate() {
        assert_eq!(*r, record_at(&st0, &cfg.params, cfg.time_at(k)).unwrap());
    }
    assert_eq!(records, sweep(&spec, &cfg).unwrap());
}

#[test]
fn singlet_is_stationary() {
    let cfg = SweepConfig::default();
    for r in sweep(&ScenarioSpec::Entangled { p: 0.0 }, &cfg).unwrap() {
        assert!((r.measures.doe - 1.0).abs() < 1e-9);
        assert!(r.s_tilde.norm() < 1e-12 && r.t_tilde.norm() < 1e-12);
    }
}

#[test]
fn entangled_closed_form_tracks_numeric_for_many_p() {
    let cfg = SweepConfig::default();
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let spec = ScenarioSpec::Entangled { p };
        for r in sweep(&spec, &cfg).unwrap().iter().step_by(5) {
            let (a, b) = reduced_entangled_analytic(p, &cfg.params, r.t);
            assert!(a.v.max_abs_diff(r.s_tilde) < 1e-9);
            assert!(b.v.max_abs_diff(r.t_tilde) < 1e-9);
        }
    }
}
