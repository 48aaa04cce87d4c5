use phaseamb::ambiguity::{upper_bound, EnumConfig};
use phaseamb::io::{parse_intensity_input, parse_signal, to_json_string, IntensityInput};
use phaseamb::{
    autocorrelation, enumerate_solutions, enumerate_solutions_with, gen_unique, reconstruct_from_zeros,
    reflect, shift, verify_solution, zeros_of_signal, Complex64, Execution, GenMode, GenSpec, Signal,
    Tolerances,
};
use proptest::prelude::*;

/// Conjugate-closed zero sets, off the unit circle, with all roots of the
/// associated polynomial at least 0.1 apart.
fn zero_set(max: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.3f64..3.0, 0.0f64..std::f64::consts::PI, any::<bool>()), 1..=max).prop_filter_map(
        "separated, off the circle",
        |spec| {
            let mut zs = Vec::new();
            for (r, th, real) in spec {
                if real {
                    zs.push(Complex64::new(if th < 1.5 { r } else { -r }, 0.0));
                } else {
                    let z = Complex64::from_polar(r, th.clamp(0.2, std::f64::consts::PI - 0.2));
                    zs.push(z);
                    zs.push(z.conj());
                }
            }
            let all: Vec<Complex64> = zs.iter().flat_map(|&z| [z, 1.0 / z.conj()]).collect();
            let ok = zs.iter().all(|z| (z.norm() - 1.0).abs() > 0.05)
                && (0..all.len()).all(|i| (i + 1..all.len()).all(|j| (all[i] - all[j]).norm() >= 0.1));
            ok.then_some(zs)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_class_shares_the_intensity(zs in zero_set(6)) {
        let x = reconstruct_from_zeros(&zs, 1.0).unwrap();
        let a = autocorrelation(&x);
        let r = enumerate_solutions(&a).unwrap();
        prop_assert!(r.total_classes as u64 <= upper_bound(x.len()));
        prop_assert_eq!(r.total_classes, 1usize << r.flippable_units.saturating_sub(1));
        for s in &r.solutions {
            prop_assert!(verify_solution(&s.signal, &a));
        }
        prop_assert!(r.class_of(&x, &Tolerances::default()).is_some());
    }

    #[test]
    fn trivial_transforms_give_the_same_report(zs in zero_set(5), n0 in -20i64..20, c in 0.1f64..10.0) {
        let x = reconstruct_from_zeros(&zs, 1.0).unwrap();
        let base = enumerate_solutions(&autocorrelation(&x)).unwrap();
        let moved = shift(&reflect(&x), n0).scaled(-c).unwrap();
        let r = enumerate_solutions(&autocorrelation(&moved)).unwrap();
        prop_assert_eq!(r.total_classes, base.total_classes);
        prop_assert_eq!(r.nonnegative_classes, base.nonnegative_classes);
    }

    #[test]
    fn zeros_round_trip(zs in zero_set(6)) {
        let x = reconstruct_from_zeros(&zs, 1.0).unwrap();
        let back = zeros_of_signal(&x).unwrap();
        prop_assert_eq!(back.len(), zs.len());
        for z in &zs {
            let d = back.iter().map(|b| (b - z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-7 * z.norm().max(1.0), "{} off by {}", z, d);
        }
    }

    #[test]
    fn signal_json_is_lossless(v in prop::collection::vec(-1e6f64..1e6, 1..12), off in -1000i64..1000) {
        prop_assume!(v[0] != 0.0 && v[v.len() - 1] != 0.0);
        let x = Signal::new(off, v).unwrap();
        let back = parse_signal(&to_json_string(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn execution_modes_agree() {
    let x = Signal::from_values(vec![1.0, -0.4, 2.5, 0.3, -1.1, 0.8, 2.0, 0.6]).unwrap();
    let a = autocorrelation(&x);
    let seq = enumerate_solutions_with(&a, &EnumConfig { exec: Execution::Sequential, ..Default::default() }).unwrap();
    let par = enumerate_solutions_with(&a, &EnumConfig { exec: Execution::Parallel, ..Default::default() }).unwrap();
    assert_eq!(to_json_string(&seq).unwrap(), to_json_string(&par).unwrap());
}

#[test]
fn autocorrelation_input_matches_signal_input() {
    let sig = parse_intensity_input(r#"{"offset": 3, "values": [2, 1, 3]}"#).unwrap();
    let IntensityInput::Signal(x) = &sig else { panic!("expected a signal") };
    let a = autocorrelation(x);
    let text = format!(r#"{{"coeffs": {:?}}}"#, a.coeffs());
    let ac = parse_intensity_input(&text).unwrap();
    let r1 = enumerate_solutions(&sig.autocorrelation()).unwrap();
    let r2 = enumerate_solutions(&ac.autocorrelation()).unwrap();
    assert_eq!(to_json_string(&r1).unwrap(), to_json_string(&r2).unwrap());
}

#[test]
fn unique_instances_survive_a_json_round_trip() {
    let x = gen_unique(&GenSpec::new(7, GenMode::Unique, 3)).unwrap();
    let back = parse_signal(&to_json_string(&x).unwrap()).unwrap();
    assert_eq!(back, x);
    let r = enumerate_solutions(&autocorrelation(&back)).unwrap();
    assert_eq!(r.nonnegative_classes, 1);
    assert!(r.solutions.iter().filter(|s| s.nonnegative).all(|s| s.min_component > 0.0));
}
