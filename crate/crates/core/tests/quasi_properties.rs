use std::f64::consts::LN_2;

use bumac::binary::vector_matroid;
use bumac::quasi::{
    average_posterior_distance, check_pinsker_concentration, near_determinism_mass, posterior_deviation_mass,
    quasi_integer_classify, QuasiError,
};
use bumac::{Channel, F2Matrix, JointDistribution, Matroid, Subset};
use bumac_testkit as kit;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;

fn bsc_joint(flips: u128, total: u128) -> JointDistribution {
    JointDistribution::from_weights(2, 2, vec![total - flips, flips, flips, total - flips]).unwrap()
}

fn uniform_bit_joint() -> impl Strategy<Value = JointDistribution> {
    (1usize..6).prop_flat_map(|n| {
        (proptest::collection::vec(0u64..20, n), proptest::collection::vec(0u64..20, n)).prop_filter_map(
            "both rows need mass",
            move |(a, b)| {
                let (sa, sb): (u64, u64) = (a.iter().sum(), b.iter().sum());
                if sa == 0 || sb == 0 {
                    return None;
                }
                // scale rows to a common total so that X is uniform
                let weights = a
                    .iter()
                    .map(|&v| (v * sb) as u128)
                    .chain(b.iter().map(|&v| (v * sa) as u128))
                    .collect();
                Some(JointDistribution::from_weights(2, n, weights).unwrap())
            },
        )
    })
}

proptest! {
    #[test]
    fn deviation_mass_is_non_increasing_in_the_radius(j in uniform_bit_joint(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(posterior_deviation_mass(&j, hi).unwrap() <= posterior_deviation_mass(&j, lo).unwrap());
    }

    #[test]
    fn average_distance_obeys_quadratic_pinsker(j in uniform_bit_joint()) {
        let avg = average_posterior_distance(&j).unwrap();
        prop_assert!(avg <= (2.0 * LN_2 * j.mutual_information()).sqrt() + 1e-9);
    }

    #[test]
    fn derived_bound_holds_whenever_the_premise_does(j in uniform_bit_joint(), slack in 1e-6f64..0.5) {
        let eps = j.mutual_information() + slack;
        let report = check_pinsker_concentration(&j, eps).unwrap();
        prop_assert!(report.derived.pass);
    }
}

#[test]
fn stated_bound_can_fail_near_its_threshold() {
    let eps = 1e-4;
    // |1 - 2p| = 0.0105 sits just above sqrt(eps) while I stays below eps
    let j = bsc_joint(9895, 20000);
    let report = check_pinsker_concentration(&j, eps).unwrap();
    assert!(report.mutual_information < eps);
    assert_eq!(report.stated.deviating_mass, 1.0);
    assert!(!report.stated.pass);
    assert!(report.derived.pass);
}

#[test]
fn pinsker_premise_and_input_checks() {
    let j = bsc_joint(1, 4);
    assert!(matches!(
        check_pinsker_concentration(&j, 0.1),
        Err(QuasiError::PremiseViolated { quantity: "I(X;Y)", .. })
    ));
    let skewed = JointDistribution::from_weights(2, 2, vec![3, 0, 0, 1]).unwrap();
    assert!(matches!(posterior_deviation_mass(&skewed, 0.1), Err(QuasiError::NonUniformInput)));
}

#[test]
fn deviating_mass_is_monotone_in_the_flip_parameter() {
    let eps: f64 = 1e-3;
    let total = 100_000u128;
    let mut last = f64::INFINITY;
    // flips toward 1/2 shrink every posterior distance
    for flips in (48_000..=50_000).step_by(100) {
        let mass = posterior_deviation_mass(&bsc_joint(flips, total), eps.sqrt()).unwrap();
        assert!(mass <= last);
        last = mass;
    }
    assert_eq!(last, 0.0);
}

#[test]
fn near_determinism_mass_tends_to_one() {
    assert!(matches!(
        near_determinism_mass(&bsc_joint(1, 4), 0.1),
        Err(QuasiError::PremiseViolated { quantity: "h(X|Y)", .. })
    ));
    let mut rng = kit::rng(21);
    let mut masses = Vec::new();
    for k in 2..=7u32 {
        let eps = 10f64.powi(-(k as i32) + 1);
        let total = 10u128.pow(k + 2);
        // a mixture of a clean output and a rare erasure-like output
        let rare = rng.gen_range(1..=5u128);
        let j = JointDistribution::from_weights(2, 3, vec![total, 0, rare, 0, total, rare]).unwrap();
        masses.push(near_determinism_mass(&j, eps).unwrap());
    }
    assert!(masses.windows(2).all(|w| w[0] <= w[1]));
    assert!(1.0 - masses.last().unwrap() < 1e-8);
}

#[test]
fn exactly_extremal_channels_classify_without_error() {
    let a: F2Matrix = "110;011".parse().unwrap();
    let report = quasi_integer_classify(&Channel::linear_deterministic(&a).unwrap(), 0.01).unwrap();
    assert_eq!(report.delta_max, 0.0);
    assert_eq!(report.form_distance_max, 0.0);
    assert_eq!(report.matroid, vector_matroid(&a));
    assert!(report.forms_match_matroid);
}

#[test]
fn perturbed_parity_rounds_to_u12() {
    let parity = Channel::linear_deterministic(&"11".parse().unwrap()).unwrap();
    let w = kit::flip_output_bits(&parity, 1, Ratio::new(1, 10_000));
    let report = quasi_integer_classify(&w, 0.01).unwrap();
    assert!(report.matroid.is_isomorphic(&Matroid::uniform(1, 2).unwrap()).unwrap());
    assert!(report.form_distance_max < 2e-3);
    assert!(report.forms_match_matroid);
}

#[test]
fn adder_mac_is_not_quasi_extremal() {
    let w = Channel::deterministic(2, 3, |x| (x & 1) as usize + (x >> 1) as usize).unwrap();
    match quasi_integer_classify(&w, 0.1) {
        Err(QuasiError::NotQuasiExtremal { subset, residual, .. }) => {
            assert_eq!(subset, Subset::full(2));
            assert!((residual - 0.5).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn perturbed_families_converge_to_the_unperturbed_matroid() {
    let mut rng = kit::rng(22);
    for _ in 0..20 {
        let cols = rng.gen_range(1..=4);
        let rows = rng.gen_range(1..=3);
        let a = kit::random_matrix(&mut rng, rows, cols);
        let base = Channel::linear_deterministic(&a).unwrap();
        let mut last = f64::INFINITY;
        for denom in [1_000u64, 10_000, 100_000, 1_000_000] {
            let w = kit::flip_output_bits(&base, rows, Ratio::new(1, denom));
            let report = quasi_integer_classify(&w, 0.1).unwrap();
            assert_eq!(report.matroid, vector_matroid(&a), "{a} at p = 1/{denom}");
            assert!(report.forms_match_matroid);
            assert!(report.delta_max <= last);
            last = report.delta_max;
        }
        assert!(last < 1e-3);
    }
}
