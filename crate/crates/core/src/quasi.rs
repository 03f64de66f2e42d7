//! Channels that are close to extremal: near-integer UMIF values, and how
//! posteriors concentrate when a uniform bit carries little (or almost all)
//! information about the output.

use std::f64::consts::LN_2;

use thiserror::Error;

use crate::channel::{Channel, ChannelError};
use crate::extremal::{round_to_matroid, ExtremalError};
use crate::info::JointDistribution;
use crate::matroid::{AxiomViolation, Matroid};
use crate::recursion::linear_forms_from_umif;
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuasiError {
    #[error("input marginal is not uniform on one bit")]
    NonUniformInput,
    #[error("premise violated: {quantity} = {value} is not below epsilon = {epsilon}")]
    PremiseViolated { quantity: &'static str, value: f64, epsilon: f64 },
    #[error("not quasi-extremal: residual {residual} at subset {rendered}")]
    NotQuasiExtremal { subset: Subset, rendered: String, residual: f64 },
    #[error("linear form {rendered} has ambiguous information {value}")]
    AmbiguousForm { subset: Subset, rendered: String, value: f64 },
    #[error("rounded UMIF is not a matroid: {0}")]
    AxiomViolation(AxiomViolation),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

fn require_uniform_bit(j: &JointDistribution) -> Result<(), QuasiError> {
    if j.x_size() == 2 && j.x_weight(0) == j.x_weight(1) {
        Ok(())
    } else {
        Err(QuasiError::NonUniformInput)
    }
}

/// `‖P_{X|Y=y} - U‖₁ = |w(0,y) - w(1,y)| / w(y)` for a binary `X`.
fn posterior_distance(j: &JointDistribution, y: usize) -> f64 {
    let (w0, w1) = (j.weight(0, y), j.weight(1, y));
    w0.abs_diff(w1) as f64 / (w0 + w1) as f64
}

/// `P_Y{ y : ‖P_{X|Y=y} - U‖₁ >= a }` for a uniform bit `X`.
pub fn posterior_deviation_mass(j: &JointDistribution, a: f64) -> Result<f64, QuasiError> {
    require_uniform_bit(j)?;
    let deviating: u128 = (0..j.y_size())
        .filter(|&y| j.y_weight(y) > 0 && posterior_distance(j, y) >= a)
        .map(|y| j.y_weight(y))
        .sum();
    Ok(deviating as f64 / j.total() as f64)
}

/// `E_Y ‖P_{X|Y} - U‖₁ = ‖P_{XY} - P_X P_Y‖₁` for a uniform bit `X`.
pub fn average_posterior_distance(j: &JointDistribution) -> Result<f64, QuasiError> {
    require_uniform_bit(j)?;
    Ok((0..j.y_size())
        .filter(|&y| j.y_weight(y) > 0)
        .map(|y| j.y_probability(y) * posterior_distance(j, y))
        .sum())
}

/// One concentration statement `P(‖P_{X|Y} - U‖₁ < threshold) >= bound`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcentrationReport {
    pub epsilon: f64,
    pub threshold: f64,
    pub deviating_mass: f64,
    pub bound: f64,
    pub pass: bool,
}

impl ConcentrationReport {
    fn evaluate(j: &JointDistribution, epsilon: f64, threshold: f64, bound: f64) -> Result<Self, QuasiError> {
        let deviating_mass = posterior_deviation_mass(j, threshold)?;
        Ok(ConcentrationReport {
            epsilon,
            threshold,
            deviating_mass,
            bound,
            pass: 1.0 - deviating_mass >= bound,
        })
    }
}

/// Both concentration bounds for a pair with `I(X;Y) < ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PinskerReport {
    pub mutual_information: f64,
    /// Threshold `ε^{1/2}`, bound `1 - 2 ln2 ε^{1/2}` (linear Pinsker form).
    pub stated: ConcentrationReport,
    /// Threshold `ε^{1/4}`, bound `1 - (2 ln2 ε)^{1/2} / ε^{1/4}` (quadratic
    /// Pinsker, Jensen, then Markov); holds for every input.
    pub derived: ConcentrationReport,
}

pub fn check_pinsker_concentration(j: &JointDistribution, epsilon: f64) -> Result<PinskerReport, QuasiError> {
    require_uniform_bit(j)?;
    let mutual_information = j.mutual_information();
    if mutual_information >= epsilon {
        return Err(QuasiError::PremiseViolated {
            quantity: "I(X;Y)",
            value: mutual_information,
            epsilon,
        });
    }
    let root = epsilon.sqrt();
    let stated = ConcentrationReport::evaluate(j, epsilon, root, 1.0 - 2.0 * LN_2 * root)?;
    let quarter = epsilon.powf(0.25);
    let derived = ConcentrationReport::evaluate(j, epsilon, quarter, 1.0 - (2.0 * LN_2 * epsilon).sqrt() / quarter)?;
    Ok(PinskerReport { mutual_information, stated, derived })
}

/// `P_Y{ y : P(X=0|y) P(X=1|y) <= ε }` for a pair with `h(X|Y) < ε`.
pub fn near_determinism_mass(j: &JointDistribution, epsilon: f64) -> Result<f64, QuasiError> {
    if j.x_size() != 2 {
        return Err(QuasiError::NonUniformInput);
    }
    let equivocation = j.conditional_entropy_x_given_y();
    if equivocation >= epsilon {
        return Err(QuasiError::PremiseViolated {
            quantity: "h(X|Y)",
            value: equivocation,
            epsilon,
        });
    }
    let mass: u128 = (0..j.y_size())
        .filter(|&y| {
            let s = j.y_weight(y) as f64;
            s > 0.0 && (j.weight(0, y) as f64 / s) * (j.weight(1, y) as f64 / s) <= epsilon
        })
        .map(|y| j.y_weight(y))
        .sum();
    Ok(mass as f64 / j.total() as f64)
}

/// Classification of one linear form `⊕_{i∈s} X_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormClass {
    pub subset: Subset,
    pub value: f64,
    pub bit: bool,
    /// Distance from `value` to `bit`.
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiReport {
    pub epsilon: f64,
    pub matroid: Matroid,
    /// Largest distance of a UMIF value to its rounded integer.
    pub delta_max: f64,
    pub worst_subset: Subset,
    pub forms: Vec<FormClass>,
    pub form_distance_max: f64,
    /// Whether the rounded forms equal those the recursion derives from the rounded matroid.
    pub forms_match_matroid: bool,
}

/// Rounds a near-integer UMIF to a matroid and classifies every linear form.
pub fn quasi_integer_classify(w: &Channel, epsilon: f64) -> Result<QuasiReport, QuasiError> {
    let m = w.users();
    let rounding = match round_to_matroid(w.umif()?, epsilon) {
        Ok(r) => r,
        Err(ExtremalError::AxiomViolation(v)) => return Err(QuasiError::AxiomViolation(v)),
        Err(ExtremalError::Channel(e)) => return Err(e.into()),
        Err(other) => unreachable!("rounding only fails on axioms: {other}"),
    };
    let (worst_subset, delta_max) = rounding.worst;
    let Some(matroid) = rounding.matroid else {
        return Err(QuasiError::NotQuasiExtremal {
            subset: worst_subset,
            rendered: worst_subset.render(m),
            residual: delta_max,
        });
    };
    let mut forms = Vec::with_capacity(1 << m);
    for s in Subset::all(m) {
        let value = w.linear_form_mi(s)?;
        let bit = value >= 0.5;
        let distance = (value - bit as u8 as f64).abs();
        if distance >= 0.5 {
            return Err(QuasiError::AmbiguousForm { subset: s, rendered: s.render(m), value });
        }
        forms.push(FormClass { subset: s, value, bit, distance });
    }
    let form_distance_max = forms.iter().map(|f| f.distance).fold(0.0, f64::max);
    let forms_match_matroid = linear_forms_from_umif(&matroid)
        .map(|g| forms.iter().all(|f| g.get(f.subset) == f.bit))
        .unwrap_or(false);
    Ok(QuasiReport {
        epsilon,
        matroid,
        delta_max,
        worst_subset,
        forms,
        form_distance_max,
        forms_match_matroid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::binary_entropy;
    use num_rational::Ratio;

    /// Uniform bit through a flip with probability `num/den`.
    fn flip(num: u128, den: u128) -> JointDistribution {
        JointDistribution::from_weights(2, 2, vec![den - num, num, num, den - num]).unwrap()
    }

    #[test]
    fn deviation_mass_examples() {
        let independent = JointDistribution::from_weights(2, 2, vec![1, 3, 1, 3]).unwrap();
        assert_eq!(posterior_deviation_mass(&independent, 0.01).unwrap(), 0.0);
        let copy = flip(0, 1);
        assert_eq!(posterior_deviation_mass(&copy, 0.5).unwrap(), 1.0);
        let noisy = flip(45, 100);
        assert_eq!(posterior_deviation_mass(&noisy, 0.2).unwrap(), 0.0);
        assert_eq!(posterior_deviation_mass(&noisy, 0.1).unwrap(), 1.0);
        let skewed = JointDistribution::from_weights(2, 1, vec![1, 2]).unwrap();
        assert_eq!(posterior_deviation_mass(&skewed, 0.1), Err(QuasiError::NonUniformInput));
    }

    #[test]
    fn pinsker_examples() {
        let independent = JointDistribution::from_weights(2, 2, vec![1, 1, 1, 1]).unwrap();
        let report = check_pinsker_concentration(&independent, 0.01).unwrap();
        assert!(report.stated.pass && report.derived.pass);
        assert_eq!(report.stated.deviating_mass, 0.0);

        let near = flip(49, 100);
        let report = check_pinsker_concentration(&near, 1e-3).unwrap();
        assert!(report.mutual_information < 3e-4);
        assert!(report.stated.pass && report.derived.pass);

        assert!(matches!(
            check_pinsker_concentration(&flip(1, 4), 0.1),
            Err(QuasiError::PremiseViolated { .. })
        ));
    }

    #[test]
    fn mixture_reveals_with_small_probability() {
        // Y = (X, revealed) with probability 1e-4, else an independent symbol
        let (reveal, hide) = (1u128, 9999u128);
        let weights = vec![reveal, 0, hide, 0, reveal, hide];
        let j = JointDistribution::from_weights(2, 3, weights).unwrap();
        let report = check_pinsker_concentration(&j, 1e-3).unwrap();
        assert!(report.stated.pass);
        assert!((report.stated.deviating_mass - 1e-4).abs() < 1e-15);
    }

    #[test]
    fn near_determinism_examples() {
        assert_eq!(near_determinism_mass(&flip(0, 1), 1e-6).unwrap(), 1.0);
        let p = 1e-3;
        assert!(binary_entropy(p) < 0.02);
        assert_eq!(near_determinism_mass(&flip(1, 1000), 0.02).unwrap(), 1.0);
        assert!(matches!(
            near_determinism_mass(&flip(1, 4), 0.1),
            Err(QuasiError::PremiseViolated { quantity: "h(X|Y)", .. })
        ));
    }

    #[test]
    fn classify_exact_and_perturbed_parity() {
        let parity = Channel::linear_deterministic(&"11".parse().unwrap()).unwrap();
        let report = quasi_integer_classify(&parity, 1e-2).unwrap();
        assert_eq!(report.delta_max, 0.0);
        assert_eq!(report.form_distance_max, 0.0);
        assert!(report.forms_match_matroid);

        let r = Ratio::new;
        let noisy = parity
            .compose(&[vec![r(9999, 10000), r(1, 10000)], vec![r(1, 10000), r(9999, 10000)]])
            .unwrap();
        let report = quasi_integer_classify(&noisy, 1e-2).unwrap();
        assert_eq!(report.matroid, Matroid::uniform(1, 2).unwrap());
        assert!(report.form_distance_max < 2e-3);
        assert!(report.delta_max > 0.0 && report.delta_max < 2e-3);
        assert!(report.forms_match_matroid);
    }

    #[test]
    fn adder_is_not_quasi_extremal() {
        let adder = Channel::deterministic(2, 3, |x| x.count_ones() as usize).unwrap();
        match quasi_integer_classify(&adder, 0.4) {
            Err(QuasiError::NotQuasiExtremal { subset, residual, .. }) => {
                assert_eq!(subset, Subset::full(2));
                assert_eq!(residual, 0.5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
