//! Exact joint distributions and their information measures (in bits).
//!
//! Probabilities are integer weights over a common denominator, so every
//! marginal is exact; floating point enters only when logarithms are taken.

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JointError {
    #[error("joint table has {got} cells, expected {expected}")]
    Shape { got: usize, expected: usize },
    #[error("joint distribution has zero total mass")]
    ZeroMass,
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(String),
    #[error("arithmetic overflow while forming a common denominator")]
    Overflow,
}

/// Joint law of a pair `(X, Y)` on `{0..x_size} × {0..y_size}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    x_size: usize,
    y_size: usize,
    /// Row-major in `x`: cell `(x, y)` at `x * y_size + y`.
    weights: Vec<u128>,
    total: u128,
    x_marginal: Vec<u128>,
    y_marginal: Vec<u128>,
}

impl JointDistribution {
    /// Probability of `(x, y)` is `weights[x * y_size + y] / Σ weights`.
    pub fn from_weights(x_size: usize, y_size: usize, weights: Vec<u128>) -> Result<Self, JointError> {
        let expected = x_size * y_size;
        if weights.len() != expected {
            return Err(JointError::Shape { got: weights.len(), expected });
        }
        let mut x_marginal = vec![0u128; x_size];
        let mut y_marginal = vec![0u128; y_size];
        let mut total: u128 = 0;
        for x in 0..x_size {
            for y in 0..y_size {
                let w = weights[x * y_size + y];
                x_marginal[x] = x_marginal[x].checked_add(w).ok_or(JointError::Overflow)?;
                y_marginal[y] += w;
                total += w;
            }
        }
        if total == 0 {
            return Err(JointError::ZeroMass);
        }
        Ok(JointDistribution {
            x_size,
            y_size,
            weights,
            total,
            x_marginal,
            y_marginal,
        })
    }

    /// From exact probabilities, which must sum to exactly 1.
    pub fn from_probabilities(x_size: usize, y_size: usize, probs: &[Ratio<u64>]) -> Result<Self, JointError> {
        let denom = common_denominator(probs.iter().copied()).ok_or(JointError::Overflow)?;
        let weights: Vec<u128> = probs
            .iter()
            .map(|p| *p.numer() as u128 * (denom / *p.denom()) as u128)
            .collect();
        let total: u128 = weights.iter().sum();
        if total != denom as u128 {
            return Err(JointError::NotNormalized(format!("{total}/{denom}")));
        }
        JointDistribution::from_weights(x_size, y_size, weights)
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn weight(&self, x: usize, y: usize) -> u128 {
        self.weights[x * self.y_size + y]
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn x_weight(&self, x: usize) -> u128 {
        self.x_marginal[x]
    }

    pub fn y_weight(&self, y: usize) -> u128 {
        self.y_marginal[y]
    }

    pub fn probability(&self, x: usize, y: usize) -> f64 {
        self.weight(x, y) as f64 / self.total as f64
    }

    pub fn y_probability(&self, y: usize) -> f64 {
        self.y_marginal[y] as f64 / self.total as f64
    }

    /// `I(X;Y) = D(μ || μ_X × μ_Y)` with `0 log 0 = 0`.
    pub fn mutual_information(&self) -> f64 {
        let total = self.total as f64;
        let mut acc = 0.0;
        for x in 0..self.x_size {
            let wx = self.x_marginal[x];
            if wx == 0 {
                continue;
            }
            for y in 0..self.y_size {
                let w = self.weight(x, y);
                if w == 0 {
                    continue;
                }
                let ratio = (w as f64 / wx as f64) * (total / self.y_marginal[y] as f64);
                acc += w as f64 / total * ratio.log2();
            }
        }
        acc.max(0.0)
    }

    /// `H(X)`.
    pub fn x_entropy(&self) -> f64 {
        entropy_of_weights(&self.x_marginal)
    }

    /// `H(X | Y)`.
    pub fn conditional_entropy_x_given_y(&self) -> f64 {
        let total = self.total as f64;
        let mut acc = 0.0;
        for y in 0..self.y_size {
            let wy = self.y_marginal[y];
            for x in 0..self.x_size {
                let w = self.weight(x, y);
                if w > 0 {
                    acc -= w as f64 / total * (w as f64 / wy as f64).log2();
                }
            }
        }
        acc.max(0.0)
    }

    /// Posterior weights `w(·, y)`; divide by [`Self::y_weight`] for `P(X = · | Y = y)`.
    pub fn posterior_weights(&self, y: usize) -> impl Iterator<Item = u128> + '_ {
        (0..self.x_size).map(move |x| self.weight(x, y))
    }
}

/// Shannon entropy (bits) of the distribution proportional to `weights`.
pub fn entropy_of_weights(weights: &[u128]) -> f64 {
    let total: u128 = weights.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    -weights
        .iter()
        .filter(|&&w| w > 0)
        .map(|&w| {
            let p = w as f64 / t;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Binary entropy `h₂(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Least common multiple of the denominators, if it fits in `u64`.
pub fn common_denominator(values: impl IntoIterator<Item = Ratio<u64>>) -> Option<u64> {
    values.into_iter().try_fold(1u64, |acc, r| {
        let d = *r.denom();
        let g = num_integer::gcd(acc, d);
        acc.checked_mul(d / g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn product_distribution_has_no_information() {
        let j = JointDistribution::from_weights(2, 3, vec![1, 2, 3, 2, 4, 6]).unwrap();
        assert_eq!(j.mutual_information(), 0.0);
    }

    #[test]
    fn copied_bit_carries_one_bit() {
        let j = JointDistribution::from_weights(2, 2, vec![1, 0, 0, 1]).unwrap();
        assert_eq!(j.mutual_information(), 1.0);
        assert_eq!(j.conditional_entropy_x_given_y(), 0.0);
    }

    #[test]
    fn binary_symmetric_flip() {
        let p = r(11, 100);
        let q = r(89, 100);
        let half = r(1, 2);
        let j = JointDistribution::from_probabilities(2, 2, &[q * half, p * half, p * half, q * half]).unwrap();
        let expected = 1.0 - binary_entropy(0.11);
        assert!((j.mutual_information() - expected).abs() < 1e-12);
        assert!((j.mutual_information() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn rejects_unnormalized_probabilities() {
        let err = JointDistribution::from_probabilities(1, 2, &[r(1, 2), r(1, 3)]).unwrap_err();
        assert!(matches!(err, JointError::NotNormalized(_)));
        assert!(matches!(
            JointDistribution::from_weights(1, 2, vec![0, 0]),
            Err(JointError::ZeroMass)
        ));
    }

    #[test]
    fn entropy_helpers() {
        assert!((entropy_of_weights(&[1, 2, 1]) - 1.5).abs() < 1e-15);
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(common_denominator([r(1, 4), r(1, 6)]), Some(12));
    }
}
