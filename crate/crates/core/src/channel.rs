//! Finite multiple access channels as exact conditional probability tables,
//! together with their mutual-information functions.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::f2::F2Matrix;
use crate::info::{common_denominator, JointDistribution};
use crate::subset::{SetFunction, Subset};

/// Largest input space `q^m` accepted.
pub const MAX_INPUTS: usize = 256;
/// Largest output alphabet accepted.
pub const MAX_OUTPUTS: usize = 1 << 16;

/// Exact probability.
pub type Prob = Ratio<u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChannelError {
    #[error("{what} is {got}, the maximum is {max}")]
    TooLarge { what: &'static str, got: usize, max: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("expected {expected} rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("entry ({row}, {col}) = {value} is not a probability")]
    EntryRange { row: usize, col: usize, value: String },
    #[error("row {row} sums to {sum}, not 1")]
    RowSum { row: usize, sum: String },
    #[error("common denominator of the table does not fit in 64 bits")]
    DenominatorOverflow,
    #[error("input alphabet of size {0} is not supported (binary inputs only)")]
    UnsupportedAlphabet(usize),
    #[error("input distribution for user {user} is invalid: {reason}")]
    InputDistribution { user: usize, reason: String },
    #[error("noise distribution has {got} entries, expected 2^{m}")]
    NoiseLength { m: usize, got: usize },
}

/// An `m`-user MAC with inputs in `{0..q}^m`.
///
/// Row `x` encodes the input tuple little-endian in base `q`, so for `q = 2` bit
/// `i - 1` of `x` is user `i`'s input, matching [`Subset`]. Entries are stored as
/// numerators over one common denominator; every row sums to it exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    m: usize,
    q: usize,
    output_size: usize,
    denom: u64,
    weights: Vec<u64>,
}

fn check_caps(m: usize, q: usize, output_size: usize) -> Result<usize, ChannelError> {
    let inputs = (q as u64)
        .checked_pow(m as u32)
        .filter(|&n| n <= MAX_INPUTS as u64)
        .ok_or(ChannelError::TooLarge {
            what: "input space size",
            got: q.saturating_pow(m as u32),
            max: MAX_INPUTS,
        })? as usize;
    if output_size > MAX_OUTPUTS {
        return Err(ChannelError::TooLarge {
            what: "output alphabet size",
            got: output_size,
            max: MAX_OUTPUTS,
        });
    }
    Ok(inputs)
}

impl Channel {
    /// Builds a channel from exact rows `W(·|x)`.
    pub fn from_rows(m: usize, q: usize, output_size: usize, rows: &[Vec<Prob>]) -> Result<Self, ChannelError> {
        if q < 2 {
            return Err(ChannelError::UnsupportedAlphabet(q));
        }
        let inputs = check_caps(m, q, output_size)?;
        if rows.len() != inputs {
            return Err(ChannelError::RowCount { expected: inputs, got: rows.len() });
        }
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != output_size {
                return Err(ChannelError::RowLength { row, got: entries.len(), expected: output_size });
            }
            if let Some((col, value)) = entries.iter().enumerate().find(|(_, p)| **p > Ratio::from_integer(1)) {
                return Err(ChannelError::EntryRange { row, col, value: value.to_string() });
            }
        }
        let denom = common_denominator(rows.iter().flatten().copied()).ok_or(ChannelError::DenominatorOverflow)?;
        let mut weights = Vec::with_capacity(inputs * output_size);
        for (row, entries) in rows.iter().enumerate() {
            let mut sum: u128 = 0;
            for p in entries {
                let w = p.numer() * (denom / p.denom());
                sum += w as u128;
                weights.push(w);
            }
            if sum != denom as u128 {
                let total: Prob = entries.iter().fold(Ratio::from_integer(0), |a, &b| a + b);
                return Err(ChannelError::RowSum { row, sum: total.to_string() });
            }
        }
        Ok(Channel { m, q, output_size, denom, weights })
    }

    /// `W(y|x) = 1` iff `y = f(x)`, binary inputs.
    pub fn deterministic(m: usize, output_size: usize, f: impl Fn(u32) -> usize) -> Result<Self, ChannelError> {
        let inputs = check_caps(m, 2, output_size)?;
        let mut weights = vec![0u64; inputs * output_size];
        for x in 0..inputs {
            let y = f(x as u32);
            assert!(y < output_size, "deterministic map left the output alphabet");
            weights[x * output_size + y] = 1;
        }
        Ok(Channel { m, q: 2, output_size, denom: 1, weights })
    }

    pub fn users(&self) -> usize {
        self.m
    }

    pub fn alphabet(&self) -> usize {
        self.q
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    pub fn input_count(&self) -> usize {
        self.weights.len() / self.output_size.max(1)
    }

    /// Common denominator of all entries.
    pub fn denominator(&self) -> u64 {
        self.denom
    }

    /// Numerator of `W(y|x)` over [`Self::denominator`].
    #[inline]
    pub fn weight(&self, x: usize, y: usize) -> u64 {
        self.weights[x * self.output_size + y]
    }

    /// `W(y|x)` in lowest terms.
    pub fn entry(&self, x: usize, y: usize) -> Prob {
        Ratio::new(self.weight(x, y), self.denom)
    }

    pub fn rows(&self) -> Vec<Vec<Prob>> {
        (0..self.input_count())
            .map(|x| (0..self.output_size).map(|y| self.entry(x, y)).collect())
            .collect()
    }

    fn require_binary(&self) -> Result<(), ChannelError> {
        if self.q == 2 {
            Ok(())
        } else {
            Err(ChannelError::UnsupportedAlphabet(self.q))
        }
    }

    /// Non-zero entries grouped by output: `(y, [(x, weight)])`.
    fn output_columns(&self) -> Vec<(usize, Vec<(u32, u64)>)> {
        let mut cols: Vec<Vec<(u32, u64)>> = vec![Vec::new(); self.output_size];
        for x in 0..self.input_count() {
            for (y, col) in cols.iter_mut().enumerate() {
                let w = self.weight(x, y);
                if w > 0 {
                    col.push((x as u32, w));
                }
            }
        }
        cols.into_iter().enumerate().filter(|(_, c)| !c.is_empty()).collect()
    }

    /// Post-processes the output through a stochastic matrix `post[y][z] = P(z | y)`.
    pub fn compose(&self, post: &[Vec<Prob>]) -> Result<Channel, ChannelError> {
        if post.len() != self.output_size {
            return Err(ChannelError::RowCount { expected: self.output_size, got: post.len() });
        }
        let out = post.first().map_or(0, Vec::len);
        let rows: Vec<Vec<Prob>> = (0..self.input_count())
            .map(|x| {
                (0..out)
                    .map(|z| {
                        (0..self.output_size)
                            .filter(|&y| self.weight(x, y) > 0)
                            .fold(Ratio::from_integer(0), |acc, y| acc + self.entry(x, y) * post[y][z])
                    })
                    .collect()
            })
            .collect();
        Channel::from_rows(self.m, self.q, out, &rows)
    }

    /// `W(y|x) = 1` iff `y = A x` over F₂; outputs are `F₂^rows` encoded as bitmasks.
    pub fn linear_deterministic(a: &F2Matrix) -> Result<Channel, ChannelError> {
        if a.num_rows() > 16 {
            return Err(ChannelError::TooLarge { what: "matrix row count", got: a.num_rows(), max: 16 });
        }
        Channel::deterministic(a.num_cols(), 1 << a.num_rows(), |x| a.apply(Subset::from_bits(x)) as usize)
    }

    /// `Y = X ⊕ Z` with `Z ~ noise` on `F₂^m`, independent of the inputs.
    pub fn additive_noise(m: usize, noise: &[Prob]) -> Result<Channel, ChannelError> {
        if noise.len() != 1usize.checked_shl(m as u32).unwrap_or(0) {
            return Err(ChannelError::NoiseLength { m, got: noise.len() });
        }
        check_caps(m, 2, noise.len())?;
        let rows: Vec<Vec<Prob>> = (0..noise.len())
            .map(|x| (0..noise.len()).map(|y| noise[x ^ y]).collect())
            .collect();
        Channel::from_rows(m, 2, noise.len(), &rows)
    }

    /// The identity MAC `Y = (X_1, .., X_m)`.
    pub fn identity(m: usize) -> Channel {
        Channel::linear_deterministic(&F2Matrix::identity(m)).expect("identity channel within caps")
    }

    /// `I[S] = I(X[S]; Y, X[S^c])` under independent inputs `X_i ~ inputs[i]`.
    pub fn mif(&self, inputs: &[Vec<Prob>]) -> Result<SetFunction, ChannelError> {
        self.require_binary()?;
        let law = InputLaw::new(self.m, inputs)?;
        let columns = self.output_columns();
        let values = Subset::all(self.m)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&s| self.subset_information(&law, &columns, s))
            .collect();
        Ok(SetFunction::new(self.m, values))
    }

    /// The uniform mutual information function.
    pub fn umif(&self) -> Result<SetFunction, ChannelError> {
        self.mif(&vec![vec![Ratio::new(1, 2); 2]; self.m])
    }

    /// Streams `I(X[S]; Y X[S^c])` one output column at a time.
    ///
    /// With `π_S` the input law restricted to `S`, the log term is
    /// `W(y|x) / Σ_{x'_S} π_S(x'_S) W(y|x'_S, x_{S^c})`.
    fn subset_information(&self, law: &InputLaw, columns: &[(usize, Vec<(u32, u64)>)], s: Subset) -> f64 {
        let keep = s.complement(self.m).bits();
        let mut sums: HashMap<u32, u128> = HashMap::new();
        let mut acc = 0.0;
        for (_, entries) in columns {
            sums.clear();
            for &(x, w) in entries {
                *sums.entry(x & keep).or_default() += law.numerator(x, s) * w as u128;
            }
            for &(x, w) in entries {
                let mass = law.probability(x) * (w as f64 / self.denom as f64);
                let ratio = (w as f64 * law.denominator(s) as f64) / sums[&(x & keep)] as f64;
                acc += mass * ratio.log2();
            }
        }
        acc.max(0.0)
    }

    /// The exact joint law of `(X[S], (Y, X[S^c]))`.
    ///
    /// `X[S]` is indexed by its compressed bits; the second coordinate by
    /// `y * 2^{|S^c|} + x[S^c]`.
    pub fn subset_joint(&self, inputs: &[Vec<Prob>], s: Subset) -> Result<JointDistribution, ChannelError> {
        self.require_binary()?;
        let law = InputLaw::new(self.m, inputs)?;
        let rest = s.complement(self.m);
        let full = Subset::full(self.m);
        let (xs, rs) = (1usize << s.len(), 1usize << rest.len());
        let y_size = self.output_size * rs;
        let mut weights = vec![0u128; xs * y_size];
        for x in 0..self.input_count() {
            let xv = Subset::from_bits(x as u32);
            let px = law.numerator(x as u32, full);
            for y in 0..self.output_size {
                let w = self.weight(x, y) as u128;
                if w > 0 {
                    let col = y * rs + xv.compress(rest) as usize;
                    weights[xv.compress(s) as usize * y_size + col] += px * w;
                }
            }
        }
        Ok(JointDistribution::from_weights(xs, y_size, weights).expect("channel rows carry positive mass"))
    }

    /// Joint of `(g(X), Y)` under uniform inputs, for any labelling `g` of the inputs.
    fn pushforward_joint(&self, label: impl Fn(u32) -> usize, labels: usize) -> JointDistribution {
        let mut weights = vec![0u128; labels * self.output_size];
        for x in 0..self.input_count() {
            let row = label(x as u32) * self.output_size;
            for y in 0..self.output_size {
                weights[row + y] += self.weight(x, y) as u128;
            }
        }
        JointDistribution::from_weights(labels, self.output_size, weights).expect("channel rows carry positive mass")
    }

    /// `I(X; Y)` under uniform inputs.
    pub fn input_output_mi(&self) -> Result<f64, ChannelError> {
        self.require_binary()?;
        Ok(self.pushforward_joint(|x| x as usize, self.input_count()).mutual_information())
    }

    /// `I(⊕_{i∈s} X_i ; Y)` under uniform inputs.
    pub fn linear_form_mi(&self, s: Subset) -> Result<f64, ChannelError> {
        Ok(self.linear_form_joint(s)?.mutual_information())
    }

    /// Joint law of the parity `⊕_{i∈s} X_i` and `Y` under uniform inputs.
    pub fn linear_form_joint(&self, s: Subset) -> Result<JointDistribution, ChannelError> {
        self.require_binary()?;
        Ok(self.pushforward_joint(|x| Subset::from_bits(x).dot(s) as usize, 2))
    }

    /// Joint law of user `i`'s input (zero-based) and `Y` under uniform inputs.
    pub fn single_user_joint(&self, user: usize) -> Result<JointDistribution, ChannelError> {
        self.linear_form_joint(Subset::singleton(user))
    }

    /// `I(A X; Y)` under uniform inputs.
    pub fn transformed_mi(&self, a: &F2Matrix) -> Result<f64, ChannelError> {
        self.require_binary()?;
        assert_eq!(a.num_cols(), self.m, "transform needs one column per user");
        let mut index: HashMap<u32, usize> = HashMap::new();
        let images: Vec<usize> = (0..self.input_count() as u32)
            .map(|x| {
                let next = index.len();
                *index.entry(a.apply(Subset::from_bits(x))).or_insert(next)
            })
            .collect();
        Ok(self
            .pushforward_joint(|x| images[x as usize], index.len())
            .mutual_information())
    }
}

/// Product input law with per-user numerators over per-user denominators.
struct InputLaw {
    numerators: Vec<[u64; 2]>,
    denominators: Vec<u64>,
}

impl InputLaw {
    fn new(m: usize, inputs: &[Vec<Prob>]) -> Result<Self, ChannelError> {
        if inputs.len() != m {
            return Err(ChannelError::InputDistribution {
                user: inputs.len(),
                reason: format!("expected {m} input distributions"),
            });
        }
        let mut numerators = Vec::with_capacity(m);
        let mut denominators = Vec::with_capacity(m);
        let mut product: u64 = 1;
        for (user, p) in inputs.iter().enumerate() {
            let bad = |reason: &str| ChannelError::InputDistribution { user, reason: reason.to_string() };
            if p.len() != 2 {
                return Err(bad("binary inputs need two probabilities"));
            }
            let d = common_denominator(p.iter().copied()).ok_or(ChannelError::DenominatorOverflow)?;
            let n = [p[0].numer() * (d / p[0].denom()), p[1].numer() * (d / p[1].denom())];
            if n[0] as u128 + n[1] as u128 != d as u128 {
                return Err(bad("probabilities do not sum to 1"));
            }
            product = product.checked_mul(d).filter(|&v| v < 1 << 60).ok_or(ChannelError::DenominatorOverflow)?;
            numerators.push(n);
            denominators.push(d);
        }
        Ok(InputLaw { numerators, denominators })
    }

    /// `Π_{i∈s} n_i(x_i)`.
    fn numerator(&self, x: u32, s: Subset) -> u128 {
        s.elements()
            .map(|i| self.numerators[i][(x >> i & 1) as usize] as u128)
            .product()
    }

    /// `Π_{i∈s} d_i`.
    fn denominator(&self, s: Subset) -> u64 {
        s.elements().map(|i| self.denominators[i]).product()
    }

    fn probability(&self, x: u32) -> f64 {
        (0..self.numerators.len())
            .map(|i| self.numerators[i][(x >> i & 1) as usize] as f64 / self.denominators[i] as f64)
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Prob {
        Ratio::new(n, d)
    }

    fn assert_values(f: &SetFunction, expected: &[f64]) {
        assert_eq!(f.values().len(), expected.len());
        for (got, want) in f.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{:?} vs {:?}", f.values(), expected);
        }
    }

    fn parity() -> Channel {
        Channel::linear_deterministic(&"11".parse().unwrap()).unwrap()
    }

    fn adder() -> Channel {
        Channel::deterministic(2, 3, |x| x.count_ones() as usize).unwrap()
    }

    #[test]
    fn umif_of_basic_two_user_channels() {
        assert_values(&Channel::identity(2).umif().unwrap(), &[0.0, 1.0, 1.0, 2.0]);
        assert_values(&parity().umif().unwrap(), &[0.0, 1.0, 1.0, 1.0]);
        assert_values(&adder().umif().unwrap(), &[0.0, 1.0, 1.0, 1.5]);
    }

    #[test]
    fn streaming_and_materialized_routes_agree() {
        let w = Channel::from_rows(
            2,
            2,
            3,
            &[
                vec![r(1, 2), r(1, 3), r(1, 6)],
                vec![r(0, 1), r(1, 4), r(3, 4)],
                vec![r(1, 1), r(0, 1), r(0, 1)],
                vec![r(1, 5), r(2, 5), r(2, 5)],
            ],
        )
        .unwrap();
        let inputs = vec![vec![r(1, 3), r(2, 3)], vec![r(3, 4), r(1, 4)]];
        let f = w.mif(&inputs).unwrap();
        for s in Subset::all(2) {
            let direct = w.subset_joint(&inputs, s).unwrap().mutual_information();
            assert!((f[s] - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn constructors() {
        let id = Channel::linear_deterministic(&F2Matrix::identity(2)).unwrap();
        assert_eq!(id, Channel::deterministic(2, 4, |x| x as usize).unwrap());
        assert_eq!(parity().output_size(), 2);
        let u23 = Channel::linear_deterministic(&"101;011".parse().unwrap()).unwrap();
        assert_values(&u23.umif().unwrap(), &[0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn additive_noise_examples() {
        let zero = Channel::additive_noise(2, &[r(1, 1), r(0, 1), r(0, 1), r(0, 1)]).unwrap();
        assert_eq!(zero, Channel::identity(2));
        let pad = Channel::additive_noise(2, &[r(1, 4); 4]).unwrap();
        assert_values(&pad.umif().unwrap(), &[0.0; 4]);
        let parity_noise = Channel::additive_noise(2, &[r(1, 2), r(0, 1), r(0, 1), r(1, 2)]).unwrap();
        assert_values(&parity_noise.umif().unwrap(), &[0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn linear_forms() {
        let w = parity();
        assert_eq!(w.linear_form_mi(Subset::full(2)).unwrap(), 1.0);
        assert_eq!(w.linear_form_mi(Subset::singleton(0)).unwrap(), 0.0);
        assert_eq!(adder().linear_form_mi(Subset::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn transformed_information() {
        let id2 = F2Matrix::identity(2);
        assert_eq!(Channel::identity(2).transformed_mi(&id2).unwrap(), 2.0);
        assert_eq!(parity().transformed_mi(&"11".parse().unwrap()).unwrap(), 1.0);
        assert_eq!(parity().transformed_mi(&id2).unwrap(), 1.0);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Channel::from_rows(1, 2, 2, &[vec![r(1, 2), r(1, 3)], vec![r(1, 1), r(0, 1)]]),
            Err(ChannelError::RowSum { row: 0, .. })
        ));
        assert!(matches!(
            Channel::from_rows(1, 2, 2, &[vec![r(1, 1), r(0, 1)]]),
            Err(ChannelError::RowCount { expected: 2, got: 1 })
        ));
        assert!(matches!(
            Channel::deterministic(9, 2, |_| 0),
            Err(ChannelError::TooLarge { what: "input space size", .. })
        ));
        assert!(matches!(
            Channel::deterministic(1, MAX_OUTPUTS + 1, |_| 0),
            Err(ChannelError::TooLarge { what: "output alphabet size", .. })
        ));
        let ternary = Channel::from_rows(1, 3, 1, &[vec![r(1, 1)], vec![r(1, 1)], vec![r(1, 1)]]).unwrap();
        assert_eq!(ternary.umif(), Err(ChannelError::UnsupportedAlphabet(3)));
    }

    #[test]
    fn composition_splits_and_flips() {
        let split = parity()
            .compose(&[vec![r(1, 3), r(2, 3), r(0, 1), r(0, 1)], vec![r(0, 1), r(0, 1), r(1, 3), r(2, 3)]])
            .unwrap();
        assert_values(&split.umif().unwrap(), &[0.0, 1.0, 1.0, 1.0]);
        let flipped = parity()
            .compose(&[vec![r(1, 2), r(1, 2)], vec![r(1, 2), r(1, 2)]])
            .unwrap();
        assert_values(&flipped.umif().unwrap(), &[0.0; 4]);
    }
}
