//! JSON file formats for matroids, channels, noise laws, certificates and
//! concentration reports.
//!
//! Subset-indexed arrays use bitmask order (element 1 is the least significant
//! bit). Probabilities are strings `"p/q"`, `"0"` or `"1"`. Channel row `x` is
//! the input tuple little-endian in base `q`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::{Channel, ChannelError, Prob};
use crate::extremal::ExtremalCertificate;
use crate::f2::{F2Matrix, MatrixParseError};
use crate::matroid::{Matroid, MatroidError};
use crate::quasi::PinskerReport;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: {text:?} is not a rational probability")]
    Rational { field: String, text: String },
    #[error("invalid matroid: {0}")]
    Matroid(#[from] MatroidError),
    #[error("invalid channel: {0}")]
    Channel(#[from] ChannelError),
    #[error("field matrix: {0}")]
    Matrix(#[from] MatrixParseError),
}

pub fn parse_prob(field: &str, text: &str) -> Result<Prob, FormatError> {
    let bad = || FormatError::Rational { field: field.to_string(), text: text.to_string() };
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim().parse::<u64>().map_err(|_| bad())?, d.trim().parse::<u64>().map_err(|_| bad())?),
        None => (t.parse::<u64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

pub fn format_prob(p: Prob) -> String {
    p.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidFile {
    pub m: usize,
    pub rank: Vec<u32>,
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidFile { m: m.ground_size(), rank: m.rank_table() }
    }

    pub fn to_matroid(&self) -> Result<Matroid, MatroidError> {
        Matroid::from_rank(self.m, &self.rank)
    }
}

pub fn read_matroid(json: &str) -> Result<Matroid, FormatError> {
    let file: MatroidFile = serde_json::from_str(json)?;
    Ok(file.to_matroid()?)
}

pub fn write_matroid(m: &Matroid) -> String {
    serde_json::to_string(&MatroidFile::from_matroid(m)).expect("matroid serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub m: usize,
    pub q: usize,
    pub output_size: usize,
    pub rows: Vec<Vec<String>>,
}

pub fn read_channel(json: &str) -> Result<Channel, FormatError> {
    let file: ChannelFile = serde_json::from_str(json)?;
    let rows = file
        .rows
        .iter()
        .enumerate()
        .map(|(x, row)| {
            row.iter()
                .enumerate()
                .map(|(y, text)| parse_prob(&format!("rows[{x}][{y}]"), text))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Channel::from_rows(file.m, file.q, file.output_size, &rows)?)
}

/// Canonical, byte-stable channel JSON.
pub fn write_channel(w: &Channel) -> String {
    let file = ChannelFile {
        m: w.users(),
        q: w.alphabet(),
        output_size: w.output_size(),
        rows: w
            .rows()
            .into_iter()
            .map(|row| row.into_iter().map(format_prob).collect())
            .collect(),
    };
    serde_json::to_string(&file).expect("channel serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseFile {
    pub m: usize,
    pub probs: Vec<String>,
}

/// Reads a noise law on `F₂^m`; returns `m` and the probabilities.
pub fn read_noise(json: &str) -> Result<(usize, Vec<Prob>), FormatError> {
    let file: NoiseFile = serde_json::from_str(json)?;
    let probs = file
        .probs
        .iter()
        .enumerate()
        .map(|(i, t)| parse_prob(&format!("probs[{i}]"), t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((file.m, probs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub matroid: MatroidFile,
    pub matrix: String,
    pub kernel_basis: Vec<String>,
    pub residual_max: f64,
}

impl CertificateFile {
    pub fn from_certificate(cert: &ExtremalCertificate) -> Self {
        let m = cert.matroid.ground_size();
        CertificateFile {
            matroid: MatroidFile::from_matroid(&cert.matroid),
            matrix: cert.representation.matrix.to_text(),
            kernel_basis: cert.kernel.basis().iter().map(|v| v.render(m)).collect(),
            residual_max: cert.residual_max,
        }
    }

    /// The representation matrix, with its width taken from the matroid so that
    /// rank-zero matrices keep their column count.
    pub fn matrix(&self) -> Result<F2Matrix, FormatError> {
        let parsed: F2Matrix = self.matrix.parse()?;
        if parsed.num_rows() == 0 {
            return Ok(F2Matrix::zeros(0, self.matroid.m));
        }
        Ok(parsed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationFile {
    pub epsilon: f64,
    pub mutual_information: f64,
    pub threshold: f64,
    pub mass: f64,
    pub bound_stated: f64,
    pub threshold_derived: f64,
    pub mass_derived: f64,
    pub bound_derived: f64,
    pub pass_stated: bool,
    pub pass_derived: bool,
}

impl From<&PinskerReport> for ConcentrationFile {
    fn from(r: &PinskerReport) -> Self {
        ConcentrationFile {
            epsilon: r.stated.epsilon,
            mutual_information: r.mutual_information,
            threshold: r.stated.threshold,
            mass: r.stated.deviating_mass,
            bound_stated: r.stated.bound,
            threshold_derived: r.derived.threshold,
            mass_derived: r.derived.deviating_mass,
            bound_derived: r.derived.bound,
            pass_stated: r.stated.pass,
            pass_derived: r.derived.pass,
        }
    }
}
