//! Channels whose uniform mutual information function is integer valued, and
//! their correspondence with binary matroids and linear deterministic channels.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::binary::{circuit_span, find_representation, Representation};
use crate::channel::{Channel, ChannelError};
use crate::f2::{F2Matrix, F2Subspace};
use crate::matroid::{AxiomViolation, Matroid, MatroidError};
use crate::subset::{SetFunction, Subset};

/// Default tolerance for treating a UMIF value as an integer.
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("rounded UMIF passes the tolerance but is not a matroid ({0}); the tolerance is too loose")]
    AxiomViolation(AxiomViolation),
    #[error("matroid is not binary")]
    NotBinary,
    #[error("not extremal: {0}")]
    NotExtremal(NotExtremal),
}

/// Why a channel was refused by the extremal analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum NotExtremal {
    /// Some UMIF value is not within tolerance of an integer.
    Residual { subset: Subset, m: usize, residual: f64 },
    /// A posterior violates the uniform-on-a-coset structure.
    Posterior { output: usize, reason: String },
}

impl fmt::Display for NotExtremal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotExtremal::Residual { subset, m, residual } => {
                write!(f, "residual {residual} at subset {}", subset.render(*m))
            }
            NotExtremal::Posterior { output, reason } => write!(f, "output {output}: {reason}"),
        }
    }
}

/// UMIF values rounded to integers, with their residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct UmifRounding {
    pub umif: SetFunction,
    pub rounded: Vec<u32>,
    /// `|umif(S) - round(umif(S))|` per subset.
    pub residuals: Vec<f64>,
    /// Largest residual and where it occurs (first such subset in bitmask order).
    pub worst: (Subset, f64),
    /// The matroid, when every residual is below the tolerance.
    pub matroid: Option<Matroid>,
}

impl UmifRounding {
    pub fn residual_max(&self) -> f64 {
        self.worst.1
    }
}

/// Rounds a set function and decides whether it is a matroid rank function within `tol`.
pub fn round_to_matroid(umif: SetFunction, tol: f64) -> Result<UmifRounding, ExtremalError> {
    let m = umif.ground_size();
    let rounded: Vec<u32> = umif.values().iter().map(|v| v.round().max(0.0) as u32).collect();
    let residuals: Vec<f64> = umif
        .values()
        .iter()
        .zip(&rounded)
        .map(|(v, &r)| (v - r as f64).abs())
        .collect();
    let worst = residuals
        .iter()
        .enumerate()
        .fold((Subset::EMPTY, 0.0), |best, (i, &r)| {
            if r > best.1 {
                (Subset::from_bits(i as u32), r)
            } else {
                best
            }
        });
    let matroid = if worst.1 < tol {
        match Matroid::from_rank(m, &rounded) {
            Ok(matroid) => Some(matroid),
            Err(MatroidError::AxiomViolation(v)) => return Err(ExtremalError::AxiomViolation(v)),
            Err(other) => unreachable!("rank table shape is fixed by the set function: {other}"),
        }
    } else {
        None
    };
    Ok(UmifRounding { umif, rounded, residuals, worst, matroid })
}

/// The matroid `(E_m, I[·])` of a channel whose UMIF is integral within `tol`.
pub fn integer_umif_matroid(w: &Channel, tol: f64) -> Result<UmifRounding, ExtremalError> {
    round_to_matroid(w.umif()?, tol)
}

/// The linear deterministic channel `Y = A X` for a representation `A` of `M`.
pub fn bumac_channel(m: &Matroid) -> Result<Channel, ExtremalError> {
    let rep = find_representation(m).ok_or(ExtremalError::NotBinary)?;
    Ok(Channel::linear_deterministic(&rep.matrix)?)
}

/// Why no ⋆-assignment is consistent with a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarInfeasibility {
    /// A non-empty independent set lies in the circuit span, so it would be forced
    /// to carry ⋆ although its independence forces 0.
    IndependentInSpan { vector: Subset },
    /// The circuit span does not have the dimension `m - r(E)` a kernel must have.
    Dimension { span_dim: usize, expected: usize },
}

/// Outcome of [`star_feasibility`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarAssignment {
    Feasible(F2Subspace),
    Infeasible(StarInfeasibility),
}

/// Decides whether the ⋆ positions forced by the matroid form a valid kernel.
///
/// Every circuit must carry ⋆, hence so must their whole F₂ span; non-empty
/// independent sets must carry 0, and exactly `2^{m-r(E)}` vectors carry ⋆.
/// Pairwise circuit sums are searched first for an independent witness, then
/// the full span.
pub fn star_feasibility(m: &Matroid) -> StarAssignment {
    let circuits = m.circuits();
    let n = m.ground_size();
    let pairwise = circuits
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| circuits[i + 1..].iter().map(move |&b| a.sym_diff(b)));
    let span = circuit_span(m);
    let witness = circuits
        .iter()
        .copied()
        .chain(pairwise)
        .find(|&v| !v.is_empty() && m.is_independent(v))
        .or_else(|| span.vectors().find(|&v| !v.is_empty() && m.is_independent(v)));
    if let Some(vector) = witness {
        return StarAssignment::Infeasible(StarInfeasibility::IndependentInSpan { vector });
    }
    let expected = n - m.rank();
    if span.dim() != expected {
        return StarAssignment::Infeasible(StarInfeasibility::Dimension { span_dim: span.dim(), expected });
    }
    StarAssignment::Feasible(span)
}

/// One output's posterior: uniform on `offset + kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub output: usize,
    /// Support member used to translate the support onto the kernel.
    pub offset: Subset,
    pub support_size: usize,
}

/// Kernel recovered from the posteriors of an extremal channel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelRecovery {
    pub matroid: Matroid,
    pub kernel: F2Subspace,
    /// The common posterior value `2^{R-m}`.
    pub star: f64,
    pub cosets: Vec<Coset>,
    pub residual_max: f64,
}

/// Recovers `Ker A` from an extremal channel.
///
/// Each output's posterior `p(x|y) = W(y|x) / Σ_z W(y|z)` must be uniform with
/// value `2^{R-m}` on `2^{m-R}` inputs, and every support, translated by one of
/// its members, must be the same subspace.
pub fn recover_kernel(w: &Channel, tol: f64) -> Result<KernelRecovery, ExtremalError> {
    let rounding = integer_umif_matroid(w, tol)?;
    let Some(matroid) = rounding.matroid.clone() else {
        let (subset, residual) = rounding.worst;
        return Err(ExtremalError::NotExtremal(NotExtremal::Residual { subset, m: w.users(), residual }));
    };
    let m = w.users();
    let r = matroid.rank();
    let star = (2f64).powi(r as i32 - m as i32);
    let support_size = 1usize << (m - r);
    let refuse = |output: usize, reason: String| ExtremalError::NotExtremal(NotExtremal::Posterior { output, reason });

    let mut kernel: Option<BTreeSet<Subset>> = None;
    let mut cosets = Vec::new();
    for y in 0..w.output_size() {
        let column: Vec<(Subset, u64)> = (0..w.input_count())
            .filter(|&x| w.weight(x, y) > 0)
            .map(|x| (Subset::from_bits(x as u32), w.weight(x, y)))
            .collect();
        if column.is_empty() {
            continue;
        }
        if column.len() != support_size {
            return Err(refuse(
                y,
                format!("posterior support has {} inputs, expected {support_size}", column.len()),
            ));
        }
        let total: u128 = column.iter().map(|&(_, wt)| wt as u128).sum();
        if let Some(&(x, wt)) = column.iter().find(|&&(_, wt)| (wt as f64 / total as f64 - star).abs() > tol) {
            return Err(refuse(
                y,
                format!("posterior of input {} is {}, expected {star}", x.render(m), wt as f64 / total as f64),
            ));
        }
        let offset = column[0].0;
        let translated: BTreeSet<Subset> = column.iter().map(|&(x, _)| x.sym_diff(offset)).collect();
        match &kernel {
            None => {
                let closed = translated
                    .iter()
                    .all(|a| translated.iter().all(|b| translated.contains(&a.sym_diff(*b))));
                if !closed {
                    return Err(refuse(y, "posterior support is not a coset of a subspace".into()));
                }
                kernel = Some(translated);
            }
            Some(k) if *k != translated => {
                return Err(refuse(y, "posterior support is a coset of a different subspace".into()));
            }
            Some(_) => {}
        }
        cosets.push(Coset { output: y, offset, support_size });
    }
    let kernel = F2Subspace::span(m, kernel.unwrap_or_default());
    Ok(KernelRecovery {
        matroid,
        kernel,
        star,
        cosets,
        residual_max: rounding.worst.1,
    })
}

/// Residuals of `I(AX; Y) = rank A = I(X; Y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub rank: usize,
    pub transformed_mi: f64,
    pub full_mi: f64,
    pub transformed_residual: f64,
    pub full_residual: f64,
    pub pass: bool,
}

pub fn verify_equivalence(w: &Channel, a: &F2Matrix, tol: f64) -> Result<EquivalenceReport, ExtremalError> {
    let rank = a.rank();
    let transformed_mi = w.transformed_mi(a)?;
    let full_mi = w.input_output_mi()?;
    let transformed_residual = (transformed_mi - rank as f64).abs();
    let full_residual = (full_mi - rank as f64).abs();
    Ok(EquivalenceReport {
        rank,
        transformed_mi,
        full_mi,
        transformed_residual,
        full_residual,
        pass: transformed_residual < tol && full_residual < tol,
    })
}

/// Matroid, representation, kernel and equivalence residuals of an extremal channel.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalCertificate {
    pub matroid: Matroid,
    pub representation: Representation,
    pub kernel: F2Subspace,
    pub residual_max: f64,
    pub equivalence: EquivalenceReport,
}

/// Runs detection, representation, kernel recovery and the equivalence check.
pub fn certify(w: &Channel, tol: f64) -> Result<ExtremalCertificate, ExtremalError> {
    let recovery = recover_kernel(w, tol)?;
    let representation = find_representation(&recovery.matroid).ok_or(ExtremalError::NotBinary)?;
    let equivalence = verify_equivalence(w, &representation.matrix, tol)?;
    Ok(ExtremalCertificate {
        matroid: recovery.matroid,
        representation,
        kernel: recovery.kernel,
        residual_max: recovery.residual_max,
        equivalence,
    })
}
