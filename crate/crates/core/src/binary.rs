//! Vector matroids over F₂ and binary representability.

use std::collections::HashMap;

use thiserror::Error;

use crate::f2::{F2Matrix, F2Subspace};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Ground-set cap for the excluded-minor test.
pub const MAX_TUTTE_GROUND: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BinaryError {
    #[error("matrix columns do not represent the matroid under the identity labelling")]
    LabelMismatch,
    #[error("ground set of size {0} exceeds the supported maximum for this test")]
    GroundTooLarge(usize),
}

/// The column matroid `M[A]`: `r(S)` is the F₂ rank of the columns in `S`.
pub fn vector_matroid(a: &F2Matrix) -> Matroid {
    let m = a.num_cols();
    let rank = Subset::all(m).map(|s| a.rank_of_columns(s) as u8).collect();
    Matroid::from_rank_unchecked(m, rank)
}

/// Binary iff there is no `U_{2,4}` minor.
pub fn is_binary_tutte(m: &Matroid) -> Result<bool, BinaryError> {
    if m.ground_size() > MAX_TUTTE_GROUND {
        return Err(BinaryError::GroundTooLarge(m.ground_size()));
    }
    let u24 = Matroid::uniform(2, 4).expect("U_{2,4} parameters are valid");
    Ok(!m
        .has_minor(&u24)
        .expect("U_{2,4} is within the isomorphism cap"))
}

/// Binary iff the symmetric difference of any two distinct circuits is a
/// disjoint union of circuits.
pub fn is_binary_whitney(m: &Matroid) -> bool {
    whitney_violation(m).is_none()
}

/// A pair of circuits whose symmetric difference is not a disjoint union of circuits.
pub fn whitney_violation(m: &Matroid) -> Option<(Subset, Subset)> {
    let circuits = m.circuits();
    let mut memo = HashMap::new();
    for (i, &c1) in circuits.iter().enumerate() {
        for &c2 in &circuits[i + 1..] {
            if !decomposes(c1.sym_diff(c2), &circuits, &mut memo) {
                return Some((c1, c2));
            }
        }
    }
    None
}

/// Whether `set` splits into pairwise disjoint circuits. Backtracks over the
/// circuits covering the smallest remaining element.
fn decomposes(set: Subset, circuits: &[Subset], memo: &mut HashMap<Subset, bool>) -> bool {
    let Some(first) = set.first() else {
        return true;
    };
    if let Some(&known) = memo.get(&set) {
        return known;
    }
    let result = circuits
        .iter()
        .filter(|c| c.contains(first) && c.is_subset_of(set))
        .any(|&c| decomposes(set.difference(c), circuits, memo));
    memo.insert(set, result);
    result
}

/// A binary representation together with the basis it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    /// `R × m`; column `e` represents element `e + 1`.
    pub matrix: F2Matrix,
    /// Basis elements in row order; their columns form the identity.
    pub basis: Vec<usize>,
}

/// Builds a representation from fundamental circuits of the lexicographically
/// first basis and verifies it against the full rank table.
///
/// Basis element `b_i` gets the unit column `e_i`; any other element `e` gets the
/// incidence vector of its fundamental circuit `C(e, B)` restricted to `B`.
/// Returns `None` exactly when that candidate fails verification, i.e. when the
/// matroid is not binary.
pub fn find_representation(m: &Matroid) -> Option<Representation> {
    let n = m.ground_size();
    let basis = m.first_basis();
    let basis_elems: Vec<usize> = basis.elements().collect();
    let rank = basis_elems.len();
    let mut rows = vec![Subset::EMPTY; rank];
    for (i, &b) in basis_elems.iter().enumerate() {
        rows[i] = rows[i].with(b);
    }
    for e in basis.complement(n).elements() {
        for (i, &b) in basis_elems.iter().enumerate() {
            // b lies on C(e, B) iff B - b + e is still a basis
            if m.rank_of(basis.without(b).with(e)) == rank {
                rows[i] = rows[i].with(e);
            }
        }
    }
    let matrix = F2Matrix::from_rows(n, rows);
    (vector_matroid(&matrix) == *m).then_some(Representation {
        matrix,
        basis: basis_elems,
    })
}

/// F₂ span of the circuit incidence vectors.
pub fn circuit_span(m: &Matroid) -> F2Subspace {
    F2Subspace::span(m.ground_size(), m.circuits())
}

/// Whether the circuits of `m` span exactly `Ker A`.
pub fn circuit_space(m: &Matroid, a: &F2Matrix) -> Result<bool, BinaryError> {
    if a.num_cols() != m.ground_size() || vector_matroid(a) != *m {
        return Err(BinaryError::LabelMismatch);
    }
    Ok(circuit_span(m) == a.kernel())
}
