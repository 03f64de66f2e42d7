//! Polymatroid (β-rank function) checks and the rate-region polyhedron.

use std::fmt;

use crate::subset::{SetFunction, Subset};

/// Which polymatroid condition failed, with the witnessing subsets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolymatroidViolation {
    /// `f(∅) != 0`.
    Normalization { value: f64 },
    /// `f(smaller) > f(larger)` with `smaller ⊂ larger`.
    Monotonicity { smaller: Subset, larger: Subset, excess: f64 },
    /// `f(a ∪ b) + f(a ∩ b) > f(a) + f(b)`.
    Submodularity { a: Subset, b: Subset, excess: f64 },
}

impl fmt::Display for PolymatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PolymatroidViolation::Normalization { value } => write!(f, "f(∅) = {value} is not 0"),
            PolymatroidViolation::Monotonicity { smaller, larger, excess } => {
                write!(f, "not monotone: f({smaller}) exceeds f({larger}) by {excess:e}")
            }
            PolymatroidViolation::Submodularity { a, b, excess } => {
                write!(f, "not submodular at {a}, {b} (excess {excess:e})")
            }
        }
    }
}

/// Checks normalization, monotonicity and submodularity up to additive `tol`.
///
/// Monotonicity and submodularity use their local forms over single-element
/// extensions; returns the first violation found.
pub fn check_polymatroid(f: &SetFunction, tol: f64) -> Result<(), PolymatroidViolation> {
    let m = f.ground_size();
    let empty = f[Subset::EMPTY];
    if empty.abs() > tol {
        return Err(PolymatroidViolation::Normalization { value: empty });
    }
    for s in Subset::all(m) {
        for e in s.complement(m).elements() {
            let excess = f[s] - f[s.with(e)];
            if excess > tol {
                return Err(PolymatroidViolation::Monotonicity {
                    smaller: s,
                    larger: s.with(e),
                    excess,
                });
            }
        }
    }
    for s in Subset::all(m) {
        let outside = s.complement(m);
        for e in outside.elements() {
            for g in outside.elements().filter(|&g| g > e) {
                let (a, b) = (s.with(e), s.with(g));
                let excess = f[a.union(b)] + f[s] - f[a] - f[b];
                if excess > tol {
                    return Err(PolymatroidViolation::Submodularity { a, b, excess });
                }
            }
        }
    }
    Ok(())
}

pub fn is_polymatroid(f: &SetFunction, tol: f64) -> bool {
    check_polymatroid(f, tol).is_ok()
}

/// One face `Σ_{i∈S} R_i <= bound` of the rate polyhedron.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateConstraint {
    pub users: Subset,
    pub bound: f64,
}

impl fmt::Display for RateConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.users.elements().map(|e| format!("R{}", e + 1)).collect();
        write!(f, "{} <= {}", terms.join(" + "), self.bound)
    }
}

/// The `2^m - 1` inequalities `Σ_{i∈S} R_i <= f(S)` over non-empty `S`, in bitmask order.
pub fn rate_region_inequalities(f: &SetFunction) -> Vec<RateConstraint> {
    f.iter()
        .skip(1)
        .map(|(users, bound)| RateConstraint { users, bound })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    #[test]
    fn matroid_rank_tables_are_polymatroids() {
        for (r, n) in [(0, 3), (2, 4), (3, 3), (1, 5)] {
            let m = Matroid::uniform(r, n).unwrap();
            let f = SetFunction::from_fn(n, |s| m.rank_of(s) as f64);
            assert!(is_polymatroid(&f, 0.0));
        }
    }

    #[test]
    fn squared_cardinality_is_supermodular() {
        let f = SetFunction::from_fn(2, |s| (s.len() * s.len()) as f64);
        assert!(matches!(
            check_polymatroid(&f, 0.0),
            Err(PolymatroidViolation::Submodularity { .. })
        ));
    }

    #[test]
    fn normalization_and_monotonicity() {
        let f = SetFunction::new(1, vec![0.5, 1.0]);
        assert!(matches!(check_polymatroid(&f, 0.1), Err(PolymatroidViolation::Normalization { .. })));
        assert!(is_polymatroid(&f, 0.5));
        let g = SetFunction::new(1, vec![0.0, -1.0]);
        assert!(matches!(check_polymatroid(&g, 0.0), Err(PolymatroidViolation::Monotonicity { .. })));
    }

    #[test]
    fn rate_region_faces() {
        let f = SetFunction::new(2, vec![0.0, 1.0, 1.0, 2.0]);
        let faces = rate_region_inequalities(&f);
        assert_eq!(faces.len(), 3);
        assert_eq!(faces[2].to_string(), "R1 + R2 <= 2");
        let single = rate_region_inequalities(&SetFunction::new(1, vec![0.0, 0.5]));
        assert_eq!(single, vec![RateConstraint { users: Subset::singleton(0), bound: 0.5 }]);
    }
}
