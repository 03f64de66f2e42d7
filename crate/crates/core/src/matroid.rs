//! Matroids stored as dense, validated rank tables.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::subset::{Subset, MAX_GROUND};

/// Ground-set cap for [`Matroid::is_isomorphic`].
pub const MAX_ISO_GROUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `r(S) <= |S|` (and hence `r(∅) = 0`).
    R1,
    /// `S ⊆ T` implies `r(S) <= r(T)`.
    R2,
    /// `r(A ∪ B) + r(A ∩ B) <= r(A) + r(B)`.
    R3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
        };
        f.write_str(name)
    }
}

/// First violated rank axiom with the subsets that witness it.
///
/// For R1 both witnesses are the offending set. For R2 the pair is `(S, T)` with
/// `S ⊆ T` and `r(S) > r(T)`. For R3 the pair is `(A, B)` with
/// `r(A ∪ B) + r(A ∩ B) > r(A) + r(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub first: Subset,
    pub second: Subset,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::R1 => write!(f, "axiom R1 violated: rank of {} exceeds its size", self.first),
            Axiom::R2 => write!(
                f,
                "axiom R2 violated: rank of {} exceeds rank of its superset {}",
                self.first, self.second
            ),
            Axiom::R3 => write!(
                f,
                "axiom R3 violated: {} and {} are not submodular",
                self.first, self.second
            ),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("{0}")]
    AxiomViolation(AxiomViolation),
    #[error("rank table has {got} entries, expected 2^{m} = {}", 1usize << m)]
    LengthMismatch { m: usize, got: usize },
    #[error("ground set of size {0} exceeds the supported maximum")]
    GroundTooLarge(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// A matroid on `E_m = {1, .., m}` given by its rank function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    m: usize,
    rank: Vec<u8>,
}

/// Independent sets, bases and circuits, each sorted by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Families {
    pub independents: Vec<Subset>,
    pub bases: Vec<Subset>,
    pub circuits: Vec<Subset>,
}

/// Scans for the first rank-axiom violation of an integer table.
///
/// Monotonicity and submodularity are checked in their local forms
/// (`r(S) <= r(S+e)` and `r(S+e) + r(S+f) >= r(S+e+f) + r(S)`), which are
/// equivalent to the global axioms.
pub fn check_rank_axioms(m: usize, rank: &[u32]) -> Option<AxiomViolation> {
    let full = Subset::full(m);
    let r = |s: Subset| rank[s.index()] as i64;
    if let Some(s) = Subset::all(m).find(|&s| r(s) > s.len() as i64) {
        return Some(AxiomViolation { axiom: Axiom::R1, first: s, second: s });
    }
    for s in Subset::all(m) {
        for e in s.complement(m).elements() {
            if r(s) > r(s.with(e)) {
                return Some(AxiomViolation {
                    axiom: Axiom::R2,
                    first: s,
                    second: s.with(e),
                });
            }
        }
    }
    for s in Subset::all(m) {
        let outside = full.difference(s);
        for e in outside.elements() {
            for f in outside.elements().filter(|&f| f > e) {
                if r(s.with(e)) + r(s.with(f)) < r(s.with(e).with(f)) + r(s) {
                    return Some(AxiomViolation {
                        axiom: Axiom::R3,
                        first: s.with(e),
                        second: s.with(f),
                    });
                }
            }
        }
    }
    None
}

impl Matroid {
    /// Validates `table` against the rank axioms.
    pub fn from_rank(m: usize, table: &[u32]) -> Result<Self, MatroidError> {
        if m > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(m));
        }
        if table.len() != 1 << m {
            return Err(MatroidError::LengthMismatch { m, got: table.len() });
        }
        if let Some(v) = check_rank_axioms(m, table) {
            return Err(MatroidError::AxiomViolation(v));
        }
        Ok(Matroid {
            m,
            rank: table.iter().map(|&r| r as u8).collect(),
        })
    }

    /// Only for tables already known to satisfy the axioms.
    pub(crate) fn from_rank_unchecked(m: usize, rank: Vec<u8>) -> Self {
        debug_assert_eq!(rank.len(), 1 << m);
        debug_assert!(check_rank_axioms(m, &rank.iter().map(|&r| r as u32).collect::<Vec<_>>()).is_none());
        Matroid { m, rank }
    }

    /// `U_{r,n}`: every set of at most `r` elements is independent.
    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(n));
        }
        if r > n {
            return Err(MatroidError::InvalidParams(format!(
                "rank {r} exceeds ground size {n}"
            )));
        }
        let rank = Subset::all(n).map(|s| s.len().min(r) as u8).collect();
        Ok(Matroid { m: n, rank })
    }

    /// Free matroid `U_{n,n}`.
    pub fn free(n: usize) -> Self {
        Matroid::uniform(n, n).expect("free matroid parameters are valid")
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn rank_of(&self, s: Subset) -> usize {
        self.rank[s.index()] as usize
    }

    /// `r(E)`.
    pub fn rank(&self) -> usize {
        self.rank_of(Subset::full(self.m))
    }

    pub fn rank_table(&self) -> Vec<u32> {
        self.rank.iter().map(|&r| r as u32).collect()
    }

    #[inline]
    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == s.len()
    }

    /// Closure-free circuit test: dependent, and every one-element deletion independent.
    pub fn is_circuit(&self, s: Subset) -> bool {
        !s.is_empty() && self.rank_of(s) + 1 == s.len() && s.elements().all(|e| self.is_independent(s.without(e)))
    }

    pub fn families(&self) -> Families {
        let r = self.rank();
        let independents: Vec<Subset> = Subset::all(self.m).filter(|&s| self.is_independent(s)).collect();
        let bases = independents.iter().copied().filter(|s| s.len() == r).collect();
        let circuits = Subset::all(self.m).filter(|&s| self.is_circuit(s)).collect();
        Families {
            independents,
            bases,
            circuits,
        }
    }

    pub fn circuits(&self) -> Vec<Subset> {
        Subset::all(self.m).filter(|&s| self.is_circuit(s)).collect()
    }

    /// Greedy basis: scans elements 1..m in order, keeping those that raise the rank.
    /// This is the lexicographically first basis.
    pub fn first_basis(&self) -> Subset {
        (0..self.m).fold(Subset::EMPTY, |b, e| {
            if self.is_independent(b.with(e)) {
                b.with(e)
            } else {
                b
            }
        })
    }

    /// `r*(S) = r(S^c) + |S| - r(E)`.
    pub fn dual(&self) -> Matroid {
        let total = self.rank();
        let rank = Subset::all(self.m)
            .map(|s| (self.rank_of(s.complement(self.m)) + s.len() - total) as u8)
            .collect();
        Matroid { m: self.m, rank }
    }

    /// `M|S`, relabelled onto `{1, .., |S|}` preserving the order of `S`.
    pub fn restrict(&self, s: Subset) -> Matroid {
        assert!(s.is_subset_of(Subset::full(self.m)), "restriction set outside ground set");
        let k = s.len();
        let rank = (0..1u32 << k)
            .map(|packed| self.rank[Subset::expand(packed, s).index()])
            .collect();
        Matroid { m: k, rank }
    }

    /// Deletion `M \ S = M | (E - S)`.
    pub fn delete(&self, s: Subset) -> Matroid {
        self.restrict(s.complement(self.m))
    }

    /// `M / S = (M^* | (E - S))^*`, on `E - S` relabelled in order.
    pub fn contract(&self, s: Subset) -> Matroid {
        self.dual().restrict(s.complement(self.m)).dual()
    }

    /// Contraction from its basis-extension definition: `X ⊆ E - S` is independent in
    /// `M / S` iff `X ∪ B` is independent in `M` for some basis `B` of `M|S`.
    pub fn contract_by_bases(&self, s: Subset) -> Matroid {
        let rest = s.complement(self.m);
        let rs = self.rank_of(s);
        let bases_of_s: Vec<Subset> = s
            .subsets()
            .filter(|&b| b.len() == rs && self.is_independent(b))
            .collect();
        let k = rest.len();
        let independent: Vec<bool> = (0..1u32 << k)
            .map(|packed| {
                let x = Subset::expand(packed, rest);
                bases_of_s.iter().any(|&b| self.is_independent(x.union(b)))
            })
            .collect();
        // rank = size of a largest independent subset
        let rank = (0..1u32 << k)
            .map(|packed| {
                Subset::from_bits(packed)
                    .subsets()
                    .filter(|t| independent[t.index()])
                    .map(|t| t.len())
                    .max()
                    .unwrap_or(0) as u8
            })
            .collect();
        Matroid { m: k, rank }
    }

    /// Histogram of `(|S|, r(S))` pairs, an isomorphism invariant.
    fn profile(&self) -> Vec<u32> {
        let width = self.m + 1;
        let mut hist = vec![0u32; width * width];
        for s in Subset::all(self.m) {
            hist[s.len() * width + self.rank_of(s)] += 1;
        }
        hist
    }

    /// Per-element invariant: profile restricted to the sets containing the element.
    fn element_signature(&self, e: usize) -> Vec<u32> {
        let width = self.m + 1;
        let mut hist = vec![0u32; width * width];
        for s in Subset::all(self.m).filter(|s| s.contains(e)) {
            hist[s.len() * width + self.rank_of(s)] += 1;
        }
        hist
    }

    /// Whether a relabelling of the ground set maps one rank table onto the other.
    ///
    /// Exhaustive over permutations, pruned by element signatures; capped at
    /// [`MAX_ISO_GROUND`] elements.
    pub fn is_isomorphic(&self, other: &Matroid) -> Result<bool, MatroidError> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    /// A permutation `p` with `r_other(p(S)) = r_self(S)` for all `S`, if one exists.
    pub fn find_isomorphism(&self, other: &Matroid) -> Result<Option<Vec<usize>>, MatroidError> {
        let m = self.m.max(other.m);
        if m > MAX_ISO_GROUND {
            return Err(MatroidError::GroundTooLarge(m));
        }
        if self.m != other.m || self.rank() != other.rank() || self.profile() != other.profile() {
            return Ok(None);
        }
        let sig_a: Vec<_> = (0..self.m).map(|e| self.element_signature(e)).collect();
        let sig_b: Vec<_> = (0..self.m).map(|e| other.element_signature(e)).collect();
        let mut image = vec![usize::MAX; self.m];
        let mut used = Subset::EMPTY;
        Ok(self
            .extend_isomorphism(other, &sig_a, &sig_b, 0, &mut image, &mut used)
            .then_some(image))
    }

    fn extend_isomorphism(
        &self,
        other: &Matroid,
        sig_a: &[Vec<u32>],
        sig_b: &[Vec<u32>],
        next: usize,
        image: &mut [usize],
        used: &mut Subset,
    ) -> bool {
        if next == self.m {
            return true;
        }
        for target in 0..self.m {
            if used.contains(target) || sig_a[next] != sig_b[target] {
                continue;
            }
            image[next] = target;
            // every subset of the assigned prefix that contains `next` must match
            let prefix = Subset::full(next);
            let consistent = prefix.subsets().all(|s| {
                let s = s.with(next);
                let mapped = s
                    .elements()
                    .fold(Subset::EMPTY, |acc, e| acc.with(image[e]));
                self.rank_of(s) == other.rank_of(mapped)
            });
            if consistent {
                *used = used.with(target);
                if self.extend_isomorphism(other, sig_a, sig_b, next + 1, image, used) {
                    return true;
                }
                *used = used.without(target);
            }
        }
        false
    }

    /// Searches for `N` as a minor `M / C | R` with `C` and `R` disjoint.
    ///
    /// Contraction sets are restricted to independent sets of `M`, which loses no
    /// minors. Returns the witness pair `(R, C)` in the labels of `self`.
    pub fn find_minor(&self, target: &Matroid) -> Result<Option<(Subset, Subset)>, MatroidError> {
        if target.m > MAX_ISO_GROUND {
            return Err(MatroidError::GroundTooLarge(target.m));
        }
        if target.m > self.m {
            return Ok(None);
        }
        let want_rank = target.rank();
        let n = target.m;
        let contract_sets: Vec<Subset> = Subset::all(self.m)
            .filter(|&c| self.is_independent(c) && c.len() + n <= self.m)
            .collect();
        let found = contract_sets.par_iter().find_map_first(|&c| {
            let rc = self.rank_of(c);
            let rest = c.complement(self.m);
            let contracted = self.contract(c);
            rest.subsets()
                .filter(|r| r.len() == n && self.rank_of(r.union(c)) - rc == want_rank)
                .find(|&r| {
                    let minor = contracted.restrict(Subset::from_bits(r.compress(rest)));
                    minor.is_isomorphic(target).unwrap_or(false)
                })
                .map(|r| (r, c))
        });
        Ok(found)
    }

    pub fn has_minor(&self, target: &Matroid) -> Result<bool, MatroidError> {
        Ok(self.find_minor(target)?.is_some())
    }

    /// `Some((r, n))` when this is the uniform matroid `U_{r,n}`.
    pub fn as_uniform(&self) -> Option<(usize, usize)> {
        let r = self.rank();
        Subset::all(self.m)
            .all(|s| self.rank_of(s) == s.len().min(r))
            .then_some((r, self.m))
    }

    /// Short human label: `U_{r,n}` for uniform matroids, otherwise the rank.
    pub fn describe(&self) -> String {
        match self.as_uniform() {
            Some((r, n)) => format!("U_{{{r},{n}}}"),
            None => format!("rank {} on {} elements", self.rank(), self.m),
        }
    }
}
