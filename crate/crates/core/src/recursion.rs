//! Two-user bridge between conditional informations and linear-form
//! informations, and the recursions that lift it to `m` users.
//!
//! Every quantity here is an information between linear forms of the inputs and
//! `(Y, X[K])` for a conditioning set `K`, written `h(T, K) = I(⊕_{i∈T} X_i ; Y X[K])`.

use std::fmt;

use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecursionError {
    #[error("{kind} vector {values:?} is not feasible")]
    InfeasibleVector { kind: &'static str, values: [i64; 3] },
    #[error("inconsistent derivation for forms {forms} given {given}: {detail}")]
    Inconsistent { forms: Subset, given: Subset, detail: String },
    #[error("reconstructed table is not a matroid: {0}")]
    NotMatroid(MatroidError),
    #[error("expected 2^{m} linear-form values, got {got}")]
    Length { m: usize, got: usize },
}

/// `[I(X1; Y X2), I(X2; Y X1), I(X1 X2; Y)]` for a two-user channel with integer UMIF.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IVector2([u8; 3]);

/// `[I(X1; Y), I(X2; Y), I(X1 + X2; Y)]`, each a bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JVector2([u8; 3]);

/// The five feasible pairs, from the case analysis of each polymatroid-feasible
/// `I`: nothing recoverable, only `X2`, only `X1`, only the parity, everything.
const BRIDGE: [([u8; 3], [u8; 3]); 5] = [
    ([0, 0, 0], [0, 0, 0]),
    ([0, 1, 1], [0, 1, 0]),
    ([1, 0, 1], [1, 0, 0]),
    ([1, 1, 1], [0, 0, 1]),
    ([1, 1, 2], [1, 1, 1]),
];

fn as_small(values: [i64; 3]) -> Option<[u8; 3]> {
    let mut out = [0u8; 3];
    for (o, v) in out.iter_mut().zip(values) {
        *o = u8::try_from(v).ok()?;
    }
    Some(out)
}

impl IVector2 {
    pub fn new(values: [i64; 3]) -> Result<Self, RecursionError> {
        as_small(values)
            .filter(|v| BRIDGE.iter().any(|(i, _)| i == v))
            .map(IVector2)
            .ok_or(RecursionError::InfeasibleVector { kind: "I", values })
    }

    pub fn values(self) -> [u8; 3] {
        self.0
    }

    pub fn all() -> impl Iterator<Item = IVector2> {
        BRIDGE.iter().map(|(i, _)| IVector2(*i))
    }

    pub fn to_j(self) -> JVector2 {
        let (_, j) = BRIDGE.iter().find(|(i, _)| *i == self.0).expect("validated at construction");
        JVector2(*j)
    }
}

impl JVector2 {
    pub fn new(values: [i64; 3]) -> Result<Self, RecursionError> {
        as_small(values)
            .filter(|v| BRIDGE.iter().any(|(_, j)| j == v))
            .map(JVector2)
            .ok_or(RecursionError::InfeasibleVector { kind: "J", values })
    }

    pub fn values(self) -> [u8; 3] {
        self.0
    }

    pub fn all() -> impl Iterator<Item = JVector2> {
        BRIDGE.iter().map(|(_, j)| JVector2(*j))
    }

    pub fn to_i(self) -> IVector2 {
        let (i, _) = BRIDGE.iter().find(|(_, j)| *j == self.0).expect("validated at construction");
        IVector2(*i)
    }
}

impl fmt::Display for IVector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for JVector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

pub fn bridge_i_to_j(values: [i64; 3]) -> Result<JVector2, RecursionError> {
    Ok(IVector2::new(values)?.to_j())
}

pub fn bridge_j_to_i(values: [i64; 3]) -> Result<IVector2, RecursionError> {
    Ok(JVector2::new(values)?.to_i())
}

/// `g(s) = I(⊕_{i∈s} X_i ; Y)` for every `s ⊆ E_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForms {
    m: usize,
    bits: Vec<bool>,
}

impl LinearForms {
    pub fn new(m: usize, bits: Vec<bool>) -> Result<Self, RecursionError> {
        if bits.len() != 1 << m {
            return Err(RecursionError::Length { m, got: bits.len() });
        }
        Ok(LinearForms { m, bits })
    }

    pub fn from_fn(m: usize, f: impl FnMut(Subset) -> bool) -> Self {
        LinearForms { m, bits: Subset::all(m).map(f).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn get(&self, s: Subset) -> bool {
        self.bits[s.index()]
    }

    /// Forms carrying one bit.
    pub fn informative(&self) -> impl Iterator<Item = Subset> + '_ {
        Subset::all(self.m).filter(|&s| self.get(s))
    }
}

/// Table of `h(T, K)` over disjoint pairs.
struct FormTable {
    m: usize,
    values: Vec<Option<i64>>,
}

impl FormTable {
    fn new(m: usize) -> Self {
        FormTable { m, values: vec![None; 1 << (2 * m)] }
    }

    fn slot(&self, t: Subset, k: Subset) -> usize {
        debug_assert!(t.is_disjoint(k));
        t.index() << self.m | k.index()
    }

    fn get(&self, t: Subset, k: Subset) -> i64 {
        if t.is_empty() {
            return 0;
        }
        self.values[self.slot(t, k)].unwrap_or_else(|| panic!("h({t}, {k}) used before it was derived"))
    }

    /// Records a derived value, failing if an earlier derivation disagrees.
    fn set(&mut self, t: Subset, k: Subset, value: i64) -> Result<(), RecursionError> {
        let slot = self.slot(t, k);
        match self.values[slot] {
            Some(prev) if prev != value => Err(RecursionError::Inconsistent {
                forms: t,
                given: k,
                detail: format!("derived both {prev} and {value}"),
            }),
            _ => {
                self.values[slot] = Some(value);
                Ok(())
            }
        }
    }
}

/// Subsets of `E_m` grouped by size.
fn by_size(m: usize) -> Vec<Vec<Subset>> {
    let mut levels = vec![Vec::new(); m + 1];
    for s in Subset::all(m) {
        levels[s.len()].push(s);
    }
    levels
}

/// Derives every linear-form information from an integer UMIF table.
///
/// Chain-rule differences give `h({i}, K)`. A form over `T + j` is then reached
/// by treating `U1 = ⊕_T X` and `U2 = X_j` as a two-user channel with output
/// `(Y, X[K])`: its I-vector is assembled from already derived values and the
/// bridge yields `I(U1 + U2; Y X[K])`. Every split of `T + j` is tried and must agree.
pub fn linear_forms_from_umif(matroid: &Matroid) -> Result<LinearForms, RecursionError> {
    let m = matroid.ground_size();
    let full = Subset::full(m);
    let total = matroid.rank() as i64;
    // I(X[U]; Y) = I(X[E]; Y) - I(X[E-U]; Y X[U])
    let a = |u: Subset| total - matroid.rank_of(full.difference(u)) as i64;
    let mut table = FormTable::new(m);
    for k in Subset::all(m) {
        for i in k.complement(m).elements() {
            table.set(Subset::singleton(i), k, a(k.with(i)) - a(k))?;
        }
    }
    for level in by_size(m).iter().skip(2) {
        for &t in level {
            for k in t.complement(m).subsets() {
                for j in t.elements() {
                    let rest = t.without(j);
                    let given_j = k.with(j);
                    let single = table.get(Subset::singleton(j), k);
                    let joint = single + table.get(rest, given_j);
                    let i_vec = [table.get(rest, given_j), joint - table.get(rest, k), joint];
                    let j_vec = IVector2::new(i_vec)
                        .map_err(|_| RecursionError::Inconsistent {
                            forms: t,
                            given: k,
                            detail: format!("pair ({rest}, {}) has infeasible I-vector {i_vec:?}", j + 1),
                        })?
                        .to_j()
                        .values();
                    if j_vec[0] as i64 != table.get(rest, k) || j_vec[1] as i64 != single {
                        return Err(RecursionError::Inconsistent {
                            forms: t,
                            given: k,
                            detail: format!("bridge output {j_vec:?} contradicts known marginals"),
                        });
                    }
                    table.set(t, k, j_vec[2] as i64)?;
                }
            }
        }
    }
    let bits = Subset::all(m).map(|s| table.get(s, Subset::EMPTY) == 1).collect();
    Ok(LinearForms { m, bits })
}

/// Rebuilds the UMIF table from the linear-form informations.
///
/// Conditioning is added one input at a time: for `K = K' + i`, the J-vector of
/// the pair `(⊕_T X, X_i)` given `(Y, X[K'])` is known, and the bridge returns
/// `I(⊕_T X ; Y X[K'] X_i)`. The chain rule then sums single-input terms:
/// `I(X[S]; Y X[S^c]) = Σ_k h({s_k}, S^c ∪ {s_1..s_{k-1}})`.
pub fn umif_from_linear_forms(forms: &LinearForms) -> Result<Matroid, RecursionError> {
    let m = forms.m;
    let mut table = FormTable::new(m);
    for t in Subset::all(m).skip(1) {
        table.set(t, Subset::EMPTY, forms.get(t) as i64)?;
    }
    for level in by_size(m).iter().skip(1) {
        for &k in level {
            for t in k.complement(m).subsets().skip(1) {
                for i in k.elements() {
                    let base = k.without(i);
                    let j_vec = [
                        table.get(t, base),
                        table.get(Subset::singleton(i), base),
                        table.get(t.with(i), base),
                    ];
                    let i_vec = JVector2::new(j_vec)
                        .map_err(|_| RecursionError::Inconsistent {
                            forms: t,
                            given: k,
                            detail: format!("pair ({t}, {}) has infeasible J-vector {j_vec:?}", i + 1),
                        })?
                        .to_i()
                        .values();
                    table.set(t, k, i_vec[0] as i64)?;
                }
            }
        }
    }
    let rank: Vec<u32> = Subset::all(m)
        .map(|s| {
            let mut given = s.complement(m);
            s.elements()
                .map(|e| {
                    let term = table.get(Subset::singleton(e), given);
                    given = given.with(e);
                    term as u32
                })
                .sum()
        })
        .collect();
    Matroid::from_rank(m, &rank).map_err(RecursionError::NotMatroid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bridge_cases() {
        assert_eq!(bridge_i_to_j([1, 1, 2]).unwrap().values(), [1, 1, 1]);
        assert_eq!(bridge_i_to_j([0, 0, 0]).unwrap().values(), [0, 0, 0]);
        assert_eq!(bridge_i_to_j([0, 1, 1]).unwrap().values(), [0, 1, 0]);
        assert_eq!(bridge_i_to_j([1, 1, 1]).unwrap().values(), [0, 0, 1]);
        assert_eq!(bridge_i_to_j([1, 0, 1]).unwrap().values(), [1, 0, 0]);
    }

    #[test]
    fn bridges_are_mutually_inverse() {
        for i in IVector2::all() {
            assert_eq!(i.to_j().to_i(), i);
        }
        for j in JVector2::all() {
            assert_eq!(j.to_i().to_j(), j);
        }
    }

    #[test]
    fn infeasible_vectors() {
        assert!(matches!(bridge_i_to_j([0, 0, 1]), Err(RecursionError::InfeasibleVector { kind: "I", .. })));
        assert!(matches!(bridge_j_to_i([1, 1, 0]), Err(RecursionError::InfeasibleVector { kind: "J", .. })));
        assert!(bridge_i_to_j([-1, 0, 0]).is_err());
    }

    #[test]
    fn u12_has_only_the_parity_form() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        let g = linear_forms_from_umif(&u12).unwrap();
        assert_eq!(g.informative().collect::<Vec<_>>(), vec![Subset::full(2)]);
        assert_eq!(umif_from_linear_forms(&g).unwrap(), u12);
    }

    #[test]
    fn free_matroid_reveals_every_form() {
        let g = linear_forms_from_umif(&Matroid::free(2)).unwrap();
        assert!(Subset::all(2).all(|s| g.get(s) == !s.is_empty()));
        assert_eq!(umif_from_linear_forms(&g).unwrap(), Matroid::free(2));
    }

    #[test]
    fn u24_is_not_realizable() {
        let err = linear_forms_from_umif(&Matroid::uniform(2, 4).unwrap()).unwrap_err();
        assert!(matches!(err, RecursionError::Inconsistent { .. }), "{err}");
    }

    #[test]
    fn forms_outside_any_rowspace_are_rejected() {
        // X1 and X2 each revealed but not their parity
        let g = LinearForms::new(2, vec![false, true, true, false]).unwrap();
        assert!(umif_from_linear_forms(&g).is_err());
    }
}
