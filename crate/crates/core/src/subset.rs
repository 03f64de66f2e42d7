//! Bitmask subsets of a small ground set and dense set functions indexed by them.
//!
//! Element `i` of the ground set `{1, .., m}` is stored in bit `i - 1`, so the
//! element with label 1 is the least significant bit. Internally elements are
//! addressed by their zero-based bit position.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Largest ground set any module accepts.
pub const MAX_GROUND: usize = 16;

/// A subset of `{1, .., m}` stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The whole ground set `E_m`.
    #[inline]
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_GROUND);
        Subset(((1u64 << m) - 1) as u32)
    }

    /// Singleton holding the element at zero-based position `e`.
    #[inline]
    pub fn singleton(e: usize) -> Self {
        Subset(1 << e)
    }

    /// Builds a subset from one-based element labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        labels.iter().fold(Subset::EMPTY, |s, &l| {
            assert!((1..=MAX_GROUND).contains(&l), "element label {l} out of range");
            s.with(l - 1)
        })
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | 1 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1 << e))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn complement(self, m: usize) -> Self {
        Subset(Subset::full(m).0 ^ self.0)
    }

    #[inline]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Symmetric difference, i.e. addition of incidence vectors over F₂.
    #[inline]
    pub fn sym_diff(self, other: Subset) -> Self {
        Subset(self.0 ^ other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Parity of `|self ∩ other|`, the F₂ inner product of incidence vectors.
    #[inline]
    pub fn dot(self, other: Subset) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    /// Smallest element (zero-based), if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Zero-based elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Every subset of this set, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Gathers the bits of `self` selected by `mask` into the low bits (pext).
    pub fn compress(self, mask: Subset) -> u32 {
        let mut out = 0;
        for (k, e) in mask.elements().enumerate() {
            if self.contains(e) {
                out |= 1 << k;
            }
        }
        out
    }

    /// Scatters the low bits of `packed` onto the positions of `mask` (pdep).
    pub fn expand(packed: u32, mask: Subset) -> Subset {
        let mut out = 0;
        for (k, e) in mask.elements().enumerate() {
            if packed >> k & 1 == 1 {
                out |= 1 << e;
            }
        }
        Subset(out)
    }

    /// All `2^m` subsets of `E_m` in bitmask order.
    pub fn all(m: usize) -> impl Iterator<Item = Subset> + Clone {
        (0..1u32 << m).map(Subset)
    }

    /// Fixed-width bitstring with element 1 leftmost; `∅` when `m == 0`.
    pub fn render(self, m: usize) -> String {
        if m == 0 {
            return "∅".to_string();
        }
        (0..m).map(|e| if self.contains(e) { '1' } else { '0' }).collect()
    }

    /// Inverse of [`Subset::render`].
    pub fn parse(text: &str) -> Option<(Subset, usize)> {
        if text == "∅" {
            return Some((Subset::EMPTY, 0));
        }
        if text.len() > MAX_GROUND {
            return None;
        }
        let mut s = Subset::EMPTY;
        for (e, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => s = s.with(e),
                _ => return None,
            }
        }
        Some((s, text.len()))
    }

    /// Set notation with one-based labels, e.g. `{1,3}`.
    pub fn labels(self) -> String {
        let inner: Vec<String> = self.elements().map(|e| (e + 1).to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels())
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Submask enumeration in increasing order.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing numeric order
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(Subset(cur))
    }
}

/// A real-valued function on every subset of `E_m`, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct SetFunction {
    m: usize,
    values: Vec<f64>,
}

impl SetFunction {
    /// # Panics
    ///
    /// Panics if `values.len() != 2^m` or `m > MAX_GROUND`.
    pub fn new(m: usize, values: Vec<f64>) -> Self {
        assert!(m <= MAX_GROUND, "ground set too large: {m}");
        assert_eq!(values.len(), 1 << m, "set function needs 2^m values");
        SetFunction { m, values }
    }

    pub fn from_fn(m: usize, f: impl FnMut(Subset) -> f64) -> Self {
        SetFunction::new(m, Subset::all(m).map(f).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    /// Largest absolute difference to another set function on the same ground set.
    pub fn max_abs_diff(&self, other: &SetFunction) -> f64 {
        assert_eq!(self.m, other.m);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (Subset(i as u32), v))
    }
}

impl Index<Subset> for SetFunction {
    type Output = f64;

    fn index(&self, s: Subset) -> &f64 {
        &self.values[s.index()]
    }
}

impl IndexMut<Subset> for SetFunction {
    fn index_mut(&mut self, s: Subset) -> &mut f64 {
        &mut self.values[s.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn labels_are_one_based_little_endian() {
        let s = Subset::from_labels(&[1, 3]);
        assert_eq!(s.bits(), 0b101);
        assert_eq!(s.render(4), "1010");
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(Subset::parse("1010"), Some((s, 4)));
        assert_eq!(Subset::EMPTY.render(0), "∅");
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let mask = Subset::from_bits(0b1011_0010);
        let subs: Vec<_> = mask.subsets().collect();
        assert_eq!(subs.len(), 16);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|s| s.is_subset_of(mask)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn complement_is_xor_with_full(m in 0usize..=16, raw in any::<u32>()) {
            let s = Subset::from_bits(raw & Subset::full(m).bits());
            prop_assert_eq!(s.complement(m).bits(), Subset::full(m).bits() ^ s.bits());
            prop_assert_eq!(s.complement(m).complement(m), s);
        }

        #[test]
        fn compress_expand_round_trip(raw in any::<u16>(), mask in any::<u16>()) {
            let s = Subset::from_bits(raw as u32);
            let mask = Subset::from_bits(mask as u32);
            let packed = s.compress(mask);
            prop_assert!(packed < 1 << mask.len());
            prop_assert_eq!(Subset::expand(packed, mask), s.intersection(mask));
        }
    }
}
