//! Dense matrices and subspaces over F₂.
//!
//! Rows are bitmasks over the columns; column `j` corresponds to ground element
//! `j + 1`, matching the [`Subset`] bit order, so a row is itself a subset.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::subset::{Subset, MAX_GROUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixParseError {
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("invalid matrix entry {0:?}, expected '0' or '1'")]
    BadEntry(char),
    #[error("matrix has {0} columns, at most {MAX_GROUND} are supported")]
    TooWide(usize),
}

/// A `rows × cols` matrix over F₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<Subset>,
}

impl F2Matrix {
    /// # Panics
    ///
    /// Panics if `cols > MAX_GROUND` or a row has bits beyond `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Subset>) -> Self {
        assert!(cols <= MAX_GROUND, "too many columns: {cols}");
        let full = Subset::full(cols);
        assert!(rows.iter().all(|r| r.is_subset_of(full)), "row wider than {cols} columns");
        F2Matrix { cols, rows }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix::from_rows(n, (0..n).map(Subset::singleton).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix::from_rows(cols, vec![Subset::EMPTY; rows])
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].contains(col)
    }

    /// Column `j` as a bitmask over the rows.
    pub fn column(&self, j: usize) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains(j))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// `A x`, with bit `i` of the result holding row `i`'s inner product with `x`.
    pub fn apply(&self, x: Subset) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (r.dot(x) as u32) << i)
    }

    /// Rank of the column submatrix selected by `cols`.
    pub fn rank_of_columns(&self, cols: Subset) -> usize {
        let mut basis = [0u32; MAX_GROUND];
        let mut rank = 0;
        for row in &self.rows {
            let mut v = row.intersection(cols).bits();
            while v != 0 {
                let pivot = v.trailing_zeros() as usize;
                if basis[pivot] == 0 {
                    basis[pivot] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[pivot];
            }
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.rank_of_columns(Subset::full(self.cols))
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut rows: Vec<u32> = self.rows.iter().map(|r| r.bits()).collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            let Some(found) = (top..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != top && *row >> col & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        let reduced = F2Matrix::from_rows(self.cols, rows.into_iter().map(Subset::from_bits).collect());
        (reduced, pivots)
    }

    /// Standard representative form `[I_R | A']`.
    ///
    /// Row-reduces, then permutes columns so the pivot columns come first.
    /// `column_order[k]` is the original column placed at position `k`.
    pub fn standard_form(&self) -> StandardForm {
        let (reduced, pivots) = self.rref();
        let mut column_order = pivots.clone();
        column_order.extend((0..self.cols).filter(|c| !pivots.contains(c)));
        let matrix = reduced.permute_columns(&column_order);
        StandardForm { matrix, column_order }
    }

    /// Column `k` of the result is column `order[k]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> F2Matrix {
        assert_eq!(order.len(), self.cols);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                order
                    .iter()
                    .enumerate()
                    .filter(|&(_, &src)| r.contains(src))
                    .fold(Subset::EMPTY, |acc, (k, _)| acc.with(k))
            })
            .collect();
        F2Matrix::from_rows(self.cols, rows)
    }

    /// `Ker A = {x : A x = 0}`.
    pub fn kernel(&self) -> F2Subspace {
        let (reduced, pivots) = self.rref();
        let pivot_set = pivots.iter().fold(Subset::EMPTY, |s, &p| s.with(p));
        let free = pivot_set.complement(self.cols);
        let vectors: Vec<Subset> = free
            .elements()
            .map(|f| {
                // x_f = 1, pivots solved from their rows
                reduced
                    .rows
                    .iter()
                    .zip(&pivots)
                    .filter(|(row, _)| row.contains(f))
                    .fold(Subset::singleton(f), |x, (_, &p)| x.with(p))
            })
            .collect();
        F2Subspace::span(self.cols, vectors)
    }

    /// Row space of the matrix.
    pub fn row_space(&self) -> F2Subspace {
        F2Subspace::span(self.cols, self.rows.clone())
    }

    /// Rows separated by `;`, each row a `0`/`1` string with column 1 leftmost.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| r.render(self.cols)).collect();
        rows.join(";")
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for F2Matrix {
    type Err = MatrixParseError;

    /// Parses `"101;011"`. The empty string is the `0 × 0` matrix.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(F2Matrix::zeros(0, 0));
        }
        let mut cols = None;
        let mut rows = Vec::new();
        for (i, raw) in text.split(';').enumerate() {
            let raw = raw.trim();
            let width = raw.chars().count();
            let expected = *cols.get_or_insert(width);
            if width != expected {
                return Err(MatrixParseError::RaggedRow { row: i, got: width, expected });
            }
            if width > MAX_GROUND {
                return Err(MatrixParseError::TooWide(width));
            }
            let mut row = Subset::EMPTY;
            for (j, c) in raw.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => row = row.with(j),
                    other => return Err(MatrixParseError::BadEntry(other)),
                }
            }
            rows.push(row);
        }
        Ok(F2Matrix::from_rows(cols.unwrap_or(0), rows))
    }
}

/// Result of [`F2Matrix::standard_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub matrix: F2Matrix,
    pub column_order: Vec<usize>,
}

/// A linear subspace of `F₂^n`, kept as a reduced echelon basis so that equal
/// subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Subspace {
    n: usize,
    basis: Vec<Subset>,
}

impl F2Subspace {
    pub fn zero(n: usize) -> Self {
        F2Subspace { n, basis: Vec::new() }
    }

    /// Span of arbitrary vectors.
    pub fn span(n: usize, vectors: impl IntoIterator<Item = Subset>) -> Self {
        let rows = vectors.into_iter().collect();
        let (reduced, _) = F2Matrix::from_rows(n, rows).rref();
        F2Subspace { n, basis: reduced.rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis: reduced echelon form, pivots on the lowest set bits.
    pub fn basis(&self) -> &[Subset] {
        &self.basis
    }

    pub fn contains(&self, v: Subset) -> bool {
        let mut v = v.bits();
        for b in &self.basis {
            let pivot = b.bits().trailing_zeros();
            if v >> pivot & 1 == 1 {
                v ^= b.bits();
            }
        }
        v == 0
    }

    /// All `2^dim` members, generated as combinations of the basis.
    pub fn vectors(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..1u32 << self.basis.len()).map(move |c| {
            Subset::from_bits(c)
                .elements()
                .fold(Subset::EMPTY, |acc, k| acc.sym_diff(self.basis[k]))
        })
    }

    /// `{x : x·v = 0 for all v in self}`.
    pub fn orthogonal_complement(&self) -> F2Subspace {
        F2Matrix::from_rows(self.n, self.basis.clone()).kernel()
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> F2Matrix {
        text.parse().unwrap()
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = F2Matrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel().dim(), 0);
        assert_eq!(id.to_text(), "100;010;001");
    }

    #[test]
    fn single_row_of_ones() {
        let a = m("11");
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.basis(), &[Subset::from_labels(&[1, 2])]);
    }

    #[test]
    fn standard_form_of_reduced_matrix() {
        let a = m("101;011");
        let sf = a.standard_form();
        assert_eq!(sf.matrix, a);
        assert_eq!(sf.column_order, vec![0, 1, 2]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn standard_form_permutes_pivots_forward() {
        let a = m("0110;0011;0101");
        let sf = a.standard_form();
        assert_eq!(sf.column_order, vec![1, 2, 0, 3]);
        assert_eq!(sf.matrix.to_text(), "1001;0101");
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m("1101;0111;1010");
        let k = a.kernel();
        assert_eq!(k.dim(), 4 - a.rank());
        assert!(k.vectors().all(|x| a.apply(x) == 0));
    }

    #[test]
    fn subspace_membership_and_complement() {
        let v = F2Subspace::span(4, [Subset::from_labels(&[1, 2]), Subset::from_labels(&[2, 3])]);
        assert_eq!(v.dim(), 2);
        assert!(v.contains(Subset::from_labels(&[1, 3])));
        assert!(!v.contains(Subset::from_labels(&[1])));
        let perp = v.orthogonal_complement();
        assert_eq!(perp.dim(), 2);
        assert!(perp.contains(Subset::from_labels(&[1, 2, 3])));
        assert!(perp.contains(Subset::from_labels(&[4])));
        assert_eq!(perp.orthogonal_complement(), v);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("10;1".parse::<F2Matrix>(), Err(MatrixParseError::RaggedRow { .. })));
        assert!(matches!("12".parse::<F2Matrix>(), Err(MatrixParseError::BadEntry('2'))));
        assert!(matches!(
            "11111111111111111".parse::<F2Matrix>(),
            Err(MatrixParseError::TooWide(17))
        ));
    }
}
