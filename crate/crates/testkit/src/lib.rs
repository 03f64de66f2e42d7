//! Test corpora and brute-force oracles.
//!
//! The oracles here work from plain `f64` probability tables and explicit
//! enumeration. They never call the library's information or rank routines, so
//! they can check them.

use std::collections::{BTreeSet, HashSet};

use bumac::{Channel, F2Matrix, Matroid, Prob, Subset};
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// corpora

/// Every `rows × cols` matrix over F₂.
pub fn all_matrices(rows: usize, cols: usize) -> impl Iterator<Item = F2Matrix> {
    let per_row = 1u64 << cols;
    (0..per_row.pow(rows as u32)).map(move |code| {
        let rows_bits = (0..rows)
            .map(|i| Subset::from_bits(((code / per_row.pow(i as u32)) % per_row) as u32))
            .collect();
        F2Matrix::from_rows(cols, rows_bits)
    })
}

/// Every matrix with `1..=max_rows` rows and `1..=max_cols` columns.
pub fn all_small_matrices(max_rows: usize, max_cols: usize) -> impl Iterator<Item = F2Matrix> {
    (1..=max_rows).flat_map(move |r| (1..=max_cols).flat_map(move |c| all_matrices(r, c)))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> F2Matrix {
    let rows = (0..rows)
        .map(|_| Subset::from_bits(rng.gen_range(0..1u32 << cols)))
        .collect();
    F2Matrix::from_rows(cols, rows)
}

/// All subspaces of `F₂^n`, each as a canonical basis, found by closing `{0}`
/// under adjoining single vectors.
pub fn all_subspaces(n: usize) -> Vec<Vec<Subset>> {
    let canon = |vs: &[Subset]| -> Vec<Subset> {
        // brute-force closure, then a greedy independent basis in sorted order
        let mut span: BTreeSet<u32> = BTreeSet::from([0]);
        for v in vs {
            let shifted: Vec<u32> = span.iter().map(|s| s ^ v.bits()).collect();
            span.extend(shifted);
        }
        let mut basis = Vec::new();
        let mut reach: BTreeSet<u32> = BTreeSet::from([0]);
        for &v in &span {
            if !reach.contains(&v) {
                let shifted: Vec<u32> = reach.iter().map(|s| s ^ v).collect();
                reach.extend(shifted);
                basis.push(Subset::from_bits(v));
            }
        }
        basis
    };
    let mut seen: HashSet<Vec<Subset>> = HashSet::new();
    let mut frontier = vec![Vec::new()];
    seen.insert(Vec::new());
    while let Some(basis) = frontier.pop() {
        for v in 1..1u32 << n {
            let mut next = basis.clone();
            next.push(Subset::from_bits(v));
            let c = canon(&next);
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Every labelled binary matroid on `n` elements, one representation each.
pub fn all_binary_representations(n: usize) -> Vec<F2Matrix> {
    all_subspaces(n)
        .into_iter()
        .map(|basis| F2Matrix::from_rows(n, basis))
        .collect()
}

/// Uniform matroids `U_{r,n}` for `n <= max_n`.
pub fn uniform_corpus(max_n: usize) -> Vec<Matroid> {
    (0..=max_n)
        .flat_map(|n| (0..=n).map(move |r| Matroid::uniform(r, n).unwrap()))
        .collect()
}

fn random_weights(rng: &mut impl Rng, len: usize, total: u64, allow_zero: bool) -> Vec<u64> {
    // integer composition of `total` into `len` parts
    loop {
        let mut cuts: Vec<u64> = (0..len - 1).map(|_| rng.gen_range(0..=total)).collect();
        cuts.sort_unstable();
        let mut parts = Vec::with_capacity(len);
        let mut prev = 0;
        for c in cuts {
            parts.push(c - prev);
            prev = c;
        }
        parts.push(total - prev);
        if allow_zero || parts.iter().all(|&p| p > 0) {
            return parts;
        }
    }
}

/// Random probability vector with denominator `total`.
pub fn random_distribution(rng: &mut impl Rng, len: usize, total: u64) -> Vec<Prob> {
    random_weights(rng, len, total, true)
        .into_iter()
        .map(|w| Ratio::new(w, total))
        .collect()
}

/// Random binary-input channel with rational rows over denominator 60.
pub fn random_channel(rng: &mut impl Rng, m: usize, output_size: usize) -> Channel {
    let rows: Vec<Vec<Prob>> = (0..1usize << m)
        .map(|_| random_distribution(rng, output_size, 60))
        .collect();
    Channel::from_rows(m, 2, output_size, &rows).unwrap()
}

/// Splits every output symbol into two aliases with probabilities `k/n`, `(n-k)/n`.
pub fn alias_outputs(rng: &mut impl Rng, w: &Channel) -> Channel {
    let n = w.output_size();
    let zero = Ratio::new(0, 1);
    let post: Vec<Vec<Prob>> = (0..n)
        .map(|y| {
            let k = rng.gen_range(1..7u64);
            let mut row = vec![zero; 2 * n];
            row[2 * y] = Ratio::new(k, 7);
            row[2 * y + 1] = Ratio::new(7 - k, 7);
            row
        })
        .collect();
    w.compose(&post).unwrap()
}

/// Appends an output coordinate drawn independently of everything else.
pub fn append_junk(w: &Channel, junk: &[Prob]) -> Channel {
    let n = w.output_size();
    let k = junk.len();
    let zero = Ratio::new(0, 1);
    let post: Vec<Vec<Prob>> = (0..n)
        .map(|y| {
            let mut row = vec![zero; n * k];
            for (z, &p) in junk.iter().enumerate() {
                row[y * k + z] = p;
            }
            row
        })
        .collect();
    w.compose(&post).unwrap()
}

/// Flips each of the `bits` low output bits independently with probability `p`.
pub fn flip_output_bits(w: &Channel, bits: usize, p: Prob) -> Channel {
    let n = w.output_size();
    assert_eq!(n, 1 << bits);
    let one = Ratio::new(1, 1);
    let post: Vec<Vec<Prob>> = (0..n)
        .map(|y| {
            (0..n)
                .map(|z| {
                    let d = (y ^ z).count_ones() as i32;
                    let mut prob = Ratio::new(1, 1);
                    for _ in 0..d {
                        prob *= p;
                    }
                    for _ in d..bits as i32 {
                        prob *= one - p;
                    }
                    prob
                })
                .collect()
        })
        .collect();
    w.compose(&post).unwrap()
}

// ---------------------------------------------------------------------------
// oracles

/// Plain floating-point copy of `W(y|x)`.
pub fn float_table(w: &Channel) -> Vec<Vec<f64>> {
    w.rows()
        .into_iter()
        .map(|row| row.into_iter().map(|p| *p.numer() as f64 / *p.denom() as f64).collect())
        .collect()
}

/// `I(A; B)` for a joint given as a map of `(a, b) -> p`, by explicit marginals.
pub fn mi_from_cells(cells: &[((u64, u64), f64)]) -> f64 {
    use std::collections::HashMap;
    let mut pa: HashMap<u64, f64> = HashMap::new();
    let mut pb: HashMap<u64, f64> = HashMap::new();
    let mut joint: HashMap<(u64, u64), f64> = HashMap::new();
    for &((a, b), p) in cells {
        *pa.entry(a).or_default() += p;
        *pb.entry(b).or_default() += p;
        *joint.entry((a, b)).or_default() += p;
    }
    joint
        .iter()
        .filter(|(_, &p)| p > 0.0)
        .map(|(&(a, b), &p)| p * (p / (pa[&a] * pb[&b])).log2())
        .sum()
}

/// `I(X[S]; Y X[S^c])` under uniform inputs, by enumeration.
pub fn brute_umif(w: &Channel, s: Subset) -> f64 {
    let m = w.users();
    let table = float_table(w);
    let rest = s.complement(m);
    let scale = 1.0 / (1u64 << m) as f64;
    let mut cells = Vec::new();
    for (x, row) in table.iter().enumerate() {
        let xs = Subset::from_bits(x as u32);
        for (y, &p) in row.iter().enumerate() {
            let a = xs.intersection(s).bits() as u64;
            let b = ((y as u64) << 16) | xs.intersection(rest).bits() as u64;
            cells.push(((a, b), p * scale));
        }
    }
    mi_from_cells(&cells)
}

/// `I(g(X); Y)` under uniform inputs for an arbitrary input labelling.
pub fn brute_pushforward_mi(w: &Channel, label: impl Fn(u32) -> u64) -> f64 {
    let m = w.users();
    let table = float_table(w);
    let scale = 1.0 / (1u64 << m) as f64;
    let cells: Vec<_> = table
        .iter()
        .enumerate()
        .flat_map(|(x, row)| {
            let a = label(x as u32);
            row.iter()
                .enumerate()
                .map(move |(y, &p)| ((a, y as u64), p * scale))
        })
        .collect();
    mi_from_cells(&cells)
}

/// `H(Z[S])` for a law on `F₂^m`, by marginalising explicitly.
pub fn marginal_entropy(probs: &[Prob], s: Subset) -> f64 {
    use std::collections::HashMap;
    let mut marginal: HashMap<u32, f64> = HashMap::new();
    for (z, p) in probs.iter().enumerate() {
        let p = *p.numer() as f64 / *p.denom() as f64;
        *marginal.entry(z as u32 & s.bits()).or_default() += p;
    }
    -marginal.values().filter(|&&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>()
}

/// Rank by brute force: the largest independent subset, with independence
/// decided by searching for a non-trivial zero sum of columns.
pub fn brute_vector_rank(a: &F2Matrix, s: Subset) -> usize {
    let independent = |t: Subset| {
        t.subsets()
            .skip(1)
            .all(|u| u.elements().fold(0u32, |acc, e| acc ^ a.column(e)) != 0)
    };
    s.subsets()
        .filter(|&t| independent(t))
        .map(|t| t.len())
        .max()
        .unwrap_or(0)
}

/// Whether `s`, read as a row vector, lies in the row space of `a`, by enumerating
/// every combination of rows.
pub fn in_rowspace(a: &F2Matrix, s: Subset) -> bool {
    let rows = a.rows();
    (0..1u32 << rows.len()).any(|c| {
        Subset::from_bits(c)
            .elements()
            .fold(Subset::EMPTY, |acc, i| acc.sym_diff(rows[i]))
            == s
    })
}

/// Whether two matrices with the same column count have the same row space,
/// by comparing enumerated spans.
pub fn same_rowspace(a: &F2Matrix, b: &F2Matrix) -> bool {
    let span = |m: &F2Matrix| -> BTreeSet<Subset> {
        (0..1u32 << m.num_rows())
            .map(|c| {
                Subset::from_bits(c)
                    .elements()
                    .fold(Subset::EMPTY, |acc, i| acc.sym_diff(m.rows()[i]))
            })
            .collect()
    };
    a.num_cols() == b.num_cols() && span(a) == span(b)
}

/// `{x : A x = 0}` by enumeration.
pub fn brute_kernel(a: &F2Matrix) -> BTreeSet<Subset> {
    Subset::all(a.num_cols())
        .filter(|x| x.elements().fold(0u32, |acc, e| acc ^ a.column(e)) == 0)
        .collect()
}
