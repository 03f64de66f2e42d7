use bumac::binary::vector_matroid;
use bumac::matroid::Matroid;
use bumac::polymatroid::{is_polymatroid, rate_region_inequalities};
use bumac::{F2Matrix, SetFunction, Subset};
use bumac_testkit as kit;

/// Uniform matroids, vector matroids of small matrices, and their duals.
fn corpus() -> Vec<Matroid> {
    let mut out = kit::uniform_corpus(6);
    let mut rng = kit::rng(7);
    for _ in 0..80 {
        let rows = 1 + (out.len() % 3);
        let cols = 2 + (out.len() % 5);
        out.push(vector_matroid(&kit::random_matrix(&mut rng, rows, cols)));
    }
    let duals: Vec<_> = out.iter().map(Matroid::dual).collect();
    out.extend(duals);
    out
}

#[test]
fn rank_is_bounded_monotone_and_submodular_on_all_pairs() {
    for m in corpus() {
        let n = m.ground_size();
        for a in Subset::all(n) {
            assert!(m.rank_of(a) <= a.len());
            for b in Subset::all(n) {
                if a.is_subset_of(b) {
                    assert!(m.rank_of(a) <= m.rank_of(b));
                }
                assert!(m.rank_of(a.union(b)) + m.rank_of(a.intersection(b)) <= m.rank_of(a) + m.rank_of(b));
            }
        }
    }
}

#[test]
fn bases_share_the_full_rank() {
    for m in corpus() {
        let fam = m.families();
        assert!(!fam.bases.is_empty());
        assert!(fam.bases.iter().all(|b| b.len() == m.rank()));
        // bases are exactly the maximal independent sets
        for &i in &fam.independents {
            let maximal = i.complement(m.ground_size()).elements().all(|e| !m.is_independent(i.with(e)));
            assert_eq!(maximal, fam.bases.contains(&i));
        }
    }
}

#[test]
fn rank_equals_largest_independent_subset() {
    for m in corpus() {
        let fam = m.families();
        for s in Subset::all(m.ground_size()) {
            let best = fam.independents.iter().filter(|i| i.is_subset_of(s)).map(|i| i.len()).max();
            assert_eq!(best, Some(m.rank_of(s)));
        }
    }
}

#[test]
fn circuits_are_minimal_dependent_sets() {
    for m in corpus() {
        let n = m.ground_size();
        let dependent: Vec<Subset> = Subset::all(n).filter(|&s| !m.is_independent(s)).collect();
        let minimal: Vec<Subset> = dependent
            .iter()
            .copied()
            .filter(|&d| !dependent.iter().any(|&e| e != d && e.is_subset_of(d)))
            .collect();
        assert_eq!(m.families().circuits, minimal);
    }
}

#[test]
fn duality() {
    for m in corpus() {
        let n = m.ground_size();
        let dual = m.dual();
        assert_eq!(dual.dual(), m);
        let mut complements: Vec<Subset> = m.families().bases.iter().map(|b| b.complement(n)).collect();
        complements.sort();
        assert_eq!(dual.families().bases, complements);
    }
}

#[test]
fn both_contraction_definitions_agree() {
    for m in corpus().into_iter().filter(|m| m.ground_size() <= 6) {
        for s in Subset::all(m.ground_size()) {
            assert_eq!(m.contract(s), m.contract_by_bases(s), "{m:?} / {s}");
        }
    }
}

#[test]
fn minor_scan_examples() {
    let u24 = Matroid::uniform(2, 4).unwrap();
    assert!(u24.has_minor(&u24).unwrap());
    assert!(!vector_matroid(&F2Matrix::identity(3)).has_minor(&u24).unwrap());
    assert!(Matroid::uniform(2, 5).unwrap().has_minor(&u24).unwrap());
}

#[test]
fn minor_witnesses_reproduce_the_target() {
    let u24 = Matroid::uniform(2, 4).unwrap();
    for m in [Matroid::uniform(2, 6).unwrap(), Matroid::uniform(3, 6).unwrap(), Matroid::uniform(4, 6).unwrap()] {
        let (r, c) = m.find_minor(&u24).unwrap().unwrap();
        let rest = c.complement(m.ground_size());
        let minor = m.contract(c).restrict(Subset::from_bits(r.compress(rest)));
        assert!(minor.is_isomorphic(&u24).unwrap());
    }
}

#[test]
fn isomorphism_agrees_with_brute_force_permutations() {
    let a = vector_matroid(&"101;011".parse().unwrap());
    assert!(a.is_isomorphic(&Matroid::uniform(2, 3).unwrap()).unwrap());

    // relabel random vector matroids by a random permutation
    let mut rng = kit::rng(11);
    for _ in 0..40 {
        let m = vector_matroid(&kit::random_matrix(&mut rng, 3, 5));
        let perm = [3usize, 0, 4, 1, 2];
        let table: Vec<u32> = Subset::all(5)
            .map(|s| {
                let pre = s.elements().fold(Subset::EMPTY, |acc, e| acc.with(perm[e]));
                m.rank_of(pre) as u32
            })
            .collect();
        let relabelled = Matroid::from_rank(5, &table).unwrap();
        assert!(m.is_isomorphic(&relabelled).unwrap());
        let image = m.find_isomorphism(&relabelled).unwrap().unwrap();
        for s in Subset::all(5) {
            let mapped = s.elements().fold(Subset::EMPTY, |acc, e| acc.with(image[e]));
            assert_eq!(m.rank_of(s), relabelled.rank_of(mapped));
        }
    }
}

#[test]
fn non_isomorphic_pairs_with_equal_profiles_are_separated() {
    // loop + parallel pair vs. two loops + coloop: same rank, different structure
    let a = vector_matroid(&"0110".parse().unwrap());
    let b = vector_matroid(&"0010;0001".parse().unwrap());
    assert!(!a.is_isomorphic(&b).unwrap());
}

#[test]
fn empty_ground_set() {
    let m = Matroid::from_rank(0, &[0]).unwrap();
    assert_eq!(m.rank(), 0);
    assert_eq!(m.dual(), m);
    assert_eq!(m.families().bases, vec![Subset::EMPTY]);
}

#[test]
fn rate_regions_of_two_user_channels() {
    let identity = SetFunction::new(2, vec![0.0, 1.0, 1.0, 2.0]);
    let bounds: Vec<f64> = rate_region_inequalities(&identity).iter().map(|c| c.bound).collect();
    assert_eq!(bounds, vec![1.0, 1.0, 2.0]);
    let adder = SetFunction::new(2, vec![0.0, 1.0, 1.0, 1.5]);
    assert!(is_polymatroid(&adder, 0.0));
    let bounds: Vec<f64> = rate_region_inequalities(&adder).iter().map(|c| c.bound).collect();
    assert_eq!(bounds, vec![1.0, 1.0, 1.5]);
}
