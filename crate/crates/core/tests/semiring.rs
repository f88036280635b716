use graphsemi::counting::CountSequence;
use graphsemi::graph::{
    canonical_key, cartesian_product, enumerate_connected, enumerate_graphs, Graph,
};
use graphsemi::semiring::{
    closure_check, closure_check_with, hamming_degree, hamming_keys, hamming_polynomial,
    instance_all_graphs, instance_even_edge, instance_hamming, monotonicity_report,
    multiplicative_partitions, self_complementary_identity, Family,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Factorizations of `n` into factors `>= min`, counted by trial division.
fn count_factorizations(n: u64, min: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (min..=n).filter(|d| n % d == 0).map(|d| count_factorizations(n / d, d)).sum()
}

#[test]
fn hamming_connected_counts_are_multiplicative_partitions() {
    let inst = instance_hamming(30).unwrap();
    for n in 1..=30 {
        assert_eq!(inst.connected.get(n).unwrap(), &BigUint::from(count_factorizations(n as u64, 2)), "n={n}");
        assert_eq!(multiplicative_partitions(n).len() as u64, count_factorizations(n as u64, 2), "n={n}");
    }
    assert_eq!(inst.connected.get(12).unwrap(), &BigUint::from(4u32));
}

#[test]
fn hamming_keys_are_distinct_graphs_per_partition() {
    for n in 1..=16 {
        assert_eq!(hamming_keys(n).unwrap().len(), multiplicative_partitions(n).len(), "n={n}");
    }
}

#[test]
fn hamming_descents() {
    let report = instance_hamming(12).unwrap().monotonicity(12).unwrap();
    let at: Vec<usize> = report.descents.iter().map(|d| d.0).collect();
    assert_eq!(at, vec![4, 6, 8, 10]);
}

#[test]
fn monotone_sequence_has_no_descents() {
    let seq = CountSequence::from_u64(&[0, 1, 1, 2, 6]).unwrap();
    assert!(monotonicity_report(&seq, 4).unwrap().is_monotonic());
}

#[test]
fn instances_are_nested_and_additively_free_where_expected() {
    let graphs = instance_all_graphs(16).unwrap();
    assert!(graphs.counts_are_nested());
    assert!(graphs.is_additively_free().unwrap());
    assert_eq!(graphs.smallest_prime_degree(), Some(2));

    let hamming = instance_hamming(40).unwrap();
    assert!(hamming.counts_are_nested());
    assert!(hamming.is_additively_free().unwrap());

    let even = instance_even_edge(8).unwrap();
    assert!(even.counts_are_nested());
    assert!(!even.is_additively_free().unwrap());
    assert_eq!(even.smallest_prime_degree(), Some(3));
}

#[test]
fn families_are_closed() {
    for family in [Family::AllGraphs, Family::EvenEdge, Family::Hamming] {
        assert!(closure_check(family, 8).unwrap().is_closed(), "{}", family.name());
    }
}

#[test]
fn odd_edge_graphs_are_not_closed() {
    let report = closure_check_with(|g: &Graph| Ok(g.edge_count() % 2 == 1), 6).unwrap();
    assert!(!report.is_closed());
}

#[test]
fn self_complementary_counts_through_8() {
    let counts: Vec<BigUint> = (1..=8).map(|n| self_complementary_identity(n).unwrap().rhs).collect();
    let expected: Vec<BigUint> = [1u32, 0, 0, 1, 2, 0, 0, 10].map(BigUint::from).to_vec();
    assert_eq!(counts, expected);
    for n in 1..=8 {
        let brute = enumerate_graphs(n)
            .unwrap()
            .iter()
            .filter(|g| canonical_key(&g.complement()).unwrap() == canonical_key(g).unwrap())
            .count();
        assert_eq!(BigUint::from(brute), expected[n - 1]);
        assert!(self_complementary_identity(n).unwrap().holds());
    }
}

#[test]
fn hamming_polynomial_of_a_product() {
    // K_2 □ K_3: six vertices, nine edges, two triangles and three K_2 fibres.
    let g = cartesian_product(&Graph::complete(2).unwrap(), &Graph::complete(3).unwrap()).unwrap();
    let terms = hamming_polynomial(&g).unwrap();
    let count = |h: Graph| {
        let k = canonical_key(&h).unwrap();
        terms.iter().find(|t| t.0 == k).map_or(0, |t| t.1)
    };
    assert_eq!(count(Graph::complete(1).unwrap()), 6);
    assert_eq!(count(Graph::complete(2).unwrap()), 9);
    assert_eq!(count(Graph::complete(3).unwrap()), 2);
    assert_eq!(count(Graph::cycle(4).unwrap()), 3);
    assert_eq!(count(g), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamming_degree_dominates_order(n in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let graphs = enumerate_connected(n).unwrap();
        let g = &graphs[pick.index(graphs.len())];
        prop_assert!(hamming_degree(g).unwrap() >= BigUint::from(n));
    }
}
