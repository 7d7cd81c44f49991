use krfusion::fermionic::{
    dominance_surjection_exists, fermionic_multiplicity, fermionic_table, fermionic_total, KrSpec,
};
use krfusion::liealg::{
    build_cartan, tensor_decompose, weyl_dim, NTuplePartitions, Partition, Weight,
};
use proptest::prelude::*;

fn type_a_specs(rank: usize, max_total: u32) -> Vec<KrSpec> {
    NTuplePartitions::all_up_to(rank, max_total)
        .iter()
        .map(|t| KrSpec::from_tuple(t).unwrap())
        .collect()
}

#[test]
fn type_a_totals_are_products_of_dimensions() {
    for (label, rank) in [("A1", 1), ("A2", 2), ("A3", 3)] {
        let c = build_cartan(label).unwrap();
        for s in type_a_specs(rank, 4) {
            let expected: u64 = s
                .factors()
                .iter()
                .map(|f| weyl_dim(&c, &Weight::fundamental(rank, f.node, f.level as i64)).unwrap())
                .product();
            assert_eq!(fermionic_total(&c, &s).unwrap(), expected, "{label} {s}");
        }
    }
}

#[test]
fn sl2_matches_clebsch_gordan() {
    let c = build_cartan("A1").unwrap();
    for s in type_a_specs(1, 6) {
        let mut dec = std::collections::BTreeMap::from([(Weight(vec![0]), 1u64)]);
        for f in s.factors() {
            let mut next = std::collections::BTreeMap::new();
            for (w, m) in &dec {
                for (x, k) in tensor_decompose(&c, w, &Weight(vec![f.level as i64])).unwrap() {
                    *next.entry(x).or_insert(0) += m * k;
                }
            }
            dec = next;
        }
        let lambda = s.lambda(1);
        for (g, m) in fermionic_table(&c, &s).unwrap() {
            let mu = &lambda - &c.rootvec_to_weight(&g);
            assert_eq!(m, dec.get(&mu).copied().unwrap_or(0), "{s} {g}");
        }
    }
}

#[test]
fn surjection_is_transitive() {
    for n in 1..=6 {
        let all: Vec<NTuplePartitions> = Partition::all(n)
            .into_iter()
            .map(|p| NTuplePartitions(vec![p]))
            .collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    if dominance_surjection_exists(a, b).unwrap()
                        && dominance_surjection_exists(b, c).unwrap()
                    {
                        assert!(dominance_surjection_exists(a, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn surjection_implies_monotone_multiplicities() {
    let c = build_cartan("A1").unwrap();
    for n in 1..=6 {
        let all: Vec<NTuplePartitions> = Partition::all(n)
            .into_iter()
            .map(|p| NTuplePartitions(vec![p]))
            .collect();
        for mu in &all {
            for nu in &all {
                if !dominance_surjection_exists(mu, nu).unwrap() {
                    continue;
                }
                let (sm, sn) = (
                    KrSpec::from_tuple(mu).unwrap(),
                    KrSpec::from_tuple(nu).unwrap(),
                );
                for (g, m) in fermionic_table(&c, &sm).unwrap() {
                    let other = fermionic_multiplicity(&c, &sn, &g).unwrap();
                    assert!(m >= other, "{mu} {nu} {g}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicity_is_permutation_invariant(
        label in prop::sample::select(vec!["A2", "B2", "C2", "G2"]),
        pairs in prop::collection::vec((1usize..=2, 1u32..=2), 1..=3),
        seed in any::<u64>(),
    ) {
        let c = build_cartan(label).unwrap();
        let s = KrSpec::from_pairs(&pairs).unwrap();
        let mut shuffled = pairs.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed & 1 == 1 {
            shuffled.reverse();
        }
        let t = KrSpec::from_pairs(&shuffled).unwrap();
        prop_assert_eq!(fermionic_table(&c, &s).unwrap(), fermionic_table(&c, &t).unwrap());
    }
}
