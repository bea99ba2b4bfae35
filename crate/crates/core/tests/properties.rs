use proptest::prelude::*;

use superortho::chains::{count_chains, d_general};
use superortho::identity::{
    distinct_sum, verify_first_step, verify_identity, weighted_rhs, ConjugationPattern, ScalarFamily,
};
use superortho::partition::{enumerate_coarsenings, enumerate_set_partitions, refines, SetPartition};

fn partition_of(n: usize, pick: usize) -> SetPartition {
    let all = enumerate_set_partitions(n).unwrap();
    all[pick % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_holds_for_random_seeds(n in 1usize..=5, pick in any::<usize>(), l in 1usize..=4, seed in any::<u64>()) {
        let p1 = partition_of(n, pick);
        let report = verify_identity(n, l, &p1, 2, seed).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn both_sides_agree_without_conjugation(n in 1usize..=5, pick in any::<usize>(), seed in any::<u64>()) {
        let p1 = partition_of(n, pick);
        let fam = ScalarFamily::random(n, 3, seed).unwrap();
        let pat = ConjugationPattern::none(n);
        prop_assert_eq!(distinct_sum(&fam, &pat, &p1).unwrap(), weighted_rhs(&fam, &pat, &p1).unwrap());
        prop_assert!(verify_first_step(&fam, &pat, &p1).unwrap());
    }

    #[test]
    fn block_quotient_formula_matches_chain_counts(n in 1usize..=5, a in any::<usize>(), b in any::<usize>()) {
        let p1 = partition_of(n, a);
        let above = enumerate_coarsenings(&p1).unwrap();
        let p2 = above[b % above.len()].clone();
        prop_assert!(refines(&p1, &p2).unwrap());
        prop_assert_eq!(d_general(&p1, &p2).unwrap().value, count_chains(&p1, &p2).unwrap().d);
    }

    #[test]
    fn labels_round_trip(n in 1usize..=7, pick in any::<usize>()) {
        let p = partition_of(n, pick);
        prop_assert_eq!(SetPartition::from_labels(&p.labels()), p.clone());
        prop_assert_eq!(p.to_string().parse::<SetPartition>().unwrap(), p);
    }
}
