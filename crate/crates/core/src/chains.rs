//! Odd-minus-even chain counts `D(P1, P2)` on the set-partition lattice.
//!
//! A chain in `C(P1, P2)` is a set of partitions totally ordered by strict
//! refinement whose finest element is `P1` and coarsest is `P2`; its parity
//! is the parity of its cardinality. `D = #odd - #even`, so `D(P, P) = 1`
//! from the one-element chain `{P}`.
//!
//! Four independent routes are provided and cross-checked in tests:
//! brute-force chain counting over the lattice, the product-of-factorials
//! closed form for `D(P0, P)`, the Stirling-number recursion over types,
//! and the sign rule for pairs of good partitions. [`d_general`] extends the
//! closed form to arbitrary intervals block by block.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::partition::{interval, refines, PartitionType, SetPartition};
use crate::stirling::StirlingTable;

/// Largest ground set accepted by brute-force chain counting.
pub const MAX_CHAIN_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStats {
    #[serde(with = "crate::serde_big")]
    pub odd: BigUint,
    #[serde(with = "crate::serde_big")]
    pub even: BigUint,
    #[serde(with = "crate::serde_big")]
    pub d: BigInt,
}

impl ChainStats {
    pub fn new(odd: BigUint, even: BigUint) -> Self {
        let d = BigInt::from(odd.clone()) - BigInt::from(even.clone());
        ChainStats { odd, even, d }
    }

    /// The single one-element chain.
    fn singleton() -> Self {
        ChainStats::new(BigUint::one(), BigUint::zero())
    }
}

impl fmt::Display for ChainStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "odd={} even={} d={}", self.odd, self.even, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientSource {
    BruteForce,
    ClosedForm,
    Recursion,
    GoodPair,
}

impl fmt::Display for CoefficientSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientSource::BruteForce => "brute-force",
            CoefficientSource::ClosedForm => "closed-form",
            CoefficientSource::Recursion => "recursion",
            CoefficientSource::GoodPair => "good-pair",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientValue {
    #[serde(with = "crate::serde_big")]
    pub value: BigInt,
    pub source: CoefficientSource,
}

impl CoefficientValue {
    fn new(value: BigInt, source: CoefficientSource) -> Self {
        CoefficientValue { value, source }
    }
}

fn check_chain_args(p1: &SetPartition, p2: &SetPartition) -> Result<()> {
    if p1.n() > MAX_CHAIN_N {
        return domain(format!(
            "chain enumeration limited to n <= {MAX_CHAIN_N}, got {}",
            p1.n()
        ));
    }
    if !refines(p1, p2)? {
        return domain(format!("{p1} does not refine {p2}"));
    }
    Ok(())
}

/// Counts odd and even chains of `C(p1, p2)` by depth-first search over
/// strictly coarsening steps, memoised on the current partition.
pub fn count_chains(p1: &SetPartition, p2: &SetPartition) -> Result<ChainStats> {
    check_chain_args(p1, p2)?;
    let mut memo: HashMap<SetPartition, ChainStats> = HashMap::new();
    walk_down(p1, p2, &mut memo)
}

// chains from `q` (finest) up to `top` (coarsest)
fn walk_down(
    q: &SetPartition,
    top: &SetPartition,
    memo: &mut HashMap<SetPartition, ChainStats>,
) -> Result<ChainStats> {
    if q == top {
        return Ok(ChainStats::singleton());
    }
    if let Some(hit) = memo.get(q) {
        return Ok(hit.clone());
    }
    let mut odd = BigUint::zero();
    let mut even = BigUint::zero();
    for next in interval(q, top)? {
        if &next == q {
            continue;
        }
        let rest = walk_down(&next, top, memo)?;
        // prepending q flips the parity
        odd += &rest.even;
        even += &rest.odd;
    }
    let stats = ChainStats::new(odd, even);
    memo.insert(q.clone(), stats.clone());
    Ok(stats)
}

/// Chain statistics of `C(p1, q)` for every `q >= p1`, by a forward sweep
/// from finer to coarser partitions.
pub fn chain_stats_above(p1: &SetPartition) -> Result<Vec<(SetPartition, ChainStats)>> {
    if p1.n() > MAX_CHAIN_N {
        return domain(format!(
            "chain enumeration limited to n <= {MAX_CHAIN_N}, got {}",
            p1.n()
        ));
    }
    let mut up = crate::partition::enumerate_coarsenings(p1)?;
    // strictly finer partitions have strictly more blocks
    up.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    let index: HashMap<SetPartition, usize> =
        up.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut odd = vec![BigUint::zero(); up.len()];
    let mut even = vec![BigUint::zero(); up.len()];
    odd[index[p1]] = BigUint::one();
    for i in 0..up.len() {
        if odd[i].is_zero() && even[i].is_zero() {
            continue;
        }
        let (o, e) = (odd[i].clone(), even[i].clone());
        for next in crate::partition::enumerate_coarsenings(&up[i])? {
            if next == up[i] {
                continue;
            }
            let j = index[&next];
            odd[j] += &e;
            even[j] += &o;
        }
    }
    Ok(up
        .into_iter()
        .zip(odd.into_iter().zip(even))
        .map(|(p, (o, e))| (p, ChainStats::new(o, e)))
        .collect())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(-1)^{n-m} prod (n_i - 1)!` for a type `(n_1, ..., n_m)` of `[n]`.
pub fn d_closed_form_value(t: &PartitionType) -> BigInt {
    let magnitude = t
        .sizes()
        .iter()
        .fold(BigInt::one(), |acc, &s| acc * factorial(s - 1));
    if (t.n() - t.num_blocks()) % 2 == 0 {
        magnitude
    } else {
        -magnitude
    }
}

/// `D(P0, P)` for any `P` of type `t`.
pub fn d_closed_form(t: &PartitionType) -> CoefficientValue {
    CoefficientValue::new(d_closed_form_value(t), CoefficientSource::ClosedForm)
}

/// Memoised evaluation of the Stirling recursion
/// `D_(n_i) = - sum_{(k_i) != (n_i)} prod S(n_i, k_i) D_(k_i)` with base
/// `D_(1,...,1) = 1`. The cache is keyed by the sorted size tuple.
#[derive(Debug, Clone)]
pub struct DRecursion {
    stirling: StirlingTable,
    memo: HashMap<Vec<usize>, BigInt>,
}

impl DRecursion {
    pub fn new(max_block: usize) -> Self {
        DRecursion {
            stirling: StirlingTable::new(max_block.max(1)),
            memo: HashMap::new(),
        }
    }

    pub fn value(&mut self, t: &PartitionType) -> BigInt {
        let largest = t.sizes()[0];
        if largest > self.stirling.max_n() {
            self.stirling = StirlingTable::new(largest);
        }
        self.eval(t.sizes())
    }

    fn eval(&mut self, sizes: &[usize]) -> BigInt {
        if sizes.iter().all(|&s| s == 1) {
            return BigInt::one();
        }
        if let Some(v) = self.memo.get(sizes) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut ks: Vec<usize> = vec![1; sizes.len()];
        loop {
            if ks.as_slice() != sizes {
                let weight = ks
                    .iter()
                    .zip(sizes)
                    .fold(BigUint::one(), |acc, (&k, &s)| acc * self.stirling.get(s, k));
                let mut key = ks.clone();
                key.sort_unstable_by(|a, b| b.cmp(a));
                let inner = self.eval(&key);
                total += BigInt::from(weight) * inner;
            }
            // odometer over 1 <= k_i <= n_i
            let mut i = ks.len();
            loop {
                if i == 0 {
                    let value = -total;
                    self.memo.insert(sizes.to_vec(), value.clone());
                    return value;
                }
                i -= 1;
                ks[i] += 1;
                if ks[i] <= sizes[i] {
                    break;
                }
                ks[i] = 1;
            }
        }
    }
}

/// `D(P0, P)` for type `t` via the Stirling recursion.
pub fn d_recursion(t: &PartitionType) -> CoefficientValue {
    let mut rec = DRecursion::new(t.sizes()[0]);
    CoefficientValue::new(rec.value(t), CoefficientSource::Recursion)
}

/// `(-1)^{#2(p2) - #2(p1)}` for good partitions `p1 <= p2`.
pub fn d_good_pair(p1: &SetPartition, p2: &SetPartition) -> Result<CoefficientValue> {
    if !p1.is_good() || !p2.is_good() {
        return domain("both partitions must have blocks of size 1 or 2");
    }
    if !refines(p1, p2)? {
        return domain(format!("{p1} does not refine {p2}"));
    }
    let m = p2.count_blocks_of_size(2) - p1.count_blocks_of_size(2);
    let value = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(CoefficientValue::new(value, CoefficientSource::GoodPair))
}

/// `D(p1, p2)` for any `p1 <= p2`.
///
/// Each block of `p2` containing `m` blocks of `p1` contributes the
/// closed-form value for the one-block type `(m)`, i.e.
/// `(-1)^{m-1} (m-1)!`; the result is their product. This factorisation is
/// checked against [`count_chains`] in the test suite.
pub fn d_general(p1: &SetPartition, p2: &SetPartition) -> Result<CoefficientValue> {
    if !refines(p1, p2)? {
        return domain(format!("{p1} does not refine {p2}"));
    }
    let coarse = p2.labels();
    let mut inside = vec![0usize; p2.num_blocks()];
    for block in p1.blocks() {
        inside[coarse[block[0] - 1]] += 1;
    }
    let value = inside.into_iter().fold(BigInt::one(), |acc, m| {
        let t = PartitionType::new(vec![m]).expect("a block holds at least one finer block");
        acc * d_closed_form_value(&t)
    });
    Ok(CoefficientValue::new(value, CoefficientSource::ClosedForm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_set_partitions, enumerate_types};
    use crate::Error;

    fn part(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn ty(s: &str) -> PartitionType {
        s.parse().unwrap()
    }

    fn stats(odd: u32, even: u32) -> ChainStats {
        ChainStats::new(odd.into(), even.into())
    }

    #[test]
    fn chain_examples() {
        let p = part("1,2|3");
        assert_eq!(count_chains(&p, &p).unwrap(), stats(1, 0));
        assert_eq!(
            count_chains(&SetPartition::singletons(3), &SetPartition::top(3)).unwrap(),
            stats(3, 1)
        );
        assert_eq!(
            count_chains(&SetPartition::singletons(4), &part("1,2|3,4")).unwrap(),
            stats(2, 1)
        );
        assert_eq!(count_chains(&part("1,2|3|4"), &part("1,2|3,4")).unwrap(), stats(0, 1));
    }

    #[test]
    fn chain_errors() {
        assert!(matches!(
            count_chains(&part("1,2|3"), &part("1,3|2")),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            count_chains(&SetPartition::singletons(9), &SetPartition::top(9)),
            Err(Error::Domain(_))
        ));
    }

    /// Plain enumeration of every chain as a sequence, for tiny n.
    fn explicit_chains(p1: &SetPartition, p2: &SetPartition) -> (u64, u64) {
        let all = enumerate_set_partitions(p1.n()).unwrap();
        let mut odd = 0;
        let mut even = 0;
        let mut stack: Vec<Vec<SetPartition>> = vec![vec![p1.clone()]];
        while let Some(chain) = stack.pop() {
            let last = chain.last().unwrap();
            if last == p2 {
                if chain.len() % 2 == 1 {
                    odd += 1;
                } else {
                    even += 1;
                }
                continue;
            }
            for q in &all {
                if q != last && refines(last, q).unwrap() && refines(q, p2).unwrap() {
                    let mut longer = chain.clone();
                    longer.push(q.clone());
                    stack.push(longer);
                }
            }
        }
        (odd, even)
    }

    #[test]
    fn memoised_walk_matches_explicit_chain_list() {
        for n in 1..=4 {
            let all = enumerate_set_partitions(n).unwrap();
            for a in &all {
                for b in all.iter().filter(|b| refines(a, b).unwrap()) {
                    let (o, e) = explicit_chains(a, b);
                    assert_eq!(count_chains(a, b).unwrap(), stats(o as u32, e as u32), "[{a}, {b}]");
                }
            }
        }
    }

    #[test]
    fn forward_sweep_matches_walk() {
        for n in 1..=5 {
            for p1 in enumerate_set_partitions(n).unwrap() {
                for (q, s) in chain_stats_above(&p1).unwrap() {
                    assert_eq!(s, count_chains(&p1, &q).unwrap(), "[{p1}, {q}]");
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(d_closed_form(&ty("1,1,1,1,1")).value, BigInt::one());
        for half in 1..=6 {
            let t = PartitionType::new(vec![2; half]).unwrap();
            let sign = if half % 2 == 0 { 1 } else { -1 };
            assert_eq!(d_closed_form(&t).value, BigInt::from(sign));
        }
        assert_eq!(d_closed_form(&ty("3,1")).value, BigInt::from(2));
        // the brute-force count agrees on every type-(3,1) partition of [4]
        for p in enumerate_set_partitions(4).unwrap() {
            if p.partition_type() == ty("3,1") {
                let s = count_chains(&SetPartition::singletons(4), &p).unwrap();
                assert_eq!(s.d, BigInt::from(2));
            }
        }
    }

    #[test]
    fn closed_form_matches_brute_force_up_to_six() {
        for n in 1..=6 {
            let bottom = SetPartition::singletons(n);
            for (p, s) in chain_stats_above(&bottom).unwrap() {
                assert_eq!(s.d, d_closed_form(&p.partition_type()).value, "P = {p}");
            }
        }
    }

    #[test]
    fn equal_types_have_equal_brute_force_d() {
        for n in 1..=6 {
            let bottom = SetPartition::singletons(n);
            let mut seen: HashMap<PartitionType, BigInt> = HashMap::new();
            for (p, s) in chain_stats_above(&bottom).unwrap() {
                let prev = seen.entry(p.partition_type()).or_insert_with(|| s.d.clone());
                assert_eq!(prev, &s.d);
            }
        }
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(d_recursion(&ty("2")).value, BigInt::from(-1));
        assert_eq!(d_recursion(&ty("3")).value, BigInt::from(2));
        assert_eq!(d_recursion(&ty("1,1")).value, BigInt::one());
        assert_eq!(d_recursion(&ty("1")).source, CoefficientSource::Recursion);
    }

    #[test]
    fn recursion_matches_closed_form() {
        let mut rec = DRecursion::new(10);
        for n in 1..=10 {
            for t in enumerate_types(n) {
                assert_eq!(rec.value(&t), d_closed_form_value(&t), "type {t}");
            }
        }
    }

    #[test]
    fn good_pair_examples() {
        let g = part("1,2|3|4");
        assert_eq!(d_good_pair(&g, &g).unwrap().value, BigInt::one());
        assert_eq!(
            d_good_pair(&SetPartition::singletons(4), &part("1,2|3,4")).unwrap().value,
            BigInt::one()
        );
        assert_eq!(d_good_pair(&g, &part("1,2|3,4")).unwrap().value, BigInt::from(-1));
        assert!(d_good_pair(&part("1,2,3|4"), &SetPartition::top(4)).is_err());
        assert!(d_good_pair(&part("1,2|3|4"), &part("1,3|2,4")).is_err());
    }

    #[test]
    fn good_pairs_match_brute_force() {
        for n in 1..=6 {
            let goods: Vec<_> = enumerate_set_partitions(n)
                .unwrap()
                .into_iter()
                .filter(SetPartition::is_good)
                .collect();
            for a in &goods {
                for (q, s) in chain_stats_above(a).unwrap() {
                    if q.is_good() {
                        assert_eq!(d_good_pair(a, &q).unwrap().value, s.d, "[{a}, {q}]");
                    }
                }
            }
        }
    }

    #[test]
    fn general_examples() {
        let p = part("1,3|2");
        assert_eq!(d_general(&p, &p).unwrap().value, BigInt::one());
        assert_eq!(
            d_general(&part("1,2|3|4"), &SetPartition::top(4)).unwrap().value,
            BigInt::from(2)
        );
        assert!(d_general(&part("1,2|3"), &part("1,3|2")).is_err());
    }

    #[test]
    fn general_matches_brute_force_up_to_five() {
        for n in 1..=5 {
            for p1 in enumerate_set_partitions(n).unwrap() {
                for (q, s) in chain_stats_above(&p1).unwrap() {
                    assert_eq!(d_general(&p1, &q).unwrap().value, s.d, "[{p1}, {q}]");
                }
            }
        }
    }

    /// Signed Stirling numbers of the first kind from the coefficients of
    /// `x (x - 1) ... (x - n + 1)`.
    fn stirling_first_signed(n: usize) -> Vec<BigInt> {
        let mut coeffs = vec![BigInt::one()]; // the constant polynomial 1
        for i in 0..n {
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigInt::from(i);
            }
            coeffs = next;
        }
        coeffs
    }

    #[test]
    fn block_sums_are_stirling_first_kind() {
        for n in 1..=8 {
            let s = stirling_first_signed(n);
            let mut sums = vec![BigInt::zero(); n + 1];
            for p in enumerate_set_partitions(n).unwrap() {
                sums[p.num_blocks()] += d_closed_form(&p.partition_type()).value;
            }
            for k in 1..=n {
                assert_eq!(sums[k], s[k], "s({n},{k})");
            }
        }
    }

    #[test]
    fn chain_stats_json_shape() {
        let s = stats(3, 1);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"odd":"3","even":"1","d":"2"}"#
        );
    }
}
