//! Set partitions of `[n]`, their types, the refinement order and the
//! integer partition function.
//!
//! A [`SetPartition`] is always stored canonically: elements ascending inside
//! each block and blocks ordered by their minimum element, so derived
//! equality is equality of lattice elements. Enumeration walks restricted
//! growth strings in lexicographic order, which is the canonical order used
//! throughout the crate.
//!
//! Text formats: `"1,3|2|4"` is the partition `{{1,3},{2},{4}}` and
//! `"3,1,1"` is the type with block sizes 3, 1, 1.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest ground set for which labelled partitions are enumerated.
pub const MAX_ENUM_N: usize = 12;

/// A partition of `[n]` into disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition from explicit 1-based blocks, canonicalising order.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return domain("ground set must be nonempty");
        }
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return domain("empty block");
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > n {
                    return domain(format!("element {e} outside [1, {n}]"));
                }
                if seen[e] {
                    return domain(format!("element {e} appears twice"));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
            return domain(format!("element {missing} is not covered"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Builds a partition from a block label per element (`labels[i]` is the
    /// block of element `i + 1`). Labels may be arbitrary values.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            let next = blocks.len();
            let slot = *by_label.entry(label).or_insert(next);
            if slot == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[slot].push(i + 1);
        }
        // first-occurrence order is already canonical
        SetPartition {
            n: labels.len(),
            blocks,
        }
    }

    /// The all-singletons partition, bottom of the lattice.
    pub fn singletons(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|e| vec![e]).collect(),
        }
    }

    /// The one-block partition, top of the lattice.
    pub fn top(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index (into [`blocks`](Self::blocks)) of every element, i.e. the
    /// restricted growth string of the partition.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = b;
            }
        }
        labels
    }

    /// Number of blocks of size exactly `size`.
    pub fn count_blocks_of_size(&self, size: usize) -> usize {
        self.blocks.iter().filter(|b| b.len() == size).count()
    }

    /// Every block has one or two elements.
    pub fn is_good(&self) -> bool {
        self.blocks.iter().all(|b| b.len() <= 2)
    }

    pub fn is_singletons(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn partition_type(&self) -> PartitionType {
        PartitionType::from_sorted_unchecked(self.blocks.iter().map(Vec::len).collect())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let mut blocks = Vec::new();
        for block in s.split('|') {
            let elems = block
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element {e:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(elems);
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::new(n, blocks).map_err(|e| match e {
            Error::Domain(msg) => Error::Parse(msg),
            other => other,
        })
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Multiset of block sizes, stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType {
    sizes: Vec<usize>,
}

impl PartitionType {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return domain("a type needs at least one block");
        }
        if sizes.contains(&0) {
            return domain("block sizes must be positive");
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionType { sizes })
    }

    fn from_sorted_unchecked(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        PartitionType { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.sizes.iter().filter(|&&s| s == size).count()
    }

    /// A representative partition: consecutive runs of elements, largest
    /// block first.
    pub fn representative(&self) -> SetPartition {
        let mut next = 1;
        let blocks = self
            .sizes
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (next..next + s).collect();
                next += s;
                b
            })
            .collect();
        SetPartition::new(self.n(), blocks).expect("consecutive runs form a partition")
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PartitionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad block size {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionType::new(sizes).map_err(|e| match e {
            Error::Domain(msg) => Error::Parse(msg),
            other => other,
        })
    }
}

impl Serialize for PartitionType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartitionType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Restricted growth strings of length `len` in lexicographic order.
#[derive(Debug, Clone)]
pub(crate) struct RestrictedGrowth {
    current: Vec<usize>,
    // prefix maxima: maxes[i] = max(current[..=i])
    maxes: Vec<usize>,
    first: bool,
}

impl RestrictedGrowth {
    pub(crate) fn new(len: usize) -> Self {
        RestrictedGrowth {
            current: vec![0; len],
            maxes: vec![0; len],
            first: true,
        }
    }

    /// Advances and returns the next string, or `None` when exhausted.
    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        if self.first {
            self.first = false;
            return if self.current.is_empty() {
                None
            } else {
                Some(&self.current)
            };
        }
        let len = self.current.len();
        let mut i = len;
        while i > 1 {
            i -= 1;
            if self.current[i] <= self.maxes[i - 1] {
                self.current[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.current[i]);
                for j in i + 1..len {
                    self.current[j] = 0;
                    self.maxes[j] = self.maxes[j - 1];
                }
                return Some(&self.current);
            }
        }
        None
    }
}

/// Lazy canonical enumeration of the set partitions of `[n]`.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: RestrictedGrowth,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.rgs.advance().map(SetPartition::from_labels)
    }
}

fn check_enum_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUM_N {
        return domain(format!("n = {n} outside the enumeration range [1, {MAX_ENUM_N}]"));
    }
    Ok(())
}

/// Iterator over every set partition of `[n]`, `1 <= n <= 12`.
pub fn set_partitions(n: usize) -> Result<SetPartitions> {
    check_enum_size(n)?;
    Ok(SetPartitions {
        rgs: RestrictedGrowth::new(n),
    })
}

/// Every set partition of `[n]` exactly once, in canonical order.
pub fn enumerate_set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    Ok(set_partitions(n)?.collect())
}

/// `p1 <= p2` in the refinement order: each block of `p1` lies inside a block
/// of `p2`.
pub fn refines(p1: &SetPartition, p2: &SetPartition) -> Result<bool> {
    if p1.n != p2.n {
        return domain(format!("ground sets differ ({} vs {})", p1.n, p2.n));
    }
    let coarse = p2.labels();
    Ok(p1.blocks.iter().all(|block| {
        let target = coarse[block[0] - 1];
        block.iter().all(|&e| coarse[e - 1] == target)
    }))
}

pub fn partition_type(p: &SetPartition) -> PartitionType {
    p.partition_type()
}

/// Merges blocks of `p` according to `groups` (one group label per block).
fn merge_blocks(p: &SetPartition, groups: &[usize]) -> SetPartition {
    let mut labels = vec![0; p.n];
    for (b, block) in p.blocks.iter().enumerate() {
        for &e in block {
            labels[e - 1] = groups[b];
        }
    }
    SetPartition::from_labels(&labels)
}

/// All coarsenings `q >= p`, including `p` itself.
pub fn enumerate_coarsenings(p: &SetPartition) -> Result<Vec<SetPartition>> {
    check_enum_size(p.n)?;
    let mut rgs = RestrictedGrowth::new(p.num_blocks());
    let mut out = Vec::new();
    while let Some(groups) = rgs.advance() {
        out.push(merge_blocks(p, groups));
    }
    Ok(out)
}

/// The closed interval `[lower, upper]` of the refinement order.
///
/// Enumerated as a product, over the blocks of `upper`, of the partitions of
/// the `lower`-blocks inside each of them.
pub fn interval(lower: &SetPartition, upper: &SetPartition) -> Result<Vec<SetPartition>> {
    check_enum_size(lower.n)?;
    if !refines(lower, upper)? {
        return domain(format!("{lower} does not refine {upper}"));
    }
    let coarse = upper.labels();
    // lower-block indices grouped by enclosing upper block
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); upper.num_blocks()];
    for (b, block) in lower.blocks.iter().enumerate() {
        groups[coarse[block[0] - 1]].push(b);
    }
    let per_group: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|g| {
            let mut rgs = RestrictedGrowth::new(g.len());
            let mut all = Vec::new();
            while let Some(s) = rgs.advance() {
                all.push(s.to_vec());
            }
            all
        })
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; per_group.len()];
    let mut block_groups = vec![0usize; lower.num_blocks()];
    loop {
        let mut offset = 0;
        for (g, members) in groups.iter().enumerate() {
            let rgs = &per_group[g][choice[g]];
            for (slot, &b) in members.iter().enumerate() {
                block_groups[b] = offset + rgs[slot];
            }
            offset += members.len();
        }
        out.push(merge_blocks(lower, &block_groups));

        // odometer over the per-group choices
        let mut g = per_group.len();
        loop {
            if g == 0 {
                return Ok(out);
            }
            g -= 1;
            choice[g] += 1;
            if choice[g] < per_group[g].len() {
                break;
            }
            choice[g] = 0;
        }
    }
}

pub(crate) fn factorials(max: usize) -> Vec<BigUint> {
    let mut f = Vec::with_capacity(max + 1);
    f.push(BigUint::one());
    for i in 1..=max {
        let next = &f[i - 1] * BigUint::from(i);
        f.push(next);
    }
    f
}

pub(crate) fn type_count_with(fact: &[BigUint], t: &PartitionType) -> BigUint {
    let mut denom = BigUint::one();
    let mut run = 0;
    for (i, &s) in t.sizes.iter().enumerate() {
        denom *= &fact[s];
        run += 1;
        if i + 1 == t.sizes.len() || t.sizes[i + 1] != s {
            denom *= &fact[run];
            run = 0;
        }
    }
    &fact[t.n()] / denom
}

/// Exact number of set partitions of `[n]` having type `t`:
/// `n! / (prod size_i! * prod multiplicity_j!)`.
pub fn count_partitions_of_type(t: &PartitionType) -> BigUint {
    type_count_with(&factorials(t.n()), t)
}

/// Integer partitions of `n` as types, in reverse lexicographic order
/// starting from `(n)`.
pub fn enumerate_types(n: usize) -> Vec<PartitionType> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<PartitionType>) {
        if remaining == 0 {
            out.push(PartitionType {
                sizes: current.clone(),
            });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// `p(n)` together with its argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerPartitionCount {
    pub n: usize,
    #[serde(with = "crate::serde_big")]
    pub value: BigUint,
}

/// Table `p(0), ..., p(max)` by Euler's pentagonal recurrence.
pub fn partition_numbers(max: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(max + 1);
    p.push(BigInt::one());
    for m in 1..=max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = k % 2 == 1;
            let mut term = p[m - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                term += &p[m - g2];
            }
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are nonnegative"))
        .collect()
}

pub fn partition_function(n: usize) -> Result<IntegerPartitionCount> {
    if n == 0 {
        return domain("p(n) is defined here for n >= 1");
    }
    let value = partition_numbers(n).pop().expect("table has n + 1 entries");
    Ok(IntegerPartitionCount { n, value })
}

/// `c = 2 sqrt(zeta(2)) = pi sqrt(2/3)`.
pub fn partition_bound_constant() -> f64 {
    std::f64::consts::PI * (2.0f64 / 3.0).sqrt()
}

/// `e^{c sqrt(n)} / n^{3/4}`.
pub fn partition_function_upper_bound(n: usize) -> f64 {
    let n = n as f64;
    (partition_bound_constant() * n.sqrt()).exp() / n.powf(0.75)
}

/// Rational strictly below pi.
fn pi_lower() -> BigRational {
    BigRational::new(
        BigInt::from(314_159_265_358_979u64),
        BigInt::from(100_000_000_000_000u64),
    )
}

/// Rational lower bound of `sqrt(q)` for `q >= 0` with `bits` fractional bits.
pub(crate) fn sqrt_lower(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * BigRational::from_integer(scale)).floor().to_integer();
    let root = scaled.to_biguint().unwrap_or_default().sqrt();
    BigRational::new(BigInt::from(root), BigInt::one() << bits)
}

/// Rational lower bound of `e^x` for `x >= 0`.
///
/// Sums the Taylor series in fixed point with `bits` fractional bits,
/// rounding every term down, so each partial sum is below `e^x`.
pub fn exp_lower_bound(x: &BigRational, bits: u32) -> BigRational {
    assert!(!x.is_negative(), "exp_lower_bound needs x >= 0");
    let one = BigInt::one() << bits;
    let x_fixed = (x * BigRational::from_integer(one.clone())).floor().to_integer();
    let mut term = one.clone();
    let mut sum = term.clone();
    let mut j = 1u64;
    while !term.is_zero() {
        term = (&term * &x_fixed) / (&one * BigInt::from(j));
        sum += &term;
        j += 1;
    }
    BigRational::new(sum, one)
}

/// Exact certificate that `p < e^{c sqrt(n)} / n^{3/4}`.
///
/// With `L <= e^{c sqrt(n)}` a certified rational lower bound, checks
/// `p^4 n^3 < L^4` in exact arithmetic.
pub fn certify_partition_bound(n: usize, p: &BigUint) -> bool {
    assert!(n >= 1);
    let two_n_over_three = BigRational::new(BigInt::from(2 * n), BigInt::from(3));
    let exponent = pi_lower() * sqrt_lower(&two_n_over_three, 64);
    let lower = exp_lower_bound(&exponent, 64);
    let lhs = BigRational::from_integer(BigInt::from(p.pow(4u32) * BigUint::from(n).pow(3u32)));
    let rhs = {
        let sq = &lower * &lower;
        &sq * &sq
    };
    lhs < rhs
}

/// Convenience: `p(n)` as an `f64` where representable.
pub fn partition_count_f64(p: &BigUint) -> f64 {
    p.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    /// Bell numbers from the Bell triangle, independent of enumeration.
    fn bell_triangle(max: usize) -> Vec<u64> {
        let mut bells = vec![1u64];
        let mut row = vec![1u64];
        for _ in 1..=max {
            let mut next = vec![*row.last().unwrap()];
            for &v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            bells.push(next[0]);
            row = next;
        }
        bells
    }

    #[test]
    fn parse_and_display_canonicalise() {
        let p = part("3,1|4|2");
        assert_eq!(p.to_string(), "1,3|2|4");
        assert_eq!(p.blocks(), &[vec![1, 3], vec![2], vec![4]]);
        assert_eq!(part("2|1"), SetPartition::singletons(2));
    }

    #[test]
    fn parser_rejects_duplicates_and_gaps() {
        assert!(matches!("1,2|2".parse::<SetPartition>(), Err(Error::Parse(_))));
        assert!(matches!("1|3".parse::<SetPartition>(), Err(Error::Parse(_))));
        assert!(matches!("0|1".parse::<SetPartition>(), Err(Error::Parse(_))));
        assert!(matches!("1,|2".parse::<SetPartition>(), Err(Error::Parse(_))));
        assert!(matches!("".parse::<SetPartition>(), Err(Error::Parse(_))));
        assert!("3,1,x".parse::<PartitionType>().is_err());
        assert!("3,0".parse::<PartitionType>().is_err());
    }

    #[test]
    fn enumeration_counts_match_bell_triangle() {
        let bells = bell_triangle(12);
        for n in 1..=10 {
            assert_eq!(set_partitions(n).unwrap().count() as u64, bells[n], "n = {n}");
        }
        assert_eq!(enumerate_set_partitions(1).unwrap(), vec![part("1")]);
        assert_eq!(enumerate_set_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_set_partitions(7).unwrap().len(), 877);
    }

    #[test]
    #[ignore = "walks all 4.2M partitions of [12]"]
    fn enumeration_at_twelve() {
        assert_eq!(set_partitions(12).unwrap().count() as u64, bell_triangle(12)[12]);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let all = enumerate_set_partitions(6).unwrap();
        let mut sorted_labels: Vec<Vec<usize>> = all.iter().map(SetPartition::labels).collect();
        let copy = sorted_labels.clone();
        sorted_labels.sort();
        sorted_labels.dedup();
        assert_eq!(sorted_labels, copy, "lexicographic and duplicate free");
        for p in &all {
            assert_eq!(&p.to_string().parse::<SetPartition>().unwrap(), p);
        }
    }

    #[test]
    fn enumeration_rejects_out_of_range() {
        assert!(matches!(enumerate_set_partitions(0), Err(Error::Domain(_))));
        assert!(matches!(set_partitions(13), Err(Error::Domain(_))));
    }

    #[test]
    fn refinement_examples() {
        let bottom = SetPartition::singletons(3);
        for q in enumerate_set_partitions(3).unwrap() {
            assert!(refines(&bottom, &q).unwrap());
        }
        assert!(refines(&part("1,2|3"), &part("1,2,3")).unwrap());
        assert!(!refines(&part("1,2|3"), &part("1,3|2")).unwrap());
        assert!(matches!(refines(&part("1|2"), &part("1,2,3")), Err(Error::Domain(_))));
    }

    #[test]
    fn refinement_is_a_partial_order() {
        for n in 1..=5 {
            let all = enumerate_set_partitions(n).unwrap();
            for a in &all {
                assert!(refines(a, a).unwrap());
                for b in &all {
                    let ab = refines(a, b).unwrap();
                    if ab && refines(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if !ab {
                        continue;
                    }
                    for c in &all {
                        if refines(b, c).unwrap() {
                            assert!(refines(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn type_examples() {
        assert_eq!(part("1,2|3|4").partition_type().sizes(), &[2, 1, 1]);
        assert_eq!(part("1,2,3,4").partition_type().sizes(), &[4]);
        assert_eq!(part("1,4|2,3").partition_type().sizes(), &[2, 2]);
        assert_eq!("1,3,1".parse::<PartitionType>().unwrap().to_string(), "3,1,1");
    }

    #[test]
    fn coarsening_examples() {
        let bottom = SetPartition::singletons(3);
        let mut c = enumerate_coarsenings(&bottom).unwrap();
        c.sort();
        let mut all = enumerate_set_partitions(3).unwrap();
        all.sort();
        assert_eq!(c, all);
        assert_eq!(enumerate_coarsenings(&part("1,2,3")).unwrap(), vec![part("1,2,3")]);
        let mut c = enumerate_coarsenings(&part("1,2|3")).unwrap();
        c.sort();
        assert_eq!(c, vec![part("1,2|3"), part("1,2,3")]);
    }

    #[test]
    fn coarsenings_equal_filtered_enumeration() {
        let all = enumerate_set_partitions(5).unwrap();
        for p in &all {
            let mut fast = enumerate_coarsenings(p).unwrap();
            fast.sort();
            let mut slow: Vec<_> = all.iter().filter(|q| refines(p, q).unwrap()).cloned().collect();
            slow.sort();
            assert_eq!(fast, slow, "p = {p}");
        }
    }

    #[test]
    fn interval_equals_filtered_enumeration() {
        let all = enumerate_set_partitions(5).unwrap();
        for lo in all.iter().step_by(3) {
            for hi in all.iter().filter(|q| refines(lo, q).unwrap()) {
                let mut fast = interval(lo, hi).unwrap();
                fast.sort();
                let mut slow: Vec<_> = all
                    .iter()
                    .filter(|q| refines(lo, q).unwrap() && refines(q, hi).unwrap())
                    .cloned()
                    .collect();
                slow.sort();
                assert_eq!(fast, slow, "[{lo}, {hi}]");
            }
        }
        assert!(interval(&part("1,2|3"), &part("1|2|3")).is_err());
    }

    fn exhaustive_type_counts(n: usize) -> BTreeMap<PartitionType, u64> {
        let mut counts = BTreeMap::new();
        for p in set_partitions(n).unwrap() {
            *counts.entry(p.partition_type()).or_insert(0u64) += 1;
        }
        counts
    }

    #[test]
    fn type_count_examples() {
        let t = |s: &str| s.parse::<PartitionType>().unwrap();
        assert_eq!(count_partitions_of_type(&t("2,1,1")), BigUint::from(6u32));
        assert_eq!(count_partitions_of_type(&t("2,2")), BigUint::from(3u32));
        assert_eq!(count_partitions_of_type(&t("9")), BigUint::one());
    }

    #[test]
    fn type_counts_match_enumeration() {
        let bells = bell_triangle(9);
        for n in 1..=9 {
            let counts = exhaustive_type_counts(n);
            assert_eq!(counts.len(), enumerate_types(n).len());
            let mut total = BigUint::zero();
            for t in enumerate_types(n) {
                let c = count_partitions_of_type(&t);
                assert_eq!(c, BigUint::from(counts[&t]), "type {t}");
                total += c;
            }
            assert_eq!(total, BigUint::from(bells[n]));
        }
    }

    #[test]
    fn partition_function_matches_enumeration() {
        // brute force: count non-increasing sequences by recursion
        fn brute(n: usize, max: usize) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|k| brute(n - k, k)).sum()
        }
        let table = partition_numbers(40);
        for n in 1..=40 {
            assert_eq!(table[n], BigUint::from(brute(n, n)), "p({n})");
        }
        assert_eq!(partition_function(1).unwrap().value, BigUint::one());
        assert_eq!(partition_function(5).unwrap().value, BigUint::from(7u32));
        for n in 1..=12 {
            assert_eq!(
                partition_function(n).unwrap().value,
                BigUint::from(enumerate_types(n).len())
            );
        }
        assert!(partition_function(0).is_err());
    }

    #[test]
    fn partition_function_bound() {
        assert!((partition_bound_constant() - 2.565_099_66).abs() < 1e-8);
        assert!((partition_function_upper_bound(1) - 2.565_099_660_323_728f64.exp()).abs() < 1e-9);
        let p100 = partition_function(100).unwrap().value;
        assert_eq!(p100, BigUint::from(190_569_292u64));
        assert!(partition_count_f64(&p100) < partition_function_upper_bound(100));
        assert!(certify_partition_bound(100, &p100));
        // the certificate must reject a value above the bound
        let too_big = BigUint::from(partition_function_upper_bound(100) as u64 + 1);
        assert!(!certify_partition_bound(100, &too_big));
    }

    #[test]
    fn exp_lower_bound_is_below_and_close() {
        for x in [0.0f64, 0.5, 1.0, 10.0, 100.0] {
            let q = BigRational::from_float(x).unwrap();
            let lower = exp_lower_bound(&q, 64).to_f64().unwrap();
            assert!(lower <= x.exp());
            assert!((x.exp() - lower) / x.exp() < 1e-12, "x = {x}");
        }
    }
}
