//! Frequency-level checks for families of characters on the torus.
//!
//! A character `e^{2 pi i C . x}` is stored as its integer frequency `C`.
//! The integral of `f_{l_1} conj(f_{l_2}) ... f_{l_{2r-1}} conj(f_{l_{2r}})`
//! is zero exactly when the alternating sum of frequencies is nonzero, so
//! every vanishing question becomes integer arithmetic.
//!
//! Member indices in this module's public API are 1-based.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const TYPE_IV_BUDGET: u64 = 10_000_000;
pub const STRUCTURE_BUDGET: u64 = 100_000_000;

/// Integer frequency in `Z^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrequencyVector(pub Vec<BigInt>);

impl FrequencyVector {
    pub fn zero(dim: usize) -> Self {
        FrequencyVector(vec![BigInt::zero(); dim])
    }

    /// `value * e_axis` (axis 1-based).
    pub fn along_axis(dim: usize, axis: usize, value: BigInt) -> Self {
        let mut v = FrequencyVector::zero(dim);
        v.0[axis - 1] = value;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Add<&FrequencyVector> for &FrequencyVector {
    type Output = FrequencyVector;
    fn add(self, rhs: &FrequencyVector) -> FrequencyVector {
        FrequencyVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&FrequencyVector> for &FrequencyVector {
    type Output = FrequencyVector;
    fn sub(self, rhs: &FrequencyVector) -> FrequencyVector {
        FrequencyVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for FrequencyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for FrequencyVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_big::seq::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for FrequencyVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::serde_big::seq::deserialize(d).map(FrequencyVector)
    }
}

/// Ordered frequencies; equal frequencies at different indices are distinct
/// members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FamilyDoc", try_from = "FamilyDoc")]
pub struct FrequencyFamily {
    dim: usize,
    freqs: Vec<FrequencyVector>,
    origins: Vec<String>,
}

impl FrequencyFamily {
    pub fn new(dim: usize, freqs: Vec<FrequencyVector>) -> Result<Self> {
        let origins = vec![String::new(); freqs.len()];
        FrequencyFamily::with_origins(dim, freqs, origins)
    }

    pub fn with_origins(dim: usize, freqs: Vec<FrequencyVector>, origins: Vec<String>) -> Result<Self> {
        if dim == 0 {
            return domain("frequency dimension must be at least 1");
        }
        if let Some(bad) = freqs.iter().find(|f| f.dim() != dim) {
            return domain(format!("frequency {bad} does not have dimension {dim}"));
        }
        if origins.len() != freqs.len() {
            return domain("one origin label per member required");
        }
        Ok(FrequencyFamily { dim, freqs, origins })
    }

    /// One-dimensional family from plain integers.
    pub fn from_scalars(values: &[i64]) -> Self {
        let freqs = values
            .iter()
            .map(|&v| FrequencyVector(vec![BigInt::from(v)]))
            .collect();
        FrequencyFamily::new(1, freqs).expect("dimension 1")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Member `index` (1-based).
    pub fn member(&self, index: usize) -> &FrequencyVector {
        &self.freqs[index - 1]
    }

    pub fn members(&self) -> &[FrequencyVector] {
        &self.freqs
    }

    pub fn origin(&self, index: usize) -> &str {
        &self.origins[index - 1]
    }
}

#[derive(Serialize, Deserialize)]
struct MemberDoc {
    index: usize,
    coords: FrequencyVector,
    origin: String,
}

#[derive(Serialize, Deserialize)]
struct FamilyDoc {
    dimension: usize,
    axes: Vec<String>,
    members: Vec<MemberDoc>,
}

impl From<FrequencyFamily> for FamilyDoc {
    fn from(fam: FrequencyFamily) -> Self {
        FamilyDoc {
            dimension: fam.dim,
            axes: (1..=fam.dim).map(|k| format!("x{k}")).collect(),
            members: fam
                .freqs
                .into_iter()
                .zip(fam.origins)
                .enumerate()
                .map(|(i, (coords, origin))| MemberDoc {
                    index: i + 1,
                    coords,
                    origin,
                })
                .collect(),
        }
    }
}

impl TryFrom<FamilyDoc> for FrequencyFamily {
    type Error = Error;
    fn try_from(doc: FamilyDoc) -> Result<Self> {
        if doc.axes.len() != doc.dimension {
            return domain("axis labels must match the dimension");
        }
        for (i, m) in doc.members.iter().enumerate() {
            if m.index != i + 1 {
                return domain(format!("member indices must run 1..L, found {} at {}", m.index, i + 1));
            }
        }
        let (freqs, origins) = doc.members.into_iter().map(|m| (m.coords, m.origin)).unzip();
        FrequencyFamily::with_origins(doc.dimension, freqs, origins)
    }
}

fn check_index(fam: &FrequencyFamily, index: usize) -> Result<()> {
    if index == 0 || index > fam.len() {
        return domain(format!("member index {index} outside 1..={}", fam.len()));
    }
    Ok(())
}

/// `C_{l_1} - C_{l_2} + C_{l_3} - ...` over a 1-based index tuple.
pub fn signed_sum(fam: &FrequencyFamily, idx: &[usize]) -> Result<FrequencyVector> {
    let mut acc = FrequencyVector::zero(fam.dim);
    for (pos, &l) in idx.iter().enumerate() {
        check_index(fam, l)?;
        acc = if pos % 2 == 0 {
            &acc + fam.member(l)
        } else {
            &acc - fam.member(l)
        };
    }
    Ok(acc)
}

/// Whether the integral of the alternating product over `idx` vanishes,
/// i.e. whether the signed frequency sum is nonzero.
pub fn tuple_vanishes(fam: &FrequencyFamily, idx: &[usize]) -> Result<bool> {
    if idx.is_empty() || idx.len() % 2 == 1 {
        return domain(format!("index tuples must have positive even length, got {}", idx.len()));
    }
    Ok(!signed_sum(fam, idx)?.is_zero())
}

/// `n (n - 1) ... (n - k + 1)`, saturating.
fn falling(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

/// `C(n, k)`, saturating.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIvOutcome {
    pub r: usize,
    pub s: usize,
    /// Number of index tuples matching the pattern.
    pub candidates: u64,
    /// First tuple (1-based, length `2r`) whose integral does not vanish.
    pub violation: Option<Vec<usize>>,
}

impl TypeIvOutcome {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Injective sequences of length `k` over `0..l`, in lexicographic order.
struct InjectiveTuples {
    l: usize,
    current: Vec<usize>,
    used: Vec<bool>,
    fresh: bool,
    done: bool,
}

impl InjectiveTuples {
    fn new(l: usize, k: usize) -> Self {
        let mut used = vec![false; l];
        let current: Vec<usize> = (0..k.min(l)).collect();
        for &i in &current {
            used[i] = true;
        }
        InjectiveTuples {
            l,
            current,
            used,
            fresh: true,
            done: k > l,
        }
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.current);
        }
        let k = self.current.len();
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            let old = self.current[pos];
            self.used[old] = false;
            if let Some(next) = (old + 1..self.l).find(|&v| !self.used[v]) {
                self.current[pos] = next;
                self.used[next] = true;
                // refill the suffix with the smallest unused values
                let mut v = 0;
                for slot in pos + 1..k {
                    while self.used[v] {
                        v += 1;
                    }
                    self.current[slot] = v;
                    self.used[v] = true;
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

/// Brute-force s-Type IV check for `2r`-tuples.
///
/// Matching tuples have distinct entries at positions `1..=2r-2s` and at
/// the odd tail positions `2j-1` (`r-s < j <= r`), also distinct from the
/// head, with `l_{2j} = l_{2j-1}`. There are `P(L, 2r-s)` of them; more
/// than `budget` is a resource error.
pub fn check_s_type_iv(fam: &FrequencyFamily, r: usize, s: usize, budget: u64) -> Result<TypeIvOutcome> {
    if r == 0 || s > r {
        return domain(format!("need r >= 1 and 0 <= s <= r, got r = {r}, s = {s}"));
    }
    let free = 2 * r - s;
    let count = falling(fam.len(), free);
    if count > budget as u128 {
        return Err(Error::Resource(format!(
            "{count} candidate tuples exceed the budget of {budget}"
        )));
    }
    let head = 2 * r - 2 * s;
    let mut tuples = InjectiveTuples::new(fam.len(), free);
    let mut full = vec![0usize; 2 * r];
    while let Some(t) = tuples.advance() {
        for i in 0..head {
            full[i] = t[i] + 1;
        }
        for (j, &l) in t[head..].iter().enumerate() {
            full[head + 2 * j] = l + 1;
            full[head + 2 * j + 1] = l + 1;
        }
        if !tuple_vanishes(fam, &full)? {
            return Ok(TypeIvOutcome {
                r,
                s,
                candidates: count as u64,
                violation: Some(full),
            });
        }
    }
    Ok(TypeIvOutcome {
        r,
        s,
        candidates: count as u64,
        violation: None,
    })
}

/// `sum ys = sum zs` over distinct entries; indices are 1-based into the
/// searched list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveStructure {
    pub ys: Vec<usize>,
    pub zs: Vec<usize>,
    pub sum: FrequencyVector,
}

impl fmt::Display for AdditiveStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "ys=[{}] zs=[{}] sum={}", join(&self.ys), join(&self.zs), self.sum)
    }
}

/// Exhaustive `(t1, t2)` search over the entries of `items`, which may
/// repeat values. Combinations are visited in lexicographic order and the
/// first witness is returned.
fn search_structure(
    items: &[(usize, &FrequencyVector)],
    dim: usize,
    t1: usize,
    t2: usize,
    budget: u64,
) -> Result<Option<AdditiveStructure>> {
    if t1 == 0 || t2 == 0 {
        return domain("t1 and t2 must be positive");
    }
    let t = t1 + t2;
    if t > items.len() {
        return Ok(None);
    }
    let cost = binomial(items.len(), t).saturating_mul(1u128 << t.min(127));
    if cost > budget as u128 {
        return Err(Error::Resource(format!(
            "structure search cost {cost} exceeds the budget of {budget}"
        )));
    }
    let mut combo: Vec<usize> = (0..t).collect();
    loop {
        let total = combo
            .iter()
            .fold(FrequencyVector::zero(dim), |acc, &i| &acc + items[i].1);
        // ys: every t1-subset of the chosen combination
        let mut pick: Vec<usize> = (0..t1).collect();
        loop {
            let y_sum = pick
                .iter()
                .fold(FrequencyVector::zero(dim), |acc, &p| &acc + items[combo[p]].1);
            if &y_sum + &y_sum == total {
                let ys: Vec<usize> = pick.iter().map(|&p| items[combo[p]].0).collect();
                let zs: Vec<usize> = (0..t)
                    .filter(|p| !pick.contains(p))
                    .map(|p| items[combo[p]].0)
                    .collect();
                return Ok(Some(AdditiveStructure { ys, zs, sum: y_sum }));
            }
            if !next_combination(&mut pick, t) {
                break;
            }
        }
        if !next_combination(&mut combo, items.len()) {
            return Ok(None);
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `(t1, t2)`-additive structure among distinct frequency values.
///
/// Repeated values in `values` are ignored after their first occurrence;
/// witness indices point at first occurrences (1-based).
pub fn find_additive_structure(
    values: &[FrequencyVector],
    t1: usize,
    t2: usize,
    budget: u64,
) -> Result<Option<AdditiveStructure>> {
    let Some(dim) = values.first().map(FrequencyVector::dim) else {
        return Ok(None);
    };
    if values.iter().any(|v| v.dim() != dim) {
        return domain("all frequencies must share one dimension");
    }
    let mut seen = std::collections::HashSet::new();
    let items: Vec<(usize, &FrequencyVector)> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| seen.insert(*v))
        .map(|(i, v)| (i + 1, v))
        .collect();
    search_structure(&items, dim, t1, t2, budget)
}

/// `(t1, t2)`-additive structure among distinct members, so two copies of
/// one frequency may sit on opposite sides.
pub fn find_member_structure(
    fam: &FrequencyFamily,
    t1: usize,
    t2: usize,
    budget: u64,
) -> Result<Option<AdditiveStructure>> {
    let items: Vec<(usize, &FrequencyVector)> = fam.freqs.iter().enumerate().map(|(i, v)| (i + 1, v)).collect();
    search_structure(&items, fam.dim, t1, t2, budget)
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// The scaled values of block `k`, in order: `2^{j+k}` for `j < k`, then
/// `4^k + 2^k - 1`, then `2^{j+k} + 2^{k-j}` for `j <= k`.
pub fn block_values(k: usize) -> Vec<(BigInt, String)> {
    let mut out = Vec::with_capacity(2 * k);
    for j in 1..k {
        out.push((pow2(j + k), format!("B{k}: 2^{j}*2^{k}")));
    }
    out.push((pow2(2 * k) + pow2(k) - BigInt::one(), format!("B{k}: (2^{k}+1-2^-{k})*2^{k}")));
    for j in 1..=k {
        out.push((pow2(j + k) + pow2(k - j), format!("B{k}: (2^{j}+2^-{j})*2^{k}")));
    }
    out
}

/// Members: the base set twice (copy 1, then copy 2), then blocks
/// `k = r-s0+1, ..., n_dim`, each along axis `k`.
pub fn build_example_family(r: usize, s0: usize, n_dim: usize) -> Result<FrequencyFamily> {
    if r == 0 {
        return domain("r must be positive");
    }
    if s0 >= r {
        return domain(format!("s0 must satisfy 0 <= s0 <= r-1, got s0 = {s0}, r = {r}"));
    }
    if n_dim < r {
        return domain(format!("the torus dimension N = {n_dim} must be at least r = {r}"));
    }
    let gap = r - s0;
    let mut freqs = Vec::new();
    let mut origins = Vec::new();
    for copy in 1..=2 {
        for j in 1..gap {
            freqs.push(FrequencyVector::along_axis(n_dim, 1, pow2(j)));
            origins.push(format!("B copy {copy}: 2^{j}"));
        }
    }
    for k in gap + 1..=n_dim {
        for (value, origin) in block_values(k) {
            freqs.push(FrequencyVector::along_axis(n_dim, k, value));
            origins.push(origin);
        }
    }
    FrequencyFamily::with_origins(n_dim, freqs, origins)
}

/// Both sides of the block-`k` identity after scaling by `2^k`:
/// `sum_{j<k} 2^{j+k} + 4^k + 2^k - 1` and `sum_{j<=k} (2^{j+k} + 2^{k-j})`.
pub fn kth_coord_identity(k: usize) -> Result<(BigInt, BigInt)> {
    if k == 0 {
        return domain("k must be positive");
    }
    let lhs = (1..k).fold(BigInt::zero(), |acc, j| acc + pow2(j + k)) + pow2(2 * k) + pow2(k) - BigInt::one();
    let rhs = (1..=k).fold(BigInt::zero(), |acc, j| acc + pow2(j + k) + pow2(k - j));
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRow {
    pub t: usize,
    pub expected: bool,
    /// Witness among distinct members.
    pub member_witness: Option<AdditiveStructure>,
    /// Witness among distinct values.
    pub value_witness: Option<AdditiveStructure>,
}

impl StructureRow {
    pub fn holds(&self) -> bool {
        self.member_witness.is_some() == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIvRow {
    pub s: usize,
    pub expected_pass: bool,
    pub outcome: TypeIvOutcome,
}

impl TypeIvRow {
    pub fn holds(&self) -> bool {
        self.outcome.passed() == self.expected_pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub r: usize,
    pub s0: usize,
    #[serde(rename = "N")]
    pub n_dim: usize,
    pub family: FrequencyFamily,
    pub structures: Vec<StructureRow>,
    pub type_iv: Vec<TypeIvRow>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.structures.iter().all(StructureRow::holds) && self.type_iv.iter().all(TypeIvRow::holds)
    }
}

/// Builds the family and checks every claim about it: a `(t, t)`
/// structure among members exists exactly for `t != r - s0`, and the
/// family is s-Type IV exactly for `s = s0` among `0 <= s <= r-1`.
pub fn verify_example_properties(
    r: usize,
    s0: usize,
    n_dim: usize,
    type_iv_budget: u64,
    structure_budget: u64,
) -> Result<ExampleReport> {
    let family = build_example_family(r, s0, n_dim)?;
    let mut distinct_values: Vec<FrequencyVector> = Vec::new();
    for f in family.members() {
        if !distinct_values.contains(f) {
            distinct_values.push(f.clone());
        }
    }
    let structures = (1..=r)
        .map(|t| {
            Ok(StructureRow {
                t,
                expected: t != r - s0,
                member_witness: find_member_structure(&family, t, t, structure_budget)?,
                value_witness: find_additive_structure(&distinct_values, t, t, structure_budget)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let type_iv = (0..r)
        .map(|s| {
            Ok(TypeIvRow {
                s,
                expected_pass: s == s0,
                outcome: check_s_type_iv(&family, r, s, type_iv_budget)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExampleReport {
        r,
        s0,
        n_dim,
        family,
        structures,
        type_iv,
    })
}
