//! Exact verification of the distinct-sum expansion
//!
//! ```text
//! sum*_{(l_P), P in P1} prod_j v_{j, l_{P1(j)}}
//!     = sum_{P >= P1} D(P1, P) sum_{(l_P), P in P} prod_j v_{j, l_{P(j)}}
//! ```
//!
//! where `sum*` runs over pairwise distinct indices and the inner sums on the
//! right are unrestricted. Scalars are Gaussian rationals so both sides are
//! compared exactly. A [`ConjugationPattern`] conjugates selected slots,
//! which turns the product into the `v1 conj(v2) ... v_{2r-1} conj(v_{2r})`
//! form used for square functions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chains::{chain_stats_above, d_general, MAX_CHAIN_N};
use crate::error::{domain, Result};
use crate::partition::{enumerate_coarsenings, enumerate_set_partitions, SetPartition};

/// `re + im i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianRational {
    #[serde(with = "crate::serde_big")]
    pub re: BigRational,
    #[serde(with = "crate::serde_big")]
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(v: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_ratios(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        GaussianRational::new(&self.re * &k, &self.im * &k)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}i", self.re, sign, self.im.abs())
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

fn random_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let mut den: i64 = 0;
    while den == 0 {
        den = rng.gen_range(-9..=9);
    }
    BigRational::new(num.into(), den.into())
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = random_ratio(rng);
    let im = random_ratio(rng);
    GaussianRational::new(re, im)
}

/// `values[j][l]`: the `l`-th scalar of slot `j` (both 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarFamily {
    n: usize,
    #[serde(rename = "L")]
    l: usize,
    values: Vec<Vec<GaussianRational>>,
}

impl ScalarFamily {
    pub fn new(values: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return domain("a family needs at least one slot");
        }
        let l = values[0].len();
        if l == 0 || values.iter().any(|row| row.len() != l) {
            return domain("every slot must hold the same positive number of values");
        }
        Ok(ScalarFamily { n, l, values })
    }

    /// Seeded family with real and imaginary parts `a/b`, `|a| <= 9`,
    /// `1 <= |b| <= 9`.
    pub fn random(n: usize, l: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..n)
            .map(|_| (0..l).map(|_| random_gaussian(&mut rng)).collect())
            .collect();
        ScalarFamily::new(values)
    }

    /// Seeded family with purely real values.
    pub fn random_real(n: usize, l: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..n)
            .map(|_| {
                (0..l)
                    .map(|_| GaussianRational::new(random_ratio(&mut rng), BigRational::zero()))
                    .collect()
            })
            .collect();
        ScalarFamily::new(values)
    }

    pub fn constant(n: usize, l: usize, value: GaussianRational) -> Result<Self> {
        ScalarFamily::new(vec![vec![value; l]; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.l
    }

    pub fn is_empty(&self) -> bool {
        self.l == 0
    }

    pub fn value(&self, slot: usize, index: usize) -> &GaussianRational {
        &self.values[slot][index]
    }
}

/// Which slots enter conjugated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationPattern {
    pub flags: Vec<bool>,
}

impl ConjugationPattern {
    pub fn none(n: usize) -> Self {
        ConjugationPattern {
            flags: vec![false; n],
        }
    }

    /// Conjugates slots 2, 4, 6, ... (1-based).
    pub fn alternating(n: usize) -> Self {
        ConjugationPattern {
            flags: (0..n).map(|j| j % 2 == 1).collect(),
        }
    }
}

fn check_dims(fam: &ScalarFamily, pat: &ConjugationPattern, p: &SetPartition) -> Result<()> {
    if p.n() != fam.n || pat.flags.len() != fam.n {
        return domain(format!(
            "dimension mismatch: family has {} slots, partition {}, pattern {}",
            fam.n,
            p.n(),
            pat.flags.len()
        ));
    }
    Ok(())
}

/// `w_B(l) = prod_{j in B} v_{j,l}` (conjugated where flagged) for every
/// block `B` of `p`.
fn block_weights(
    fam: &ScalarFamily,
    pat: &ConjugationPattern,
    p: &SetPartition,
) -> Vec<Vec<GaussianRational>> {
    p.blocks()
        .iter()
        .map(|block| {
            (0..fam.l)
                .map(|l| {
                    block.iter().fold(GaussianRational::one(), |acc, &j| {
                        let v = fam.value(j - 1, l);
                        if pat.flags[j - 1] {
                            &acc * &v.conj()
                        } else {
                            &acc * v
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Sum over injective assignments of indices to the blocks of `p1`.
pub fn distinct_sum(
    fam: &ScalarFamily,
    pat: &ConjugationPattern,
    p1: &SetPartition,
) -> Result<GaussianRational> {
    check_dims(fam, pat, p1)?;
    let weights = block_weights(fam, pat, p1);
    if weights.len() > fam.l {
        return Ok(GaussianRational::zero());
    }
    let mut used = vec![false; fam.l];
    Ok(injective_sum(&weights, 0, &mut used))
}

fn injective_sum(weights: &[Vec<GaussianRational>], block: usize, used: &mut [bool]) -> GaussianRational {
    if block == weights.len() {
        return GaussianRational::one();
    }
    let mut total = GaussianRational::zero();
    for l in 0..used.len() {
        if used[l] || weights[block][l].is_zero() {
            continue;
        }
        used[l] = true;
        let rest = injective_sum(weights, block + 1, used);
        used[l] = false;
        total += &(&weights[block][l] * &rest);
    }
    total
}

/// Unrestricted sum, factored as a product of per-block sums.
pub fn independent_sum(
    fam: &ScalarFamily,
    pat: &ConjugationPattern,
    p: &SetPartition,
) -> Result<GaussianRational> {
    check_dims(fam, pat, p)?;
    Ok(block_weights(fam, pat, p)
        .iter()
        .fold(GaussianRational::one(), |acc, w| {
            let s = w.iter().fold(GaussianRational::zero(), |s, x| &s + x);
            &acc * &s
        }))
}

/// The coefficients `D(p1, q)` for every `q >= p1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub p1: SetPartition,
    pub terms: Vec<(SetPartition, BigInt)>,
}

impl Expansion {
    /// Brute-force chain counts up to `n = 8`, block-quotient closed form
    /// beyond.
    pub fn new(p1: &SetPartition) -> Result<Self> {
        let terms = if p1.n() <= MAX_CHAIN_N {
            chain_stats_above(p1)?
                .into_iter()
                .map(|(q, s)| (q, s.d))
                .collect()
        } else {
            enumerate_coarsenings(p1)?
                .into_iter()
                .map(|q| {
                    let d = d_general(p1, &q)?.value;
                    Ok((q, d))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Expansion {
            p1: p1.clone(),
            terms,
        })
    }

    pub fn evaluate(&self, fam: &ScalarFamily, pat: &ConjugationPattern) -> Result<GaussianRational> {
        let mut total = GaussianRational::zero();
        for (q, d) in &self.terms {
            if d.is_zero() {
                continue;
            }
            total += &independent_sum(fam, pat, q)?.scale(d);
        }
        Ok(total)
    }
}

/// `sum_{q >= p1} D(p1, q) * independent_sum(q)`.
pub fn weighted_rhs(
    fam: &ScalarFamily,
    pat: &ConjugationPattern,
    p1: &SetPartition,
) -> Result<GaussianRational> {
    check_dims(fam, pat, p1)?;
    Expansion::new(p1)?.evaluate(fam, pat)
}

/// One-step replacement: `distinct(p1) = independent(p1) - sum_{q > p1}
/// distinct(q)`.
pub fn verify_first_step(fam: &ScalarFamily, pat: &ConjugationPattern, p1: &SetPartition) -> Result<bool> {
    let lhs = distinct_sum(fam, pat, p1)?;
    let mut rhs = independent_sum(fam, pat, p1)?;
    for q in enumerate_coarsenings(p1)? {
        if &q != p1 {
            rhs = &rhs - &distinct_sum(fam, pat, &q)?;
        }
    }
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub seed: u64,
    pub lhs: GaussianRational,
    pub rhs: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub p1: SetPartition,
    pub trials: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const MAX_IDENTITY_N: usize = 8;
pub const MAX_IDENTITY_L: usize = 6;

/// Runs `trials` seeded random families through both sides of the identity,
/// with the alternating conjugation pattern. Trial `t` uses seed
/// `seed + t`.
pub fn verify_identity(
    n: usize,
    l: usize,
    p1: &SetPartition,
    trials: usize,
    seed: u64,
) -> Result<IdentityReport> {
    if n == 0 || n > MAX_IDENTITY_N || l == 0 || l > MAX_IDENTITY_L {
        return domain(format!(
            "identity checks need 1 <= n <= {MAX_IDENTITY_N} and 1 <= L <= {MAX_IDENTITY_L}"
        ));
    }
    if p1.n() != n {
        return domain(format!("partition {p1} is not a partition of [{n}]"));
    }
    let expansion = Expansion::new(p1)?;
    let pat = ConjugationPattern::alternating(n);
    let mut failures = Vec::new();
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let fam = ScalarFamily::random(n, l, trial_seed)?;
        let lhs = distinct_sum(&fam, &pat, p1)?;
        let rhs = expansion.evaluate(&fam, &pat)?;
        if lhs != rhs {
            failures.push(IdentityFailure {
                seed: trial_seed,
                lhs,
                rhs,
            });
        }
    }
    Ok(IdentityReport {
        n,
        l,
        p1: p1.clone(),
        trials,
        failures,
    })
}

/// Dense tensor of Gaussian rationals in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorValue {
    shape: Vec<usize>,
    entries: Vec<GaussianRational>,
}

impl TensorValue {
    pub fn zeros(shape: &[usize]) -> Self {
        let size = shape.iter().product();
        TensorValue {
            shape: shape.to_vec(),
            entries: vec![GaussianRational::zero(); size],
        }
    }

    /// `a_1 (x) a_2 (x) ... (x) a_n`.
    pub fn outer(factors: &[&[GaussianRational]]) -> Self {
        let mut entries = vec![GaussianRational::one()];
        for f in factors {
            let mut next = Vec::with_capacity(entries.len() * f.len());
            for e in &entries {
                for x in f.iter() {
                    next.push(e * x);
                }
            }
            entries = next;
        }
        TensorValue {
            shape: factors.iter().map(|f| f.len()).collect(),
            entries,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    fn add_scaled(&mut self, other: &TensorValue, k: &BigInt) -> Result<()> {
        if self.shape != other.shape {
            return domain(format!("shape mismatch {:?} vs {:?}", self.shape, other.shape));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += &b.scale(k);
        }
        Ok(())
    }

    /// Multi-index of a flat position.
    pub fn index_of(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.shape.len()];
        for axis in (0..self.shape.len()).rev() {
            idx[axis] = flat % self.shape[axis];
            flat /= self.shape[axis];
        }
        idx
    }
}

/// `vectors[j][l]`: the `l`-th vector of slot `j`, of length `dims[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFamily {
    dims: Vec<usize>,
    l: usize,
    vectors: Vec<Vec<Vec<GaussianRational>>>,
}

impl TensorFamily {
    pub fn new(dims: Vec<usize>, vectors: Vec<Vec<Vec<GaussianRational>>>) -> Result<Self> {
        if dims.is_empty() || dims.len() != vectors.len() {
            return domain("one dimension per slot required");
        }
        let l = vectors[0].len();
        for (d, slot) in dims.iter().zip(&vectors) {
            if slot.len() != l || l == 0 {
                return domain("every slot must hold the same positive number of vectors");
            }
            if *d == 0 || slot.iter().any(|v| v.len() != *d) {
                return domain(format!("vector length does not match axis dimension {d}"));
            }
        }
        Ok(TensorFamily { dims, l, vectors })
    }

    pub fn random(l: usize, dims: &[usize], seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors = dims
            .iter()
            .map(|&d| {
                (0..l)
                    .map(|_| (0..d).map(|_| random_gaussian(&mut rng)).collect())
                    .collect()
            })
            .collect();
        TensorFamily::new(dims.to_vec(), vectors)
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The scalar family carried by a tensor family whose axes all have
    /// dimension one.
    pub fn to_scalar_family(&self) -> Option<ScalarFamily> {
        if self.dims.iter().any(|&d| d != 1) {
            return None;
        }
        let values = self
            .vectors
            .iter()
            .map(|slot| slot.iter().map(|v| v[0].clone()).collect())
            .collect();
        ScalarFamily::new(values).ok()
    }

    fn term(&self, p: &SetPartition, assignment: &[usize]) -> TensorValue {
        let labels = p.labels();
        let factors: Vec<&[GaussianRational]> = (0..self.n())
            .map(|j| self.vectors[j][assignment[labels[j]]].as_slice())
            .collect();
        TensorValue::outer(&factors)
    }

    /// Explicit sum of outer products over every index assignment to the
    /// blocks of `p`, all of them or only the injective ones.
    pub fn assignment_sum(&self, p: &SetPartition, distinct_only: bool) -> TensorValue {
        let m = p.num_blocks();
        let mut total = TensorValue::zeros(&self.dims);
        let mut assignment = vec![0usize; m];
        loop {
            let distinct = {
                let mut seen = vec![false; self.l];
                assignment.iter().all(|&a| !std::mem::replace(&mut seen[a], true))
            };
            if !distinct_only || distinct {
                let t = self.term(p, &assignment);
                total
                    .add_scaled(&t, &BigInt::one())
                    .expect("terms share the family shape");
            }
            let mut i = m;
            loop {
                if i == 0 {
                    return total;
                }
                i -= 1;
                assignment[i] += 1;
                if assignment[i] < self.l {
                    break;
                }
                assignment[i] = 0;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorFailure {
    pub p1: SetPartition,
    pub entry: Vec<usize>,
    pub lhs: GaussianRational,
    pub rhs: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub dims: Vec<usize>,
    pub partitions_checked: usize,
    pub failures: Vec<TensorFailure>,
}

impl TensorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the tensor identity entrywise for every `p1` of `[n]`.
pub fn verify_identity_tensor_family(fam: &TensorFamily) -> Result<TensorReport> {
    let n = fam.n();
    let mut failures = Vec::new();
    let all = enumerate_set_partitions(n)?;
    for p1 in &all {
        let lhs = fam.assignment_sum(p1, true);
        let mut rhs = TensorValue::zeros(fam.dims());
        for (q, d) in Expansion::new(p1)?.terms {
            rhs.add_scaled(&fam.assignment_sum(&q, false), &d)?;
        }
        for (flat, (a, b)) in lhs.entries.iter().zip(&rhs.entries).enumerate() {
            if a != b {
                failures.push(TensorFailure {
                    p1: p1.clone(),
                    entry: lhs.index_of(flat),
                    lhs: a.clone(),
                    rhs: b.clone(),
                });
            }
        }
    }
    Ok(TensorReport {
        n,
        l: fam.l,
        dims: fam.dims.clone(),
        partitions_checked: all.len(),
        failures,
    })
}

/// Tensor identity on a seeded random family; `n <= 4`, `L <= 3`, every
/// axis dimension in `1..=3`.
pub fn verify_identity_tensor(n: usize, l: usize, dims: &[usize], seed: u64) -> Result<TensorReport> {
    if dims.len() != n {
        return domain(format!("expected {n} axis dimensions, got {}", dims.len()));
    }
    if n == 0 || n > 4 || l == 0 || l > 3 || dims.iter().any(|&d| d == 0 || d > 3) {
        return domain("tensor checks need n <= 4, L <= 3 and axis dimensions in 1..=3");
    }
    verify_identity_tensor_family(&TensorFamily::random(l, dims, seed)?)
}
