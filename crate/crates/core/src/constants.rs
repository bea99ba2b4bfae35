//! Constants in the direct square-function inequality.
//!
//! The sharpest `t` with `t^n <= sum_{alpha <= n-2} C_alpha t^alpha`
//! (`n = 2r`) is the largest real root of that polynomial. This module
//! computes the `C_alpha` exactly, encloses the root with exact signs, and
//! evaluates the closed-form bound `K * phi * 2r` and the older factorial
//! constant for comparison.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chains::d_closed_form_value;
use crate::error::{domain, Result};
use crate::partition::{factorials, type_count_with, PartitionType};

pub const MAX_COEFF_N: usize = 60;
pub const MAX_ROOT_R: usize = 15;
pub const MAX_SUM_M: usize = 200;

/// `C_alpha` for `0 <= alpha <= n - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub n: usize,
    #[serde(with = "crate::serde_big::seq")]
    pub c: Vec<BigUint>,
}

impl CoefficientVector {
    pub fn get(&self, alpha: usize) -> BigUint {
        self.c.get(alpha).cloned().unwrap_or_default()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,c_alpha\n");
        for (alpha, c) in self.c.iter().enumerate() {
            out.push_str(&format!("{alpha},{c}\n"));
        }
        out
    }
}

/// Partitions of `m` into parts `>= 2`, non-increasing.
fn parts_at_least_two(m: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if remaining == 0 {
            visit(current);
            return;
        }
        for part in (2..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, visit);
            current.pop();
        }
    }
    rec(m, m, &mut Vec::new(), &mut visit);
}

/// `C_alpha = sum over types with exactly alpha singletons of
/// (number of set partitions of that type) * |D|`.
pub fn compute_c_alphas(n: usize) -> Result<CoefficientVector> {
    if n == 0 || n % 2 == 1 {
        return domain(format!("n must be even and positive, got {n}"));
    }
    if n > MAX_COEFF_N {
        return domain(format!("n must be at most {MAX_COEFF_N}, got {n}"));
    }
    let fact = factorials(n);
    let c = (0..=n - 2)
        .map(|alpha| {
            let mut total = BigUint::zero();
            parts_at_least_two(n - alpha, |parts| {
                let mut sizes = parts.to_vec();
                sizes.extend(std::iter::repeat(1).take(alpha));
                let t = PartitionType::new(sizes).expect("parts are positive");
                let d = d_closed_form_value(&t).magnitude().clone();
                total += type_count_with(&fact, &t) * d;
            });
            total
        })
        .collect();
    Ok(CoefficientVector { n, c })
}

/// One row of the reciprocal-sum table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalSumRow {
    pub m: usize,
    #[serde(with = "crate::serde_big")]
    pub value: BigRational,
    pub below_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalSumTable {
    pub rows: Vec<ReciprocalSumRow>,
    /// Smallest tabulated `m` whose sum is at least 1.
    pub first_at_least_one: Option<usize>,
}

impl ReciprocalSumTable {
    pub fn passed(&self) -> bool {
        self.first_at_least_one.is_none()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,value,status\n");
        for row in &self.rows {
            let status = if row.below_one { "OK" } else { "FAIL" };
            out.push_str(&format!("{},{},{}\n", row.m, ratio_string(&row.value), status));
        }
        out
    }
}

/// `num/den` even when the denominator is 1.
pub fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Coefficients of `prod_{k >= 2} 1 / (1 - x^k / k)` up to `x^max`.
fn reciprocal_sums(max: usize) -> Vec<BigRational> {
    let mut dp = vec![BigRational::zero(); max + 1];
    dp[0] = BigRational::one();
    for k in 2..=max {
        let inv = BigRational::new(BigInt::one(), BigInt::from(k));
        for j in k..=max {
            let add = &dp[j - k] * &inv;
            dp[j] += add;
        }
    }
    dp
}

/// `sum over partitions of m into parts >= 2 of prod 1/part_i`.
pub fn reciprocal_type_sum(m: usize) -> Result<BigRational> {
    if !(2..=MAX_SUM_M).contains(&m) {
        return domain(format!("m must lie in 2..={MAX_SUM_M}, got {m}"));
    }
    Ok(reciprocal_sums(m).swap_remove(m))
}

/// Rows `m = 2..=max`.
pub fn reciprocal_sum_table(max: usize) -> Result<ReciprocalSumTable> {
    if !(2..=MAX_SUM_M).contains(&max) {
        return domain(format!("max must lie in 2..={MAX_SUM_M}, got {max}"));
    }
    let one = BigRational::one();
    let rows: Vec<ReciprocalSumRow> = reciprocal_sums(max)
        .into_iter()
        .enumerate()
        .skip(2)
        .map(|(m, value)| ReciprocalSumRow {
            m,
            below_one: value < one,
            value,
        })
        .collect();
    let first_at_least_one = rows.iter().find(|r| !r.below_one).map(|r| r.m);
    Ok(ReciprocalSumTable {
        rows,
        first_at_least_one,
    })
}

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// `K = e^{pi / (3 sqrt 10)} / 60^{7/240}`.
pub fn k_constant() -> f64 {
    (std::f64::consts::PI / (3.0 * 10f64.sqrt())).exp() / 60f64.powf(7.0 / 240.0)
}

/// `e^{c / sqrt m} / m^{7 / (4m)}` with `c = pi sqrt(2/3)`: the bound on
/// `C_alpha^{1/m} / n` when `m = n - alpha >= 60`. Equals `K` at `m = 60`
/// and decreases from there.
pub fn coeff_root_factor(m: usize) -> f64 {
    let m = m as f64;
    let c = crate::partition::partition_bound_constant();
    (c / m.sqrt()).exp() / m.powf(7.0 / (4.0 * m))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperBound {
    pub k_const: f64,
    pub paper_bound: f64,
}

/// `K * phi * 2r`.
pub fn paper_bound_constant(r: usize) -> Result<PaperBound> {
    if r == 0 {
        return domain("r must be positive");
    }
    let k_const = k_constant();
    Ok(PaperBound {
        k_const,
        paper_bound: k_const * golden_ratio() * (2 * r) as f64,
    })
}

/// Closed interval `[lo, hi]` around a root, with the exact dyadic
/// endpoints it was derived from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub lo: f64,
    pub hi: f64,
    #[serde(with = "crate::serde_big")]
    pub lo_exact: BigRational,
    #[serde(with = "crate::serde_big")]
    pub hi_exact: BigRational,
}

impl RootEnclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }
}

/// Largest `f64` not above `q` (for `q >= 0`).
fn f64_below(q: &BigRational) -> f64 {
    let mut x = q.to_f64().unwrap_or(f64::MAX);
    while BigRational::from_float(x).is_some_and(|fx| &fx > q) {
        x = x.next_down();
    }
    x
}

/// Smallest `f64` not below `q`.
fn f64_above(q: &BigRational) -> f64 {
    let mut x = q.to_f64().unwrap_or(f64::MAX);
    while BigRational::from_float(x).is_some_and(|fx| &fx < q) {
        x = x.next_up();
    }
    x
}

/// Fractional bits of the dyadic grid the root is isolated on.
const ROOT_BITS: u32 = 40;

/// Sign of `2^{jn} P(k / 2^j)` for `P(t) = t^n - sum C_alpha t^alpha`,
/// by Horner's rule in integers.
fn scaled_sign(c: &CoefficientVector, k: &BigInt) -> std::cmp::Ordering {
    let n = c.n;
    let scale = BigInt::one() << ROOT_BITS;
    let mut weight = BigInt::one(); // 2^{j (n - i)}
    let mut acc = BigInt::one();
    for i in (0..n).rev() {
        weight *= &scale;
        acc *= k;
        if i <= n - 2 {
            acc -= BigInt::from(c.c[i].clone()) * &weight;
        }
    }
    acc.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Encloses the unique positive root of `t^{2r} - sum C_alpha t^alpha`.
///
/// `P(t) / t^n = 1 - sum C_alpha t^{alpha - n}` is strictly increasing on
/// `t > 0`, so the positive root is unique and bisection on the sign is
/// sound. The search starts from `[0, 4r]`, doubling the upper end if it is
/// not yet positive, and stops on a grid of width `2^-40`.
pub fn exact_root_constant(r: usize) -> Result<RootEnclosure> {
    if r == 0 || r > MAX_ROOT_R {
        return domain(format!("r must lie in 1..={MAX_ROOT_R}, got {r}"));
    }
    let c = compute_c_alphas(2 * r)?;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::from(4 * r) << ROOT_BITS;
    while scaled_sign(&c, &hi).is_le() {
        if scaled_sign(&c, &hi).is_eq() {
            return Ok(dyadic_enclosure(&hi, &hi));
        }
        lo = hi.clone();
        hi <<= 1;
    }
    let one = BigInt::one();
    while &hi - &lo > one {
        let mid: BigInt = (&lo + &hi) >> 1;
        match scaled_sign(&c, &mid) {
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Ok(dyadic_enclosure(&mid, &mid)),
        }
    }
    Ok(dyadic_enclosure(&lo, &hi))
}

fn dyadic_enclosure(lo: &BigInt, hi: &BigInt) -> RootEnclosure {
    let den = BigInt::one() << ROOT_BITS;
    let lo_exact = BigRational::new(lo.clone(), den.clone());
    let hi_exact = BigRational::new(hi.clone(), den);
    RootEnclosure {
        lo: f64_below(&lo_exact),
        hi: f64_above(&hi_exact),
        lo_exact,
        hi_exact,
    }
}

/// `sqrt(2 ((2r)! - 1))`.
pub fn prior_constant(r: usize) -> Result<f64> {
    if r == 0 {
        return domain("r must be positive");
    }
    let fact = factorials(2 * r);
    let inner = (&fact[2 * r] - BigUint::one()) * BigUint::from(2u32);
    Ok(inner.to_f64().unwrap_or(f64::INFINITY).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffBoundRow {
    pub alpha: usize,
    #[serde(with = "crate::serde_big")]
    pub c_alpha: BigUint,
    /// `C_alpha^{1/(n - alpha)}`.
    pub root: f64,
    /// `n` on the exact branch, `coeff_root_factor(n - alpha) * n` otherwise.
    pub bound: f64,
    /// Outcome of the exact test `C_alpha < n^{n - alpha}`, when applicable.
    pub exact: Option<bool>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffBoundReport {
    pub n: usize,
    pub cutoff: usize,
    pub rows: Vec<CoeffBoundRow>,
}

impl CoeffBoundReport {
    pub fn failures(&self) -> Vec<&CoeffBoundRow> {
        self.rows.iter().filter(|r| !r.holds).collect()
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// `C_alpha < n^{n-alpha}` exactly where `n - alpha < cutoff`; beyond the
/// cutoff, `C_alpha^{1/(n-alpha)} <= coeff_root_factor(n-alpha) * n` in
/// floating point.
pub fn verify_coeff_root_bounds(n: usize, cutoff: usize) -> Result<CoeffBoundReport> {
    let c = compute_c_alphas(n)?;
    let rows = c
        .c
        .iter()
        .enumerate()
        .map(|(alpha, c_alpha)| {
            let m = n - alpha;
            let root = c_alpha.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / m as f64);
            if m < cutoff {
                let holds = *c_alpha < BigUint::from(n).pow(m as u32);
                CoeffBoundRow {
                    alpha,
                    c_alpha: c_alpha.clone(),
                    root,
                    bound: n as f64,
                    exact: Some(holds),
                    holds,
                }
            } else {
                let bound = coeff_root_factor(m) * n as f64;
                CoeffBoundRow {
                    alpha,
                    c_alpha: c_alpha.clone(),
                    root,
                    bound,
                    exact: None,
                    holds: root <= bound,
                }
            }
        })
        .collect();
    Ok(CoeffBoundReport { n, cutoff, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRatioCheck {
    #[serde(with = "crate::serde_big")]
    pub s: BigRational,
    pub max_n: usize,
    pub s_squared_exceeds: bool,
    /// Smallest `n` where `s^n > sum_{alpha <= n-2} s^alpha` fails.
    pub first_failure: Option<usize>,
}

impl GoldenRatioCheck {
    pub fn passed(&self) -> bool {
        self.s_squared_exceeds && self.first_failure.is_none()
    }
}

/// Exact check that `s^n > sum_{alpha=0}^{n-2} s^alpha` for `2 <= n <= max_n`.
pub fn golden_ratio_check(s: &BigRational, max_n: usize) -> GoldenRatioCheck {
    let one = BigRational::one();
    let s_squared_exceeds = s * s > s + &one;
    let mut power = s.clone(); // s^{n-1}
    let mut tail = BigRational::zero(); // sum_{alpha <= n-2} s^alpha
    let mut prev = one.clone(); // s^{n-2}
    let mut first_failure = None;
    for n in 2..=max_n {
        tail += &prev;
        let s_n = &power * s;
        if s_n <= tail && first_failure.is_none() {
            first_failure = Some(n);
        }
        prev = power;
        power = s_n;
    }
    GoldenRatioCheck {
        s: s.clone(),
        max_n,
        s_squared_exceeds,
        first_failure,
    }
}

/// `1618035 / 10^6`, within `10^-6` above the golden ratio.
pub fn golden_ratio_upper() -> BigRational {
    BigRational::new(BigInt::from(1_618_035), BigInt::from(1_000_000))
}

/// Everything the engine knows about one `r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub r: usize,
    #[serde(rename = "C", with = "crate::serde_big::seq")]
    pub c_alphas: Vec<BigUint>,
    pub exact_root: RootEnclosure,
    pub paper_bound: f64,
    pub prior_bound: f64,
    pub k_const: f64,
    /// `2r - 1`, the best possible constant, tabulated without any claimed
    /// ordering against `exact_root`.
    pub lower_reference: usize,
}

impl ConstantReport {
    pub const CSV_HEADER: &'static str = "r,c_alphas,exact_root_lo,exact_root_hi,paper_bound,prior_bound";

    /// Root enclosure below the closed-form bound.
    pub fn passed(&self) -> bool {
        self.exact_root.hi <= self.paper_bound
    }

    pub fn csv_row(&self) -> String {
        let cs: Vec<String> = self.c_alphas.iter().map(|c| c.to_string()).collect();
        format!(
            "{},{},{},{},{},{}",
            self.r,
            cs.join(";"),
            self.exact_root.lo,
            self.exact_root.hi,
            self.paper_bound,
            self.prior_bound
        )
    }
}

pub fn constant_report(r: usize) -> Result<ConstantReport> {
    let exact_root = exact_root_constant(r)?;
    let bound = paper_bound_constant(r)?;
    Ok(ConstantReport {
        r,
        c_alphas: compute_c_alphas(2 * r)?.c,
        exact_root,
        paper_bound: bound.paper_bound,
        prior_bound: prior_constant(r)?,
        k_const: bound.k_const,
        lower_reference: 2 * r - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::count_chains;
    use crate::partition::{enumerate_set_partitions, SetPartition};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn derangements(m: usize) -> BigUint {
        let mut d = vec![BigUint::one(), BigUint::zero()];
        for i in 2..=m {
            let next = BigUint::from(i - 1) * (&d[i - 1] + &d[i - 2]);
            d.push(next);
        }
        d[m].clone()
    }

    fn binomial(n: usize, k: usize) -> BigUint {
        (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
    }

    // high-precision reference values (mpmath, 40 digits)
    const K_REF: f64 = 1.235_819_804_451_382_2;
    const ROOTS_REF: [f64; 15] = [
        1.0,
        3.087_835_678_579_871_6,
        5.391_047_614_885_070_7,
        7.785_132_974_295_065_8,
        10.229_945_488_374_302,
        12.707_056_902_090_109,
        15.206_461_412_865_153,
        17.722_123_694_576_563,
        20.250_127_939_686_228,
        22.787_793_072_425_530,
        25.333_205_734_463_967,
        27.884_954_692_621_866,
        30.441_970_714_621_892,
        33.003_425_379_973_942,
        35.568_664_605_391_096,
    ];

    #[test]
    fn c_alpha_examples() {
        assert_eq!(compute_c_alphas(2).unwrap().c, vec![BigUint::one()]);
        let c4 = compute_c_alphas(4).unwrap();
        assert_eq!(c4.c, vec![9u32.into(), 8u32.into(), 6u32.into()]);
        for n in (2..=30).step_by(2) {
            let c = compute_c_alphas(n).unwrap();
            assert_eq!(c.c.len(), n - 1);
            assert_eq!(c.c[n - 2], BigUint::from(n * (n - 1) / 2));
        }
        assert!(compute_c_alphas(5).is_err());
        assert!(compute_c_alphas(0).is_err());
        assert!(compute_c_alphas(62).is_err());
    }

    #[test]
    fn c_alphas_match_derangement_count() {
        // set partitions of type (..., 1^alpha) weighted by |D| = permutations
        // with exactly alpha fixed points
        for n in (2..=40).step_by(2) {
            let c = compute_c_alphas(n).unwrap();
            for alpha in 0..=n - 2 {
                assert_eq!(c.c[alpha], binomial(n, alpha) * derangements(n - alpha), "n={n} alpha={alpha}");
            }
        }
    }

    #[test]
    fn c_alphas_match_brute_force() {
        for n in [2, 4, 6] {
            let c = compute_c_alphas(n).unwrap();
            let bottom = SetPartition::singletons(n);
            let mut brute = vec![BigUint::zero(); n + 1];
            for p in enumerate_set_partitions(n).unwrap() {
                if p == bottom {
                    continue;
                }
                let d = count_chains(&bottom, &p).unwrap().d;
                brute[p.count_blocks_of_size(1)] += d.magnitude();
            }
            assert_eq!(brute[n - 1], BigUint::zero());
            assert_eq!(&brute[..n - 1], c.c.as_slice());
        }
    }

    #[test]
    fn c_alphas_at_sixty() {
        let c = compute_c_alphas(60).unwrap();
        assert_eq!(c.c[0], derangements(60));
        assert_eq!(c.c[58], BigUint::from(1770u32));
    }

    #[test]
    fn csv_layout() {
        let csv = compute_c_alphas(4).unwrap().to_csv();
        assert_eq!(csv, "alpha,c_alpha\n0,9\n1,8\n2,6\n");
    }

    #[test]
    fn reciprocal_sum_examples() {
        assert_eq!(reciprocal_type_sum(2).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(reciprocal_type_sum(3).unwrap(), BigRational::new(1.into(), 3.into()));
        assert_eq!(reciprocal_type_sum(4).unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(reciprocal_type_sum(1).is_err());
        assert!(reciprocal_type_sum(201).is_err());
    }

    #[test]
    fn reciprocal_sum_matches_enumeration() {
        for m in 2..=30 {
            let mut brute = BigRational::zero();
            parts_at_least_two(m, |parts| {
                let prod: usize = parts.iter().product();
                brute += BigRational::new(BigInt::one(), BigInt::from(prod));
            });
            assert_eq!(reciprocal_type_sum(m).unwrap(), brute, "m = {m}");
        }
    }

    #[test]
    fn reciprocal_table_below_one() {
        let table = reciprocal_sum_table(59).unwrap();
        assert_eq!(table.rows.len(), 58);
        assert!(table.passed());
        let csv = table.to_csv();
        assert!(csv.starts_with("m,value,status\n2,1/2,OK\n3,1/3,OK\n"));
    }

    #[test]
    fn k_constant_matches_reference() {
        assert!((k_constant() - K_REF).abs() < 1e-13);
        assert!((coeff_root_factor(60) - K_REF).abs() < 1e-13);
        let bound = paper_bound_constant(1).unwrap();
        assert!((bound.paper_bound - 3.999_196_895_145_17).abs() < 1e-12);
        assert!(paper_bound_constant(0).is_err());
    }

    #[test]
    fn coeff_root_factor_decreases_past_sixty() {
        for m in 60..2000 {
            assert!(coeff_root_factor(m + 1) < coeff_root_factor(m), "m = {m}");
        }
    }

    #[test]
    fn roots_match_reference() {
        for r in 1..=MAX_ROOT_R {
            let e = exact_root_constant(r).unwrap();
            assert!(e.width() <= 1e-9);
            assert!(e.lo <= ROOTS_REF[r - 1] && ROOTS_REF[r - 1] <= e.hi, "r = {r}: {e:?}");
            assert!(e.hi < paper_bound_constant(r).unwrap().paper_bound);
        }
        let one = exact_root_constant(1).unwrap();
        assert_eq!(one.lo_exact, BigRational::one());
        assert_eq!(one.hi_exact, BigRational::one());
        assert!(exact_root_constant(16).is_err());
    }

    #[test]
    fn root_enclosure_brackets_sign_change() {
        for r in 1..=6 {
            let e = exact_root_constant(r).unwrap();
            let c = compute_c_alphas(2 * r).unwrap();
            let p = |t: &BigRational| {
                let mut v = num_traits::pow(t.clone(), 2 * r);
                for (alpha, ca) in c.c.iter().enumerate() {
                    v -= BigRational::from_integer(BigInt::from(ca.clone())) * num_traits::pow(t.clone(), alpha);
                }
                v
            };
            assert!(!p(&e.lo_exact).is_positive());
            assert!(!p(&e.hi_exact).is_negative());
        }
    }

    #[test]
    fn prior_constant_examples() {
        assert!((prior_constant(1).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!((prior_constant(2).unwrap() - 46f64.sqrt()).abs() < 1e-12);
        for r in 2..=10 {
            assert!(exact_root_constant(r).unwrap().hi < prior_constant(r).unwrap());
        }
        assert!(exact_root_constant(1).unwrap().hi <= prior_constant(1).unwrap());
    }

    #[test]
    fn coeff_bound_examples() {
        let report = verify_coeff_root_bounds(4, 60).unwrap();
        assert!(report.passed());
        assert_eq!(report.rows[2].exact, Some(true));
        let report = verify_coeff_root_bounds(60, 60).unwrap();
        assert!(report.passed());
        assert_eq!(report.rows[0].exact, None);
        assert!((report.rows[0].bound - K_REF * 60.0).abs() < 1e-9);
        assert!(report.rows[1..].iter().all(|r| r.exact == Some(true)));
    }

    #[test]
    fn golden_ratio_lemma() {
        let check = golden_ratio_check(&golden_ratio_upper(), 50);
        assert!(check.passed());
        // just below phi the inequality must fail somewhere
        let below = BigRational::new(BigInt::from(1_618_033), BigInt::from(1_000_000));
        let check = golden_ratio_check(&below, 50);
        assert!(!check.s_squared_exceeds);
    }

    #[test]
    fn constant_report_shape() {
        let report = constant_report(2).unwrap();
        assert!(report.passed());
        assert_eq!(report.lower_reference, 3);
        let v: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(v["C"], serde_json::json!(["9", "8", "6"]));
        assert!((v["paper_bound"].as_f64().unwrap() - 7.998_393_790_290_34).abs() < 1e-9);
        let back: ConstantReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, report);
        assert!(report.csv_row().starts_with("2,9;8;6,3.0878"));
    }

    proptest! {
        #[test]
        fn paper_bound_ratio_independent_of_r(r in 1usize..1_000_000) {
            let b = paper_bound_constant(r).unwrap();
            let ratio = b.paper_bound / (2 * r) as f64;
            prop_assert!((ratio - K_REF * golden_ratio()).abs() < 1e-12);
            prop_assert!(b.paper_bound < (4 * r) as f64);
        }
    }
}
