//! Stirling numbers of the second kind and falling factorials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// Triangle of `S(n, k)` for `1 <= k <= n <= max_n`, built by
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    max_n: usize,
    // rows[n][k], with row 0 = [1] and column 0 zero for n >= 1
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let mut v = if k < n {
                    &prev[k] * BigUint::from(k)
                } else {
                    BigUint::zero()
                };
                v += &prev[k - 1];
                row[k] = v;
            }
            rows.push(row);
        }
        StirlingTable { max_n, rows }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `S(n, k)`; zero outside `1 <= k <= n` (and `S(0, 0) = 1`).
    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        assert!(n <= self.max_n, "row {n} beyond table size {}", self.max_n);
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        self.rows[n]
            .get(k)
            .unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    /// `S(n, 1), ..., S(n, n)`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n][1.min(n)..]
    }

    /// CSV dump with header `n,k,s2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,s2\n");
        for n in 1..=self.max_n {
            for k in 1..=n {
                out.push_str(&format!("{n},{k},{}\n", self.rows[n][k]));
            }
        }
        out
    }
}

/// Exact `S(n, k)` for `1 <= k <= n`.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    if k == 0 || k > n {
        return domain(format!("S(n, k) requires 1 <= k <= n, got n = {n}, k = {k}"));
    }
    Ok(StirlingTable::new(n).get(n, k).clone())
}

/// `[x]_(n) = x (x - 1) ... (x - n + 1)`; the empty product for `n = 0`.
pub fn falling_factorial(x: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term -= BigRational::one();
    }
    acc
}

/// Checks `sum_k S(n, k) [x]_(k) = x^n` exactly at each sample.
///
/// Both sides are polynomials of degree `n`, so `n + 1` distinct samples
/// certify the identity.
pub fn verify_factorial_identity(n: usize, xs: &[BigRational]) -> bool {
    let table = StirlingTable::new(n);
    xs.iter().all(|x| {
        let lhs = (1..=n).fold(BigRational::zero(), |acc, k| {
            acc + BigRational::from_integer(BigInt::from(table.get(n, k).clone()))
                * falling_factorial(x, k)
        });
        lhs == num_traits::pow(x.clone(), n)
    })
}

/// `sum_{k=1}^n S(n, k) (-1)^{k-1} (k-1)!`.
///
/// Zero for every `n >= 2`; equals 1 at `n = 1`.
pub fn verify_alternating_identity(n: usize) -> BigInt {
    let table = StirlingTable::new(n);
    let mut fact = BigInt::one(); // (k-1)!
    let mut sum = BigInt::zero();
    for k in 1..=n {
        if k > 1 {
            fact *= BigInt::from(k - 1);
        }
        let term = BigInt::from(table.get(n, k).clone()) * &fact;
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}
