//! Combinatorial and special-function primitives shared by the witness formulas.
//!
//! Binomials and Stirling numbers are exact integers in the ranges the witnesses
//! need; everything that can overflow goes through log space.

use crate::error::{Error, Result};

/// Largest `n` for which [`binomial`] is guaranteed to fit in a `u64`.
pub const BINOMIAL_EXACT_MAX: u32 = 64;

/// Largest row index accepted by [`stirling2`].
pub const STIRLING2_MAX: u32 = 32;

/// Largest argument accepted by [`double_factorial`] before the result overflows `f64`.
pub const DOUBLE_FACTORIAL_MAX: i32 = 300;

/// Table of `ln n!` for `n = 0..=max_n`.
///
/// Built with compensated summation so the last entry is accurate to about one ulp
/// even for tables several thousand entries long.
#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    pub fn new(max_n: usize) -> Self {
        let mut values = Vec::with_capacity(max_n + 1);
        values.push(0.0);
        let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
        for n in 1..=max_n {
            let term = (n as f64).ln();
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            values.push(sum + comp);
        }
        Self { values }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// `ln n!`. Panics if `n` exceeds the table.
    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ln C(n, k)`; `-inf` when `k > n`.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.values[n] - self.values[k] - self.values[n - k]
    }
}

/// Exact binomial coefficient, `0` when `k > n`.
///
/// Exact for every `n <= 64`; beyond that it panics if the value leaves `u64`
/// (use [`LogFactorialTable::ln_binomial`] there).
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1) at every step
        c = c * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(c).expect("binomial coefficient exceeds u64; use ln_binomial")
}

/// Stirling number of the second kind `S2(r, k)`; `0` when `k > r`.
///
/// Panics if `r > 32`.
pub fn stirling2(r: u32, k: u32) -> u128 {
    assert!(
        r <= STIRLING2_MAX,
        "stirling2 row {r} exceeds {STIRLING2_MAX}"
    );
    if k > r {
        return 0;
    }
    let (r, k) = (r as usize, k as usize);
    // row[j] holds S2(i, j) for the current i
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=r {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// `n!!` with the conventions `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i32) -> Result<f64> {
    if n < -1 {
        return Err(Error::Domain(format!(
            "double factorial undefined for n = {n}"
        )));
    }
    if n > DOUBLE_FACTORIAL_MAX {
        return Err(Error::Domain(format!(
            "double factorial of {n} overflows f64 (max {DOUBLE_FACTORIAL_MAX})"
        )));
    }
    if n <= 1 {
        return Ok(1.0);
    }
    if n <= 40 {
        let mut acc = 1.0;
        let mut m = n;
        while m > 1 {
            acc *= m as f64;
            m -= 2;
        }
        return Ok(acc);
    }
    let table = LogFactorialTable::new(n as usize);
    let ln = if n % 2 == 0 {
        let h = (n / 2) as usize;
        h as f64 * std::f64::consts::LN_2 + table.ln_factorial(h)
    } else {
        // n!! = n! / (2^h h!) with h = (n - 1) / 2
        let h = ((n - 1) / 2) as usize;
        table.ln_factorial(n as usize) - h as f64 * std::f64::consts::LN_2 - table.ln_factorial(h)
    };
    Ok(ln.exp())
}

/// Rising factorial `x (x + 1) ... (x + n - 1)`; `1` for `n = 0`.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).map(|i| x + f64::from(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), 10);
        for n in 0..=64 {
            assert_eq!(binomial(n, 0), 1);
        }
        assert_eq!(binomial(6, 7), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=32u32 {
            for k in 1..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn stirling2_examples() {
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(3, 5), 0);
        assert_eq!(stirling2(5, 0), 0);
        assert_eq!(stirling2(10, 3), 9330);
    }

    #[test]
    fn stirling2_rows_sum_to_bell_numbers() {
        let bell: [u128; 11] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (r, &b) in bell.iter().enumerate() {
            let r = r as u32;
            let sum: u128 = (0..=r).map(|k| stirling2(r, k)).sum();
            assert_eq!(sum, b, "row {r}");
        }
    }

    #[test]
    fn stirling2_largest_row_fits() {
        // S2(32, k) peaks well below u128::MAX
        let peak = (0..=32).map(|k| stirling2(32, k)).max().unwrap();
        assert!(peak > 0);
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(5).unwrap(), 15.0);
        assert_eq!(double_factorial(-1).unwrap(), 1.0);
        assert_eq!(double_factorial(0).unwrap(), 1.0);
        assert_eq!(double_factorial(8).unwrap(), 384.0);
        assert!(double_factorial(-2).is_err());
        assert!(double_factorial(301).is_err());
    }

    #[test]
    fn double_factorial_log_branch_is_continuous() {
        // product branch vs log branch around the switch-over
        let mut prod = 1.0_f64;
        let mut m = 41;
        while m > 1 {
            prod *= m as f64;
            m -= 2;
        }
        let got = double_factorial(41).unwrap();
        assert!(((got - prod) / prod).abs() < 1e-13);
        let big = double_factorial(300).unwrap();
        assert!(big.is_finite() && big > 1e300);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(0.5, 1), 0.5);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(3.7, 0), 1.0);
    }

    #[test]
    fn half_pochhammer_matches_double_factorial() {
        for n in (2..=20).step_by(2) {
            let lhs = pochhammer(0.5, (n / 2) as u32) * 2f64.powi(n / 2);
            let rhs = double_factorial(n - 1).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs, "n = {n}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn log_factorial_table_invariants() {
        // consecutive differences are resolvable to 1e-12 while ln n! < ~4000
        let t = LogFactorialTable::new(600);
        assert_eq!(t.ln_factorial(0), 0.0);
        for n in 1..=t.max_n() {
            let d = t.values()[n] - t.values()[n - 1];
            assert!((d - (n as f64).ln()).abs() < 1e-12, "n = {n}");
        }
        let big = LogFactorialTable::new(3000);
        let direct: f64 = (1..=3000).map(|k| (k as f64).ln()).sum();
        assert!(((big.ln_factorial(3000) - direct) / direct).abs() < 1e-14);
        assert!((t.ln_factorial(20) - 2_432_902_008_176_640_000f64.ln()).abs() < 1e-13);
        assert!((t.ln_binomial(10, 3) - 120f64.ln()).abs() < 1e-13);
        assert_eq!(t.ln_binomial(3, 10), f64::NEG_INFINITY);
    }
}
