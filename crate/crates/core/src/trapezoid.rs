//! Trapezoidal numbers, trapezoid staircases, and growth increments.
//!
//! The trapezoidal number with width `n` and odd-part index `k` is the total
//! of the descending run that starts at `n` and sums to `(2k-1)(n-k+1)`. The
//! run itself, with any trailing zero stripped, is the trapezoid staircase
//! partition. Consecutive staircases for the same `k` differ by the growth
//! increment `A(i, k)`, the basic step of the growth machine.
//!
//! The factorial identity checked here states that the triangular-number
//! differences `C(n+1,2) - C(k,2)` for `k = 1..n`, divided by the odd numbers
//! `1, 3, ..., 2n-1`, multiply out to `n!`. The divisions become exact once
//! the numerators are permuted into trapezoid order (the "Skip"), because
//! each trapezoidal number is a multiple of its odd part.

use std::fmt;

use crate::partition::{IncrementVector, Partition};
use crate::report::{Counterexample, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrapezoidError {
    /// Requires `1 <= k <= n`.
    OutOfRange { n: usize, k: usize },
}

impl fmt::Display for TrapezoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrapezoidError::OutOfRange { n, k } => {
                write!(f, "index k={k} out of range 1..={n}")
            }
        }
    }
}

impl std::error::Error for TrapezoidError {}

/// The trapezoidal number `(2k-1)(n-k+1)`; requires `1 <= k <= n`.
pub fn trapezoid_number(n: usize, k: usize) -> Result<i64, TrapezoidError> {
    if k < 1 || k > n {
        return Err(TrapezoidError::OutOfRange { n, k });
    }
    Ok((2 * k as i64 - 1) * (n as i64 - k as i64 + 1))
}

/// The staircase partition: the run from `n` down to `n-2k+2` when `2k <= n`,
/// otherwise down to `2k-n-1`. Empty when the run is empty (in particular for
/// `k > n`); a single trailing zero is stripped so the result is a partition.
pub fn trapezoid_partition(n: usize, k: usize) -> Partition {
    assert!(k >= 1, "trapezoid index k must be positive");
    let n = n as i64;
    let k = k as i64;
    let lo = if 2 * k <= n { n - 2 * k + 2 } else { 2 * k - n - 1 };
    let mut parts: Vec<i64> = (lo..=n).rev().collect();
    if parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::new(parts).expect("staircase entries are strictly decreasing and positive")
}

/// Growth increment `A(i, k)`: the componentwise difference between the
/// staircases of widths `k+i-1` and `k+i-2` for odd part `2k-1`. Its entries
/// sum to `2k-1` and its alternating sum is 1.
pub fn increment(i: usize, k: usize) -> IncrementVector {
    assert!(i >= 1 && k >= 1, "increment indices must be positive");
    let newer = IncrementVector::from(&trapezoid_partition(k + i - 1, k));
    let older = IncrementVector::from(&trapezoid_partition(k + i - 2, k));
    newer.comp_sub(&older)
}

/// `C(n+1,2) - C(k,2)`; requires `1 <= k <= n`.
pub fn triangular_difference(n: usize, k: usize) -> Result<i64, TrapezoidError> {
    if k < 1 || k > n {
        return Err(TrapezoidError::OutOfRange { n, k });
    }
    let n = n as i64;
    let k = k as i64;
    Ok(n * (n + 1) / 2 - k * (k - 1) / 2)
}

fn factorial_checked(n: usize) -> Option<i64> {
    (1..=n as i64).try_fold(1i64, |acc, j| acc.checked_mul(j))
}

/// Checks that the triangular differences and the trapezoidal numbers for
/// width `n` agree as multisets (the "Skip" permutation exists).
pub fn skip_permutation_check(n: usize) -> VerificationReport {
    assert!(n >= 1, "width must be positive");
    let mut report = VerificationReport::new("skip").param("n", n as i64);
    let mut tri: Vec<i64> = (1..=n)
        .map(|k| triangular_difference(n, k).expect("k in range"))
        .collect();
    let diamonds: Vec<i64> = (1..=n)
        .map(|k| trapezoid_number(n, k).expect("k in range"))
        .collect();
    report.detail(
        "trapezoid_order",
        diamonds
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    let mut dia_sorted = diamonds.clone();
    tri.sort_unstable();
    dia_sorted.sort_unstable();
    report.cases_checked = n as u64;
    for (k, (a, b)) in tri.iter().zip(dia_sorted.iter()).enumerate() {
        if a != b {
            report.record_failure(Counterexample {
                location: format!("sorted position {}", k + 1),
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
    report.headline = if report.pass {
        format!("{n} values; multisets agree")
    } else {
        "multisets differ".to_string()
    };
    report
}

/// Evaluates the factorial identity for width `n` with exact integers: the
/// numerators are taken in trapezoid order so that every factor divides by
/// its odd denominator, and the running product is compared with `n!`.
/// Overflow past 64 bits is reported as a failed evaluation, never wrapped.
pub fn factorial_identity_check(n: usize) -> VerificationReport {
    assert!(n >= 1, "width must be positive");
    let mut report = VerificationReport::new("thm2.1").param("n", n as i64);
    let skip = skip_permutation_check(n);
    if !skip.pass {
        report.headline = "numerator multisets differ; Skip reordering impossible".to_string();
        report.counterexample = skip.counterexample;
        report.pass = false;
        return report;
    }
    report.cases_checked = n as u64;
    let mut product: i64 = 1;
    for k in 1..=n {
        let dia = trapezoid_number(n, k).expect("k in range");
        let odd = 2 * k as i64 - 1;
        if dia % odd != 0 {
            report.record_failure(Counterexample {
                location: format!("k={k}"),
                lhs: format!("{dia} mod {odd}"),
                rhs: "0".to_string(),
            });
            report.headline = "trapezoidal number not divisible by its odd part".to_string();
            return report;
        }
        let quotient = dia / odd;
        if quotient != n as i64 - k as i64 + 1 {
            report.record_failure(Counterexample {
                location: format!("k={k}"),
                lhs: quotient.to_string(),
                rhs: (n as i64 - k as i64 + 1).to_string(),
            });
            report.headline = "quotient is not n-k+1".to_string();
            return report;
        }
        match product.checked_mul(quotient) {
            Some(next) => product = next,
            None => {
                report.pass = false;
                report.headline =
                    format!("product exceeds 64-bit range at k={k}; not evaluated");
                report.detail("error", "coefficient overflow");
                return report;
            }
        }
    }
    match factorial_checked(n) {
        Some(expected) if expected == product => {
            report.headline = format!("value {product} = {n}!");
            report.detail("value", product.to_string());
        }
        Some(expected) => {
            report.record_failure(Counterexample {
                location: "product".to_string(),
                lhs: product.to_string(),
                rhs: expected.to_string(),
            });
            report.headline = "product differs from n!".to_string();
        }
        None => {
            report.pass = false;
            report.headline = format!("{n}! exceeds 64-bit range; not evaluated");
            report.detail("error", "coefficient overflow");
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    // independent oracle: sum the descending run directly
    fn run_sum(n: i64, k: i64) -> i64 {
        let lo = if 2 * k <= n { n - 2 * k + 2 } else { 2 * k - n - 1 };
        (lo..=n).sum()
    }

    fn fact(n: usize) -> i64 {
        (1..=n as i64).product()
    }

    #[test]
    fn trapezoid_number_examples() {
        assert_eq!(trapezoid_number(6, 1).unwrap(), 6);
        assert_eq!(trapezoid_number(6, 4).unwrap(), 21);
        assert_eq!(trapezoid_number(5, 3).unwrap(), 15);
        assert_eq!(run_sum(5, 3), 15);
        assert!(trapezoid_number(5, 6).is_err());
        assert!(trapezoid_number(5, 0).is_err());
    }

    #[test]
    fn trapezoid_partition_examples() {
        assert_eq!(
            trapezoid_partition(3, 3),
            Partition::new(vec![3, 2]).unwrap()
        );
        assert_eq!(
            trapezoid_partition(4, 3),
            Partition::new(vec![4, 3, 2, 1]).unwrap()
        );
        assert_eq!(trapezoid_partition(2, 3), Partition::empty());
        // the run 5..0 for k=3 ends at zero, which is stripped
        assert_eq!(
            trapezoid_partition(5, 3),
            Partition::new(vec![5, 4, 3, 2, 1]).unwrap()
        );
        assert_eq!(
            trapezoid_partition(1, 1),
            Partition::new(vec![1]).unwrap()
        );
    }

    #[test]
    fn staircase_size_matches_trapezoid_number() {
        for n in 1..=60usize {
            for k in 1..=n {
                assert_eq!(
                    trapezoid_partition(n, k).size(),
                    trapezoid_number(n, k).unwrap(),
                    "n={n} k={k}"
                );
                assert_eq!(trapezoid_number(n, k).unwrap() % (2 * k as i64 - 1), 0);
                assert_eq!(
                    trapezoid_number(n, k).unwrap() / (2 * k as i64 - 1),
                    n as i64 - k as i64 + 1
                );
            }
        }
    }

    #[test]
    fn increment_examples() {
        let a = |v: &[i64]| crate::partition::IncrementVector::new(v.to_vec());
        assert_eq!(increment(1, 3), a(&[3, 2]));
        assert_eq!(increment(2, 3), a(&[1, 1, 2, 1]));
        assert_eq!(increment(4, 3), a(&[1, 1, 1, 1, 1]));
        assert_eq!(increment(2, 5), a(&[1, 1, 4, 3]));
    }

    #[test]
    fn increment_sum_and_alt_size() {
        for i in 1..=30usize {
            for k in 1..=30usize {
                let inc = increment(i, k);
                assert_eq!(inc.entry_sum(), 2 * k as i64 - 1, "i={i} k={k}");
                assert_eq!(inc.alt_size(), 1, "i={i} k={k}");
            }
        }
    }

    #[test]
    fn increments_telescope_to_staircase() {
        for k in 1..=8usize {
            let mut acc = crate::partition::IncrementVector::empty();
            for m in 1..=10usize {
                acc = acc.comp_add(&increment(m, k));
                assert_eq!(
                    acc.to_partition().unwrap(),
                    trapezoid_partition(k + m - 1, k),
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn triangular_difference_examples() {
        assert_eq!(triangular_difference(5, 1).unwrap(), 15);
        assert_eq!(triangular_difference(5, 5).unwrap(), 5);
        assert_eq!(triangular_difference(6, 3).unwrap(), 18);
        assert!(triangular_difference(3, 4).is_err());
    }

    #[test]
    fn skip_check_examples() {
        let r6 = skip_permutation_check(6);
        assert!(r6.pass);
        assert_eq!(r6.details["trapezoid_order"], "6,15,20,21,18,11");
        assert!(skip_permutation_check(1).pass);
        assert!(skip_permutation_check(9).pass);
        for n in 1..=60 {
            assert!(skip_permutation_check(n).pass, "n={n}");
        }
    }

    #[test]
    fn factorial_identity_examples() {
        let r5 = factorial_identity_check(5);
        assert!(r5.pass);
        assert_eq!(r5.details["value"], "120");
        assert_eq!(factorial_identity_check(1).details["value"], "1");
        assert_eq!(factorial_identity_check(12).details["value"], "479001600");
        for n in 1..=20 {
            let r = factorial_identity_check(n);
            assert!(r.pass, "n={n}");
            assert_eq!(r.details["value"], fact(n).to_string());
        }
    }

    #[test]
    fn factorial_identity_reports_overflow() {
        let r = factorial_identity_check(21);
        assert!(!r.pass);
        assert_eq!(r.details["error"], "coefficient overflow");
    }
}
