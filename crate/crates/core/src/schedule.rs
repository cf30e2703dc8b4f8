//! Greedy row-removal schedules.
//!
//! A matrix in R(m, n, k) has mk ones spread over n columns, so some column
//! holds at least `r = ⌈mk/n⌉` ones. Those `r` rows share a column and their
//! volume is at most `√((r+k−1)(k−1)^{r−1})`. Removing them and repeating on
//! what is left yields the sequence of group sizes `Q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::BoundError;
use crate::logmag::LogMagnitude;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalSchedule {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    /// First removal size, `⌈mk/n⌉`.
    pub r: u64,
    /// Group sizes in removal order (nonincreasing, summing to `m`).
    pub q_sequence: Vec<u64>,
    /// `a_i`: how often `i` occurs in `q_sequence`.
    pub counts: BTreeMap<u64, u64>,
    /// `m_i` for `i = 0..=r`: rows left just before the groups of size `i`
    /// are removed. `m_r = m`, `m_0 = 0`.
    pub checkpoints: BTreeMap<u64, u64>,
}

/// Runs the greedy removal to exhaustion, using exact integer ceilings.
pub fn make_schedule(m: u64, n: u64, k: u64) -> Result<RemovalSchedule, BoundError> {
    if m == 0 || k == 0 || k > n {
        return Err(BoundError::Domain(format!(
            "need m >= 1 and 1 <= k <= n, got m = {m}, n = {n}, k = {k}"
        )));
    }
    let mut q_sequence = Vec::new();
    let mut remaining = m;
    while remaining > 0 {
        let take = (remaining * k).div_ceil(n);
        q_sequence.push(take);
        remaining -= take;
    }
    let r = q_sequence[0];

    let mut counts = BTreeMap::new();
    for &q in &q_sequence {
        *counts.entry(q).or_insert(0) += 1;
    }
    let mut checkpoints = BTreeMap::new();
    let mut rows = m;
    for i in (1..=r).rev() {
        checkpoints.insert(i, rows);
        rows -= i * counts.get(&i).copied().unwrap_or(0);
    }
    checkpoints.insert(0, rows);
    debug_assert_eq!(rows, 0);

    Ok(RemovalSchedule {
        m,
        n,
        k,
        r,
        q_sequence,
        counts,
        checkpoints,
    })
}

impl RemovalSchedule {
    pub fn count(&self, i: u64) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// `(i, a_i)` for `i = r, r−1, ..., 1`.
    pub fn count_rows(&self) -> Vec<(u64, u64)> {
        (1..=self.r).rev().map(|i| (i, self.count(i))).collect()
    }
}

/// `Π_{q ∈ Q} √((q+k−1)(k−1)^{q−1})`.
pub fn schedule_bound(s: &RemovalSchedule) -> LogMagnitude {
    let k = s.k as f64;
    let ln: f64 = s
        .counts
        .iter()
        .map(|(&q, &a)| {
            let q = q as f64;
            let spread = if q == 1.0 { 0.0 } else { (q - 1.0) * (k - 1.0).ln() };
            a as f64 * 0.5 * ((q + k - 1.0).ln() + spread)
        })
        .sum();
    LogMagnitude::from_ln(ln)
}

/// Open interval `(n/(k(i−1)) − i/(i−1), n/(k(i−1)) + 1)` that contains
/// `a_{i−1}` whenever `i < r`.
pub fn a_i_window(i: u64, n: u64, k: u64) -> Result<(BigRational, BigRational), BoundError> {
    if i < 2 || i > k {
        return Err(BoundError::Domain(format!("need 2 <= i <= k, got i = {i}, k = {k}")));
    }
    let q = |num: u64, den: u64| BigRational::new(BigInt::from(num), BigInt::from(den));
    let centre = q(n, k * (i - 1));
    let low = &centre - q(i, i - 1);
    let high = centre + q(1, 1);
    Ok((low, high))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_sequence_100_200_17() {
        let s = make_schedule(100, 200, 17).unwrap();
        assert_eq!(
            s.q_sequence,
            vec![9, 8, 8, 7, 6, 6, 5, 5, 4, 4, 4, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
        );
        assert_eq!(s.r, 9);
        assert_eq!(s.count(9), 1);
        assert_eq!(s.count(8), 2);
    }

    #[test]
    fn square_counts_1000_17() {
        let s = make_schedule(1000, 1000, 17).unwrap();
        let expected = [
            (17, 4), (16, 4), (15, 3), (14, 5), (13, 4), (12, 5), (11, 5), (10, 6), (9, 7),
            (8, 7), (7, 8), (6, 10), (5, 12), (4, 14), (3, 20), (2, 29), (1, 57),
        ];
        assert_eq!(s.count_rows(), expected.to_vec());
        assert_eq!(schedule_bound(&s).rounded_scientific(5), (9.3551, 612));
    }

    #[test]
    fn k_one_removes_single_rows() {
        let s = make_schedule(9, 9, 1).unwrap();
        assert_eq!(s.q_sequence, vec![1; 9]);
        assert_eq!(schedule_bound(&s), LogMagnitude::ONE);
    }

    #[test]
    fn checkpoints_telescope() {
        let s = make_schedule(100, 200, 17).unwrap();
        assert_eq!(s.checkpoints[&9], 100);
        assert_eq!(s.checkpoints[&0], 0);
        for i in 1..=s.r {
            assert_eq!(s.checkpoints[&(i - 1)], s.checkpoints[&i] - i * s.count(i));
        }
    }

    #[test]
    fn windows() {
        let (lo, hi) = a_i_window(2, 1000, 17).unwrap();
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(lo, q(1000, 17) - q(2, 1));
        assert_eq!(hi, q(1000, 17) + q(1, 1));
        assert!(a_i_window(1, 1000, 17).is_err());
        assert!(a_i_window(18, 1000, 17).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_schedule(0, 10, 2).is_err());
        assert!(make_schedule(5, 10, 11).is_err());
        assert!(make_schedule(5, 10, 0).is_err());
    }
}
