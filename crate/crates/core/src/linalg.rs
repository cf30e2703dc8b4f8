//! Exact integer linear algebra: fraction-free determinants, Gram matrices,
//! squared volumes and the class predicates for R, S and T.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;
use crate::matrix::{IntMatrix, ZeroOneMatrix};

/// Exact determinant by Bareiss elimination. Every intermediate is itself
/// a minor of the input, so the divisions are exact.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Dimension {
            op: "determinant",
            need: "a square matrix",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a: Vec<BigInt> = m.entries().to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = &a[i * n + j] * &pivot - &lead * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Bareiss over `i128` with overflow checks. Returns `None` on overflow so
/// callers can fall back to [`det_exact`].
pub fn det_i128(entries: &[i64], n: usize) -> Option<i128> {
    debug_assert_eq!(entries.len(), n * n);
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<i128> = entries.iter().map(|&v| i128::from(v)).collect();
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { -d } else { d })
}

/// Determinant of a small integer matrix, using the `i128` path when it
/// cannot overflow and the arbitrary-precision path otherwise.
pub fn det_small(entries: &[i64], n: usize) -> BigInt {
    match det_i128(entries, n) {
        Some(d) => BigInt::from(d),
        None => {
            let m = IntMatrix::new(n, n, entries.iter().map(|&v| BigInt::from(v)).collect())
                .expect("square input");
            det_exact(&m).expect("square input")
        }
    }
}

/// Gram matrix `A·Aᵀ`: entry (i, j) is the dot product of rows i and j.
pub fn gram(a: &ZeroOneMatrix) -> IntMatrix {
    let m = a.rows();
    let dots = gram_i64(a);
    IntMatrix::from_fn(m, m, |i, j| dots[i * m + j]).expect("gram of nonempty matrix")
}

/// Column Gram matrix `Aᵀ·A`.
pub fn gram_columns(a: &ZeroOneMatrix) -> IntMatrix {
    gram(&a.transpose())
}

pub(crate) fn gram_i64(a: &ZeroOneMatrix) -> Vec<i64> {
    let m = a.rows();
    let mut out = vec![0i64; m * m];
    for i in 0..m {
        for j in i..m {
            let dot: i64 = a
                .row(i)
                .iter()
                .zip(a.row(j))
                .map(|(&x, &y)| i64::from(x & y))
                .sum();
            out[i * m + j] = dot;
            out[j * m + i] = dot;
        }
    }
    out
}

/// Squared row volume `det(A·Aᵀ)`. Requires `rows ≤ cols`.
pub fn vol_squared(a: &ZeroOneMatrix) -> Result<BigInt, LinalgError> {
    if a.rows() > a.cols() {
        return Err(LinalgError::Dimension {
            op: "volume",
            need: "rows <= cols",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(det_small(&gram_i64(a), a.rows()))
}

/// Membership of a matrix in R(·, n, k), S(n, k) and T(n, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    /// Every row sums to k.
    pub in_r: bool,
    /// Square, and every row and column sums to k.
    pub in_s: bool,
    /// Square with exactly k·n ones.
    pub in_t: bool,
}

pub fn class_membership(a: &ZeroOneMatrix, k: usize) -> ClassFlags {
    let in_r = a.row_sums().iter().all(|&s| s == k);
    let square = a.is_square();
    let in_s = square && in_r && a.col_sums().iter().all(|&s| s == k);
    let in_t = square && a.total_ones() == k * a.rows();
    ClassFlags { in_r, in_s, in_t }
}
