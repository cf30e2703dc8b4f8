//! Closed-form upper and lower bounds on the maximal determinant of sparse
//! zero-one matrices, all evaluated in the natural-log domain.
//!
//! Notation: `m` rows, `n` columns, `k` ones per row. Per-row growth
//! constants (`c_pair`, `c_q`, `beta`, ...) bound `M_R(n,k)^{1/n}`; the
//! `*_bound` functions return the full value for given sizes.
//!
//! Exact quantities (`λ`, `μ`, harmonic numbers) stay rational until the
//! final logarithm is taken.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::BoundError;
use crate::logmag::LogMagnitude;

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("rational converts to f64")
}

/// `coef · ln(base)` with `0 · ln 0 = 0`.
fn xlny(coef: f64, base: f64) -> f64 {
    if coef == 0.0 {
        0.0
    } else {
        coef * base.ln()
    }
}

fn check_k_le_n(n: u64, k: u64) -> Result<(), BoundError> {
    if k == 0 || k > n {
        return Err(BoundError::domain(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// `ln((hi)! / (lo − 1)!) = Σ_{i=lo}^{hi} ln i`; empty when `hi < lo`.
fn ln_falling(lo: u64, hi: u64) -> f64 {
    (lo.max(1)..=hi).map(|i| (i as f64).ln()).sum()
}

/// Hadamard's inequality for `n` rows of norm `√k`: `k^{n/2}`.
pub fn hadamard_bound(n: u64, k: u64) -> LogMagnitude {
    LogMagnitude::powf(k as f64, n as f64 / 2.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RyserBound {
    /// `λ = k(k−1)/(n−1)`.
    pub lambda: BigRational,
    /// `k (k − λ)^{(n−1)/2}`.
    pub value: LogMagnitude,
}

/// Ryser's bound for an `n × n` zero-one matrix with `kn` ones.
pub fn ryser_bound(n: u64, k: u64) -> Result<RyserBound, BoundError> {
    if n < 2 {
        return Err(BoundError::domain("Ryser's bound needs n >= 2"));
    }
    check_k_le_n(n, k)?;
    let lambda = ratio(k * (k - 1), n - 1);
    let gap = BigRational::from_integer(BigInt::from(k)) - &lambda;
    let value = LogMagnitude::from_f64(k as f64)
        * LogMagnitude::from_rational(&gap).pow((n - 1) as f64 / 2.0);
    Ok(RyserBound { lambda, value })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RyserGenBound {
    /// `μ = (k/(m−1))(mk/n − 1)`, clamped at 0 when `mk ≤ n`.
    pub mu: BigRational,
    pub value: LogMagnitude,
}

/// Volume bound `k √(m/n) (k − μ)^{(m−1)/2}` for `A ∈ R(m, n, k)`.
///
/// For `mk ≤ n` the average off-diagonal Gram entry can be zero, so `μ`
/// is clamped at 0 and Hadamard's `k^{m/2}` is returned.
///
/// At `m = n` this reproduces Ryser's bound with `μ = k(k−1)/(n−1)`; a
/// nearby remark in the literature writes `k(k−1)/n`, which does not follow
/// from the formula and is not used here.
pub fn ryser_gen_bound(m: u64, n: u64, k: u64) -> Result<RyserGenBound, BoundError> {
    if m < 2 {
        return Err(BoundError::domain("generalized Ryser bound needs m >= 2"));
    }
    check_k_le_n(n, k)?;
    if m * k <= n {
        return Ok(RyserGenBound {
            mu: BigRational::zero(),
            value: hadamard_bound(m, k),
        });
    }
    let mu = ratio(k, m - 1) * (ratio(m * k, n) - BigRational::one());
    let gap = BigRational::from_integer(BigInt::from(k)) - &mu;
    let value = LogMagnitude::from_f64(k as f64)
        * LogMagnitude::from_rational(&ratio(m, n)).sqrt()
        * LogMagnitude::from_rational(&gap).pow((m - 1) as f64 / 2.0);
    Ok(RyserGenBound { mu, value })
}

/// Per-row constant of the pairwise bound:
/// `c_k = (√(k²−1))^{(1−1/k)/2} k^{1/(2k)}`. `c_1 = 1`.
pub fn c_pair(k: u64) -> Result<LogMagnitude, BoundError> {
    if k == 0 {
        return Err(BoundError::domain("k must be positive"));
    }
    if k == 1 {
        return Ok(LogMagnitude::ONE);
    }
    let kf = k as f64;
    let ln = 0.25 * (1.0 - 1.0 / kf) * (kf * kf - 1.0).ln() + kf.ln() / (2.0 * kf);
    Ok(LogMagnitude::from_ln(ln))
}

/// Removing overlapping pairs of rows:
/// `(√(k²−1))^{m/2 − n/(2k)} k^{n/(2k)}`.
pub fn pair_bound(m: u64, n: u64, k: u64) -> Result<LogMagnitude, BoundError> {
    check_k_le_n(n, k)?;
    if k == 1 {
        return Ok(hadamard_bound(m, k));
    }
    let (mf, nf, kf) = (m as f64, n as f64, k as f64);
    let ln = (mf / 2.0 - nf / (2.0 * kf)) * 0.5 * (kf * kf - 1.0).ln() + nf / (2.0 * kf) * kf.ln();
    Ok(LogMagnitude::from_ln(ln))
}

fn check_q(q: u64, k: u64) -> Result<(), BoundError> {
    if q == 0 || q > k {
        return Err(BoundError::domain(format!("need 1 <= q <= k, got q = {q}, k = {k}")));
    }
    Ok(())
}

/// `ln √det S_{q,1,k} = ½ [ln(q+k−1) + (q−1) ln(k−1)]`, the largest
/// volume of `q` rows of weight `k` that share a column.
fn ln_group_volume(q: u64, k: u64) -> f64 {
    0.5 * (((q + k - 1) as f64).ln() + xlny((q - 1) as f64, (k - 1) as f64))
}

/// Per-row constant of the `q`-row bound:
/// `(q+k−1)^{(1−(q−1)/k)/(2q)} (k−1)^{(q−1)(1−(q−1)/k)/(2q)} k^{(q−1)/(2k)}`.
pub fn c_q(q: u64, k: u64) -> Result<LogMagnitude, BoundError> {
    check_q(q, k)?;
    let (qf, kf) = (q as f64, k as f64);
    let shrink = 1.0 - (qf - 1.0) / kf;
    let ln = shrink / (2.0 * qf) * (qf + kf - 1.0).ln()
        + xlny(0.5 * (qf - 1.0) / qf * shrink, kf - 1.0)
        + (qf - 1.0) / (2.0 * kf) * kf.ln();
    Ok(LogMagnitude::from_ln(ln))
}

/// `(√((q+k−1)(k−1)^{q−1}))^{m/q − (n/k)(q−1)/q} k^{n(q−1)/(2k)}`.
pub fn q_row_bound(m: u64, n: u64, k: u64, q: u64) -> Result<LogMagnitude, BoundError> {
    check_k_le_n(n, k)?;
    check_q(q, k)?;
    let (mf, nf, kf, qf) = (m as f64, n as f64, k as f64, q as f64);
    let groups = mf / qf - nf / kf * (qf - 1.0) / qf;
    let ln = groups * ln_group_volume(q, k) + nf * (qf - 1.0) / (2.0 * kf) * kf.ln();
    Ok(LogMagnitude::from_ln(ln))
}

/// The `q ∈ 1..=k` minimising `c_q(q, k)`; ties go to the smaller `q`.
pub fn optimal_q(k: u64) -> Result<(u64, LogMagnitude), BoundError> {
    if k == 0 {
        return Err(BoundError::domain("k must be positive"));
    }
    let mut best = (1, c_q(1, k)?);
    for q in 2..=k {
        let c = c_q(q, k)?;
        if c < best.1 {
            best = (q, c);
        }
    }
    Ok(best)
}

/// `s³ + s − ln(1+s)(s+1)`. Its positive root is the limit of `q*/k`.
pub fn root_equation(s: f64) -> f64 {
    s * s * s + s - (1.0 + s).ln() * (s + 1.0)
}

/// Positive root of [`root_equation`] by bisection on `[1e−6, 1]`.
pub fn s_star(tolerance: f64) -> Result<f64, BoundError> {
    if !(tolerance > 0.0) {
        return Err(BoundError::domain("tolerance must be positive"));
    }
    let (mut lo, mut hi) = (1e-6, 1.0);
    debug_assert!(root_equation(lo) < 0.0 && root_equation(hi) > 0.0);
    for _ in 0..200 {
        if hi - lo <= tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if root_equation(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `H_j = Σ_{i=1}^{j} 1/i`, exact. `H_0 = 0`.
pub fn harmonic(j: u64) -> BigRational {
    (1..=j).fold(BigRational::zero(), |acc, i| acc + ratio(1, i))
}

fn check_k_ge_2(k: u64) -> Result<(), BoundError> {
    if k < 2 {
        return Err(BoundError::domain(format!("need k >= 2, got {k}")));
    }
    Ok(())
}

/// Prefactor `α_k = √((2k−1)!/(k−1)!) (k−1)^{(k²−k)/4}` of the greedy bound.
pub fn alpha(k: u64) -> Result<LogMagnitude, BoundError> {
    check_k_ge_2(k)?;
    let ln = 0.5 * ln_falling(k, 2 * k - 1) + ((k * k - k) as f64 / 4.0) * ((k - 1) as f64).ln();
    Ok(LogMagnitude::from_ln(ln))
}

/// Growth constant `β_k = (k + k/H_k − 1)^{H_k/(2k)} (k−1)^{(1−H_k/k)/2}`.
pub fn beta(k: u64) -> Result<LogMagnitude, BoundError> {
    check_k_ge_2(k)?;
    let h = harmonic(k);
    let kq = BigRational::from_integer(BigInt::from(k));
    let base = &kq + &kq / &h - BigRational::one();
    let hf = to_f64(&h);
    let kf = k as f64;
    let ln = hf / (2.0 * kf) * to_f64(&base).ln() + 0.5 * (1.0 - hf / kf) * (kf - 1.0).ln();
    Ok(LogMagnitude::from_ln(ln))
}

/// `α_k β_k^n`.
pub fn alpha_beta_bound(n: u64, k: u64) -> Result<LogMagnitude, BoundError> {
    Ok(alpha(k)? * beta(k)?.pow(n as f64))
}

/// Closed form of the greedy volume bound for `A ∈ R(m, n, k)`, with
/// `r = ⌈mk/n⌉`.
///
/// For `m = n` the square-case product `X_k Y_k` is used, which after the
/// harmonic-mean estimate is exactly `α_k β_k^n`. Otherwise the general
/// `X_{r−1} Y_{r−1} Z_r` form applies, whose first factors depend only on
/// `r` and `k`.
pub fn greedy_closed_bound(m: u64, n: u64, k: u64) -> Result<LogMagnitude, BoundError> {
    check_k_le_n(n, k)?;
    if m == 0 || m > n {
        return Err(BoundError::domain(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if m == n && k >= 2 {
        return alpha_beta_bound(n, k);
    }
    let r = (m * k).div_ceil(n);
    let (mf, nf, kf, rf) = (m as f64, n as f64, k as f64, r as f64);
    let ln_km1 = (kf - 1.0).ln();

    let mut ln = 0.5 * ln_falling(k, r + k - 2) + xlny((rf * rf - 3.0 * rf + 2.0) / 4.0, kf - 1.0);
    if r >= 2 {
        let h = harmonic(r - 1);
        let hf = to_f64(&h);
        let base = BigRational::from_integer(BigInt::from(k)) + ratio(r - 1, 1) / &h
            - BigRational::one();
        ln += nf * hf / (2.0 * kf) * to_f64(&base).ln();
        ln += nf / (2.0 * kf) * (rf - hf - 1.0) * ln_km1;
    }
    let last_groups = 0.5 * (nf * nf / (kf * kf * mf) + 1.0);
    ln += last_groups * (((r + k - 1) as f64).ln() + xlny(rf - 1.0, kf - 1.0));
    Ok(LogMagnitude::from_ln(ln))
}

/// Perturbed pairwise constant for rows with `k` nonzeros in `[1−δ, 1+δ]`:
/// `√(k²(1+δ)² − (1−δ)²)^{(1−1/k)/2} (k(1+δ)²)^{1/(2k)}`.
pub fn perturbed_bound(k: u64, delta: f64) -> Result<LogMagnitude, BoundError> {
    check_k_ge_2(k)?;
    check_delta(delta)?;
    let kf = k as f64;
    let hi = 1.0 + delta;
    let lo = 1.0 - delta;
    let ln = 0.25 * (1.0 - 1.0 / kf) * (kf * kf * hi * hi - lo * lo).ln()
        + (kf * hi * hi).ln() / (2.0 * kf);
    Ok(LogMagnitude::from_ln(ln))
}

/// Hadamard's per-row constant for perturbed rows, `√k (1+δ)`.
pub fn perturbed_hadamard(k: u64, delta: f64) -> Result<LogMagnitude, BoundError> {
    check_delta(delta)?;
    Ok(LogMagnitude::from_f64((k as f64).sqrt() * (1.0 + delta)))
}

fn check_delta(delta: f64) -> Result<(), BoundError> {
    if !(0.0..1.0).contains(&delta) {
        return Err(BoundError::domain(format!("need 0 <= delta < 1, got {delta}")));
    }
    Ok(())
}

/// Per-row growth of block-diagonal copies of a projective-plane incidence
/// matrix with row sum `k`: `k^{1/(k²−k+1)} (k−1)^{1/2 − 1/(2(k²−k+1))}`.
/// Only realised when `k − 1` is a prime power.
pub fn design_lower_bound(k: u64) -> Result<LogMagnitude, BoundError> {
    check_k_ge_2(k)?;
    let kf = k as f64;
    let v = kf * kf - kf + 1.0;
    let ln = kf.ln() / v + (0.5 - 1.0 / (2.0 * v)) * (kf - 1.0).ln();
    Ok(LogMagnitude::from_ln(ln))
}

/// `|det|^{1/n}`: per-row growth of block-diagonal copies of an `n × n` block.
pub fn design_rate(det: &BigInt, n: u64) -> LogMagnitude {
    LogMagnitude::from_bigint(det).pow(1.0 / n as f64)
}

/// `det S_{n,a,k} = (a(n−1)+k)(k−a)^{n−1}`, exact.
pub fn det_s_formula(n: u64, a: i64, k: i64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let lead = BigInt::from(a) * BigInt::from(n - 1) + BigInt::from(k);
    lead * num_traits::pow(BigInt::from(k - a), (n - 1) as usize)
}

/// Real-valued `(a(n−1)+k)(k−a)^{n−1}`.
pub fn det_s_formula_real(n: u64, a: f64, k: f64) -> f64 {
    (a * (n as f64 - 1.0) + k) * (k - a).powi(n as i32 - 1)
}

/// Interpolated constant for matrices with `k̃ n` ones, `k̃` real:
/// `c_k^{1−γ} c_{k+1}^{γ}` with `k = ⌊k̃⌋`, `γ = k̃ − k`.
///
/// This is conjectural. The weights follow the split into `(1−γ)n` rows of
/// weight `k` and `γn` rows of weight `k+1`, each bounded by the pairwise
/// argument.
pub fn conjectured_dtilde(k_tilde: f64) -> Result<LogMagnitude, BoundError> {
    if !(k_tilde > 1.0) || !k_tilde.is_finite() {
        return Err(BoundError::domain(format!("need k~ > 1, got {k_tilde}")));
    }
    let k = k_tilde.floor();
    let gamma = k_tilde - k;
    let k = k as u64;
    let lower = c_pair(k)?.pow(1.0 - gamma);
    if gamma == 0.0 {
        return Ok(lower);
    }
    Ok(lower * c_pair(k + 1)?.pow(gamma))
}

/// Whether the pairwise bound `c_k^n` is strictly below Ryser's bound.
pub fn compare_beats_ryser(n: u64, k: u64) -> Result<bool, BoundError> {
    let pair = c_pair(k)?.pow(n as f64);
    let ryser = ryser_bound(n, k)?;
    Ok(pair < ryser.value)
}

/// Smallest `n0 ≤ n_max` such that the pairwise bound beats Ryser for every
/// `n ∈ [n0, n_max]`, or `None` if it does not hold at `n_max`.
pub fn beats_ryser_from(k: u64, n_max: u64) -> Result<Option<u64>, BoundError> {
    let lo = k.max(2);
    if n_max < lo {
        return Ok(None);
    }
    let flags: Vec<bool> = crate::par::map_range(lo, n_max + 1, |n| {
        compare_beats_ryser(n, k).unwrap_or(false)
    });
    if !flags.last().copied().unwrap_or(false) {
        return Ok(None);
    }
    let trailing = flags.iter().rev().take_while(|&&f| f).count() as u64;
    Ok(Some(n_max + 1 - trailing))
}

/// `M_R(n, 2) ≤ 2^{n/3}`, for matrices whose rows hold at most two ones.
pub fn at_most_two_per_row_bound(n: u64) -> LogMagnitude {
    LogMagnitude::powf(2.0, n as f64 / 3.0)
}

/// `M_T(n, 2) ≤ 6^{n/6}`.
pub fn two_n_ones_bound(n: u64) -> LogMagnitude {
    LogMagnitude::powf(6.0, n as f64 / 6.0)
}
