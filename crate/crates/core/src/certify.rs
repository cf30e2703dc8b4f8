//! Ties the search to the bounds: every applicable upper bound must sit at or
//! above the certified maximum, every explicit construction at or below it.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bounds::{
    alpha_beta_bound, c_pair, greedy_closed_bound, hadamard_bound, pair_bound, q_row_bound,
    ryser_bound, two_n_ones_bound, at_most_two_per_row_bound,
};
use crate::constructions::{
    biplane_11, block_diag_power, circulant, fano, paper_matrix, projective_plane, PaperMatrix,
};
use crate::error::SearchError;
use crate::linalg::{class_membership, det_exact, gram, gram_columns};
use crate::logmag::LogMagnitude;
use crate::matrix::{IntMatrix, ZeroOneMatrix};
use crate::schedule::{make_schedule, schedule_bound};
use crate::search::{search_max_det, MatrixClass, SearchConfig, SearchResult};

/// Float bounds may land a rounding error below an exact tight value.
const UPPER_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub side: Side,
    pub log10_bound: Option<f64>,
    /// `log10(bound) − log10(max)` for upper bounds, the reverse for lower
    /// ones. `None` when either side is zero.
    pub margin_log10: Option<f64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub class: MatrixClass,
    pub n: usize,
    pub k: usize,
    pub max_abs_det: String,
    pub checks: Vec<BoundCheck>,
}

impl Certificate {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn finite_log10(x: LogMagnitude) -> Option<f64> {
    (!x.is_zero()).then(|| x.log10())
}

fn upper(name: impl Into<String>, bound: LogMagnitude, max: LogMagnitude) -> BoundCheck {
    let holds = max.is_zero() || max.ln() <= bound.ln() + UPPER_SLACK;
    BoundCheck {
        name: name.into(),
        side: Side::Upper,
        log10_bound: finite_log10(bound),
        margin_log10: finite_log10(max).and_then(|m| finite_log10(bound).map(|b| b - m)),
        holds,
    }
}

fn lower(name: impl Into<String>, bound: &BigInt, max: &BigInt) -> BoundCheck {
    let (b, m) = (LogMagnitude::from_bigint(bound), LogMagnitude::from_bigint(max));
    BoundCheck {
        name: name.into(),
        side: Side::Lower,
        log10_bound: finite_log10(b),
        margin_log10: finite_log10(m).and_then(|m| finite_log10(b).map(|b| m - b)),
        holds: bound <= max,
    }
}

/// Members of S(d, k) with known determinant, used block-diagonally.
fn design_blocks(k: usize) -> Vec<(&'static str, ZeroOneMatrix)> {
    let mut out = Vec::new();
    match k {
        1 => out.push(("identity", ZeroOneMatrix::identity(1).expect("1x1"))),
        2 => out.push(("triangle", circulant(3, &[0, 1]).expect("order 3"))),
        3 => out.push(("fano", fano())),
        4 => out.push(("plane-3", projective_plane(3).expect("3 is prime"))),
        5 => out.push(("biplane", biplane_11())),
        _ => {}
    }
    out
}

fn abs_det(m: &ZeroOneMatrix) -> Result<BigInt, SearchError> {
    Ok(det_exact(&m.to_int_matrix())?.abs())
}

/// Every bound check for a finished search.
pub fn bound_checks(result: &SearchResult) -> Result<Certificate, SearchError> {
    let (class, n, k) = (result.class, result.n, result.k);
    let (nu, ku) = (n as u64, k as u64);
    let max = LogMagnitude::from_bigint(&result.max_abs_det);
    let fixed_rows = class != MatrixClass::T;
    let mut checks = vec![upper("hadamard", hadamard_bound(nu, ku), max)];

    if n >= 2 {
        checks.push(upper("ryser", ryser_bound(nu, ku)?.value, max));
    }
    if fixed_rows {
        checks.push(upper("pair", pair_bound(nu, nu, ku)?, max));
        for q in 1..=ku {
            checks.push(upper(format!("q-rows[{q}]"), q_row_bound(nu, nu, ku, q)?, max));
        }
        checks.push(upper("schedule", schedule_bound(&make_schedule(nu, nu, ku)?), max));
        checks.push(upper("greedy-closed", greedy_closed_bound(nu, nu, ku)?, max));
        if k >= 2 {
            checks.push(upper("alpha-beta", alpha_beta_bound(nu, ku)?, max));
        }
        if k == 2 {
            checks.push(upper("two-per-row", at_most_two_per_row_bound(nu), max));
        }
    } else if k >= 2 {
        checks.push(upper("pair-total", c_pair(ku)?.pow(n as f64), max));
    }
    if k == 2 {
        checks.push(upper("two-n-ones", two_n_ones_bound(nu), max));
    }

    for (name, block) in design_blocks(k) {
        let d = block.rows();
        if n % d == 0 {
            let det = abs_det(&block)?.pow((n / d) as u32);
            checks.push(lower(format!("{name}^{}", n / d), &det, &result.max_abs_det));
        }
    }
    if n >= 2 && k == n - 1 {
        let det = BigInt::from(n - 1);
        checks.push(lower("ones-minus-identity", &det, &result.max_abs_det));
    }
    if n == 7 && k == 2 && class != MatrixClass::S {
        let det = abs_det(&paper_matrix(PaperMatrix::R7K2))?;
        checks.push(lower("r7-k2", &det, &result.max_abs_det));
    }

    Ok(Certificate {
        class,
        n,
        k,
        max_abs_det: result.max_abs_det.to_string(),
        checks,
    })
}

/// Runs an exhaustive search and checks it against every applicable bound.
/// A violated bound is an error.
pub fn certify_bounds(
    class: MatrixClass,
    n: usize,
    k: usize,
    config: &SearchConfig,
) -> Result<(SearchResult, Certificate), SearchError> {
    let result = search_max_det(class, n, k, config)?;
    if !result.exhaustive {
        return Err(SearchError::NotExhaustive {
            class: class.letter(),
            n,
            k,
        });
    }
    let cert = bound_checks(&result)?;
    if let Some(bad) = cert.checks.iter().find(|c| !c.holds) {
        return Err(SearchError::BoundViolated {
            name: bad.name.clone(),
            max: cert.max_abs_det.clone(),
            bound: bad.log10_bound.map_or(0.0, |l| 10f64.powf(l)),
        });
    }
    Ok((result, cert))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// `|x − 2/3| < 1` for every off-diagonal entry, in exact integers.
fn off_diagonals_near_two_thirds(g: &IntMatrix) -> (bool, Vec<BigInt>) {
    let mut values = Vec::new();
    let mut ok = true;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if i != j {
                let x = g.get(i, j);
                let diff: BigInt = x * 3 - 2;
                ok &= diff.abs() < BigInt::from(3);
                if !values.contains(x) {
                    values.push(x.clone());
                }
            }
        }
    }
    values.sort();
    (ok, values)
}

/// The S(10, 3) pair showing a Gram-closeness heuristic does not pick out
/// the maximiser: `B10` reaches 48 while `A10`, whose Gram matrices are as
/// close as possible to constant, has determinant 15.
pub fn verify_counterexample() -> Vec<Condition> {
    let a = paper_matrix(PaperMatrix::A10);
    let b = paper_matrix(PaperMatrix::B10);
    let det = |m: &ZeroOneMatrix| det_exact(&m.to_int_matrix()).unwrap_or_else(|_| BigInt::zero());
    let (det_a, det_b) = (det(&a), det(&b));
    let b_in_s = class_membership(&b, 3).in_s;
    let a_in_s = class_membership(&a, 3).in_s;
    let (rows_ok, rows_vals) = off_diagonals_near_two_thirds(&gram(&a));
    let (cols_ok, cols_vals) = off_diagonals_near_two_thirds(&gram_columns(&a));
    let show = |v: &[BigInt]| {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    vec![
        Condition {
            name: "det-b10",
            pass: det_b == BigInt::from(48) && b_in_s,
            detail: format!("det = {det_b}, in S(10,3) = {b_in_s}"),
        },
        Condition {
            name: "det-a10",
            pass: det_a == BigInt::from(15),
            detail: format!("det = {det_a}"),
        },
        Condition {
            name: "a10-in-s",
            pass: a_in_s,
            detail: format!("in S(10,3) = {a_in_s}"),
        },
        Condition {
            name: "row-gram-off-diagonal",
            pass: rows_ok,
            detail: format!("values {{{}}}", show(&rows_vals)),
        },
        Condition {
            name: "column-gram-off-diagonal",
            pass: cols_ok,
            detail: format!("values {{{}}}", show(&cols_vals)),
        },
    ]
}

/// Lower bound on M(n, k) from a block-diagonal power, if `d | n`.
pub fn block_lower_bound(block: &ZeroOneMatrix, n: usize) -> Result<Option<BigInt>, SearchError> {
    let d = block.rows();
    if d == 0 || n % d != 0 {
        return Ok(None);
    }
    let power = block_diag_power(block, n / d)?;
    Ok(Some(abs_det(&power)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_conditions() {
        let report = verify_counterexample();
        assert_eq!(report.len(), 5);
        for c in &report {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert_eq!(report[3].detail, "values {0,1}");
        assert_eq!(report[4].detail, "values {0,1}");
    }

    #[test]
    fn near_two_thirds_rejects_two() {
        let g = IntMatrix::from_i64_rows(&[[3, 2], [2, 3]]).unwrap();
        assert!(!off_diagonals_near_two_thirds(&g).0);
        let g = IntMatrix::from_i64_rows(&[[3, 0], [1, 3]]).unwrap();
        assert!(off_diagonals_near_two_thirds(&g).0);
    }

    #[test]
    fn pair_bound_example_r_6_2() {
        let (res, cert) = certify_bounds(MatrixClass::R, 6, 2, &SearchConfig::default()).unwrap();
        assert_eq!(res.max_abs_det, BigInt::from(4));
        let pair = cert.checks.iter().find(|c| c.name == "pair").unwrap();
        // √3^{3/2} · 2^{3/2}
        let expected = (3f64.sqrt().powf(1.5) * 2f64.powf(1.5)).log10();
        assert!((pair.log10_bound.unwrap() - expected).abs() < 1e-12);
        assert!(cert.all_hold());
    }

    #[test]
    fn fano_meets_ryser() {
        let (res, cert) = certify_bounds(MatrixClass::S, 7, 3, &SearchConfig::default()).unwrap();
        assert_eq!(res.max_abs_det, BigInt::from(24));
        let ryser = cert.checks.iter().find(|c| c.name == "ryser").unwrap();
        assert!(ryser.margin_log10.unwrap().abs() < 1e-9);
        let fano = cert.checks.iter().find(|c| c.name == "fano^1").unwrap();
        assert_eq!(fano.margin_log10, Some(0.0));
    }

    #[test]
    fn t_class_two_n_ones() {
        let (res, cert) = certify_bounds(MatrixClass::T, 6, 2, &SearchConfig::default()).unwrap();
        assert!(res.max_abs_det <= BigInt::from(6));
        assert!(cert.checks.iter().any(|c| c.name == "two-n-ones" && c.holds));
        assert!(!cert.checks.iter().any(|c| c.name == "schedule"));
    }

    #[test]
    fn not_exhaustive_is_an_error() {
        let cfg = SearchConfig {
            budget: 5,
            threads: Some(1),
            ..SearchConfig::default()
        };
        assert!(matches!(
            certify_bounds(MatrixClass::R, 7, 3, &cfg),
            Err(SearchError::NotExhaustive { .. })
        ));
    }

    #[test]
    fn block_powers() {
        assert_eq!(block_lower_bound(&fano(), 14).unwrap(), Some(BigInt::from(576)));
        assert_eq!(block_lower_bound(&fano(), 10).unwrap(), None);
    }
}
