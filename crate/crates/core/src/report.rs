//! Serialisable reports: bound lists, schedules, search results, figure
//! series and the conjectural interpolation scan.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    alpha_beta_bound, beta, c_pair, c_q, conjectured_dtilde, design_lower_bound,
    greedy_closed_bound, hadamard_bound, optimal_q, pair_bound, perturbed_bound, q_row_bound,
    ryser_bound, ryser_gen_bound,
};
use crate::error::BoundError;
use crate::logmag::LogMagnitude;
use crate::schedule::{make_schedule, schedule_bound, RemovalSchedule};
use crate::search::{MatrixClass, SearchResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Upper,
    Lower,
    ConjecturalUpper,
}

/// Query for [`bound_reports`]. Without `n` the report lists per-row growth
/// constants instead of full values.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_tilde: Option<f64>,
}

impl BoundParams {
    pub fn validate(&self) -> Result<(), BoundError> {
        let err = |msg: String| Err(BoundError::Domain(msg));
        if self.k.is_none() && self.k_tilde.is_none() {
            return err("need k or k_tilde".into());
        }
        if self.k.is_none() && (self.m.is_some() || self.n.is_some() || self.q.is_some() || self.delta.is_some()) {
            return err("m, n, q and delta need k".into());
        }
        if self.m.is_some() && self.n.is_none() {
            return err("m needs n".into());
        }
        if let Some(k) = self.k {
            if k == 0 {
                return err("k must be positive".into());
            }
            if let Some(n) = self.n {
                if k > n {
                    return err(format!("need k <= n, got k = {k}, n = {n}"));
                }
            }
            if let Some(q) = self.q {
                if q == 0 || q > k {
                    return err(format!("need 1 <= q <= k, got q = {q}"));
                }
            }
        }
        if let (Some(m), Some(n)) = (self.m, self.n) {
            if m == 0 || m > n {
                return err(format!("need 1 <= m <= n, got m = {m}, n = {n}"));
            }
        }
        if let Some(d) = self.delta {
            if !(0.0..1.0).contains(&d) {
                return err(format!("delta must lie in [0, 1), got {d}"));
            }
        }
        if let Some(kt) = self.k_tilde {
            if !(kt > 1.0 && kt.is_finite()) {
                return err(format!("k_tilde must exceed 1, got {kt}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub params: BoundParams,
    /// Rounded to 12 decimals.
    pub log10_value: f64,
    /// Five significant figures.
    pub mantissa: f64,
    pub exponent: i64,
    pub kind: BoundKind,
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}

impl BoundReport {
    pub fn new(name: impl Into<String>, params: &BoundParams, value: LogMagnitude, kind: BoundKind) -> Self {
        let (mantissa, exponent) = value.rounded_scientific(5);
        BoundReport {
            name: name.into(),
            params: params.clone(),
            log10_value: round_to(value.log10(), 12),
            mantissa,
            exponent,
            kind,
        }
    }

    pub fn value(&self) -> LogMagnitude {
        LogMagnitude::from_log10(self.log10_value)
    }
}

/// Every bound that applies to the query.
pub fn bound_reports(p: &BoundParams) -> Result<Vec<BoundReport>, BoundError> {
    p.validate()?;
    let mut out = Vec::new();
    let mut push = |name: &str, v: LogMagnitude, kind| out.push(BoundReport::new(name, p, v, kind));
    use BoundKind::*;

    if let Some(k) = p.k {
        match p.n {
            Some(n) => {
                let m = p.m.unwrap_or(n);
                push("hadamard", hadamard_bound(m, k), Upper);
                if m == n && n >= 2 {
                    push("ryser", ryser_bound(n, k)?.value, Upper);
                } else if m >= 2 {
                    push("ryser-generalized", ryser_gen_bound(m, n, k)?.value, Upper);
                }
                push("pair", pair_bound(m, n, k)?, Upper);
                let q = match p.q {
                    Some(q) => q,
                    None => optimal_q(k)?.0,
                };
                push("q-rows", q_row_bound(m, n, k, q)?, Upper);
                push("schedule", schedule_bound(&make_schedule(m, n, k)?), Upper);
                push("greedy-closed", greedy_closed_bound(m, n, k)?, Upper);
                if m == n && k >= 2 {
                    push("alpha-beta", alpha_beta_bound(n, k)?, Upper);
                    if let Some(d) = p.delta {
                        push("perturbed", perturbed_bound(k, d)?.pow(n as f64), Upper);
                    }
                    push("design", design_lower_bound(k)?.pow(n as f64), Lower);
                }
                if let Some(kt) = p.k_tilde {
                    push("dtilde", conjectured_dtilde(kt)?.pow(n as f64), ConjecturalUpper);
                }
            }
            None => {
                push("hadamard-rate", LogMagnitude::from_f64(k as f64).sqrt(), Upper);
                push("pair-rate", c_pair(k)?, Upper);
                let q = match p.q {
                    Some(q) => q,
                    None => optimal_q(k)?.0,
                };
                push("q-rows-rate", c_q(q, k)?, Upper);
                if k >= 2 {
                    push("beta", beta(k)?, Upper);
                    if let Some(d) = p.delta {
                        push("perturbed-rate", perturbed_bound(k, d)?, Upper);
                    }
                    push("design-rate", design_lower_bound(k)?, Lower);
                }
                if let Some(kt) = p.k_tilde {
                    push("dtilde", conjectured_dtilde(kt)?, ConjecturalUpper);
                }
            }
        }
    } else if let Some(kt) = p.k_tilde {
        push("dtilde", conjectured_dtilde(kt)?, ConjecturalUpper);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub r: u64,
    #[serde(rename = "Q")]
    pub q_sequence: Vec<u64>,
    pub counts: BTreeMap<u64, u64>,
    pub log10_bound: f64,
}

impl From<&RemovalSchedule> for ScheduleReport {
    fn from(s: &RemovalSchedule) -> Self {
        ScheduleReport {
            m: s.m,
            n: s.n,
            k: s.k,
            r: s.r,
            q_sequence: s.q_sequence.clone(),
            counts: s.counts.clone(),
            log10_bound: round_to(schedule_bound(s).log10(), 12),
        }
    }
}

/// `(i, a_i)` rows for `i = r` down to 1.
pub fn schedule_csv(s: &RemovalSchedule) -> String {
    let mut out = String::from("i,a_i\n");
    for (i, a) in s.count_rows() {
        writeln!(out, "{i},{a}").expect("writing to a String");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub class: MatrixClass,
    pub n: usize,
    pub k: usize,
    pub max_abs_det: String,
    /// Matrix text format.
    pub witness: String,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

impl From<&SearchResult> for SearchRecord {
    fn from(r: &SearchResult) -> Self {
        SearchRecord {
            class: r.class,
            n: r.n,
            k: r.k,
            max_abs_det: r.max_abs_det.to_string(),
            witness: r.witness.to_string(),
            nodes_explored: r.nodes_explored,
            exhaustive: r.exhaustive,
        }
    }
}

/// `√k − c_{q,k}` against `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureSeries {
    pub k: u64,
    /// `(q, c_{q,k}, gap)` for `q = 1..=k`.
    pub points: Vec<(u64, f64, f64)>,
    pub optimum: (u64, f64, f64),
    /// `(β_k, √k − β_k)`.
    pub reference: Option<(f64, f64)>,
}

/// `√k − c` computed as `√k (1 − c/√k)` so that `c = √k` gives exactly 0.
fn gap(k: u64, c: LogMagnitude) -> f64 {
    let half_ln_k = 0.5 * (k as f64).ln();
    0.0 - (k as f64).sqrt() * (c.ln() - half_ln_k).exp_m1()
}

pub fn figure_series(k: u64, with_beta: bool) -> Result<FigureSeries, BoundError> {
    if k == 0 {
        return Err(BoundError::Domain("k must be positive".into()));
    }
    let points = (1..=k)
        .map(|q| c_q(q, k).map(|c| (q, c.to_f64(), gap(k, c))))
        .collect::<Result<Vec<_>, _>>()?;
    let (q_star, c_star) = optimal_q(k)?;
    let reference = if with_beta {
        let b = beta(k)?;
        Some((b.to_f64(), gap(k, b)))
    } else {
        None
    };
    Ok(FigureSeries {
        k,
        points,
        optimum: (q_star, c_star.to_f64(), gap(k, c_star)),
        reference,
    })
}

impl FigureSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,q,value,gap\n");
        for (q, c, g) in &self.points {
            writeln!(out, "point,{q},{c},{g}").expect("writing to a String");
        }
        let (q, c, g) = self.optimum;
        writeln!(out, "optimum,{q},{c},{g}").expect("writing to a String");
        if let Some((b, g)) = self.reference {
            writeln!(out, "beta,,{b},{g}").expect("writing to a String");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DtildeRow {
    pub k_tilde: f64,
    pub value: f64,
    pub below_sqrt_k_tilde: bool,
    pub below_sqrt_floor: bool,
}

/// Evaluates the conjectural interpolation on `k̃ = lo/10, (lo+1)/10, …, hi/10`
/// and records which of the two readings of "below √k" holds.
pub fn dtilde_scan(lo_tenths: u64, hi_tenths: u64) -> Result<Vec<DtildeRow>, BoundError> {
    (lo_tenths..=hi_tenths)
        .map(|t| {
            let kt = t as f64 / 10.0;
            let d = conjectured_dtilde(kt)?.to_f64();
            Ok(DtildeRow {
                k_tilde: kt,
                value: d,
                below_sqrt_k_tilde: d < kt.sqrt(),
                below_sqrt_floor: d < kt.floor().sqrt(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(r: &'a [BoundReport], name: &str) -> &'a BoundReport {
        r.iter().find(|b| b.name == name).unwrap_or_else(|| panic!("no {name}"))
    }

    #[test]
    fn example_triple() {
        let p = BoundParams { n: Some(1000), k: Some(3), ..Default::default() };
        let r = bound_reports(&p).unwrap();
        assert_eq!((find(&r, "hadamard").mantissa, find(&r, "hadamard").exponent), (3.636, 238));
        let ry = find(&r, "ryser");
        assert_eq!(ry.exponent, 238);
        assert!((ry.mantissa - 2.31).abs() < 0.005);
        let pair = find(&r, "pair");
        assert_eq!(pair.exponent, 230);
        assert!((pair.mantissa - 1.08).abs() < 0.005);
        assert_eq!(find(&r, "design").kind, BoundKind::Lower);
    }

    #[test]
    fn q_rows_example() {
        let p = BoundParams { n: Some(1000), k: Some(17), q: Some(8), ..Default::default() };
        let r = bound_reports(&p).unwrap();
        let q = find(&r, "q-rows");
        assert_eq!((q.mantissa, q.exponent), (9.0074, 613));
    }

    #[test]
    fn perturbed_rate() {
        let p = BoundParams { k: Some(4), delta: Some(0.01), ..Default::default() };
        let r = bound_reports(&p).unwrap();
        assert_eq!(find(&r, "perturbed-rate").mantissa, 1.9892);
    }

    #[test]
    fn conjectural_kind_only_for_dtilde() {
        let p = BoundParams { n: Some(50), k: Some(3), k_tilde: Some(2.5), ..Default::default() };
        for b in bound_reports(&p).unwrap() {
            assert_eq!(b.kind == BoundKind::ConjecturalUpper, b.name == "dtilde");
        }
        let only = BoundParams { k_tilde: Some(2.5), ..Default::default() };
        assert_eq!(bound_reports(&only).unwrap().len(), 1);
    }

    #[test]
    fn invalid_params() {
        let bad = [
            BoundParams::default(),
            BoundParams { k: Some(0), ..Default::default() },
            BoundParams { n: Some(3), k: Some(4), ..Default::default() },
            BoundParams { n: Some(5), k: Some(2), q: Some(3), ..Default::default() },
            BoundParams { m: Some(6), n: Some(5), k: Some(2), ..Default::default() },
            BoundParams { m: Some(4), k: Some(2), ..Default::default() },
            BoundParams { k: Some(2), delta: Some(1.0), ..Default::default() },
            BoundParams { k_tilde: Some(1.0), ..Default::default() },
            BoundParams { n: Some(5), k_tilde: Some(2.0), ..Default::default() },
        ];
        for p in bad {
            assert!(bound_reports(&p).is_err(), "{p:?}");
        }
    }

    #[test]
    fn rectangular_uses_generalized_ryser() {
        let p = BoundParams { m: Some(100), n: Some(200), k: Some(17), ..Default::default() };
        let r = bound_reports(&p).unwrap();
        assert!(r.iter().any(|b| b.name == "ryser-generalized"));
        assert!(!r.iter().any(|b| b.name == "alpha-beta"));
    }

    #[test]
    fn figure_k49() {
        let f = figure_series(49, false).unwrap();
        assert_eq!(f.points.len(), 49);
        assert_eq!(f.points[0].2, 0.0);
        assert_eq!(f.optimum.0, 23);
        assert!((f.optimum.1 - 6.9931).abs() < 5e-5);
        assert!((f.optimum.2 - 0.0069).abs() < 5e-5);
        let csv = f.to_csv();
        let second = csv.lines().nth(1).unwrap();
        assert!(second.starts_with("point,1,") && second.ends_with(",0"), "{second}");
        assert!(csv.contains("\noptimum,23,"));
        assert!(!csv.contains("beta"));
    }

    #[test]
    fn figure_k17_beta_line_above_peak() {
        let f = figure_series(17, true).unwrap();
        assert_eq!(f.optimum.0, 8);
        let (_, beta_gap) = f.reference.unwrap();
        assert!(beta_gap > f.optimum.2);
        assert!(f.to_csv().lines().last().unwrap().starts_with("beta,,"));
    }

    #[test]
    fn schedule_csv_rows() {
        let s = make_schedule(1000, 1000, 17).unwrap();
        let csv = schedule_csv(&s);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "i,a_i");
        assert_eq!(lines[1], "17,4");
        assert_eq!(lines[17], "1,57");
        let rep = ScheduleReport::from(&s);
        assert_eq!(rep.r, 17);
        assert!((rep.log10_bound - 612.0 - 9.3551f64.log10()).abs() < 1e-4);
    }

    #[test]
    fn dtilde_grid() {
        let rows = dtilde_scan(21, 99).unwrap();
        assert_eq!(rows.len(), 79);
        assert!(rows.iter().all(|r| r.below_sqrt_k_tilde));
    }
}
