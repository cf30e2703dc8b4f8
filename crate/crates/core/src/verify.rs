//! Reproduction suite: every published number the library can recompute,
//! with computed and expected values side by side.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    alpha, beta, c_pair, c_q, design_lower_bound, design_rate, greedy_closed_bound,
    hadamard_bound, optimal_q, pair_bound, perturbed_bound, q_row_bound, ryser_bound, s_star,
};
use crate::certify::verify_counterexample;
use crate::constructions::{biplane_11, fano, paper_matrix, PaperMatrix};
use crate::linalg::det_exact;
use crate::logmag::LogMagnitude;
use crate::matrix::ZeroOneMatrix;
use crate::schedule::{make_schedule, schedule_bound};
use crate::search::{search_max_det, MatrixClass, SearchConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyItem {
    pub id: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub items: Vec<VerifyItem>,
    pub passed: usize,
    pub failed: usize,
}

/// A decimal as printed: `"21.91"`, `"1.7105e27"`. Returns the mantissa in
/// `[1, 10)`, the exponent and the number of significant figures.
pub fn parse_printed(s: &str) -> Option<(f64, i64, u32)> {
    let (digits, exp) = match s.split_once(['e', 'E']) {
        Some((d, e)) => (d, e.parse::<i64>().ok()?),
        None => (s, 0),
    };
    let value: f64 = digits.parse().ok()?;
    if value <= 0.0 {
        return None;
    }
    let sig = digits
        .chars()
        .filter(char::is_ascii_digit)
        .skip_while(|&c| c == '0')
        .count() as u32;
    let shift = value.log10().floor() as i64;
    let mantissa = value / 10f64.powi(shift as i32);
    Some((mantissa, exp + shift, sig))
}

/// Whether `value` rounds to the printed figure at the printed precision.
pub fn matches_printed(value: LogMagnitude, printed: &str) -> bool {
    let Some((mantissa, exponent, sig)) = parse_printed(printed) else {
        return false;
    };
    let (m, e) = value.rounded_scientific(sig);
    e == exponent && (m - mantissa).abs() < 1e-9
}

struct Suite {
    items: Vec<VerifyItem>,
}

impl Suite {
    fn item(&mut self, id: impl Into<String>, computed: impl ToString, expected: impl ToString, pass: bool) {
        self.items.push(VerifyItem {
            id: id.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            pass,
        });
    }

    fn printed(&mut self, id: impl Into<String>, value: Result<LogMagnitude, impl ToString>, printed: &str) {
        match value {
            Ok(v) => {
                let sig = parse_printed(printed).map_or(5, |p| p.2);
                let (m, e) = v.rounded_scientific(sig);
                let shown = if e == 0 { format!("{m}") } else { format!("{m}e{e}") };
                self.item(id, shown, printed, matches_printed(v, printed));
            }
            Err(err) => self.item(id, err.to_string(), printed, false),
        }
    }

    fn exact<T: PartialEq + ToString>(&mut self, id: impl Into<String>, computed: T, expected: T) {
        let pass = computed == expected;
        self.item(id, computed.to_string(), expected.to_string(), pass);
    }
}

/// `(k, c_{2,k}, q*, c_{q*,k}, α_k, β_k)` as printed.
const GROWTH_TABLE: [(u64, &str, u64, &str, &str, &str); 8] = [
    (3, "1.6984", 2, "1.6984", "21.91", "1.6977"),
    (4, "1.9759", 3, "1.9719", "782.53", "1.9702"),
    (5, "2.2179", 3, "2.2116", "1.2591e5", "2.2097"),
    (6, "2.4352", 4, "2.4279", "1.0075e8", "2.4257"),
    (7, "2.6341", 4, "2.6258", "4.3557e11", "2.6240"),
    (8, "2.8187", 5, "2.8103", "1.0925e16", "2.8083"),
    (9, "2.9917", 5, "2.9828", "1.6920e21", "2.9812"),
    (10, "3.1551", 5, "3.1462", "1.7105e27", "3.1447"),
];

/// `(i, a_i)` for the greedy schedule of `(1000, 1000, 17)`.
const SCHEDULE_COUNTS: [(u64, u64); 17] = [
    (17, 4), (16, 4), (15, 3), (14, 5), (13, 4), (12, 5), (11, 5), (10, 6), (9, 7),
    (8, 7), (7, 8), (6, 10), (5, 12), (4, 14), (3, 20), (2, 29), (1, 57),
];

const PRINTED_Q: [u64; 31] = [
    9, 8, 8, 7, 6, 6, 5, 5, 4, 4, 4, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
];

fn abs_det(m: &ZeroOneMatrix) -> BigInt {
    det_exact(&m.to_int_matrix()).map(|d| d.abs()).unwrap_or_default()
}

fn growth_table(s: &mut Suite) {
    for (k, c2, q_star, cq, a, b) in GROWTH_TABLE {
        s.printed(format!("growth.k{k}.c2"), c_pair(k), c2);
        match optimal_q(k) {
            Ok((q, c)) => {
                s.exact(format!("growth.k{k}.q_star"), q, q_star);
                s.printed(format!("growth.k{k}.c_q_star"), Ok::<_, String>(c), cq);
            }
            Err(e) => s.item(format!("growth.k{k}.q_star"), e, q_star, false),
        }
        s.printed(format!("growth.k{k}.alpha"), alpha(k), a);
        s.printed(format!("growth.k{k}.beta"), beta(k), b);
    }
}

fn schedules(s: &mut Suite) {
    match make_schedule(100, 200, 17) {
        Ok(sch) => {
            let shown = |q: &[u64]| q.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            let pass = sch.q_sequence == PRINTED_Q;
            s.item("schedule.100_200_17.Q", shown(&sch.q_sequence), shown(&PRINTED_Q), pass);
        }
        Err(e) => s.item("schedule.100_200_17.Q", e, "printed sequence", false),
    }
    match make_schedule(1000, 1000, 17) {
        Ok(sch) => {
            for (i, a) in SCHEDULE_COUNTS {
                s.exact(format!("schedule.1000_1000_17.a{i}"), sch.count(i), a);
            }
            s.printed("schedule.1000_1000_17.bound", Ok::<_, String>(schedule_bound(&sch)), "9.3551e612");
        }
        Err(e) => s.item("schedule.1000_1000_17", e, "Table 1", false),
    }
}

fn constants(s: &mut Suite) {
    s.printed("example.hadamard", Ok::<_, String>(hadamard_bound(1000, 3)), "3.64e238");
    match ryser_bound(1000, 3) {
        Ok(r) => {
            s.exact("example.ryser.lambda", r.lambda.to_string(), "2/333".to_string());
            s.printed("example.ryser", Ok::<_, String>(r.value), "2.31e238");
        }
        Err(e) => s.item("example.ryser", e, "2.31e238", false),
    }
    s.printed("example.pair", pair_bound(1000, 1000, 3), "1.08e230");

    s.printed("const.c_pair3", c_pair(3), "1.6984");
    s.printed("const.c_pair17", c_pair(17), "4.1197");
    s.printed("const.c_q8_17", c_q(8, 17), "4.1111");
    s.printed("const.c_q23_49", c_q(23, 49), "6.9931");
    for (k, q) in [(17, 8), (49, 23)] {
        match optimal_q(k) {
            Ok((got, _)) => s.exact(format!("const.q_star{k}"), got, q),
            Err(e) => s.item(format!("const.q_star{k}"), e, q, false),
        }
    }
    s.printed("const.q_rows_1000_17", q_row_bound(1000, 1000, 17, 8), "9.0074e613");
    s.printed("const.greedy_closed_1000_17", greedy_closed_bound(1000, 1000, 17), "3.7674e707");
    s.printed("const.alpha17", alpha(17), "4.8887e93");
    s.printed("const.beta17", beta(17), "4.1104");
    s.printed("const.alpha3", alpha(3), "21.91");
    s.printed("const.beta3", beta(3), "1.6977");
    s.printed("const.perturbed_4_0.01", perturbed_bound(4, 0.01), "1.9892");
    s.printed("const.design3", design_lower_bound(3), "1.5746");
    s.printed("const.biplane_rate", Ok::<_, String>(design_rate(&abs_det(&biplane_11()), 11)), "1.9073");
    match s_star(1e-12) {
        Ok(v) => s.printed("const.s_star", Ok::<_, String>(LogMagnitude::from_f64(v)), "0.43955"),
        Err(e) => s.item("const.s_star", e, "0.43955", false),
    }
}

fn determinants(s: &mut Suite) {
    s.exact("det.r7_k2", abs_det(&paper_matrix(PaperMatrix::R7K2)), BigInt::from(4));
    s.exact("det.fano", abs_det(&fano()), BigInt::from(24));
    s.exact("det.biplane", abs_det(&biplane_11()), BigInt::from(1215));
    for c in verify_counterexample() {
        s.item(format!("counterexample.{}", c.name), &c.detail, "holds", c.pass);
    }
}

fn searches(s: &mut Suite) {
    let cfg = SearchConfig::default();
    let mut run = |id: String, class, n, k, want: u64| match search_max_det(class, n, k, &cfg) {
        Ok(r) => {
            let pass = r.exhaustive && r.max_abs_det == BigInt::from(want);
            s.item(id, &r.max_abs_det, want, pass);
        }
        Err(e) => s.item(id, e, want, false),
    };
    for (n, want) in [(3, 2), (4, 2), (5, 2), (6, 4), (7, 2)] {
        run(format!("search.S.{n}.2"), MatrixClass::S, n, 2, want);
    }
    run("search.R.7.2".into(), MatrixClass::R, 7, 2, 4);
    run("search.S.7.3".into(), MatrixClass::S, 7, 3, 24);
}

/// Runs everything. Searches dominate the running time.
pub fn run_suite() -> VerifySummary {
    let mut s = Suite { items: Vec::new() };
    growth_table(&mut s);
    schedules(&mut s);
    constants(&mut s);
    determinants(&mut s);
    searches(&mut s);
    let passed = s.items.iter().filter(|i| i.pass).count();
    VerifySummary {
        failed: s.items.len() - passed,
        passed,
        items: s.items,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_printed_figures() {
        assert_eq!(parse_printed("21.91").map(|p| (p.1, p.2)), Some((1, 4)));
        assert_eq!(parse_printed("1.7105e27").map(|p| (p.1, p.2)), Some((27, 5)));
        assert_eq!(parse_printed("0.43955").map(|p| (p.1, p.2)), Some((-1, 5)));
        assert_eq!(parse_printed("2.0").map(|p| p.2), Some(2));
        assert!(parse_printed("abc").is_none());
        assert!(parse_printed("-1").is_none());
    }

    #[test]
    fn printed_matching() {
        assert!(matches_printed(LogMagnitude::from_f64(21.914), "21.91"));
        assert!(!matches_printed(LogMagnitude::from_f64(21.916), "21.91"));
        assert!(matches_printed(LogMagnitude::from_f64(1.70504e27), "1.7050e27"));
        assert!(!matches_printed(LogMagnitude::from_f64(1.7105e26), "1.7105e27"));
    }

    #[test]
    fn suite_items_are_unique() {
        let summary = run_suite();
        let mut ids: Vec<_> = summary.items.iter().map(|i| &i.id).collect();
        let total = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), total);
        assert_eq!(summary.passed + summary.failed, total);
        let failing: Vec<_> = summary.items.iter().filter(|i| !i.pass).map(|i| i.id.as_str()).collect();
        // S(4, 2) contains only singular matrices, so the published value 2
        // cannot be reproduced
        assert_eq!(failing, ["search.S.4.2"]);
    }
}
