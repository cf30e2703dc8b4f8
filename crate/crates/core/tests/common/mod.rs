//! Independent oracles. Nothing here calls into the elimination or search
//! code it is used to check.
#![allow(dead_code)]

use maxdet::MatrixClass;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => i128::from(m[0][0]),
        2 => i128::from(m[0][0]) * i128::from(m[1][1]) - i128::from(m[0][1]) * i128::from(m[1][0]),
        _ => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * i128::from(m[0][j]) * cofactor_det(&minor)
            })
            .sum(),
    }
}

pub fn bits_to_row(mask: u32, n: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from((mask >> j) & 1)).collect()
}

fn in_class(class: MatrixClass, rows: &[Vec<i64>], k: usize) -> bool {
    let n = rows.len();
    let total: i64 = rows.iter().flatten().sum();
    match class {
        MatrixClass::T => total == (k * n) as i64,
        MatrixClass::R => rows.iter().all(|r| r.iter().sum::<i64>() == k as i64),
        MatrixClass::S => {
            rows.iter().all(|r| r.iter().sum::<i64>() == k as i64)
                && (0..n).all(|j| rows.iter().map(|r| r[j]).sum::<i64>() == k as i64)
        }
    }
}

/// Maximum `|det|` by enumerating every candidate matrix. Row-sum classes
/// enumerate rows of weight `k`; T enumerates all `2^{n²}` matrices, so it
/// is only usable for `n ≤ 4`.
pub fn brute_max(class: MatrixClass, n: usize, k: usize) -> i128 {
    let row_pool: Vec<u32> = match class {
        MatrixClass::T => (0..1u32 << n).collect(),
        _ => (0..1u32 << n).filter(|m| m.count_ones() as usize == k).collect(),
    };
    let mut best = 0;
    let mut idx = vec![0usize; n];
    'outer: loop {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| bits_to_row(row_pool[i], n)).collect();
        if in_class(class, &rows, k) {
            best = best.max(cofactor_det(&rows).abs());
        }
        for slot in (0..n).rev() {
            idx[slot] += 1;
            if idx[slot] < row_pool.len() {
                continue 'outer;
            }
            idx[slot] = 0;
        }
        break;
    }
    best
}

/// Published value `printed` agrees with `value` to its printed precision:
/// the mantissas differ by at most half a unit in the last printed digit.
pub fn agrees_to_printed(log10_value: f64, printed: &str) -> bool {
    let (digits, exp) = match printed.split_once('e') {
        Some((d, e)) => (d, e.parse::<i32>().expect("exponent")),
        None => (printed, 0),
    };
    let shown: f64 = digits.parse().expect("printed number");
    let decimals = digits.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let at_scale = 10f64.powf(log10_value - f64::from(exp));
    (at_scale - shown).abs() <= 0.5 * 10f64.powi(-decimals) * (1.0 + 1e-12)
}
