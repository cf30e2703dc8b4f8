//! Dense zero-one and arbitrary-precision integer matrices, plus the plain
//! text format shared by every tool in the workspace:
//!
//! ```text
//! 3 3
//! 1 1 0
//! 0 1 1
//! 1 0 1
//! ```
//!
//! The first line holds `rows cols`, then one line per row of
//! space-separated entries.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::LinalgError;

/// Dense rectangular matrix with every entry in {0, 1}, stored row-major
/// as bytes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl ZeroOneMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::Shape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(&v) = data.iter().find(|&&v| v > 1) {
            return Err(LinalgError::NotZeroOne(i64::from(v)));
        }
        Ok(ZeroOneMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows, which must all have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Ragged);
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds an `rows × cols` matrix from row bitmasks, bit `j` being column `j`.
    pub fn from_bitmasks(masks: &[u64], cols: usize) -> Result<Self, LinalgError> {
        if cols > 64 {
            return Err(LinalgError::Shape {
                expected: 64,
                found: cols,
            });
        }
        let mut data = Vec::with_capacity(masks.len() * cols);
        for &mask in masks {
            data.extend((0..cols).map(|j| ((mask >> j) & 1) as u8));
        }
        Self::new(masks.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i * self.cols + j] = u8::from(value);
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.cols)
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.row_iter()
            .map(|r| r.iter().map(|&v| usize::from(v)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0usize; self.cols];
        for r in self.row_iter() {
            for (s, &v) in sums.iter_mut().zip(r) {
                *s += usize::from(v);
            }
        }
        sums
    }

    pub fn total_ones(&self) -> usize {
        self.data.iter().map(|&v| usize::from(v)).sum()
    }

    pub fn transpose(&self) -> ZeroOneMatrix {
        let mut data = vec![0u8; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        ZeroOneMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<ZeroOneMatrix, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            if i >= self.rows {
                return Err(LinalgError::Index(i));
            }
            data.extend_from_slice(self.row(i));
        }
        ZeroOneMatrix::new(rows.len(), self.cols, data)
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }
}

fn write_grid<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    rows: usize,
    cols: usize,
    data: &[T],
) -> fmt::Result {
    writeln!(f, "{rows} {cols}")?;
    for r in data.chunks_exact(cols) {
        let mut first = true;
        for v in r {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        writeln!(f)?;
    }
    Ok(())
}

impl fmt::Display for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, &self.data)
    }
}

fn parse_grid<T, E>(s: &str) -> Result<(usize, usize, Vec<T>), LinalgError>
where
    T: FromStr<Err = E>,
{
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or(LinalgError::Parse("missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| LinalgError::Parse(format!("bad header {header:?}: {e}")))?;
    let [rows, cols] = dims[..] else {
        return Err(LinalgError::Parse(format!(
            "header must be `rows cols`, got {header:?}"
        )));
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for line in lines {
        let before = data.len();
        for tok in line.split_whitespace() {
            let v = tok
                .parse::<T>()
                .map_err(|_| LinalgError::Parse(format!("bad entry {tok:?}")))?;
            data.push(v);
        }
        if data.len() - before != cols {
            return Err(LinalgError::Parse(format!(
                "row {seen_rows} has {} entries, expected {cols}",
                data.len() - before
            )));
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(LinalgError::Parse(format!(
            "expected {rows} rows, found {seen_rows}"
        )));
    }
    Ok((rows, cols, data))
}

impl FromStr for ZeroOneMatrix {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (rows, cols, data) = parse_grid::<u8, _>(s)?;
        ZeroOneMatrix::new(rows, cols, data)
    }
}

/// Dense matrix of arbitrary-precision signed integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::Shape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_fn<F, T>(rows: usize, cols: usize, mut f: F) -> Result<Self, LinalgError>
    where
        F: FnMut(usize, usize) -> T,
        T: Into<BigInt>,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).into());
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Ragged);
            }
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Leading `size × size` principal submatrix.
    pub fn leading_minor(&self, size: usize) -> Result<IntMatrix, LinalgError> {
        if size == 0 || size > self.rows || size > self.cols {
            return Err(LinalgError::Index(size));
        }
        IntMatrix::from_fn(size, size, |i, j| self.get(i, j).clone())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, &self.data)
    }
}

impl FromStr for IntMatrix {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (rows, cols, data) = parse_grid::<BigInt, _>(s)?;
        IntMatrix::new(rows, cols, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_round_trip() {
        let m = ZeroOneMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        let text = m.to_string();
        assert_eq!(text, "2 3\n1 1 0\n0 1 1\n");
        assert_eq!(text.parse::<ZeroOneMatrix>().unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ZeroOneMatrix::from_rows(&[[1u8, 2]]),
            Err(LinalgError::NotZeroOne(2))
        ));
        assert!(matches!(
            ZeroOneMatrix::new(0, 3, vec![]),
            Err(LinalgError::Empty)
        ));
        assert!("2 2\n1 0\n".parse::<ZeroOneMatrix>().is_err());
        assert!("2 2\n1 0\n0 1 1\n".parse::<ZeroOneMatrix>().is_err());
        assert!("x 2\n".parse::<ZeroOneMatrix>().is_err());
    }

    #[test]
    fn sums_and_transpose() {
        let m = ZeroOneMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        assert_eq!(m.row_sums(), vec![2, 2]);
        assert_eq!(m.col_sums(), vec![1, 2, 1]);
        assert_eq!(m.total_ones(), 4);
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.row(1), &[1, 1]);
    }

    #[test]
    fn bitmask_rows() {
        let m = ZeroOneMatrix::from_bitmasks(&[0b011, 0b110], 3).unwrap();
        assert_eq!(m.row(0), &[1, 1, 0]);
        assert_eq!(m.row(1), &[0, 1, 1]);
    }

    #[test]
    fn int_matrix_parse() {
        let m: IntMatrix = "2 2\n3 -1\n-1 3\n".parse().unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.get(0, 1), &BigInt::from(-1));
    }
}
