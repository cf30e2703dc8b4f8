//! Explicit matrices: `S_{n,a,k}`, projective planes of prime order, the
//! (11,5,2) biplane, block-diagonal powers, and three fixed examples from
//! the literature.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::matrix::{IntMatrix, ZeroOneMatrix};

/// Parameters of a symmetric `(n, k, λ)` design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DesignParams {
    /// Symmetric designs satisfy `λ(n−1) = k(k−1)`.
    pub fn is_admissible(&self) -> bool {
        self.n >= 2 && self.lambda * (self.n - 1) == self.k * (self.k - 1)
    }

    pub fn projective_plane(p: u64) -> Self {
        DesignParams {
            n: p * p + p + 1,
            k: p + 1,
            lambda: 1,
        }
    }
}

/// `S_{n,a,k} = a J_n + (k−a) I_n`: diagonal `k`, off-diagonal `a`.
pub fn s_matrix(n: usize, a: i64, k: i64) -> Result<IntMatrix, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Invalid("n must be positive".into()));
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| if i == j { k } else { a })?)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Normalised homogeneous coordinates of PG(2, p): first nonzero entry 1,
/// in lexicographic order.
fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((p * p + p + 1) as usize);
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    pts.sort_unstable();
    pts
}

/// Line–point incidence matrix of the projective plane of prime order `p`.
/// Lines and points are both indexed by normalised coordinates; line `ℓ`
/// contains point `x` iff `ℓ·x ≡ 0 (mod p)`.
pub fn projective_plane(p: u64) -> Result<ZeroOneMatrix, ConstructionError> {
    if !is_prime(p) {
        return Err(ConstructionError::UnsupportedOrder(p));
    }
    let pts = projective_points(p);
    let n = pts.len();
    let mut data = Vec::with_capacity(n * n);
    for line in &pts {
        for pt in &pts {
            let dot: u64 = line.iter().zip(pt).map(|(a, b)| a * b).sum();
            data.push(u8::from(dot % p == 0));
        }
    }
    Ok(ZeroOneMatrix::new(n, n, data)?)
}

pub fn fano() -> ZeroOneMatrix {
    projective_plane(2).expect("2 is prime")
}

/// Quadratic residues mod 11, a (11, 5, 2) difference set.
pub const BIPLANE_DIFFERENCE_SET: [usize; 5] = [1, 3, 4, 5, 9];

/// Circulant incidence matrix of the (11, 5, 2) biplane: row `i` has ones
/// in columns `i + d (mod 11)` for `d` in the residue set.
pub fn biplane_11() -> ZeroOneMatrix {
    circulant(11, &BIPLANE_DIFFERENCE_SET).expect("valid difference set")
}

/// Row `i` has ones at `(i + d) mod n` for each `d` in `offsets`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<ZeroOneMatrix, ConstructionError> {
    let mut m = ZeroOneMatrix::zeros(n, n)?;
    for i in 0..n {
        for &d in offsets {
            m.set(i, (i + d) % n, true);
        }
    }
    Ok(m)
}

/// `t` copies of the square matrix `a` along the diagonal.
pub fn block_diag_power(a: &ZeroOneMatrix, t: usize) -> Result<ZeroOneMatrix, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::Invalid("t must be at least 1".into()));
    }
    if !a.is_square() {
        return Err(ConstructionError::Invalid("block must be square".into()));
    }
    let n = a.rows();
    let mut out = ZeroOneMatrix::zeros(n * t, n * t)?;
    for b in 0..t {
        for i in 0..n {
            for j in 0..n {
                if a.get(i, j) == 1 {
                    out.set(b * n + i, b * n + j, true);
                }
            }
        }
    }
    Ok(out)
}

/// Fixed matrices transcribed entry for entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PaperMatrix {
    /// 7×7 with row sums 2 and determinant of absolute value 4; some
    /// column sums differ from 2.
    R7K2,
    /// Member of S(10, 3) with determinant 15 whose Gram matrices have
    /// off-diagonal entries in {0, 1}.
    A10,
    /// Member of S(10, 3) with determinant 48.
    B10,
}

impl PaperMatrix {
    pub const ALL: [PaperMatrix; 3] = [PaperMatrix::R7K2, PaperMatrix::A10, PaperMatrix::B10];

    fn rows(self) -> &'static [&'static str] {
        match self {
            PaperMatrix::R7K2 => &[
                "1100000", "0110000", "1010000", "1001000", "0000110", "0000101", "0000011",
            ],
            PaperMatrix::A10 => &[
                "0100000110",
                "0000111000",
                "1001000010",
                "0010000101",
                "0101010000",
                "0000010011",
                "1000100001",
                "0001001100",
                "1010001000",
                "0110100000",
            ],
            PaperMatrix::B10 => &[
                "0100010010",
                "0000011100",
                "1000001010",
                "0100100100",
                "0001110000",
                "0010100001",
                "1010000100",
                "1100000001",
                "0001000011",
                "0011001000",
            ],
        }
    }
}

impl fmt::Display for PaperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PaperMatrix::R7K2 => "R7_K2",
            PaperMatrix::A10 => "A10",
            PaperMatrix::B10 => "B10",
        })
    }
}

impl FromStr for PaperMatrix {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "R7_K2" | "R7K2" => Ok(PaperMatrix::R7K2),
            "A10" => Ok(PaperMatrix::A10),
            "B10" => Ok(PaperMatrix::B10),
            _ => Err(ConstructionError::Invalid(format!("unknown matrix id {s:?}"))),
        }
    }
}

pub fn paper_matrix(id: PaperMatrix) -> ZeroOneMatrix {
    let rows: Vec<Vec<u8>> = id
        .rows()
        .iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect();
    ZeroOneMatrix::from_rows(&rows).expect("transcribed matrix is well formed")
}
