//! Certified maximum-|det| search over R(n, k), S(n, k) and T(n, k).
//!
//! Rows are bitmasks with column 0 in the most significant position, so
//! numeric order on masks is lexicographic order on rows. Matrices are
//! enumerated in a canonical form:
//!
//! * rows appear in strictly decreasing `(row sum, mask)` order. A repeated
//!   row forces `det = 0`, and `|det|` does not depend on row order;
//! * the first row is `1…10…0` with the largest row sum. Permuting columns
//!   brings any row of maximal weight to that shape.
//!
//! Subtrees are cut when the Fischer product `vol²(placed rows) × bound²(rest)`
//! is strictly below the incumbent. The bound on the rest is Hadamard's, or
//! for fixed row sums the generalized Ryser bound. Leaves are evaluated
//! exactly. Top-level branches run in parallel and share only the incumbent.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bounds::ryser_gen_bound;
use crate::constructions::circulant;
use crate::error::SearchError;
use crate::linalg::det_i128;
use crate::matrix::ZeroOneMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixClass {
    /// Every row sums to k.
    R,
    /// Every row and every column sums to k.
    S,
    /// Exactly kn ones in total.
    T,
}

impl MatrixClass {
    pub fn letter(self) -> char {
        match self {
            MatrixClass::R => 'R',
            MatrixClass::S => 'S',
            MatrixClass::T => 'T',
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            MatrixClass::R | MatrixClass::S => 7,
            MatrixClass::T => 6,
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for MatrixClass {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "R" | "r" => Ok(MatrixClass::R),
            "S" | "s" => Ok(MatrixClass::S),
            "T" | "t" => Ok(MatrixClass::T),
            other => Err(SearchError::Invalid(format!("unknown class {other:?}"))),
        }
    }
}

/// Largest `n` the bitmask representation supports.
pub const HARD_MAX_N: usize = 16;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node limit; past it the result is marked non-exhaustive.
    pub budget: u64,
    /// Worker threads. `Some(1)` runs the sequential path; `None` uses the
    /// global rayon pool.
    pub threads: Option<usize>,
    /// Bound-based pruning. Feasibility checks for the class always apply.
    pub prune: bool,
    /// Overrides the per-class size limit.
    pub max_n: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            threads: None,
            prune: true,
            max_n: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub class: MatrixClass,
    pub n: usize,
    pub k: usize,
    pub max_abs_det: BigInt,
    pub witness: ZeroOneMatrix,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

struct Problem {
    class: MatrixClass,
    n: usize,
    k: usize,
    cands: Vec<u16>,
    weights: Vec<u32>,
    /// Total ones required (T only).
    target: u32,
    /// Squared bound on the volume of `r` further rows, indexed by `r`
    /// (fixed-row-sum classes only).
    rest_sq: Vec<f64>,
    prune: bool,
}

impl Problem {
    fn new(class: MatrixClass, n: usize, k: usize, prune: bool) -> Result<Self, SearchError> {
        let full = 1u32 << n;
        let mut rows: Vec<u16> = (1..full)
            .filter(|m| match class {
                MatrixClass::R | MatrixClass::S => m.count_ones() as usize == k,
                MatrixClass::T => true,
            })
            .map(|m| m as u16)
            .collect();
        rows.sort_unstable_by(|a, b| (b.count_ones(), b).cmp(&(a.count_ones(), a)));
        let weights = rows.iter().map(|r| r.count_ones()).collect();

        let mut rest_sq = vec![1.0; n + 1];
        if class != MatrixClass::T {
            for (r, slot) in rest_sq.iter_mut().enumerate().skip(1) {
                let hadamard = (k as f64).powi(r as i32);
                let ryser = if r >= 2 {
                    let v = ryser_gen_bound(r as u64, n as u64, k as u64)?.value;
                    v.to_f64() * v.to_f64()
                } else {
                    hadamard
                };
                *slot = hadamard.min(ryser);
            }
        }
        Ok(Problem {
            class,
            n,
            k,
            cands: rows,
            weights,
            target: (k * n) as u32,
            rest_sq,
            prune,
        })
    }

    /// Index of the row `1^s 0^{n−s}` in the candidate list.
    fn prefix_index(&self, s: usize) -> Option<usize> {
        let mask = (((1u32 << s) - 1) << (self.n - s)) as u16;
        self.cands.iter().position(|&c| c == mask)
    }

    fn first_row_choices(&self) -> Vec<usize> {
        match self.class {
            MatrixClass::R | MatrixClass::S => self.prefix_index(self.k).into_iter().collect(),
            MatrixClass::T => (self.k.max(1)..=self.n)
                .rev()
                .filter_map(|s| self.prefix_index(s))
                .collect(),
        }
    }

    fn to_matrix(&self, masks: &[u16]) -> ZeroOneMatrix {
        let n = self.n;
        let mut m = ZeroOneMatrix::zeros(masks.len(), n).expect("nonempty");
        for (i, &mask) in masks.iter().enumerate() {
            for j in 0..n {
                m.set(i, j, (mask >> (n - 1 - j)) & 1 == 1);
            }
        }
        m
    }

    /// Some member of the class, used when every canonical leaf is absent
    /// (e.g. k = n, where all rows coincide).
    fn fallback_witness(&self) -> ZeroOneMatrix {
        let n = self.n;
        match self.class {
            MatrixClass::R => {
                let row = self.cands[0];
                self.to_matrix(&vec![row; n])
            }
            MatrixClass::S => {
                let offsets: Vec<usize> = (0..self.k).collect();
                circulant(n, &offsets).expect("n >= 1")
            }
            MatrixClass::T => {
                let mut m = ZeroOneMatrix::zeros(n, n).expect("n >= 1");
                for c in 0..self.k * n {
                    m.set(c / n, c % n, true);
                }
                m
            }
        }
    }
}

struct Shared {
    best: AtomicU64,
    nodes: AtomicU64,
    stop: AtomicBool,
    budget: u64,
}

const FLUSH_EVERY: u64 = 4096;

struct Worker<'a> {
    p: &'a Problem,
    sh: &'a Shared,
    rows: Vec<u16>,
    col_sums: [u32; HARD_MAX_N],
    total: u32,
    pending_nodes: u64,
    best: Option<(u64, Vec<u16>)>,
    gram: Vec<i64>,
}

impl<'a> Worker<'a> {
    fn new(p: &'a Problem, sh: &'a Shared) -> Self {
        Worker {
            p,
            sh,
            rows: Vec::with_capacity(p.n),
            col_sums: [0; HARD_MAX_N],
            total: 0,
            pending_nodes: 0,
            best: None,
            gram: Vec::with_capacity(p.n * p.n),
        }
    }

    fn tick(&mut self) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= FLUSH_EVERY {
            self.flush();
        }
        !self.sh.stop.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let before = self.sh.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed);
        if before + self.pending_nodes > self.sh.budget {
            self.sh.stop.store(true, Ordering::Relaxed);
        }
        self.pending_nodes = 0;
    }

    fn place(&mut self, idx: usize) {
        let row = self.p.cands[idx];
        let n = self.p.n;
        for j in 0..n {
            self.col_sums[j] += u32::from((row >> (n - 1 - j)) & 1);
        }
        self.total += self.p.weights[idx];
        self.rows.push(row);
    }

    fn unplace(&mut self, idx: usize) {
        let row = self.rows.pop().expect("placed row");
        let n = self.p.n;
        for j in 0..n {
            self.col_sums[j] -= u32::from((row >> (n - 1 - j)) & 1);
        }
        self.total -= self.p.weights[idx];
    }

    /// Whether the placed rows can still be completed to a class member.
    /// `Err(())` means no later (lighter) candidate can help either.
    fn feasible(&self, idx: usize) -> Result<bool, ()> {
        let p = self.p;
        let left = (p.n - self.rows.len()) as u32;
        if (p.cands.len() - idx - 1) < left as usize {
            return Err(());
        }
        match p.class {
            MatrixClass::R => Ok(true),
            MatrixClass::S => {
                let k = p.k as u32;
                Ok(self.col_sums[..p.n]
                    .iter()
                    .all(|&c| c <= k && k - c <= left))
            }
            MatrixClass::T => {
                let w = p.weights[idx];
                if self.total + left > p.target {
                    return Ok(false);
                }
                if p.target - self.total > left * w {
                    return Err(());
                }
                Ok(true)
            }
        }
    }

    fn volume_sq(&mut self) -> u128 {
        let d = self.rows.len();
        self.gram.clear();
        for i in 0..d {
            for j in 0..d {
                self.gram.push(i64::from((self.rows[i] & self.rows[j]).count_ones()));
            }
        }
        det_i128(&self.gram, d).expect("gram determinant of small matrix fits") as u128
    }

    /// True when no completion of the placed rows can reach the incumbent.
    fn should_prune(&mut self, idx: usize) -> bool {
        if !self.p.prune {
            return false;
        }
        let best = u128::from(self.sh.best.load(Ordering::Relaxed));
        if best == 0 {
            return false;
        }
        let best_sq = best * best;
        let vol_sq = self.volume_sq();
        let left = (self.p.n - self.rows.len()) as u32;
        match self.p.class {
            MatrixClass::R | MatrixClass::S => {
                let had = vol_sq * (self.p.k as u128).pow(left);
                if had < best_sq {
                    return true;
                }
                let ryser = vol_sq as f64 * self.p.rest_sq[left as usize];
                ryser * (1.0 + 1e-9) < best_sq as f64
            }
            MatrixClass::T => {
                if left == 0 {
                    return vol_sq < best_sq;
                }
                // each later row weighs at most the current one, and their
                // product is at most (mean weight)^left by AM-GM
                let w = u128::from(self.p.weights[idx]);
                if vol_sq * w.pow(left) < best_sq {
                    return true;
                }
                let rest = u128::from(self.p.target - self.total);
                vol_sq * rest.pow(left) < best_sq * u128::from(left).pow(left)
            }
        }
    }

    fn leaf(&mut self) {
        let n = self.p.n;
        let mut entries = Vec::with_capacity(n * n);
        for &row in &self.rows {
            entries.extend((0..n).map(|j| i64::from((row >> (n - 1 - j)) & 1)));
        }
        let det = det_i128(&entries, n).expect("0/1 determinant fits in i128");
        let abs = det.unsigned_abs() as u64;
        if self.best.as_ref().is_none_or(|(b, _)| abs > *b) {
            self.best = Some((abs, self.rows.clone()));
            self.sh.best.fetch_max(abs, Ordering::Relaxed);
        }
    }

    /// Tries candidate `idx` as the next row. Returns `Err(())` when every
    /// later candidate is infeasible too.
    fn descend(&mut self, idx: usize) -> Result<(), ()> {
        self.place(idx);
        let ok = match self.feasible(idx) {
            Err(()) => {
                self.unplace(idx);
                return Err(());
            }
            Ok(ok) => ok,
        };
        if ok && !self.should_prune(idx) {
            self.dfs(idx + 1);
        }
        self.unplace(idx);
        Ok(())
    }

    fn dfs(&mut self, start: usize) {
        if !self.tick() {
            return;
        }
        if self.rows.len() == self.p.n {
            self.leaf();
            return;
        }
        for idx in start..self.p.cands.len() {
            if self.descend(idx).is_err() {
                break;
            }
        }
    }

    fn run_branch(mut self, prefix: &[usize]) -> Option<(u64, Vec<u16>)> {
        let mut placed = Vec::new();
        let mut alive = true;
        for &idx in prefix {
            self.place(idx);
            placed.push(idx);
            if !matches!(self.feasible(idx), Ok(true)) || self.should_prune(idx) {
                alive = false;
                break;
            }
        }
        if alive {
            let next = prefix.last().map_or(0, |&i| i + 1);
            self.dfs(next);
        }
        while let Some(idx) = placed.pop() {
            self.unplace(idx);
        }
        self.flush();
        self.best
    }
}

/// Top-level branches: the first row, plus the second row when `n ≥ 2`.
fn branches(p: &Problem) -> Vec<Vec<usize>> {
    let firsts = p.first_row_choices();
    if p.n == 1 {
        return firsts.into_iter().map(|i| vec![i]).collect();
    }
    firsts
        .into_iter()
        .flat_map(|i| (i + 1..p.cands.len()).map(move |j| vec![i, j]))
        .collect()
}

fn run_all(p: &Problem, sh: &Shared, work: &[Vec<usize>], threads: Option<usize>) -> Result<Vec<Option<(u64, Vec<u16>)>>, SearchError> {
    let sequential = threads == Some(1) || !crate::par::enabled();
    if sequential {
        return Ok(work.iter().map(|b| Worker::new(p, sh).run_branch(b)).collect());
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let go = || -> Vec<_> {
            work.par_iter()
                .map(|b| Worker::new(p, sh).run_branch(b))
                .collect()
        };
        match threads {
            None => Ok(go()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
                Ok(pool.install(go))
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    unreachable!("sequential path handles builds without rayon")
}

/// Maximum `|det|` over `class(n, k)`.
///
/// When `exhaustive` is set in the result, `max_abs_det` is the true
/// maximum. The witness is the first maximiser in canonical order, so it is
/// the same for any thread count.
pub fn search_max_det(
    class: MatrixClass,
    n: usize,
    k: usize,
    config: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    let limit = config.max_n.unwrap_or(class.default_max_n()).min(HARD_MAX_N);
    if n > limit {
        return Err(SearchError::TooLarge {
            class: class.letter(),
            n,
            limit,
        });
    }
    if n == 0 || k == 0 || k > n {
        return Err(SearchError::Invalid(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if config.threads == Some(0) {
        return Err(SearchError::Invalid("threads must be positive".into()));
    }
    let p = Problem::new(class, n, k, config.prune)?;
    let sh = Shared {
        best: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        budget: config.budget,
    };
    let work = branches(&p);
    let results = run_all(&p, &sh, &work, config.threads)?;

    let mut best: Option<(u64, Vec<u16>)> = None;
    for r in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| r.0 > *b) {
            best = Some(r);
        }
    }
    let (max, witness) = match best {
        Some((v, rows)) => (v, p.to_matrix(&rows)),
        None => (0, p.fallback_witness()),
    };
    Ok(SearchResult {
        class,
        n,
        k,
        max_abs_det: BigInt::from(max),
        witness,
        nodes_explored: sh.nodes.load(Ordering::Relaxed),
        exhaustive: !sh.stop.load(Ordering::Relaxed),
    })
}
