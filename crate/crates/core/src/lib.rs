//! Exact-arithmetic toolkit for the maximal determinant problem on sparse
//! zero-one matrices.
//!
//! * [`linalg`] / [`matrix`]: fraction-free determinants, Gram matrices,
//!   squared volumes and class predicates for R, S and T.
//! * [`bounds`]: closed-form upper and lower bounds in the log domain.
//! * [`schedule`]: greedy row-removal schedules and their volume bound.
//! * [`constructions`]: design incidence matrices and fixed extremal examples.
//! * [`search`]: branch-and-bound maximum-determinant search, the ground
//!   truth every bound is certified against.
//! * [`report`], [`verify`]: serialisable reports and the reproduction suite.

pub mod bounds;
pub mod certify;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod logmag;
pub mod matrix;
pub mod par;
pub mod report;
pub mod schedule;
pub mod search;
pub mod verify;

pub use error::{BoundError, ConstructionError, LinalgError, SearchError};
pub use linalg::{class_membership, det_exact, gram, vol_squared, ClassFlags};
pub use logmag::LogMagnitude;
pub use matrix::{IntMatrix, ZeroOneMatrix};
pub use schedule::RemovalSchedule;
pub use search::{MatrixClass, SearchConfig, SearchResult};
