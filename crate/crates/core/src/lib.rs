//! Exact-arithmetic toolkit for curve counting on Calabi-Yau 4-folds.
//!
//! The crate provides:
//! - truncated Novikov series and curve-class lattice combinatorics ([`foundation`]),
//! - a data model for example geometries with their GV input tables ([`geometry`]),
//! - genus 0/1 multiple-cover conversions between GW series and GV tables ([`gv_series`]),
//! - the meeting-invariant recursion ([`meeting`]),
//! - the WDVV pole-cancellation identities in three equivalent forms ([`constraints`]),
//! - a symbolic intersection-theory engine for products of projective spaces and
//!   projective bundles, with Chern/Todd/Riemann-Roch calculus ([`chow`]),
//! - end-to-end descendent invariant pipelines for the example geometries ([`dt4`]),
//! - evaluation of the genus-1 descendent formula and comparisons ([`conjecture`]),
//! - the ideal-geometry consistency harness ([`heuristic`]).
//!
//! All arithmetic is exact over arbitrary-precision rationals; nothing is ever
//! rounded.

pub mod chow;
pub mod conjecture;
pub mod constraints;
pub mod dt4;
pub mod foundation;
pub mod geometry;
pub mod gv_series;
pub mod heuristic;
pub mod meeting;
pub mod rational;

pub use rational::Rat;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not effective: {0:?}")]
    NotEffective(Vec<i64>),
    #[error("outside table: class {beta:?} of degree {degree} exceeds table bound {bound}")]
    OutsideTable {
        beta: Vec<i64>,
        degree: i64,
        bound: i64,
    },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("incomplete GV table: missing {0}")]
    IncompleteGvTable(String),
    #[error("incomplete meeting table: missing pair {0:?}, {1:?}")]
    IncompleteMeetingTable(Vec<i64>, Vec<i64>),
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("constraint requires alpha·beta = 0, got {0}")]
    AlphaBetaNonzero(Box<Rat>),
    #[error("pole locus: alpha·beta = 0, use the constraints module")]
    PoleLocus,
    #[error("degenerate bidegree: d1 and d2 must be positive")]
    DegenerateBidegree,
    #[error("rank mismatch: ch0 component is {found}, expected {expected}")]
    RankMismatch { expected: Box<Rat>, found: Box<Rat> },
    #[error("fiber generator {0} not in ring")]
    FiberGenMissing(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("geometry {0} carries no elliptic pairing data")]
    MissingEllipticData(String),
    #[error("internal recursion error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
