//! Exact verification engine for a family of coloured-partition identities of
//! Rogers-Ramanujan type.
//!
//! The engine works with partitions whose parts carry one of five colours
//! (`a`, `b`, `ab`, `a²`, `b²`), subject to a total order on coloured
//! integers and minimal-difference conditions given by an 8x5 gap matrix.
//! It provides:
//!
//! - [`colored`]: coloured integers, the total order, the gap matrix, and
//!   admissibility of coloured partitions;
//! - [`series`]: exact truncated formal series in three variables `a, b, q`
//!   with explicit completeness-horizon tracking;
//! - [`table`]: exact count tables indexed by `(u, v, n)`, the common
//!   currency between enumerators and the series engine;
//! - [`enumerate`]: brute-force enumerators for coloured partitions;
//! - [`rules`]: residue-conditioned gap rule sets, overpartitions, and
//!   enumerators for the dilated and classical identities;
//! - [`ladder`]: the generating-function ladder built from q-difference
//!   equations, and replay of the recurrence identities;
//! - [`dilation`]: the three dilations, partition transport, and the
//!   dilated/classical theorem verifiers;
//! - [`report`]: machine-readable pass/fail reports.

pub mod colored;
pub mod dilation;
pub mod enumerate;
pub mod ladder;
pub mod report;
pub mod rules;
pub mod series;
pub mod table;

pub use colored::{Color, ColoredInt, ColoredPartition, Parity};
pub use report::{ReplayReport, Status};
pub use series::{Caps, DilationSpec, TriSeries};
pub use table::CountTable;

/// Errors shared by all modules of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid coloured integer: {0}")]
    InvalidColoredInt(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("caps mismatch: ({0}) vs ({1})")]
    CapsMismatch(Caps, Caps),
    #[error("comparison up to q^{requested} exceeds completeness horizon q^{horizon}")]
    BeyondHorizon { requested: u32, horizon: u32 },
    #[error("substitution requires square exponent caps, got U={0}, V={1}")]
    NonSquareCaps(u32, u32),
    #[error("dilation of a^{u} b^{v} q^{n} yields a negative q-exponent {out}")]
    NegativeExponent { u: u32, v: u32, n: u32, out: i64 },
    #[error("dilation input must be complete to its cap (horizon {horizon} < cap {cap})")]
    IncompleteInput { horizon: u32, cap: u32 },
    #[error("exponent ({u},{v},{n}) outside caps")]
    OutsideCaps { u: u32, v: u32, n: u32 },
    #[error("dilated part of a coloured partition has non-positive value {0}")]
    NonPositiveDilatedPart(i64),
    #[error("rule set invalid: {0}")]
    RuleSet(String),
    #[error("ladder has no series of rank {0}; build it further")]
    MissingRank(u32),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
