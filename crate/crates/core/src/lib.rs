//! Exact q-series engine for the Rogers-Ramanujan continued fraction.
//!
//! The crate builds truncated Laurent series on the `(1/5)·Z` exponent
//! lattice, constructs theta functions and the Rogers-Ramanujan functions
//! from them, and verifies identities between expressions by exact integer
//! cancellation up to a chosen truncation order.

pub mod error;
pub mod expr;
pub mod partitions;
pub mod registry;
pub mod report;
pub mod rr;
pub mod series;
pub mod theta;

pub use error::{Error, EvalError, ParseError, Result, SeriesError};
pub use expr::{evaluate, parse, Expr, PrefixedSeries};
pub use registry::{IdentityEntry, Registry};
pub use series::{LaurentSeries, Status, VerifyOutcome};

/// Lattice denominator used for every fractional exponent in the engine.
pub const LATTICE: u32 = 5;
