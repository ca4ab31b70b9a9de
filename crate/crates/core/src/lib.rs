//! Exact enumeration and machine verification for lecture hall partitions.
//!
//! The library side covers:
//!
//! - [`partition`]: partitions with dual sorted/multiplicity views, plus the
//!   componentwise and multiset operations on raw integer sequences;
//! - [`trapezoid`]: trapezoidal numbers, staircase partitions, growth
//!   increments, and the factorial identity over triangular differences;
//! - [`sets`]: predicates and exhaustive enumerators for the four partition
//!   families sharing a width parameter;
//! - [`bijection`]: the growth machine sending bounded odd partitions to
//!   lecture hall partitions, its trace, the reduction maps, and the
//!   table-backed inverse;
//! - [`qseries`]: truncated bivariate series with exact coefficients and the
//!   generating-function identity checkers;
//! - [`verify`]: the named check suites and the count table;
//! - [`cli`]: the `hallforge` command line front end.

pub mod bijection;
pub mod cli;
pub mod partition;
pub mod qseries;
pub mod report;
pub mod sets;
pub mod trapezoid;
pub mod verify;

pub use bijection::{GrowthState, GrowthTrace, ReductionResult, TraceStep};
pub use partition::{IncrementVector, Partition, PartitionError};
pub use qseries::{BiSeries, TStat, Window};
pub use report::{Counterexample, VerificationReport, VerifyError};
pub use sets::FamilyId;
