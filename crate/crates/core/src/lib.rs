//! Exact enumeration of the monomials of a polynomial that is only reachable
//! through an evaluation oracle.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: big rationals, univariate interpolation and the seeded random
//!   stream every probabilistic procedure draws from.
//! - [`blackbox`]: the oracle handle with exact call accounting, and the
//!   evaluation-preserving wrappers (restriction, subtraction, constant
//!   stripping, univariate collapse).
//! - [`algorithms`]: zero tests, monomial finders and the three enumerators
//!   (incremental, polynomial-delay multilinear, degree two).
//! - [`polyzoo`]: concrete oracles built from determinants and Pfaffians.
//! - [`harness`]: delay / oracle-call metrics and brute-force reference
//!   oracles.

pub mod algorithms;
pub mod arith;
pub mod blackbox;
mod error;
pub mod harness;
pub mod poly;
pub mod polyzoo;

pub use algorithms::{
    Algorithm, EnumerationSink, Enumerator, EnumeratorConfig, ErrorBudget, Mode, OutputEvent,
    ZeroTestVariant,
};
pub use arith::{BigInt, RandomStream, Rational, UniPoly};
pub use blackbox::{BlackBox, OracleStats, SupportSet};
pub use error::{Error, Result};
pub use poly::{Monomial, SparsePolynomial};
