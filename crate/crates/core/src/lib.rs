//! Semantics-preserving mutation of Python programs, execution-checked
//! equivalence, and an iterative output-prediction harness for code models.
//!
//! The crate is organised as a pipeline:
//!
//! * [`program`] parses Python 3 source, prints it back canonically and
//!   resolves identifier scopes.
//! * [`mutation`] finds and applies the five rewrite operators and samples
//!   variants per program.
//! * [`verifier`] runs candidates against their test suites in a fresh
//!   interpreter process.
//! * [`harness`] drives chat endpoints through the predict/feedback loop.
//! * [`metrics`] folds session outcomes into robustness tables.
//! * [`pipeline`] ties the stages together behind the command line.

pub mod harness;
pub mod metrics;
pub mod mutation;
pub mod pipeline;
pub mod program;
pub mod verifier;
