//! Exact, mechanical verification of Sun's binomial-coefficient identity
//!
//! ```text
//! sum_i (x+m+1) (-1)^i C(x+y+i, m-i) C(y+2i, i) - sum_i C(x+i, m-i) (-4)^i = (x-m) C(x, m)
//! ```
//!
//! and its one-parameter generalization in `z`, by way of weight-reversing
//! involutions on domino, omino and marked-matrix configurations.
//!
//! * [`exact`]: big integers, rationals, polynomials, generalized binomials.
//! * [`sums`]: direct summation of every identity and its reduced forms.
//! * [`dominoes`], [`ominoes`], [`matrices`]: the configuration engines.
//! * [`verifier`]: three-way checks (formula, signed enumeration, fixed
//!   points) over parameter sweeps, with JSON/CSV reports.
//! * [`cli`]: the command-line front end behind the `sun-identity` binary.

pub mod acceptance;
pub mod cli;
pub mod dominoes;
pub mod exact;
pub mod matrices;
pub mod ominoes;
pub mod strip;
pub mod sums;
pub mod verifier;

pub use strip::{ConfigError, InvolutionOutcome, ToggleKind, WindowKind};
