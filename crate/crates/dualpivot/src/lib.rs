//! Comparison-count analysis of dual-pivot quicksort.
//!
//! Dual-pivot quicksort picks two pivots `p < q` and classifies every other
//! element as small (`< p`), medium (between) or large (`> q`). Classifying an
//! element takes one or two comparisons depending on which pivot it is compared
//! with first, so the partitioning *strategy* (which pivot to try first)
//! controls the total comparison count. This crate implements two strategies:
//!
//! * **Clairvoyant** — an oracle strategy that knows how many small and large
//!   elements remain and compares with `p` first iff small-remaining ≥
//!   large-remaining. It is a lower-bound yardstick, not an algorithm.
//! * **Count** — an implementable strategy that compares with `p` first iff
//!   small-seen-so-far ≥ large-seen-so-far.
//!
//! The average-case analysis of both strategies reduces to zero statistics of
//! random ±1 lattice paths, which this crate models directly:
//!
//! * [`lattice`] — fixed-length random paths, their zero counts, exact
//!   closed forms, and full enumeration oracles.
//! * [`varlen`] — the variable-length path model induced by a uniformly
//!   random pivot pair.
//! * [`classify`] — the two strategies with exact comparison accounting and
//!   the per-run path correspondence.
//! * [`cost`] — the full sorter, the cost recurrence solver, and exact plus
//!   asymptotic total-cost formulas.
//! * [`exact`] — arbitrary-precision rationals, binomials and harmonic sums
//!   carrying every closed form.
//! * [`precision`] — 192-bit fixed-point evaluation used to resolve
//!   asymptotic residuals far below `f64` resolution.
//! * [`experiment`] — seeded, reproducible Monte Carlo runners and the CSV
//!   emitters behind the command-line harness.
//! * [`verify`] — the self-check suites (identities, enumeration oracles,
//!   recurrence-vs-theorem, permutation brute force).
//!
//! Everything stochastic is reproducible from a 64-bit seed; everything exact
//! is computed in rational arithmetic and cross-validated against brute force.

// Parity tests read better as `n % 2 == 0` than as `n.is_multiple_of(2)`.
#![allow(clippy::manual_is_multiple_of)]

pub mod classify;
pub mod cost;
pub mod exact;
pub mod experiment;
pub mod lattice;
pub mod precision;
pub mod varlen;
pub mod verify;

pub use classify::StrategyKind;
pub use exact::Rational;

/// Errors surfaced by operations with restricted domains.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (e.g. `n < 2`).
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid argument (e.g. pivots out of order).
    #[error("argument error: {0}")]
    Argument(String),
    /// Request exceeds a documented size cap (e.g. exhaustive enumeration).
    #[error("size error: {0}")]
    Size(String),
    /// Output stream failure while emitting CSV.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
