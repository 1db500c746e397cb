//! Laboratory for studying S-parts of sums of terms of integer linear
//! recurrence sequences.
//!
//! The crate is organized around a small pipeline:
//!
//! - [`sint`] — exact big-integer arithmetic: S-part decompositions,
//!   factorization, largest prime factors.
//! - [`recurrence`] — recurrence term generation and certified spectral
//!   analysis of the characteristic polynomial (root enclosures, dominance,
//!   degeneracy verdicts, zero scans).
//! - [`binet`] — recovery and verification of the closed-form coefficients
//!   in `U_n = Σ f_i(n) α_i^n`, plus growth-constant measurement.
//! - [`ksum`] — ordered enumeration of k-term sums, digit codecs for
//!   Zeckendorf-style numeration, vanishing-subsum scans.
//! - [`baker`] — effective-bound calculators: absolute logarithmic heights,
//!   Matveev's explicit lower bound for linear forms in logarithms, and the
//!   full linear-form evaluation chain.
//! - [`spartlab`] — experiment harnesses that tie the above together:
//!   Newton polygons and the δ exponent, S-part exponent series, and the
//!   empirical trend/gap/prime-floor reports.
//!
//! Rigor model: everything that certifies a claim (root isolation, sign
//! decisions, divisibility) is exact big-integer arithmetic; everything
//! numerical is directed-rounding dyadic interval arithmetic from [`ball`],
//! so every reported quantity carries an enclosure.

pub mod ball;
pub mod baker;
pub mod binet;
pub mod error;
pub mod ksum;
pub mod poly;
pub mod recurrence;
pub mod roots;
pub mod sint;
pub mod spartlab;

pub use error::{Error, Result};

/// Crate version, embedded in every emitted report for reproducibility.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
