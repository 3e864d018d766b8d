//! A randomness test battery for raw bit streams, built around tests from
//! algorithmic information theory rather than the usual statistical suites:
//! book stack (move-to-front), Borel normality, a bit-driven probabilistic
//! compositeness battery over Carmichael numbers, sliding-window entropy
//! estimation, and random-walk range. Per-source metric vectors are compared
//! with exact two-sample Kolmogorov-Smirnov, Shapiro-Wilk, and Welch's t.
//!
//! The `aitrand` binary exposes generation (`gen`), single tests (`test`),
//! Carmichael enumeration (`carmichael`), and the full battery (`analyze`).

pub mod ait_tests;
pub mod battery;
pub mod bitstream;
pub mod error;
pub mod number_theory;
pub mod sources;
pub mod stats;

pub use error::{Error, Result};
