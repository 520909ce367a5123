//! Exact-arithmetic toolkit for one-dimensional digital (0,1)-sequences
//! over Z2: generator-matrix families, sequence generation as dyadic
//! rationals, exact L_p discrepancy, and a fast closed-form path for the
//! signed discrepancy integral that needs no point enumeration.
//!
//! Start with the runnable programs under `examples/`; the `nutdisc` binary
//! wraps the same drivers behind a small CLI.

pub mod cli;
pub mod discrepancy;
pub mod drivers;
pub mod dyadic;
pub mod error;
pub mod families;
pub mod gf2;
pub mod report;
pub mod sequence;
pub mod shift;

pub use dyadic::{DyadicRational, PointSet};
pub use error::{Error, Result};
pub use gf2::{BitPattern, BitVector, Gf2Matrix, MatrixSpec};
