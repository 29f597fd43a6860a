//! Exact difference sequences and two of their applications.
//!
//! * [`diffseq`]: difference tables and the constant nth difference
//!   `a0 * k^n * n!` of a degree-n polynomial, checked in exact rationals.
//! * [`derivative`]: the nth derivative at `x0` from n+1 samples started at
//!   an arbitrary `x`, with a Lagrange-remainder error bound.
//! * [`diophantine`]: the branches `z^n = A(x'+p)^n + p^n`, their step
//!   function `z_{p+1} - z_p`, interval-certified step bounds and the
//!   minimum index gaps between integer points.
//!
//! All irrational comparisons go through [`arith`], which certifies strict
//! inequalities with dyadic interval enclosures and decides integrality with
//! exact integer roots.

pub mod arith;
pub mod derivative;
pub mod diffseq;
pub mod diophantine;
mod error;

pub use arith::{Dyadic, Precision, Rational, RealInterval, Verdict};
pub use error::{Error, Result};
