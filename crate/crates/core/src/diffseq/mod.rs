//! Difference tables and the nth difference of polynomials.
//!
//! Two orientations of the same operator appear in practice: the alternating
//! sum over `P(x - k i)` and the forward table started at the left end of the
//! grid. This module fixes one convention:
//! `binomial_nth_difference(P, x, k, n)` is the forward nth difference of the
//! grid that *ends* at `x`, so with `k = 1` it equals
//! `difference_table(P(0), P(1), ..)[n][x - n]`.

mod newton;
mod polynomial;
mod table;

pub use newton::{
    binomial_nth_difference, binomial_row, factorial, forward_difference, newton_constant,
    verify_newton_theorem, NewtonReport, NewtonSample,
};
pub use polynomial::Polynomial;
pub use table::{difference_table, DifferenceTable};
