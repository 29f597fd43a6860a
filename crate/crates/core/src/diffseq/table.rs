use std::fmt;

use num_traits::Zero;

use super::Polynomial;
use crate::arith::Rational;
use crate::{Error, Result};

/// Rows of successive forward differences: `rows[0]` is the input sequence
/// and `rows[m + 1][j] = rows[m][j + 1] - rows[m][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceTable {
    rows: Vec<Vec<Rational>>,
    step: Option<Rational>,
}

/// Builds the difference table of `seq` up to order `max_order`.
pub fn difference_table(seq: &[Rational], max_order: usize) -> Result<DifferenceTable> {
    if max_order >= seq.len() {
        return Err(Error::OrderTooLarge {
            order: max_order,
            len: seq.len(),
        });
    }
    let mut rows = Vec::with_capacity(max_order + 1);
    rows.push(seq.to_vec());
    for m in 0..max_order {
        let next = rows[m].windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    Ok(DifferenceTable { rows, step: None })
}

impl DifferenceTable {
    /// Table of `u_j = poly(start + j * step)` for `j < points`.
    pub fn from_polynomial(
        poly: &Polynomial,
        start: &Rational,
        step: &Rational,
        points: usize,
        max_order: usize,
    ) -> Result<Self> {
        if step.is_zero() {
            return Err(Error::ZeroStep);
        }
        let seq: Vec<Rational> = (0..points)
            .map(|j| poly.eval(&(start + step * Rational::from_integer(j.into()))))
            .collect();
        let mut table = difference_table(&seq, max_order)?;
        table.step = Some(step.clone());
        Ok(table)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, order: usize) -> Option<&[Rational]> {
        self.rows.get(order).map(Vec::as_slice)
    }

    /// Highest difference order present.
    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn step(&self) -> Option<&Rational> {
        self.step.as_ref()
    }

    /// The row of highest order.
    pub fn last_row(&self) -> &[Rational] {
        self.rows.last().expect("table has at least one row")
    }
}

/// One row per line, entries separated by single spaces, order 0 first.
impl fmt::Display for DifferenceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
