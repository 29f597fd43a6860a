//! nth derivative at `x0` from samples `f(x + i k)`, `i = 0..=n`.
//!
//! Expanding `f` in Taylor form about `x0` and taking the nth difference of
//! the samples annihilates every term of the Taylor polynomial except the
//! nth, which contributes `f^(n)(x0) k^n`. What is left is a sum of
//! Lagrange remainders `f^(n+1)(xi_i) / (n+1)! * (x - x0 + i k)^(n+1)`.
//! The remainders are bounded with a caller-declared `M >= |f^(n+1)|` on the
//! hull of `x0` and the sample nodes; `M` is never estimated here.
//!
//! Samples of transcendental functions are plain `f64`. When samples are
//! exact rationals use [`estimate_nth_derivative_exact`].

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::diffseq::{binomial_row, factorial, forward_difference, Polynomial};
use crate::{Error, Result};

/// Sample geometry plus the sampled values `values[i] = f(x + i k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    x: f64,
    x0: f64,
    k: f64,
    n: usize,
    values: Vec<f64>,
    domain: (f64, f64),
}

impl SampleGrid {
    /// `domain` is the open interval on which `f` is declared analytic; the
    /// hull of `x0` and every node must lie inside it.
    pub fn new(
        x: f64,
        x0: f64,
        k: f64,
        n: usize,
        values: Vec<f64>,
        domain: (f64, f64),
    ) -> Result<Self> {
        if k == 0.0 {
            return Err(Error::ZeroStep);
        }
        if n == 0 {
            return Err(Error::InvalidGrid("order must be at least 1".into()));
        }
        if values.len() != n + 1 {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples for order {n}, got {}",
                n + 1,
                values.len()
            )));
        }
        if ![x, x0, k].iter().chain(&values).all(|v| v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite input".into()));
        }
        let grid = SampleGrid {
            x,
            x0,
            k,
            n,
            values,
            domain,
        };
        let (lo, hi) = grid.hull();
        if !(domain.0 < lo && hi < domain.1) {
            return Err(Error::InvalidGrid(format!(
                "hull [{lo}, {hi}] is not inside the domain ({}, {})",
                domain.0, domain.1
            )));
        }
        Ok(grid)
    }

    /// Samples `f` at `x + i k` for `i = 0..=n`.
    pub fn from_fn(
        f: impl Fn(f64) -> f64,
        x: f64,
        x0: f64,
        k: f64,
        n: usize,
        domain: (f64, f64),
    ) -> Result<Self> {
        let values = (0..=n).map(|i| f(x + i as f64 * k)).collect();
        Self::new(x, x0, k, n, values, domain)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn step(&self) -> f64 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(move |i| self.x + i as f64 * self.k)
    }

    /// Smallest interval containing `x0` and every node; `M` must bound
    /// `|f^(n+1)|` here.
    pub fn hull(&self) -> (f64, f64) {
        self.nodes()
            .fold((self.x0, self.x0), |(lo, hi), t| (lo.min(t), hi.max(t)))
    }
}

/// Declared bound `M >= sup |f^(n+1)|` over the grid hull.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemainderData {
    m: f64,
}

impl RemainderData {
    pub fn new(m: f64) -> Result<Self> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::Domain(format!(
                "derivative bound must be finite and >= 0, got {m}"
            )));
        }
        Ok(RemainderData { m })
    }

    pub fn bound(&self) -> f64 {
        self.m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub n: usize,
}

/// `(1 / (-k)^n) * sum_i C(n, i) (-1)^i values[i]`.
pub fn estimate_nth_derivative(grid: &SampleGrid) -> f64 {
    let n = grid.n;
    let row = binomial_row(n);
    // Neumaier summation of the alternating sum.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (i, (v, c)) in grid.values.iter().zip(row.iter()).enumerate() {
        let c = c.to_f64().unwrap_or(f64::INFINITY);
        let term = if i % 2 == 0 { c * v } else { -c * v };
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    (sum + comp) / (-grid.k).powi(n as i32)
}

/// `M / ((n+1)! |k|^n) * sum_i C(n, i) |x - x0 + i k|^(n+1)`.
///
/// When `x == x0` the `i = 0` term is zero, leaving the sum over `i >= 1`.
pub fn remainder_bound(grid: &SampleGrid, rem: &RemainderData) -> f64 {
    if rem.m == 0.0 {
        return 0.0;
    }
    let n = grid.n;
    let row = binomial_row(n);
    let offset = grid.x - grid.x0;
    let sum: f64 = row
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let d = (offset + i as f64 * grid.k).abs();
            c.to_f64().unwrap_or(f64::INFINITY) * d.powi(n as i32 + 1)
        })
        .sum();
    let denom = factorial(n + 1).to_f64().unwrap_or(f64::INFINITY) * grid.k.abs().powi(n as i32);
    rem.m * sum / denom
}

/// Bound on the floating-point error of [`estimate_nth_derivative`], assuming
/// each sample is correctly rounded: `(n + 3) eps sum_i C(n, i) |values[i]| / |k|^n`.
pub fn rounding_allowance(grid: &SampleGrid) -> f64 {
    let n = grid.n;
    let row = binomial_row(n);
    let mass: f64 = grid
        .values
        .iter()
        .zip(row.iter())
        .map(|(v, c)| c.to_f64().unwrap_or(f64::INFINITY) * v.abs())
        .sum();
    (n as f64 + 3.0) * f64::EPSILON * mass / grid.k.abs().powi(n as i32)
}

pub fn estimate(grid: &SampleGrid, rem: &RemainderData) -> DerivativeEstimate {
    DerivativeEstimate {
        value: estimate_nth_derivative(grid),
        error_bound: remainder_bound(grid, rem),
        n: grid.n,
    }
}

/// Exact counterpart of [`estimate_nth_derivative`] for rational samples
/// `values[i] = f(x + i k)`.
pub fn estimate_nth_derivative_exact(values: &[Rational], k: &Rational) -> Result<Rational> {
    if k.is_zero() {
        return Err(Error::ZeroStep);
    }
    if values.len() < 2 {
        return Err(Error::InvalidGrid("need at least two samples".into()));
    }
    let n = values.len() - 1;
    Ok(forward_difference(values) / num_traits::pow(k.clone(), n))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub k: f64,
    pub estimate: f64,
    pub bound: f64,
}

/// Estimates `f^(n)(x0)` from grids started at `x0` for each step in
/// `k_schedule`.
pub fn convergence_study<F>(
    f: F,
    x0: f64,
    n: usize,
    k_schedule: &[f64],
    rem: &RemainderData,
    domain: (f64, f64),
) -> Result<Vec<ConvergenceRow>>
where
    F: Fn(f64) -> f64 + Sync,
{
    k_schedule
        .par_iter()
        .map(|&k| {
            let grid = SampleGrid::from_fn(&f, x0, x0, k, n, domain)?;
            let est = estimate(&grid, rem);
            Ok(ConvergenceRow {
                k,
                estimate: est.value,
                bound: est.error_bound,
            })
        })
        .collect()
}

/// Functions the command line can sample by name.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltinFunction {
    Exp,
    Sin,
    Cos,
    Polynomial(Polynomial),
}

impl BuiltinFunction {
    pub fn parse(spec: &str) -> Result<Self> {
        match spec.trim() {
            "exp" => Ok(BuiltinFunction::Exp),
            "sin" => Ok(BuiltinFunction::Sin),
            "cos" => Ok(BuiltinFunction::Cos),
            other => {
                let body = other.strip_prefix("poly:").ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown function {other:?}; expected exp, sin, cos or poly:<expr>"
                    ))
                })?;
                Ok(BuiltinFunction::Polynomial(body.parse()?))
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.derivative(0, t)
    }

    /// Analytic `f^(order)(t)`.
    pub fn derivative(&self, order: usize, t: f64) -> f64 {
        // sin, cos, -sin, -cos, starting from sin at `shift` 0
        let trig = |shift: usize| match (order + shift) % 4 {
            0 => t.sin(),
            1 => t.cos(),
            2 => -t.sin(),
            _ => -t.cos(),
        };
        match self {
            BuiltinFunction::Exp => t.exp(),
            BuiltinFunction::Sin => trig(0),
            BuiltinFunction::Cos => trig(1),
            BuiltinFunction::Polynomial(p) => p.nth_derivative(order).eval_f64(t),
        }
    }
}
