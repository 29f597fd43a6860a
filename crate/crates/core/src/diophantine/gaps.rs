use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{step, BoundGrade, Branch};
use crate::arith::{
    fractional_part_interval, integer_nth_root, integer_nth_root_u128, nth_root_of_integer,
    Precision, RealInterval,
};
use crate::{Error, Result};

fn check_power(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("power must be at least 2, got {n}")));
    }
    Ok(())
}

/// Enclosure of `1 / ((A + 1)^(1/n) - 1)`.
pub fn gap_threshold(n: u32, a: u64, bits: u32) -> Result<RealInterval> {
    check_power(n)?;
    let root = nth_root_of_integer(&BigUint::from(a + 1), n, bits);
    (&root - &RealInterval::from_integer(1)).recip()
}

/// `floor` of an irrational threshold, decided once the enclosure sits
/// inside one unit interval.
fn irrational_threshold_floor(n: u32, a: u64, precision: Precision) -> Result<u64> {
    precision
        .escalate(|bits| {
            let t = gap_threshold(n, a, bits).ok()?;
            let lo = t.lo().floor();
            (lo == t.hi().floor()).then_some(lo)
        })
        .and_then(|f| to_u64(&f))
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Domain(format!("{v} does not fit in 64 bits")))
}

/// `ceil(1 / ((A + 1)^(1/n) - 1))`, the least index distance between two
/// integer points of a branch.
///
/// When `A + 1` is a perfect nth power the threshold is rational and at most
/// one, so the ceiling is exactly 1. Otherwise the threshold is irrational,
/// never an integer, and its ceiling is `floor + 1` once certified.
pub fn min_gap(n: u32, a: u64, precision: Precision) -> Result<u64> {
    check_power(n)?;
    if a == 0 {
        return Err(Error::Domain("coefficient A must be at least 1".into()));
    }
    if integer_nth_root_u128(a as u128 + 1, n).1 {
        return Ok(1);
    }
    Ok(irrational_threshold_floor(n, a, precision)? + 1)
}

/// Largest `y` strictly below `1 / (2^(1/n) - 1)`: no solution of
/// `z^n = x^n + y^n` with `x > y` has its smaller leg at or below it.
pub fn fermat_y_bound(n: u32, precision: Precision) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!("power must be at least 3, got {n}")));
    }
    irrational_threshold_floor(n, 1, precision)
}

/// `min_gap(n, 1) - j`, the least distance to the next integer point when
/// the current fractional part is below `(2^(1/n) - 1) j`.
///
/// Requires `(2^(1/n) - 1) j < 1`, certified by intervals.
pub fn conditional_gap_bound(n: u32, j: u64, precision: Precision) -> Result<u64> {
    check_power(n)?;
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let one = RealInterval::from_integer(1);
    let jj = RealInterval::from_integer(j);
    let ord = precision.escalate(|bits| {
        let root = nth_root_of_integer(&BigUint::from(2u32), n, bits);
        (&(&root - &one) * &jj).certified_cmp(&one)
    })?;
    if ord != Ordering::Less {
        return Err(Error::HypothesisViolation(format!(
            "(2^(1/{n}) - 1) * {j} >= 1"
        )));
    }
    Ok(min_gap(n, 1, precision)? - j)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracEntry {
    /// Index of the last step included.
    pub p: u64,
    /// `{Step(p)}`.
    pub frac: RealInterval,
    /// `sum_{k <= p} {Step(k)}`.
    pub running: RealInterval,
    /// Whether `z_{p+1}` is an integer; the running sum is then exact.
    pub resynced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracAccumulation {
    pub branch: Branch,
    pub entries: Vec<FracEntry>,
    /// Number of terms `j` at which the running sum first reaches 1.
    pub first_crossing: Option<u64>,
    /// `running + m` encloses `z_m - x'` at every entry.
    pub telescoping_ok: bool,
}

/// Running sums of `{Step(k)}` for `k < p_max` on a unit branch.
///
/// Every step has integer part exactly 1, so after `m` terms the running
/// sum is `z_m - x' - m`. Whether it has reached 1 is decided by intervals
/// and, when they straddle 1, exactly by `z_m^n >= (x' + m + 1)^n`.
pub fn frac_accumulation(
    branch: &Branch,
    p_max: u64,
    precision: Precision,
) -> Result<FracAccumulation> {
    if !branch.is_unit() {
        return Err(Error::Domain(
            "fractional accumulation requires A = 1".into(),
        ));
    }
    if p_max == 0 {
        return Err(Error::Domain("p_max must be at least 1".into()));
    }
    let one = RealInterval::from_integer(1);
    let x_prime = branch.x_prime();
    let n = branch.power();
    let mut running = RealInterval::from_integer(0);
    let mut entries = Vec::with_capacity(p_max as usize);
    let mut first_crossing = None;
    let mut telescoping_ok = true;

    for p in 0..p_max {
        let (frac, fl) = precision
            .escalate(|bits| fractional_part_interval(&step(branch, p, bits).interval).ok())?;
        if fl != BigInt::from(1) {
            return Err(Error::HypothesisViolation(format!(
                "floor(Step({p})) = {fl} on {branch}"
            )));
        }
        let m = p + 1;
        let resynced = branch.is_integer_point(m);
        running = if resynced {
            let z = integer_nth_root(&branch.zn(m), n).0;
            RealInterval::from_integer(BigInt::from(z) - BigInt::from(x_prime) - BigInt::from(m))
        } else {
            &running + &frac
        };

        if first_crossing.is_none() {
            let crossed = match running.certified_cmp(&one) {
                Some(Ordering::Less) => false,
                Some(_) => true,
                None => {
                    let rhs = Pow::pow(&BigUint::from(x_prime + m + 1), n);
                    branch.zn(m) >= rhs
                }
            };
            if crossed {
                first_crossing = Some(m);
            }
        }

        let shifted = &running + &RealInterval::from_integer(m);
        let target =
            &branch.z_interval(m, precision.start_bits) - &RealInterval::from_integer(x_prime);
        if matches!(
            shifted.certified_cmp(&target),
            Some(Ordering::Less | Ordering::Greater)
        ) {
            telescoping_ok = false;
        }

        entries.push(FracEntry {
            p,
            frac,
            running: running.clone(),
            resynced,
        });
    }

    Ok(FracAccumulation {
        branch: *branch,
        entries,
        first_crossing,
        telescoping_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapAuditReport {
    pub branch: Branch,
    pub p_max: u64,
    pub grade: BoundGrade,
    pub integer_points: Vec<u64>,
    pub gaps: Vec<u64>,
    pub min_gap_required: u64,
    /// Consecutive integer points `(k, k + i)` with `i` below the bound.
    pub violations: Vec<(u64, u64)>,
}

impl GapAuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const AUDIT_CHUNK: u64 = 10_000;

/// Integer points of `branch` with `p <= p_max`, in increasing order.
pub fn integer_points(branch: &Branch, p_max: u64) -> Vec<u64> {
    let chunks: Vec<u64> = (0..=p_max / AUDIT_CHUNK).collect();
    chunks
        .par_iter()
        .flat_map_iter(|&c| {
            let start = c * AUDIT_CHUNK;
            let end = (start + AUDIT_CHUNK - 1).min(p_max);
            (start..=end).filter(|&p| branch.is_integer_point(p))
        })
        .collect()
}

/// Lists every integer point with `p <= p_max` exactly and checks each
/// consecutive gap against `min_gap(n, A)`.
pub fn gap_audit(branch: &Branch, p_max: u64, precision: Precision) -> Result<GapAuditReport> {
    let min_gap_required = min_gap(branch.power(), branch.coeff(), precision)?;
    let points = integer_points(branch, p_max);
    let gaps: Vec<u64> = points.windows(2).map(|w| w[1] - w[0]).collect();
    let violations = points
        .windows(2)
        .filter(|w| w[1] - w[0] < min_gap_required)
        .map(|w| (w[0], w[1]))
        .collect();
    Ok(GapAuditReport {
        branch: *branch,
        p_max,
        grade: BoundGrade::of(branch),
        integer_points: points,
        gaps,
        min_gap_required,
        violations,
    })
}
