use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Branch;
use crate::arith::{
    fractional_part_interval, nth_root_of_integer, Precision, RealInterval, Verdict,
};
use crate::{Error, Result};

/// p values handled by one sequential worker; neighbouring roots are shared
/// inside a block.
pub(crate) const BLOCK: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepValue {
    pub p: u64,
    pub interval: RealInterval,
    /// `{Step}`, present when the enclosure does not straddle an integer.
    pub frac: Option<RealInterval>,
}

/// Enclosure of `z_{p+1} - z_p` with `bits` fractional bits per root.
pub fn step(branch: &Branch, p: u64, bits: u32) -> StepValue {
    let interval = &branch.z_interval(p + 1, bits) - &branch.z_interval(p, bits);
    let frac = fractional_part_interval(&interval).ok().map(|(f, _)| f);
    StepValue { p, interval, frac }
}

/// Enclosure of `(A + 1)^(1/n)`, the upper bound for Step.
pub fn step_upper_bound(branch: &Branch, bits: u32) -> RealInterval {
    nth_root_of_integer(&BigUint::from(branch.coeff() + 1), branch.power(), bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundGrade {
    /// `A = 1`: the bounds are a theorem and the scan confirms them.
    LemmaConfirmed,
    /// `A > 1`: the upper bound is only conjectured; results are empirical.
    Conjecture,
}

impl BoundGrade {
    pub fn of(branch: &Branch) -> Self {
        if branch.is_unit() {
            BoundGrade::LemmaConfirmed
        } else {
            BoundGrade::Conjecture
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            BoundGrade::LemmaConfirmed => "lemma-confirmed",
            BoundGrade::Conjecture => "empirical (conjecture)",
        }
    }
}

/// Verdicts for one Step. A check passes when `above_one` is `Greater`,
/// `below_bound` is `Less` and `increasing` (if requested) is `Greater`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCertificate {
    pub p: u64,
    /// Enclosure at the precision that decided every verdict (or at the cap).
    pub step: RealInterval,
    pub above_one: Verdict,
    pub below_bound: Verdict,
    /// `Step(p + 1)` compared with `Step(p)`.
    pub increasing: Option<Verdict>,
    pub bits: u32,
}

impl StepCertificate {
    pub fn bounds_certified(&self) -> bool {
        self.above_one == Verdict::Greater && self.below_bound == Verdict::Less
    }

    pub fn bounds_violated(&self) -> bool {
        matches!(self.above_one, Verdict::Less | Verdict::Equal)
            || matches!(self.below_bound, Verdict::Greater | Verdict::Equal)
    }

    pub fn bounds_undecided(&self) -> bool {
        !self.above_one.is_decided() || !self.below_bound.is_decided()
    }

    pub fn monotone_certified(&self) -> Option<bool> {
        self.increasing.map(|v| v == Verdict::Greater)
    }
}

struct Level {
    bits: u32,
    bound: RealInterval,
}

fn levels_for(branch: &Branch, precision: Precision) -> Vec<Level> {
    precision
        .levels()
        .map(|bits| Level {
            bits,
            bound: step_upper_bound(branch, bits),
        })
        .collect()
}

fn cmp(a: &RealInterval, b: &RealInterval) -> Option<Verdict> {
    a.certified_cmp(b).map(Verdict::from_ordering)
}

/// Sequential certification of `start..=end`. Roots are computed once at
/// the starting precision and shared between neighbouring steps; only the
/// steps left undecided are recomputed at higher precision.
fn certify_block(
    branch: &Branch,
    start: u64,
    end: u64,
    levels: &[Level],
    monotone: bool,
) -> Vec<StepCertificate> {
    let one = RealInterval::from_integer(1);
    let base = &levels[0];
    let extra = if monotone { 2 } else { 1 };
    let z: Vec<RealInterval> = (start..=end + extra)
        .map(|p| branch.z_interval(p, base.bits))
        .collect();
    let steps: Vec<RealInterval> = z.windows(2).map(|w| &w[1] - &w[0]).collect();

    (start..=end)
        .enumerate()
        .map(|(i, p)| {
            let mut s = steps[i].clone();
            let mut above = cmp(&s, &one);
            let mut below = cmp(&s, &base.bound);
            let mut inc = if monotone {
                cmp(&steps[i + 1], &s)
            } else {
                Some(Verdict::Equal)
            };
            let mut bits = base.bits;
            for level in &levels[1..] {
                if above.is_some() && below.is_some() && inc.is_some() {
                    break;
                }
                bits = level.bits;
                let z0 = branch.z_interval(p, bits);
                let z1 = branch.z_interval(p + 1, bits);
                s = &z1 - &z0;
                above = above.or_else(|| cmp(&s, &one));
                below = below.or_else(|| cmp(&s, &level.bound));
                if inc.is_none() {
                    let next = &branch.z_interval(p + 2, bits) - &z1;
                    inc = cmp(&next, &s);
                }
            }
            let cap = levels.last().map_or(bits, |l| l.bits);
            let undecided = Verdict::Undecided { bits: cap };
            StepCertificate {
                p,
                step: s,
                above_one: above.unwrap_or(undecided),
                below_bound: below.unwrap_or(undecided),
                increasing: monotone.then(|| inc.unwrap_or(undecided)),
                bits,
            }
        })
        .collect()
}

/// Certificates for every `p` in `range`, in order of `p`, computed in
/// parallel over disjoint blocks.
pub fn certify_steps(
    branch: &Branch,
    range: RangeInclusive<u64>,
    precision: Precision,
    monotone: bool,
) -> Vec<StepCertificate> {
    let (start, end) = (*range.start(), *range.end());
    if start > end {
        return Vec::new();
    }
    let levels = levels_for(branch, precision);
    let blocks: Vec<(u64, u64)> = (start..=end)
        .step_by(BLOCK as usize)
        .map(|s| (s, (s + BLOCK - 1).min(end)))
        .collect();
    blocks
        .par_iter()
        .flat_map_iter(|&(s, e)| certify_block(branch, s, e, &levels, monotone))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepBoundsReport {
    pub branch: Branch,
    pub grade: BoundGrade,
    pub p_start: u64,
    pub p_end: u64,
    pub checked: u64,
    pub certified: u64,
    /// p values where a decided verdict contradicts a bound.
    pub violations: Vec<u64>,
    /// `(p, bits)` for verdicts still open at the precision cap.
    pub undecided: Vec<(u64, u32)>,
}

impl StepBoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty() && self.certified == self.checked
    }
}

/// Certifies `1 < Step < (A + 1)^(1/n)` for each `p` in `range`.
pub fn certify_step_bounds(
    branch: &Branch,
    range: RangeInclusive<u64>,
    precision: Precision,
) -> StepBoundsReport {
    let (p_start, p_end) = (*range.start(), *range.end());
    let certs = certify_steps(branch, range, precision, false);
    let mut report = StepBoundsReport {
        branch: *branch,
        grade: BoundGrade::of(branch),
        p_start,
        p_end,
        checked: certs.len() as u64,
        certified: 0,
        violations: Vec::new(),
        undecided: Vec::new(),
    };
    for c in &certs {
        if c.bounds_certified() {
            report.certified += 1;
        } else if c.bounds_violated() {
            report.violations.push(c.p);
        } else {
            report.undecided.push((c.p, c.bits));
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub branch: Branch,
    pub p_start: u64,
    pub p_end: u64,
    pub pairs: u64,
    pub certified: u64,
    pub violations: Vec<u64>,
    pub undecided: Vec<(u64, u32)>,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }
}

/// Certifies `Step(p + 1) > Step(p)` for consecutive pairs inside `range`.
/// A single-element range has no pairs and passes vacuously.
pub fn certify_step_monotone(
    branch: &Branch,
    range: RangeInclusive<u64>,
    precision: Precision,
) -> Result<MonotoneReport> {
    if !branch.is_unit() {
        return Err(Error::Domain(
            "monotonicity is certified for A = 1 only".into(),
        ));
    }
    let (p_start, p_end) = (*range.start(), *range.end());
    let mut report = MonotoneReport {
        branch: *branch,
        p_start,
        p_end,
        pairs: 0,
        certified: 0,
        violations: Vec::new(),
        undecided: Vec::new(),
    };
    if p_end <= p_start {
        return Ok(report);
    }
    for c in certify_steps(branch, p_start..=p_end - 1, precision, true) {
        report.pairs += 1;
        match c.increasing.expect("requested") {
            Verdict::Greater => report.certified += 1,
            Verdict::Undecided { bits } => report.undecided.push((c.p, bits)),
            _ => report.violations.push(c.p),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f64_mid(i: &RealInterval) -> f64 {
        i.midpoint().to_f64()
    }

    #[test]
    fn step_examples() {
        let b = Branch::unit(1, 2).unwrap();
        let s = step(&b, 1, 64);
        assert!((f64_mid(&s.interval) - (13f64.sqrt() - 5f64.sqrt())).abs() < 1e-15);
        assert!((f64_mid(&s.interval) - 1.36949).abs() < 1e-5);
        let s0 = step(&b, 0, 64);
        assert!((f64_mid(&s0.interval) - 1.23607).abs() < 1e-5);
        let frac = s0.frac.unwrap();
        assert!((f64_mid(&frac) - 0.23607).abs() < 1e-5);

        let c = Branch::unit(1, 3).unwrap();
        let s = step(&c, 0, 64);
        assert!((f64_mid(&s.interval) - 1.08008).abs() < 1e-5);
    }

    #[test]
    fn step_width_shrinks_under_refinement() {
        let b = Branch::unit(3, 4).unwrap();
        let coarse = step(&b, 17, 64).interval;
        let fine = step(&b, 17, 256).interval;
        assert!(fine.width() < coarse.width());
        assert!(fine.lo() <= coarse.hi() && coarse.lo() <= fine.hi());
    }

    #[test]
    fn small_grid_certifies() {
        let b = Branch::unit(1, 2).unwrap();
        let r = certify_step_bounds(&b, 0..=500, Precision::default());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, 501);
        assert_eq!(r.grade, BoundGrade::LemmaConfirmed);

        let b = Branch::unit(1, 5).unwrap();
        assert!(certify_step_bounds(&b, 0..=100, Precision::default()).passed());
    }

    #[test]
    fn coefficient_branch_is_conjecture_grade() {
        let b = Branch::new(2, 3, 7).unwrap();
        let r = certify_step_bounds(&b, 0..=200, Precision::default());
        assert_eq!(r.grade, BoundGrade::Conjecture);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.grade.label(), "empirical (conjecture)");
    }

    #[test]
    fn tiny_cap_reports_undecided() {
        // x' = 50, n = 10 keeps Step within 1e-16 of 1 at p = 0.
        let b = Branch::unit(50, 10).unwrap();
        let r = certify_step_bounds(&b, 0..=0, Precision::new(8, 16).unwrap());
        assert_eq!(r.undecided, vec![(0, 16)]);
        assert!(!r.passed());
        assert!(certify_step_bounds(&b, 0..=0, Precision::default()).passed());
    }

    #[test]
    fn monotone_examples() {
        for (x, n) in [(1, 2), (10, 3)] {
            let b = Branch::unit(x, n).unwrap();
            let r = certify_step_monotone(&b, 0..=50, Precision::default()).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.pairs, 50);
        }
        let b = Branch::unit(4, 2).unwrap();
        let r = certify_step_monotone(&b, 7..=7, Precision::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs, 0);
        let a = Branch::new(1, 2, 3).unwrap();
        assert!(certify_step_monotone(&a, 0..=3, Precision::default()).is_err());
    }

    #[test]
    fn block_boundaries_do_not_change_results() {
        let b = Branch::unit(2, 3).unwrap();
        let all = certify_steps(&b, 0..=600, Precision::default(), true);
        let tail = certify_steps(&b, 300..=600, Precision::default(), true);
        assert_eq!(&all[300..], tail.as_slice());
    }
}
