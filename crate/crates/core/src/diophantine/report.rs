//! Streaming branch scans and their line-oriented report records.
//!
//! JSON lines carry one object per line tagged by `"record"`: `"step"` for
//! each `p`, then a single `"summary"`. CSV uses the fixed columns in
//! [`CSV_COLUMNS`] and ends with one `# summary` comment line.

use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{certify_steps, BoundGrade, Branch, StepCertificate};
use crate::arith::{Precision, Verdict};

pub const DEFAULT_DIGITS: usize = 30;
pub const CHECKPOINT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub x_prime: u64,
    pub n: u32,
    pub a: u64,
    pub p: u64,
    /// `z_p^n` as exact decimal digits.
    pub zn: String,
    pub is_integer: bool,
    pub step_lo: String,
    pub step_hi: String,
    /// Step against 1; `greater` certifies the lower bound.
    pub above_one: Verdict,
    /// Step against `(A + 1)^(1/n)`; `less` certifies the upper bound.
    pub below_bound: Verdict,
    /// `Step(p + 1)` against `Step(p)`, unit branches only.
    pub increasing: Option<Verdict>,
    pub bits: u32,
}

impl ScanRecord {
    fn from_certificate(branch: &Branch, cert: &StepCertificate, digits: usize) -> Self {
        let (step_lo, step_hi) = cert.step.to_decimal(digits);
        ScanRecord {
            x_prime: branch.x_prime(),
            n: branch.power(),
            a: branch.coeff(),
            p: cert.p,
            zn: branch.zn(cert.p).to_string(),
            is_integer: branch.is_integer_point(cert.p),
            step_lo,
            step_hi,
            above_one: cert.above_one,
            below_bound: cert.below_bound,
            increasing: cert.increasing,
            bits: cert.bits,
        }
    }

    fn verdicts(&self) -> impl Iterator<Item = (Verdict, Verdict)> + '_ {
        [
            Some((self.above_one, Verdict::Greater)),
            Some((self.below_bound, Verdict::Less)),
            self.increasing.map(|v| (v, Verdict::Greater)),
        ]
        .into_iter()
        .flatten()
    }

    pub fn is_undecided(&self) -> bool {
        self.verdicts().any(|(v, _)| !v.is_decided())
    }

    pub fn is_violation(&self) -> bool {
        self.verdicts().any(|(v, want)| v.is_decided() && v != want)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub x_prime: u64,
    pub n: u32,
    pub a: u64,
    pub p_max: u64,
    pub grade: BoundGrade,
    pub points: u64,
    pub integer_points: Vec<u64>,
    pub certified_bounds: u64,
    pub certified_monotone: u64,
    pub violations: Vec<u64>,
    pub undecided: Vec<u64>,
    pub start_bits: u32,
    pub max_bits: u32,
    pub digits: usize,
}

impl ScanSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ReportLine {
    Step(ScanRecord),
    Summary(ScanSummary),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub branch: Branch,
    pub p_max: u64,
    pub precision: Precision,
    pub digits: usize,
    pub checkpoint: u64,
}

impl ScanConfig {
    pub fn new(branch: Branch, p_max: u64) -> Self {
        ScanConfig {
            branch,
            p_max,
            precision: Precision::default(),
            digits: DEFAULT_DIGITS,
            checkpoint: CHECKPOINT,
        }
    }
}

/// Scans `p = 0..=p_max`, handing records to `sink` in order of `p` once per
/// checkpoint block. Memory is bounded by the checkpoint size.
pub fn run_scan<E>(
    cfg: &ScanConfig,
    mut sink: impl FnMut(&[ScanRecord]) -> Result<(), E>,
) -> Result<ScanSummary, E> {
    let branch = cfg.branch;
    let monotone = branch.is_unit();
    let mut summary = ScanSummary {
        x_prime: branch.x_prime(),
        n: branch.power(),
        a: branch.coeff(),
        p_max: cfg.p_max,
        grade: BoundGrade::of(&branch),
        points: 0,
        integer_points: Vec::new(),
        certified_bounds: 0,
        certified_monotone: 0,
        violations: Vec::new(),
        undecided: Vec::new(),
        start_bits: cfg.precision.start_bits,
        max_bits: cfg.precision.max_bits,
        digits: cfg.digits,
    };
    let checkpoint = cfg.checkpoint.max(1);
    let mut start = 0u64;
    loop {
        let end = start.saturating_add(checkpoint - 1).min(cfg.p_max);
        let certs = certify_steps(&branch, start..=end, cfg.precision, monotone);
        let records: Vec<ScanRecord> = certs
            .par_iter()
            .map(|c| ScanRecord::from_certificate(&branch, c, cfg.digits))
            .collect();
        for (c, r) in certs.iter().zip(&records) {
            summary.points += 1;
            if r.is_integer {
                summary.integer_points.push(r.p);
            }
            if c.bounds_certified() {
                summary.certified_bounds += 1;
            }
            if c.monotone_certified() == Some(true) {
                summary.certified_monotone += 1;
            }
            if r.is_violation() {
                summary.violations.push(r.p);
            } else if r.is_undecided() {
                summary.undecided.push(r.p);
            }
        }
        sink(&records)?;
        if end == cfg.p_max {
            break;
        }
        start = end + 1;
    }
    Ok(summary)
}

/// Column order of CSV reports.
pub const CSV_COLUMNS: [&str; 12] = [
    "x_prime",
    "n",
    "a",
    "p",
    "zn",
    "is_integer",
    "step_lo",
    "step_hi",
    "above_one",
    "below_bound",
    "increasing",
    "bits",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

pub fn csv_row(r: &ScanRecord) -> String {
    let increasing = r.increasing.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.x_prime,
        r.n,
        r.a,
        r.p,
        r.zn,
        r.is_integer,
        r.step_lo,
        r.step_hi,
        r.above_one,
        r.below_bound,
        increasing,
        r.bits
    )
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn csv_summary(s: &ScanSummary) -> String {
    format!(
        "# summary grade={} points={} certified_bounds={} certified_monotone={} \
         integer_points=[{}] violations=[{}] undecided=[{}] bits={}..{} digits={}",
        s.grade.label().replace(' ', "_"),
        s.points,
        s.certified_bounds,
        s.certified_monotone,
        join(&s.integer_points),
        join(&s.violations),
        join(&s.undecided),
        s.start_bits,
        s.max_bits,
        s.digits
    )
}

pub fn write_json_line(w: &mut impl Write, line: &ReportLine) -> io::Result<()> {
    serde_json::to_writer(&mut *w, line)?;
    w.write_all(b"\n")
}

/// Parses a JSON-lines report, skipping blank lines.
pub fn read_json_lines(r: impl BufRead) -> io::Result<Vec<ReportLine>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}
