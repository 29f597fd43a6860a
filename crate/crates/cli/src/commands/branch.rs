use anyhow::Result;
use serde::Serialize;

use diffseq_core::arith::parse_rational;
use diffseq_core::diophantine::{
    self as dio,
    report::{csv_header, csv_row, csv_summary, run_scan, ReportLine, ScanConfig, ScanSummary},
    Branch,
};
use diffseq_core::RealInterval;

use super::{usage, Ctx};
use crate::cli::{BranchArgs, Format};
use crate::output::Output;

fn branch_of(b: &BranchArgs) -> Result<Branch> {
    Ok(Branch::new(b.x_prime, b.power, b.coeff_a)?)
}

fn endpoints(i: &RealInterval, digits: usize) -> (String, String) {
    i.to_decimal(digits)
}

pub fn scan(out: &mut Output, ctx: &Ctx, b: &BranchArgs, p_max: u64) -> Result<bool> {
    let branch = branch_of(b)?;
    let cfg = ScanConfig {
        precision: ctx.precision,
        digits: ctx.digits,
        ..ScanConfig::new(branch, p_max)
    };
    let format = out.format;
    match format {
        Format::Csv => out.line(csv_header())?,
        Format::Pretty => out.line(format!(
            "{branch}, p = 0..={p_max}, bits {}..{}",
            ctx.precision.start_bits, ctx.precision.max_bits
        ))?,
        Format::JsonLines => {}
    }
    let summary = run_scan(&cfg, |records| -> std::io::Result<()> {
        for r in records {
            match format {
                Format::JsonLines => out.json(&ReportLine::Step(r.clone()))?,
                Format::Csv => out.line(csv_row(r))?,
                Format::Pretty => {
                    let inc = r
                        .increasing
                        .map(|v| format!(" next:{v}"))
                        .unwrap_or_default();
                    out.line(format!(
                        "{:>8} {} [{}, {}] vs1:{} vsbound:{}{inc}",
                        r.p,
                        if r.is_integer { "int" } else { "   " },
                        r.step_lo,
                        r.step_hi,
                        r.above_one,
                        r.below_bound
                    ))?
                }
            }
        }
        // checkpoint
        out.flush()
    })?;
    match format {
        Format::JsonLines => out.json(&ReportLine::Summary(summary.clone()))?,
        Format::Csv => out.line(csv_summary(&summary))?,
        Format::Pretty => pretty_summary(out, &summary)?,
    }
    Ok(summary.passed())
}

fn list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn pretty_summary(out: &mut Output, s: &ScanSummary) -> std::io::Result<()> {
    out.line(format!("grade: {}", s.grade.label()))?;
    out.line(format!(
        "points {}, bounds certified {}, monotone certified {}",
        s.points, s.certified_bounds, s.certified_monotone
    ))?;
    out.line(format!("integer points: [{}]", list(&s.integer_points)))?;
    out.line(format!("violations: [{}]", list(&s.violations)))?;
    out.line(format!("undecided: [{}]", list(&s.undecided)))
}

#[derive(Serialize)]
struct GapRecord<'a> {
    record: &'static str,
    #[serde(flatten)]
    report: &'a dio::GapAuditReport,
}

pub fn gap_audit(out: &mut Output, ctx: &Ctx, b: &BranchArgs, p_max: u64) -> Result<bool> {
    let report = dio::gap_audit(&branch_of(b)?, p_max, ctx.precision)?;
    match out.format {
        Format::JsonLines => out.json(&GapRecord {
            record: "gap_audit",
            report: &report,
        })?,
        Format::Csv => {
            out.line("x_prime,n,a,p,gap,violation")?;
            let mut prev: Option<u64> = None;
            for &p in &report.integer_points {
                let gap = prev.map(|q| p - q);
                out.csv(&[
                    b.x_prime.to_string(),
                    b.power.to_string(),
                    b.coeff_a.to_string(),
                    p.to_string(),
                    gap.map(|g| g.to_string()).unwrap_or_default(),
                    gap.is_some_and(|g| g < report.min_gap_required).to_string(),
                ])?;
                prev = Some(p);
            }
            out.line(format!(
                "# summary grade={} p_max={} min_gap_required={} violations={}",
                report.grade.label().replace(' ', "_"),
                report.p_max,
                report.min_gap_required,
                report.violations.len()
            ))?;
        }
        Format::Pretty => {
            out.line(format!(
                "{}, p = 0..={p_max} ({})",
                report.branch,
                report.grade.label()
            ))?;
            out.line(format!(
                "integer points: [{}]",
                list(&report.integer_points)
            ))?;
            out.line(format!("gaps: [{}]", list(&report.gaps)))?;
            out.line(format!("minimum gap required: {}", report.min_gap_required))?;
            let v: Vec<String> = report
                .violations
                .iter()
                .map(|(a, b)| format!("({a}, {b})"))
                .collect();
            out.line(format!("violations: [{}]", v.join(", ")))?;
        }
    }
    Ok(report.passed())
}

#[derive(Serialize)]
struct FermatRecord {
    n: u32,
    y_bound: u64,
    threshold_lo: String,
    threshold_hi: String,
}

pub fn fermat_bound(out: &mut Output, ctx: &Ctx, n: u32) -> Result<bool> {
    let y = dio::fermat_y_bound(n, ctx.precision)?;
    let (lo, hi) = endpoints(
        &dio::gap_threshold(n, 1, ctx.precision.start_bits)?,
        ctx.digits,
    );
    let r = FermatRecord {
        n,
        y_bound: y,
        threshold_lo: lo,
        threshold_hi: hi,
    };
    match out.format {
        Format::JsonLines => out.json(&r)?,
        Format::Csv => {
            out.line("n,y_bound,threshold_lo,threshold_hi")?;
            out.csv(&[n.to_string(), y.to_string(), r.threshold_lo, r.threshold_hi])?;
        }
        Format::Pretty => out.line(format!(
            "n = {n}: no solution with x > y has y <= {y} (1/(2^(1/n) - 1) in [{}, {}])",
            r.threshold_lo, r.threshold_hi
        ))?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct IdentityRecord {
    x_prime: u64,
    n: u32,
    a: u64,
    y: u64,
    sum: String,
    expected: String,
    residual: String,
    pass: bool,
}

pub fn identity(out: &mut Output, b: &BranchArgs, y: u64) -> Result<bool> {
    let check = dio::verify_branch_identity(&branch_of(b)?, y);
    let r = IdentityRecord {
        x_prime: b.x_prime,
        n: b.power,
        a: b.coeff_a,
        y,
        sum: check.sum.to_string(),
        expected: check.expected.to_string(),
        residual: check.residual().to_string(),
        pass: check.passes(),
    };
    match out.format {
        Format::JsonLines => out.json(&r)?,
        Format::Csv => {
            out.line("x_prime,n,a,y,sum,expected,residual,pass")?;
            out.csv(&[
                r.x_prime.to_string(),
                r.n.to_string(),
                r.a.to_string(),
                r.y.to_string(),
                r.sum.clone(),
                r.expected.clone(),
                r.residual.clone(),
                r.pass.to_string(),
            ])?;
        }
        Format::Pretty => out.line(format!(
            "sum = {}, expected (A + 1) n! = {}, residual {} {}",
            r.sum,
            r.expected,
            r.residual,
            if r.pass { "pass" } else { "FAIL" }
        ))?,
    }
    Ok(r.pass)
}

#[derive(Serialize)]
struct MinGapRecord {
    n: u32,
    a: u64,
    min_gap: u64,
    grade: dio::BoundGrade,
}

pub fn min_gap(out: &mut Output, ctx: &Ctx, n: u32, a: u64) -> Result<bool> {
    let l = dio::min_gap(n, a, ctx.precision)?;
    let grade = if a == 1 {
        dio::BoundGrade::LemmaConfirmed
    } else {
        dio::BoundGrade::Conjecture
    };
    match out.format {
        Format::JsonLines => out.json(&MinGapRecord {
            n,
            a,
            min_gap: l,
            grade,
        })?,
        Format::Csv => {
            out.line("n,a,min_gap")?;
            out.csv(&[n.to_string(), a.to_string(), l.to_string()])?;
        }
        Format::Pretty => out.line(format!(
            "min gap for n = {n}, A = {a}: {l} ({})",
            grade.label()
        ))?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct CondGapRecord {
    n: u32,
    j: u64,
    bound: u64,
}

pub fn cond_gap(out: &mut Output, ctx: &Ctx, n: u32, j: u64) -> Result<bool> {
    let bound = dio::conditional_gap_bound(n, j, ctx.precision)?;
    match out.format {
        Format::JsonLines => out.json(&CondGapRecord { n, j, bound })?,
        Format::Csv => {
            out.line("n,j,bound")?;
            out.csv(&[n.to_string(), j.to_string(), bound.to_string()])?;
        }
        Format::Pretty => out.line(format!(
            "n = {n}, j = {j}: next integer point at least {bound} away"
        ))?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct LimitRecord {
    alpha: String,
    n: u32,
    limit_lo: String,
    limit_hi: String,
    asymptotic_lo: String,
    asymptotic_hi: String,
}

pub fn limit(out: &mut Output, ctx: &Ctx, alpha: &str, n: u32) -> Result<bool> {
    let a = parse_rational(alpha)?;
    let bits = ctx.precision.start_bits;
    let (limit_lo, limit_hi) = endpoints(&dio::step_limit(&a, n, bits)?, ctx.digits);
    let (asymptotic_lo, asymptotic_hi) = endpoints(&dio::asymptotic_step(&a, n, bits)?, ctx.digits);
    let r = LimitRecord {
        alpha: a.to_string(),
        n,
        limit_lo,
        limit_hi,
        asymptotic_lo,
        asymptotic_hi,
    };
    match out.format {
        Format::JsonLines => out.json(&r)?,
        Format::Csv => {
            out.line("alpha,n,limit_lo,limit_hi,asymptotic_lo,asymptotic_hi")?;
            out.csv(&[
                r.alpha.clone(),
                n.to_string(),
                r.limit_lo.clone(),
                r.limit_hi.clone(),
                r.asymptotic_lo.clone(),
                r.asymptotic_hi.clone(),
            ])?;
        }
        Format::Pretty => {
            out.line(format!(
                "(1 + (1/(1 + {}))^{n})^(1/{n}) in [{}, {}]",
                r.alpha, r.limit_lo, r.limit_hi
            ))?;
            out.line(format!(
                "limit of Step along x' = {} p:  [{}, {}]",
                r.alpha, r.asymptotic_lo, r.asymptotic_hi
            ))?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum FracLine {
    Entry {
        p: u64,
        frac_lo: String,
        frac_hi: String,
        running_lo: String,
        running_hi: String,
        resynced: bool,
    },
    Summary {
        x_prime: u64,
        n: u32,
        p_max: u64,
        first_crossing: Option<u64>,
        min_gap: u64,
        telescoping_ok: bool,
    },
}

pub fn frac_accum(out: &mut Output, ctx: &Ctx, x_prime: u64, n: u32, p_max: u64) -> Result<bool> {
    let branch = Branch::unit(x_prime, n)?;
    let acc = dio::frac_accumulation(&branch, p_max, ctx.precision)?;
    let l = dio::min_gap(n, 1, ctx.precision)?;
    let ok = acc.telescoping_ok && acc.first_crossing.is_none_or(|j| j >= l);
    let lines: Vec<FracLine> = acc
        .entries
        .iter()
        .map(|e| {
            let (frac_lo, frac_hi) = endpoints(&e.frac, ctx.digits);
            let (running_lo, running_hi) = endpoints(&e.running, ctx.digits);
            FracLine::Entry {
                p: e.p,
                frac_lo,
                frac_hi,
                running_lo,
                running_hi,
                resynced: e.resynced,
            }
        })
        .collect();
    match out.format {
        Format::JsonLines => {
            for line in &lines {
                out.json(line)?;
            }
            out.json(&FracLine::Summary {
                x_prime,
                n,
                p_max,
                first_crossing: acc.first_crossing,
                min_gap: l,
                telescoping_ok: acc.telescoping_ok,
            })?;
        }
        Format::Csv => {
            out.line("p,frac_lo,frac_hi,running_lo,running_hi,resynced")?;
            for line in &lines {
                if let FracLine::Entry {
                    p,
                    frac_lo,
                    frac_hi,
                    running_lo,
                    running_hi,
                    resynced,
                } = line
                {
                    out.csv(&[
                        p.to_string(),
                        frac_lo.clone(),
                        frac_hi.clone(),
                        running_lo.clone(),
                        running_hi.clone(),
                        resynced.to_string(),
                    ])?;
                }
            }
            out.line(format!(
                "# summary first_crossing={} min_gap={l} telescoping_ok={}",
                acc.first_crossing
                    .map(|j| j.to_string())
                    .unwrap_or_else(|| "none".into()),
                acc.telescoping_ok
            ))?;
        }
        Format::Pretty => {
            out.line(format!("{branch}, {p_max} steps"))?;
            for line in &lines {
                if let FracLine::Entry {
                    p,
                    running_lo,
                    running_hi,
                    resynced,
                    ..
                } = line
                {
                    out.line(format!(
                        "{p:>8} sum in [{running_lo}, {running_hi}]{}",
                        if *resynced { " (z integer)" } else { "" }
                    ))?;
                }
            }
            out.line(format!(
                "first crossing: {}, min gap {l}, telescoping {}",
                acc.first_crossing
                    .map(|j| j.to_string())
                    .unwrap_or_else(|| "none".into()),
                if acc.telescoping_ok { "ok" } else { "FAILED" }
            ))?;
        }
    }
    Ok(ok)
}

#[derive(Serialize)]
struct SolutionRecord {
    x_prime: u64,
    p: u64,
    z: String,
}

pub fn brute_force(
    out: &mut Output,
    n: u32,
    a: u64,
    x_prime_max: u64,
    p_max: u64,
    budget: u128,
) -> Result<bool> {
    if n < 2 {
        return Err(usage("--power must be at least 2"));
    }
    let sols = dio::brute_force_solutions(n, a, x_prime_max, p_max, budget)?;
    match out.format {
        Format::JsonLines => {
            for s in &sols {
                out.json(&SolutionRecord {
                    x_prime: s.x_prime,
                    p: s.p,
                    z: s.z.to_string(),
                })?;
            }
        }
        Format::Csv => {
            out.line("x_prime,p,z")?;
            for s in &sols {
                out.csv(&[s.x_prime.to_string(), s.p.to_string(), s.z.to_string()])?;
            }
        }
        Format::Pretty => {
            for s in &sols {
                out.line(format!("x' = {}, p = {}, z = {}", s.x_prime, s.p, s.z))?;
            }
            out.line(format!("{} solutions", sols.len()))?;
        }
    }
    Ok(true)
}
