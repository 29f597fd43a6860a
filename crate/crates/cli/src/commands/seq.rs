use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use diffseq_core::arith::parse_rational;
use diffseq_core::derivative::{
    convergence_study, estimate, rounding_allowance, BuiltinFunction, RemainderData, SampleGrid,
};
use diffseq_core::diffseq::{difference_table, verify_newton_theorem, DifferenceTable, Polynomial};
use diffseq_core::Rational;

use super::usage;
use crate::cli::Format;
use crate::output::{split_list, Output};

fn rationals(text: &str) -> Result<Vec<Rational>> {
    split_list(text)
        .into_iter()
        .map(|t| parse_rational(t).map_err(Into::into))
        .collect()
}

fn polynomial(text: &str) -> Result<Polynomial> {
    text.parse::<Polynomial>().map_err(Into::into)
}

#[derive(Serialize)]
struct TableRow {
    order: usize,
    values: Vec<String>,
}

pub fn difftable(
    out: &mut Output,
    seq: Option<&str>,
    poly: Option<&str>,
    start: &str,
    step: &str,
    points: Option<usize>,
    order: usize,
) -> Result<bool> {
    let table = match (seq, poly) {
        (Some(s), _) => difference_table(&rationals(s)?, order)?,
        (None, Some(p)) => {
            let points = points.ok_or_else(|| usage("--poly needs --points"))?;
            DifferenceTable::from_polynomial(
                &polynomial(p)?,
                &parse_rational(start)?,
                &parse_rational(step)?,
                points,
                order,
            )?
        }
        (None, None) => return Err(usage("give --seq or --poly")),
    };
    match out.format {
        Format::Pretty => {
            for row in table.rows() {
                let line: Vec<String> = row.iter().map(ToString::to_string).collect();
                out.line(line.join(" "))?;
            }
        }
        Format::JsonLines => {
            for (m, row) in table.rows().iter().enumerate() {
                out.json(&TableRow {
                    order: m,
                    values: row.iter().map(ToString::to_string).collect(),
                })?;
            }
        }
        Format::Csv => {
            out.line("order,index,value")?;
            for (m, row) in table.rows().iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    out.csv(&[m.to_string(), j.to_string(), v.to_string()])?;
                }
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum NewtonLine {
    Sample {
        x: String,
        value: String,
        expected: String,
        pass: bool,
    },
    Summary {
        polynomial: String,
        degree: usize,
        step: String,
        expected: String,
        all_pass: bool,
    },
}

pub fn newton(out: &mut Output, poly: &str, step: &str, xs: &str) -> Result<bool> {
    let p = polynomial(poly)?;
    let k = parse_rational(step)?;
    let xs = rationals(xs)?;
    let report = verify_newton_theorem(&p, &k, &xs)?;
    match out.format {
        Format::Pretty => {
            out.line(format!(
                "{p}: degree {}, step {}, expected a0 k^n n! = {}",
                report.degree, report.step, report.expected
            ))?;
            for s in &report.samples {
                let verdict = if s.pass { "pass" } else { "FAIL" };
                out.line(format!("  x = {}: {} {verdict}", s.x, s.value))?;
            }
        }
        Format::JsonLines => {
            for s in &report.samples {
                out.json(&NewtonLine::Sample {
                    x: s.x.to_string(),
                    value: s.value.to_string(),
                    expected: report.expected.to_string(),
                    pass: s.pass,
                })?;
            }
            out.json(&NewtonLine::Summary {
                polynomial: p.to_string(),
                degree: report.degree,
                step: report.step.to_string(),
                expected: report.expected.to_string(),
                all_pass: report.all_pass(),
            })?;
        }
        Format::Csv => {
            out.line("x,value,expected,pass")?;
            for s in &report.samples {
                out.csv(&[
                    s.x.to_string(),
                    s.value.to_string(),
                    report.expected.to_string(),
                    s.pass.to_string(),
                ])?;
            }
        }
    }
    Ok(report.all_pass())
}

pub struct DerivArgs<'a> {
    pub function: Option<&'a str>,
    pub samples: Option<&'a Path>,
    pub x: Option<f64>,
    pub x0: f64,
    pub step: Option<f64>,
    pub order: Option<usize>,
    pub m: f64,
    pub domain: Option<&'a str>,
    pub schedule: Option<&'a str>,
}

#[derive(Serialize)]
struct DerivRecord {
    x: f64,
    x0: f64,
    k: f64,
    n: usize,
    m: f64,
    estimate: f64,
    error_bound: f64,
    rounding: f64,
    analytic: Option<f64>,
    within_bound: Option<bool>,
}

impl DerivRecord {
    fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.x.to_string(),
            self.x0.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.estimate.to_string(),
            self.error_bound.to_string(),
            self.rounding.to_string(),
            opt(self.analytic.map(|v| v.to_string())),
            opt(self.within_bound.map(|v| v.to_string())),
        ]
    }
}

const DERIV_COLUMNS: &str = "x,x0,k,n,m,estimate,error_bound,rounding,analytic,within_bound";

fn parse_domain(text: Option<&str>) -> Result<(f64, f64)> {
    let Some(text) = text else {
        return Ok((f64::NEG_INFINITY, f64::INFINITY));
    };
    let parts = split_list(text);
    let [a, b] = parts.as_slice() else {
        return Err(usage(format!("--domain expects \"a,b\", got {text:?}")));
    };
    let parse = |s: &str| -> Result<f64> {
        match s {
            "-inf" => Ok(f64::NEG_INFINITY),
            "inf" | "+inf" => Ok(f64::INFINITY),
            _ => s
                .parse()
                .map_err(|_| usage(format!("bad domain endpoint {s:?}"))),
        }
    };
    Ok((parse(a)?, parse(b)?))
}

fn read_samples(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading samples {}", path.display()))?;
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| usage(format!("bad sample value {t:?} in {}", path.display())))
        })
        .collect()
}

pub fn deriv(out: &mut Output, a: &DerivArgs) -> Result<bool> {
    let domain = parse_domain(a.domain)?;
    let rem = RemainderData::new(a.m)?;
    let f = a.function.map(BuiltinFunction::parse).transpose()?;

    let records: Vec<DerivRecord> = if let Some(schedule) = a.schedule {
        let f = f.ok_or_else(|| usage("--schedule needs --function"))?;
        let n = a.order.ok_or_else(|| usage("--schedule needs --order"))?;
        let ks = split_list(schedule)
            .into_iter()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| usage(format!("bad step {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let analytic = f.derivative(n, a.x0);
        convergence_study(|t| f.eval(t), a.x0, n, &ks, &rem, domain)?
            .into_iter()
            .map(|row| {
                let grid = SampleGrid::from_fn(|t| f.eval(t), a.x0, a.x0, row.k, n, domain)?;
                let rounding = rounding_allowance(&grid);
                Ok(DerivRecord {
                    x: a.x0,
                    x0: a.x0,
                    k: row.k,
                    n,
                    m: a.m,
                    estimate: row.estimate,
                    error_bound: row.bound,
                    rounding,
                    analytic: Some(analytic),
                    within_bound: Some((row.estimate - analytic).abs() <= row.bound + rounding),
                })
            })
            .collect::<Result<_>>()?
    } else {
        let x = a.x.ok_or_else(|| usage("--x is required"))?;
        let k = a.step.ok_or_else(|| usage("--step is required"))?;
        let grid = match (&f, a.samples) {
            (Some(f), _) => {
                let n = a
                    .order
                    .ok_or_else(|| usage("--order is required with --function"))?;
                SampleGrid::from_fn(|t| f.eval(t), x, a.x0, k, n, domain)?
            }
            (None, Some(path)) => {
                let values = read_samples(path)?;
                let n = a.order.unwrap_or(values.len().saturating_sub(1));
                SampleGrid::new(x, a.x0, k, n, values, domain)?
            }
            (None, None) => return Err(usage("give --function or --samples")),
        };
        let est = estimate(&grid, &rem);
        let rounding = rounding_allowance(&grid);
        let analytic = f.as_ref().map(|f| f.derivative(grid.order(), a.x0));
        vec![DerivRecord {
            x,
            x0: a.x0,
            k,
            n: grid.order(),
            m: a.m,
            estimate: est.value,
            error_bound: est.error_bound,
            rounding,
            analytic,
            within_bound: analytic.map(|d| (est.value - d).abs() <= est.error_bound + rounding),
        }]
    };

    match out.format {
        Format::Pretty => {
            for r in &records {
                let mut line = format!(
                    "f^({})({}) ~ {} +/- {} (k = {}, rounding {:.1e})",
                    r.n, r.x0, r.estimate, r.error_bound, r.k, r.rounding
                );
                if let (Some(d), Some(ok)) = (r.analytic, r.within_bound) {
                    line.push_str(&format!(
                        "; analytic {d}, error {:.3e} {}",
                        (r.estimate - d).abs(),
                        if ok { "within bound" } else { "OUTSIDE BOUND" }
                    ));
                }
                out.line(line)?;
            }
        }
        Format::JsonLines => {
            for r in &records {
                out.json(r)?;
            }
        }
        Format::Csv => {
            out.line(DERIV_COLUMNS)?;
            for r in &records {
                out.csv(&r.csv_fields())?;
            }
        }
    }
    Ok(records.iter().all(|r| r.within_bound != Some(false)))
}
