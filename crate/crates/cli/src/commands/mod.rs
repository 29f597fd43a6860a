mod branch;
mod selfcheck;
mod seq;

use std::fmt;

use anyhow::{Context, Result};
use diffseq_core::Precision;

use crate::cli::{Cli, Command};
use crate::output::Output;

/// Invalid parameters detected by the front end.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Parameter problems exit with the usage status; an exhausted precision cap
/// or an I/O failure does not.
pub fn is_usage_error(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<UsageError>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<diffseq_core::Error>(),
        Some(err) if !matches!(err, diffseq_core::Error::Undecided { .. })
    )
}

/// Everything a command needs besides its own arguments.
pub struct Ctx {
    pub precision: Precision,
    pub digits: usize,
    pub seed: u64,
}

/// Runs the selected command; `Ok(false)` means it completed with
/// violations or undecided checks.
pub fn run(cli: &Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring worker threads")?;
    }
    let ctx = Ctx {
        precision: Precision::new(cli.precision_bits, cli.max_precision_bits)?,
        digits: cli.digits,
        seed: cli.seed,
    };
    let mut out = Output::open(cli.format, cli.out.as_deref())?;
    let ok = match &cli.command {
        Command::Difftable {
            seq,
            poly,
            start,
            step,
            points,
            order,
        } => seq::difftable(
            &mut out,
            seq.as_deref(),
            poly.as_deref(),
            start,
            step,
            *points,
            *order,
        )?,
        Command::Newton { poly, step, x } => seq::newton(&mut out, poly, step, x)?,
        Command::Deriv {
            function,
            samples,
            x,
            x0,
            step,
            order,
            m,
            domain,
            schedule,
        } => seq::deriv(
            &mut out,
            &seq::DerivArgs {
                function: function.as_deref(),
                samples: samples.as_deref(),
                x: *x,
                x0: *x0,
                step: *step,
                order: *order,
                m: *m,
                domain: domain.as_deref(),
                schedule: schedule.as_deref(),
            },
        )?,
        Command::BranchScan { branch, p_max } => branch::scan(&mut out, &ctx, branch, *p_max)?,
        Command::GapAudit { branch, p_max } => branch::gap_audit(&mut out, &ctx, branch, *p_max)?,
        Command::FermatBound { power } => branch::fermat_bound(&mut out, &ctx, *power)?,
        Command::Identity { branch, y } => branch::identity(&mut out, branch, *y)?,
        Command::MinGap { power, coeff_a } => branch::min_gap(&mut out, &ctx, *power, *coeff_a)?,
        Command::CondGap { power, j } => branch::cond_gap(&mut out, &ctx, *power, *j)?,
        Command::Limit { alpha, power } => branch::limit(&mut out, &ctx, alpha, *power)?,
        Command::FracAccum {
            x_prime,
            power,
            p_max,
        } => branch::frac_accum(&mut out, &ctx, *x_prime, *power, *p_max)?,
        Command::BruteForce {
            power,
            coeff_a,
            x_prime_max,
            p_max,
            budget,
        } => branch::brute_force(&mut out, *power, *coeff_a, *x_prime_max, *p_max, *budget)?,
        Command::Selfcheck { cases } => selfcheck::run(&mut out, &ctx, *cases)?,
        Command::Run { .. } => return Err(usage("`run` takes exactly `--config <file>`")),
    };
    out.flush()?;
    Ok(ok)
}
