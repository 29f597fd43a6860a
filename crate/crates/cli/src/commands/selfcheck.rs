use anyhow::Result;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use diffseq_core::diffseq::{binomial_nth_difference, factorial, Polynomial};
use diffseq_core::diophantine::{gap_audit, verify_branch_identity, Branch};
use diffseq_core::Rational;

use super::Ctx;
use crate::cli::Format;
use crate::output::Output;

#[derive(Serialize)]
struct CheckRecord {
    check: &'static str,
    seed: u64,
    cases: usize,
    failures: usize,
}

fn rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let d: i64 = rng.gen_range(1..=1_000_000);
        if n != 0 || !nonzero {
            return Rational::new(n.into(), d.into());
        }
    }
}

fn newton_cases(rng: &mut ChaCha8Rng, cases: usize) -> usize {
    (0..cases)
        .filter(|_| {
            let degree = rng.gen_range(1..=10usize);
            let coeffs: Vec<Rational> = (0..=degree).map(|i| rational(rng, i == 0)).collect();
            let k = rational(rng, true);
            let x = rational(rng, false);
            let expected = &coeffs[0]
                * num_traits::pow(k.clone(), degree)
                * Rational::from_integer(factorial(degree));
            let p = Polynomial::new(coeffs);
            binomial_nth_difference(&p, &x, &k, degree).ok() != Some(expected)
        })
        .count()
}

fn identity_cases(rng: &mut ChaCha8Rng, cases: usize) -> usize {
    (0..cases)
        .filter(|_| {
            let b = Branch::new(
                rng.gen_range(1..=1_000_000),
                rng.gen_range(2..=12),
                rng.gen_range(1..=5),
            )
            .expect("valid ranges");
            let check = verify_branch_identity(&b, rng.gen_range(0..=1_000_000));
            !check.residual().is_zero()
                || check.expected != BigInt::from(b.coeff() + 1) * factorial(b.power() as usize)
        })
        .count()
}

fn gap_cases(rng: &mut ChaCha8Rng, ctx: &Ctx, cases: usize) -> Result<usize> {
    let mut failures = 0;
    for _ in 0..cases {
        let b = Branch::unit(rng.gen_range(1..=1_000), 2)?;
        if !gap_audit(&b, 2_000, ctx.precision)?.passed() {
            failures += 1;
        }
    }
    Ok(failures)
}

pub fn run(out: &mut Output, ctx: &Ctx, cases: usize) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let records = [
        ("newton-identity", newton_cases(&mut rng, cases)),
        ("branch-identity", identity_cases(&mut rng, cases)),
        ("pythagorean-gaps", gap_cases(&mut rng, ctx, cases.min(50))?),
    ]
    .map(|(check, failures)| CheckRecord {
        check,
        seed: ctx.seed,
        cases: if check == "pythagorean-gaps" {
            cases.min(50)
        } else {
            cases
        },
        failures,
    });
    match out.format {
        Format::JsonLines => {
            for r in &records {
                out.json(r)?;
            }
        }
        Format::Csv => {
            out.line("check,seed,cases,failures")?;
            for r in &records {
                out.csv(&[
                    r.check.to_string(),
                    r.seed.to_string(),
                    r.cases.to_string(),
                    r.failures.to_string(),
                ])?;
            }
        }
        Format::Pretty => {
            for r in &records {
                out.line(format!(
                    "{:<18} {} cases, {} failures (seed {})",
                    r.check, r.cases, r.failures, r.seed
                ))?;
            }
        }
    }
    Ok(records.iter().all(|r| r.failures == 0))
}
