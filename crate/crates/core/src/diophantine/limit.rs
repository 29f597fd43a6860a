use num_traits::{One, Signed, Zero};

use crate::arith::{nth_root_interval, Rational, RealInterval};
use crate::{Error, Result};

fn check_alpha(alpha: &Rational, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("power must be at least 2, got {n}")));
    }
    if !alpha.is_positive() {
        return Err(Error::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(())
}

/// `(1 + (1/(1 + alpha))^n)^(1/n)` for `0 < alpha <= 1`.
///
/// This is the closed form obtained by substituting `x' = alpha p` into the
/// step written as `z_{p+1} - z_p` and letting `p` grow. It decreases in
/// `alpha` and tends to `2^(1/n)` as `alpha -> 0`. It is not the limit of
/// the step itself; see [`asymptotic_step`].
pub fn step_limit(alpha: &Rational, n: u32, bits: u32) -> Result<RealInterval> {
    check_alpha(alpha, n)?;
    if alpha > &Rational::one() {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let t = (Rational::one() + alpha).recip();
    let radicand = Rational::one() + num_traits::pow(t, n as usize);
    nth_root_interval(&radicand, n, bits)
}

/// Limit of `Step(x', p, n)` for `A = 1` as `p -> infinity` with
/// `x' = alpha p`:
/// `((1 + alpha)^(n-1) + 1) / ((1 + alpha)^n + 1)^((n-1)/n)`,
/// the slope of `p -> ((x' + p)^n + p^n)^(1/n)` at fixed `x'` evaluated on
/// the ray `x' = alpha p`.
pub fn asymptotic_step(alpha: &Rational, n: u32, bits: u32) -> Result<RealInterval> {
    check_alpha(alpha, n)?;
    let s = Rational::one() + alpha;
    let num = num_traits::pow(s.clone(), n as usize - 1) + Rational::one();
    let base = num_traits::pow(s, n as usize) + Rational::one();
    let den = nth_root_interval(&num_traits::pow(base, n as usize - 1), n, bits)?;
    RealInterval::from_rational(&num, bits).div(&den)
}

/// `true` when `alpha` is inside the closed-form's stated domain.
pub fn in_limit_domain(alpha: &Rational) -> bool {
    alpha > &Rational::zero() && alpha <= &Rational::one()
}
