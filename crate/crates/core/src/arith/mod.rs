//! Exact rationals, dyadic intervals and certified comparisons.
//!
//! Irrational quantities are never compared in floating point. They are
//! enclosed in [`RealInterval`]s and an inequality is accepted only once the
//! enclosures are disjoint. Equality is never inferred from overlap; it has
//! to come from an exact criterion such as [`integer_nth_root`].

mod dyadic;
mod interval;
mod roots;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use dyadic::{Dyadic, Round};
pub use interval::{fractional_part_interval, RealInterval, EXACT};
pub use roots::{
    integer_nth_root, integer_nth_root_u128, integer_nth_root_u64, nth_root_interval,
    nth_root_of_integer,
};

use crate::{Error, Result};

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Less,
    Greater,
    Equal,
    /// Enclosures still overlapped at the precision cap.
    Undecided {
        bits: u32,
    },
}

impl Verdict {
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Verdict::Less,
            Ordering::Greater => Verdict::Greater,
            Ordering::Equal => Verdict::Equal,
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Verdict::Undecided { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Less => f.write_str("less"),
            Verdict::Greater => f.write_str("greater"),
            Verdict::Equal => f.write_str("equal"),
            Verdict::Undecided { bits } => write!(f, "undecided@{bits}"),
        }
    }
}

/// Precision escalation schedule: start at `start_bits`, double until a
/// verdict is reached or `max_bits` has been tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: 64,
            max_bits: 4096,
        }
    }
}

impl Precision {
    pub fn new(start_bits: u32, max_bits: u32) -> Result<Self> {
        if start_bits == 0 || max_bits < start_bits {
            return Err(Error::Domain(format!(
                "precision schedule {start_bits}..{max_bits} is empty"
            )));
        }
        Ok(Precision {
            start_bits,
            max_bits,
        })
    }

    /// Bit levels visited by the schedule, ending exactly at `max_bits`.
    pub fn levels(&self) -> impl Iterator<Item = u32> {
        let max = self.max_bits;
        let mut next = Some(self.start_bits.min(max).max(1));
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur >= max {
                None
            } else {
                Some(cur.saturating_mul(2).min(max))
            };
            Some(cur)
        })
    }

    /// Runs `attempt` at each level until it yields a value.
    pub fn escalate<T>(&self, mut attempt: impl FnMut(u32) -> Option<T>) -> Result<T> {
        for bits in self.levels() {
            if let Some(v) = attempt(bits) {
                return Ok(v);
            }
        }
        Err(Error::Undecided {
            bits: self.max_bits,
        })
    }
}

/// Parses an exact rational from `7`, `-3/2`, `0.125` or `1e-3` notation.
pub fn parse_rational(text: &str) -> Result<Rational> {
    use num_bigint::BigInt;
    use num_traits::{pow, Zero};

    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if int_digits.is_empty() && frac_part.is_empty()
        || !int_digits
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_digits}{frac_part}0")
        .parse()
        .map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(digits * pow(ten, scale as usize))
    } else {
        Rational::new(digits, pow(ten, (-scale) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

/// Compares two reals given as precision-indexed enclosures, refining both
/// until they separate or the cap is reached.
pub fn compare<A, B>(a: A, b: B, precision: Precision) -> Verdict
where
    A: Fn(u32) -> RealInterval,
    B: Fn(u32) -> RealInterval,
{
    precision
        .escalate(|bits| a(bits).certified_cmp(&b(bits)))
        .map(Verdict::from_ordering)
        .unwrap_or(Verdict::Undecided {
            bits: precision.max_bits,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(v: i64, bits: u32) -> RealInterval {
        nth_root_interval(&Rational::from_integer(v.into()), 2, bits).unwrap()
    }

    #[test]
    fn parses_rationals() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert_eq!(parse_rational("-3/2").unwrap(), r(-3, 2));
        assert_eq!(parse_rational("0.125").unwrap(), r(1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), r(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), r(250, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn levels_double_and_stop_at_cap() {
        let p = Precision::new(64, 1000).unwrap();
        assert_eq!(
            p.levels().collect::<Vec<_>>(),
            vec![64, 128, 256, 512, 1000]
        );
        let p = Precision::new(64, 64).unwrap();
        assert_eq!(p.levels().collect::<Vec<_>>(), vec![64]);
        assert!(Precision::new(128, 64).is_err());
    }

    #[test]
    fn disjoint_at_entry() {
        let one = |_| RealInterval::from_integer(1);
        let b = |_| {
            RealInterval::new(Dyadic::new(13.into(), -3), Dyadic::new(14.into(), -3), 16).unwrap()
        };
        assert_eq!(compare(one, b, Precision::default()), Verdict::Less);
    }

    #[test]
    fn identical_irrationals_never_separate() {
        let p = Precision::new(64, 256).unwrap();
        assert_eq!(
            compare(|b| sqrt(5, b), |b| sqrt(5, b), p),
            Verdict::Undecided { bits: 256 }
        );
    }

    #[test]
    fn step_example_is_below_sqrt2() {
        let step = |b| &sqrt(13, b) - &sqrt(5, b);
        assert_eq!(
            compare(step, |b| sqrt(2, b), Precision::default()),
            Verdict::Less
        );
    }
}
