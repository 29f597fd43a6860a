use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::dyadic::Round;
use super::roots::{root_ceil, root_floor};
use super::{Dyadic, Rational};
use crate::{Error, Result};

/// Precision tag carried by exact (point) intervals.
pub const EXACT: u32 = u32::MAX;

/// A closed interval `[lo, hi]` with dyadic endpoints enclosing one real
/// number.
///
/// `precision_bits` is the working precision the interval was produced at;
/// operations that cannot be exact (products, quotients, roots) round their
/// endpoints outward to that many bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: Dyadic,
    hi: Dyadic,
    precision_bits: u32,
}

impl RealInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        if precision_bits == 0 {
            return Err(Error::Domain("precision must be positive".into()));
        }
        Ok(RealInterval {
            lo,
            hi,
            precision_bits,
        })
    }

    pub(crate) fn with_precision(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Self {
        debug_assert!(lo <= hi);
        RealInterval {
            lo,
            hi,
            precision_bits: precision_bits.max(1),
        }
    }

    pub fn point(value: Dyadic) -> Self {
        RealInterval {
            lo: value.clone(),
            hi: value,
            precision_bits: EXACT,
        }
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::point(Dyadic::from_integer(value))
    }

    /// Tightest enclosure of `q` on the grid `2^-precision_bits`.
    pub fn from_rational(q: &Rational, precision_bits: u32) -> Self {
        let lo = Dyadic::from_rational(q, precision_bits, Round::Down);
        let hi = Dyadic::from_rational(q, precision_bits, Round::Up);
        if lo == hi {
            Self::point(lo)
        } else {
            Self::with_precision(lo, hi, precision_bits)
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    /// `true` when every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &RealInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Ordering of the enclosed reals when the enclosures decide it.
    ///
    /// Disjoint intervals give a strict ordering. `Equal` is only returned
    /// for two identical point intervals, whose values are known exactly.
    pub fn certified_cmp(&self, other: &RealInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn pow(&self, exp: u32) -> RealInterval {
        let mut acc = RealInterval::from_integer(1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Result<RealInterval> {
        RealInterval::from_integer(1).div(self)
    }

    pub fn div(&self, rhs: &RealInterval) -> Result<RealInterval> {
        let zero = Dyadic::zero();
        if rhs.lo <= zero && rhs.hi >= zero {
            return Err(Error::DivisionByZero);
        }
        let bits = self.precision_bits.min(rhs.precision_bits);
        let bits = if bits == EXACT {
            self.div_bits(rhs)
        } else {
            bits
        };
        let corners = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = corners
            .iter()
            .map(|(a, b)| a.div_rounded(b, bits, Round::Down))
            .min()
            .expect("four corners");
        let hi = corners
            .iter()
            .map(|(a, b)| a.div_rounded(b, bits, Round::Up))
            .max()
            .expect("four corners");
        Ok(Self::with_precision(lo, hi, bits))
    }

    // Exact operands still need a finite precision for an inexact quotient.
    fn div_bits(&self, rhs: &RealInterval) -> u32 {
        let span = self.lo.significant_bits().max(rhs.lo.significant_bits()) as u32;
        span.max(64) + 64
    }

    /// Enclosure of the nonnegative nth root; the interval must not contain
    /// negative values.
    pub fn nth_root(&self, n: u32) -> Result<RealInterval> {
        if n == 0 {
            return Err(Error::Domain("root index must be at least 1".into()));
        }
        if self.lo.is_negative() {
            return Err(Error::Domain(format!("nth root of interval {self}")));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let bits = if self.precision_bits == EXACT {
            64
        } else {
            self.precision_bits
        };
        let lo = root_floor(&self.lo, n, bits);
        let hi = root_ceil(&self.hi, n, bits);
        Ok(Self::with_precision(lo, hi, bits))
    }

    /// Same enclosure, re-tagged and rounded outward to `bits`.
    pub fn rounded(&self, bits: u32) -> RealInterval {
        Self::with_precision(
            self.lo.round(bits, Round::Down),
            self.hi.round(bits, Round::Up),
            bits,
        )
    }

    /// Decimal rendering `[lo, hi]` with `digits` fractional digits, rounded
    /// outward.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up),
        )
    }
}

impl Add for &RealInterval {
    type Output = RealInterval;
    fn add(self, rhs: &RealInterval) -> RealInterval {
        RealInterval::with_precision(
            &self.lo + &rhs.lo,
            &self.hi + &rhs.hi,
            self.precision_bits.min(rhs.precision_bits),
        )
    }
}

impl Sub for &RealInterval {
    type Output = RealInterval;
    fn sub(self, rhs: &RealInterval) -> RealInterval {
        RealInterval::with_precision(
            &self.lo - &rhs.hi,
            &self.hi - &rhs.lo,
            self.precision_bits.min(rhs.precision_bits),
        )
    }
}

impl Mul for &RealInterval {
    type Output = RealInterval;
    fn mul(self, rhs: &RealInterval) -> RealInterval {
        let bits = self.precision_bits.min(rhs.precision_bits);
        let corners = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = corners.iter().min().expect("four corners").clone();
        let hi = corners.iter().max().expect("four corners").clone();
        if bits == EXACT {
            RealInterval::with_precision(lo, hi, bits)
        } else {
            RealInterval::with_precision(
                lo.round(bits, Round::Down),
                hi.round(bits, Round::Up),
                bits,
            )
        }
    }
}

impl Neg for &RealInterval {
    type Output = RealInterval;
    fn neg(self) -> RealInterval {
        RealInterval::with_precision(-&self.hi, -&self.lo, self.precision_bits)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            let (lo, hi) = self.to_decimal(20);
            write!(f, "[{lo}, {hi}]")
        }
    }
}

/// Splits `a` into `(frac, floor)` with `frac` enclosing `x - floor(x)`.
///
/// Fails with [`Error::StraddlesInteger`] when the enclosure contains an
/// integer in its interior or at its upper end, since then `floor(x)` is not
/// determined by the interval alone.
pub fn fractional_part_interval(a: &RealInterval) -> Result<(RealInterval, BigInt)> {
    let fl = a.lo().floor();
    let fh = a.hi().floor();
    if fl != fh {
        return Err(Error::StraddlesInteger(fh));
    }
    let shift = RealInterval::from_integer(fl.clone());
    let frac = a - &shift;
    Ok((frac, fl))
}
