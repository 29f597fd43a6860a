//! Dyadic rationals `mantissa * 2^exponent`.
//!
//! Every dyadic is kept canonical: the mantissa is odd, or the value is zero
//! with exponent 0. Addition, subtraction and multiplication are exact;
//! division and conversion from general rationals take an explicit rounding
//! direction so interval code can round outward.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Rounding direction for inexact dyadic results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mantissa, exponent }
        } else {
            Dyadic {
                mantissa: mantissa >> tz,
                exponent: exponent + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::new(value.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0 || self.is_zero()
    }

    /// Multiplies by `2^shift`, exactly.
    pub fn mul_pow2(&self, shift: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + shift,
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as u64
        } else {
            &self.mantissa >> (-self.exponent) as u64
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as u64,
            )
        }
    }

    /// Nearest-ish `f64`; intended for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Keep 64 leading bits so the mantissa converts without overflow.
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let m = (&self.mantissa >> drop as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exponent + drop;
        m * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Number of significant bits in the mantissa.
    pub fn significant_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// The multiple of `2^-frac_bits` nearest to `q` in direction `dir`.
    pub fn from_rational(q: &Rational, frac_bits: u32, dir: Round) -> Self {
        let scaled = q.numer() << frac_bits as u64;
        let m = match dir {
            Round::Down => scaled.div_floor(q.denom()),
            Round::Up => -(-scaled).div_floor(q.denom()),
        };
        Self::new(m, -(frac_bits as i64))
    }

    /// Rounds to at most `bits` significant bits in direction `dir`.
    pub fn round(&self, bits: u32, dir: Round) -> Self {
        let bits = bits.max(1) as u64;
        let have = self.mantissa.bits();
        if have <= bits {
            return self.clone();
        }
        let drop = have - bits;
        let m = match dir {
            Round::Down => &self.mantissa >> drop,
            Round::Up => -((-&self.mantissa) >> drop),
        };
        Self::new(m, self.exponent + drop as i64)
    }

    /// `self / other` rounded in direction `dir` to roughly `bits` significant bits.
    pub fn div_rounded(&self, other: &Dyadic, bits: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let extra = bits as i64 + other.mantissa.bits() as i64 - self.mantissa.bits() as i64 + 1;
        let shift = extra.max(0) as u64;
        let num = &self.mantissa << shift;
        let q = match dir {
            Round::Down => num.div_floor(&other.mantissa),
            Round::Up => -(-num).div_floor(&other.mantissa),
        };
        Self::new(q, self.exponent - other.exponent - shift as i64)
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded in
    /// direction `dir`. The output is a pure function of the value.
    pub fn to_decimal(&self, digits: usize, dir: Round) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = self * &Dyadic::from_integer(scale.clone());
        let v = match dir {
            Round::Down => scaled.floor(),
            Round::Up => scaled.ceil(),
        };
        let negative = v.sign() == Sign::Minus;
        let (int_part, frac_part) = v.abs().div_rem(&scale);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            let frac = frac_part.to_string();
            for _ in frac.len()..digits {
                out.push('0');
            }
            out.push_str(&frac);
        }
        out
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.mantissa.sign(), other.mantissa.sign());
        if a != b {
            return a.cmp(&b);
        }
        let e = self.exponent.min(other.exponent);
        let lhs = &self.mantissa << (self.exponent - e) as u64;
        let rhs = &other.mantissa << (other.exponent - e) as u64;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let m = (&self.mantissa << (self.exponent - e) as u64)
            + (&rhs.mantissa << (rhs.exponent - e) as u64);
        Dyadic::new(m, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_integer(v)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.floor())
        } else {
            write!(f, "{}", self.to_decimal(20, Round::Down))
        }
    }
}
