//! Integer nth roots and certified nth-root enclosures.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::{Dyadic, Rational, RealInterval};
use crate::{Error, Result};

/// `(floor(value^(1/n)), value is a perfect nth power)`.
///
/// Values that fit a machine word take a fast path; larger values fall back
/// to the big-integer Newton iteration.
pub fn integer_nth_root(value: &BigUint, n: u32) -> (BigUint, bool) {
    assert!(n >= 1, "root index must be at least 1");
    if let Some(v) = value.to_u64() {
        let (r, exact) = integer_nth_root_u64(v, n);
        return (BigUint::from(r), exact);
    }
    if let Some(v) = value.to_u128() {
        let (r, exact) = integer_nth_root_u128(v, n);
        return (BigUint::from(r), exact);
    }
    let root = value.nth_root(n);
    let exact = Pow::pow(&root, n) == *value;
    (root, exact)
}

pub fn integer_nth_root_u64(value: u64, n: u32) -> (u64, bool) {
    assert!(n >= 1, "root index must be at least 1");
    let r = value.nth_root(n);
    (r, r.checked_pow(n) == Some(value))
}

pub fn integer_nth_root_u128(value: u128, n: u32) -> (u128, bool) {
    assert!(n >= 1, "root index must be at least 1");
    let r = value.nth_root(n);
    (r, r.checked_pow(n) == Some(value))
}

/// Enclosure of `value^(1/n)` for a nonnegative integer, with `precision_bits`
/// fractional bits. Perfect powers come back as point intervals.
pub fn nth_root_of_integer(value: &BigUint, n: u32, precision_bits: u32) -> RealInterval {
    assert!(n >= 1, "root index must be at least 1");
    if n == 1 {
        return RealInterval::point(Dyadic::from_integer(BigInt::from(value.clone())));
    }
    let s = precision_bits as u64;
    let scaled = value << (s * n as u64);
    let (r, exact) = integer_nth_root(&scaled, n);
    bracket(BigInt::from(r), exact, precision_bits)
}

/// Enclosure `[lo, hi]` of `value^(1/n)` with `lo^n <= value <= hi^n` and
/// `hi - lo <= 2^(1 - precision_bits)`.
pub fn nth_root_interval(value: &Rational, n: u32, precision_bits: u32) -> Result<RealInterval> {
    if n == 0 {
        return Err(Error::Domain("root index must be at least 1".into()));
    }
    if value.numer().sign() == Sign::Minus {
        return Err(Error::Domain(format!("nth root of negative value {value}")));
    }
    if value.is_integer() {
        let v = value.numer().to_biguint().expect("nonnegative");
        return Ok(nth_root_of_integer(&v, n, precision_bits));
    }
    let s = precision_bits as u64;
    let (q, rem) = (value.numer() << (s * n as u64)).div_rem(value.denom());
    let q = q.to_biguint().expect("nonnegative");
    let (r, exact) = integer_nth_root(&q, n);
    Ok(bracket(
        BigInt::from(r),
        exact && rem.is_zero(),
        precision_bits,
    ))
}

/// Largest multiple of `2^-bits` whose nth power is `<= d` (for `d >= 0`).
pub(crate) fn root_floor(d: &Dyadic, n: u32, bits: u32) -> Dyadic {
    let (r, _) = scaled_root(d, n, bits);
    Dyadic::new(r, -(bits as i64))
}

/// Smallest multiple of `2^-bits` whose nth power is `>= d` (for `d >= 0`).
pub(crate) fn root_ceil(d: &Dyadic, n: u32, bits: u32) -> Dyadic {
    let (r, exact) = scaled_root(d, n, bits);
    let r = if exact { r } else { r + 1 };
    Dyadic::new(r, -(bits as i64))
}

fn scaled_root(d: &Dyadic, n: u32, bits: u32) -> (BigInt, bool) {
    debug_assert!(!d.is_negative());
    // d * 2^(n*bits) = m * 2^(e + n*bits)
    let shift = d.exponent() + n as i64 * bits as i64;
    let m = d.mantissa().to_biguint().expect("nonnegative");
    let (scaled, lossless) = if shift >= 0 {
        (m << shift as u64, true)
    } else {
        let k = (-shift) as u64;
        let low_zero = m.trailing_zeros().is_none_or(|tz| tz >= k);
        (m >> k, low_zero)
    };
    let (r, exact) = integer_nth_root(&scaled, n);
    (BigInt::from(r), exact && lossless)
}

fn bracket(root: BigInt, exact: bool, precision_bits: u32) -> RealInterval {
    let e = -(precision_bits as i64);
    let lo = Dyadic::new(root.clone(), e);
    let hi = if exact {
        lo.clone()
    } else {
        Dyadic::new(root + BigInt::one(), e)
    };
    RealInterval::with_precision(lo, hi, precision_bits)
}
