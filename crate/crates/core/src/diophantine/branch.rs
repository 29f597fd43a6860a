use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{integer_nth_root, integer_nth_root_u128, nth_root_of_integer, RealInterval};
use crate::diffseq::{binomial_row, factorial};
use crate::{Error, Result};

/// The family `z^n = A (x' + p)^n + p^n`, `p = 0, 1, 2, ...`, obtained from
/// `z^n = A x^n + y^n` by fixing the leg difference `x' = x - y` and letting
/// `p` play the role of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Branch {
    x_prime: u64,
    n: u32,
    a: u64,
}

impl Branch {
    pub fn new(x_prime: u64, n: u32, a: u64) -> Result<Self> {
        if x_prime == 0 {
            return Err(Error::Domain("x' must be at least 1 (x > y)".into()));
        }
        if n < 2 {
            return Err(Error::Domain(format!("power must be at least 2, got {n}")));
        }
        if a == 0 {
            return Err(Error::Domain("coefficient A must be at least 1".into()));
        }
        Ok(Branch { x_prime, n, a })
    }

    /// `A = 1`, the two-term case `z^n = x^n + y^n`.
    pub fn unit(x_prime: u64, n: u32) -> Result<Self> {
        Self::new(x_prime, n, 1)
    }

    pub fn x_prime(&self) -> u64 {
        self.x_prime
    }

    pub fn power(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self) -> u64 {
        self.a
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    /// `z_p^n = A (x' + p)^n + p^n`, exactly.
    pub fn zn(&self, p: u64) -> BigUint {
        if let Some(v) = self.zn_u128(p) {
            return BigUint::from(v);
        }
        let leg = BigUint::from(self.x_prime) + p;
        BigUint::from(self.a) * Pow::pow(&leg, self.n) + Pow::pow(&BigUint::from(p), self.n)
    }

    pub(crate) fn zn_u128(&self, p: u64) -> Option<u128> {
        let leg = (self.x_prime as u128).checked_add(p as u128)?;
        let big = leg.checked_pow(self.n)?.checked_mul(self.a as u128)?;
        big.checked_add((p as u128).checked_pow(self.n)?)
    }

    /// Whether `z_p` is an integer, decided by an exact integer nth root.
    pub fn is_integer_point(&self, p: u64) -> bool {
        match self.zn_u128(p) {
            Some(v) => integer_nth_root_u128(v, self.n).1,
            None => integer_nth_root(&self.zn(p), self.n).1,
        }
    }

    /// Enclosure of `z_p` with `bits` fractional bits; a point when `z_p` is
    /// an integer.
    pub fn z_interval(&self, p: u64, bits: u32) -> RealInterval {
        nth_root_of_integer(&self.zn(p), self.n, bits)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x'={} n={} A={}", self.x_prime, self.n, self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub p: u64,
    pub zn: BigUint,
    pub z_floor: BigUint,
    pub is_integer: bool,
    pub z: RealInterval,
}

pub fn branch_point(branch: &Branch, p: u64) -> BranchPoint {
    branch_point_at(branch, p, 64)
}

pub fn branch_point_at(branch: &Branch, p: u64, bits: u32) -> BranchPoint {
    let zn = branch.zn(p);
    let (z_floor, is_integer) = integer_nth_root(&zn, branch.n);
    let z = nth_root_of_integer(&zn, branch.n, bits);
    BranchPoint {
        p,
        zn,
        z_floor,
        is_integer,
        z,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub sum: BigInt,
    pub expected: BigInt,
}

impl IdentityCheck {
    pub fn residual(&self) -> BigInt {
        &self.sum - &self.expected
    }

    pub fn passes(&self) -> bool {
        self.residual().is_zero()
    }
}

/// `sum_{i=0}^{n} C(n, i) (-1)^(n-i) z_{y+i}^n` against `(A + 1) n!`.
///
/// Each branch value is a sum of two nth powers of consecutive-integer
/// arguments, and each contributes its own constant nth difference.
pub fn verify_branch_identity(branch: &Branch, y: u64) -> IdentityCheck {
    let n = branch.n as usize;
    let row = binomial_row(n);
    let mut sum = BigInt::zero();
    for (i, c) in row.iter().enumerate() {
        let term = c * BigInt::from(branch.zn(y + i as u64));
        if (n - i).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    IdentityCheck {
        sum,
        expected: BigInt::from(branch.a + 1) * factorial(n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub x_prime: u64,
    pub p: u64,
    pub z: BigUint,
}

/// Largest brute-force search accepted by [`brute_force_solutions`].
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 32;

/// Every `(x', p, z)` with `1 <= x' <= x_prime_max`, `0 <= p <= p_max` and
/// `z^n = A (x' + p)^n + p^n`.
///
/// Independent of the nth-root path used elsewhere: along each branch `z_p`
/// increases with `p`, so a single integer cursor walked upward finds every
/// integer point by comparing exact powers.
pub fn brute_force_solutions(
    n: u32,
    a: u64,
    x_prime_max: u64,
    p_max: u64,
    budget: u128,
) -> Result<Vec<Solution>> {
    if x_prime_max == 0 {
        return Err(Error::Domain("x' range is empty".into()));
    }
    let requested = x_prime_max as u128 * (p_max as u128 + 1);
    if requested > budget {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    let branches = (1..=x_prime_max)
        .map(|x| Branch::new(x, n, a))
        .collect::<Result<Vec<_>>>()?;
    let mut found: Vec<Solution> = branches
        .par_iter()
        .flat_map_iter(|b| cursor_scan(b, p_max))
        .collect();
    found.sort();
    Ok(found)
}

fn cursor_scan(branch: &Branch, p_max: u64) -> Vec<Solution> {
    let n = branch.n;
    let mut out = Vec::new();
    let (mut z, _) = integer_nth_root(&branch.zn(0), n);
    let mut z_pow = Pow::pow(&z, n);
    for p in 0..=p_max {
        let target = branch.zn(p);
        while z_pow < target {
            z += BigUint::one();
            z_pow = Pow::pow(&z, n);
        }
        if z_pow == target {
            out.push(Solution {
                x_prime: branch.x_prime,
                p,
                z: z.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_validation() {
        assert!(Branch::new(0, 2, 1).is_err());
        assert!(Branch::new(1, 1, 1).is_err());
        assert!(Branch::new(1, 2, 0).is_err());
        assert!(Branch::new(1, 2, 1).is_ok());
    }

    #[test]
    fn three_four_five() {
        let b = Branch::unit(1, 2).unwrap();
        let pt = branch_point(&b, 3);
        assert_eq!(pt.zn, BigUint::from(25u32));
        assert!(pt.is_integer);
        assert_eq!(pt.z_floor, BigUint::from(5u32));
        assert!(pt.z.is_point());
    }

    #[test]
    fn twenty_twentyone_twentynine() {
        let b = Branch::unit(1, 2).unwrap();
        let pt = branch_point(&b, 20);
        assert_eq!(pt.zn, BigUint::from(841u32));
        assert!(pt.is_integer);
        assert_eq!(pt.z_floor, BigUint::from(29u32));
    }

    #[test]
    fn origin_is_x_prime_for_unit_branches() {
        for (x, n) in [(1, 2), (7, 3), (12, 9)] {
            let b = Branch::unit(x, n).unwrap();
            let pt = branch_point(&b, 0);
            assert!(pt.is_integer);
            assert_eq!(pt.z_floor, BigUint::from(x));
        }
        let b = Branch::new(2, 2, 3).unwrap();
        let pt = branch_point(&b, 0);
        assert_eq!(pt.zn, BigUint::from(12u32));
        assert!(!pt.is_integer);
    }

    #[test]
    fn branch_point_invariants() {
        let b = Branch::new(5, 4, 2).unwrap();
        for p in 0..50 {
            let pt = branch_point(&b, p);
            let lo = Pow::pow(&pt.z_floor, 4u32);
            let hi = Pow::pow(&(&pt.z_floor + 1u32), 4u32);
            assert!(lo <= pt.zn && pt.zn < hi);
            assert_eq!(pt.is_integer, lo == pt.zn);
            assert_eq!(pt.is_integer, b.is_integer_point(p));
        }
    }

    #[test]
    fn identity_examples() {
        let c = verify_branch_identity(&Branch::unit(5, 3).unwrap(), 2);
        assert_eq!(c.sum, BigInt::from(12));
        assert!(c.passes());
        let c = verify_branch_identity(&Branch::unit(1, 2).unwrap(), 0);
        // z2^2 - 2 z1^2 + z0^2 = 13 - 10 + 1
        assert_eq!(c.sum, BigInt::from(4));
        assert!(c.passes());
        let c = verify_branch_identity(&Branch::new(3, 2, 4).unwrap(), 1);
        assert_eq!(c.sum, BigInt::from(10));
        assert!(c.passes());
    }

    #[test]
    fn large_values_leave_the_fast_path() {
        let b = Branch::unit(1_000_000, 12).unwrap();
        assert!(b.zn_u128(10).is_none());
        assert!(b.is_integer_point(0));
        assert!(!b.is_integer_point(10));
        assert!(verify_branch_identity(&b, 123_456).passes());
    }

    #[test]
    fn brute_force_small_pythagorean_range() {
        let sols = brute_force_solutions(2, 1, 5, 25, DEFAULT_SEARCH_BUDGET).unwrap();
        for s in &sols {
            let b = Branch::unit(s.x_prime, 2).unwrap();
            assert_eq!(Pow::pow(&s.z, 2u32), b.zn(s.p));
        }
        assert!(sols.contains(&Solution {
            x_prime: 1,
            p: 3,
            z: BigUint::from(5u32)
        }));
        assert!(sols.contains(&Solution {
            x_prime: 1,
            p: 20,
            z: BigUint::from(29u32)
        }));
        // 6-8-10
        assert!(sols.contains(&Solution {
            x_prime: 2,
            p: 6,
            z: BigUint::from(10u32)
        }));
        let origin = brute_force_solutions(2, 1, 5, 0, DEFAULT_SEARCH_BUDGET).unwrap();
        let expected: Vec<_> = (1..=5)
            .map(|x| Solution {
                x_prime: x,
                p: 0,
                z: BigUint::from(x),
            })
            .collect();
        assert_eq!(origin, expected);
    }

    #[test]
    fn brute_force_budget() {
        assert_eq!(
            brute_force_solutions(2, 1, 10, 99, 999),
            Err(Error::BudgetExceeded {
                requested: 1000,
                budget: 999
            })
        );
    }
}
