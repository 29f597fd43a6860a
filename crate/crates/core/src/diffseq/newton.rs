use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::arith::Rational;
use crate::{Error, Result};

static PASCAL: OnceLock<RwLock<Vec<Arc<[BigInt]>>>> = OnceLock::new();

/// Row `n` of Pascal's triangle, `C(n, 0) ..= C(n, n)`, built by the exact
/// additive recurrence and cached.
pub fn binomial_row(n: usize) -> Arc<[BigInt]> {
    let cache = PASCAL.get_or_init(|| RwLock::new(vec![Arc::from(vec![BigInt::one()])]));
    if let Some(row) = cache.read().expect("pascal cache poisoned").get(n) {
        return row.clone();
    }
    let mut rows = cache.write().expect("pascal cache poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 present").clone();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigInt::one());
        next.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
        next.push(BigInt::one());
        rows.push(Arc::from(next));
    }
    rows[n].clone()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Forward nth difference of equally spaced samples:
/// `sum_i C(n, i) (-1)^(n-i) values[i]` with `n = values.len() - 1`.
pub fn forward_difference(values: &[Rational]) -> Rational {
    let n = values.len().saturating_sub(1);
    let row = binomial_row(n);
    values
        .iter()
        .zip(row.iter())
        .enumerate()
        .fold(Rational::zero(), |acc, (i, (v, c))| {
            let term = v * Rational::from_integer(c.clone());
            if (n - i).is_multiple_of(2) {
                acc + term
            } else {
                acc - term
            }
        })
}

/// `sum_{i=0}^{n} C(n, i) (-1)^i P(x - k i)`.
///
/// This is the forward nth difference with step `k` of the grid
/// `x - k n, ..., x - k, x`, i.e. of the grid ending at `x`. For a polynomial
/// of degree exactly `n` it equals `a0 * k^n * n!` for every `x`; for lower
/// degree it is zero.
pub fn binomial_nth_difference(
    poly: &Polynomial,
    x: &Rational,
    k: &Rational,
    n: usize,
) -> Result<Rational> {
    if k.is_zero() {
        return Err(Error::ZeroStep);
    }
    let row = binomial_row(n);
    let mut acc = Rational::zero();
    for (i, c) in row.iter().enumerate() {
        let node = x - k * Rational::from_integer(i.into());
        let term = poly.eval(&node) * Rational::from_integer(c.clone());
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `a0 * k^n * n!`, the constant nth difference of a degree-n polynomial.
pub fn newton_constant(poly: &Polynomial, k: &Rational) -> Rational {
    let n = poly.degree();
    poly.leading() * num_traits::pow(k.clone(), n) * Rational::from_integer(factorial(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSample {
    pub x: Rational,
    pub value: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonReport {
    pub degree: usize,
    pub step: Rational,
    pub expected: Rational,
    pub samples: Vec<NewtonSample>,
}

impl NewtonReport {
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }
}

/// Evaluates the nth difference of `poly` (n = its degree) at every sample
/// point and compares it with `a0 * k^n * n!`.
pub fn verify_newton_theorem(
    poly: &Polynomial,
    k: &Rational,
    x_samples: &[Rational],
) -> Result<NewtonReport> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::DegreeTooLow);
    }
    if k.is_zero() {
        return Err(Error::ZeroStep);
    }
    let expected = newton_constant(poly, k);
    let samples = x_samples
        .iter()
        .map(|x| {
            let value = binomial_nth_difference(poly, x, k, n)?;
            let pass = value == expected;
            Ok(NewtonSample {
                x: x.clone(),
                value,
                pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NewtonReport {
        degree: n,
        step: k.clone(),
        expected,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffseq::difference_table;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        r(n, 1)
    }

    #[test]
    fn pascal_rows() {
        let row: Vec<i64> = binomial_row(5)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(binomial_row(0).len(), 1);
        assert_eq!(binomial_row(64)[32].to_string(), "1832624140942590534");
        assert_eq!(factorial(10), BigInt::from(3628800));
    }

    #[test]
    fn cubes_third_difference_is_six() {
        let p: Polynomial = "x^3".parse().unwrap();
        assert_eq!(
            binomial_nth_difference(&p, &int(5), &int(1), 3).unwrap(),
            int(6)
        );
    }

    #[test]
    fn order_above_degree_vanishes() {
        let p: Polynomial = "x^2".parse().unwrap();
        for x in [-3, 0, 11] {
            assert_eq!(
                binomial_nth_difference(&p, &int(x), &int(1), 3).unwrap(),
                int(0)
            );
        }
    }

    #[test]
    fn rational_step_example() {
        let p: Polynomial = "2x^3 + 7x - 1".parse().unwrap();
        let x = int(-4);
        let k = r(3, 2);
        // direct four-term sum
        let direct = p.eval(&x) - int(3) * p.eval(&(&x - &k))
            + int(3) * p.eval(&(&x - &k * int(2)))
            - p.eval(&(&x - &k * int(3)));
        assert_eq!(direct, r(81, 2));
        assert_eq!(binomial_nth_difference(&p, &x, &k, 3).unwrap(), r(81, 2));
    }

    #[test]
    fn zero_step_rejected() {
        let p: Polynomial = "x".parse().unwrap();
        assert_eq!(
            binomial_nth_difference(&p, &int(0), &int(0), 1),
            Err(Error::ZeroStep)
        );
        assert_eq!(
            verify_newton_theorem(&p, &int(0), &[int(0)]),
            Err(Error::ZeroStep)
        );
        let c: Polynomial = "4".parse().unwrap();
        assert_eq!(
            verify_newton_theorem(&c, &int(1), &[int(0)]),
            Err(Error::DegreeTooLow)
        );
    }

    #[test]
    fn newton_report_examples() {
        let sq: Polynomial = "x^2".parse().unwrap();
        let xs: Vec<_> = (0..=10).map(int).collect();
        let rep = verify_newton_theorem(&sq, &int(1), &xs).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.expected, int(2));

        let quartic: Polynomial = "5x^4 - x".parse().unwrap();
        let rep = verify_newton_theorem(&quartic, &int(-2), &[int(-3), int(0), int(7)]).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.expected, int(1920));

        let lin: Polynomial = "x".parse().unwrap();
        let rep = verify_newton_theorem(&lin, &r(1, 3), &[int(0)]).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.expected, r(1, 3));
    }

    #[test]
    fn agrees_with_table_entries() {
        let p: Polynomial = "3x^4 - 2x^2 + x - 9".parse().unwrap();
        let n = 4;
        let seq: Vec<_> = (0..12).map(|j| p.eval(&int(j))).collect();
        let table = difference_table(&seq, n).unwrap();
        for (m, entry) in table.row(n).unwrap().iter().enumerate() {
            let x = int((m + n) as i64);
            assert_eq!(&binomial_nth_difference(&p, &x, &int(1), n).unwrap(), entry);
        }
    }

    #[test]
    fn forward_difference_matches_binomial_sum() {
        let p: Polynomial = "x^3 - x".parse().unwrap();
        let k = r(1, 4);
        let x = r(7, 3);
        let values: Vec<_> = (0..=3)
            .map(|i| p.eval(&(&x - &k * int(3) + &k * int(i))))
            .collect();
        assert_eq!(
            forward_difference(&values),
            binomial_nth_difference(&p, &x, &k, 3).unwrap()
        );
    }
}
