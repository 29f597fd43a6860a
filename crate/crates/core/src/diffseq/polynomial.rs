use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{parse_rational, Rational};
use crate::Error;

/// Polynomial with exact rational coefficients, leading coefficient first:
/// `coefficients[0] * x^n + ... + coefficients[n]`.
///
/// The leading coefficient is nonzero unless the polynomial is identically
/// zero, which is stored as the single coefficient `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coefficients: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        let first = coefficients
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(coefficients.len());
        let mut coefficients = coefficients[first..].to_vec();
        if coefficients.is_empty() {
            coefficients.push(Rational::zero());
        }
        Polynomial { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        Self::new(
            coefficients
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    /// `coefficient * x^degree`.
    pub fn monomial(coefficient: Rational, degree: usize) -> Self {
        let mut coefficients = vec![Rational::zero(); degree + 1];
        coefficients[0] = coefficient;
        Self::new(coefficients)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn leading(&self) -> &Rational {
        &self.coefficients[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0].is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Polynomial {
        let n = self.degree();
        if n == 0 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coefficients[..n]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(n - i)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Polynomial {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Polynomial::new(self.coefficients.iter().map(|c| c * factor).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let padded = |p: &Polynomial| {
            let mut v = vec![Rational::zero(); len - p.coefficients.len()];
            v.extend(p.coefficients.iter().cloned());
            v
        };
        let (a, b) = (padded(self), padded(rhs));
        Polynomial::new(a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - i;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = power == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses sums of terms such as `2x^3 + 7x - 1`, `5*x^4 - x` or
    /// `(3/2)x^2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len()
                || (matches!(bytes[i], b'+' | b'-')
                    && !matches!(bytes[i - 1], b'^' | b'e' | b'E' | b'(' | b'/'));
            if boundary {
                terms.push(parse_term(&compact[start..i])?);
                start = i;
            }
        }
        let degree = terms.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut coefficients = vec![Rational::zero(); degree + 1];
        for (d, c) in terms {
            coefficients[degree - d] += c;
        }
        Ok(Polynomial::new(coefficients))
    }
}

fn parse_term(term: &str) -> Result<(usize, Rational), Error> {
    let bad = || Error::Parse(format!("malformed polynomial term {term:?}"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff_text, power) = match body.find('x') {
        None => (body, 0usize),
        Some(ix) => {
            let after = &body[ix + 1..];
            let power = if after.is_empty() {
                1
            } else {
                let digits = after.strip_prefix('^').ok_or_else(bad)?;
                digits.parse::<usize>().map_err(|_| bad())?
            };
            (body[..ix].trim_end_matches('*'), power)
        }
    };
    let coeff_text = coeff_text
        .strip_prefix('(')
        .and_then(|c| c.strip_suffix(')'))
        .unwrap_or(coeff_text);
    let mut coeff = if coeff_text.is_empty() {
        Rational::one()
    } else {
        parse_rational(coeff_text)?
    };
    if negative {
        coeff = -coeff;
    }
    Ok((power, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn strips_leading_zeros() {
        let p = Polynomial::from_integers(&[0, 0, 3, 1]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.leading(), &r(3, 1));
        assert!(Polynomial::from_integers(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), 0);
    }

    #[test]
    fn parses_and_prints() {
        let p: Polynomial = "2x^3 + 7x - 1".parse().unwrap();
        assert_eq!(p, Polynomial::from_integers(&[2, 0, 7, -1]));
        assert_eq!(p.to_string(), "2x^3 + 7x - 1");
        let q: Polynomial = "5*x^4 - x".parse().unwrap();
        assert_eq!(q, Polynomial::from_integers(&[5, 0, 0, -1, 0]));
        let h: Polynomial = "(3/2)x^2 - 1/3".parse().unwrap();
        assert_eq!(h.coefficients(), &[r(3, 2), r(0, 1), r(-1, 3)]);
        assert_eq!(h.to_string(), "(3/2)x^2 - (1/3)");
        let e: Polynomial = "-x^3 + x^3 + 4".parse().unwrap();
        assert_eq!(e, Polynomial::from_integers(&[4]));
        assert_eq!(
            "x".parse::<Polynomial>().unwrap(),
            Polynomial::from_integers(&[1, 0])
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Polynomial>().is_err());
        assert!("2y".parse::<Polynomial>().is_err());
        assert!("x^".parse::<Polynomial>().is_err());
        assert!("3 +".parse::<Polynomial>().is_err());
    }

    #[test]
    fn horner_and_derivatives() {
        let p = Polynomial::from_integers(&[2, 0, 7, -1]);
        assert_eq!(p.eval(&r(-4, 1)), r(-157, 1));
        assert_eq!(p.derivative(), Polynomial::from_integers(&[6, 0, 7]));
        assert_eq!(p.nth_derivative(3), Polynomial::from_integers(&[12]));
        assert!(p.nth_derivative(4).is_zero());
        assert_eq!(p.eval_f64(0.5), 2.0 * 0.125 + 3.5 - 1.0);
    }
}
