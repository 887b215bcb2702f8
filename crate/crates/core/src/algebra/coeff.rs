use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, the value type of weights and norm bounds.
pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for a non-negative exponent.
pub fn rational_pow(base: &Rational, exp: usize) -> Rational {
    num::pow::pow(base.clone(), exp)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = |message: String| Error::Parse { offset: 0, message };
    let parse_int = |s: &str| {
        BigInt::from_str(s.trim()).map_err(|_| bad(format!("invalid rational {text:?}")))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// A Gaussian rational `re + im·i`. `BigRational` keeps both parts in
/// lowest terms with positive denominators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    pub re: Rational,
    pub im: Rational,
}

impl Coefficient {
    pub fn new(re: Rational, im: Rational) -> Coefficient {
        Coefficient { re, im }
    }

    pub fn real(re: Rational) -> Coefficient {
        Coefficient {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Coefficient {
        Coefficient::real(integer(n))
    }

    pub fn zero() -> Coefficient {
        Coefficient::default()
    }

    pub fn one() -> Coefficient {
        Coefficient::from_int(1)
    }

    pub fn i() -> Coefficient {
        Coefficient::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Coefficient {
        Coefficient::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, always exact.
    pub fn modulus_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Bracket `[lower, upper]` around `|z|`; exact when the coefficient is
    /// real or purely imaginary, `max(|a|,|b|) <= |z| <= |a|+|b|` otherwise.
    pub fn modulus_bracket(&self) -> (Rational, Rational) {
        let a = self.re.abs();
        let b = self.im.abs();
        if b.is_zero() {
            (a.clone(), a)
        } else if a.is_zero() {
            (b.clone(), b)
        } else {
            let lower = if a > b { a.clone() } else { b.clone() };
            (lower, a + b)
        }
    }

    pub fn scale(&self, r: &Rational) -> Coefficient {
        Coefficient::new(&self.re * r, &self.im * r)
    }

    pub fn parse(re: &str, im: &str) -> Result<Coefficient> {
        Ok(Coefficient::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Coefficient::real(r)
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl Coefficient {
    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Coefficient {
        let n = self.modulus_squared();
        assert!(!n.is_zero(), "inverse of zero coefficient");
        Coefficient::new(&self.re / &n, -(&self.im / &n))
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}i)", self.re, -self.im.clone())
                } else {
                    write!(f, "({} + {}i)", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact check of `|z| >= |w| - tau` for `tau >= 0`, by comparing squares.
pub fn modulus_at_least_difference(z: &Coefficient, w: &Coefficient, tau: &Rational) -> bool {
    assert!(!tau.is_negative(), "tau must be non-negative");
    let z2 = z.modulus_squared();
    let w2 = w.modulus_squared();
    let tau2 = tau * tau;
    // |w| <= tau makes the right side non-positive
    if w2 <= tau2 {
        return true;
    }
    // |z|^2 >= |w|^2 - 2 tau |w| + tau^2  <=>  2 tau |w| >= w2 + tau2 - z2
    let rest = &w2 + &tau2 - &z2;
    if !rest.is_positive() {
        return true;
    }
    integer(4) * &tau2 * &w2 >= &rest * &rest
}

/// Exact check of `|w| > tau` for `tau >= 0`.
pub fn modulus_exceeds(w: &Coefficient, tau: &Rational) -> bool {
    w.modulus_squared() > tau * tau
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let z = Coefficient::parse("1/2", "-3").unwrap();
        let w = Coefficient::parse("2", "1/3").unwrap();
        assert_eq!(&(&z * &w) * &w.inv(), z);
        assert_eq!(&z - &z, Coefficient::zero());
        assert_eq!(&Coefficient::i() * &Coefficient::i(), Coefficient::from_int(-1));
    }

    #[test]
    fn canonical_form() {
        let z = Coefficient::parse("2/4", "-6/-3").unwrap();
        assert_eq!(z, Coefficient::new(rational(1, 2), integer(2)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn bracket() {
        assert_eq!(Coefficient::from_int(-3).modulus_bracket(), (integer(3), integer(3)));
        assert_eq!(Coefficient::parse("1", "1").unwrap().modulus_bracket(), (integer(1), integer(2)));
    }

    #[test]
    fn difference_check() {
        let one = Coefficient::one();
        assert!(modulus_at_least_difference(&one, &one, &rational(1, 4)));
        assert!(!modulus_at_least_difference(&Coefficient::from_int(0), &one, &rational(1, 4)));
        let z = Coefficient::parse("3/5", "4/5").unwrap();
        assert!(modulus_at_least_difference(&z, &Coefficient::from_int(2), &integer(1)));
        assert!(!modulus_at_least_difference(&z, &Coefficient::from_int(2), &rational(99, 100)));
    }
}
