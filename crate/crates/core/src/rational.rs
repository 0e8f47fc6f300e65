//! Exact arbitrary-precision rational arithmetic.
//!
//! Every coordinate-level computation in this crate runs on
//! [`ExactRational`]: dyadic values (denominator a power of two) arise
//! from finite word prefixes, general rationals from periodic tails.
//! Values are always stored in lowest terms with a positive denominator,
//! so structural equality is value equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational scalar, kept in lowest terms with denominator > 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `n/d`, normalizing sign and reducing to lowest terms.
    ///
    /// Panics if `d == 0`; use [`ExactRational::checked_ratio`] for
    /// untrusted input.
    pub fn ratio(n: i64, d: i64) -> Self {
        ExactRational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidRational("denominator is zero".into()));
        }
        Ok(ExactRational(BigRational::new(numer, denom)))
    }

    pub fn checked_ratio(n: i64, d: i64) -> Result<Self> {
        Self::from_big(BigInt::from(n), BigInt::from(d))
    }

    /// `base^(-exp)` as an exact rational.
    pub fn inv_pow(base: u64, exp: u32) -> Self {
        ExactRational(BigRational::new(
            BigInt::one(),
            BigInt::from(base).pow(exp),
        ))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidRational("reciprocal of zero".into()));
        }
        Ok(ExactRational(self.0.recip()))
    }

    /// Nonnegative integer power.
    pub fn powu(&self, exp: u32) -> Self {
        ExactRational(Pow::pow(&self.0, exp))
    }

    /// Halves the value without a general gcd pass: the stored form is
    /// already reduced, so at most one factor of two moves between
    /// numerator and denominator.
    pub fn halved(&self) -> Self {
        let two = BigInt::from(2);
        if (self.0.numer() % &two).is_zero() {
            ExactRational(BigRational::new_raw(
                self.0.numer() / &two,
                self.0.denom().clone(),
            ))
        } else {
            ExactRational(BigRational::new_raw(
                self.0.numer().clone(),
                self.0.denom() * &two,
            ))
        }
    }

    pub fn doubled(&self) -> Self {
        let two = BigInt::from(2);
        if (self.0.denom() % &two).is_zero() {
            ExactRational(BigRational::new_raw(
                self.0.numer().clone(),
                self.0.denom() / &two,
            ))
        } else {
            ExactRational(BigRational::new_raw(
                self.0.numer() * &two,
                self.0.denom().clone(),
            ))
        }
    }

    /// Exact `n`-th root of a nonnegative value, when one exists in the
    /// rationals. Lowest-terms storage means the root exists iff the
    /// numerator and denominator are both perfect `n`-th powers.
    pub fn nth_root_exact(&self, n: u32) -> Option<Self> {
        debug_assert!(n >= 1);
        if self.is_negative() {
            return None;
        }
        let rn = self.0.numer().nth_root(n);
        if &Pow::pow(&rn, n) != self.0.numer() {
            return None;
        }
        let rd = self.0.denom().nth_root(n);
        if &Pow::pow(&rd, n) != self.0.denom() {
            return None;
        }
        Some(ExactRational(BigRational::new_raw(rn, rd)))
    }

    /// Nearest `f64`; lossy for denominators that are not powers of two.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact fraction rendering: `"num/den"`, or just `"num"` when the
    /// denominator is one. This is the canonical machine format for all
    /// JSON and CSV cells.
    pub fn to_fraction_string(&self) -> String {
        if self.0.denom().is_one() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

}

/// Exact value of the geometric tail `sum_{i >= start} base^(-i)`,
/// which closes to `base^-(start-1) / (base - 1)`.
pub fn geometric_tail(base: u64, start: u32) -> ExactRational {
    debug_assert!(base >= 2 && start >= 1);
    let denom = BigInt::from(base).pow(start - 1) * BigInt::from(base - 1);
    ExactRational(BigRational::new(BigInt::one(), denom))
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fraction_string())
    }
}

impl Hash for ExactRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Stored form is unique (lowest terms, positive denominator).
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Parses `"num"`, `"num/den"`, or a finite decimal such as `"0.25"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Self::from_big(numer, denom);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits = format!("{}{}", int_part, frac_part);
            let numer: BigInt = digits.parse().map_err(|_| bad())?;
            let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
            return Self::from_big(numer, denom);
        }
        let numer: BigInt = s.parse().map_err(|_| bad())?;
        Ok(ExactRational(BigRational::from_integer(numer)))
    }
}

impl serde::Serialize for ExactRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactRational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        self.0 *= &rhs.0;
    }
}
