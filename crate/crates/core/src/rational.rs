//! Exact rational arithmetic for probability tables.
//!
//! Probability axioms here are exact identities (`= 1`, `+ ... = 1`), so the
//! whole module works on reduced `i64/i64` fractions with `i128`
//! intermediates; floating point is never involved.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use serde::{Deserialize, Serialize};

/// A rational number in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    num: i64,
    den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioError {
    ZeroDenominator,
    Overflow,
    Malformed(String),
}

impl fmt::Display for RatioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioError::ZeroDenominator => write!(f, "zero denominator"),
            RatioError::Overflow => write!(f, "rational overflow"),
            RatioError::Malformed(s) => write!(f, "malformed rational: {}", s),
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn reduce(num: i128, den: i128) -> Result<Ratio, RatioError> {
    if den == 0 {
        return Err(RatioError::ZeroDenominator);
    }
    let sign = if den < 0 { -1 } else { 1 };
    let g = gcd(num, den).max(1);
    let num = sign * num / g;
    let den = sign * den / g;
    if num > i64::MAX as i128 || num < i64::MIN as i128 || den > i64::MAX as i128 {
        return Err(RatioError::Overflow);
    }
    Ok(Ratio {
        num: num as i64,
        den: den as i64,
    })
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, RatioError> {
        reduce(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    pub fn in_unit_interval(&self) -> bool {
        *self >= Ratio::ZERO && *self <= Ratio::ONE
    }

    pub fn checked_add(&self, other: &Ratio) -> Result<Ratio, RatioError> {
        let num = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        let den = self.den as i128 * other.den as i128;
        reduce(num, den)
    }

    pub fn checked_sub(&self, other: &Ratio) -> Result<Ratio, RatioError> {
        let num = self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128;
        let den = self.den as i128 * other.den as i128;
        reduce(num, den)
    }

    /// `1 - self`.
    pub fn complement(&self) -> Result<Ratio, RatioError> {
        Ratio::ONE.checked_sub(self)
    }

    /// Parses `"n"`, `"n/d"`, or a finite decimal such as `"0.25"`.
    ///
    /// Decimals convert exactly (denominator a power of ten); anything that
    /// cannot be represented exactly is rejected.
    pub fn parse(text: &str) -> Result<Self, RatioError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(RatioError::Malformed(String::from("empty")));
        }
        if let Some((n, d)) = text.split_once('/') {
            let num: i64 = n
                .trim()
                .parse()
                .map_err(|_| RatioError::Malformed(text.into()))?;
            let den: i64 = d
                .trim()
                .parse()
                .map_err(|_| RatioError::Malformed(text.into()))?;
            return Ratio::new(num, den);
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            if !int_digits.chars().all(|c| c.is_ascii_digit())
                || !frac_part.chars().all(|c| c.is_ascii_digit())
                || frac_part.is_empty()
            {
                return Err(RatioError::Malformed(text.into()));
            }
            let mut num: i128 = if int_digits.is_empty() {
                0
            } else {
                int_digits.parse().map_err(|_| RatioError::Overflow)?
            };
            let mut den: i128 = 1;
            for c in frac_part.chars() {
                num = num.checked_mul(10).ok_or(RatioError::Overflow)?;
                num = num
                    .checked_add((c as u8 - b'0') as i128)
                    .ok_or(RatioError::Overflow)?;
                den = den.checked_mul(10).ok_or(RatioError::Overflow)?;
            }
            if negative {
                num = -num;
            }
            return reduce(num, den);
        }
        let num: i64 = text
            .parse()
            .map_err(|_| RatioError::Malformed(text.into()))?;
        Ok(Ratio::from_int(num))
    }

    /// Canonical text form: integers as `"n"`, everything else as `"n/d"`.
    pub fn display(&self) -> String {
        if self.den == 1 {
            format!("{}", self.num)
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}
