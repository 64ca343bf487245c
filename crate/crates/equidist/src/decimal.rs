//! Exact decimal fractions. Coefficients and interval endpoints enter as
//! decimal strings; keeping them as integer mantissa / power-of-ten pairs
//! makes floor reductions and membership tests exact instead of rounding
//! through f64 twice.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Maximum digits after the decimal point. Keeps mantissa * modulus inside
/// u128 for any 64-bit modulus: 10^19 < 2^64, so the product stays < 2^128.
pub const MAX_SCALE: u32 = 19;

/// A non-negative decimal `mantissa / 10^scale`, normalized so the mantissa
/// has no trailing zeros (and zero is `0 / 10^0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: u128,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: u128, scale: u32) -> Result<Self> {
        let mut d = Decimal { mantissa, scale };
        d.normalize();
        if d.scale > MAX_SCALE {
            return Err(Error::BadDecimal {
                text: format!("{mantissa}e-{scale}"),
                reason: "more than 19 significant decimal places",
            });
        }
        Ok(d)
    }

    pub fn zero() -> Self {
        Decimal { mantissa: 0, scale: 0 }
    }

    fn normalize(&mut self) {
        if self.mantissa == 0 {
            self.scale = 0;
            return;
        }
        while self.scale > 0 && self.mantissa % 10 == 0 {
            self.mantissa /= 10;
            self.scale -= 1;
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = |reason: &'static str| Error::BadDecimal { text: t.to_string(), reason };
        if t.is_empty() {
            return Err(bad("empty"));
        }
        let (int_part, frac_part) = match t.split_once('.') {
            Some((i, f)) => (i, f),
            None => (t, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("no digits"));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad("expected digits and at most one decimal point"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mantissa: u128 = digits.parse().map_err(|_| bad("too many digits"))?;
        let mut scale = frac_part.len() as u32;
        // Strip trailing zeros before the cap so "0.5000..." stays legal.
        let mut m = mantissa;
        while scale > 0 && m != 0 && m % 10 == 0 {
            m /= 10;
            scale -= 1;
        }
        if m == 0 {
            scale = 0;
        }
        if scale > MAX_SCALE {
            return Err(bad("more than 19 significant decimal places"));
        }
        Ok(Decimal { mantissa: m, scale })
    }

    pub fn mantissa(&self) -> u128 {
        self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    fn denominator(&self) -> u128 {
        10u128.pow(self.scale)
    }

    /// value < 1 ?
    pub fn is_proper(&self) -> bool {
        self.mantissa < self.denominator()
    }

    /// Exact floor(q * self). Requires a proper fraction so the result fits u64.
    pub fn floor_mul(&self, q: u64) -> u64 {
        debug_assert!(self.is_proper());
        ((self.mantissa * q as u128) / self.denominator()) as u64
    }

    /// Smallest integer strictly greater than 1/self, i.e. the least n with
    /// n * self > 1. Zero has no reciprocal; callers must check.
    pub fn strict_reciprocal_bound(&self) -> u64 {
        debug_assert!(!self.is_zero());
        (self.denominator() / self.mantissa) as u64 + 1
    }

    /// Same bound for 1/(1 - self); requires a proper fraction.
    pub fn strict_complement_bound(&self) -> u64 {
        debug_assert!(self.is_proper());
        let den = self.denominator();
        (den / (den - self.mantissa)) as u64 + 1
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa as f64 / self.denominator() as f64
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.mantissa), BigInt::from(self.denominator()))
    }
}

impl std::fmt::Display for Decimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let den = self.denominator();
        let int = self.mantissa / den;
        let frac = self.mantissa % den;
        write!(f, "{}.{:0width$}", int, frac, width = self.scale as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        let d = Decimal::parse("0.500").unwrap();
        assert_eq!((d.mantissa(), d.scale()), (5, 1));
        assert_eq!(d.to_string(), "0.5");
        assert_eq!(Decimal::parse("0").unwrap(), Decimal::zero());
        assert_eq!(Decimal::parse(".25").unwrap().to_string(), "0.25");
        assert_eq!(Decimal::parse("1.0").unwrap().to_string(), "1");
    }

    #[test]
    fn rejects_junk() {
        assert!(Decimal::parse("").is_err());
        assert!(Decimal::parse("1.2.3").is_err());
        assert!(Decimal::parse("-0.5").is_err());
        assert!(Decimal::parse("0.5e-1").is_err());
        assert!(Decimal::parse(".").is_err());
        // 20 significant fractional digits
        assert!(Decimal::parse("0.12345678901234567891").is_err());
        // but trailing zeros normalize away
        assert!(Decimal::parse("0.50000000000000000000000").is_ok());
    }

    #[test]
    fn floor_mul_matches_rational_floor() {
        let d = Decimal::parse("0.15").unwrap();
        assert_eq!(d.floor_mul(7), 1); // 1.05
        let h = Decimal::parse("0.5").unwrap();
        assert_eq!(h.floor_mul(5), 2); // 2.5
        assert_eq!(Decimal::zero().floor_mul(97), 0);
    }

    #[test]
    fn strict_bounds() {
        let h = Decimal::parse("0.5").unwrap();
        assert_eq!(h.strict_reciprocal_bound(), 3); // > 2
        assert_eq!(h.strict_complement_bound(), 3); // > 2
        let d = Decimal::parse("0.15").unwrap();
        assert_eq!(d.strict_reciprocal_bound(), 7); // > 6.66
        assert_eq!(d.strict_complement_bound(), 2); // > 1.17
    }
}
