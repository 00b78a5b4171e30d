//! Truncated decimal renderings of exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::quotients::Fraction;

/// Number of significant digits used by default for approximate renderings.
pub const DEFAULT_DIGITS: usize = 32;

/// Exact quantities that can report `floor(|x| * 10^k)`.
pub trait DecimalDigits {
    fn is_negative_value(&self) -> bool;
    fn is_zero_value(&self) -> bool;
    fn floor_abs_scaled(&self, k: u32) -> BigInt;

    /// Decimal rendering truncated toward zero with at least `digits`
    /// significant digits. Values with more than `digits` integer digits use
    /// scientific notation.
    fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero_value() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let mut k = digits as u32;
        let mut d = self.floor_abs_scaled(k);
        loop {
            let len = if d.is_zero() { 0 } else { d.to_string().len() };
            if len >= digits {
                break;
            }
            k += (digits - len).max(1) as u32;
            d = self.floor_abs_scaled(k);
        }
        let s = d.to_string();
        let sign = if self.is_negative_value() { "-" } else { "" };
        let int_len = s.len() as i64 - k as i64;
        if int_len > digits as i64 {
            let exp = int_len - 1;
            return format!("{sign}{}.{}e{exp}", &s[..1], &s[1..digits]);
        }
        if int_len <= 0 {
            format!("{sign}0.{}{s}", "0".repeat((-int_len) as usize))
        } else {
            let (a, b) = s.split_at(int_len as usize);
            format!("{sign}{a}.{b}")
        }
    }
}

impl DecimalDigits for Fraction {
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn floor_abs_scaled(&self, k: u32) -> BigInt {
        let scaled = self.numer().abs() * num_traits::pow(BigInt::from(10u32), k as usize);
        scaled.div_floor(self.denom())
    }
}

impl DecimalDigits for BigInt {
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn floor_abs_scaled(&self, k: u32) -> BigInt {
        self.abs() * num_traits::pow(BigInt::from(10u32), k as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        let third = Fraction::new(1.into(), 3.into());
        assert_eq!(third.to_decimal(5), "0.33333");
        let x = Fraction::new((-7).into(), 2000.into());
        assert_eq!(x.to_decimal(3), "-0.00350");
        let y = Fraction::new(1234567.into(), 10.into());
        assert_eq!(y.to_decimal(4), "1.234e5");
        assert_eq!(Fraction::zero().to_decimal(4), "0");
        assert_eq!(BigInt::from(89).to_decimal(4), "89.0000");
    }
}
