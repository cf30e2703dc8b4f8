//! Nonnegative reals stored as natural logarithms, so that bounds on the
//! order of 10^700 multiply and compare without overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `exp(ln_value)`, or exactly zero when `is_zero` is set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogMagnitude {
    is_zero: bool,
    ln_value: f64,
}

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude {
        is_zero: true,
        ln_value: f64::NEG_INFINITY,
    };
    pub const ONE: LogMagnitude = LogMagnitude {
        is_zero: false,
        ln_value: 0.0,
    };

    pub fn from_ln(ln_value: f64) -> Self {
        if ln_value == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogMagnitude {
                is_zero: false,
                ln_value,
            }
        }
    }

    pub fn from_log10(log10_value: f64) -> Self {
        Self::from_ln(log10_value * std::f64::consts::LN_10)
    }

    /// Panics on negative or NaN input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0, "LogMagnitude holds nonnegative values, got {x}");
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::from_ln(x.ln())
        }
    }

    /// `|x|` for an exact integer of any size.
    pub fn from_bigint(x: &BigInt) -> Self {
        if x.is_zero() {
            Self::ZERO
        } else {
            Self::from_ln(ln_abs_bigint(x))
        }
    }

    /// Panics on a negative rational.
    pub fn from_rational(x: &BigRational) -> Self {
        assert!(!x.is_negative(), "LogMagnitude holds nonnegative values");
        if x.is_zero() {
            Self::ZERO
        } else {
            Self::from_ln(ln_abs_bigint(x.numer()) - ln_abs_bigint(x.denom()))
        }
    }

    /// `base^exponent` with the convention `0^0 = 1`.
    pub fn powf(base: f64, exponent: f64) -> Self {
        if exponent == 0.0 {
            Self::ONE
        } else {
            Self::from_f64(base).pow(exponent)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    pub fn ln(&self) -> f64 {
        self.ln_value
    }

    pub fn log10(&self) -> f64 {
        self.ln_value / std::f64::consts::LN_10
    }

    /// Linear value; overflows to infinity beyond ~1.8e308.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero {
            0.0
        } else {
            self.ln_value.exp()
        }
    }

    pub fn pow(self, exponent: f64) -> Self {
        if exponent == 0.0 {
            return Self::ONE;
        }
        if self.is_zero {
            assert!(exponent > 0.0, "zero raised to a negative power");
            return Self::ZERO;
        }
        Self::from_ln(self.ln_value * exponent)
    }

    pub fn sqrt(self) -> Self {
        self.pow(0.5)
    }

    /// Scientific form `m × 10^e` with `m ∈ [1, 10)`. Zero maps to `(0, 0)`.
    pub fn mantissa_exponent(&self) -> (f64, i64) {
        if self.is_zero {
            return (0.0, 0);
        }
        let l = self.log10();
        let mut e = l.floor();
        let mut m = 10f64.powf(l - e);
        if m >= 10.0 {
            m /= 10.0;
            e += 1.0;
        }
        (m, e as i64)
    }

    /// Mantissa rounded to `sig` significant figures, renormalised so the
    /// rounded mantissa stays in `[1, 10)`.
    pub fn rounded_scientific(&self, sig: u32) -> (f64, i64) {
        let (m, e) = self.mantissa_exponent();
        if self.is_zero {
            return (0.0, 0);
        }
        let scale = 10f64.powi(sig.saturating_sub(1) as i32);
        let r = (m * scale).round() / scale;
        if r >= 10.0 {
            (r / 10.0, e + 1)
        } else {
            (r, e)
        }
    }

    /// Relative difference `|self/other − 1|`, computed in the log domain.
    pub fn relative_error(&self, other: &LogMagnitude) -> f64 {
        match (self.is_zero, other.is_zero) {
            (true, true) => 0.0,
            (false, false) => (self.ln_value - other.ln_value).exp_m1().abs(),
            _ => f64::INFINITY,
        }
    }
}

pub(crate) fn ln_abs_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.abs().to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        let top = (x.abs() >> shift).to_f64().expect("finite");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

impl Mul for LogMagnitude {
    type Output = LogMagnitude;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero || rhs.is_zero {
            Self::ZERO
        } else {
            Self::from_ln(self.ln_value + rhs.ln_value)
        }
    }
}

impl Div for LogMagnitude {
    type Output = LogMagnitude;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero, "division by zero magnitude");
        if self.is_zero {
            Self::ZERO
        } else {
            Self::from_ln(self.ln_value - rhs.ln_value)
        }
    }
}

impl std::iter::Product for LogMagnitude {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

impl PartialOrd for LogMagnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_zero, other.is_zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => self.ln_value.partial_cmp(&other.ln_value),
        }
    }
}

impl fmt::Display for LogMagnitude {
    /// Five significant figures, e.g. `3.6360e238`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.rounded_scientific(5);
        write!(f, "{m:.4}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_form() {
        let x = LogMagnitude::from_ln(500.0 * 3f64.ln());
        let (m, e) = x.mantissa_exponent();
        assert_eq!(e, 238);
        assert!((m - 3.63603).abs() < 1e-4);
        assert_eq!(x.to_string(), "3.6360e238");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        let x = LogMagnitude::from_f64(9.99996);
        assert_eq!(x.rounded_scientific(5), (1.0, 1));
    }

    #[test]
    fn zero_and_one() {
        assert!(LogMagnitude::ZERO < LogMagnitude::ONE);
        assert_eq!(LogMagnitude::powf(0.0, 0.0), LogMagnitude::ONE);
        assert!(LogMagnitude::powf(0.0, 2.0).is_zero());
        assert_eq!((LogMagnitude::ZERO * LogMagnitude::ONE).to_f64(), 0.0);
        assert_eq!(LogMagnitude::ONE.mantissa_exponent(), (1.0, 0));
    }

    #[test]
    fn huge_integers() {
        let x = BigInt::from(3).pow(5000);
        let l = LogMagnitude::from_bigint(&x);
        assert!((l.ln() - 5000.0 * 3f64.ln()).abs() < 1e-9 * l.ln());
        let r = BigRational::new(BigInt::from(2), BigInt::from(333));
        assert!((LogMagnitude::from_rational(&r).to_f64() - 2.0 / 333.0).abs() < 1e-15);
    }

    #[test]
    fn products_and_powers() {
        let a = LogMagnitude::from_f64(4.0);
        assert!(((a * a).to_f64() - 16.0).abs() < 1e-12);
        assert!((a.sqrt().to_f64() - 2.0).abs() < 1e-12);
        assert!(((a / a).to_f64() - 1.0).abs() < 1e-15);
        let p: LogMagnitude = [2.0, 3.0, 5.0].iter().map(|&v| LogMagnitude::from_f64(v)).product();
        assert!((p.to_f64() - 30.0).abs() < 1e-12);
        assert!(a.relative_error(&LogMagnitude::from_f64(4.4)) > 0.09);
    }
}
