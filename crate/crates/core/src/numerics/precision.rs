use serde::Serialize;

use crate::error::{Error, Result};

/// Largest decimal precision served by IEEE double arithmetic.
pub const HARDWARE_MAX_DIGITS: u32 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrecisionMode {
    Hardware,
    SoftwareBigFloat,
}

/// Working precision in decimal digits plus the arithmetic that serves it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionContext {
    digits: u32,
    mode: PrecisionMode,
}

impl PrecisionContext {
    /// Picks hardware arithmetic for `digits <= 15` and big floats above.
    pub fn new(digits: u32) -> Result<Self> {
        let mode = if digits <= HARDWARE_MAX_DIGITS {
            PrecisionMode::Hardware
        } else {
            PrecisionMode::SoftwareBigFloat
        };
        Self::with_mode(digits, mode)
    }

    pub fn with_mode(digits: u32, mode: PrecisionMode) -> Result<Self> {
        if digits == 0 {
            return Err(Error::InvalidPrecision("digits must be positive".into()));
        }
        match mode {
            PrecisionMode::Hardware if digits > HARDWARE_MAX_DIGITS => {
                Err(Error::InvalidPrecision(format!(
                    "hardware mode supports at most {HARDWARE_MAX_DIGITS} digits, got {digits}"
                )))
            }
            PrecisionMode::SoftwareBigFloat if digits <= HARDWARE_MAX_DIGITS => {
                Err(Error::InvalidPrecision(format!(
                    "software mode requires at least {} digits, got {digits}",
                    HARDWARE_MAX_DIGITS + 1
                )))
            }
            _ => Ok(PrecisionContext { digits, mode }),
        }
    }

    /// IEEE double context at the full 15 digits.
    pub fn hardware() -> Self {
        PrecisionContext {
            digits: HARDWARE_MAX_DIGITS,
            mode: PrecisionMode::Hardware,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn mode(&self) -> PrecisionMode {
        self.mode
    }

    pub fn is_hardware(&self) -> bool {
        self.mode == PrecisionMode::Hardware
    }

    /// Binary mantissa width: `ceil(digits * 3.33) + 16` guard-padded bits,
    /// or 53 for hardware doubles.
    pub fn bits(&self) -> u32 {
        match self.mode {
            PrecisionMode::Hardware => 53,
            PrecisionMode::SoftwareBigFloat => (self.digits * 333).div_ceil(100) + 16,
        }
    }

    /// Decimal exponent of the default solver tolerance `10^(-digits+10)`.
    pub fn default_tol_exponent(&self) -> i32 {
        -(self.digits as i32) + 10
    }

    /// Decimal exponent of the trust floor factor `10^(-digits+5)`.
    pub fn trust_exponent(&self) -> i32 {
        -(self.digits as i32) + 5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_follows_digits() {
        assert!(PrecisionContext::new(15).unwrap().is_hardware());
        assert!(!PrecisionContext::new(16).unwrap().is_hardware());
        assert!(PrecisionContext::new(0).is_err());
        assert!(PrecisionContext::with_mode(20, PrecisionMode::Hardware).is_err());
        assert!(PrecisionContext::with_mode(12, PrecisionMode::SoftwareBigFloat).is_err());
    }

    #[test]
    fn bit_budget() {
        assert_eq!(PrecisionContext::new(100).unwrap().bits(), 333 + 16);
        assert_eq!(PrecisionContext::new(150).unwrap().bits(), 500 + 16);
        assert_eq!(PrecisionContext::new(10).unwrap().bits(), 53);
    }

    #[test]
    fn tolerance_is_positive_power_of_ten() {
        let ctx = PrecisionContext::new(50).unwrap();
        assert_eq!(ctx.default_tol_exponent(), -40);
        assert_eq!(ctx.trust_exponent(), -45);
    }
}
