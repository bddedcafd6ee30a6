use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_BITS: u32 = 32;
pub const DEFAULT_GUARD: u32 = 16;

/// Working precision: `bits` requested binary digits plus `guard` extra bits
/// carried internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    bits: u32,
    guard: u32,
}

impl Precision {
    pub fn new(bits: u32) -> Result<Precision> {
        Precision::with_guard(bits, DEFAULT_GUARD)
    }

    pub fn with_guard(bits: u32, guard: u32) -> Result<Precision> {
        if bits < MIN_BITS {
            return Err(Error::Invalid(format!("precision must be at least {MIN_BITS} bits, got {bits}")));
        }
        Ok(Precision { bits, guard })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Bits actually used for midpoint rounding.
    pub fn working(&self) -> u32 {
        self.bits + self.guard
    }

    pub fn doubled(&self) -> Precision {
        Precision { bits: self.bits.saturating_mul(2), guard: self.guard }
    }

    /// Same precision with `extra` more guard bits.
    pub fn widened(&self, extra: u32) -> Precision {
        Precision { bits: self.bits, guard: self.guard + extra }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 256, guard: DEFAULT_GUARD }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_precision() {
        assert!(Precision::new(31).is_err());
        assert_eq!(Precision::new(32).unwrap().working(), 48);
    }
}
