//! Guard for exhaustive enumerations.
//!
//! Several operations walk an entire matrix space, subspace lattice or
//! placement tree.  They all take a [`Budget`] and fail fast with
//! [`crate::error::Error::BudgetExceeded`] when the enumeration would visit
//! more canonical forms than the budget allows, so an oversized request
//! errors immediately instead of spinning.

use crate::error::{Error, Result};

/// Maximum number of objects an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    /// The default cap of 10^7 canonical forms.
    pub const DEFAULT: Budget = Budget(10_000_000);

    /// Checks that `required` objects fit in the budget.
    pub fn check(&self, required: u128) -> Result<()> {
        if required > u128::from(self.0) {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// `q^k` as a `u128`, saturating on overflow (a saturated value simply
/// fails any realistic budget check).
pub fn pow_u128(q: u64, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(u128::from(q));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_budget_bounds() {
        let b = Budget::default();
        assert!(b.check(10_000_000).is_ok());
        assert_eq!(
            b.check(10_000_001),
            Err(Error::BudgetExceeded {
                required: 10_000_001,
                budget: 10_000_000
            })
        );
    }

    #[test]
    fn pow_saturates() {
        assert_eq!(pow_u128(2, 6), 64);
        assert_eq!(pow_u128(16, 40), u128::MAX);
    }
}
