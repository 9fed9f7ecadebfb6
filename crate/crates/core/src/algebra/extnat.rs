//! Extended naturals `ℕ∞` and the arctic carrier `ℕ∞ ∪ {−∞}`.

use std::fmt;

/// A natural number or `∞`. The derived order is the numeric one, with `∞` on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);
    pub const ONE: ExtNat = ExtNat::Fin(1);

    /// `None` if a finite sum leaves `u64`.
    pub fn checked_add(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_add(b).map(ExtNat::Fin),
            _ => Some(ExtNat::Inf),
        }
    }

    /// `0 · ∞ = 0`, as required for `0` to annihilate. `None` on overflow.
    pub fn checked_mul(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Fin(0), _) | (_, ExtNat::Fin(0)) => Some(ExtNat::ZERO),
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_mul(b).map(ExtNat::Fin),
            _ => Some(ExtNat::Inf),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

/// Carrier of the arctic semiring. `NegInf` is its zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arctic {
    NegInf,
    Val(ExtNat),
}

impl Arctic {
    /// `−∞` absorbs everything, including `+∞`.
    pub fn checked_add(self, other: Arctic) -> Option<Arctic> {
        match (self, other) {
            (Arctic::Val(a), Arctic::Val(b)) => a.checked_add(b).map(Arctic::Val),
            _ => Some(Arctic::NegInf),
        }
    }
}

impl fmt::Display for Arctic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arctic::NegInf => f.write_str("-inf"),
            Arctic::Val(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_saturates() {
        assert_eq!(ExtNat::Fin(3).checked_add(ExtNat::Inf), Some(ExtNat::Inf));
        assert_eq!(ExtNat::Fin(u64::MAX).checked_add(ExtNat::ONE), None);
        assert_eq!(ExtNat::Fin(u64::MAX).checked_mul(ExtNat::Fin(2)), None);
        assert_eq!(ExtNat::Inf.checked_mul(ExtNat::Fin(2)), Some(ExtNat::Inf));
        assert_eq!(ExtNat::Inf.checked_mul(ExtNat::ZERO), Some(ExtNat::ZERO));
        assert!(ExtNat::Fin(u64::MAX) < ExtNat::Inf);
    }

    #[test]
    fn arctic_bottom_absorbs() {
        assert_eq!(Arctic::NegInf.checked_add(Arctic::Val(ExtNat::Inf)), Some(Arctic::NegInf));
        assert_eq!(
            Arctic::Val(ExtNat::Fin(2)).checked_add(Arctic::Val(ExtNat::Fin(3))),
            Some(Arctic::Val(ExtNat::Fin(5)))
        );
        assert!(Arctic::NegInf < Arctic::Val(ExtNat::ZERO));
    }
}
