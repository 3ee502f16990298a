use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use crate::error::Error;

/// A natural number extended with infinity: the entry type of degree
/// refinement matrices. Surface-row entries are always `0` or `Inf`
/// (a surface vertex lifts to an infinite-valence vertex of the JSJ tree);
/// curve-row entries are finite edge counts.
///
/// The order is total with `Inf` on top, and addition absorbs into `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_zero(self) -> bool {
        self == ExtNat::Fin(0)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => {
                ExtNat::Fin(a.checked_add(b).expect("ExtNat addition overflow"))
            }
            _ => ExtNat::Inf,
        }
    }
}

impl Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::ZERO, Add::add)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "inf" {
            return Ok(ExtNat::Inf);
        }
        s.parse::<u64>()
            .map(ExtNat::Fin)
            .map_err(|_| Error::InvalidInput(format!("bad matrix entry `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn order_is_total_with_inf_on_top() {
        assert!(ExtNat::Fin(0) < ExtNat::Fin(1));
        assert!(ExtNat::Fin(1) < ExtNat::Fin(2));
        assert!(ExtNat::Fin(u64::MAX) < ExtNat::Inf);
        assert_eq!(ExtNat::Inf, ExtNat::Inf);
    }

    #[test]
    fn inf_absorbs_addition() {
        assert_eq!(ExtNat::Fin(3) + ExtNat::Inf, ExtNat::Inf);
        assert_eq!(ExtNat::Inf + ExtNat::Fin(3), ExtNat::Inf);
        assert_eq!(ExtNat::Inf + ExtNat::Inf, ExtNat::Inf);
    }

    #[test]
    fn display_round_trips() {
        for v in [ExtNat::Fin(0), ExtNat::Fin(42), ExtNat::Inf] {
            assert_eq!(v.to_string().parse::<ExtNat>().unwrap(), v);
        }
        assert!("x".parse::<ExtNat>().is_err());
    }

    proptest! {
        #[test]
        fn finite_addition_is_finite_and_commutative(a in 0u64..1_000_000, b in 0u64..1_000_000) {
            let s = ExtNat::Fin(a) + ExtNat::Fin(b);
            prop_assert_eq!(s, ExtNat::Fin(a + b));
            prop_assert_eq!(s, ExtNat::Fin(b) + ExtNat::Fin(a));
        }

        #[test]
        fn ordering_matches_u64(a in any::<u64>(), b in any::<u64>()) {
            prop_assert_eq!(ExtNat::Fin(a).cmp(&ExtNat::Fin(b)), a.cmp(&b));
        }
    }
}
