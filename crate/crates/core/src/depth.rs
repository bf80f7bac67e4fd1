use std::fmt;

use serde::{Serialize, Serializer};

/// A filtration degree that may be infinite.
///
/// Used for augmentation valuations (`Finite(m)` means "in Σ^m but not Σ^(m+1)")
/// and for lower-central and Andreadakis depths. `Infinity` is only ever produced
/// for the zero polynomial, the identity element or the identity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(u32),
    Infinity,
}

impl Depth {
    pub fn is_infinite(self) -> bool {
        matches!(self, Depth::Infinity)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinity => None,
        }
    }

    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Depth::Finite(d) => d >= bound,
            Depth::Infinity => true,
        }
    }

    /// Saturating shift; infinity stays infinite.
    pub fn plus(self, k: u32) -> Depth {
        match self {
            Depth::Finite(d) => Depth::Finite(d + k),
            Depth::Infinity => Depth::Infinity,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_u32(*d),
            Depth::Infinity => s.serialize_str("infinity"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Depth::Finite(100) < Depth::Infinity);
        assert_eq!(Depth::Finite(2).min(Depth::Infinity), Depth::Finite(2));
        assert!(Depth::Infinity.at_least(1_000));
        assert!(!Depth::Finite(3).at_least(4));
    }
}
