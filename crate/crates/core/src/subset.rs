//! Subsets of a ground set `{0, .., n-1}` encoded as bitmasks.
//!
//! Coordinates are 0-based internally; reports and file formats use 1-based
//! labels. Enumerating masks `0..1 << n` in numeric order is colex order.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Hard cap on ground-set size for anything that tabulates all subsets.
pub const MAX_GROUND: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(x: usize) -> Subset {
        Subset(1 << x)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, x| m | (1 << x)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, x: usize) -> Subset {
        Subset(self.0 | 1 << x)
    }

    #[inline]
    pub fn without(self, x: usize) -> Subset {
        Subset(self.0 & !(1 << x))
    }

    /// Complement inside a ground set of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).minus(self)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(x)
            }
        })
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of a ground set of size `n`, in colex order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << n).map(Subset)
    }

    /// All subsets of `self`, in colex order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur: Option<u32> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(Subset(c))
        })
    }

    /// Re-index a subset of `ground` to a subset of `{0, .., |ground|-1}`,
    /// preserving the order of elements.
    pub fn relative_to(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (i, x) in ground.iter().enumerate() {
            if self.contains(x) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::relative_to`].
    pub fn lift_into(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (i, x) in ground.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << x;
            }
        }
        Subset(out)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Displays with 1-based labels, e.g. `{1,3}`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_mask_enumerates_all() {
        let s = Subset::from_elements([0, 2, 3]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn relative_roundtrip() {
        let ground = Subset::from_elements([1, 3, 4]);
        let s = Subset::from_elements([3, 4]);
        let r = s.relative_to(ground);
        assert_eq!(r, Subset::from_elements([1, 2]));
        assert_eq!(r.lift_into(ground), s);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Subset::from_elements([0, 2]).to_string(), "{1,3}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }
}
