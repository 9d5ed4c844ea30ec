//! Subsets of a ground set `[m]` as bit masks.
//!
//! Element `j` (1-based, as in external files) is bit `j - 1`. The ground set
//! size is carried by the containing object, not by each mask.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum ground set size representable in a mask.
pub const MAX_GROUND_SET: usize = 64;

/// Default cap for operations that enumerate all of `2^[m]`.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetMask(pub u64);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    /// `[m] = {1, ..., m}`.
    pub fn full(m: usize) -> SetMask {
        debug_assert!(m <= MAX_GROUND_SET);
        if m == 64 {
            SetMask(u64::MAX)
        } else {
            SetMask((1u64 << m) - 1)
        }
    }

    pub fn singleton(element: usize) -> SetMask {
        debug_assert!((1..=MAX_GROUND_SET).contains(&element));
        SetMask(1u64 << (element - 1))
    }

    /// Builds a mask from 1-based labels; rejects labels outside `1..=m`.
    pub fn from_elements(elements: &[usize], m: usize) -> Result<SetMask> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > m {
                return Err(Error::InvalidFunction(format!(
                    "element {e} outside ground set 1..={m}"
                )));
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(SetMask(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= MAX_GROUND_SET && self.0 >> (element - 1) & 1 == 1
    }

    pub fn intersects(self, other: SetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SetMask) -> SetMask {
        SetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SetMask) -> SetMask {
        SetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SetMask) -> SetMask {
        SetMask(self.0 & !other.0)
    }

    /// Complement within `[m]`.
    pub fn complement(self, m: usize) -> SetMask {
        SetMask(!self.0 & SetMask::full(m).0)
    }

    /// Sorted 1-based labels.
    pub fn elements(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            let tz = bits.trailing_zeros() as usize;
            out.push(tz + 1);
            bits &= bits - 1;
        }
        out
    }

    /// Index of the highest element, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// All subsets of `self`, in increasing mask order, `∅` first.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SetMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SetMask {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(d)?;
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != elements.len() {
            return Err(serde::de::Error::custom("duplicate element in set"));
        }
        SetMask::from_elements(&elements, MAX_GROUND_SET).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the submasks of a fixed mask in increasing order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = SetMask;

    fn next(&mut self) -> Option<SetMask> {
        let cur = self.next?;
        // Increment restricted to the bits of `universe`.
        let succ = (cur | !self.universe).wrapping_add(1) & self.universe;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(SetMask(cur))
    }
}

/// Every mask over `[m]`, `∅` included, in increasing order.
pub fn all_subsets(m: usize) -> impl Iterator<Item = SetMask> {
    SetMask::full(m).subsets()
}

/// Every nonempty mask over `[m]`.
pub fn nonempty_subsets(m: usize) -> impl Iterator<Item = SetMask> {
    all_subsets(m).skip(1)
}

pub fn check_enumerable(m: usize, cap: usize) -> Result<()> {
    if m > cap || m > MAX_GROUND_SET {
        Err(Error::EnumerationLimit { size: m, cap })
    } else {
        Ok(())
    }
}
