//! Fixed-width subsets of a ground set, stored as 64-bit masks.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground-set size.
pub const MAX_GROUND: usize = 64;

/// A subset of `{0, .., n-1}` for some ground set of size `n <= 64`.
///
/// Bit `i` set means element `i` is in the subset. Equality and hashing are
/// on the mask; the `Ord` impl is lexicographic on the ascending index
/// sequence, so `{0} < {0,1} < {0,2} < {1}`. Containment order is a separate
/// method ([`Subset::is_subset_of`]), not `<=`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND, "ground set larger than {MAX_GROUND}");
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        assert!(i < MAX_GROUND);
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subset {
        let mut s = Subset::EMPTY;
        for i in indices {
            s = s.with(i);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Subset {
        assert!(i < MAX_GROUND);
        Subset(self.0 | 1u64 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Subset {
        assert!(i < MAX_GROUND);
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Iterates the member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for Subset {
    /// Lexicographic order on the ascending index sequences; a proper prefix
    /// sorts first.
    fn cmp(&self, other: &Subset) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {}
            }
            let i = a.trailing_zeros();
            let j = b.trailing_zeros();
            if i != j {
                return i.cmp(&j);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Subset) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Subset, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Subset;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a sequence of element indices below {MAX_GROUND}")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Subset, A::Error> {
                let mut s = Subset::EMPTY;
                while let Some(i) = seq.next_element::<usize>()? {
                    if i >= MAX_GROUND {
                        return Err(serde::de::Error::custom(format!(
                            "element index {i} out of range (max {})",
                            MAX_GROUND - 1
                        )));
                    }
                    s = s.with(i);
                }
                Ok(s)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = Subset::from_indices([0, 2, 5]);
        let b = Subset::from_indices([2, 3]);
        assert_eq!(a.union(b), Subset::from_indices([0, 2, 3, 5]));
        assert_eq!(a.intersect(b), Subset::singleton(2));
        assert_eq!(a.minus(b), Subset::from_indices([0, 5]));
        assert!(Subset::singleton(2).is_subset_of(a));
        assert!(!a.is_subset_of(b));
        assert_eq!(a.len(), 3);
        assert_eq!(a.indices(), vec![0, 2, 5]);
    }

    #[test]
    fn lexicographic_order() {
        let sets = [
            Subset::EMPTY,
            Subset::from_indices([0]),
            Subset::from_indices([0, 1]),
            Subset::from_indices([0, 2]),
            Subset::from_indices([1]),
            Subset::from_indices([1, 2]),
            Subset::from_indices([2]),
        ];
        for w in sets.windows(2) {
            assert!(w[0] < w[1], "{} should sort before {}", w[0], w[1]);
        }
    }

    #[test]
    fn full_width() {
        assert_eq!(Subset::full(64).len(), 64);
        assert_eq!(Subset::full(0), Subset::EMPTY);
    }

    #[test]
    fn serde_round_trip() {
        let s = Subset::from_indices([1, 4, 63]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, "[1,4,63]");
        let back: Subset = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Subset>("[64]").is_err());
    }
}
