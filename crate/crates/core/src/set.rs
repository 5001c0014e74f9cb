//! Small element sets as bitmasks over dense ground-set indices.

use std::fmt;

/// Maximum number of ground elements a set can hold.
pub const MAX_ELEMENTS: usize = 64;

/// A set of ground-set elements, stored as a bitmask over indices `0..n`.
///
/// Ordering is lexicographic on the ascending sequence of member indices
/// (so `{0} < {0,1} < {0,2} < {1}`), not numeric on the mask. This is the
/// order used everywhere a "lexicographically first" set is required.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        ElemSet(1 << i)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 & (1 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        ElemSet(self.0 | (1 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        ElemSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn sym_diff(self, other: Self) -> Self {
        ElemSet(self.0 ^ other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Self) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    pub fn min_elem(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in ascending mask order (`EMPTY` first, `self` last).
    pub fn subsets(self) -> impl Iterator<Item = ElemSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(ElemSet(cur))
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s = s.with(i);
        }
        s
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let s = |v: &[usize]| v.iter().copied().collect::<ElemSet>();
        let mut sets = vec![s(&[1]), s(&[0, 2]), s(&[0]), s(&[1, 2]), s(&[0, 1]), s(&[2])];
        sets.sort();
        assert_eq!(
            sets,
            vec![s(&[0]), s(&[0, 1]), s(&[0, 2]), s(&[1]), s(&[1, 2]), s(&[2])]
        );
    }

    #[test]
    fn subset_iteration_covers_powerset() {
        let a = ElemSet::from_bits(0b1011);
        let subs: Vec<_> = a.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset_of(a)));
        assert_eq!(subs.first(), Some(&ElemSet::EMPTY));
        assert_eq!(subs.last(), Some(&a));
    }

    #[test]
    fn set_algebra() {
        let a = ElemSet::from_bits(0b0111);
        let b = ElemSet::from_bits(0b1100);
        assert_eq!(a.union(b), ElemSet::from_bits(0b1111));
        assert_eq!(a.intersect(b), ElemSet::from_bits(0b0100));
        assert_eq!(a.minus(b), ElemSet::from_bits(0b0011));
        assert_eq!(a.sym_diff(b), ElemSet::from_bits(0b1011));
        assert!(a.intersect(b).is_proper_subset_of(a));
        assert_eq!(a.min_elem(), Some(0));
        assert_eq!(ElemSet::EMPTY.min_elem(), None);
    }
}
