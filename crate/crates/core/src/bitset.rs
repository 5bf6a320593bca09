//! Fixed-width element sets over labels `1..=n` with `n <= 63`.

use std::cmp::Ordering;
use std::fmt;

/// Largest ground set supported by [`ElementSet`].
pub const MAX_ELEMENTS: usize = 63;

/// A set of element labels stored as a bitmask; label `i` lives in bit `i - 1`.
///
/// Ordering is lexicographic on the sorted label lists, so `{1,2} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == 0 {
            ElementSet(0)
        } else {
            ElementSet(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(label: usize) -> Self {
        debug_assert!((1..=MAX_ELEMENTS).contains(&label));
        ElementSet(1 << (label - 1))
    }

    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        labels
            .into_iter()
            .fold(ElementSet::EMPTY, |acc, l| acc.with(l))
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_ELEMENTS).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    #[must_use]
    pub fn with(self, label: usize) -> Self {
        ElementSet(self.0 | Self::singleton(label).0)
    }

    #[must_use]
    pub fn without(self, label: usize) -> Self {
        ElementSet(self.0 & !Self::singleton(label).0)
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest label, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(ElementSet(cur))
        })
    }
}

pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Labels;

    fn into_iter(self) -> Labels {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_labels(iter)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, l) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
