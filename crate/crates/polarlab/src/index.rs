//! Multi-index bookkeeping over the index set `I(m, n) = {1..n}^m`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An m-tuple of coordinate indices, each in `1..=n`.
///
/// The derived `Ord` is lexicographic on the entries, which fixes the
/// canonical enumeration order used by every reduction in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    /// Builds a multi-index, checking every entry against the ambient dimension `n`.
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        for &e in &entries {
            if e < 1 || e > n {
                return Err(Error::IndexOutOfRange { entry: e, n });
            }
        }
        Ok(Self { entries })
    }

    /// Builds a multi-index without range checks (for internal enumeration).
    pub(crate) fn from_raw(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The k-th entry with 1-based slot numbering, matching the i_k notation.
    pub fn entry(&self, slot: usize) -> usize {
        self.entries[slot - 1]
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(1)
    }

    /// Sorted copy; the nondecreasing representative of the orbit under slot permutations.
    pub fn sorted(&self) -> Self {
        let mut e = self.entries.clone();
        e.sort_unstable();
        Self { entries: e }
    }

    /// Removes the entry at slot `from` and reinserts it so it lands at slot
    /// `to` (both 1-based).
    ///
    /// With `from = k <= l = to` this realizes one summand of the shuffling
    /// step, `(i_1, .., i_{k-1}, i_{k+1}, .., i_l, i_k, i_{l+1}, .., i_m)`;
    /// the opposite direction is its inverse.
    pub(crate) fn relocate(&self, from: usize, to: usize) -> Self {
        debug_assert!(1 <= from && from <= self.entries.len());
        debug_assert!(1 <= to && to <= self.entries.len());
        let mut e = self.entries.clone();
        let moved = e.remove(from - 1);
        e.insert(to - 1, moved);
        Self { entries: e }
    }
}

/// Lexicographic enumeration of all of `I(m, n)`, `n^m` indices.
pub fn index_set(m: usize, n: usize) -> impl Iterator<Item = MultiIndex> {
    Odometer::new(m, n, false)
}

/// Lexicographic enumeration of the nondecreasing indices `1 <= i_1 <= ... <= i_m <= n`.
pub fn nondecreasing_indices(m: usize, n: usize) -> impl Iterator<Item = MultiIndex> {
    Odometer::new(m, n, true)
}

struct Odometer {
    next: Option<Vec<usize>>,
    n: usize,
    nondecreasing: bool,
}

impl Odometer {
    fn new(m: usize, n: usize, nondecreasing: bool) -> Self {
        let next = if n == 0 && m > 0 {
            None
        } else {
            Some(vec![1; m])
        };
        Self {
            next,
            n,
            nondecreasing,
        }
    }
}

impl Iterator for Odometer {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Advance the rightmost entry that still has room, then reset the tail.
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            if succ[pos - 1] < self.n {
                succ[pos - 1] += 1;
                let floor = if self.nondecreasing { succ[pos - 1] } else { 1 };
                for e in succ[pos..].iter_mut() {
                    *e = floor;
                }
                self.next = Some(succ);
                break;
            }
            pos -= 1;
        }
        Some(MultiIndex::from_raw(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_validated_against_dimension() {
        assert!(MultiIndex::new(vec![1, 3], 3).is_ok());
        assert!(matches!(
            MultiIndex::new(vec![0, 1], 3),
            Err(Error::IndexOutOfRange { entry: 0, .. })
        ));
        assert!(matches!(
            MultiIndex::new(vec![1, 4], 3),
            Err(Error::IndexOutOfRange { entry: 4, .. })
        ));
    }

    #[test]
    fn nondecreasing_predicate() {
        assert!(MultiIndex::from_raw(vec![1, 1, 2]).is_nondecreasing());
        assert!(!MultiIndex::from_raw(vec![2, 1]).is_nondecreasing());
        assert!(MultiIndex::from_raw(vec![]).is_nondecreasing());
    }

    #[test]
    fn lexicographic_order() {
        let a = MultiIndex::from_raw(vec![1, 2]);
        let b = MultiIndex::from_raw(vec![1, 3]);
        let c = MultiIndex::from_raw(vec![2, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn index_set_counts() {
        assert_eq!(index_set(3, 2).count(), 8);
        assert_eq!(index_set(2, 4).count(), 16);
        // Binomial(n + m - 1, m) nondecreasing tuples.
        assert_eq!(nondecreasing_indices(2, 3).count(), 6);
        assert_eq!(nondecreasing_indices(3, 3).count(), 10);
        assert_eq!(nondecreasing_indices(5, 4).count(), 56);
    }

    #[test]
    fn index_set_is_sorted() {
        let all: Vec<_> = index_set(3, 3).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        let nd: Vec<_> = nondecreasing_indices(3, 3).collect();
        assert!(nd.iter().all(|i| i.is_nondecreasing()));
        let mut nd_sorted = nd.clone();
        nd_sorted.sort();
        assert_eq!(nd, nd_sorted);
    }

    #[test]
    fn relocate_matches_hand_expansion() {
        let i = MultiIndex::from_raw(vec![10, 20, 30, 40]);
        assert_eq!(i.relocate(1, 1).entries(), &[10, 20, 30, 40]);
        assert_eq!(i.relocate(1, 3).entries(), &[20, 30, 10, 40]);
        assert_eq!(i.relocate(2, 4).entries(), &[10, 30, 40, 20]);
        // relocate(l, k) inverts relocate(k, l).
        assert_eq!(i.relocate(2, 4).relocate(4, 2), i);
    }

    #[test]
    fn arity_zero_enumerates_once() {
        assert_eq!(index_set(0, 3).count(), 1);
    }
}
