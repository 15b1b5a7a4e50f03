//! Citation profiles and the h-index family of measures.
//!
//! A [`CitationProfile`] is a multiset of per-paper citation counts. The
//! h-index of a profile is the largest `h` such that at least `h` elements
//! are `>= h`. The h-profile keeps the elements at or above the h-index;
//! the h-augmenting profile keeps the elements strictly above it, i.e. the
//! papers that already count toward the *next* h-index value.
//!
//! Profiles are stored sorted in descending order so that equality,
//! filtering, and threshold counting never depend on insertion order.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default upper bound on a single citation count (`2^31 - 1`).
///
/// Simulations grow citation values linearly in the horizon, so desk-scale
/// runs stay far below this. Values above the cap are rejected rather than
/// silently wrapped.
pub const DEFAULT_CITATION_CAP: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("citation count {value} exceeds cap {cap}")]
    CitationCapExceeded { value: u64, cap: u64 },
}

/// Multiset of non-negative per-paper citation counts.
///
/// Two profiles are equal iff they contain the same counts with the same
/// multiplicities, regardless of the order elements were added.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CitationProfile {
    /// Sorted descending.
    counts: Vec<u64>,
}

impl CitationProfile {
    /// Empty profile (h-index 0).
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a profile from arbitrary counts, enforcing the default cap.
    pub fn from_counts<I: IntoIterator<Item = u64>>(counts: I) -> Result<Self, ProfileError> {
        Self::from_counts_capped(counts, DEFAULT_CITATION_CAP)
    }

    /// Builds a profile from arbitrary counts with an explicit cap.
    pub fn from_counts_capped<I: IntoIterator<Item = u64>>(
        counts: I,
        cap: u64,
    ) -> Result<Self, ProfileError> {
        let mut counts: Vec<u64> = counts.into_iter().collect();
        if let Some(&value) = counts.iter().find(|&&c| c > cap) {
            return Err(ProfileError::CitationCapExceeded { value, cap });
        }
        counts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { counts })
    }

    /// Adds one paper's citation count, enforcing the default cap.
    pub fn push(&mut self, citations: u64) -> Result<(), ProfileError> {
        self.push_capped(citations, DEFAULT_CITATION_CAP)
    }

    /// Adds one paper's citation count, enforcing an explicit cap.
    pub fn push_capped(&mut self, citations: u64, cap: u64) -> Result<(), ProfileError> {
        if citations > cap {
            return Err(ProfileError::CitationCapExceeded {
                value: citations,
                cap,
            });
        }
        let pos = self.counts.partition_point(|&c| c > citations);
        self.counts.insert(pos, citations);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Counts in descending order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.iter().copied()
    }

    /// Largest element, or 0 for an empty profile.
    pub fn max(&self) -> u64 {
        self.counts.first().copied().unwrap_or(0)
    }

    /// Number of elements `>= threshold`.
    pub fn count_at_least(&self, threshold: u64) -> usize {
        self.counts.partition_point(|&c| c >= threshold)
    }

    /// The largest `h` such that at least `h` elements are `>= h`.
    ///
    /// With counts sorted descending, `h` is the number of leading positions
    /// `i` with `counts[i] >= i + 1`; the predicate is monotone, so a binary
    /// search suffices.
    pub fn h_index(&self) -> u64 {
        let (mut lo, mut hi) = (0usize, self.counts.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.counts[mid] >= mid as u64 + 1 {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo as u64
    }

    /// Sub-multiset of elements `>= h_index()`.
    pub fn h_profile(&self) -> CitationProfile {
        let h = self.h_index();
        let kept = self.counts.partition_point(|&c| c >= h);
        CitationProfile {
            counts: self.counts[..kept].to_vec(),
        }
    }

    /// Sub-multiset of elements strictly greater than `h_index()`.
    pub fn h_augmenting_profile(&self) -> CitationProfile {
        let h = self.h_index();
        let kept = self.counts.partition_point(|&c| c > h);
        CitationProfile {
            counts: self.counts[..kept].to_vec(),
        }
    }

    /// Weak h-preference: `h(self) >= h(other)` and for every threshold
    /// `z > h(self)` the count of elements `>= z` in `self` is at least the
    /// count in `other`.
    ///
    /// Thresholds above `max(self, other)` hold vacuously, and the counts
    /// only change at element values, so it suffices to test the distinct
    /// element values above `h(self)` drawn from either profile.
    pub fn is_weakly_h_preferable_to(&self, other: &CitationProfile) -> bool {
        let h = self.h_index();
        if h < other.h_index() {
            return false;
        }
        self.thresholds_above(other, h)
            .all(|z| self.count_at_least(z) >= other.count_at_least(z))
    }

    /// Strong h-preference: weakly preferable, and either `h(self) > h(other)`
    /// or some threshold above `h(self)` has a strictly larger count.
    pub fn is_strongly_h_preferable_to(&self, other: &CitationProfile) -> bool {
        if !self.is_weakly_h_preferable_to(other) {
            return false;
        }
        let h = self.h_index();
        if h > other.h_index() {
            return true;
        }
        self.thresholds_above(other, h)
            .any(|z| self.count_at_least(z) > other.count_at_least(z))
    }

    /// Distinct element values strictly above `h`, from either profile.
    fn thresholds_above<'a>(
        &'a self,
        other: &'a CitationProfile,
        h: u64,
    ) -> impl Iterator<Item = u64> + 'a {
        let mut values: Vec<u64> = self
            .counts
            .iter()
            .chain(other.counts.iter())
            .copied()
            .filter(|&v| v > h)
            .collect();
        values.sort_unstable();
        values.dedup();
        values.into_iter()
    }
}

impl FromIterator<u64> for CitationProfile {
    /// Panics if any count exceeds the default cap; use [`from_counts`]
    /// (`CitationProfile::from_counts`) for fallible construction.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        Self::from_counts(iter).expect("citation count exceeds default cap")
    }
}

impl Serialize for CitationProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.counts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CitationProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let counts = Vec::<u64>::deserialize(deserializer)?;
        CitationProfile::from_counts(counts).map_err(serde::de::Error::custom)
    }
}
