//! Ground sets, subsets of the marked points and partitions into four blocks.
//!
//! Subsets are bit-sets: point `i` (1-based) lives in bit `i - 1`. A
//! complementary pair `{I, I^c}` is identified by its *pair key*, the side
//! that contains point 1; this key does not depend on any weight datum.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of marked points.
pub const MAX_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewPoints(n));
        }
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints { n, max: MAX_POINTS });
        }
        Ok(Self { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn full(self) -> Subset {
        Subset((1u32 << self.n) - 1)
    }

    pub fn contains(self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    /// `[n] \ s`, without checking that `s` is proper.
    pub fn complement_of(self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }

    /// The side of `{s, s^c}` containing point 1.
    pub fn pair_key(self, s: Subset) -> Subset {
        if s.0 & 1 == 1 {
            s
        } else {
            self.complement_of(s)
        }
    }

    /// `min(|s|, |s^c|)`; pairs with this value at most 1 carry no boundary
    /// divisor.
    pub fn min_side(self, s: Subset) -> usize {
        let k = s.len();
        k.min(self.n - k)
    }

    /// Whether `{s, s^c}` indexes a boundary divisor (both sides of size ≥ 2).
    pub fn is_boundary(self, s: Subset) -> bool {
        self.min_side(s) >= 2
    }
}

/// A set of marked points stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a subset from 1-based point labels.
    pub fn from_points(points: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &p in points {
            if p == 0 || p > MAX_POINTS {
                return Err(Error::PointOutOfRange {
                    index: p,
                    n: MAX_POINTS,
                });
            }
            bits |= 1 << (p - 1);
        }
        Ok(Subset(bits))
    }

    pub fn singleton(point: usize) -> Self {
        debug_assert!((1..=MAX_POINTS).contains(&point));
        Subset(1 << (point - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, point: usize) -> bool {
        (1..=32).contains(&point) && self.0 & (1 << (point - 1)) != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member (1-based), if any.
    pub fn min_point(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Members in ascending order, 1-based.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let low = bits.trailing_zeros();
            bits &= bits - 1;
            Some(low as usize + 1)
        })
    }

    pub fn to_points(self) -> Vec<usize> {
        self.points().collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.points().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// `[n] \ s`, rejecting empty or full `s`.
pub fn complement(s: Subset, ground: GroundSet) -> Result<Subset> {
    if !ground.contains(s) {
        return Err(Error::OutOfGround { n: ground.n() });
    }
    if s.is_empty() || s == ground.full() {
        return Err(Error::NotProper { n: ground.n() });
    }
    Ok(ground.complement_of(s))
}

/// A complementary pair `{first, second}` with `first` containing point 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetPair {
    pub first: Subset,
    pub second: Subset,
}

/// Every pair `{I, I^c}` of nonempty proper subsets, once each, in increasing
/// order of the side containing point 1. There are `2^(n-1) - 1` of them.
pub fn subset_pairs(ground: GroundSet) -> impl Iterator<Item = SubsetPair> {
    let full = ground.full().bits();
    (0u32..(1 << (ground.n() - 1)))
        .map(|k| (k << 1) | 1)
        .filter(move |&bits| bits != full)
        .map(move |bits| SubsetPair {
            first: Subset(bits),
            second: Subset(full & !bits),
        })
}

/// The pairs indexing boundary divisors (`2^(n-1) - n - 1` of them).
pub fn boundary_pairs(ground: GroundSet) -> impl Iterator<Item = SubsetPair> {
    subset_pairs(ground).filter(move |p| ground.is_boundary(p.first))
}

/// `2^(n-1) - n - 1`.
pub fn boundary_pair_count(n: usize) -> u64 {
    (1u64 << (n - 1)) - n as u64 - 1
}

/// Number of partitions of an `n`-set into four nonempty blocks, from the
/// inclusion-exclusion closed form `(4^n - 4·3^n + 6·2^n - 4) / 24`.
pub fn partition4_count(n: usize) -> u128 {
    let n = n as u32;
    let plus = 4u128.pow(n) + 6 * 2u128.pow(n);
    let minus = 4 * 3u128.pow(n) + 4;
    plus.saturating_sub(minus) / 24
}

/// An unordered partition of `[n]` into four nonempty blocks, stored with the
/// blocks sorted by minimum element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition4 {
    blocks: [Subset; 4],
}

impl Partition4 {
    pub fn new(ground: GroundSet, mut blocks: [Subset; 4]) -> Result<Self> {
        let invalid = Error::InvalidPartition { n: ground.n() };
        let mut union = Subset::EMPTY;
        for b in blocks {
            if b.is_empty() || !union.is_disjoint(b) {
                return Err(invalid);
            }
            union = union.union(b);
        }
        if union != ground.full() {
            return Err(invalid);
        }
        blocks.sort_by_key(|b| b.min_point());
        Ok(Self { blocks })
    }

    /// Builds from a restricted growth string with labels `0..4`.
    fn from_labels(labels: &[u8]) -> Self {
        let mut blocks = [Subset::EMPTY; 4];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l as usize].0 |= 1 << i;
        }
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Subset; 4] {
        &self.blocks
    }

    pub fn ground_bits(&self) -> u32 {
        self.blocks.iter().fold(0, |acc, b| acc | b.0)
    }
}

impl fmt::Display for Partition4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.blocks[0], self.blocks[1], self.blocks[2], self.blocks[3]
        )
    }
}

/// Restricted-growth-string enumerator for 4-block partitions.
///
/// Point `i` carries label `labels[i]`; labels first appear in increasing
/// order, so the label of a block is its rank by minimum element. Strings are
/// produced in lexicographic order. A fixed prefix may be pinned, which splits
/// the full stream into independent, contiguous sub-ranges.
#[derive(Debug, Clone)]
pub struct Partitions4 {
    n: usize,
    fixed: usize,
    labels: Vec<u8>,
    // prefix_max[i] = max(labels[..=i])
    prefix_max: Vec<u8>,
    started: bool,
    done: bool,
}

impl Partitions4 {
    pub fn new(ground: GroundSet) -> Self {
        Self::with_prefix(ground, &[0]).expect("prefix [0] is always valid")
    }

    /// Enumerates only partitions whose label string starts with `prefix`.
    /// Returns `None` if the prefix is not a valid restricted growth string
    /// or cannot be completed to exactly four labels.
    pub fn with_prefix(ground: GroundSet, prefix: &[u8]) -> Option<Self> {
        let n = ground.n();
        if prefix.is_empty() || prefix.len() > n || prefix[0] != 0 {
            return None;
        }
        let mut labels = Vec::with_capacity(n);
        let mut prefix_max = Vec::with_capacity(n);
        let mut max = 0u8;
        for &l in prefix {
            if l > 3 || l > max + 1 {
                return None;
            }
            max = max.max(l);
            labels.push(l);
            prefix_max.push(max);
        }
        let mut it = Self {
            n,
            fixed: prefix.len(),
            labels,
            prefix_max,
            started: false,
            done: false,
        };
        if !it.fill_from(prefix.len()) {
            it.done = true;
        }
        Some(it)
    }

    /// Minimal completion of `labels[..start]`: zeros, then the missing
    /// labels in increasing order at the very end.
    fn fill_from(&mut self, start: usize) -> bool {
        let max = if start == 0 {
            0
        } else {
            self.prefix_max[start - 1]
        };
        let missing = (3 - max) as usize;
        let remaining = self.n - start;
        if remaining < missing {
            return false;
        }
        self.labels.truncate(start);
        self.prefix_max.truncate(start);
        for j in start..self.n {
            let from_end = self.n - j;
            let label = if from_end <= missing {
                max + (missing - from_end + 1) as u8
            } else {
                0
            };
            let prev = if j == 0 { 0 } else { self.prefix_max[j - 1] };
            self.labels.push(label);
            self.prefix_max.push(prev.max(label));
        }
        true
    }

    fn advance(&mut self) -> bool {
        let mut i = self.n;
        while i > self.fixed {
            i -= 1;
            let before = self.prefix_max[i - 1];
            let top = (before + 1).min(3);
            for label in self.labels[i] + 1..=top {
                self.labels[i] = label;
                self.prefix_max[i] = before.max(label);
                if self.fill_from(i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for Partitions4 {
    type Item = Partition4;

    fn next(&mut self) -> Option<Partition4> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(Partition4::from_labels(&self.labels))
    }
}

/// All unordered 4-block partitions of `[n]`, in lexicographic order of their
/// restricted growth strings.
pub fn partitions4(ground: GroundSet) -> Partitions4 {
    Partitions4::new(ground)
}

/// The completable label prefixes of length `depth` (clamped to `1..=n`), in
/// lexicographic order. Enumerating [`Partitions4::with_prefix`] over these
/// in order reproduces [`partitions4`] exactly.
pub fn partition4_prefixes(ground: GroundSet, depth: usize) -> Vec<Vec<u8>> {
    let n = ground.n();
    let depth = depth.clamp(1, n);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<u8>, u8)> = vec![(vec![0], 0)];
    while let Some((prefix, max)) = stack.pop() {
        // Need 3 - max new labels among the n - len remaining points.
        if (3 - max) as usize > n - prefix.len() {
            continue;
        }
        if prefix.len() == depth {
            out.push(prefix);
            continue;
        }
        let top = (max + 1).min(3);
        for l in (0..=top).rev() {
            let mut next = prefix.clone();
            next.push(l);
            stack.push((next, max.max(l)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn s(points: &[usize]) -> Subset {
        Subset::from_points(points).unwrap()
    }

    #[test]
    fn ground_set_bounds() {
        assert_eq!(GroundSet::new(3), Err(Error::TooFewPoints(3)));
        assert!(GroundSet::new(4).is_ok());
        assert!(GroundSet::new(MAX_POINTS).is_ok());
        assert!(matches!(
            GroundSet::new(MAX_POINTS + 1),
            Err(Error::TooManyPoints { .. })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(s(&[1, 2]), g(5)).unwrap(), s(&[3, 4, 5]));
        assert_eq!(complement(s(&[1, 2, 3]), g(4)).unwrap(), s(&[4]));
        assert_eq!(complement(s(&[2, 4, 6]), g(6)).unwrap(), s(&[1, 3, 5]));
    }

    #[test]
    fn complement_rejects_improper() {
        assert!(matches!(
            complement(Subset::EMPTY, g(5)),
            Err(Error::NotProper { .. })
        ));
        assert!(matches!(
            complement(g(5).full(), g(5)),
            Err(Error::NotProper { .. })
        ));
        assert!(matches!(
            complement(s(&[6]), g(5)),
            Err(Error::OutOfGround { .. })
        ));
    }

    #[test]
    fn subset_pair_counts() {
        for (n, total, boundary) in [(4, 7, 3), (5, 15, 10), (6, 31, 25)] {
            assert_eq!(subset_pairs(g(n)).count(), total);
            assert_eq!(boundary_pairs(g(n)).count(), boundary);
            assert_eq!(boundary_pair_count(n), boundary as u64);
        }
    }

    #[test]
    fn small_partition_counts() {
        assert_eq!(partitions4(g(4)).count(), 1);
        assert_eq!(partitions4(g(5)).count(), 10);
        assert_eq!(partitions4(g(8)).count(), 1701);
        let only = partitions4(g(4)).next().unwrap();
        assert_eq!(only.blocks(), &[s(&[1]), s(&[2]), s(&[3]), s(&[4])]);
    }

    #[test]
    fn partition_new_validates_and_sorts() {
        let p = Partition4::new(g(5), [s(&[4, 5]), s(&[2]), s(&[1]), s(&[3])]).unwrap();
        assert_eq!(p.blocks(), &[s(&[1]), s(&[2]), s(&[3]), s(&[4, 5])]);
        assert!(Partition4::new(g(5), [s(&[1, 2]), s(&[2]), s(&[3]), s(&[4, 5])]).is_err());
        assert!(Partition4::new(g(5), [s(&[1]), s(&[2]), s(&[3]), s(&[4])]).is_err());
        assert!(Partition4::new(g(5), [s(&[1, 2]), Subset::EMPTY, s(&[3]), s(&[4, 5])]).is_err());
    }

    #[test]
    fn prefixes_reassemble_the_stream() {
        for n in 4..=9 {
            let full: Vec<_> = partitions4(g(n)).collect();
            for depth in 1..=n {
                let chunked: Vec<_> = partition4_prefixes(g(n), depth)
                    .iter()
                    .flat_map(|p| Partitions4::with_prefix(g(n), p).unwrap())
                    .collect();
                assert_eq!(chunked, full, "n={n} depth={depth}");
            }
        }
    }

    #[test]
    fn invalid_prefixes() {
        assert!(Partitions4::with_prefix(g(5), &[1]).is_none());
        assert!(Partitions4::with_prefix(g(5), &[0, 2]).is_none());
        assert!(Partitions4::with_prefix(g(5), &[]).is_none());
        // Valid but not completable: only one point left for three labels.
        assert_eq!(
            Partitions4::with_prefix(g(5), &[0, 0, 0, 0])
                .unwrap()
                .count(),
            0
        );
    }

    #[test]
    fn closed_form_count() {
        assert_eq!(partition4_count(4), 1);
        assert_eq!(partition4_count(5), 10);
        assert_eq!(partition4_count(12), 611_501);
    }
}
