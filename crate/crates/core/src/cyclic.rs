//! The marked circle.
//!
//! The marked set is modelled as `[N] × ℤ`: segment `i` is an open arc of the
//! circle between the accumulation points `Acc(i)` and `Acc(i+1)` whose marked
//! points are indexed by the integers, increasing anticlockwise. Going once
//! around the circle from `Acc(1)` one meets
//!
//! ```text
//! Acc(1) < Marked(1, ·) < Acc(2) < Marked(2, ·) < … < Acc(N) < Marked(N, ·)
//! ```
//!
//! Cyclic comparisons linearize at `Acc(1)` and then rotate.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the closure of the marked set: a marked point or an
/// accumulation point. Segments are 1-based and always stored reduced into
/// `1..=N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryPoint {
    Marked { segment: u32, index: i64 },
    Acc { segment: u32 },
}

/// Reduce an arbitrary integer segment label into `1..=n`.
pub fn wrap_segment(segment: i64, n: u32) -> u32 {
    assert!(n >= 1, "need at least one accumulation point");
    ((segment - 1).rem_euclid(n as i64) + 1) as u32
}

impl BoundaryPoint {
    pub const fn marked(segment: u32, index: i64) -> Self {
        BoundaryPoint::Marked { segment, index }
    }

    pub const fn acc(segment: u32) -> Self {
        BoundaryPoint::Acc { segment }
    }

    pub fn segment(&self) -> u32 {
        match *self {
            BoundaryPoint::Marked { segment, .. } | BoundaryPoint::Acc { segment } => segment,
        }
    }

    pub fn is_marked(&self) -> bool {
        matches!(self, BoundaryPoint::Marked { .. })
    }

    pub fn is_acc(&self) -> bool {
        matches!(self, BoundaryPoint::Acc { .. })
    }

    /// The marked index, if this is a marked point.
    pub fn index(&self) -> Option<i64> {
        match *self {
            BoundaryPoint::Marked { index, .. } => Some(index),
            BoundaryPoint::Acc { .. } => None,
        }
    }

    /// Check that the segment label lies in `1..=n`.
    pub fn validate(&self, n: u32) -> Result<()> {
        let segment = self.segment();
        if segment == 0 || segment > n {
            return Err(Error::SegmentOutOfRange { segment, n });
        }
        Ok(())
    }

    pub fn succ(self) -> Self {
        self.iterate(1)
    }

    pub fn pred(self) -> Self {
        self.iterate(-1)
    }

    /// `n`-fold successor (`n ≥ 0`) or predecessor (`n < 0`). Accumulation
    /// points are fixed.
    pub fn iterate(self, n: i64) -> Self {
        match self {
            BoundaryPoint::Marked { segment, index } => BoundaryPoint::Marked {
                segment,
                index: index + n,
            },
            acc => acc,
        }
    }

    /// Position in the linear order obtained by cutting the circle just before
    /// `Acc(1)`.
    fn linear_key(&self) -> (u32, u8, i64) {
        match *self {
            BoundaryPoint::Acc { segment } => (segment, 0, 0),
            BoundaryPoint::Marked { segment, index } => (segment, 1, index),
        }
    }
}

impl Ord for BoundaryPoint {
    /// The linearization anchored at `Acc(1)`; not a cyclic notion by itself.
    fn cmp(&self, other: &Self) -> Ordering {
        self.linear_key().cmp(&other.linear_key())
    }
}

impl PartialOrd for BoundaryPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundaryPoint::Marked { segment, index } => write!(f, "({segment},{index})"),
            BoundaryPoint::Acc { segment } => write!(f, "a{segment}"),
        }
    }
}

/// True iff the points are pairwise distinct and met in the given order when
/// walking anticlockwise (starting anywhere).
pub fn cyclically_ordered(points: &[BoundaryPoint]) -> bool {
    if points.len() < 2 {
        return false;
    }
    for (i, p) in points.iter().enumerate() {
        if points[i + 1..].contains(p) {
            return false;
        }
    }
    // A cyclic sequence of distinct values is in cyclic order iff it has
    // exactly one descent in the linearization.
    let descents = points
        .iter()
        .zip(points.iter().cycle().skip(1))
        .filter(|(a, b)| a > b)
        .count();
    descents == 1
}

/// `a < b < c` cyclically.
pub fn between(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> bool {
    cyclically_ordered(&[a, b, c])
}

/// A cyclic interval walked anticlockwise from `lo` to `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: BoundaryPoint,
    pub hi: BoundaryPoint,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub const fn new(
        lo: BoundaryPoint,
        hi: BoundaryPoint,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Self {
        Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub const fn open(lo: BoundaryPoint, hi: BoundaryPoint) -> Self {
        Interval::new(lo, hi, false, false)
    }

    pub const fn closed(lo: BoundaryPoint, hi: BoundaryPoint) -> Self {
        Interval::new(lo, hi, true, true)
    }

    /// `[lo, hi)`
    pub const fn closed_open(lo: BoundaryPoint, hi: BoundaryPoint) -> Self {
        Interval::new(lo, hi, true, false)
    }

    /// `(lo, hi]`
    pub const fn open_closed(lo: BoundaryPoint, hi: BoundaryPoint) -> Self {
        Interval::new(lo, hi, false, true)
    }

    pub fn contains(&self, p: BoundaryPoint) -> bool {
        in_interval(p, self)
    }

    /// No point of the circle lies in the interval.
    pub fn is_empty(&self) -> bool {
        self.lo == self.hi && !(self.lo_closed && self.hi_closed)
    }
}

pub fn in_interval(p: BoundaryPoint, interval: &Interval) -> bool {
    let Interval {
        lo,
        hi,
        lo_closed,
        hi_closed,
    } = *interval;
    if lo == hi {
        return lo_closed && hi_closed && p == lo;
    }
    if p == lo {
        return lo_closed;
    }
    if p == hi {
        return hi_closed;
    }
    between(lo, p, hi)
}

/// All points of the open segment `(Acc(i), Acc(i+1))`, written as disjoint
/// intervals. With a single accumulation point both ends coincide, so the
/// segment is split at `Marked(1, 0)`.
pub fn open_segment(segment: u32, n: u32) -> Vec<Interval> {
    let lo = BoundaryPoint::acc(segment);
    let hi = BoundaryPoint::acc(wrap_segment(segment as i64 + 1, n));
    if lo != hi {
        vec![Interval::open(lo, hi)]
    } else {
        let mid = BoundaryPoint::marked(segment, 0);
        vec![Interval::open_closed(lo, mid), Interval::open(mid, hi)]
    }
}

/// The limit in the closure of an endpoint track that is constant or moves by
/// one successor step at a time.
pub fn limit_of_track(start: BoundaryPoint, advancing: bool, n: u32) -> Result<BoundaryPoint> {
    if !advancing {
        return Ok(start);
    }
    match start {
        BoundaryPoint::Marked { segment, .. } => {
            Ok(BoundaryPoint::acc(wrap_segment(segment as i64 + 1, n)))
        }
        acc => Err(Error::AdvancingFromAccumulation(acc)),
    }
}

/// A labelled family of interval unions. Each block stands for the convex
/// hull of its union: an arc belongs to the system when both endpoints lie in
/// one block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSystem {
    pub blocks: Vec<IntervalBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalBlock {
    pub id: u32,
    pub intervals: Vec<Interval>,
}

impl IntervalSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a block, dropping empty intervals.
    pub fn push_block(&mut self, id: u32, intervals: impl IntoIterator<Item = Interval>) {
        let intervals = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        self.blocks.push(IntervalBlock { id, intervals });
    }

    pub fn block_contains(&self, block: &IntervalBlock, p: BoundaryPoint) -> bool {
        block.intervals.iter().any(|i| i.contains(p))
    }

    /// Ids of the blocks whose union contains `p`.
    pub fn blocks_containing(&self, p: BoundaryPoint) -> impl Iterator<Item = u32> + '_ {
        self.blocks
            .iter()
            .filter(move |b| self.block_contains(b, p))
            .map(|b| b.id)
    }

    pub fn contains_point(&self, p: BoundaryPoint) -> bool {
        self.blocks_containing(p).next().is_some()
    }

    /// The first block containing both points.
    pub fn common_block(&self, p: BoundaryPoint, q: BoundaryPoint) -> Option<u32> {
        self.blocks
            .iter()
            .find(|b| self.block_contains(b, p) && self.block_contains(b, q))
            .map(|b| b.id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryPoint as P;

    #[test]
    fn succ_pred_and_iterate() {
        assert_eq!(P::marked(1, 0).succ(), P::marked(1, 1));
        assert_eq!(P::acc(2).succ(), P::acc(2));
        assert_eq!(P::marked(1, 1).pred(), P::marked(1, 0));
        assert_eq!(P::acc(1).pred(), P::acc(1));
        assert_eq!(P::marked(2, -3).iterate(5), P::marked(2, 2));
        assert_eq!(P::marked(3, 0).iterate(2), P::marked(3, 2));
        assert_eq!(P::acc(1).iterate(-7), P::acc(1));
    }

    #[test]
    fn cyclic_order_examples() {
        assert!(cyclically_ordered(&[P::acc(1), P::marked(1, 0), P::acc(2)]));
        assert!(!cyclically_ordered(&[P::marked(1, 0), P::marked(1, 0)]));
        // wraps past Acc(1) for N = 2
        assert!(cyclically_ordered(&[
            P::marked(1, 5),
            P::marked(2, 0),
            P::marked(1, -3)
        ]));
        assert!(!cyclically_ordered(&[
            P::marked(1, 5),
            P::marked(1, -3),
            P::marked(2, 0)
        ]));
    }

    #[test]
    fn interval_membership() {
        let a = P::acc(1);
        let i = Interval::closed_open(a, P::acc(2));
        assert!(i.contains(a));
        assert!(!Interval::open(a, a).contains(a));
        assert!(!Interval::open(a, a).contains(P::marked(1, 0)));
        assert!(Interval::open(P::acc(1), P::acc(2)).contains(P::marked(1, 3)));
        assert!(!Interval::open(P::acc(1), P::acc(2)).contains(P::marked(2, 3)));
        assert!(Interval::closed(a, a).contains(a));
    }

    #[test]
    fn open_segment_single_accumulation_point() {
        let seg = open_segment(1, 1);
        for k in [-100, -1, 0, 1, 100] {
            let p = P::marked(1, k);
            assert_eq!(seg.iter().filter(|i| i.contains(p)).count(), 1, "{p}");
        }
        assert!(!seg.iter().any(|i| i.contains(P::acc(1))));
    }

    #[test]
    fn limits() {
        assert_eq!(
            limit_of_track(P::marked(1, 0), true, 10).unwrap(),
            P::acc(2)
        );
        assert_eq!(
            limit_of_track(P::marked(4, 7), false, 10).unwrap(),
            P::marked(4, 7)
        );
        assert_eq!(
            limit_of_track(P::marked(10, 3), true, 10).unwrap(),
            P::acc(1)
        );
        assert_eq!(limit_of_track(P::marked(1, 3), true, 1).unwrap(), P::acc(1));
        assert!(limit_of_track(P::acc(3), true, 10).is_err());
    }

    #[test]
    fn wrap() {
        assert_eq!(wrap_segment(0, 10), 10);
        assert_eq!(wrap_segment(11, 10), 1);
        assert_eq!(wrap_segment(-9, 10), 1);
    }
}
