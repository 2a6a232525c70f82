//! t-structures on `C(Z)`, classified by decorated non-crossing partitions.
//!
//! A partition `P` of the accumulation-point labels `[N]` together with one
//! boundary point `x_i` per segment determines the aisle: for each block `B`,
//! the convex hull of `⋃_{i∈B} (a_i, x_i]`. The coaisle is described by the
//! Kreweras complement of `P`, with the intervals `[x_i⁻, a_{i+1})`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::category::{Arc, FormalObject};
use crate::cyclic::{open_segment, wrap_segment, BoundaryPoint, Interval, IntervalSystem};
use crate::error::{Error, Result};

/// A non-crossing partition of `{1, …, n}`. Blocks are kept sorted, and
/// ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct NCPartition {
    n: u32,
    blocks: Vec<Vec<u32>>,
    /// `owner[i - 1]` is the position of the block containing `i`.
    owner: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

impl TryFrom<PartitionRepr> for NCPartition {
    type Error = Error;
    fn try_from(r: PartitionRepr) -> Result<Self> {
        NCPartition::new(r.n, r.blocks)
    }
}

impl From<NCPartition> for PartitionRepr {
    fn from(p: NCPartition) -> Self {
        PartitionRepr {
            n: p.n,
            blocks: p.blocks,
        }
    }
}

fn normalize(n: u32, blocks: Vec<Vec<u32>>) -> Result<(Vec<Vec<u32>>, Vec<usize>)> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be positive".into()));
    }
    let mut blocks: Vec<Vec<u32>> = blocks
        .into_iter()
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    if blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidPartition("empty block".into()));
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    let mut owner = vec![usize::MAX; n as usize];
    for (pos, block) in blocks.iter().enumerate() {
        for &i in block {
            if i == 0 || i > n {
                return Err(Error::InvalidPartition(format!(
                    "label {i} outside 1..={n}"
                )));
            }
            if owner[i as usize - 1] != usize::MAX {
                return Err(Error::InvalidPartition(format!("label {i} appears twice")));
            }
            owner[i as usize - 1] = pos;
        }
    }
    if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InvalidPartition(format!(
            "label {} is not covered",
            missing + 1
        )));
    }
    Ok((blocks, owner))
}

fn crossing_free(blocks: &[Vec<u32>]) -> bool {
    for (x, a) in blocks.iter().enumerate() {
        for b in &blocks[x + 1..] {
            // a block crosses another iff the other has labels both inside and
            // outside one of its gaps
            for w in a.windows(2) {
                let inside = b.iter().any(|&k| w[0] < k && k < w[1]);
                let outside = b.iter().any(|&k| k < w[0] || k > w[1]);
                if inside && outside {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `blocks` is a non-crossing partition of `[n]`; errors when it is
/// not a partition at all.
pub fn is_noncrossing(n: u32, blocks: &[Vec<u32>]) -> Result<bool> {
    let (blocks, _) = normalize(n, blocks.to_vec())?;
    Ok(crossing_free(&blocks))
}

impl NCPartition {
    pub fn new(n: u32, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let (blocks, owner) = normalize(n, blocks)?;
        if !crossing_free(&blocks) {
            return Err(Error::Crossing);
        }
        Ok(NCPartition { n, blocks, owner })
    }

    /// All singletons.
    pub fn finest(n: u32) -> Self {
        NCPartition::new(n, (1..=n).map(|i| vec![i]).collect()).expect("finest partition")
    }

    /// The single block `[n]`.
    pub fn coarsest(n: u32) -> Self {
        NCPartition::new(n, vec![(1..=n).collect()]).expect("coarsest partition")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// The block containing `i`.
    pub fn block_of(&self, i: u32) -> &[u32] {
        &self.blocks[self.owner[i as usize - 1]]
    }

    /// Identifier of the block containing `i`: its least element.
    pub fn block_id(&self, i: u32) -> u32 {
        self.block_of(i)[0]
    }

    pub fn same_block(&self, i: u32, j: u32) -> bool {
        self.owner[i as usize - 1] == self.owner[j as usize - 1]
    }

    pub fn is_singleton(&self, i: u32) -> bool {
        self.block_of(i).len() == 1
    }

    /// `i` and `i + 1` (mod `n`) share a block. For `n = 1` this holds.
    pub fn is_adjacency(&self, i: u32) -> bool {
        self.same_block(i, wrap_segment(i as i64 + 1, self.n))
    }

    /// Relabel along `i ↦ i + k (mod n)`.
    pub fn rotate(&self, k: i64) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| wrap_segment(i as i64 + k, self.n))
                    .collect()
            })
            .collect();
        NCPartition::new(self.n, blocks).expect("rotation preserves non-crossing")
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &NCPartition) -> bool {
        self.n == other.n
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&i| other.same_block(b[0], i)))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn blocks(mut self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            blocks[r].push(x as u32 + 1);
        }
        blocks.retain(|b| !b.is_empty());
        blocks
    }
}

/// The Kreweras complement. Label `i'` sits between `i` and `i + 1`; `i'` and
/// `j'` (`i < j`) share a block iff no block of `P` has labels both inside and
/// outside `{i+1, …, j}`. The result is returned on `[n]` via `i' ↦ i`.
pub fn kreweras(p: &NCPartition) -> NCPartition {
    let n = p.n;
    let mut uf = UnionFind::new(n as usize);
    for i in 1..=n {
        for j in i + 1..=n {
            let separated = p.blocks.iter().all(|b| {
                let inside = b.iter().filter(|&&k| i < k && k <= j).count();
                inside == 0 || inside == b.len()
            });
            if separated {
                uf.union(i as usize - 1, j as usize - 1);
            }
        }
    }
    NCPartition::new(n, uf.blocks()).expect("the Kreweras complement is non-crossing")
}

/// The finest non-crossing partition coarser than both arguments.
pub fn nc_join(p: &NCPartition, q: &NCPartition) -> NCPartition {
    assert_eq!(p.n, q.n, "partitions of different sets");
    let n = p.n as usize;
    let mut uf = UnionFind::new(n);
    for b in p.blocks.iter().chain(&q.blocks) {
        for &i in &b[1..] {
            uf.union(b[0] as usize - 1, i as usize - 1);
        }
    }
    let mut blocks = uf.blocks();
    // merge crossing pairs until none remain
    while let Some((x, y)) = crossing_pair(&blocks) {
        let b = blocks.swap_remove(y);
        blocks[x].extend(b);
        blocks[x].sort_unstable();
    }
    NCPartition::new(p.n, blocks).expect("closure is non-crossing")
}

fn crossing_pair(blocks: &[Vec<u32>]) -> Option<(usize, usize)> {
    for x in 0..blocks.len() {
        for y in x + 1..blocks.len() {
            if !crossing_free(&[blocks[x].clone(), blocks[y].clone()]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Every non-crossing partition of `[n]`, in a fixed order.
pub fn all_noncrossing(n: u32) -> Vec<NCPartition> {
    let n = n as usize;
    let mut out = Vec::new();
    // restricted growth strings enumerate set partitions
    let mut rgs = vec![0usize; n];
    fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<NCPartition>) {
        let n = rgs.len();
        if pos == n {
            let mut blocks = vec![Vec::new(); max + 1];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i as u32 + 1);
            }
            if let Ok(p) = NCPartition::new(n as u32, blocks) {
                out.push(p);
            }
            return;
        }
        for b in 0..=max + 1 {
            rgs[pos] = b;
            rec(pos + 1, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(1, 0, &mut rgs, &mut out);
    out
}

/// Where the boundary point `x_i` of segment `i` sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Decoration {
    /// `x_i = a_i`; only for singletons.
    #[serde(rename = "left")]
    AtLeft,
    /// `x_i = a_{i+1}`; only for adjacencies.
    #[serde(rename = "right")]
    AtRight,
    /// `x_i` is a marked point of segment `i`.
    #[serde(rename = "point")]
    InSegment { point: BoundaryPoint },
}

impl Decoration {
    pub fn at(segment: u32, index: i64) -> Self {
        Decoration::InSegment {
            point: BoundaryPoint::marked(segment, index),
        }
    }

    /// The boundary point this decoration denotes for segment `i`.
    pub fn value(&self, i: u32, n: u32) -> BoundaryPoint {
        match *self {
            Decoration::AtLeft => BoundaryPoint::acc(i),
            Decoration::AtRight => BoundaryPoint::acc(wrap_segment(i as i64 + 1, n)),
            Decoration::InSegment { point } => point,
        }
    }

    fn marked_index(&self) -> Option<i64> {
        match self {
            Decoration::InSegment { point } => point.index(),
            _ => None,
        }
    }
}

/// Raw t-structure data: a partition and one decoration per segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedNC {
    pub partition: NCPartition,
    pub decoration: Vec<Decoration>,
}

impl DecoratedNC {
    pub fn new(partition: NCPartition, decoration: Vec<Decoration>) -> Self {
        DecoratedNC {
            partition,
            decoration,
        }
    }

    /// Every segment decorated by `Marked(i, 0)`.
    pub fn all_in_segment(partition: NCPartition) -> Self {
        let decoration = (1..=partition.n()).map(|i| Decoration::at(i, 0)).collect();
        DecoratedNC {
            partition,
            decoration,
        }
    }

    pub fn n(&self) -> u32 {
        self.partition.n()
    }

    pub fn decoration(&self, i: u32) -> Decoration {
        self.decoration[i as usize - 1]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.decoration.len() != n as usize {
            return Err(Error::InvalidDecoration {
                index: self.decoration.len() as u32,
                reason: format!("expected {n} decorations"),
            });
        }
        for i in 1..=n {
            let bad = |reason: &str| Error::InvalidDecoration {
                index: i,
                reason: reason.into(),
            };
            match self.decoration(i) {
                Decoration::AtLeft if !self.partition.is_singleton(i) => {
                    return Err(bad("the left accumulation point needs a singleton"))
                }
                Decoration::AtRight if !self.partition.is_adjacency(i) => {
                    return Err(bad("the right accumulation point needs an adjacency"))
                }
                Decoration::InSegment { point } if !point.is_marked() || point.segment() != i => {
                    return Err(bad("the point must be a marked point of its own segment"))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

pub fn decoration_valid(d: &DecoratedNC) -> bool {
    d.validate().is_ok()
}

/// A validated t-structure together with its Kreweras complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecoratedNC", into = "DecoratedNC")]
pub struct TStructure {
    data: DecoratedNC,
    kreweras: NCPartition,
}

impl TryFrom<DecoratedNC> for TStructure {
    type Error = Error;
    fn try_from(data: DecoratedNC) -> Result<Self> {
        TStructure::new(data)
    }
}

impl From<TStructure> for DecoratedNC {
    fn from(t: TStructure) -> Self {
        t.data
    }
}

impl TStructure {
    pub fn new(data: DecoratedNC) -> Result<Self> {
        data.validate()?;
        let kreweras = kreweras(&data.partition);
        Ok(TStructure { data, kreweras })
    }

    pub fn data(&self) -> &DecoratedNC {
        &self.data
    }

    pub fn n(&self) -> u32 {
        self.data.n()
    }

    pub fn partition(&self) -> &NCPartition {
        &self.data.partition
    }

    pub fn kreweras(&self) -> &NCPartition {
        &self.kreweras
    }

    pub fn decoration(&self, i: u32) -> Decoration {
        self.data.decoration(i)
    }

    /// Block of `P` whose shifted aisle region contains `z`, if any.
    pub fn aisle_block(&self, z: BoundaryPoint, p: i64) -> Option<u32> {
        match z {
            BoundaryPoint::Marked { segment: i, index } => {
                let inside = match self.decoration(i) {
                    Decoration::AtLeft => false,
                    Decoration::AtRight => true,
                    d => index <= d.marked_index().expect("marked decoration") - p,
                };
                inside.then(|| self.partition().block_id(i))
            }
            // `a_{i+1}` closes the region of an `AtRight` segment `i`
            BoundaryPoint::Acc { segment } => {
                let i = wrap_segment(segment as i64 - 1, self.n());
                (self.decoration(i) == Decoration::AtRight).then(|| self.partition().block_id(i))
            }
        }
    }

    /// Block of the Kreweras complement whose shifted coaisle region
    /// contains `z`, if any.
    pub fn coaisle_block(&self, z: BoundaryPoint, p: i64) -> Option<u32> {
        let BoundaryPoint::Marked { segment: i, index } = z else {
            return None;
        };
        let inside = match self.decoration(i) {
            Decoration::AtLeft => true,
            Decoration::AtRight => false,
            d => index >= d.marked_index().expect("marked decoration") - p - 1,
        };
        inside.then(|| self.kreweras.block_id(i))
    }

    pub fn aisle_arc(&self, arc: &Arc, p: i64) -> bool {
        let [u, v] = arc.endpoints();
        matches!((self.aisle_block(u, p), self.aisle_block(v, p)), (Some(b), Some(c)) if b == c)
    }

    pub fn coaisle_arc(&self, arc: &Arc, p: i64) -> bool {
        let [u, v] = arc.endpoints();
        matches!((self.coaisle_block(u, p), self.coaisle_block(v, p)), (Some(b), Some(c)) if b == c)
    }

    /// `ΣᵖX` as an interval system, one block per block of `P`.
    pub fn aisle_system(&self, p: i64) -> IntervalSystem {
        let n = self.n();
        let mut system = IntervalSystem::new();
        for block in self.partition().blocks() {
            let mut intervals = Vec::new();
            for &i in block {
                let left = BoundaryPoint::acc(i);
                match self.decoration(i) {
                    Decoration::AtLeft => {}
                    Decoration::AtRight => {
                        intervals.extend(open_segment(i, n));
                        let right = BoundaryPoint::acc(wrap_segment(i as i64 + 1, n));
                        intervals.push(Interval::closed(right, right));
                    }
                    Decoration::InSegment { point } => {
                        intervals.push(Interval::open_closed(left, point.iterate(-p)));
                    }
                }
            }
            system.push_block(block[0], intervals);
        }
        system
    }

    /// `ΣᵖY` as an interval system, one block per Kreweras block.
    pub fn coaisle_system(&self, p: i64) -> IntervalSystem {
        let n = self.n();
        let mut system = IntervalSystem::new();
        for block in self.kreweras.blocks() {
            let mut intervals = Vec::new();
            for &i in block {
                let right = BoundaryPoint::acc(wrap_segment(i as i64 + 1, n));
                match self.decoration(i) {
                    Decoration::AtLeft => intervals.extend(open_segment(i, n)),
                    Decoration::AtRight => {}
                    Decoration::InSegment { point } => {
                        intervals.push(Interval::closed_open(point.iterate(-p - 1), right));
                    }
                }
            }
            system.push_block(block[0], intervals);
        }
        system
    }

    /// Every summand lies in `ΣᵖX`.
    pub fn aisle_member(&self, obj: &FormalObject, p: i64) -> bool {
        obj.summands().iter().all(|a| self.aisle_arc(a, p))
    }

    /// Every summand lies in `ΣᵖY`.
    pub fn coaisle_member(&self, obj: &FormalObject, p: i64) -> bool {
        obj.summands().iter().all(|a| self.coaisle_arc(a, p))
    }

    /// Indices decorated by a marked point.
    pub fn marked_indices(&self) -> BTreeSet<u32> {
        (1..=self.n())
            .filter(|&i| matches!(self.decoration(i), Decoration::InSegment { .. }))
            .collect()
    }

    /// No decoration sits at its segment's left accumulation point.
    pub fn is_right_nondegenerate(&self) -> bool {
        (1..=self.n()).all(|i| self.decoration(i) != Decoration::AtLeft)
    }
}

/// Same partition and the same segments decorated by marked points.
pub fn tstructs_equivalent(t1: &TStructure, t2: &TStructure) -> bool {
    t1.partition() == t2.partition() && t1.marked_indices() == t2.marked_indices()
}

/// A representative of the largest aisle contained in the coaisle of `t`.
///
/// Only segments `S` decorated at their left accumulation point carry a
/// shift-invariant part of the coaisle. The aisle groups them by the Kreweras
/// blocks they lie in and takes each segment whole when its successor is in
/// the same group.
pub fn largest_aisle_in_coaisle(t: &TStructure) -> TStructure {
    let n = t.n();
    let in_s = |i: u32| t.decoration(i) == Decoration::AtLeft;
    let mut blocks: Vec<Vec<u32>> = t
        .kreweras()
        .blocks()
        .iter()
        .map(|b| b.iter().copied().filter(|&i| in_s(i)).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    blocks.extend((1..=n).filter(|&i| !in_s(i)).map(|i| vec![i]));
    let partition = NCPartition::new(n, blocks).expect("restriction of a non-crossing partition");
    let decoration = (1..=n)
        .map(|i| {
            if !in_s(i) {
                Decoration::AtLeft
            } else if partition.is_adjacency(i) {
                Decoration::AtRight
            } else {
                Decoration::at(i, 0)
            }
        })
        .collect();
    TStructure::new(DecoratedNC::new(partition, decoration))
        .expect("constructed decoration is valid")
}

/// Membership in `Y ∩ ΣʳŶ`, where `Ŷ` is the coaisle paired with
/// [`largest_aisle_in_coaisle`].
pub fn rndg_reduction_member(obj: &FormalObject, t: &TStructure, r: i64) -> bool {
    let hat = largest_aisle_in_coaisle(t);
    t.coaisle_member(obj, 0) && hat.coaisle_member(obj, r)
}
