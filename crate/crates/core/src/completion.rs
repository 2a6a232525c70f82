//! The completion of `C(Z)` with respect to a coaisle metric, in its
//! combinatorial form.
//!
//! Objects are arcs whose endpoints may be accumulation points. For each block
//! `B` of the partition, the admissible endpoints form `Z̄_B`: the marked points
//! of segments `i ∈ B` not decorated at their left end, plus those `a_i`,
//! `i ∈ B`, that are not a decoration value. The completion is the direct sum
//! of the blocks' convex hulls.

use serde::{Deserialize, Serialize};

use crate::category::{Arc, FormalObject};
use crate::cyclic::{wrap_segment, BoundaryPoint, Interval};
use crate::error::{Error, Result};
use crate::metric::{EndpointTrack, FanSequence, ThreadSequence};
use crate::tstructure::{Decoration, TStructure};

/// The block of `P` whose `Z̄_B` contains `z`, if any.
pub fn zbar_block(t: &TStructure, z: BoundaryPoint) -> Option<u32> {
    match z {
        BoundaryPoint::Marked { segment, .. } => {
            (t.decoration(segment) != Decoration::AtLeft).then(|| t.partition().block_id(segment))
        }
        BoundaryPoint::Acc { segment } => {
            let before = wrap_segment(segment as i64 - 1, t.n());
            (t.decoration(segment) != Decoration::AtLeft
                && t.decoration(before) != Decoration::AtRight)
                .then(|| t.partition().block_id(segment))
        }
    }
}

/// Membership predicate of `Z̄_B` for the block with id `block` (its least
/// element).
pub fn zbar_of_block(t: &TStructure, block: u32) -> impl Fn(BoundaryPoint) -> bool + '_ {
    move |z| zbar_block(t, z) == Some(block)
}

/// The block certifying that `arc` lies in the completion.
pub fn completion_member(arc: &Arc, t: &TStructure) -> Option<u32> {
    let [u, v] = arc.endpoints();
    match (zbar_block(t, u), zbar_block(t, v)) {
        (Some(b), Some(c)) if b == c => Some(b),
        _ => None,
    }
}

/// An arc of the completion together with its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompletedArc {
    pub arc: Arc,
    pub block: u32,
}

impl CompletedArc {
    pub fn new(arc: Arc, t: &TStructure) -> Result<Self> {
        let block = completion_member(&arc, t).ok_or(Error::NotInCompletion)?;
        Ok(CompletedArc { arc, block })
    }
}

/// A labelling `F = {f, f'}`, `G = {g, g'}` enabling `F → G`:
/// `f ≤ g < f'⁻` and `f' ≤ g' < f⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletedLabeling {
    pub f: BoundaryPoint,
    pub f2: BoundaryPoint,
    pub g: BoundaryPoint,
    pub g2: BoundaryPoint,
}

fn labelings(x: &Arc) -> [(BoundaryPoint, BoundaryPoint); 2] {
    let [a, b] = x.endpoints();
    [(a, b), (b, a)]
}

fn enables(f: BoundaryPoint, f2: BoundaryPoint, g: BoundaryPoint, g2: BoundaryPoint) -> bool {
    Interval::closed_open(f, f2.pred()).contains(g)
        && Interval::closed_open(f2, f.pred()).contains(g2)
}

/// Every labelling enabling a non-zero map `F → G`.
pub fn enabling_labelings(f: &Arc, g: &Arc) -> Vec<CompletedLabeling> {
    let mut out = Vec::new();
    for (f0, f1) in labelings(f) {
        for (g0, g1) in labelings(g) {
            if enables(f0, f1, g0, g1) {
                out.push(CompletedLabeling {
                    f: f0,
                    f2: f1,
                    g: g0,
                    g2: g1,
                });
            }
        }
    }
    out
}

pub fn hom_completed_dim(f: &Arc, g: &Arc) -> u8 {
    !enabling_labelings(f, g).is_empty() as u8
}

/// `b ≤ c ≤ d` walking anticlockwise from `b`.
fn monotone(b: BoundaryPoint, c: BoundaryPoint, d: BoundaryPoint) -> bool {
    Interval::closed(b, d).contains(c)
}

/// Whether `G → H` after `F → G` is non-zero: with enabling labellings,
/// `f ≤ g ≤ h` and `f' ≤ g' ≤ h'`. The chains are read inside the windows
/// of `F → H`, so that labelling must enable a map as well; otherwise a
/// closed cyclic interval could wrap past `f'⁻`.
pub fn compose_completed_nonzero(f: &Arc, g: &Arc, h: &Arc) -> bool {
    enabling_labelings(f, g).iter().any(|fg| {
        enabling_labelings(g, h).iter().any(|gh| {
            gh.f == fg.g
                && gh.f2 == fg.g2
                && enables(fg.f, fg.f2, gh.g, gh.g2)
                && monotone(fg.f, fg.g, gh.g)
                && monotone(fg.f2, fg.g2, gh.g2)
        })
    })
}

/// One clockwise step; accumulation points stay put.
pub fn suspend_completed(f: &CompletedArc) -> CompletedArc {
    CompletedArc {
        arc: f.arc.suspend(1),
        block: f.block,
    }
}

/// Cone of the non-zero map `F → G`: `{f⁻, g} ⊕ {f'⁻, g'}`, a summand being
/// zero when its endpoints coincide or are neighbours.
pub fn cone_completed(f: &Arc, g: &Arc) -> Result<FormalObject> {
    let l = enabling_labelings(f, g)
        .into_iter()
        .next()
        .ok_or(Error::ZeroMorphism)?;
    let mut cone = FormalObject::zero();
    cone.push_pair(l.f.pred(), l.g);
    cone.push_pair(l.f2.pred(), l.g2);
    Ok(cone)
}

/// A double fan whose module colimit is `arc`: marked endpoints stay put and
/// `a_k` is approached from `Marked(k - 1, 0)`. The offset is the least one
/// keeping every entry an arc.
pub fn realize_as_fan(arc: &Arc, n: u32) -> FanSequence {
    let track = |z: BoundaryPoint| match z {
        BoundaryPoint::Marked { .. } => EndpointTrack::constant(z),
        BoundaryPoint::Acc { segment } => EndpointTrack::advancing(BoundaryPoint::marked(
            wrap_segment(segment as i64 - 1, n),
            0,
        )),
    };
    let [u, v] = arc.endpoints();
    let thread =
        ThreadSequence::earliest(track(u), track(v)).expect("distinct limits give a valid thread");
    FanSequence::new(vec![thread])
}

/// Membership of a plain arc in `⋃_p ΣᵖY`: both endpoints in segments of one
/// Kreweras block, neither decorated at its right end.
pub fn aisle_completion_member(arc: &Arc, t: &TStructure) -> bool {
    let block = |z: BoundaryPoint| {
        let i = z.segment();
        (z.is_marked() && t.decoration(i) != Decoration::AtRight).then(|| t.kreweras().block_id(i))
    };
    let [u, v] = arc.endpoints();
    matches!((block(u), block(v)), (Some(b), Some(c)) if b == c)
}

/// Membership in some `ΣᵖY` with `|p| ≤ p_bound`.
pub fn aisle_completion_by_search(arc: &Arc, t: &TStructure, p_bound: i64) -> bool {
    (-p_bound..=p_bound).any(|p| t.coaisle_arc(arc, p))
}
