//! Metrics induced by t-structures and sequences built from threads.
//!
//! A thread is a sequence of arcs whose two endpoint tracks either stay put
//! or advance one successor step at a time, connected by canonical maps. Finite
//! direct sums of threads model double fans and the other sequences needed for
//! the completion.

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::category::{
    compose, cone, factors_through, hom_dim, Arc, CanonicalMorphism, FormalObject,
};
use crate::cyclic::{limit_of_track, BoundaryPoint};
use crate::error::{Error, Result};
use crate::tstructure::{Decoration, TStructure};

/// `B_t = Σ^{-t}Y` for the coaisle metric and `B_t = Σ^tX` for the aisle
/// metric; `B_0` is everything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MetricSpec {
    Coaisle { t: TStructure },
    Aisle { t: TStructure },
}

impl MetricSpec {
    pub fn tstructure(&self) -> &TStructure {
        match self {
            MetricSpec::Coaisle { t } | MetricSpec::Aisle { t } => t,
        }
    }

    pub fn ball_arc(&self, arc: &Arc, t: u32) -> bool {
        if t == 0 {
            return true;
        }
        match self {
            MetricSpec::Coaisle { t: ts } => ts.coaisle_arc(arc, -(t as i64)),
            MetricSpec::Aisle { t: ts } => ts.aisle_arc(arc, t as i64),
        }
    }

    pub fn ball_contains(&self, obj: &FormalObject, t: u32) -> bool {
        obj.summands().iter().all(|a| self.ball_arc(a, t))
    }
}

/// Membership predicate of `B_t`.
pub fn metric_ball(m: &MetricSpec, t: u32) -> impl Fn(&FormalObject) -> bool + '_ {
    move |obj| m.ball_contains(obj, t)
}

/// Length of a morphism, `inf{1/(t+1) : cone ∈ B_t}`, searched up to a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Length {
    #[serde(with = "crate::io::rational")]
    pub value: Rational64,
    /// The cone was still in the ball at the search bound, so `value` is only
    /// an upper bound.
    pub upper_bound: bool,
}

pub fn morphism_length(f: &CanonicalMorphism, m: &MetricSpec, t_max: u32) -> Length {
    let c = cone(f);
    if c.is_zero() {
        return Length {
            value: Rational64::zero(),
            upper_bound: false,
        };
    }
    // balls are nested, so the first miss ends the search
    let mut last = 0;
    for t in 1..=t_max {
        if !m.ball_contains(&c, t) {
            break;
        }
        last = t;
    }
    Length {
        value: Rational64::new(1, last as i64 + 1),
        upper_bound: last == t_max && t_max > 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrackMode {
    #[serde(rename = "const")]
    Constant,
    #[serde(rename = "adv")]
    Advancing,
}

/// One endpoint of a thread: `start` at every step, or `start⁽ⁿ⁾` at step `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndpointTrack {
    pub start: BoundaryPoint,
    pub mode: TrackMode,
}

impl EndpointTrack {
    pub fn constant(start: BoundaryPoint) -> Self {
        EndpointTrack {
            start,
            mode: TrackMode::Constant,
        }
    }

    pub fn advancing(start: BoundaryPoint) -> Self {
        EndpointTrack {
            start,
            mode: TrackMode::Advancing,
        }
    }

    pub fn is_advancing(&self) -> bool {
        self.mode == TrackMode::Advancing
    }

    pub fn at(&self, n: u64) -> BoundaryPoint {
        match self.mode {
            TrackMode::Constant => self.start,
            TrackMode::Advancing => self.start.iterate(n as i64),
        }
    }

    pub fn limit(&self, n: u32) -> BoundaryPoint {
        limit_of_track(self.start, self.is_advancing(), n).expect("tracks start at marked points")
    }
}

/// Entries `{t0(n), t1(n)}` for `n ≥ offset`, with canonical step maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ThreadRepr", into = "ThreadRepr")]
pub struct ThreadSequence {
    t0: EndpointTrack,
    t1: EndpointTrack,
    offset: u64,
}

#[derive(Serialize, Deserialize)]
struct ThreadRepr {
    t0: EndpointTrack,
    t1: EndpointTrack,
    offset: u64,
}

impl TryFrom<ThreadRepr> for ThreadSequence {
    type Error = Error;
    fn try_from(r: ThreadRepr) -> Result<Self> {
        ThreadSequence::new(r.t0, r.t1, r.offset)
    }
}

impl From<ThreadSequence> for ThreadRepr {
    fn from(s: ThreadSequence) -> Self {
        ThreadRepr {
            t0: s.t0,
            t1: s.t1,
            offset: s.offset,
        }
    }
}

/// First step from which `{t0(n), t1(n)}` is an arc for good, if any.
fn first_good_step(t0: &EndpointTrack, t1: &EndpointTrack) -> Option<u64> {
    let (p, q) = (t0.start, t1.start);
    if p.segment() != q.segment() {
        return Some(1);
    }
    let (i, j) = (p.index().expect("marked"), q.index().expect("marked"));
    match (t0.is_advancing(), t1.is_advancing()) {
        // the index gap is fixed
        (false, false) | (true, true) => ((i - j).abs() >= 2).then_some(1),
        // the moving endpoint must be at least two steps past the fixed one
        (true, false) => Some((j - i + 2).max(1) as u64),
        (false, true) => Some((i - j + 2).max(1) as u64),
    }
}

impl ThreadSequence {
    pub fn new(t0: EndpointTrack, t1: EndpointTrack, offset: u64) -> Result<Self> {
        for track in [t0, t1] {
            if !track.start.is_marked() {
                return Err(Error::AdvancingFromAccumulation(track.start));
            }
        }
        if offset == 0 {
            return Err(Error::InvalidIndices("offset must be at least 1".into()));
        }
        match first_good_step(&t0, &t1) {
            Some(first) if offset >= first => Ok(ThreadSequence { t0, t1, offset }),
            Some(first) => Err(Error::DegenerateThread { step: first - 1 }),
            None => Err(Error::DegenerateThread { step: offset }),
        }
    }

    /// The thread with the least offset that keeps every entry an arc.
    pub fn earliest(t0: EndpointTrack, t1: EndpointTrack) -> Result<Self> {
        let offset = first_good_step(&t0, &t1).unwrap_or(1);
        ThreadSequence::new(t0, t1, offset)
    }

    /// A thread that never moves.
    pub fn constant(arc: Arc) -> Self {
        let [p, q] = arc.endpoints();
        ThreadSequence::new(EndpointTrack::constant(p), EndpointTrack::constant(q), 1)
            .expect("an arc is a valid constant thread")
    }

    pub fn tracks(&self) -> [EndpointTrack; 2] {
        [self.t0, self.t1]
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn entry(&self, n: u64) -> Result<Arc> {
        if n < self.offset {
            return Err(Error::InvalidIndices(format!(
                "step {n} precedes the offset {}",
                self.offset
            )));
        }
        Ok(Arc::new(self.t0.at(n), self.t1.at(n)).expect("validated at construction"))
    }

    fn entry_unchecked(&self, n: u64) -> Arc {
        Arc::new(self.t0.at(n), self.t1.at(n)).expect("validated at construction")
    }

    /// The canonical map `entry(n) → entry(n + 1)`.
    pub fn step(&self, n: u64) -> CanonicalMorphism {
        CanonicalMorphism::canonical(self.entry_unchecked(n), self.entry_unchecked(n + 1))
    }

    /// `f_{m,m'}`, the composite of the step maps from `m` to `m'`.
    pub fn composite(&self, m: u64, m2: u64) -> Result<CanonicalMorphism> {
        self.check_pair(m, m2)?;
        let mut acc = CanonicalMorphism::identity(self.entry_unchecked(m));
        for n in m..m2 {
            acc = compose(&acc, &self.step(n)).expect("consecutive steps compose");
        }
        Ok(acc)
    }

    fn check_pair(&self, m: u64, m2: u64) -> Result<()> {
        if m < self.offset || m2 < m {
            return Err(Error::InvalidIndices(format!(
                "need offset {} ≤ m ≤ m', got m = {m}, m' = {m2}",
                self.offset
            )));
        }
        Ok(())
    }

    /// Cones of `f_{m,m'}` for all `from ≤ m < m' ≤ from + window`.
    pub fn late_cones(&self, from: u64, window: u64) -> Vec<FormalObject> {
        let from = from.max(self.offset);
        let mut out = Vec::new();
        for m in from..from + window {
            let mut acc = CanonicalMorphism::identity(self.entry_unchecked(m));
            for n in m..from + window {
                acc = compose(&acc, &self.step(n)).expect("consecutive steps compose");
                out.push(cone(&acc));
            }
        }
        out
    }

    /// Limits of the two tracks; `None` when they coincide.
    pub fn mocolim(&self, n: u32) -> Option<Arc> {
        Arc::try_new(self.t0.limit(n), self.t1.limit(n))
    }
}

pub fn thread_entry(s: &ThreadSequence, n: u64) -> Result<Arc> {
    s.entry(n)
}

/// Cone of `f_{m,m'}`: the cone formula when the composite is non-zero, the
/// split cone otherwise.
pub fn thread_cone(s: &ThreadSequence, m: u64, m2: u64) -> Result<FormalObject> {
    Ok(cone(&s.composite(m, m2)?))
}

pub fn mocolim_thread(s: &ThreadSequence, n: u32) -> Option<Arc> {
    s.mocolim(n)
}

/// A thread whose module colimit vanishes.
pub fn is_null_thread(s: &ThreadSequence, n: u32) -> bool {
    s.mocolim(n).is_none()
}

/// A direct sum of threads.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSequence {
    pub threads: Vec<ThreadSequence>,
}

impl FanSequence {
    pub fn new(threads: Vec<ThreadSequence>) -> Self {
        FanSequence { threads }
    }

    pub fn offset(&self) -> u64 {
        self.threads.iter().map(|s| s.offset).max().unwrap_or(1)
    }

    pub fn entry(&self, n: u64) -> Result<FormalObject> {
        let mut obj = FormalObject::zero();
        for s in &self.threads {
            obj.push(s.entry(n)?);
        }
        Ok(obj)
    }

    pub fn cone(&self, m: u64, m2: u64) -> Result<FormalObject> {
        let mut obj = FormalObject::zero();
        for s in &self.threads {
            obj = obj.direct_sum(thread_cone(s, m, m2)?);
        }
        Ok(obj)
    }

    /// Module colimits of the summands, dropping the vanishing ones.
    pub fn mocolim(&self, n: u32) -> FormalObject {
        FormalObject::from_arcs(self.threads.iter().filter_map(|s| s.mocolim(n)))
    }

    /// Every summand is a double fan: its two limits differ.
    pub fn is_double_fan(&self, n: u32) -> bool {
        self.threads.iter().all(|s| s.mocolim(n).is_some())
    }
}

/// The summands picked by `selector`, in that order.
pub fn component(s: &FanSequence, selector: &[usize]) -> Result<FanSequence> {
    selector
        .iter()
        .map(|&k| {
            s.threads
                .get(k)
                .copied()
                .ok_or_else(|| Error::InvalidIndices(format!("no summand {k}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(FanSequence::new)
}

/// `E_I`: the entries at the steps listed in `indices`, with composites as maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsequence {
    thread: ThreadSequence,
    indices: Vec<u64>,
}

pub fn subsequence(s: &ThreadSequence, indices: Vec<u64>) -> Result<Subsequence> {
    if indices.first().is_some_and(|&i| i < s.offset) {
        return Err(Error::InvalidIndices(
            "indices must not precede the offset".into(),
        ));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidIndices(
            "indices must increase strictly".into(),
        ));
    }
    Ok(Subsequence {
        thread: *s,
        indices,
    })
}

impl Subsequence {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn entry(&self, j: usize) -> Arc {
        self.thread.entry_unchecked(self.indices[j])
    }

    pub fn map(&self, j: usize, j2: usize) -> CanonicalMorphism {
        self.thread
            .composite(self.indices[j], self.indices[j2])
            .expect("indices are increasing and past the offset")
    }

    pub fn cone(&self, j: usize, j2: usize) -> FormalObject {
        cone(&self.map(j, j2))
    }

    /// Reindexing leaves the limits of the tracks untouched.
    pub fn mocolim(&self, n: u32) -> Option<Arc> {
        self.thread.mocolim(n)
    }
}

/// Cauchy criterion for double fans and the coaisle metric of `t`: an
/// advancing endpoint needs the decoration of its segment to stay off the
/// right accumulation point.
pub fn is_cauchy_fan(s: &FanSequence, t: &TStructure) -> bool {
    s.threads.iter().all(|thread| {
        thread
            .tracks()
            .iter()
            .filter(|track| track.is_advancing())
            .all(|track| t.decoration(track.start.segment()) != Decoration::AtRight)
    })
}

/// Compact support for double fans and the coaisle metric of `t`: the limits
/// lie in segments `k`, `ℓ` (accumulation points counted with the segment they
/// open) of one block of `P`, neither decorated at its left end. Threads with
/// vanishing colimit are vacuously supported.
pub fn is_compactly_supported_fan(s: &FanSequence, t: &TStructure) -> bool {
    s.threads.iter().all(|thread| match thread.mocolim(t.n()) {
        None => true,
        Some(limit) => {
            let [f, g] = limit.endpoints();
            let (k, l) = (f.segment(), g.segment());
            t.partition().same_block(k, l)
                && t.decoration(k) != Decoration::AtLeft
                && t.decoration(l) != Decoration::AtLeft
        }
    })
}

/// Cauchy by definition on a finite grid: for each `1 ≤ t ≤ t_max`, every
/// cone of `f_{m,m'}` with `from ≤ m < m' ≤ from + window` lies in `B_t`.
pub fn cauchy_by_definition(
    s: &FanSequence,
    m: &MetricSpec,
    t_max: u32,
    from: u64,
    window: u64,
) -> bool {
    s.threads.iter().all(|thread| {
        let cones = thread.late_cones(from, window);
        (1..=t_max).all(|t| cones.iter().all(|c| m.ball_contains(c, t)))
    })
}

/// Reads `colim_n Hom(Y, F_n)` off one thread at step `settle`: the
/// canonical map `Y → F_settle` must survive composition up to
/// `settle + lookahead`.
#[derive(Clone, Copy, Debug)]
pub struct ColimitProbe {
    early: Arc,
    late: Arc,
    alive: bool,
}

impl ColimitProbe {
    pub fn new(s: &ThreadSequence, settle: u64, lookahead: u64) -> Self {
        let settle = settle.max(s.offset);
        let f = s
            .composite(settle, settle + lookahead)
            .expect("valid steps");
        ColimitProbe {
            early: f.src(),
            late: f.tgt(),
            alive: !f.is_zero(),
        }
    }

    /// Whether the colimit is non-zero on `y`.
    pub fn detects(&self, y: &Arc) -> bool {
        self.alive
            && hom_dim(y, &self.early) == 1
            && hom_dim(y, &self.late) == 1
            && factors_through(y, &self.late, &self.early)
    }
}

/// Whether `colim_n Hom(Y, F_n)` is non-zero, read off at step `settle`.
pub fn colimit_detects(y: &Arc, s: &ThreadSequence, settle: u64, lookahead: u64) -> bool {
    ColimitProbe::new(s, settle, lookahead).detects(y)
}

/// Compact support by definition on a finite grid: some `1 ≤ t ≤ t_max` has
/// no arc of `arcs` inside `B_t` that the module colimit detects. Only
/// meaningful when `arcs` reaches past the boundary of `B_{t_max}`.
pub fn supported_by_definition(
    s: &FanSequence,
    m: &MetricSpec,
    t_max: u32,
    arcs: &[Arc],
    settle: u64,
    lookahead: u64,
) -> bool {
    let probes: Vec<ColimitProbe> = s
        .threads
        .iter()
        .map(|t| ColimitProbe::new(t, settle, lookahead))
        .collect();
    let detected: Vec<&Arc> = arcs
        .iter()
        .filter(|y| probes.iter().any(|p| p.detects(y)))
        .collect();
    (1..=t_max).any(|t| detected.iter().all(|y| !m.ball_arc(y, t)))
}
