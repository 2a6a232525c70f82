//! The discrete cluster category `C(Z)`.
//!
//! Indecomposable objects are arcs; every Hom space between indecomposables is
//! zero or one-dimensional, so a morphism between arcs is a scalar multiple of
//! the canonical morphism.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclic::{between, BoundaryPoint, Interval};
use crate::error::{Error, Result};

/// `{p, q}` is non-degenerate: `q ∉ {p⁻, p, p⁺}` (accumulation points are
/// their own successor and predecessor).
pub fn is_arc(p: BoundaryPoint, q: BoundaryPoint) -> bool {
    p != q && q != p.succ() && q != p.pred() && p != q.succ() && p != q.pred()
}

/// An unordered pair of boundary points that is not degenerate. Endpoints are
/// stored in linear order so that equality ignores the order of construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ArcRepr", into = "ArcRepr")]
pub struct Arc {
    a: BoundaryPoint,
    b: BoundaryPoint,
}

#[derive(Serialize, Deserialize)]
struct ArcRepr {
    a: BoundaryPoint,
    b: BoundaryPoint,
}

impl TryFrom<ArcRepr> for Arc {
    type Error = Error;
    fn try_from(r: ArcRepr) -> Result<Self> {
        Arc::new(r.a, r.b)
    }
}

impl From<Arc> for ArcRepr {
    fn from(arc: Arc) -> Self {
        ArcRepr { a: arc.a, b: arc.b }
    }
}

impl Arc {
    pub fn new(p: BoundaryPoint, q: BoundaryPoint) -> Result<Self> {
        Self::try_new(p, q).ok_or(Error::NotAnArc(p, q))
    }

    /// `None` stands for the zero object a degenerate pair denotes.
    pub fn try_new(p: BoundaryPoint, q: BoundaryPoint) -> Option<Self> {
        if !is_arc(p, q) {
            return None;
        }
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        Some(Arc { a, b })
    }

    /// Shorthand for an arc between two marked points; panics when degenerate.
    pub fn marked(p: (u32, i64), q: (u32, i64)) -> Self {
        Arc::new(
            BoundaryPoint::marked(p.0, p.1),
            BoundaryPoint::marked(q.0, q.1),
        )
        .expect("not an arc")
    }

    pub fn endpoints(&self) -> [BoundaryPoint; 2] {
        [self.a, self.b]
    }

    /// First endpoint in the linearization anchored at `Acc(1)`.
    pub fn lo(&self) -> BoundaryPoint {
        self.a
    }

    pub fn hi(&self) -> BoundaryPoint {
        self.b
    }

    pub fn has_endpoint(&self, p: BoundaryPoint) -> bool {
        self.a == p || self.b == p
    }

    /// Both endpoints are marked, i.e. this is an object of `C(Z)` itself.
    pub fn is_plain(&self) -> bool {
        self.a.is_marked() && self.b.is_marked()
    }

    /// `Σⁿ`: every endpoint moves `n` steps clockwise.
    pub fn suspend(&self, n: i64) -> Arc {
        // rotation preserves non-degeneracy
        Arc::try_new(self.a.iterate(-n), self.b.iterate(-n))
            .expect("suspension of an arc is an arc")
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        self.a.validate(n)?;
        self.b.validate(n)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

pub fn suspend(x: &Arc, n: i64) -> Arc {
    x.suspend(n)
}

/// Endpoints interleave: `x0 < y0 < x1 < y1` for some labelling.
pub fn crosses(x: &Arc, y: &Arc) -> bool {
    let [x0, x1] = x.endpoints();
    let [y0, y1] = y.endpoints();
    if x.has_endpoint(y0) || x.has_endpoint(y1) {
        return false;
    }
    between(x0, y0, x1) != between(x0, y1, x1)
}

/// `dim Hom(X, Y)`: one iff `ΣX` and `Y` cross.
pub fn hom_dim(x: &Arc, y: &Arc) -> u8 {
    crosses(&x.suspend(1), y) as u8
}

/// `dim Ext¹(X, Y)`.
pub fn ext1_dim(x: &Arc, y: &Arc) -> u8 {
    crosses(x, y) as u8
}

/// The labelling `x0⁻ < y0 < x1⁻ < y1` enabling the non-zero morphism
/// `X → Y`. `x0` is the first endpoint of `X` in the linearization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub x0: BoundaryPoint,
    pub x1: BoundaryPoint,
    pub y0: BoundaryPoint,
    pub y1: BoundaryPoint,
}

pub fn enabled_ordering(x: &Arc, y: &Arc) -> Option<Labeling> {
    let [x0, x1] = x.endpoints();
    let (p0, p1) = (x0.pred(), x1.pred());
    let [u, v] = y.endpoints();
    for (y0, y1) in [(u, v), (v, u)] {
        if between(p0, y0, p1) && between(p1, y1, p0) {
            return Some(Labeling { x0, x1, y0, y1 });
        }
    }
    None
}

/// Whether the non-zero morphism `X → Y` factors through `S`:
/// `x0 ≤ s0 ≤ y0` and `x1 ≤ s1 ≤ y1`.
pub fn factors_through(x: &Arc, y: &Arc, s: &Arc) -> bool {
    let Some(l) = enabled_ordering(x, y) else {
        return false;
    };
    let first = Interval::closed(l.x0, l.y0);
    let second = Interval::closed(l.x1, l.y1);
    let [s0, s1] = s.endpoints();
    (first.contains(s0) && second.contains(s1)) || (first.contains(s1) && second.contains(s0))
}

/// `λ·e_{XY}` for arcs `X`, `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MorphismRepr", into = "MorphismRepr")]
pub struct CanonicalMorphism {
    src: Arc,
    tgt: Arc,
    scalar: Rational64,
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    src: Arc,
    tgt: Arc,
    #[serde(with = "crate::io::rational")]
    scalar: Rational64,
}

impl TryFrom<MorphismRepr> for CanonicalMorphism {
    type Error = Error;
    fn try_from(r: MorphismRepr) -> Result<Self> {
        CanonicalMorphism::new(r.src, r.tgt, r.scalar)
    }
}

impl From<CanonicalMorphism> for MorphismRepr {
    fn from(m: CanonicalMorphism) -> Self {
        MorphismRepr {
            src: m.src,
            tgt: m.tgt,
            scalar: m.scalar,
        }
    }
}

impl CanonicalMorphism {
    /// Fails when a non-zero scalar is requested on a zero Hom space.
    pub fn new(src: Arc, tgt: Arc, scalar: Rational64) -> Result<Self> {
        if !scalar.is_zero() && hom_dim(&src, &tgt) == 0 {
            return Err(Error::NoMorphism(src, tgt));
        }
        Ok(CanonicalMorphism { src, tgt, scalar })
    }

    /// `e_{XY}`, or zero when the Hom space vanishes.
    pub fn canonical(src: Arc, tgt: Arc) -> Self {
        let scalar = if hom_dim(&src, &tgt) == 1 {
            Rational64::one()
        } else {
            Rational64::zero()
        };
        CanonicalMorphism { src, tgt, scalar }
    }

    pub fn identity(x: Arc) -> Self {
        CanonicalMorphism {
            src: x,
            tgt: x,
            scalar: Rational64::one(),
        }
    }

    pub fn zero(src: Arc, tgt: Arc) -> Self {
        CanonicalMorphism {
            src,
            tgt,
            scalar: Rational64::zero(),
        }
    }

    pub fn src(&self) -> Arc {
        self.src
    }

    pub fn tgt(&self) -> Arc {
        self.tgt
    }

    pub fn scalar(&self) -> Rational64 {
        self.scalar
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }
}

/// `g ∘ f`. The composite of canonical maps is canonical exactly when
/// `e_{XZ}` factors through the middle object, and zero otherwise.
pub fn compose(f: &CanonicalMorphism, g: &CanonicalMorphism) -> Result<CanonicalMorphism> {
    if f.tgt != g.src {
        return Err(Error::NotComposable);
    }
    let (x, y, z) = (f.src, f.tgt, g.tgt);
    let scalar = f.scalar * g.scalar;
    if scalar.is_zero() || hom_dim(&x, &z) == 0 || !factors_through(&x, &z, &y) {
        return Ok(CanonicalMorphism::zero(x, z));
    }
    Ok(CanonicalMorphism {
        src: x,
        tgt: z,
        scalar,
    })
}

/// A finite direct sum of arcs; the empty sum is the zero object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "ObjectRepr", into = "ObjectRepr")]
pub struct FormalObject {
    summands: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct ObjectRepr {
    summands: Vec<Arc>,
}

impl From<ObjectRepr> for FormalObject {
    fn from(r: ObjectRepr) -> Self {
        FormalObject::from_arcs(r.summands)
    }
}

impl From<FormalObject> for ObjectRepr {
    fn from(o: FormalObject) -> Self {
        ObjectRepr {
            summands: o.summands,
        }
    }
}

impl From<Arc> for FormalObject {
    fn from(arc: Arc) -> Self {
        FormalObject {
            summands: vec![arc],
        }
    }
}

impl FormalObject {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let mut summands: Vec<Arc> = arcs.into_iter().collect();
        summands.sort();
        FormalObject { summands }
    }

    /// Add the summand `{p, q}`, which is zero when degenerate.
    pub fn push_pair(&mut self, p: BoundaryPoint, q: BoundaryPoint) {
        if let Some(arc) = Arc::try_new(p, q) {
            self.push(arc);
        }
    }

    pub fn push(&mut self, arc: Arc) {
        let at = self.summands.partition_point(|s| *s <= arc);
        self.summands.insert(at, arc);
    }

    pub fn direct_sum(mut self, other: FormalObject) -> Self {
        for arc in other.summands {
            self.push(arc);
        }
        self
    }

    pub fn summands(&self) -> &[Arc] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn suspend(&self, n: i64) -> Self {
        FormalObject::from_arcs(self.summands.iter().map(|a| a.suspend(n)))
    }
}

/// Cone of a non-zero canonical morphism: `{x0⁻, y0} ⊕ {x1⁻, y1}`.
pub fn cone_of_canonical(f: &CanonicalMorphism) -> Result<FormalObject> {
    if f.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    let l = enabled_ordering(&f.src, &f.tgt).ok_or(Error::ZeroMorphism)?;
    let mut cone = FormalObject::zero();
    cone.push_pair(l.x0.pred(), l.y0);
    cone.push_pair(l.x1.pred(), l.y1);
    Ok(cone)
}

/// Cone of any morphism between arcs; a zero map `X → Y` has the split cone
/// `Y ⊕ ΣX`.
pub fn cone(f: &CanonicalMorphism) -> FormalObject {
    if f.is_zero() {
        FormalObject::from_arcs([f.tgt, f.src.suspend(1)])
    } else {
        cone_of_canonical(f).expect("non-zero morphism")
    }
}

/// The arc has both endpoints in `set`.
pub fn cx_member(arc: &Arc, set: impl Fn(BoundaryPoint) -> bool) -> bool {
    arc.endpoints().into_iter().all(set)
}

/// Union of endpoints of the summands.
pub fn support(obj: &FormalObject) -> BTreeSet<BoundaryPoint> {
    obj.summands().iter().flat_map(|a| a.endpoints()).collect()
}

/// `{z, z⁽²⁾}`, the shortest arc starting at `z`.
pub fn shortest_from(z: BoundaryPoint) -> Arc {
    Arc::new(z, z.iterate(2)).expect("z must be marked")
}

/// `{z⁽⁻²⁾, z}`, the shortest arc ending at `z`.
pub fn shortest_to(z: BoundaryPoint) -> Arc {
    Arc::new(z.iterate(-2), z).expect("z must be marked")
}

/// Marked points `(i, k)` with `|k| ≤ w` in every segment, in cyclic order.
pub fn window_points(n: u32, w: i64) -> Vec<BoundaryPoint> {
    (1..=n)
        .flat_map(|seg| (-w..=w).map(move |k| BoundaryPoint::marked(seg, k)))
        .collect()
}

/// Every arc of `C(Z)` whose endpoints lie in [`window_points`].
pub fn window_arcs(n: u32, w: i64) -> Vec<Arc> {
    let pts = window_points(n, w);
    let mut arcs = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            if let Some(a) = Arc::try_new(p, q) {
                arcs.push(a);
            }
        }
    }
    arcs
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryPoint as P;

    fn arc(p: (u32, i64), q: (u32, i64)) -> Arc {
        Arc::marked(p, q)
    }

    #[test]
    fn arc_predicate() {
        assert!(!is_arc(P::marked(1, 0), P::marked(1, 1)));
        assert!(is_arc(P::marked(1, 0), P::marked(1, 2)));
        assert!(!is_arc(P::acc(2), P::acc(2)));
        assert!(is_arc(P::acc(2), P::acc(9)));
        assert!(is_arc(P::acc(2), P::marked(2, 0)));
        assert!(is_arc(P::marked(1, 9), P::marked(2, -9)));
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(&arc((1, 0), (2, 0)), &arc((1, 1), (2, 1))));
        let x = arc((1, 0), (1, 3));
        assert!(!crosses(&x, &x));
        assert!(!crosses(&x, &arc((1, 4), (1, 8))));
    }

    #[test]
    fn hom_examples() {
        let x = arc((1, 0), (1, 3));
        assert_eq!(hom_dim(&x, &arc((1, 1), (1, 4))), 1);
        assert_eq!(hom_dim(&x, &x), 1);
        assert_eq!(hom_dim(&x, &arc((1, 5), (1, 9))), 0);
    }

    #[test]
    fn enabled_labelings() {
        let x = arc((1, 0), (1, 3));
        let l = enabled_ordering(&x, &arc((1, 1), (1, 4))).unwrap();
        assert_eq!(
            l,
            Labeling {
                x0: P::marked(1, 0),
                x1: P::marked(1, 3),
                y0: P::marked(1, 1),
                y1: P::marked(1, 4)
            }
        );
        let id = enabled_ordering(&x, &x).unwrap();
        assert_eq!((id.y0, id.y1), (id.x0, id.x1));
        assert!(enabled_ordering(&x, &arc((1, 5), (1, 9))).is_none());
    }

    #[test]
    fn factoring() {
        let x = arc((1, 0), (1, 4));
        let y = arc((1, 2), (1, 6));
        assert!(factors_through(&x, &y, &x));
        assert!(factors_through(&x, &y, &y));
        assert!(factors_through(&x, &y, &arc((1, 1), (1, 5))));
        assert!(!factors_through(&x, &y, &arc((1, 3), (1, 5))));
    }

    #[test]
    fn composition() {
        let x = arc((1, 0), (1, 4));
        let y = arc((1, 1), (1, 5));
        let f = CanonicalMorphism::canonical(x, y);
        assert_eq!(compose(&CanonicalMorphism::identity(x), &f).unwrap(), f);
        assert_eq!(compose(&f, &CanonicalMorphism::identity(y)).unwrap(), f);

        let z = arc((1, 2), (1, 6));
        let gf = compose(&f, &CanonicalMorphism::canonical(y, z)).unwrap();
        assert_eq!(gf.scalar(), Rational64::one());

        let z = arc((1, 5), (1, 9));
        assert_eq!(hom_dim(&x, &z), 0);
        let g = CanonicalMorphism::canonical(y, z);
        assert!(compose(&f, &g).unwrap().is_zero());

        // both factors non-zero, composite zero
        let y = arc((1, 2), (1, 6));
        let z = arc((1, 4), (1, 8));
        let f = CanonicalMorphism::canonical(x, y);
        let g = CanonicalMorphism::canonical(y, z);
        assert!(!f.is_zero() && !g.is_zero());
        assert!(compose(&f, &g).unwrap().is_zero());

        assert_eq!(compose(&g, &f), Err(Error::NotComposable));
    }

    #[test]
    fn scalars_need_a_hom_space() {
        let x = arc((1, 0), (1, 3));
        let y = arc((1, 5), (1, 9));
        assert!(CanonicalMorphism::new(x, y, Rational64::new(2, 3)).is_err());
        assert!(CanonicalMorphism::new(x, y, Rational64::zero()).is_ok());
    }

    #[test]
    fn suspension() {
        assert_eq!(arc((1, 2), (2, 5)).suspend(1), arc((1, 1), (2, 4)));
        let x = arc((3, -2), (1, 7));
        assert_eq!(x.suspend(1).suspend(-1), x);
        let v = Arc::new(P::acc(2), P::marked(3, 0)).unwrap();
        assert_eq!(v.suspend(1), Arc::new(P::acc(2), P::marked(3, -1)).unwrap());
    }

    #[test]
    fn cones() {
        let f = CanonicalMorphism::canonical(arc((1, 0), (1, 3)), arc((1, 1), (1, 4)));
        assert_eq!(
            cone_of_canonical(&f).unwrap(),
            FormalObject::from_arcs([arc((1, -1), (1, 1)), arc((1, 2), (1, 4))])
        );
        let id = CanonicalMorphism::identity(arc((1, 0), (1, 3)));
        assert!(cone_of_canonical(&id).unwrap().is_zero());

        // y0 = x1⁻ violates the strict inequality, so this pair has no morphism
        let f = CanonicalMorphism::canonical(arc((1, 0), (1, 3)), arc((1, 2), (1, 5)));
        assert!(f.is_zero());
        let f = CanonicalMorphism::canonical(arc((1, 0), (1, 4)), arc((1, 2), (1, 6)));
        assert_eq!(
            cone_of_canonical(&f).unwrap(),
            FormalObject::from_arcs([arc((1, -1), (1, 2)), arc((1, 3), (1, 6))])
        );

        let zero = CanonicalMorphism::zero(arc((1, 0), (1, 3)), arc((1, 5), (1, 9)));
        assert_eq!(cone_of_canonical(&zero), Err(Error::ZeroMorphism));
        assert_eq!(
            cone(&zero),
            FormalObject::from_arcs([arc((1, 5), (1, 9)), arc((1, -1), (1, 2))])
        );
    }

    #[test]
    fn ext1_is_crossing() {
        let x = arc((1, 0), (2, 0));
        let y = arc((1, 1), (2, 1));
        assert_eq!(ext1_dim(&x, &y), 1);
        assert_eq!(ext1_dim(&x, &x), 0);
    }

    #[test]
    fn supports() {
        assert!(support(&FormalObject::zero()).is_empty());
        let obj = FormalObject::from_arcs([arc((1, 0), (1, 3)), arc((2, 1), (2, 4))]);
        let expected: BTreeSet<_> = [
            P::marked(1, 0),
            P::marked(1, 3),
            P::marked(2, 1),
            P::marked(2, 4),
        ]
        .into();
        assert_eq!(support(&obj), expected);
        let shifted: BTreeSet<_> = expected.iter().map(|p| p.pred()).collect();
        assert_eq!(support(&obj.suspend(1)), shifted);
    }

    #[test]
    fn convex_hull_membership() {
        let s: BTreeSet<_> = [P::marked(1, 0), P::marked(1, 3)].into();
        assert!(cx_member(&arc((1, 0), (1, 3)), |p| s.contains(&p)));
        assert!(!cx_member(&arc((1, 0), (1, 4)), |p| s.contains(&p)));
        let seg = Interval::open(P::acc(1), P::acc(2));
        assert!(cx_member(&arc((1, -5), (1, 5)), |p| seg.contains(p)));
    }

    #[test]
    fn window_counts() {
        // 5 points on a line with one accumulation point: C(5,2) minus the 4 adjacent pairs
        assert_eq!(window_arcs(1, 2).len(), 6);
        assert_eq!(window_points(3, 8).len(), 51);
    }
}
