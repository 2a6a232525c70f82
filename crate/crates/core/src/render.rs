//! Deterministic SVG disc diagrams.
//!
//! Segment `i` occupies the circle arc from `a_i` to `a_{i+1}`, anticlockwise
//! from the positive x-axis. Inside a segment, index `k` sits at fraction
//! `(1 + k/(1+|k|))/2`, so points bunch up towards both accumulation points.
//! Numbers are printed with three decimals, which keeps output byte-stable.

use std::f64::consts::TAU;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::category::{window_points, Arc};
use crate::completion::zbar_block;
use crate::cyclic::{BoundaryPoint, IntervalSystem};
use crate::error::{Error, Result};
use crate::metric::FanSequence;
use crate::tstructure::TStructure;

const SIZE: f64 = 400.0;
const CENTRE: f64 = SIZE / 2.0;
const RADIUS: f64 = 170.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Style {
    pub stroke: String,
    pub fill: String,
    pub opacity: f64,
    pub width: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke: "#1f4e99".into(),
            fill: "#8fb3e8".into(),
            opacity: 0.5,
            width: 1.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Aisle,
    Coaisle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    /// Chords.
    Arcs { arcs: Vec<Arc> },
    /// One shaded convex region per block.
    Intervals { system: IntervalSystem },
    /// The regions of `Σᵖ` applied to an aisle or coaisle.
    Region {
        tstructure: TStructure,
        side: Side,
        #[serde(default)]
        shift: i64,
    },
    /// Chords of the fan entries at the listed steps.
    Fan { fan: FanSequence, steps: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    #[serde(default)]
    pub style: Style,
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub n: u32,
    pub window: i64,
    #[serde(default)]
    pub layers: Vec<Layer>,
    /// When present, accumulation points in some `Z̄_B` are drawn filled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion: Option<TStructure>,
}

impl Scene {
    pub fn new(n: u32, window: i64) -> Self {
        Scene {
            n,
            window,
            layers: Vec::new(),
            completion: None,
        }
    }

    pub fn layer(mut self, style: Style, payload: Payload) -> Self {
        self.layers.push(Layer { style, payload });
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScene(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.window < 2 {
            return bad(format!("window {} is below 2", self.window));
        }
        let check_t = |t: &TStructure| {
            if t.n() == self.n {
                Ok(())
            } else {
                Err(Error::InvalidScene(format!(
                    "t-structure on {} segments, scene has {}",
                    t.n(),
                    self.n
                )))
            }
        };
        if let Some(t) = &self.completion {
            check_t(t)?;
        }
        for layer in &self.layers {
            match &layer.payload {
                Payload::Arcs { arcs } => arcs.iter().try_for_each(|a| a.validate(self.n))?,
                Payload::Intervals { system } => {
                    for i in system.blocks.iter().flat_map(|b| &b.intervals) {
                        i.lo.validate(self.n)?;
                        i.hi.validate(self.n)?;
                    }
                }
                Payload::Region { tstructure, .. } => check_t(tstructure)?,
                Payload::Fan { fan, steps } => {
                    for &s in steps {
                        fan.entry(s)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn angle(p: BoundaryPoint, n: u32) -> f64 {
    let frac = match p {
        BoundaryPoint::Acc { .. } => 0.0,
        BoundaryPoint::Marked { index, .. } => {
            let k = index as f64;
            (1.0 + k / (1.0 + k.abs())) / 2.0
        }
    };
    TAU * ((p.segment() - 1) as f64 + frac) / n as f64
}

fn position(p: BoundaryPoint, n: u32) -> (f64, f64) {
    let a = angle(p, n);
    (CENTRE + RADIUS * a.cos(), CENTRE - RADIUS * a.sin())
}

fn chord(out: &mut String, arc: &Arc, n: u32, style: &Style) {
    let [p, q] = arc.endpoints();
    let (x1, y1) = position(p, n);
    let (x2, y2) = position(q, n);
    let _ = writeln!(
        out,
        r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{}" stroke-width="{:.3}"/>"#,
        style.stroke, style.width
    );
}

fn regions(out: &mut String, system: &IntervalSystem, scene: &Scene, style: &Style) {
    let mut candidates = window_points(scene.n, scene.window);
    candidates.extend((1..=scene.n).map(BoundaryPoint::acc));
    for block in &system.blocks {
        let mut pts: Vec<BoundaryPoint> = candidates
            .iter()
            .copied()
            .filter(|&p| system.block_contains(block, p))
            .collect();
        if pts.is_empty() {
            continue;
        }
        pts.sort_by(|a, b| angle(*a, scene.n).total_cmp(&angle(*b, scene.n)));
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = position(p, scene.n);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"  <polygon data-block="{}" points="{}" fill="{}" fill-opacity="{:.3}" stroke="{}" stroke-width="{:.3}"/>"#,
            block.id,
            coords.join(" "),
            style.fill,
            style.opacity,
            style.stroke,
            style.width
        );
    }
}

pub fn render_svg(scene: &Scene) -> Result<String> {
    scene.validate()?;
    let n = scene.n;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"  <circle cx="{CENTRE:.3}" cy="{CENTRE:.3}" r="{RADIUS:.3}" fill="none" stroke="black" stroke-width="1.000"/>"#
    );
    for layer in &scene.layers {
        let style = &layer.style;
        match &layer.payload {
            Payload::Arcs { arcs } => arcs.iter().for_each(|a| chord(&mut out, a, n, style)),
            Payload::Intervals { system } => regions(&mut out, system, scene, style),
            Payload::Region {
                tstructure,
                side,
                shift,
            } => {
                let system = match side {
                    Side::Aisle => tstructure.aisle_system(*shift),
                    Side::Coaisle => tstructure.coaisle_system(*shift),
                };
                regions(&mut out, &system, scene, style)
            }
            Payload::Fan { fan, steps } => {
                for &s in steps {
                    let entry = fan.entry(s).expect("validated");
                    entry
                        .summands()
                        .iter()
                        .for_each(|a| chord(&mut out, a, n, style));
                }
            }
        }
    }
    for p in window_points(n, scene.window) {
        let (x, y) = position(p, n);
        let _ = writeln!(
            out,
            r#"  <circle cx="{x:.3}" cy="{y:.3}" r="1.200" fill="black"/>"#
        );
    }
    for i in 1..=n {
        let acc = BoundaryPoint::acc(i);
        let (x, y) = position(acc, n);
        let filled = scene
            .completion
            .as_ref()
            .is_some_and(|t| zbar_block(t, acc).is_some());
        let fill = if filled { "black" } else { "white" };
        let _ = writeln!(
            out,
            r#"  <circle data-acc="{i}" cx="{x:.3}" cy="{y:.3}" r="4.000" fill="{fill}" stroke="black" stroke-width="1.000"/>"#
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tstructure::tests::t61;

    #[test]
    fn empty_scene() {
        let svg = render_svg(&Scene::new(3, 2)).unwrap();
        assert_eq!(svg.matches("data-acc").count(), 3);
        assert!(!svg.contains("<line") && !svg.contains("<polygon"));
        assert!(svg.contains("fill=\"white\""));
    }

    #[test]
    fn deterministic() {
        let scene = Scene::new(10, 4)
            .layer(
                Style::default(),
                Payload::Region {
                    tstructure: t61(),
                    side: Side::Aisle,
                    shift: 0,
                },
            )
            .layer(
                Style::default(),
                Payload::Arcs {
                    arcs: vec![Arc::marked((2, 0), (9, 0))],
                },
            );
        assert_eq!(render_svg(&scene).unwrap(), render_svg(&scene).unwrap());
    }

    #[test]
    fn filled_accumulation_points() {
        let mut scene = Scene::new(10, 2);
        scene.completion = Some(t61());
        let svg = render_svg(&scene).unwrap();
        // a2 and a9 lie in the completion, a4 does not
        assert!(
            svg.contains(r#"data-acc="2" cx="#)
                && svg
                    .lines()
                    .any(|l| l.contains(r#"data-acc="2""#) && l.contains(r#"fill="black""#))
        );
        assert!(svg
            .lines()
            .any(|l| l.contains(r#"data-acc="4""#) && l.contains(r#"fill="white""#)));
    }

    #[test]
    fn invalid_scenes() {
        assert!(matches!(
            render_svg(&Scene::new(3, 1)),
            Err(Error::InvalidScene(_))
        ));
        let s = Scene::new(3, 3).layer(
            Style::default(),
            Payload::Arcs {
                arcs: vec![Arc::marked((5, 0), (1, 0))],
            },
        );
        assert!(render_svg(&s).is_err());
        let mismatched = Scene::new(3, 3).layer(
            Style::default(),
            Payload::Region {
                tstructure: t61(),
                side: Side::Coaisle,
                shift: 0,
            },
        );
        assert!(matches!(
            render_svg(&mismatched),
            Err(Error::InvalidScene(_))
        ));
    }

    #[test]
    fn angles_cluster_at_accumulation_points() {
        let a = |k| angle(BoundaryPoint::marked(1, k), 1);
        assert!(a(-10) < a(0) && a(0) < a(10));
        assert!(a(11) - a(10) < a(1) - a(0));
        assert!((a(0) - TAU / 2.0).abs() < 1e-12);
    }
}
