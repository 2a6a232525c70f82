//! Fixtures and enumerators shared by the integration suites.
#![allow(dead_code)]

use dcc_core::category::Arc;
use dcc_core::cyclic::BoundaryPoint;
use dcc_core::metric::{EndpointTrack, ThreadSequence};
use dcc_core::tstructure::{all_noncrossing, DecoratedNC, Decoration, NCPartition, TStructure};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn p61() -> NCPartition {
    NCPartition::new(
        10,
        vec![
            vec![1],
            vec![2, 3, 9],
            vec![4],
            vec![5, 6],
            vec![7],
            vec![8],
            vec![10],
        ],
    )
    .unwrap()
}

/// The worked example on ten accumulation points.
pub fn t61() -> TStructure {
    use Decoration::*;
    let d = vec![
        Decoration::at(1, 0),
        AtRight,
        Decoration::at(3, 0),
        AtLeft,
        AtRight,
        Decoration::at(6, 0),
        AtLeft,
        AtLeft,
        Decoration::at(9, 0),
        AtLeft,
    ];
    TStructure::new(DecoratedNC::new(p61(), d)).unwrap()
}

/// Same partition, every left-end decoration moved into its segment.
pub fn t62() -> TStructure {
    let d = (1..=10)
        .map(|i| {
            if i == 2 || i == 5 {
                Decoration::AtRight
            } else {
                Decoration::at(i, 0)
            }
        })
        .collect();
    TStructure::new(DecoratedNC::new(p61(), d)).unwrap()
}

/// Decorations allowed at `i`, one per class; the in-segment class uses
/// `Marked(i, rep)`.
pub fn classes_at(p: &NCPartition, i: u32, rep: i64) -> Vec<Decoration> {
    let mut out = vec![Decoration::at(i, rep)];
    if p.is_singleton(i) {
        out.push(Decoration::AtLeft);
    }
    if p.is_adjacency(i) {
        out.push(Decoration::AtRight);
    }
    out
}

/// Every t-structure on `n` segments up to the choice of in-segment point.
pub fn all_tstructures(n: u32, rep: i64) -> Vec<TStructure> {
    let mut out = Vec::new();
    for p in all_noncrossing(n) {
        let choices: Vec<Vec<Decoration>> = (1..=n).map(|i| classes_at(&p, i, rep)).collect();
        let total: usize = choices.iter().map(Vec::len).product();
        for mut code in 0..total {
            let d = choices
                .iter()
                .map(|c| {
                    let pick = c[code % c.len()];
                    code /= c.len();
                    pick
                })
                .collect();
            out.push(TStructure::new(DecoratedNC::new(p.clone(), d)).unwrap());
        }
    }
    out
}

/// A uniformly chosen partition with a uniformly chosen class per index;
/// in-segment points are drawn from `-spread..=spread`.
pub fn random_tstructure<R: Rng>(rng: &mut R, n: u32, spread: i64) -> TStructure {
    let parts = all_noncrossing(n);
    let p = parts.choose(rng).unwrap().clone();
    let d = (1..=n)
        .map(|i| {
            let options = classes_at(&p, i, rng.gen_range(-spread..=spread));
            *options.choose(rng).unwrap()
        })
        .collect();
    TStructure::new(DecoratedNC::new(p, d)).unwrap()
}

pub fn marked_points(n: u32, w: i64) -> Vec<BoundaryPoint> {
    (1..=n)
        .flat_map(|s| (-w..=w).map(move |k| BoundaryPoint::marked(s, k)))
        .collect()
}

/// Marked points of the window together with every accumulation point.
pub fn closure_points(n: u32, w: i64) -> Vec<BoundaryPoint> {
    let mut pts = marked_points(n, w);
    pts.extend((1..=n).map(BoundaryPoint::acc));
    pts
}

pub fn arcs_on(points: &[BoundaryPoint]) -> Vec<Arc> {
    let mut out = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            if let Some(a) = Arc::try_new(p, q) {
                out.push(a);
            }
        }
    }
    out
}

/// Constant and advancing tracks from every start in the window.
pub fn tracks(n: u32, k: i64) -> Vec<EndpointTrack> {
    marked_points(n, k)
        .into_iter()
        .flat_map(|p| [EndpointTrack::constant(p), EndpointTrack::advancing(p)])
        .collect()
}

/// Every thread built from two distinct window tracks, at its earliest
/// offset.
pub fn threads(n: u32, k: i64) -> Vec<ThreadSequence> {
    let ts = tracks(n, k);
    let mut out = Vec::new();
    for (i, &a) in ts.iter().enumerate() {
        for &b in &ts[i + 1..] {
            if let Ok(s) = ThreadSequence::earliest(a, b) {
                out.push(s);
            }
        }
    }
    out
}

pub struct GoldenCase {
    pub name: String,
    pub code: i32,
    pub args: Vec<String>,
    pub input: String,
    pub expected: String,
}

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Cases listed in `golden/cases.txt` as `name<TAB>exit code<TAB>arguments`.
pub fn golden_cases() -> Vec<GoldenCase> {
    let dir = golden_dir();
    let index = std::fs::read_to_string(dir.join("cases.txt")).unwrap();
    index
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let mut cols = line.split('\t');
            let name = cols.next().unwrap().to_owned();
            let code = cols.next().unwrap().parse().unwrap();
            let args = cols
                .next()
                .unwrap()
                .split_whitespace()
                .map(str::to_owned)
                .collect();
            let input = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
            let expected =
                std::fs::read_to_string(dir.join(format!("{name}.out"))).unwrap_or_default();
            GoldenCase {
                name,
                code,
                args,
                input,
                expected,
            }
        })
        .collect()
}

/// Run the `dcc` binary; returns the exit code and stdout.
pub fn run_cli(args: &[String], input: &str) -> (i32, String) {
    use std::io::Write;
    use std::process::{Command, Stdio};
    let mut child = Command::new(env!("CARGO_BIN_EXE_dcc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

pub mod strategy {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn marked(n: u32, w: i64) -> impl Strategy<Value = BoundaryPoint> {
        (1..=n, -w..=w).prop_map(|(s, k)| BoundaryPoint::marked(s, k))
    }

    /// A marked point or, with lower weight, an accumulation point.
    pub fn point(n: u32, w: i64) -> impl Strategy<Value = BoundaryPoint> {
        prop_oneof![3 => marked(n, w), 1 => (1..=n).prop_map(BoundaryPoint::acc)]
    }

    /// An arc of `C(Z)` inside the window.
    pub fn plain_arc(n: u32, w: i64) -> impl Strategy<Value = Arc> {
        (marked(n, w), marked(n, w)).prop_filter_map("degenerate", |(p, q)| Arc::try_new(p, q))
    }

    /// An arc of the closure, possibly with accumulation endpoints.
    pub fn closure_arc(n: u32, w: i64) -> impl Strategy<Value = Arc> {
        (point(n, w), point(n, w)).prop_filter_map("degenerate", |(p, q)| Arc::try_new(p, q))
    }

    pub fn tstructure(n: u32, spread: i64) -> impl Strategy<Value = TStructure> {
        any::<u64>().prop_map(move |seed| {
            random_tstructure(&mut ChaCha8Rng::seed_from_u64(seed), n, spread)
        })
    }

    /// Number of segments together with a t-structure on them.
    pub fn sized_tstructure(max_n: u32, spread: i64) -> impl Strategy<Value = TStructure> {
        (1..=max_n).prop_flat_map(move |n| tstructure(n, spread))
    }
}
